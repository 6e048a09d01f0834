//! Fourier-type integrals over the half-line.
//!
//! `∫ g(t)·{sin,cos}(xt) dt` is partitioned at the consecutive zeros of the
//! oscillator (half-periods `π/x`). The signed block integrals form an
//! eventually alternating series whose partial sums are accelerated with the
//! epsilon algorithm. Compactly supported amplitudes short-circuit to a plain
//! finite partition; amplitudes that die numerically terminate the scan early.

use super::adaptive::{integrate_finite, integrate_finite_or_zero};
use super::{EpsilonAccelerator, QuadratureConfig, QuadratureResult, Status};
use crate::error::Result;
use std::f64::consts::PI;

/// Which oscillator multiplies the amplitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OscKind {
    Sine,
    Cosine,
}

/// Optional controls for [`integrate_oscillatory_with`].
#[derive(Clone, Debug, Default)]
pub struct OscOpts {
    /// Lower integration limit (default 0).
    pub lower: f64,
    /// Point beyond which the amplitude is identically zero.
    pub support_hint: Option<f64>,
    /// Kinks or jumps of the amplitude; subdivision is forced there.
    pub breakpoints: Vec<f64>,
}

/// `∫₀^∞ g(t)·{sin,cos}(xt) dt` for `x > 0`.
pub fn integrate_oscillatory(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    kind: OscKind,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    integrate_oscillatory_with(g, x, kind, &OscOpts::default(), tol, cfg)
}

/// `∫ g(t)·{sin,cos}(xt) dt` from `opts.lower`, honoring support and
/// breakpoint hints.
pub fn integrate_oscillatory_with(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    kind: OscKind,
    opts: &OscOpts,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(crate::Error::InvalidParameter {
            name: "x".into(),
            value: x,
            reason: "oscillation frequency must be positive and finite".into(),
        });
    }
    if !(tol > 0.0) {
        return Err(crate::Error::InvalidSpec(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let lower = opts.lower.max(0.0);
    if let Some(s) = opts.support_hint {
        if s <= lower {
            return Ok(QuadratureResult::exact(0.0));
        }
    }

    let integrand = move |t: f64| {
        let osc = match kind {
            OscKind::Sine => (x * t).sin(),
            OscKind::Cosine => (x * t).cos(),
        };
        g(t) * osc
    };

    // Zeros of the oscillator past `lower`: kπ/x for sine, (k+1/2)π/x for
    // cosine.
    let half = PI / x;
    let offset = match kind {
        OscKind::Sine => 0.0,
        OscKind::Cosine => 0.5,
    };
    let first_index = {
        let mut k = ((lower / half) - offset).floor() as i64 + 1;
        if k < if kind == OscKind::Sine { 1 } else { 0 } {
            k = if kind == OscKind::Sine { 1 } else { 0 };
        }
        while (k as f64 + offset) * half <= lower * (1.0 + 4.0 * f64::EPSILON) {
            k += 1;
        }
        k
    };
    let mut edges = (0..).map(move |i| (first_index + i) as f64 * half + offset * half);

    integrate_blocked(
        &integrand,
        lower,
        &mut edges,
        opts.support_hint,
        tol,
        &opts.breakpoints,
        cfg,
    )
}

/// Sum an integrand over blocks delimited by `edges`, accelerating the block
/// partial sums. Used by the oscillatory kernel and by transforms whose
/// integrands carry their own oscillating factor.
pub(crate) fn integrate_blocked(
    h: &dyn Fn(f64) -> f64,
    lower: f64,
    edges: &mut dyn Iterator<Item = f64>,
    finite_upper: Option<f64>,
    tol: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let tol_block = (tol / 50.0).max(1e-307);

    // Compactly supported amplitude: a plain partition suffices.
    if let Some(upper) = finite_upper {
        let mut value = 0.0;
        let mut err = 0.0;
        let mut evaluations = 0u64;
        let mut lo = lower;
        for edge in edges {
            let hi = edge.min(upper);
            if hi > lo {
                let r = integrate_finite_or_zero(h, lo, hi, tol_block, breakpoints, cfg)?;
                value += r.value;
                err += r.abs_error_estimate;
                evaluations += r.evaluations;
                lo = hi;
            }
            if edge >= upper {
                break;
            }
        }
        return Ok(QuadratureResult::finish(
            value,
            err,
            evaluations,
            tol,
            Status::Converged,
        ));
    }

    let mut acc = 0.0;
    let mut errs = 0.0;
    let mut evaluations = 0u64;
    let mut eps = EpsilonAccelerator::new();
    let mut scale = 0.0_f64;
    let mut death_run = 0usize;
    let mut growth_run = 0usize;
    let mut prev_block: Option<f64> = None;
    let mut settled_run = 0usize;
    let mut lo = lower;

    for (i, edge) in edges.enumerate() {
        if i >= cfg.osc_block_limit {
            break;
        }
        if edge <= lo {
            continue;
        }
        let r = integrate_finite(h, lo, edge, tol_block, breakpoints, cfg)?;
        lo = edge;
        acc += r.value;
        errs += r.abs_error_estimate;
        evaluations += r.evaluations;
        scale = scale.max(acc.abs());

        let best = eps.push(acc);
        let b = r.value;

        // amplitude death: the series has effectively terminated
        if b.abs() <= (1e-16 * scale).max(0.001 * tol) {
            death_run += 1;
            if death_run >= 3 {
                let err = errs + 3.0 * b.abs();
                return Ok(QuadratureResult::finish(
                    acc,
                    err,
                    evaluations,
                    tol,
                    Status::Converged,
                ));
            }
        } else {
            death_run = 0;
        }

        // growing blocks: the integral cannot converge
        if let Some(p) = prev_block {
            if b.abs() > 1.05 * p.abs() && b.abs() > (tol).max(1e-14 * scale) {
                growth_run += 1;
            } else {
                growth_run = 0;
            }
            if growth_run >= 8 {
                return Ok(QuadratureResult {
                    value: best,
                    abs_error_estimate: best.abs().max(1.0),
                    status: Status::DivergenceSuspected,
                    evaluations,
                });
            }
        }
        prev_block = Some(b);

        // extrapolation settled
        if i >= 4 {
            let est_err = eps.settle_error() + errs;
            if est_err <= tol {
                settled_run += 1;
                if settled_run >= 2 {
                    return Ok(QuadratureResult::finish(
                        best,
                        est_err,
                        evaluations,
                        tol,
                        Status::Converged,
                    ));
                }
            } else {
                settled_run = 0;
            }
        }
    }

    let best = eps.best().unwrap_or(acc);
    let err = eps.settle_error().min(prev_block.map_or(f64::INFINITY, f64::abs)) + errs;
    Ok(QuadratureResult {
        value: best,
        abs_error_estimate: err,
        status: Status::MaxDepthReached,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slow_rational_amplitude() {
        // ∫₀^∞ cos t/(1+t²) dt = π/(2e)
        let g = |t: f64| 1.0 / (1.0 + t * t);
        let r = integrate_oscillatory(&g, 1.0, OscKind::Cosine, 1e-10, &QuadratureConfig::default())
            .unwrap();
        let expected = PI / (2.0 * std::f64::consts::E);
        assert!((r.value - expected).abs() < 1e-9, "value {}", r.value);
    }

    #[test]
    fn lower_bound_start() {
        // ∫_π^∞ e^-t sin t dt = -e^-π (cos π + sin π)/2 · .. do it from the
        // antiderivative: ∫ e^-t sin t = -e^-t (sin t + cos t)/2
        let g = |t: f64| (-t).exp();
        let opts = OscOpts {
            lower: PI,
            ..OscOpts::default()
        };
        let r = integrate_oscillatory_with(
            &g,
            1.0,
            OscKind::Sine,
            &opts,
            1e-12,
            &QuadratureConfig::default(),
        )
        .unwrap();
        let anti = |t: f64| -(-t).exp() * (t.sin() + t.cos()) / 2.0;
        let expected = -anti(PI);
        assert!((r.value - expected).abs() < 1e-11, "value {}", r.value);
    }

    #[test]
    fn rejects_nonpositive_frequency() {
        let g = |_t: f64| 1.0;
        assert!(
            integrate_oscillatory(&g, 0.0, OscKind::Sine, 1e-8, &QuadratureConfig::default())
                .is_err()
        );
    }

    #[test]
    fn high_frequency_gaussian_is_tiny() {
        // ∫₀^∞ e^{-t²} cos(100 t) dt = (√π/2) e^{-2500}: numerically zero,
        // and the block sum must cancel to well below 1e-8.
        let g = |t: f64| (-t * t).exp();
        let r =
            integrate_oscillatory(&g, 100.0, OscKind::Cosine, 1e-10, &QuadratureConfig::default())
                .unwrap();
        assert!(r.value.abs() < 1e-9, "value {}", r.value);
    }
}
