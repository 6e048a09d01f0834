//! Principal-value integration by symmetric excision.
//!
//! For an integrand with a simple pole at `s` inside `(a, b)`, the excised
//! integral `I(d) = ∫_{(a,b) \ (s-d, s+d)} h` converges to the principal
//! value as `d → 0+`, with error expanding in odd powers of `d`. The kernel
//! evaluates `I(d_k)` on a decreasing ladder of radii (computed
//! incrementally: the two base integrals plus pole-facing annuli) and removes
//! the `d` and `d³` error terms by three-point Richardson extrapolation.

use super::accel::richardson_extrapolants;
use super::adaptive::integrate_finite;
use super::{QuadratureConfig, QuadratureResult, Status};
use crate::error::{Error, Result};

/// Excision prescription for one principal-value integral.
#[derive(Clone, Debug)]
pub struct PvSpec {
    /// The excised point.
    pub singularity: f64,
    /// Strictly decreasing positive excision radii.
    pub excision_ladder: Vec<f64>,
}

impl PvSpec {
    /// Validated constructor.
    pub fn new(singularity: f64, excision_ladder: Vec<f64>) -> Result<Self> {
        if excision_ladder.is_empty() {
            return Err(Error::InvalidSpec("excision ladder must be non-empty".into()));
        }
        for w in excision_ladder.windows(2) {
            if !(w[1] > 0.0 && w[1] < w[0]) {
                return Err(Error::InvalidSpec(
                    "excision radii must be positive and strictly decreasing".into(),
                ));
            }
        }
        if !(excision_ladder[0] > 0.0 && excision_ladder[0].is_finite()) {
            return Err(Error::InvalidSpec("excision radii must be positive".into()));
        }
        Ok(PvSpec {
            singularity,
            excision_ladder,
        })
    }

    /// Default geometric ladder for a pole at `s` inside `(a, b)`:
    /// `d_k = 2^-k (b-a)/8` for `k = 0..=depth`, with the first radius shrunk
    /// if the pole sits close to an endpoint.
    pub fn centered(a: f64, b: f64, s: f64, depth: usize) -> Result<Self> {
        if !(a < s && s < b) {
            return Err(Error::InvalidSpec(format!(
                "singularity {s} must lie inside ({a}, {b})"
            )));
        }
        let mut d0 = (b - a) / 8.0;
        let margin = 0.5 * (s - a).min(b - s);
        if d0 > margin {
            d0 = margin;
        }
        let ladder = (0..=depth).map(|k| d0 * 0.5_f64.powi(k as i32)).collect();
        PvSpec::new(s, ladder)
    }

    /// A copy of the spec with every radius halved.
    pub fn halved(&self) -> PvSpec {
        PvSpec {
            singularity: self.singularity,
            excision_ladder: self.excision_ladder.iter().map(|d| d * 0.5).collect(),
        }
    }
}

/// Principal value of `∫ₐᵇ h` across the pole described by `spec`.
pub fn integrate_pv(
    h: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    spec: &PvSpec,
    tol: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidSpec(format!("tolerance {tol} must be positive")));
    }
    let s = spec.singularity;
    if !(a < s && s < b) {
        return Err(Error::InvalidSpec(format!(
            "singularity {s} must lie inside ({a}, {b})"
        )));
    }
    let d0 = spec.excision_ladder[0];
    if s - d0 <= a || s + d0 >= b {
        return Err(Error::InvalidSpec(
            "largest excision radius must leave room inside the interval".into(),
        ));
    }

    let rungs = spec.excision_ladder.len();
    let tol_piece = tol / (2.0 * (rungs as f64 + 2.0));

    let mut evaluations = 0u64;
    let mut quad_err = 0.0;

    let left = integrate_finite(h, a, s - d0, tol_piece, breakpoints, cfg)?;
    let right = integrate_finite(h, s + d0, b, tol_piece, breakpoints, cfg)?;
    evaluations += left.evaluations + right.evaluations;
    quad_err += left.abs_error_estimate + right.abs_error_estimate;

    let mut ladder_values = Vec::with_capacity(rungs);
    ladder_values.push(left.value + right.value);

    let mut extrapolants: Vec<f64> = Vec::new();
    let mut settled = 0usize;

    for k in 1..rungs {
        let d_prev = spec.excision_ladder[k - 1];
        let d = spec.excision_ladder[k];
        let ann_left = integrate_finite(h, s - d_prev, s - d, tol_piece, breakpoints, cfg)?;
        let ann_right = integrate_finite(h, s + d, s + d_prev, tol_piece, breakpoints, cfg)?;
        evaluations += ann_left.evaluations + ann_right.evaluations;
        quad_err += ann_left.abs_error_estimate + ann_right.abs_error_estimate;
        let last = *ladder_values.last().unwrap();
        ladder_values.push(last + ann_left.value + ann_right.value);

        extrapolants = richardson_extrapolants(&ladder_values);
        if extrapolants.len() >= 2 {
            let m = extrapolants.len();
            if (extrapolants[m - 1] - extrapolants[m - 2]).abs() <= 0.25 * tol {
                settled += 1;
                if settled >= 2 {
                    break;
                }
            } else {
                settled = 0;
            }
        }
    }

    let (value, extr_err) = match extrapolants.len() {
        0 => {
            // ladder too short for extrapolation; fall back to the last rung
            let v = *ladder_values.last().unwrap();
            let e = if ladder_values.len() >= 2 {
                (ladder_values[ladder_values.len() - 1] - ladder_values[ladder_values.len() - 2])
                    .abs()
            } else {
                f64::INFINITY
            };
            (v, e)
        }
        1 => (extrapolants[0], f64::INFINITY),
        m => (
            extrapolants[m - 1],
            (extrapolants[m - 1] - extrapolants[m - 2]).abs(),
        ),
    };

    let err = extr_err + quad_err;
    let status = if err <= tol {
        Status::Converged
    } else {
        Status::MaxDepthReached
    };
    Ok(QuadratureResult {
        value,
        abs_error_estimate: err,
        status,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_with_smooth_numerator() {
        // PV ∫₀² e^t/(t-1) dt = e · PV ∫_{-1}^{1} e^u/u du = 2e · Shi(1),
        // Shi(1) = 1.0572508753757285
        let spec = PvSpec::centered(0.0, 2.0, 1.0, 12).unwrap();
        let r = integrate_pv(
            &|t| t.exp() / (t - 1.0),
            0.0,
            2.0,
            &spec,
            1e-10,
            &[],
            &QuadratureConfig::default(),
        )
        .unwrap();
        let expected = 2.0 * std::f64::consts::E * 1.0572508753757285;
        assert!((r.value - expected).abs() < 1e-9, "value {}", r.value);
        assert_eq!(r.status, Status::Converged);
    }

    #[test]
    fn halved_ladder_agrees_within_error() {
        let h = |t: f64| (t * t + 0.5) / (t - 1.0);
        let cfg = QuadratureConfig::default();
        let spec = PvSpec::centered(0.25, 2.5, 1.0, 12).unwrap();
        let r1 = integrate_pv(&h, 0.25, 2.5, &spec, 1e-10, &[], &cfg).unwrap();
        let r2 = integrate_pv(&h, 0.25, 2.5, &spec.halved(), 1e-10, &[], &cfg).unwrap();
        assert!(
            (r1.value - r2.value).abs() <= r1.abs_error_estimate.max(1e-12),
            "difference {} vs error {}",
            (r1.value - r2.value).abs(),
            r1.abs_error_estimate
        );
    }
}
