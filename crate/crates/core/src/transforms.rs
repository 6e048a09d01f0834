//! The operator zoo: cosine and sine transforms, the T-transform, full and
//! odd Hilbert transforms, the quotient transform, its Hilbert transform via
//! the Si/Ci kernel, the residual between the odd Hilbert transform and the
//! T-transform, and the oscillatory tail integral.
//!
//! Transform conventions on `(0, ∞)`:
//!
//! ```text
//! cosine:   ∫₀^∞ g(t) cos(xt) dt
//! sine:     ∫₀^∞ g(t) sin(xt) dt
//! T:        Tg(t) = ∫₀^{t/2} (g(t+s) - g(t-s))/s ds      (improper at s=0)
//! H (full): (1/π) PV ∫_ℝ g(t)/(t-x) dt
//! H₀ (odd): (2/π) PV ∫₀^∞ t g(t)/(t²-x²) dt
//! 𝒯:        𝒯_g(x) = ĝ_s(x)/x,  𝒯_g(0) = ∫₀^∞ t g(t) dt
//! ```
//!
//! No transform here uses an FFT; everything is direct quadrature, so any
//! evaluation point is admissible and error estimates are carried through.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_blocked, integrate_finite, integrate_halfline_with, integrate_oscillatory_with,
    integrate_pv, OscKind, OscOpts, PvSpec, QuadratureConfig, QuadratureResult, Status,
};
use crate::specfun::{ci, si};
use crate::testfns::TestFunction;

fn requalify(mut r: QuadratureResult, tol: f64) -> QuadratureResult {
    if r.status == Status::Converged && r.abs_error_estimate > tol {
        r.status = Status::MaxDepthReached;
    }
    r
}

/// `∫₀^∞ g(t) cos(xt) dt` for `x ≥ 0` (at `x = 0` this is plain `∫ g`).
pub fn cosine_transform(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    support_hint: Option<f64>,
    breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x".into(),
            value: x,
            reason: "transform variable must be non-negative".into(),
        });
    }
    if x == 0.0 {
        return plain_halfline(g, support_hint, breakpoints, tol, cfg);
    }
    let opts = OscOpts {
        lower: 0.0,
        support_hint,
        breakpoints: breakpoints.to_vec(),
    };
    integrate_oscillatory_with(g, x, OscKind::Cosine, &opts, tol, cfg)
}

/// `∫₀^∞ g(t) sin(xt) dt` for `x ≥ 0` (identically 0 at `x = 0`).
pub fn sine_transform(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    support_hint: Option<f64>,
    breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x".into(),
            value: x,
            reason: "transform variable must be non-negative".into(),
        });
    }
    if x == 0.0 {
        return Ok(QuadratureResult::exact(0.0));
    }
    let opts = OscOpts {
        lower: 0.0,
        support_hint,
        breakpoints: breakpoints.to_vec(),
    };
    integrate_oscillatory_with(g, x, OscKind::Sine, &opts, tol, cfg)
}

fn plain_halfline(
    g: &dyn Fn(f64) -> f64,
    support_hint: Option<f64>,
    breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    match support_hint {
        Some(s) if s > 0.0 => integrate_finite(g, 0.0, s, tol, breakpoints, cfg),
        Some(_) => Ok(QuadratureResult::exact(0.0)),
        None => integrate_halfline_with(g, tol, breakpoints, cfg),
    }
}

/// Cosine Fourier transform of a registered test function.
pub fn fourier_cosine(
    f: &TestFunction,
    x: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let ff = f.eval_f_fn();
    cosine_transform(&*ff, x, f.support_hint, &f.breakpoints(), tol, cfg)
}

/// Sine Fourier transform of a registered test function.
pub fn fourier_sine(
    f: &TestFunction,
    x: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let ff = f.eval_f_fn();
    sine_transform(&*ff, x, f.support_hint, &f.breakpoints(), tol, cfg)
}

/// `Tg(t) = ∫₀^{t/2} (g(t+s) - g(t-s))/s ds`.
///
/// When a derivative evaluator is supplied, the integrand is replaced by its
/// analytic limit `2 g'(t)` below `s ≈ 1e-7·t`, where the difference
/// quotient loses to cancellation, and the integral is taken directly.
/// Otherwise the `s → 0` endpoint is handled like a one-sided excision
/// ladder: `I(d) = ∫_d^{t/2}` on radii `d_k = 2^{-k}·t/16` extrapolates to
/// `d → 0` with the same three-point Richardson scheme as the
/// principal-value kernel (the excision error again expands in odd powers).
pub fn t_transform(
    g: &dyn Fn(f64) -> f64,
    gprime: Option<&dyn Fn(f64) -> f64>,
    t: f64,
    g_breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t".into(),
            value: t,
            reason: "T-transform is evaluated at t > 0".into(),
        });
    }
    let half = t / 2.0;
    // kinks of g at u map to kinks of the integrand at s = |u - t|
    let s_breakpoints: Vec<f64> = g_breakpoints
        .iter()
        .map(|u| (u - t).abs())
        .filter(|s| *s > 0.0 && *s < half)
        .collect();

    if let Some(gp) = gprime {
        let s_switch = 1e-7 * t;
        let quotient = move |s: f64| {
            if s < s_switch {
                2.0 * gp(t)
            } else {
                (g(t + s) - g(t - s)) / s
            }
        };
        return integrate_finite(&quotient, 0.0, half, tol, &s_breakpoints, cfg);
    }

    let quotient = move |s: f64| (g(t + s) - g(t - s)) / s;
    let depth = cfg.pv_ladder_depth;
    let d0 = half / 8.0;
    let tol_piece = tol / (2.0 * (depth as f64 + 2.0));

    let mut evaluations = 0u64;
    let mut quad_err = 0.0;
    let base = integrate_finite(&quotient, d0, half, tol_piece, &s_breakpoints, cfg)?;
    evaluations += base.evaluations;
    quad_err += base.abs_error_estimate;

    let mut ladder = vec![base.value];
    let mut extrapolants: Vec<f64> = Vec::new();
    let mut settled = 0usize;
    for k in 1..=depth {
        let d_prev = d0 * 0.5_f64.powi(k as i32 - 1);
        let d = d0 * 0.5_f64.powi(k as i32);
        let ann = integrate_finite(&quotient, d, d_prev, tol_piece, &s_breakpoints, cfg)?;
        evaluations += ann.evaluations;
        quad_err += ann.abs_error_estimate;
        ladder.push(ladder.last().unwrap() + ann.value);
        extrapolants = crate::quadrature::richardson_extrapolants(&ladder);
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
        0 => (*ladder.last().unwrap(), f64::INFINITY),
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

/// Odd Hilbert transform `H₀g(x) = (2/π) PV ∫₀^∞ t g(t)/(t²-x²) dt`, `x > 0`.
///
/// The pole window `[x/2, 3x/2]` goes through the excision ladder; the head
/// `[0, x/2]` and the tail `[3x/2, ∞)` are regular quadrature.
pub fn hilbert_odd(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x".into(),
            value: x,
            reason: "odd Hilbert transform is evaluated at x > 0".into(),
        });
    }
    let kernel = move |t: f64| t * g(t) / ((t - x) * (t + x));
    let head = integrate_finite(&kernel, 0.0, x / 2.0, tol / 4.0, breakpoints, cfg)?;
    let spec = PvSpec::centered(x / 2.0, 1.5 * x, x, cfg.pv_ladder_depth)?;
    let window = integrate_pv(&kernel, x / 2.0, 1.5 * x, &spec, tol / 2.0, breakpoints, cfg)?;
    let shift = 1.5 * x;
    let tail_bps: Vec<f64> = breakpoints
        .iter()
        .map(|b| b - shift)
        .filter(|u| *u > 0.0)
        .collect();
    let tail = integrate_halfline_with(&|u| kernel(u + shift), tol / 4.0, &tail_bps, cfg)?;
    Ok(requalify(
        head.add(&window).add(&tail).scale(2.0 / PI),
        tol,
    ))
}

/// Full Hilbert transform `Hg(x) = (1/π) PV ∫_ℝ g(t)/(t-x) dt`; the caller
/// supplies `g` on the whole line.
pub fn hilbert_full(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x".into(),
            value: x,
            reason: "evaluation point must be finite".into(),
        });
    }
    let w = 1.0_f64.max(x.abs() / 2.0);
    let kernel = move |t: f64| g(t) / (t - x);
    let spec = PvSpec::centered(x - w, x + w, x, cfg.pv_ladder_depth)?;
    let window = integrate_pv(&kernel, x - w, x + w, &spec, tol / 2.0, breakpoints, cfg)?;

    let right_edge = x + w;
    let right_bps: Vec<f64> = breakpoints
        .iter()
        .map(|b| b - right_edge)
        .filter(|u| *u > 0.0)
        .collect();
    let right = integrate_halfline_with(
        &|u| g(right_edge + u) / (w + u),
        tol / 4.0,
        &right_bps,
        cfg,
    )?;

    let left_edge = x - w;
    let left_bps: Vec<f64> = breakpoints
        .iter()
        .map(|b| left_edge - b)
        .filter(|u| *u > 0.0)
        .collect();
    let left = integrate_halfline_with(
        &|u| -g(left_edge - u) / (w + u),
        tol / 4.0,
        &left_bps,
        cfg,
    )?;

    Ok(requalify(
        window.add(&right).add(&left).scale(1.0 / PI),
        tol,
    ))
}

/// Quotient transform `𝒯_g(x) = ĝ_s(x)/x` for `x > 0`; at `x = 0` the limit
/// `∫₀^∞ t g(t) dt`.
pub fn script_t(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    support_hint: Option<f64>,
    breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x".into(),
            value: x,
            reason: "quotient transform is evaluated at x >= 0".into(),
        });
    }
    if x == 0.0 {
        let moment = move |t: f64| t * g(t);
        return plain_halfline(&moment, support_hint, breakpoints, tol, cfg);
    }
    let inner_tol = (tol * x).max(1e-3 * tol);
    let s = sine_transform(g, x, support_hint, breakpoints, inner_tol, cfg)?;
    Ok(requalify(s.scale(1.0 / x), tol))
}

/// Kernel of the principal-value identity
/// `PV ∫₀^∞ sin(yx)/(a²-x²) dx = (1/a)[sin(ay)·Ci(ay) - cos(ay)·Si(ay)]`
/// for `a, y > 0`.
pub fn bateman_kernel(a: f64, y: f64) -> Result<f64> {
    if !(a > 0.0 && y > 0.0) {
        return Err(Error::InvalidParameter {
            name: "a,y".into(),
            value: if a > 0.0 { y } else { a },
            reason: "kernel requires positive arguments".into(),
        });
    }
    let u = a * y;
    Ok(((u).sin() * ci(u)? - (u).cos() * si(u)?) / a)
}

// cos(u)·Si(u) - sin(u)·Ci(u), the combination that appears under the
// integral sign in the Si/Ci representation; continuous at 0 with value 0.
fn cisi_combo(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    match (si(u), ci(u)) {
        (Ok(s), Ok(c)) => u.cos() * s - u.sin() * c,
        _ => f64::NAN,
    }
}

/// `H₀𝒯_g(x)` through the Si/Ci representation:
/// `(2/(πx)) ∫₀^∞ g(t) [cos(xt)·Si(xt) - sin(xt)·Ci(xt)] dt`.
///
/// The inner integrals of the double-integral form are special functions
/// here; the nested-quadrature route `hilbert_odd(script_t(g, ·), x)` is the
/// independent cross-check, not the production path. The outer integral is
/// blocked at the zeros of `cos(xt)`, which carries the kernel's large-`t`
/// oscillation.
pub fn h0_script_t_cisi(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    support_hint: Option<f64>,
    breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x".into(),
            value: x,
            reason: "evaluation point must be positive".into(),
        });
    }
    let c = 2.0 / (PI * x);
    let integrand = move |t: f64| c * g(t) * cisi_combo(x * t);
    let half = PI / x;
    let mut edges = (0..).map(move |k| (k as f64 + 0.5) * half);
    integrate_blocked(
        &integrand,
        0.0,
        &mut edges,
        support_hint,
        tol,
        breakpoints,
        cfg,
    )
}

/// `Γ(x) = H₀g(x) - Tg(x)`, the residual between the odd Hilbert transform
/// and the T-transform.
pub fn gamma_residual(
    g: &dyn Fn(f64) -> f64,
    x: f64,
    breakpoints: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let h = hilbert_odd(g, x, breakpoints, tol / 2.0, cfg)?;
    let t = t_transform(g, None, x, breakpoints, tol / 2.0, cfg)?;
    Ok(requalify(h.sub(&t), tol))
}

/// Tail integral `I(x) = ∫_{π/(2x)}^∞ f(t) sin(xt) dt`.
pub fn tail_integral(
    f: &TestFunction,
    x: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x".into(),
            value: x,
            reason: "tail integral is evaluated at x > 0".into(),
        });
    }
    let lower = FRAC_PI_2 / x;
    if let Some(s) = f.support_hint {
        if s <= lower {
            return Ok(QuadratureResult::exact(0.0));
        }
    }
    let ff = f.eval_f_fn();
    let opts = OscOpts {
        lower,
        support_hint: f.support_hint,
        breakpoints: f.breakpoints(),
    };
    integrate_oscillatory_with(&*ff, x, OscKind::Sine, &opts, tol, cfg)
}

/// Geometric evaluation grid.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points_per_decade: u32,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            min: 1e-2,
            max: 1e2,
            points_per_decade: 25,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min > 0.0 && self.max > self.min) {
            return Err(Error::InvalidSpec(format!(
                "grid bounds ({}, {}) must satisfy 0 < min < max",
                self.min, self.max
            )));
        }
        if self.points_per_decade < 4 {
            return Err(Error::InvalidSpec(
                "grid needs at least 4 points per decade".into(),
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let decades = (self.max / self.min).log10();
        let n = (decades * self.points_per_decade as f64).round() as usize;
        (0..=n)
            .map(|i| self.min * 10f64.powf(i as f64 / self.points_per_decade as f64))
            .collect()
    }
}

/// Evenly log-spaced points, endpoints included.
pub fn geometric_points(min: f64, max: f64, count: usize) -> Vec<f64> {
    assert!(min > 0.0 && max > min && count >= 2);
    let lmin = min.ln();
    let lmax = max.ln();
    (0..count)
        .map(|i| (lmin + (lmax - lmin) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// A transform sampled on a strictly increasing positive grid.
#[derive(Clone, Debug, Serialize)]
pub struct TransformGrid {
    pub points: Vec<f64>,
    pub values: Vec<QuadratureResult>,
}

impl TransformGrid {
    pub fn new(points: Vec<f64>, values: Vec<QuadratureResult>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::InvalidSpec(
                "grid points and values must have equal length".into(),
            ));
        }
        if points.is_empty() || points[0] <= 0.0 {
            return Err(Error::InvalidSpec("grid points must be positive".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpec(
                "grid points must be strictly increasing".into(),
            ));
        }
        Ok(TransformGrid { points, values })
    }

    /// Evaluate `op` at every grid point. Points are independent, so the
    /// sweep parallelizes; results are collected in grid order regardless of
    /// worker count.
    pub fn compute(
        points: Vec<f64>,
        op: impl Fn(f64) -> Result<QuadratureResult> + Sync,
    ) -> Result<Self> {
        let values: Result<Vec<QuadratureResult>> =
            points.par_iter().map(|&x| op(x)).collect();
        TransformGrid::new(points, values?)
    }

    /// CSV with the fixed column order
    /// `x,value,abs_error_estimate,status,evaluations`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value,abs_error_estimate,status,evaluations\n");
        for (x, v) in self.points.iter().zip(&self.values) {
            out.push_str(&format!(
                "{:.12e},{:.12e},{:.3e},{},{}\n",
                x, v.value, v.abs_error_estimate, v.status, v.evaluations
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfns::registry_get;
    use std::collections::BTreeMap;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn family(id: &str) -> TestFunction {
        registry_get(id, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn exp_cosine_at_zero_and_one() {
        let f = family("exp");
        let r0 = fourier_cosine(&f, 0.0, 1e-11, &cfg()).unwrap();
        assert!((r0.value - 1.0).abs() < 1e-10);
        let r1 = fourier_cosine(&f, 1.0, 1e-11, &cfg()).unwrap();
        assert!((r1.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn exp_sine_at_one() {
        let f = family("exp");
        let r = fourier_sine(&f, 1.0, 1e-11, &cfg()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn sine_vanishes_linearly_at_zero() {
        let f = family("exp");
        let x = 1e-6;
        let r = fourier_sine(&f, x, 1e-13, &cfg()).unwrap();
        // |f̂_s(x)| ≤ x ∫ t f(t) dt = x for the exponential
        assert!(r.value.abs() <= 2.0 * x);
        assert!(fourier_sine(&f, 0.0, 1e-13, &cfg()).unwrap().value == 0.0);
    }

    #[test]
    fn triangle_transforms_at_pi() {
        let f = family("triangle");
        let rc = fourier_cosine(&f, std::f64::consts::PI, 1e-12, &cfg()).unwrap();
        assert!((rc.value - 2.0 / (PI * PI)).abs() < 1e-11);
        let rs = fourier_sine(&f, std::f64::consts::PI, 1e-12, &cfg()).unwrap();
        assert!((rs.value - 1.0 / PI).abs() < 1e-11);
    }

    #[test]
    fn t_transform_of_constant_vanishes() {
        let g = |_u: f64| 3.25;
        let r = t_transform(&g, None, 2.0, &[], 1e-11, &cfg()).unwrap();
        assert!(r.value.abs() < 1e-11);
    }

    #[test]
    fn t_transform_of_linear_is_t() {
        let g = |u: f64| u;
        let r = t_transform(&g, None, 3.0, &[], 1e-11, &cfg()).unwrap();
        assert!((r.value - 3.0).abs() < 1e-10, "value {}", r.value);
        // same through the analytic-limit path
        let gp = |_u: f64| 1.0;
        let r2 = t_transform(&g, Some(&gp), 3.0, &[], 1e-11, &cfg()).unwrap();
        assert!((r2.value - 3.0).abs() < 1e-10);
    }

    #[test]
    fn t_transform_exponential_matches_shi_oracle() {
        // Tg(2) for g = e^{-u} is -2 e^{-2} Shi(1); Shi by its series
        let g = |u: f64| (-u).exp();
        let mut shi = 0.0;
        let mut term = 1.0_f64; // u^(2k+1)/(2k+1)! at u=1
        for k in 0..20 {
            shi += term / (2 * k + 1) as f64;
            term /= ((2 * k + 2) * (2 * k + 3)) as f64;
        }
        let expected = -2.0 * (-2.0_f64).exp() * shi;
        let r = t_transform(&g, None, 2.0, &[], 1e-11, &cfg()).unwrap();
        assert!((r.value - expected).abs() < 1e-9, "value {}", r.value);
    }

    #[test]
    fn hilbert_odd_zero_function() {
        let g = |_t: f64| 0.0;
        let r = hilbert_odd(&g, 1.0, &[], 1e-10, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn hilbert_odd_rational_kernel_closed_form() {
        let g = |t: f64| {
            let d = 1.0 + t * t;
            t / (d * d)
        };
        let closed = |x: f64| {
            let d = 1.0 + x * x;
            (1.0 - x * x) / (2.0 * d * d)
        };
        for &x in &[0.001, 0.5, 1.0, 2.0, 7.0] {
            let r = hilbert_odd(&g, x, &[], 1e-9, &cfg()).unwrap();
            assert!(
                (r.value - closed(x)).abs() < 1e-7,
                "x {x}: {} vs {}",
                r.value,
                closed(x)
            );
        }
    }

    #[test]
    fn hilbert_full_symmetry_cases() {
        // even g at x = 0
        let even = |t: f64| (-t * t).exp();
        let r = hilbert_full(&even, 0.0, &[], 1e-9, &cfg()).unwrap();
        assert!(r.value.abs() < 1e-9);
        // indicator of (-1, 1) at x = 0
        let ind = |t: f64| if t > -1.0 && t < 1.0 { 1.0 } else { 0.0 };
        let r2 = hilbert_full(&ind, 0.0, &[-1.0, 1.0], 1e-9, &cfg()).unwrap();
        assert!(r2.value.abs() < 1e-9, "value {}", r2.value);
    }

    #[test]
    fn hilbert_full_agrees_with_odd_form() {
        let odd_ext = |t: f64| {
            let a = t.abs();
            let d = 1.0 + a * a;
            t.signum() * a / (d * d)
        };
        let g = |t: f64| {
            let d = 1.0 + t * t;
            t / (d * d)
        };
        for &x in &[0.5, 1.0, 3.0] {
            let full = hilbert_full(&odd_ext, x, &[], 1e-10, &cfg()).unwrap();
            let odd = hilbert_odd(&g, x, &[], 1e-10, &cfg()).unwrap();
            assert!(
                (full.value - odd.value).abs() < 1e-8,
                "x {x}: {} vs {}",
                full.value,
                odd.value
            );
        }
    }

    #[test]
    fn script_t_rational_kernel() {
        let g = |t: f64| {
            let d = 1.0 + t * t;
            t / (d * d)
        };
        let r1 = script_t(&g, 1.0, None, &[], 1e-10, &cfg()).unwrap();
        let expected = std::f64::consts::FRAC_PI_4 * (-1.0_f64).exp();
        assert!((r1.value - expected).abs() < 1e-9, "value {}", r1.value);
        let r0 = script_t(&g, 0.0, None, &[], 1e-10, &cfg()).unwrap();
        assert!((r0.value - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
        let z = script_t(&|_t| 0.0, 1.0, None, &[], 1e-10, &cfg()).unwrap();
        assert_eq!(z.value, 0.0);
    }

    #[test]
    fn bateman_matches_pv_quadrature() {
        let a = 1.3_f64;
        let y = 2.1_f64;
        let kernel = bateman_kernel(a, y).unwrap();
        // direct PV evaluation of ∫₀^∞ sin(yx)/(a²-x²) dx
        let h = move |x: f64| (y * x).sin() / ((a - x) * (a + x));
        let spec = PvSpec::centered(a / 2.0, 1.5 * a, a, 12).unwrap();
        let window = integrate_pv(&h, a / 2.0, 1.5 * a, &spec, 1e-10, &[], &cfg()).unwrap();
        let head = integrate_finite(&h, 0.0, a / 2.0, 1e-11, &[], &cfg()).unwrap();
        let tail_amp = move |x: f64| 1.0 / ((a - x) * (a + x));
        let opts = OscOpts {
            lower: 1.5 * a,
            ..OscOpts::default()
        };
        let tail =
            integrate_oscillatory_with(&tail_amp, y, OscKind::Sine, &opts, 1e-10, &cfg()).unwrap();
        let pv_value = window.value + head.value + tail.value;
        assert!(
            (kernel - pv_value).abs() < 1e-7,
            "kernel {kernel} vs pv {pv_value}"
        );
    }

    #[test]
    fn tail_integral_cases() {
        let tri = family("triangle");
        // the lower limit π/(2x) sits at or past the support edge once
        // π/(2x) ≥ 1, i.e. x ≤ π/2: the integrand is exhausted
        let r = tail_integral(&tri, 1.0, 1e-11, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);

        let ex = family("exp");
        let r1 = tail_integral(&ex, 1.0, 1e-11, &cfg()).unwrap();
        // complement: f̂_s(1) - ∫₀^{π/2} e^-t sin t dt, the head from the
        // antiderivative -e^-t(sin t + cos t)/2
        let head = 0.5 * (1.0 - (-FRAC_PI_2).exp());
        let expected = 0.5 - head;
        assert!((r1.value - expected).abs() < 1e-10, "value {}", r1.value);

        // additivity: head + tail = f̂_s
        let x = 0.7;
        let tail = tail_integral(&ex, x, 1e-11, &cfg()).unwrap();
        let head_q = integrate_finite(
            &|t: f64| (-t).exp() * (x * t).sin(),
            0.0,
            FRAC_PI_2 / x,
            1e-12,
            &[],
            &cfg(),
        )
        .unwrap();
        let full = fourier_sine(&ex, x, 1e-11, &cfg()).unwrap();
        assert!(
            (tail.value + head_q.value - full.value).abs()
                <= tail.abs_error_estimate + head_q.abs_error_estimate + full.abs_error_estimate + 1e-12
        );
    }

    #[test]
    fn h0_cisi_vanishes_for_zero_input() {
        let r = h0_script_t_cisi(&|_t| 0.0, 1.0, None, &[], 1e-9, &cfg()).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn gamma_residual_zero_function() {
        let r = gamma_residual(&|_t| 0.0, 1.0, &[], 1e-9, &cfg()).unwrap();
        assert!(r.value.abs() < 1e-10);
    }

    #[test]
    fn grid_spec_and_csv() {
        let gs = GridSpec::default();
        let pts = gs.points();
        assert_eq!(pts.len(), 101);
        assert!((pts[0] - 1e-2).abs() < 1e-15);
        assert!((pts[100] - 1e2).abs() < 1e-10);

        let grid = TransformGrid::new(
            vec![1.0, 2.0],
            vec![QuadratureResult::exact(0.5), QuadratureResult::exact(0.25)],
        )
        .unwrap();
        let csv = grid.to_csv();
        assert!(csv.starts_with("x,value,abs_error_estimate,status,evaluations\n"));
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.contains("converged"));

        assert!(TransformGrid::new(vec![2.0, 1.0], vec![]).is_err());
        assert!(
            TransformGrid::new(vec![1.0, 1.0], vec![QuadratureResult::exact(0.0); 2]).is_err()
        );
    }
}
