//! Sine and cosine integrals.
//!
//! `Si(u) = ∫₀ᵘ sin(t)/t dt = π/2 − ∫ᵘ^∞ sin(t)/t dt` and
//! `Ci(u) = −∫ᵘ^∞ cos(t)/t dt`, evaluated to better than 1e-12 absolute
//! error on the whole half-line.
//!
//! Below the crossover argument the convergent power series are used:
//!
//! ```text
//! Si(u) = Σ (-1)^k u^(2k+1) / ((2k+1)(2k+1)!)
//! Ci(u) = γ + ln u + Σ_{k≥1} (-1)^k u^(2k) / ((2k)(2k)!)
//! ```
//!
//! Above it both functions come from the auxiliary functions `f, g` with
//!
//! ```text
//! Si(u) = π/2 − f(u) cos u − g(u) sin u
//! Ci(u) =       f(u) sin u − g(u) cos u
//! ```
//!
//! where `f − i g = -i · e^{iu} E1(iu)` is evaluated by the modified Lentz
//! continued fraction for the exponential integral at intermediate
//! arguments and by the truncated asymptotic series for large ones.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Euler–Mascheroni constant, 20 digits.
pub const EULER_GAMMA: f64 = 0.57721566490153286061;

/// Crossover between the power-series and auxiliary-function regimes.
pub const SERIES_CROSSOVER: f64 = 6.0;

// Above this argument the truncated asymptotic series for the auxiliary
// functions is already below 1e-13 and cheaper than the continued fraction.
const ASYMPTOTIC_SWITCH: f64 = 45.0;

/// Which evaluation branch produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecFunMethod {
    PowerSeries,
    Asymptotic,
}

/// A special-function value together with the branch that produced it.
#[derive(Clone, Copy, Debug)]
pub struct SpecFunValue {
    pub value: f64,
    pub method: SpecFunMethod,
}

/// Sine integral `Si(u)` for `u ≥ 0`.
pub fn si(u: f64) -> Result<f64> {
    Ok(si_detailed(u)?.value)
}

/// Cosine integral `Ci(u)` for `u > 0`.
pub fn ci(u: f64) -> Result<f64> {
    Ok(ci_detailed(u)?.value)
}

/// `Si(u)` with the evaluation branch attached.
pub fn si_detailed(u: f64) -> Result<SpecFunValue> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::InvalidParameter {
            name: "u".into(),
            value: u,
            reason: "Si is defined here for u >= 0; odd extension is the caller's job".into(),
        });
    }
    if u <= SERIES_CROSSOVER {
        return Ok(SpecFunValue {
            value: si_series(u),
            method: SpecFunMethod::PowerSeries,
        });
    }
    let (f, g) = aux_fg(u);
    Ok(SpecFunValue {
        value: std::f64::consts::FRAC_PI_2 - f * u.cos() - g * u.sin(),
        method: SpecFunMethod::Asymptotic,
    })
}

/// `Ci(u)` with the evaluation branch attached.
pub fn ci_detailed(u: f64) -> Result<SpecFunValue> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::InvalidParameter {
            name: "u".into(),
            value: u,
            reason: "Ci requires u > 0".into(),
        });
    }
    if u <= SERIES_CROSSOVER {
        return Ok(SpecFunValue {
            value: ci_series(u),
            method: SpecFunMethod::PowerSeries,
        });
    }
    let (f, g) = aux_fg(u);
    Ok(SpecFunValue {
        value: f * u.sin() - g * u.cos(),
        method: SpecFunMethod::Asymptotic,
    })
}

fn si_series(u: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    let u2 = u * u;
    let mut term = u;
    let mut sum = u;
    let mut k = 1u32;
    loop {
        let km = (2 * k - 1) as f64;
        let kp = (2 * k + 1) as f64;
        term *= -u2 * km / (kp * (2 * k) as f64 * kp);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs().max(1e-3) || k > 60 {
            break;
        }
        k += 1;
    }
    sum
}

fn ci_series(u: f64) -> f64 {
    let u2 = u * u;
    let mut sum = EULER_GAMMA + u.ln();
    let mut term = -u2 / 4.0; // k = 1 term
    sum += term;
    let mut k = 2u32;
    loop {
        let prev_lead = (2 * k - 2) as f64;
        let lead = (2 * k) as f64;
        term *= -u2 * prev_lead / (lead * lead * (lead - 1.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs().max(1e-3) || k > 60 {
            break;
        }
        k += 1;
    }
    sum
}

/// Auxiliary functions `f(u) = ∫₀^∞ e^{-ut}/(1+t²) dt` and
/// `g(u) = ∫₀^∞ t e^{-ut}/(1+t²) dt`.
fn aux_fg(u: f64) -> (f64, f64) {
    if u >= ASYMPTOTIC_SWITCH {
        aux_fg_asymptotic(u)
    } else {
        aux_fg_continued_fraction(u)
    }
}

/// Modified Lentz evaluation of `w = e^z E1(z)` at `z = iu`. The even
/// contraction of the exponential-integral continued fraction is
/// `w = 1/(z+1 - 1²/(z+3 - 2²/(z+5 - ...)))`, and `w = g - i f`.
fn aux_fg_continued_fraction(u: f64) -> (f64, f64) {
    let z = Complex64::new(0.0, u);
    let tiny = Complex64::new(1e-290, 0.0);
    let mut b = z + 1.0;
    let mut c = Complex64::new(1e290, 0.0);
    let mut d = {
        let den = if b.norm_sqr() == 0.0 { tiny } else { b };
        den.inv()
    };
    let mut h = d;
    for k in 1..300 {
        let a = -((k * k) as f64);
        b += 2.0;
        d = b + a * d;
        if d.norm_sqr() < 1e-290 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm_sqr() < 1e-290 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-h.im, h.re)
}

fn aux_fg_asymptotic(u: f64) -> (f64, f64) {
    let u2 = u * u;
    // f ~ (1/u) Σ (-1)^k (2k)!/u^{2k}, g ~ (1/u²) Σ (-1)^k (2k+1)!/u^{2k}
    let mut f_sum = 0.0;
    let mut g_sum = 0.0;
    let mut f_term = 1.0;
    let mut g_term = 1.0;
    for k in 0..=8u32 {
        f_sum += f_term;
        g_sum += g_term;
        let two_k = (2 * k) as f64;
        f_term *= -(two_k + 1.0) * (two_k + 2.0) / u2;
        g_term *= -(two_k + 2.0) * (two_k + 3.0) / u2;
    }
    (f_sum / u, g_sum / u2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn si_at_zero() {
        assert_eq!(si(0.0).unwrap(), 0.0);
        assert_eq!(
            si_detailed(0.0).unwrap().method,
            SpecFunMethod::PowerSeries
        );
    }

    #[test]
    fn si_gibbs_constant() {
        // Si(π) = 1.8519370519824661… (series oracle value)
        assert!((si(PI).unwrap() - 1.8519370519824661).abs() < 1e-12);
    }

    #[test]
    fn ci_at_one() {
        assert!((ci(1.0).unwrap() - 0.3374039229009681).abs() < 1e-12);
    }

    #[test]
    fn ci_small_argument_log_behavior() {
        let u = 1e-6;
        let v = ci(u).unwrap();
        assert!((v - u.ln() - EULER_GAMMA).abs() <= u * u);
    }

    #[test]
    fn si_approaches_half_pi() {
        let u = 1e6;
        assert!((si(u).unwrap() - FRAC_PI_2).abs() < 2.0 / u);
    }

    #[test]
    fn ci_asymptotic_bound() {
        assert!(ci(100.0).unwrap().abs() <= 0.02);
    }

    #[test]
    fn branch_selection_matches_crossover() {
        assert_eq!(
            si_detailed(SERIES_CROSSOVER).unwrap().method,
            SpecFunMethod::PowerSeries
        );
        assert_eq!(
            si_detailed(SERIES_CROSSOVER + 1e-9).unwrap().method,
            SpecFunMethod::Asymptotic
        );
        assert_eq!(
            ci_detailed(3.0).unwrap().method,
            SpecFunMethod::PowerSeries
        );
        assert_eq!(
            ci_detailed(50.0).unwrap().method,
            SpecFunMethod::Asymptotic
        );
    }

    #[test]
    fn crossover_continuity() {
        // series and auxiliary-function branches must agree at the crossover
        let u = SERIES_CROSSOVER;
        let series_si = si_series(u);
        let series_ci = ci_series(u);
        let (f, g) = aux_fg_continued_fraction(u);
        let aux_si = FRAC_PI_2 - f * u.cos() - g * u.sin();
        let aux_ci = f * u.sin() - g * u.cos();
        assert!((series_si - aux_si).abs() <= 1e-10, "dSi {}", series_si - aux_si);
        assert!((series_ci - aux_ci).abs() <= 1e-10, "dCi {}", series_ci - aux_ci);
    }

    #[test]
    fn cf_and_asymptotic_agree_at_switch() {
        let u = ASYMPTOTIC_SWITCH;
        let (f1, g1) = aux_fg_continued_fraction(u);
        let (f2, g2) = aux_fg_asymptotic(u);
        assert!((f1 - f2).abs() < 1e-14);
        assert!((g1 - g2).abs() < 1e-14);
    }

    #[test]
    fn derivative_consistency() {
        for &u in &[0.5, 2.0, 10.0] {
            let h = 1e-4;
            let num = (si(u + h).unwrap() - si(u - h).unwrap()) / (2.0 * h);
            let exact = u.sin() / u;
            assert!((num - exact).abs() < 1e-7, "u {u}: {num} vs {exact}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(si(-1.0).is_err());
        assert!(ci(0.0).is_err());
        assert!(ci(-2.0).is_err());
    }
}
