//! Admissible test functions and the family registry.
//!
//! A [`TestFunction`] models a locally absolutely continuous function of
//! bounded variation on `(0, ∞)` vanishing at infinity, represented by a
//! pair of evaluators `(f, f')` rather than samples, so quadrature can probe
//! arbitrary points. Where a family's cosine/sine transforms or related
//! derived quantities have closed forms they are attached, to serve as
//! oracles for the numerically computed paths.
//!
//! Shipped families (each with an optional dilation `lambda > 0` acting as
//! `f_λ(t) = f(λt)`):
//!
//! | id          | f(t)            | notes                                    |
//! |-------------|-----------------|------------------------------------------|
//! | `exp`       | e^{-t}          | cosine/sine transforms in closed form    |
//! | `triangle`  | (1-t)₊          | compact support, derivative jump at t=1  |
//! | `gaussian`  | e^{-t²}         | cosine transform in closed form          |
//! | `rational`  | 1/(1+t²)        | derivative is -2·t/(1+t²)²               |
//! | `log_decay` | 1/ln(e+t)       | exploratory: slowest admissible decay    |

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Coarse decay classification, used to pick integration heuristics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayClass {
    Compact,
    Exponential,
    Gaussian,
    Polynomial,
}

/// Closed-form companions of a test function, where known.
///
/// All maps are functions of the transform variable `x > 0`:
/// * `cosine_ft` — `∫₀^∞ f(t) cos(xt) dt`
/// * `sine_ft` — `∫₀^∞ f(t) sin(xt) dt`
/// * `hilbert_odd_of_fprime` — `(2/π) PV ∫₀^∞ t f'(t)/(t²-x²) dt`
/// * `script_t_of_fprime` — `(∫₀^∞ f'(t) sin(xt) dt)/x`
#[derive(Clone, Default)]
pub struct ClosedForms {
    pub cosine_ft: Option<RealFn>,
    pub sine_ft: Option<RealFn>,
    pub hilbert_odd_of_fprime: Option<RealFn>,
    pub script_t_of_fprime: Option<RealFn>,
}

/// A bounded-variation test function given by paired evaluators.
#[derive(Clone)]
pub struct TestFunction {
    pub id: String,
    pub params: BTreeMap<String, f64>,
    f: RealFn,
    fprime: RealFn,
    /// Point beyond which `f` vanishes identically, if any.
    pub support_hint: Option<f64>,
    pub decay_class: DecayClass,
    pub closed_forms: ClosedForms,
}

impl TestFunction {
    pub fn eval_f(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn eval_fprime(&self, t: f64) -> f64 {
        (self.fprime)(t)
    }

    pub fn eval_f_fn(&self) -> RealFn {
        self.f.clone()
    }

    pub fn eval_fprime_fn(&self) -> RealFn {
        self.fprime.clone()
    }

    /// Kink and jump locations of `f` or `f'` (the support edge, for the
    /// shipped families). Quadrature forces subdivision here.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self.support_hint {
            Some(s) => vec![s],
            None => vec![],
        }
    }

    /// Display label such as `exp` or `exp(lambda=4)`.
    pub fn display_name(&self) -> String {
        let lambda = self.params.get("lambda").copied().unwrap_or(1.0);
        if lambda == 1.0 {
            self.id.clone()
        } else {
            format!("{}(lambda={})", self.id, lambda)
        }
    }
}

/// Ids of the shipped families.
pub fn registry_ids() -> &'static [&'static str] {
    &["exp", "triangle", "gaussian", "rational", "log_decay"]
}

/// Fetch a family member by id and parameter map.
///
/// The only recognized parameter is `lambda` (the dilation, default 1);
/// unknown parameter names and non-positive dilations are rejected.
pub fn registry_get(id: &str, params: &BTreeMap<String, f64>) -> Result<TestFunction> {
    for key in params.keys() {
        if key != "lambda" {
            return Err(Error::InvalidParameter {
                name: key.clone(),
                value: params[key],
                reason: "unknown parameter (only `lambda` is recognized)".into(),
            });
        }
    }
    let lambda = params.get("lambda").copied().unwrap_or(1.0);
    let base = base_family(id)?;
    dilate(&base, lambda)
}

/// `f_λ(t) = f(λt)` with evaluators, support and closed forms rescaled.
pub fn dilate(f: &TestFunction, lambda: f64) -> Result<TestFunction> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter {
            name: "lambda".into(),
            value: lambda,
            reason: "dilation must be positive and finite".into(),
        });
    }
    if lambda == 1.0 {
        return Ok(f.clone());
    }
    let lf = f.f.clone();
    let lfp = f.fprime.clone();
    let scaled_transform = |cf: &Option<RealFn>, lambda: f64| -> Option<RealFn> {
        cf.as_ref().map(|c| {
            let c = c.clone();
            Arc::new(move |x: f64| c(x / lambda) / lambda) as RealFn
        })
    };
    let scaled_hilbert = |cf: &Option<RealFn>, lambda: f64| -> Option<RealFn> {
        cf.as_ref().map(|c| {
            let c = c.clone();
            Arc::new(move |x: f64| lambda * c(lambda * x)) as RealFn
        })
    };
    let mut params = f.params.clone();
    let total = params.get("lambda").copied().unwrap_or(1.0) * lambda;
    params.insert("lambda".into(), total);
    Ok(TestFunction {
        id: f.id.clone(),
        params,
        f: Arc::new(move |t| lf(lambda * t)),
        fprime: Arc::new(move |t| lambda * lfp(lambda * t)),
        support_hint: f.support_hint.map(|s| s / lambda),
        decay_class: f.decay_class,
        closed_forms: ClosedForms {
            cosine_ft: scaled_transform(&f.closed_forms.cosine_ft, lambda),
            sine_ft: scaled_transform(&f.closed_forms.sine_ft, lambda),
            hilbert_odd_of_fprime: scaled_hilbert(&f.closed_forms.hilbert_odd_of_fprime, lambda),
            script_t_of_fprime: scaled_transform(&f.closed_forms.script_t_of_fprime, lambda),
        },
    })
}

fn base_family(id: &str) -> Result<TestFunction> {
    let mut params = BTreeMap::new();
    params.insert("lambda".to_string(), 1.0);
    let tf = match id {
        "exp" => TestFunction {
            id: id.into(),
            params,
            f: Arc::new(|t: f64| (-t).exp()),
            fprime: Arc::new(|t: f64| -(-t).exp()),
            support_hint: None,
            decay_class: DecayClass::Exponential,
            closed_forms: ClosedForms {
                cosine_ft: Some(Arc::new(|x: f64| 1.0 / (1.0 + x * x))),
                sine_ft: Some(Arc::new(|x: f64| x / (1.0 + x * x))),
                hilbert_odd_of_fprime: None,
                script_t_of_fprime: Some(Arc::new(|x: f64| -1.0 / (1.0 + x * x))),
            },
        },
        "triangle" => TestFunction {
            id: id.into(),
            params,
            f: Arc::new(|t: f64| (1.0 - t).max(0.0)),
            fprime: Arc::new(|t: f64| if t < 1.0 { -1.0 } else { 0.0 }),
            support_hint: Some(1.0),
            decay_class: DecayClass::Compact,
            closed_forms: ClosedForms {
                cosine_ft: Some(Arc::new(triangle_cosine_ft)),
                sine_ft: Some(Arc::new(triangle_sine_ft)),
                // (2/π) PV ∫₀¹ -t/(t²-x²) dt = (1/π) ln(x²/|1-x²|)
                hilbert_odd_of_fprime: Some(Arc::new(|x: f64| {
                    (x * x / (1.0 - x * x).abs()).ln() / std::f64::consts::PI
                })),
                script_t_of_fprime: Some(Arc::new(|x: f64| -triangle_cosine_ft(x))),
            },
        },
        "gaussian" => TestFunction {
            id: id.into(),
            params,
            f: Arc::new(|t: f64| (-t * t).exp()),
            fprime: Arc::new(|t: f64| -2.0 * t * (-t * t).exp()),
            support_hint: None,
            decay_class: DecayClass::Gaussian,
            closed_forms: ClosedForms {
                cosine_ft: Some(Arc::new(gaussian_cosine_ft)),
                sine_ft: None,
                hilbert_odd_of_fprime: None,
                script_t_of_fprime: Some(Arc::new(|x: f64| -gaussian_cosine_ft(x))),
            },
        },
        "rational" => TestFunction {
            id: id.into(),
            params,
            f: Arc::new(|t: f64| 1.0 / (1.0 + t * t)),
            fprime: Arc::new(|t: f64| {
                let d = 1.0 + t * t;
                -2.0 * t / (d * d)
            }),
            support_hint: None,
            decay_class: DecayClass::Polynomial,
            closed_forms: ClosedForms {
                cosine_ft: Some(Arc::new(|x: f64| std::f64::consts::FRAC_PI_2 * (-x).exp())),
                sine_ft: None,
                // f' = -2 g with g = t/(1+t²)², and H₀g = (1-x²)/(2(1+x²)²)
                hilbert_odd_of_fprime: Some(Arc::new(|x: f64| {
                    let d = 1.0 + x * x;
                    -(1.0 - x * x) / (d * d)
                })),
                script_t_of_fprime: Some(Arc::new(|x: f64| {
                    -std::f64::consts::FRAC_PI_2 * (-x).exp()
                })),
            },
        },
        "log_decay" => TestFunction {
            id: id.into(),
            params,
            f: Arc::new(|t: f64| 1.0 / (std::f64::consts::E + t).ln()),
            fprime: Arc::new(|t: f64| {
                let e_t = std::f64::consts::E + t;
                let l = e_t.ln();
                -1.0 / (e_t * l * l)
            }),
            support_hint: None,
            decay_class: DecayClass::Polynomial,
            closed_forms: ClosedForms::default(),
        },
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Ok(tf)
}

// (1 - cos x)/x² with a series branch against cancellation at small x.
fn triangle_cosine_ft(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        0.5 - x2 / 24.0 + x2 * x2 / 720.0
    } else {
        (1.0 - x.cos()) / (x * x)
    }
}

// (x - sin x)/x², series branch at small x.
fn triangle_sine_ft(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        x / 6.0 * (1.0 - x2 / 20.0 + x2 * x2 / 840.0)
    } else {
        (x - x.sin()) / (x * x)
    }
}

fn gaussian_cosine_ft(x: f64) -> f64 {
    0.5 * std::f64::consts::PI.sqrt() * (-x * x / 4.0).exp()
}

/// A family id with a grid of parameter maps to instantiate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family_id: String,
    pub parameter_grid: Vec<BTreeMap<String, f64>>,
}

impl FamilySpec {
    pub fn instantiate(&self) -> Result<Vec<TestFunction>> {
        self.parameter_grid
            .iter()
            .map(|p| registry_get(&self.family_id, p))
            .collect()
    }
}

/// JSON addressing of one family member:
/// `{"family": "exp", "params": {}, "lambda": 2.0}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyRequest {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub lambda: Option<f64>,
}

/// Resolve a [`FamilyRequest`]; an explicit top-level `lambda` overrides a
/// `lambda` entry inside `params`.
pub fn registry_get_request(req: &FamilyRequest) -> Result<TestFunction> {
    let mut params = req.params.clone();
    if let Some(l) = req.lambda {
        params.insert("lambda".into(), l);
    }
    registry_get(&req.family, &params)
}

/// Parse and resolve a JSON request string.
pub fn registry_get_json(json: &str) -> Result<TestFunction> {
    let req: FamilyRequest =
        serde_json::from_str(json).map_err(|e| Error::MalformedRequest(e.to_string()))?;
    registry_get_request(&req)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda(l: f64) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        m.insert("lambda".to_string(), l);
        m
    }

    #[test]
    fn exp_at_zero() {
        let f = registry_get("exp", &lambda(1.0)).unwrap();
        assert_eq!(f.eval_f(0.0), 1.0);
    }

    #[test]
    fn triangle_vanishes_past_support() {
        let f = registry_get("triangle", &lambda(1.0)).unwrap();
        assert_eq!(f.eval_f(2.0), 0.0);
        assert_eq!(f.support_hint, Some(1.0));
    }

    #[test]
    fn exp_cosine_closed_form() {
        let f = registry_get("exp", &lambda(1.0)).unwrap();
        let cf = f.closed_forms.cosine_ft.as_ref().unwrap();
        assert_eq!(cf(1.0), 0.5);
    }

    #[test]
    fn unknown_family_and_bad_lambda() {
        assert!(matches!(
            registry_get("nope", &BTreeMap::new()),
            Err(Error::UnknownFamily(_))
        ));
        assert!(registry_get("exp", &lambda(0.0)).is_err());
        assert!(registry_get("exp", &lambda(-2.0)).is_err());
    }

    #[test]
    fn identity_dilation() {
        let f = registry_get("exp", &lambda(1.0)).unwrap();
        let g = dilate(&f, 1.0).unwrap();
        for &t in &[0.0, 0.5, 3.0] {
            assert_eq!(f.eval_f(t), g.eval_f(t));
        }
    }

    #[test]
    fn dilation_substitutes() {
        let f = registry_get("exp", &lambda(2.0)).unwrap();
        assert!((f.eval_f(1.0) - (-2.0_f64).exp()).abs() < 1e-15);
        assert!((f.eval_fprime(1.0) + 2.0 * (-2.0_f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn dilation_rescales_closed_forms() {
        let f = registry_get("exp", &lambda(2.0)).unwrap();
        let cf = f.closed_forms.cosine_ft.as_ref().unwrap();
        // (1/2)·1/(1+(x/2)²) at x = 2 is 1/4
        assert!((cf(2.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn triangle_small_x_series_matches_direct() {
        for &x in &[9e-4, 1.1e-3] {
            assert!((triangle_cosine_ft(x) - (1.0 - x.cos()) / (x * x)).abs() < 1e-11);
            assert!((triangle_sine_ft(x) - (x - x.sin()) / (x * x)).abs() < 1e-11);
        }
    }

    #[test]
    fn json_request_roundtrip() {
        let f = registry_get_json(r#"{"family":"triangle","params":{},"lambda":4.0}"#).unwrap();
        assert_eq!(f.support_hint, Some(0.25));
        assert!(registry_get_json(r#"{"family":"??"}"#).is_err());
        assert!(registry_get_json("not json").is_err());
    }

    #[test]
    fn unknown_param_rejected() {
        let mut m = BTreeMap::new();
        m.insert("width".to_string(), 2.0);
        assert!(registry_get("exp", &m).is_err());
    }
}
