//! Globally adaptive integration on a bounded interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::kronrod::{gk15, PANEL_EVALS};
use super::{QuadratureConfig, QuadratureResult, Status};
use crate::error::{Error, Result};

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    res_abs: f64,
    seq: u64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    // max-heap on error; ties broken by insertion order for determinism
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Adaptive estimate of `∫ₐᵇ h`, with subdivision forced at `breakpoints`.
///
/// The worst segment (largest error estimate) is bisected until the summed
/// error falls below `tol` (or below the roundoff floor of the integrand),
/// or until `cfg.max_segments` segments exist, in which case the status is
/// [`Status::MaxDepthReached`]. The final value is the sum of segment values
/// in ascending interval order, so the result does not depend on the
/// refinement history.
pub fn integrate_finite(
    h: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidSpec(format!(
            "integration interval [{a}, {b}] must be finite and non-empty"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidSpec(format!("tolerance {tol} must be positive")));
    }

    let mut cuts: Vec<f64> = vec![a];
    let mut bps: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > a && *p < b)
        .collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    cuts.extend(bps);
    cuts.push(b);

    let mut heap: BinaryHeap<Segment> = BinaryHeap::new();
    let mut done: Vec<Segment> = Vec::new();
    let mut seq = 0u64;
    let mut evaluations = 0u64;
    let mut total_err = 0.0;
    let mut total_res_abs = 0.0;

    let push = |heap: &mut BinaryHeap<Segment>,
                    lo: f64,
                    hi: f64,
                    seq: &mut u64,
                    evaluations: &mut u64,
                    total_err: &mut f64,
                    total_res_abs: &mut f64|
     -> Result<()> {
        let panel = gk15(h, lo, hi)?;
        *evaluations += PANEL_EVALS;
        *total_err += panel.abs_error;
        *total_res_abs += panel.res_abs;
        heap.push(Segment {
            a: lo,
            b: hi,
            value: panel.value,
            err: panel.abs_error,
            res_abs: panel.res_abs,
            seq: *seq,
        });
        *seq += 1;
        Ok(())
    };

    for w in cuts.windows(2) {
        push(
            &mut heap,
            w[0],
            w[1],
            &mut seq,
            &mut evaluations,
            &mut total_err,
            &mut total_res_abs,
        )?;
    }

    let mut status = Status::Converged;
    loop {
        let floor = 50.0 * f64::EPSILON * total_res_abs;
        if total_err <= tol.max(floor) {
            break;
        }
        if heap.len() + done.len() >= cfg.max_segments {
            status = Status::MaxDepthReached;
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => {
                // every segment is refinement-stuck
                status = Status::MaxDepthReached;
                break;
            }
        };
        let width = worst.b - worst.a;
        let min_width = 8.0 * f64::EPSILON * (worst.a.abs() + worst.b.abs()) + 1e-305;
        if width <= min_width {
            done.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        total_err -= worst.err;
        total_res_abs -= worst.res_abs;
        let (lo, hi) = (worst.a, worst.b);
        push(
            &mut heap,
            lo,
            mid,
            &mut seq,
            &mut evaluations,
            &mut total_err,
            &mut total_res_abs,
        )?;
        push(
            &mut heap,
            mid,
            hi,
            &mut seq,
            &mut evaluations,
            &mut total_err,
            &mut total_res_abs,
        )?;
    }

    let mut segments: Vec<Segment> = heap.into_vec();
    segments.extend(done);
    segments.sort_by(|s, t| s.a.total_cmp(&t.a));

    let mut value = 0.0;
    let mut err = 0.0;
    for s in &segments {
        value += s.value;
        err += s.err;
    }

    let floor = 50.0 * f64::EPSILON * total_res_abs;
    if status == Status::Converged && err > tol.max(floor) {
        status = Status::MaxDepthReached;
    }

    Ok(QuadratureResult {
        value,
        abs_error_estimate: err,
        status,
        evaluations,
    })
}

/// `integrate_finite` that treats an empty interval as an exact zero.
pub(crate) fn integrate_finite_or_zero(
    h: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if a >= b {
        return Ok(QuadratureResult::exact(0.0));
    }
    integrate_finite(h, a, b, tol, breakpoints, cfg)
}
