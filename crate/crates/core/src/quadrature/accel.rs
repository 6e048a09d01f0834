//! Sequence acceleration: Wynn's epsilon algorithm for block partial sums
//! and Richardson extrapolation for excision ladders.

/// Wynn epsilon table fed with partial sums of a slowly convergent
/// (typically alternating) series.
///
/// Only the current anti-diagonal is stored. `push` returns the current best
/// limit estimate; `settle_error` measures how much the estimate moved over
/// the last few pushes.
pub(crate) struct EpsilonAccelerator {
    diag: Vec<f64>,
    best_history: Vec<f64>,
    frozen: Option<f64>,
    cap: usize,
}

impl EpsilonAccelerator {
    pub fn new() -> Self {
        EpsilonAccelerator {
            diag: Vec::new(),
            best_history: Vec::new(),
            frozen: None,
            cap: 64,
        }
    }

    pub fn push(&mut self, s: f64) -> f64 {
        if let Some(v) = self.frozen {
            self.best_history.push(v);
            return v;
        }
        if self.diag.len() >= self.cap {
            // table full: stop extending, keep reporting the last estimate
            let last = *self.best_history.last().unwrap_or(&s);
            self.best_history.push(last);
            return last;
        }
        self.diag.push(s);
        let n = self.diag.len();
        let mut prev = 0.0; // epsilon of order -1
        for j in (0..n - 1).rev() {
            let tmp = self.diag[j];
            let delta = self.diag[j + 1] - tmp;
            let scale = tmp.abs().max(self.diag[j + 1].abs());
            let update = if delta.abs() <= 4.0 * f64::EPSILON * scale {
                // adjacent entries of one column agree to machine accuracy.
                // For an even (limit-estimating) column this is convergence;
                // extending the table past it only amplifies roundoff.
                if (n - 2 - j) % 2 == 0 {
                    self.frozen = Some(self.diag[j + 1]);
                }
                prev
            } else {
                prev + 1.0 / delta
            };
            prev = tmp;
            self.diag[j] = update;
        }
        if let Some(v) = self.frozen {
            self.best_history.push(v);
            return v;
        }
        // even-order entries estimate the limit; the highest-order even entry
        // sits at index 0 when n is odd, index 1 otherwise
        let best = if n % 2 == 1 {
            self.diag[0]
        } else if n >= 2 {
            self.diag[1]
        } else {
            self.diag[0]
        };
        self.best_history.push(best);
        best
    }

    /// How much the best estimate changed over the most recent pushes;
    /// infinite until at least three pushes happened.
    pub fn settle_error(&self) -> f64 {
        let n = self.best_history.len();
        if n < 3 {
            return f64::INFINITY;
        }
        let d1 = (self.best_history[n - 1] - self.best_history[n - 2]).abs();
        let d2 = (self.best_history[n - 2] - self.best_history[n - 3]).abs();
        d1 + 0.5 * d2 + f64::EPSILON * self.best_history[n - 1].abs()
    }

    pub fn best(&self) -> Option<f64> {
        self.best_history.last().copied()
    }
}

/// Three-point Richardson extrapolants for a radius-halving excision ladder.
///
/// The excision error of a principal-value integral expands in odd powers of
/// the radius, `I(d) = I + c1 d + c3 d^3 + O(d^5)`. For rungs `d, d/2, d/4`
/// both leading coefficients cancel in
/// `(16 I(d/4) - 10 I(d/2) + I(d)) / 7`.
pub(crate) fn richardson_extrapolants(ladder_values: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for k in 2..ladder_values.len() {
        out.push(
            (16.0 * ladder_values[k] - 10.0 * ladder_values[k - 1] + ladder_values[k - 2]) / 7.0,
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_accelerates_alternating_log2() {
        // 1 - 1/2 + 1/3 - ... = ln 2
        let mut acc = EpsilonAccelerator::new();
        let mut s = 0.0;
        let mut best = 0.0;
        for n in 1..=16 {
            s += if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            best = acc.push(s);
        }
        assert!((best - 2.0_f64.ln()).abs() < 1e-10, "best {best}");
        assert!(acc.settle_error() < 1e-8);
    }

    #[test]
    fn epsilon_handles_geometric() {
        let mut acc = EpsilonAccelerator::new();
        let mut s = 0.0;
        let mut best = 0.0;
        for n in 0..8 {
            s += 0.5_f64.powi(n);
            best = acc.push(s);
        }
        assert!((best - 2.0).abs() < 1e-12);
    }

    #[test]
    fn richardson_kills_linear_and_cubic() {
        // I(d) = 3 + 2d - 5 d³ with d = 1/8 · 2^-k
        let vals: Vec<f64> = (0..6)
            .map(|k| {
                let d = 0.125 * 0.5_f64.powi(k);
                3.0 + 2.0 * d - 5.0 * d * d * d
            })
            .collect();
        let ex = richardson_extrapolants(&vals);
        assert!((ex.last().unwrap() - 3.0).abs() < 1e-12);
    }
}
