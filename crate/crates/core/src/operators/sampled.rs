//! Uniform-grid function samples with an optional set-membership mask.

use crate::error::{FraktalError, Result};

/// Samples of a real function on a strictly ascending uniform grid.
///
/// The optional mask marks grid points belonging to the underlying fractal
/// set; F-limits are taken through masked-true points only. Values at
/// masked-true points must be finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    xs: Vec<f64>,
    values: Vec<f64>,
    mask: Option<Vec<bool>>,
    step: f64,
}

impl SampledFunction {
    pub fn new(xs: Vec<f64>, values: Vec<f64>, mask: Option<Vec<bool>>) -> Result<Self> {
        if xs.len() < 3 {
            return Err(FraktalError::Validation("need at least three samples".into()));
        }
        if values.len() != xs.len() {
            return Err(FraktalError::Validation("grid/value lengths differ".into()));
        }
        if let Some(m) = &mask {
            if m.len() != xs.len() {
                return Err(FraktalError::Validation("mask length differs".into()));
            }
        }
        let step = xs[1] - xs[0];
        if !(step > 0.0) {
            return Err(FraktalError::Validation("grid must ascend".into()));
        }
        for w in xs.windows(2) {
            let dx = w[1] - w[0];
            if (dx - step).abs() > step * 1e-12 {
                return Err(FraktalError::Validation(format!(
                    "grid step varies: {dx} vs {step} (tolerance 1e-12 relative)"
                )));
            }
        }
        for (i, v) in values.iter().enumerate() {
            let masked_in = mask.as_ref().map_or(true, |m| m[i]);
            if masked_in && !v.is_finite() {
                return Err(FraktalError::Validation(format!(
                    "non-finite value {v} at admissible grid point {}",
                    xs[i]
                )));
            }
        }
        Ok(Self { xs, values, mask, step })
    }

    /// Samples `f` on the `n`-point uniform grid over `[lo, hi]`.
    pub fn from_fn(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 3 || !(hi > lo) {
            return Err(FraktalError::Validation(
                "from_fn needs n >= 3 and hi > lo".into(),
            ));
        }
        let step = (hi - lo) / ((n - 1) as f64);
        let xs: Vec<f64> = (0..n).map(|i| lo + (i as f64) * step).collect();
        let values: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, values, None)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mask(&self) -> Option<&[bool]> {
        self.mask.as_deref()
    }

    /// Whether grid point `i` is admissible for F-limits.
    pub fn admissible(&self, i: usize) -> bool {
        self.mask.as_ref().map_or(true, |m| m[i])
    }

    /// Index of the grid point equal to `x` (within `step * 1e-6`).
    pub fn index_of(&self, x: f64) -> Result<usize> {
        let i = self.xs.partition_point(|&g| g < x);
        let tol = self.step * 1e-6;
        for cand in [i.saturating_sub(1), i] {
            if cand < self.xs.len() && (self.xs[cand] - x).abs() <= tol {
                return Ok(cand);
            }
        }
        Err(FraktalError::Validation(format!("x = {x} is not a grid point")))
    }

    /// Linear interpolation; exact at grid points.
    pub fn interp(&self, x: f64) -> Result<f64> {
        let n = self.xs.len();
        let tol = self.step * 1e-9;
        if x < self.xs[0] - tol || x > self.xs[n - 1] + tol {
            return Err(FraktalError::Range(format!(
                "x = {x} outside sampled domain [{}, {}]",
                self.xs[0],
                self.xs[n - 1]
            )));
        }
        let j = self.xs.partition_point(|&g| g < x);
        if j < n && (self.xs[j] - x).abs() <= tol {
            return Ok(self.values[j]);
        }
        if j > 0 && (self.xs[j - 1] - x).abs() <= tol {
            return Ok(self.values[j - 1]);
        }
        let j = j.clamp(1, n - 1);
        let t = (x - self.xs[j - 1]) / (self.xs[j] - self.xs[j - 1]);
        Ok(self.values[j - 1] + (self.values[j] - self.values[j - 1]) * t)
    }

    /// Second-order derivative stencil at node `i`, one-sided at the ends
    /// of the node range `[lo, hi]` and centered inside it.
    pub fn node_derivative_in(&self, i: usize, lo: usize, hi: usize) -> f64 {
        let v = &self.values;
        let h = self.step;
        debug_assert!(lo <= i && i <= hi && hi < v.len());
        if i == lo && i + 2 <= hi {
            (-3.0 * v[i] + 4.0 * v[i + 1] - v[i + 2]) / (2.0 * h)
        } else if i == hi && i >= lo + 2 {
            (3.0 * v[i] - 4.0 * v[i - 1] + v[i - 2]) / (2.0 * h)
        } else if i > lo && i < hi {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        } else {
            // Window narrower than three nodes: fall back to the secant.
            let j = if i == lo { i + 1 } else { i - 1 };
            (v[j.max(i)] - v[j.min(i)]) / h
        }
    }

    /// Derivative stencil with the whole grid as the node range.
    pub fn node_derivative(&self, i: usize) -> f64 {
        self.node_derivative_in(i, 0, self.xs.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonuniform_grid() {
        assert!(SampledFunction::new(vec![0.0, 0.1, 0.3], vec![0.0; 3], None).is_err());
    }

    #[test]
    fn rejects_nonfinite_admissible_values() {
        assert!(SampledFunction::new(vec![0.0, 0.1, 0.2], vec![0.0, f64::NAN, 0.0], None).is_err());
        // Non-finite values are fine at masked-out points.
        assert!(SampledFunction::new(
            vec![0.0, 0.1, 0.2],
            vec![0.0, f64::NAN, 0.0],
            Some(vec![true, false, true]),
        )
        .is_ok());
    }

    #[test]
    fn stencils_are_second_order_exact_on_quadratics() {
        let f = SampledFunction::from_fn(|x| x * x, 0.0, 1.0, 11).unwrap();
        // d/dx x^2 = 2x reproduced exactly by 2nd-order stencils.
        for i in 0..f.len() {
            let want = 2.0 * f.xs()[i];
            assert!((f.node_derivative(i) - want).abs() < 1e-12, "i = {i}");
        }
    }

    #[test]
    fn interp_hits_nodes_exactly() {
        let f = SampledFunction::from_fn(f64::exp, 0.0, 1.0, 101).unwrap();
        let x = f.xs()[37];
        assert_eq!(f.interp(x).unwrap(), f.values()[37]);
        assert!(f.interp(-0.1).is_err());
    }

    #[test]
    fn index_of_finds_grid_points() {
        let f = SampledFunction::from_fn(|x| x, 0.0, 1.0, 11).unwrap();
        assert_eq!(f.index_of(0.5).unwrap(), 5);
        assert!(f.index_of(0.55).is_err());
    }
}
