//! Mass distributions, staircase functions, and box-counting dimension
//! estimates over grid delta-covers.
//!
//! The mass of `[a, b]` is `N * delta^alpha` where `N` counts cover boxes
//! whose overlap with `[a, b]` has positive length. Counting by positive
//! overlap makes the mass exactly additive at box boundaries and leaves the
//! staircase flat across gaps of the set wider than `delta`. The staircase
//! is signed below its base point (`S(x) = -mass(x, a0)` for `x < a0`) so
//! that it is monotone non-decreasing with `S(a0) = 0`.

use serde::Serialize;

use crate::error::{FraktalError, Result};
use crate::geometry::{delta_cover, DeltaCover, IntervalSet};

/// Monotone sampled map `x -> S(x)` built from a delta-cover.
#[derive(Debug, Clone, PartialEq)]
pub struct StaircaseFunction {
    grid: Vec<f64>,
    values: Vec<f64>,
    alpha: f64,
    delta: f64,
    a0: f64,
}

impl StaircaseFunction {
    /// Wraps precomputed samples; the grid must ascend strictly and the
    /// values must be non-decreasing.
    pub fn from_samples(
        grid: Vec<f64>,
        values: Vec<f64>,
        alpha: f64,
        delta: f64,
        a0: f64,
    ) -> Result<Self> {
        if grid.is_empty() || grid.len() != values.len() {
            return Err(FraktalError::Validation(
                "staircase grid/value lengths must match and be non-empty".into(),
            ));
        }
        for w in grid.windows(2) {
            if !(w[1] > w[0]) {
                return Err(FraktalError::Validation("staircase grid must ascend".into()));
            }
        }
        for w in values.windows(2) {
            if w[1] < w[0] {
                return Err(FraktalError::Validation(
                    "staircase values must be non-decreasing".into(),
                ));
            }
        }
        Ok(Self { grid, values, alpha, delta, a0 })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// Evaluates at `x`: exact sample on grid hits (within a small
    /// tolerance), linear interpolation between samples otherwise.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let n = self.grid.len();
        let span = self.grid[n - 1] - self.grid[0];
        let tol = span.max(1.0) * 1e-12;
        if x < self.grid[0] - tol || x > self.grid[n - 1] + tol {
            return Err(FraktalError::Range(format!(
                "x = {x} outside staircase grid [{}, {}]",
                self.grid[0],
                self.grid[n - 1]
            )));
        }
        let j = self.grid.partition_point(|&g| g < x);
        if j < n && (self.grid[j] - x).abs() <= tol {
            return Ok(self.values[j]);
        }
        if j > 0 && (self.grid[j - 1] - x).abs() <= tol {
            return Ok(self.values[j - 1]);
        }
        let j = j.clamp(1, n - 1);
        let (x0, x1) = (self.grid[j - 1], self.grid[j]);
        let t = (x - x0) / (x1 - x0);
        Ok(self.values[j - 1] + (self.values[j] - self.values[j - 1]) * t)
    }

    /// Serializes to CSV with header `x,S`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,S\n");
        for (x, s) in self.grid.iter().zip(&self.values) {
            out.push_str(&format!("{:.16e},{:.16e}\n", x, s));
        }
        out
    }
}

/// Box-counting dimension estimate from a ladder of deltas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub alpha_hat: f64,
    pub stderr: f64,
    pub pairs: Vec<(f64, u64)>,
}

impl DimensionEstimate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate serializes")
    }
}

fn validate_mass_params(alpha: f64, delta: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(FraktalError::Validation(format!("alpha {alpha} not in (0, 1]")));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(FraktalError::Validation(format!("delta {delta} must be > 0")));
    }
    Ok(())
}

/// Number of cover boxes whose overlap with `[a, b]` has positive length.
///
/// Strict comparisons make the count exactly additive when split at a box
/// boundary: a box contributes to `[a, b]` iff its left edge lies below `b`
/// and its right edge above `a`.
fn count_boxes_in_range(cover: &DeltaCover, a: f64, b: f64) -> usize {
    let boxes = cover.boxes();
    // Left edges ascend with k, so both predicates are monotone in k.
    let below_b = boxes.partition_point(|&k| cover.box_lo(k) < b);
    let above_a = boxes.partition_point(|&k| cover.box_hi(k) <= a);
    below_b.saturating_sub(above_a)
}

/// Mass distribution of `[a, b]`: `N * delta^alpha` with `N` the number of
/// cover boxes meeting both the set and `[a, b]` with positive overlap.
pub fn mass_distribution(
    set: &IntervalSet,
    alpha: f64,
    delta: f64,
    a: f64,
    b: f64,
) -> Result<f64> {
    validate_mass_params(alpha, delta)?;
    if !(a <= b) {
        return Err(FraktalError::Validation(format!("range [{a}, {b}] has a > b")));
    }
    let cover = delta_cover(set, delta, 0.0)?;
    Ok(count_boxes_in_range(&cover, a, b) as f64 * delta.powf(alpha))
}

/// Builds the staircase `S(x)` over `grid`: cumulative mass from `a0`,
/// signed below the base point, with `S(a0) = 0` exactly.
pub fn staircase(
    set: &IntervalSet,
    alpha: f64,
    delta: f64,
    a0: f64,
    grid: &[f64],
) -> Result<StaircaseFunction> {
    validate_mass_params(alpha, delta)?;
    if grid.is_empty() {
        return Err(FraktalError::Validation("staircase grid is empty".into()));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(FraktalError::Validation("staircase grid must ascend".into()));
        }
    }
    let cover = delta_cover(set, delta, 0.0)?;
    let weight = delta.powf(alpha);
    let values: Vec<f64> = grid
        .iter()
        .map(|&x| {
            if x > a0 {
                count_boxes_in_range(&cover, a0, x) as f64 * weight
            } else if x < a0 {
                -(count_boxes_in_range(&cover, x, a0) as f64) * weight
            } else {
                0.0
            }
        })
        .collect();
    StaircaseFunction::from_samples(grid.to_vec(), values, alpha, delta, a0)
}

/// Least-squares slope of `ln N` against `ln(1/delta)` with the standard
/// error of the slope.
pub fn box_counting_dimension(set: &IntervalSet, deltas: &[f64]) -> Result<DimensionEstimate> {
    if deltas.len() < 2 {
        return Err(FraktalError::Validation("need at least two deltas".into()));
    }
    let mut distinct = deltas.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(FraktalError::Validation("deltas must contain two distinct values".into()));
    }
    let mut pairs = Vec::with_capacity(deltas.len());
    for &d in deltas {
        if !(d > 0.0) {
            return Err(FraktalError::Validation(format!("delta {d} must be > 0")));
        }
        let n = delta_cover(set, d, 0.0)?.box_count();
        if n == 0 {
            return Err(FraktalError::Validation(format!("empty cover at delta {d}")));
        }
        pairs.push((d, n as u64));
    }
    let xs: Vec<f64> = pairs.iter().map(|&(d, _)| (1.0 / d).ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|&(_, n)| (n as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(FraktalError::Validation("degenerate regression: all deltas equal".into()));
    }
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (slope * x + icpt);
            r * r
        })
        .sum();
    let stderr = if xs.len() > 2 { (rss / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok(DimensionEstimate { alpha_hat: slope, stderr, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_prefractal, IfsSpec};

    const LN2_LN3: f64 = 0.6309297535714574;

    #[test]
    fn cantor_level_1_unit_mass() {
        // (1/3)^(ln2/ln3) = 1/2 analytically, so two boxes weigh 1.
        let set = build_prefractal(&IfsSpec::cantor(), 1).unwrap();
        let m = mass_distribution(&set, LN2_LN3, 1.0 / 3.0, 0.0, 1.0).unwrap();
        assert!((m - 1.0).abs() < 1e-12, "m = {m}");
    }

    #[test]
    fn degenerate_range_counts_at_most_one_box() {
        let set = build_prefractal(&IfsSpec::cantor(), 2).unwrap();
        let w = 0.01_f64.powf(LN2_LN3);
        for a in [0.0, 0.005, 0.105, 0.5, 1.0] {
            let m = mass_distribution(&set, LN2_LN3, 0.01, a, a).unwrap();
            assert!(m == 0.0 || (m - w).abs() < 1e-15, "a = {a}, m = {m}");
        }
    }

    #[test]
    fn mass_rejects_bad_parameters() {
        let set = IntervalSet::unit();
        assert!(mass_distribution(&set, 0.0, 0.1, 0.0, 1.0).is_err());
        assert!(mass_distribution(&set, 1.5, 0.1, 0.0, 1.0).is_err());
        assert!(mass_distribution(&set, 0.5, -0.1, 0.0, 1.0).is_err());
        assert!(mass_distribution(&set, 0.5, 0.1, 0.7, 0.2).is_err());
    }

    #[test]
    fn staircase_base_point_and_endpoint() {
        let set = build_prefractal(&IfsSpec::cantor(), 1).unwrap();
        let grid: Vec<f64> = (0..=3).map(|i| i as f64 / 3.0).collect();
        let s = staircase(&set, LN2_LN3, 1.0 / 3.0, 0.0, &grid).unwrap();
        assert_eq!(s.values()[0], 0.0);
        assert!((s.values()[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn staircase_is_signed_below_base_point() {
        let set = IntervalSet::unit();
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        let s = staircase(&set, 1.0, 0.1, 1.0, &grid).unwrap();
        // S(1) = 0 and S(x) = -(1 - x) at box boundaries; non-decreasing.
        assert_eq!(*s.values().last().unwrap(), 0.0);
        assert!((s.values()[0] + 1.0).abs() < 1e-12);
        for w in s.values().windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn staircase_flat_on_the_gap() {
        let set = build_prefractal(&IfsSpec::cantor(), 2).unwrap();
        let delta = 0.01;
        let grid: Vec<f64> = (0..=1000).map(|i| i as f64 * 1e-3).collect();
        let s = staircase(&set, LN2_LN3, delta, 0.0, &grid).unwrap();
        let lo = 1.0 / 3.0 + delta;
        let hi = 2.0 / 3.0 - delta;
        let vals: Vec<f64> = s
            .grid()
            .iter()
            .zip(s.values())
            .filter(|(x, _)| **x >= lo && **x <= hi)
            .map(|(_, v)| *v)
            .collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn staircase_rejects_empty_grid() {
        let set = IntervalSet::unit();
        assert!(staircase(&set, 0.5, 0.1, 0.0, &[]).is_err());
    }

    #[test]
    fn full_interval_dimension_is_one() {
        let set = IntervalSet::unit();
        let deltas: Vec<f64> = (1..=8).map(|k| 2.0_f64.powi(-k)).collect();
        let est = box_counting_dimension(&set, &deltas).unwrap();
        assert!((est.alpha_hat - 1.0).abs() < 1e-12, "got {}", est.alpha_hat);
    }

    #[test]
    fn aligned_cantor_ladder_is_exact() {
        let set = build_prefractal(&IfsSpec::cantor(), 6).unwrap();
        let deltas: Vec<f64> = (1..=6).map(|k| 3.0_f64.powi(-k)).collect();
        let est = box_counting_dimension(&set, &deltas).unwrap();
        for (i, &(_, n)) in est.pairs.iter().enumerate() {
            assert_eq!(n, 1u64 << (i + 1));
        }
        assert!((est.alpha_hat - LN2_LN3).abs() < 1e-12);
        assert!(est.stderr < 1e-12);
    }

    #[test]
    fn dimension_rejects_degenerate_ladders() {
        let set = IntervalSet::unit();
        assert!(box_counting_dimension(&set, &[0.1]).is_err());
        assert!(box_counting_dimension(&set, &[0.1, 0.1]).is_err());
    }

    #[test]
    fn estimate_json_keys() {
        let set = IntervalSet::unit();
        let est = box_counting_dimension(&set, &[0.5, 0.25]).unwrap();
        let json = est.to_json();
        assert!(json.contains("\"alpha_hat\""));
        assert!(json.contains("\"stderr\""));
        assert!(json.contains("\"pairs\""));
    }

    #[test]
    fn staircase_eval_interpolates_and_checks_range() {
        let s = StaircaseFunction::from_samples(
            vec![0.0, 1.0, 2.0],
            vec![0.0, 1.0, 1.5],
            0.5,
            0.1,
            0.0,
        )
        .unwrap();
        assert_eq!(s.eval(1.0).unwrap(), 1.0);
        assert!((s.eval(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!(s.eval(-0.5).is_err());
        assert!(s.eval(2.5).is_err());
    }

    #[test]
    fn from_samples_rejects_decreasing_values() {
        assert!(StaircaseFunction::from_samples(
            vec![0.0, 1.0],
            vec![1.0, 0.5],
            0.5,
            0.1,
            0.0
        )
        .is_err());
    }
}
