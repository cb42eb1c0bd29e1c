//! Prefractal interval sets from iterated function systems and their
//! grid delta-covers.
//!
//! An [`IfsSpec`] is a list of affine contractions `x -> ratio*x + offset`
//! on the unit interval. Iterating the maps from `[0, 1]` produces the
//! level-n prefractal as a sorted union of disjoint closed intervals. A
//! [`DeltaCover`] enumerates the grid boxes `[origin + k*delta, origin +
//! (k+1)*delta]` whose intersection with the set has positive length; the
//! fixed-origin grid convention is the usual box-counting approximation of
//! the Hausdorff infimum over arbitrary covers.

use crate::error::{FraktalError, Result};

/// Default cap on the prefractal construction depth.
pub const DEFAULT_LEVEL_CAP: u32 = 20;

/// Relative slack (in units of `delta`) below which a box/interval overlap
/// is treated as empty. Absorbs ulp-level misalignment between grid edges
/// and interval endpoints without admitting spurious boxes.
const OVERLAP_TOL_FACTOR: f64 = 1e-9;

/// One affine contraction `x -> ratio*x + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfsMap {
    pub ratio: f64,
    pub offset: f64,
}

/// An iterated function system of contractions mapping `[0,1]` into itself
/// with pairwise interior-disjoint images (open-set condition).
#[derive(Debug, Clone, PartialEq)]
pub struct IfsSpec {
    maps: Vec<IfsMap>,
}

impl IfsSpec {
    /// Validates and wraps a list of maps.
    pub fn new(maps: Vec<IfsMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(FraktalError::Validation("IFS needs at least one map".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if !(m.ratio > 0.0 && m.ratio < 1.0) {
                return Err(FraktalError::Validation(format!(
                    "map {i}: ratio {} not in (0, 1)",
                    m.ratio
                )));
            }
            if !(m.offset >= 0.0 && m.offset < 1.0) {
                return Err(FraktalError::Validation(format!(
                    "map {i}: offset {} not in [0, 1)",
                    m.offset
                )));
            }
            if m.offset + m.ratio > 1.0 {
                return Err(FraktalError::Validation(format!(
                    "map {i}: image [{}, {}] leaves [0, 1]",
                    m.offset,
                    m.offset + m.ratio
                )));
            }
        }
        // Open-set condition, checked on the level-1 images: interiors of
        // [offset, offset + ratio] must be pairwise disjoint (touching at a
        // point is allowed).
        let mut images: Vec<(f64, f64)> =
            maps.iter().map(|m| (m.offset, m.offset + m.ratio)).collect();
        images.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in images.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(FraktalError::Validation(format!(
                    "open-set condition violated: images [{}, {}] and [{}, {}] overlap",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self { maps })
    }

    /// The middle-third Cantor system: two ratio-1/3 maps at offsets 0 and 2/3.
    pub fn cantor() -> Self {
        Self::new(vec![
            IfsMap { ratio: 1.0 / 3.0, offset: 0.0 },
            IfsMap { ratio: 1.0 / 3.0, offset: 2.0 / 3.0 },
        ])
        .expect("cantor spec is valid")
    }

    pub fn maps(&self) -> &[IfsMap] {
        &self.maps
    }

    /// Parses a config file body: one `ratio offset` pair per line,
    /// blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut maps = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let ratio: f64 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| FraktalError::Validation(format!("line {}: bad ratio", ln + 1)))?;
            let offset: f64 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| FraktalError::Validation(format!("line {}: bad offset", ln + 1)))?;
            if parts.next().is_some() {
                return Err(FraktalError::Validation(format!(
                    "line {}: expected exactly `ratio offset`",
                    ln + 1
                )));
            }
            maps.push(IfsMap { ratio, offset });
        }
        Self::new(maps)
    }
}

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

/// A sorted union of pairwise disjoint closed intervals; the level-n
/// prefractal of an IFS construction.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
    level: u32,
}

impl IntervalSet {
    /// Builds a canonical set from raw intervals: sorts by `lo` and merges
    /// intervals that overlap or touch at a point.
    pub fn new(mut intervals: Vec<Interval>, level: u32) -> Result<Self> {
        for iv in &intervals {
            if !(iv.lo.is_finite() && iv.hi.is_finite()) || iv.lo > iv.hi {
                return Err(FraktalError::Validation(format!(
                    "bad interval [{}, {}]",
                    iv.lo, iv.hi
                )));
            }
        }
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let merged = merge_touching(intervals);
        Ok(Self { intervals: merged, level })
    }

    /// The unit interval `[0, 1]` (level 0 of any construction).
    pub fn unit() -> Self {
        Self { intervals: vec![Interval { lo: 0.0, hi: 1.0 }], level: 0 }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(Interval::length).sum()
    }

    /// Membership test with absolute tolerance `tol` at the endpoints.
    pub fn contains_point(&self, x: f64, tol: f64) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.hi < x - tol);
        idx < self.intervals.len() && self.intervals[idx].lo <= x + tol
    }

    /// Serializes to CSV with header `lo,hi`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lo,hi\n");
        for iv in &self.intervals {
            out.push_str(&format!("{:.16e},{:.16e}\n", iv.lo, iv.hi));
        }
        out
    }

    /// Parses the CSV form written by [`IntervalSet::to_csv`]. The
    /// construction level is not stored in the CSV and is set to 0.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == "lo,hi" => {}
            _ => return Err(FraktalError::Validation("expected `lo,hi` header".into())),
        }
        let mut intervals = Vec::new();
        for (ln, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let lo: f64 = parts
                .next()
                .and_then(|t| t.trim().parse().ok())
                .ok_or_else(|| FraktalError::Validation(format!("row {}: bad lo", ln + 1)))?;
            let hi: f64 = parts
                .next()
                .and_then(|t| t.trim().parse().ok())
                .ok_or_else(|| FraktalError::Validation(format!("row {}: bad hi", ln + 1)))?;
            intervals.push(Interval { lo, hi });
        }
        Self::new(intervals, 0)
    }
}

fn merge_touching(sorted: Vec<Interval>) -> Vec<Interval> {
    let mut merged: Vec<Interval> = Vec::with_capacity(sorted.len());
    for iv in sorted {
        match merged.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => merged.push(iv),
        }
    }
    merged
}

/// The grid boxes `[origin + k*delta, origin + (k+1)*delta]` meeting a set
/// with positive overlap length.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCover {
    delta: f64,
    origin: f64,
    boxes: Vec<i64>,
}

impl DeltaCover {
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    /// Sorted, duplicate-free grid indices of the covering boxes.
    pub fn boxes(&self) -> &[i64] {
        &self.boxes
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    /// Left edge of box `k`, computed as `origin + k*delta`. All range
    /// queries in the measure layer use this exact expression so box
    /// boundaries compare consistently.
    pub fn box_lo(&self, k: i64) -> f64 {
        self.origin + (k as f64) * self.delta
    }

    /// Right edge of box `k`.
    pub fn box_hi(&self, k: i64) -> f64 {
        self.origin + ((k + 1) as f64) * self.delta
    }
}

/// Builds the level-n prefractal with the default level cap.
pub fn build_prefractal(ifs: &IfsSpec, level: u32) -> Result<IntervalSet> {
    build_prefractal_capped(ifs, level, DEFAULT_LEVEL_CAP)
}

/// Builds the level-n prefractal: the union of all n-fold map compositions
/// applied to `[0, 1]`, merged into disjoint sorted intervals.
pub fn build_prefractal_capped(ifs: &IfsSpec, level: u32, cap: u32) -> Result<IntervalSet> {
    if level > cap {
        return Err(FraktalError::ResourceLimit(format!(
            "level {level} exceeds cap {cap}"
        )));
    }
    let mut intervals = vec![Interval { lo: 0.0, hi: 1.0 }];
    for _ in 0..level {
        let mut next = Vec::with_capacity(intervals.len() * ifs.maps().len());
        for m in ifs.maps() {
            for iv in &intervals {
                next.push(Interval {
                    lo: m.ratio * iv.lo + m.offset,
                    hi: m.ratio * iv.hi + m.offset,
                });
            }
        }
        next.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        intervals = merge_touching(next);
    }
    Ok(IntervalSet { intervals, level })
}

/// Enumerates the grid boxes whose intersection with the set has positive
/// length. A box touching the set only at a shared endpoint is not listed;
/// this keeps aligned covers exact (an aligned middle-third gap contributes
/// no box) and range counting additive at box boundaries.
pub fn delta_cover(set: &IntervalSet, delta: f64, origin: f64) -> Result<DeltaCover> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(FraktalError::Validation(format!("delta {delta} must be > 0")));
    }
    if !origin.is_finite() {
        return Err(FraktalError::Validation("origin must be finite".into()));
    }
    let tol = delta * OVERLAP_TOL_FACTOR;
    let mut boxes: Vec<i64> = Vec::new();
    for iv in set.intervals() {
        // Conservative candidate range; the overlap predicate is the
        // single source of truth.
        let k0 = ((iv.lo - origin) / delta).floor() as i64 - 1;
        let k1 = ((iv.hi - origin) / delta).floor() as i64 + 1;
        for k in k0..=k1 {
            let blo = origin + (k as f64) * delta;
            let bhi = origin + ((k + 1) as f64) * delta;
            let overlap = iv.hi.min(bhi) - iv.lo.max(blo);
            if overlap > tol {
                boxes.push(k);
            }
        }
    }
    boxes.sort_unstable();
    boxes.dedup();
    Ok(DeltaCover { delta, origin, boxes })
}

/// Solves `sum_i ratio_i^s = 1` for the similarity dimension by bisection
/// on `[0, 1]` to absolute tolerance 1e-12. The open-set condition bounds
/// the root by 1.
pub fn similarity_dimension(ifs: &IfsSpec) -> f64 {
    let f = |s: f64| -> f64 { ifs.maps().iter().map(|m| m.ratio.powf(s)).sum::<f64>() - 1.0 };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    // f is strictly decreasing with f(0) >= 0 >= f(1).
    for _ in 0..60 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_level_0_is_unit_interval() {
        let set = build_prefractal(&IfsSpec::cantor(), 0).unwrap();
        assert_eq!(set.intervals(), &[Interval { lo: 0.0, hi: 1.0 }]);
    }

    #[test]
    fn cantor_level_1_two_thirds() {
        let set = build_prefractal(&IfsSpec::cantor(), 1).unwrap();
        let ivs = set.intervals();
        assert_eq!(ivs.len(), 2);
        assert_eq!(ivs[0].lo, 0.0);
        assert!((ivs[0].hi - 1.0 / 3.0).abs() < 1e-15);
        assert!((ivs[1].lo - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(ivs[1].hi, 1.0);
    }

    #[test]
    fn cantor_level_4_sixteen_pieces() {
        let set = build_prefractal(&IfsSpec::cantor(), 4).unwrap();
        assert_eq!(set.intervals().len(), 16);
        let want = (1.0_f64 / 3.0).powi(4);
        for iv in set.intervals() {
            assert!((iv.length() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn level_cap_is_enforced() {
        let err = build_prefractal_capped(&IfsSpec::cantor(), 5, 4).unwrap_err();
        assert!(matches!(err, FraktalError::ResourceLimit(_)));
    }

    #[test]
    fn invalid_ifs_rejected() {
        assert!(IfsSpec::new(vec![]).is_err());
        assert!(IfsSpec::new(vec![IfsMap { ratio: 1.2, offset: 0.0 }]).is_err());
        assert!(IfsSpec::new(vec![IfsMap { ratio: 0.5, offset: 0.7 }]).is_err());
        // overlapping interiors
        assert!(IfsSpec::new(vec![
            IfsMap { ratio: 0.5, offset: 0.0 },
            IfsMap { ratio: 0.5, offset: 0.25 },
        ])
        .is_err());
        // touching images are fine
        assert!(IfsSpec::new(vec![
            IfsMap { ratio: 0.5, offset: 0.0 },
            IfsMap { ratio: 0.5, offset: 0.5 },
        ])
        .is_ok());
    }

    #[test]
    fn cover_of_unit_interval_quarters() {
        let set = IntervalSet::unit();
        let cov = delta_cover(&set, 0.25, 0.0).unwrap();
        assert_eq!(cov.boxes(), &[0, 1, 2, 3]);
    }

    #[test]
    fn cover_of_cantor_level_1_drops_middle_box() {
        let set = build_prefractal(&IfsSpec::cantor(), 1).unwrap();
        let cov = delta_cover(&set, 1.0 / 3.0, 0.0).unwrap();
        assert_eq!(cov.boxes(), &[0, 2]);
    }

    #[test]
    fn cover_rejects_nonpositive_delta() {
        let err = delta_cover(&IntervalSet::unit(), 0.0, 0.0).unwrap_err();
        assert!(matches!(err, FraktalError::Validation(_)));
    }

    #[test]
    fn similarity_dimension_examples() {
        let cantor = similarity_dimension(&IfsSpec::cantor());
        assert!((cantor - 2.0_f64.ln() / 3.0_f64.ln()).abs() < 1e-11);

        let single = IfsSpec::new(vec![IfsMap { ratio: 0.4, offset: 0.1 }]).unwrap();
        assert!(similarity_dimension(&single).abs() < 1e-11);

        let halves = IfsSpec::new(vec![
            IfsMap { ratio: 0.5, offset: 0.0 },
            IfsMap { ratio: 0.5, offset: 0.5 },
        ])
        .unwrap();
        assert!((similarity_dimension(&halves) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn csv_round_trip() {
        let set = build_prefractal(&IfsSpec::cantor(), 3).unwrap();
        let csv = set.to_csv();
        let back = IntervalSet::from_csv(&csv).unwrap();
        assert_eq!(back.intervals(), set.intervals());
    }

    #[test]
    fn ifs_file_parsing() {
        let spec = IfsSpec::parse("# two quarter maps\n0.25 0.0\n0.25 0.75\n").unwrap();
        assert_eq!(spec.maps().len(), 2);
        assert!(IfsSpec::parse("0.25\n").is_err());
        assert!(IfsSpec::parse("0.25 0.0 7\n").is_err());
    }
}
