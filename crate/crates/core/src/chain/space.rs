use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Field;

/// Closed interval of degrees `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<DegreeWindow> {
        if lo > hi {
            return Err(Error::Shape(format!("empty window [{lo}, {hi}]")));
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn intersect(&self, other: &DegreeWindow) -> Result<DegreeWindow> {
        DegreeWindow::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Degrees on which a construction truncated at `hi` makes homology claims.
    pub fn trusted(&self) -> TrustedRange {
        TrustedRange { lo: self.lo, hi: self.hi - 1 }
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Degrees on which homology is asserted; may be empty when `hi < lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrustedRange {
    pub lo: i64,
    pub hi: i64,
}

impl TrustedRange {
    pub fn new(lo: i64, hi: i64) -> TrustedRange {
        TrustedRange { lo, hi }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn within(&self, w: &DegreeWindow) -> bool {
        self.hi < self.lo || (w.lo <= self.lo && self.hi <= w.hi - 1)
    }

    pub fn meet(&self, other: &TrustedRange) -> TrustedRange {
        TrustedRange { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }
}

impl fmt::Display for TrustedRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct SpaceData {
    field: Field,
    window: DegreeWindow,
    basis: BTreeMap<i64, Vec<String>>,
    lookup: BTreeMap<i64, HashMap<String, usize>>,
}

/// Graded vector space with named basis elements in each degree of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace(Arc<SpaceData>);

impl GradedSpace {
    /// Degrees absent from `basis` are zero. Labels must be unique per degree.
    pub fn new(field: Field, window: DegreeWindow, basis: BTreeMap<i64, Vec<String>>) -> Result<GradedSpace> {
        let mut clean = BTreeMap::new();
        let mut lookup = BTreeMap::new();
        for (deg, labels) in basis {
            if labels.is_empty() {
                continue;
            }
            if !window.contains(deg) {
                return Err(Error::Shape(format!("basis in degree {deg} outside window {window}")));
            }
            let mut map = HashMap::new();
            for (i, l) in labels.iter().enumerate() {
                if map.insert(l.clone(), i).is_some() {
                    return Err(Error::Shape(format!("duplicate label {l:?} in degree {deg}")));
                }
            }
            lookup.insert(deg, map);
            clean.insert(deg, labels);
        }
        Ok(GradedSpace(Arc::new(SpaceData { field, window, basis: clean, lookup })))
    }

    /// Builds from `(label, degree)` pairs, dropping those outside the window.
    pub fn from_labels<S: Into<String>>(
        field: Field,
        window: DegreeWindow,
        labels: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<GradedSpace> {
        let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (l, d) in labels {
            if window.contains(d) {
                basis.entry(d).or_default().push(l.into());
            }
        }
        GradedSpace::new(field, window, basis)
    }

    /// The ground field in degree 0 with basis `1`.
    pub fn ground(field: Field, window: DegreeWindow) -> GradedSpace {
        GradedSpace::from_labels(field, window, [("1", 0)]).expect("valid ground space")
    }

    pub fn zero(field: Field, window: DegreeWindow) -> GradedSpace {
        GradedSpace::new(field, window, BTreeMap::new()).expect("valid zero space")
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn window(&self) -> DegreeWindow {
        self.0.window
    }

    pub fn dim(&self, n: i64) -> usize {
        self.0.basis.get(&n).map(|b| b.len()).unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.0.basis.values().map(|b| b.len()).sum()
    }

    pub fn labels(&self, n: i64) -> &[String] {
        self.0.basis.get(&n).map(|b| b.as_slice()).unwrap_or(&[])
    }

    pub fn label(&self, n: i64, i: usize) -> &str {
        &self.0.basis[&n][i]
    }

    pub fn index(&self, n: i64, label: &str) -> Option<usize> {
        self.0.lookup.get(&n).and_then(|m| m.get(label)).copied()
    }

    /// First degree (ascending) containing `label`.
    pub fn find(&self, label: &str) -> Option<(i64, usize)> {
        self.0.lookup.iter().find_map(|(d, m)| m.get(label).map(|i| (*d, *i)))
    }

    /// Degrees with a nonzero basis, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.basis.keys().copied()
    }

    /// All `(degree, index)` pairs in ascending order.
    pub fn elements(&self) -> Vec<(i64, usize)> {
        self.0.basis.iter().flat_map(|(d, b)| (0..b.len()).map(move |i| (*d, i))).collect()
    }

    pub fn basis(&self) -> &BTreeMap<i64, Vec<String>> {
        &self.0.basis
    }

    /// Same basis restricted to a smaller window.
    pub fn restrict(&self, window: DegreeWindow) -> GradedSpace {
        let basis = self.0.basis.iter().filter(|(d, _)| window.contains(**d)).map(|(d, b)| (*d, b.clone())).collect();
        GradedSpace::new(self.field(), window, basis).expect("restriction of a valid space")
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.basis.keys().next().copied()
    }

    pub fn same_shape(&self, other: &GradedSpace) -> bool {
        self.0.basis == other.0.basis && self.field() == other.field()
    }
}
