//! Lattice points and finite point sets.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::num::{rat, RPoint};

/// An integer vector; used for exponents (nonnegative) and internal lifted points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint(alloc::vec![0; dim])
    }

    /// `mu * e_i` in dimension `dim`.
    pub fn axis(dim: usize, i: usize, mu: i64) -> Self {
        let mut c = alloc::vec![0; dim];
        c[i] = mu;
        LatticePoint(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Coordinatewise `self >= other`.
    pub fn dominates(&self, other: &LatticePoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// If this is `mu * e_i` with `mu > 0`, returns `(i, mu)`.
    pub fn as_axis_point(&self) -> Option<(usize, i64)> {
        let mut found = None;
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, c));
            }
        }
        found.filter(|&(_, c)| c > 0)
    }

    pub fn to_rational(&self) -> RPoint {
        self.0.iter().map(|&c| rat(c)).collect()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A finite set of lattice points of one ambient dimension, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl PointSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            set.insert(p);
        }
        Ok(PointSet { dim, points: set.into_iter().collect() })
    }

    /// Convenience constructor from coordinate slices; panics on ragged input.
    pub fn from_coords(dim: usize, points: &[&[i64]]) -> Self {
        Self::new(dim, points.iter().map(|p| LatticePoint(p.to_vec()))).expect("consistent dimensions")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter()
    }

    pub fn with_point(&self, p: LatticePoint) -> Self {
        let mut pts = self.points.clone();
        pts.push(p);
        PointSet::new(self.dim, pts).expect("same dimension")
    }

    pub fn with_origin(&self) -> Self {
        self.with_point(LatticePoint::zero(self.dim))
    }

    pub fn translate(&self, v: &LatticePoint) -> Self {
        PointSet::new(self.dim, self.points.iter().map(|p| p.add(v))).expect("same dimension")
    }

    pub fn to_rational(&self) -> Vec<RPoint> {
        self.points.iter().map(LatticePoint::to_rational).collect()
    }

    /// Affine dimension of the set (`-1` for the empty set).
    pub fn affine_dim(&self) -> isize {
        affine_dim_of_union(core::slice::from_ref(self))
    }
}

/// Affine dimension of the Minkowski sum of the given nonempty sets:
/// the rank of all difference vectors taken inside each set.
pub fn affine_dim_of_union(sets: &[PointSet]) -> isize {
    use num_bigint::BigInt;
    if sets.iter().any(PointSet::is_empty) {
        return -1;
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for s in sets {
        let base = &s.points[0];
        for p in &s.points[1..] {
            rows.push(p.sub(base).0.iter().map(|&c| BigInt::from(c)).collect());
        }
    }
    crate::linalg::rank_int(&rows) as isize
}

/// All pairwise sums, deduplicated.
pub fn minkowski_sum(s: &PointSet, t: &PointSet) -> Result<PointSet> {
    if s.dim != t.dim {
        return Err(Error::DimensionMismatch { expected: s.dim, found: t.dim });
    }
    PointSet::new(s.dim, s.points.iter().flat_map(|a| t.points.iter().map(move |b| a.add(b))))
}

/// Coordinate projection onto the (ordered) indices in `keep`, deduplicated.
pub fn project(points: &PointSet, keep: &[usize]) -> Result<PointSet> {
    if let Some(&bad) = keep.iter().find(|&&i| i >= points.dim) {
        return Err(Error::IndexOutOfRange { index: bad, dim: points.dim });
    }
    PointSet::new(
        keep.len(),
        points.points.iter().map(|p| LatticePoint(keep.iter().map(|&i| p.0[i]).collect())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_examples() {
        let zero = PointSet::from_coords(2, &[&[0, 0]]);
        let p = PointSet::from_coords(2, &[&[3, 1]]);
        assert_eq!(minkowski_sum(&zero, &p).unwrap(), p);
        let seg = PointSet::from_coords(1, &[&[0], &[1]]);
        assert_eq!(minkowski_sum(&seg, &seg).unwrap(), PointSet::from_coords(1, &[&[0], &[1], &[2]]));
        assert!(minkowski_sum(&seg, &p).is_err());
    }

    #[test]
    fn projection_examples() {
        let s = PointSet::from_coords(3, &[&[1, 0, 0], &[1, 0, 5]]);
        assert_eq!(project(&s, &[0, 1]).unwrap(), PointSet::from_coords(2, &[&[1, 0]]));
        let a1 = PointSet::from_coords(4, &[&[1, 0, 0, 0], &[1, 1, 0, 0]]);
        assert_eq!(project(&a1, &[2, 3]).unwrap(), PointSet::from_coords(2, &[&[0, 0]]));
        assert_eq!(project(&s, &[0, 1, 2]).unwrap(), s);
        assert_eq!(project(&s, &[3]), Err(Error::IndexOutOfRange { index: 3, dim: 3 }));
    }

    #[test]
    fn dedup_and_dims() {
        let s = PointSet::from_coords(2, &[&[1, 1], &[1, 1], &[0, 2]]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.affine_dim(), 1);
        assert!(PointSet::new(2, [LatticePoint(vec![1])]).is_err());
    }

    #[test]
    fn axis_points() {
        assert_eq!(LatticePoint(vec![0, 3, 0]).as_axis_point(), Some((1, 3)));
        assert_eq!(LatticePoint(vec![1, 3, 0]).as_axis_point(), None);
        assert_eq!(LatticePoint(vec![0, 0]).as_axis_point(), None);
    }
}
