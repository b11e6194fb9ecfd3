//! Combinatorics of support families: conditions on the supports, coordinate strata,
//! axis augmentations and dominated-monomial reduction.
//!
//! Coordinate subsets are given as sorted 0-based index lists. Internally they are
//! bitmasks and every scan walks them in increasing bitmask order, which fixes the
//! order of reported strata and the choice of witnesses.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::point::{affine_dim_of_union, project, LatticePoint, PointSet};

/// The supports `A_1, ..., A_n` of a square system in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportFamily {
    supports: Vec<PointSet>,
}

impl SupportFamily {
    /// Checks that there are `n >= 1` nonempty sets of nonnegative exponents in dimension `n`.
    pub fn new(supports: Vec<PointSet>) -> Result<Self> {
        let n = supports.len();
        if n == 0 {
            return Err(Error::InvalidArgument("a support family needs at least one set".into()));
        }
        for s in &supports {
            if s.dim() != n {
                return Err(Error::FamilySize { expected: s.dim(), found: n });
            }
            if s.is_empty() {
                return Err(Error::EmptyPointSet);
            }
            if let Some(p) = s.iter().find(|p| p.coords().iter().any(|&c| c < 0)) {
                return Err(Error::InvalidArgument(format!("negative exponent in {p}")));
            }
        }
        Ok(SupportFamily { supports })
    }

    pub fn n(&self) -> usize {
        self.supports.len()
    }

    pub fn supports(&self) -> &[PointSet] {
        &self.supports
    }

    pub fn into_supports(self) -> Vec<PointSet> {
        self.supports
    }

    /// `A^0`: the origin adjoined to every support.
    pub fn with_origins(&self) -> SupportFamily {
        SupportFamily { supports: self.supports.iter().map(PointSet::with_origin).collect() }
    }
}

/// Which of the structural conditions hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// No support contains the origin.
    pub h1: bool,
    /// `#I + #J_I >= n` for every `I`.
    pub h2: bool,
    /// Every support meets every coordinate axis away from the origin.
    pub h3: bool,
    /// First `I` (bitmask order) with `#I + #J_I < n`.
    pub failing_i: Option<Vec<usize>>,
}

/// A coordinate subset `I` together with everything the stratum analysis derives from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumDescriptor {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    /// `#I + #J_I = n`.
    pub a1: bool,
    /// `#I' + #J_I' >= n` for every `I'` contained in `I`.
    pub a2: bool,
    /// `dim sum_{j in J} A_j^I >= #J` for every nonempty `J` contained in `J_I`.
    pub a3: bool,
    /// `B_j^I = pi_I(A_j)` for `j` outside `J_I`, in dimension `#I`.
    pub projected: Vec<PointSet>,
    /// `pi_{I^c}(A_j^I)` for `j` in `J_I`, in dimension `n - #I`.
    pub torus_supports: Vec<PointSet>,
}

impl StratumDescriptor {
    pub fn is_valid(&self) -> bool {
        self.a1 && self.a2 && self.a3
    }
}

/// 1-based set notation, e.g. `{1,3}`.
pub fn format_subset(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|i| format!("{}", i + 1)).collect();
    format!("{{{}}}", items.join(","))
}

fn mask_of(n: usize, s: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &i in s {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn vanishes_on(p: &LatticePoint, mask: u64) -> bool {
    p.coords().iter().enumerate().all(|(i, &c)| mask >> i & 1 == 0 || c == 0)
}

/// `A_j^I`: the points of `A_j` whose `I` coordinates are all zero.
fn restricted(set: &PointSet, mask: u64) -> PointSet {
    PointSet::new(set.dim(), set.iter().filter(|p| vanishes_on(p, mask)).cloned()).expect("same dimension")
}

fn j_mask(a: &SupportFamily, mask: u64) -> u64 {
    a.supports
        .iter()
        .enumerate()
        .filter(|(_, s)| s.iter().any(|p| vanishes_on(p, mask)))
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// `J_I`: indices of supports with a point vanishing on every coordinate in `I`.
pub fn j_set(a: &SupportFamily, i: &[usize]) -> Result<Vec<usize>> {
    let n = a.n();
    Ok(members(j_mask(a, mask_of(n, i)?), n))
}

fn h2_holds(a: &SupportFamily, mask: u64) -> bool {
    mask.count_ones() + j_mask(a, mask).count_ones() >= a.n() as u32
}

/// Exhaustive check of the three conditions.
pub fn check_conditions(a: &SupportFamily) -> ConditionReport {
    let n = a.n();
    let h1 = a.supports.iter().all(|s| !s.contains(&LatticePoint::zero(n)));
    let failing = (0..1u64 << n).find(|&m| !h2_holds(a, m));
    let h3 = a.supports.iter().all(|s| {
        (0..n).all(|i| s.iter().any(|p| p.as_axis_point().is_some_and(|(axis, _)| axis == i)))
    });
    ConditionReport { h1, h2: failing.is_none(), h3, failing_i: failing.map(|m| members(m, n)) }
}

/// Fails with the first violated condition among the requested ones.
pub(crate) fn require(a: &SupportFamily, h1: bool, h2: bool, h3: bool) -> Result<ConditionReport> {
    use crate::error::Condition;
    let r = check_conditions(a);
    if h1 && !r.h1 {
        return Err(Error::ConditionFailed { condition: Condition::H1, witness: None });
    }
    if h2 && !r.h2 {
        let witness = r.failing_i.as_deref().map(format_subset);
        return Err(Error::ConditionFailed { condition: Condition::H2, witness });
    }
    if h3 && !r.h3 {
        return Err(Error::ConditionFailed { condition: Condition::H3, witness: None });
    }
    Ok(r)
}

fn describe_mask(a: &SupportFamily, mask: u64) -> StratumDescriptor {
    let n = a.n();
    let jm = j_mask(a, mask);
    let i = members(mask, n);
    let complement: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 0).collect();
    let a1 = (mask.count_ones() + jm.count_ones()) as usize == n;
    let a2 = (0..=mask).filter(|&sub| sub & !mask == 0).all(|sub| h2_holds(a, sub));
    let parts: Vec<Option<PointSet>> =
        (0..n).map(|j| (jm >> j & 1 == 1).then(|| restricted(&a.supports[j], mask))).collect();
    let a3 = (1..=jm).filter(|&sub| sub & !jm == 0).all(|sub| {
        let chosen: Vec<PointSet> =
            members(sub, n).into_iter().map(|j| parts[j].clone().expect("j in J_I")).collect();
        affine_dim_of_union(&chosen) >= sub.count_ones() as isize
    });
    let projected = (0..n)
        .filter(|j| jm >> j & 1 == 0)
        .map(|j| project(&a.supports[j], &i).expect("indices in range"))
        .collect();
    let torus_supports = parts
        .iter()
        .flatten()
        .map(|s| project(s, &complement).expect("indices in range"))
        .collect();
    StratumDescriptor { i, j: members(jm, n), a1, a2, a3, projected, torus_supports }
}

/// Full descriptor of an arbitrary coordinate subset, valid or not.
pub fn describe_stratum(a: &SupportFamily, i: &[usize]) -> Result<StratumDescriptor> {
    Ok(describe_mask(a, mask_of(a.n(), i)?))
}

/// All `I` (the empty set included) satisfying A1, A2 and A3, in bitmask order.
pub fn enumerate_strata(a: &SupportFamily) -> Vec<StratumDescriptor> {
    (0..1u64 << a.n()).map(|m| describe_mask(a, m)).filter(StratumDescriptor::is_valid).collect()
}

fn augment(a: &SupportFamily, m: u64, only_missing_axes: bool) -> Result<(SupportFamily, SupportFamily)> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let n = a.n();
    let mu = i64::try_from(m).map_err(|_| Error::InvalidArgument(format!("M = {m} is too large")))?;
    let mut out = Vec::with_capacity(n);
    for s in &a.supports {
        let mut pts: Vec<LatticePoint> = s.points().to_vec();
        for i in 0..n {
            // The origin counts as a point mu * e_i with mu = 0.
            let on_axis = s.iter().any(|p| p.is_zero() || p.as_axis_point().is_some_and(|(axis, _)| axis == i));
            if !only_missing_axes || !on_axis {
                pts.push(LatticePoint::axis(n, i, mu));
            }
        }
        out.push(PointSet::new(n, pts)?);
    }
    let aug = SupportFamily { supports: out };
    let with_zero = aug.with_origins();
    Ok((aug, with_zero))
}

/// `(A^M, A^{M,0})`: `M e_i` is adjoined to `A_j` only when `A_j` has no point on the `i`-th axis.
pub fn augment_refined(a: &SupportFamily, m: u64) -> Result<(SupportFamily, SupportFamily)> {
    augment(a, m, true)
}

/// `(A^{Delta_M}, A^{Delta_M,0})`: every `M e_i` is adjoined to every support.
pub fn augment_full(a: &SupportFamily, m: u64) -> Result<(SupportFamily, SupportFamily)> {
    augment(a, m, false)
}

/// Keeps only the coordinatewise-minimal points of each support.
pub fn reduce_minimal(a: &SupportFamily) -> SupportFamily {
    let supports = a
        .supports
        .iter()
        .map(|s| {
            let keep = s.iter().filter(|p| !s.iter().any(|q| q != *p && p.dominates(q))).cloned();
            PointSet::new(s.dim(), keep).expect("same dimension")
        })
        .collect();
    SupportFamily { supports }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[&[i64]]]) -> SupportFamily {
        SupportFamily::new(sets.iter().map(|s| PointSet::from_coords(n, s)).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(SupportFamily::new(Vec::new()).is_err());
        assert_eq!(
            SupportFamily::new(vec![PointSet::new(1, []).unwrap()]).unwrap_err(),
            Error::EmptyPointSet
        );
        let neg = vec![PointSet::from_coords(1, &[&[-1]])];
        assert!(matches!(SupportFamily::new(neg), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn diagonal_pair() {
        let a = fam(2, &[&[&[1, 1]], &[&[1, 1]]]);
        assert_eq!(j_set(&a, &[]).unwrap(), vec![0, 1]);
        assert_eq!(j_set(&a, &[0]).unwrap(), Vec::<usize>::new());
        let r = check_conditions(&a);
        assert!(r.h1 && !r.h2 && !r.h3);
        assert_eq!(r.failing_i, Some(vec![0]));
        assert!(enumerate_strata(&a).is_empty());
    }

    #[test]
    fn augmentation_examples() {
        let a = fam(2, &[&[&[1, 1]], &[&[2, 0], &[0, 1]]]);
        let (r, r0) = augment_refined(&a, 3).unwrap();
        assert_eq!(r.supports()[0], PointSet::from_coords(2, &[&[1, 1], &[3, 0], &[0, 3]]));
        assert_eq!(r.supports()[1], a.supports()[1]);
        assert!(r0.supports().iter().all(|s| s.contains(&LatticePoint::zero(2))));
        let (f, _) = augment_full(&a, 2).unwrap();
        assert_eq!(f.supports()[0], PointSet::from_coords(2, &[&[1, 1], &[2, 0], &[0, 2]]));
        assert!(check_conditions(&r).h3);
        assert!(augment_full(&a, 0).is_err());
    }

    #[test]
    fn origin_blocks_refined_augmentation() {
        let a = fam(2, &[&[&[0, 0], &[1, 1]], &[&[1, 0], &[0, 1]]]);
        let (r, _) = augment_refined(&a, 4).unwrap();
        assert_eq!(r.supports()[0], a.supports()[0]);
    }

    #[test]
    fn reduction() {
        let a = fam(2, &[&[&[1, 0], &[2, 0], &[0, 3]], &[&[1, 0], &[0, 1]]]);
        let r = reduce_minimal(&a);
        assert_eq!(r.supports()[0], PointSet::from_coords(2, &[&[1, 0], &[0, 3]]));
        assert_eq!(r.supports()[1], a.supports()[1]);
        assert_eq!(reduce_minimal(&r), r);
    }

    #[test]
    fn subset_notation() {
        assert_eq!(format_subset(&[]), "{}");
        assert_eq!(format_subset(&[0, 2]), "{1,3}");
    }
}
