//! Mixed volumes and stable mixed volumes of lattice point families.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{as_u64, Rational};
use crate::point::{LatticePoint, PointSet};
use crate::polytope::Polytope;

fn check_family(family: &[PointSet]) -> Result<usize> {
    let n = family.len();
    for s in family {
        if s.dim() != n {
            return Err(Error::FamilySize { expected: s.dim(), found: n });
        }
        if s.is_empty() {
            return Err(Error::EmptyPointSet);
        }
    }
    Ok(n)
}

/// `Vol_n(sum_{j in J} conv(A_j))` for every subset `J`, indexed by bitmask.
///
/// Partial sums reuse the vertices of the sum over the mask without its highest bit,
/// so every hull is taken over vertex sums only. The empty mask has volume zero
/// (a single point) unless `n = 0`.
pub fn subset_sum_volumes(family: &[PointSet]) -> Result<Vec<Rational>> {
    let n = check_family(family)?;
    let hulls: Vec<Polytope> = family.iter().map(Polytope::from_points).collect::<Result<_>>()?;
    let mut sums: Vec<Option<Polytope>> = alloc::vec![None; 1 << n];
    let mut volumes = alloc::vec![Rational::zero(); 1 << n];
    if n == 0 {
        volumes[0] = Rational::from_integer(BigInt::from(1));
        return Ok(volumes);
    }
    for mask in 1usize..(1 << n) {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let sum = if rest == 0 {
            hulls[top].clone()
        } else {
            let prev = sums[rest].as_ref().expect("smaller masks are filled first");
            Polytope::minkowski_sum(&[prev, &hulls[top]])?
        };
        volumes[mask] = sum.volume();
        sums[mask] = Some(sum);
    }
    Ok(volumes)
}

/// Exact inclusion-exclusion value of the mixed volume as a rational.
pub fn mixed_volume_exact(family: &[PointSet]) -> Result<Rational> {
    let n = family.len();
    let volumes = subset_sum_volumes(family)?;
    if n == 0 {
        return Ok(volumes[0].clone());
    }
    let mut total = Rational::zero();
    for (mask, v) in volumes.iter().enumerate().skip(1) {
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

/// `MV_n(A_1, ..., A_n) = sum_J (-1)^(n-#J) Vol_n(sum_{j in J} conv A_j)` with Euclidean volume.
///
/// The empty family (`n = 0`) has mixed volume 1. A non-integral or negative value is
/// reported as an error rather than rounded.
pub fn mixed_volume(family: &[PointSet]) -> Result<u64> {
    let mv = mixed_volume_exact(family)?;
    if !mv.is_integer() {
        return Err(Error::NonIntegralMixedVolume(mv));
    }
    as_u64(&mv).ok_or(Error::NegativeMixedVolume(mv))
}

/// A cell of the subdivision of `A^0` induced by the lifting that puts adjoined origins at height 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCell {
    /// `C_j`, the points of `A_j^0` minimising `normal . (q, lift(q))`.
    pub parts: Vec<PointSet>,
    /// Inner normal in dimension `n + 1`, positive last coordinate.
    pub normal: Vec<BigInt>,
    pub stable: bool,
}

fn lift_height(set: &PointSet, q: &LatticePoint) -> i64 {
    if q.is_zero() && !set.contains(q) {
        1
    } else {
        0
    }
}

/// All cells of the lifted subdivision of `A^0` (stable or not), in facet order.
pub fn lifted_cells(family: &[PointSet]) -> Result<Vec<LiftedCell>> {
    let n = check_family(family)?;
    let augmented: Vec<PointSet> = family.iter().map(PointSet::with_origin).collect();
    let lifted: Vec<Polytope> = family
        .iter()
        .zip(&augmented)
        .map(|(orig, aug)| {
            let pts: Vec<_> = aug
                .iter()
                .map(|q| {
                    let mut v = q.to_rational();
                    v.push(Rational::from_integer(BigInt::from(lift_height(orig, q))));
                    v
                })
                .collect();
            Polytope::hull(n + 1, &pts)
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&Polytope> = lifted.iter().collect();
    let sum = Polytope::minkowski_sum(&refs)?;

    let mut normals: Vec<Vec<BigInt>> = Vec::new();
    if sum.is_full_dimensional() {
        for f in sum.facets() {
            if f.normal[n].is_positive() {
                normals.push(f.normal.clone());
            }
        }
    } else if sum.affine_dim() == n as isize {
        // The lifted sum is the graph of an affine function over a full-dimensional base.
        if let Some(eq) = sum.equalities().iter().find(|e| !e.normal[n].is_zero()) {
            let mut normal = eq.normal.clone();
            if normal[n].is_negative() {
                normal.iter_mut().for_each(|x| *x = -&*x);
            }
            normals.push(normal);
        }
    }

    let mut cells = Vec::with_capacity(normals.len());
    for normal in normals {
        let mut parts = Vec::with_capacity(n);
        for (orig, aug) in family.iter().zip(&augmented) {
            let value = |q: &LatticePoint| -> BigInt {
                let mut acc = BigInt::from(lift_height(orig, q)) * &normal[n];
                for (c, w) in q.coords().iter().zip(&normal[..n]) {
                    acc += w * BigInt::from(*c);
                }
                acc
            };
            let min = aug.iter().map(value).min().expect("nonempty");
            parts.push(PointSet::new(n, aug.iter().filter(|q| value(q) == min).cloned())?);
        }
        let stable = normal[..n].iter().all(|x| !x.is_negative());
        cells.push(LiftedCell { parts, normal, stable });
    }
    Ok(cells)
}

/// Stable mixed volume: the sum of the mixed volumes of the stable cells.
///
/// Cost grows with the product of the `|A_j| + 1`, the size of the lifted Minkowski sum.
pub fn stable_mixed_volume(family: &[PointSet]) -> Result<u64> {
    let mut total = 0u64;
    for cell in lifted_cells(family)? {
        if !cell.stable || cell.parts.iter().any(|c| c.len() == 1) {
            continue;
        }
        total += mixed_volume(&cell.parts)?;
    }
    Ok(total)
}
