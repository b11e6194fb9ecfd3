//! Exact convex hulls in small dimension.
//!
//! Hulls are built by deterministic incremental placing over integer points
//! (rational input is scaled by the lcm of its denominators). The placing
//! pass maintains a triangulated boundary; grouping boundary simplices by
//! supporting hyperplane gives the facets, and a point is a vertex exactly
//! when the normals of the facets through it have full rank.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::num::{factorial, lcm_of_denominators, make_primitive, RPoint, Rational};
use crate::point::PointSet;

/// A facet inequality `normal . x >= offset` with a primitive integer inner normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Facet {
    /// `normal . x - offset`; nonnegative exactly on the polytope's side.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot_int_rat(&self.normal, x) - &self.offset
    }
}

/// A convex polytope with exact rational vertices.
///
/// The H-representation (`facets`) is only kept for full-dimensional polytopes.
/// Lower-dimensional ones carry their affine hull as equalities plus
/// inequalities valid inside it, used for containment and clipping.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    affine_dim: isize,
    vertices: Vec<RPoint>,
    facets: Vec<Facet>,
    equalities: Vec<Facet>,
    relative_facets: Vec<Facet>,
    boundary_points: Vec<RPoint>,
    /// Boundary (d-1)-simplices as indices into `boundary_points`, with their facet index.
    boundary: Vec<(Vec<usize>, usize)>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl Polytope {
    /// Convex hull of a finite rational point list.
    pub fn hull(dim: usize, points: &[RPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        let scale = lcm_of_denominators(points.iter().flatten());
        let mut ints: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| p.iter().map(|c| (c * &scale).to_integer()).collect())
            .collect();
        ints.sort();
        ints.dedup();
        let raw = IntHull::build(dim, &ints);
        Ok(raw.into_polytope(dim, &scale))
    }

    pub fn from_points(points: &PointSet) -> Result<Self> {
        Self::hull(points.dim(), &points.to_rational())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Affine dimension; equals `dim()` for full-dimensional polytopes.
    pub fn affine_dim(&self) -> isize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim as isize
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[RPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Equalities `normal . x = offset` describing the affine hull (empty when full-dimensional).
    pub fn equalities(&self) -> &[Facet] {
        &self.equalities
    }

    /// All inequalities cutting the polytope out of its affine hull.
    pub fn inequalities(&self) -> &[Facet] {
        if self.is_full_dimensional() {
            &self.facets
        } else {
            &self.relative_facets
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.equalities.iter().all(|e| e.slack(x).is_zero())
            && self.inequalities().iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Exact Euclidean volume; zero unless full-dimensional.
    ///
    /// Fan from the lexicographically smallest vertex over the triangulated boundary.
    pub fn volume(&self) -> Rational {
        if !self.is_full_dimensional() {
            return Rational::zero();
        }
        if self.dim == 0 {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for simplex in self.triangulation() {
            total += simplex_volume(&simplex);
        }
        total
    }

    /// Deterministic triangulation into full-dimensional simplices (each `dim + 1` points):
    /// the fan from the lexicographically smallest vertex over every boundary
    /// simplex whose facet does not contain that vertex.
    pub fn triangulation(&self) -> Vec<Vec<RPoint>> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        if self.dim == 0 {
            return alloc::vec![alloc::vec![Vec::new()]];
        }
        let apex = &self.vertices[0];
        let mut out = Vec::new();
        for (simplex, facet) in &self.boundary {
            if self.facets[*facet].slack(apex).is_zero() {
                continue;
            }
            let mut s = Vec::with_capacity(self.dim + 1);
            s.push(apex.clone());
            s.extend(simplex.iter().map(|&i| self.boundary_points[i].clone()));
            out.push(s);
        }
        out
    }

    /// Minkowski sum of polytopes of a common dimension.
    pub fn minkowski_sum(parts: &[&Polytope]) -> Result<Polytope> {
        let first = parts.first().ok_or(Error::EmptyPointSet)?;
        let dim = first.dim;
        let mut acc = (*first).clone();
        for p in &parts[1..] {
            if p.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim });
            }
            let sums: Vec<RPoint> = acc
                .vertices
                .iter()
                .flat_map(|a| p.vertices.iter().map(move |b| add(a, b)))
                .collect();
            acc = Polytope::hull(dim, &sums)?;
        }
        Ok(acc)
    }

    /// Image under dropping the last coordinate.
    pub fn project_last(&self) -> Result<Polytope> {
        let d = self.dim.checked_sub(1).ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let pts: Vec<RPoint> = self.vertices.iter().map(|v| v[..d].to_vec()).collect();
        Polytope::hull(d, &pts)
    }

    /// Intersection with another polytope; `None` when empty.
    pub fn intersect(&self, other: &Polytope) -> Result<Option<Polytope>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut pts = self.vertices.clone();
        let mut cuts: Vec<(RPoint, Rational)> = Vec::new();
        for e in &other.equalities {
            let n = to_rat(&e.normal);
            cuts.push((n.iter().map(|x| -x).collect(), -e.offset.clone()));
            cuts.push((n, e.offset.clone()));
        }
        for f in other.inequalities() {
            cuts.push((to_rat(&f.normal), f.offset.clone()));
        }
        for (normal, offset) in &cuts {
            pts = clip(&pts, normal, offset);
            if pts.is_empty() {
                return Ok(None);
            }
            if pts.len() > 2 * (self.dim + 2) {
                pts = Polytope::hull(self.dim, &pts)?.vertices;
            }
        }
        Polytope::hull(self.dim, &pts).map(Some)
    }
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> RPoint {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn to_rat(v: &[BigInt]) -> RPoint {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

fn dot_int_rat(a: &[BigInt], x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (ai, xi) in a.iter().zip(x) {
        if !ai.is_zero() {
            acc += xi * Rational::from_integer(ai.clone());
        }
    }
    acc
}

fn dot_rat(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).fold(Rational::zero(), |acc, (p, q)| acc + p * q)
}

/// Keeps the part of `conv(pts)` where `normal . x >= offset`, as a (redundant) point list.
fn clip(pts: &[RPoint], normal: &[Rational], offset: &Rational) -> Vec<RPoint> {
    let vals: Vec<Rational> = pts.iter().map(|p| dot_rat(normal, p) - offset).collect();
    if vals.iter().all(|v| !v.is_negative()) {
        return pts.to_vec();
    }
    let mut out: Vec<RPoint> = Vec::new();
    for (p, v) in pts.iter().zip(&vals) {
        if !v.is_negative() {
            out.push(p.clone());
        }
    }
    for (u, hu) in pts.iter().zip(&vals) {
        if !hu.is_positive() {
            continue;
        }
        for (w, hw) in pts.iter().zip(&vals) {
            if !hw.is_negative() {
                continue;
            }
            let t = hu / (hu - hw);
            out.push(u.iter().zip(w).map(|(a, b)| a + &t * (b - a)).collect());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Volume of a simplex given by `d + 1` points in dimension `d`.
pub(crate) fn simplex_volume(s: &[RPoint]) -> Rational {
    let d = s.len() - 1;
    if d == 0 {
        return Rational::one();
    }
    let scale = lcm_of_denominators(s.iter().flatten());
    let rows: Vec<Vec<BigInt>> = s[1..]
        .iter()
        .map(|p| p.iter().zip(&s[0]).map(|(a, b)| ((a - b) * &scale).to_integer()).collect())
        .collect();
    let det = linalg::det(&rows).abs();
    let denom = factorial(d) * num_traits::pow(scale, d);
    Rational::new(det, denom)
}

/// Hull of integer points, as indices into the (sorted, deduplicated) input.
struct IntHull {
    points: Vec<Vec<BigInt>>,
    affine_dim: usize,
    vertices: Vec<usize>,
    facets: Vec<(Vec<BigInt>, BigInt)>,
    equalities: Vec<(Vec<BigInt>, BigInt)>,
    boundary: Vec<(Vec<usize>, usize)>,
}

struct Simplex {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Primitive normal of the hyperplane through `d` affinely independent points in dimension `d`.
fn hyperplane(points: &[&Vec<BigInt>]) -> (Vec<BigInt>, BigInt) {
    let d = points[0].len();
    let diffs: Vec<Vec<BigInt>> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    let mut normal = Vec::with_capacity(d);
    for k in 0..d {
        let minor: Vec<Vec<BigInt>> = diffs
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect())
            .collect();
        let m = linalg::det(&minor);
        normal.push(if k % 2 == 0 { m } else { -m });
    }
    make_primitive(&mut normal);
    let offset = dot(&normal, points[0]);
    (normal, offset)
}

impl IntHull {
    fn build(dim: usize, pts: &[Vec<BigInt>]) -> IntHull {
        let base = &pts[0];
        let diffs: Vec<Vec<BigInt>> = pts[1..].iter().map(|p| sub(p, base)).collect();
        let rank = linalg::rank_int(&diffs);
        if rank == dim {
            return Self::full(dim, pts.to_vec());
        }
        // Lower-dimensional: hull inside a coordinate chart that is injective on the affine hull.
        let mut chart: Vec<usize> = Vec::new();
        for c in 0..dim {
            if chart.len() == rank {
                break;
            }
            let mut trial = chart.clone();
            trial.push(c);
            let rows: Vec<Vec<BigInt>> =
                diffs.iter().map(|r| trial.iter().map(|&j| r[j].clone()).collect()).collect();
            if linalg::rank_int(&rows) == trial.len() {
                chart = trial;
            }
        }
        let projected: Vec<Vec<BigInt>> =
            pts.iter().map(|p| chart.iter().map(|&j| p[j].clone()).collect()).collect();
        let sub_hull = Self::full(rank, projected);
        let lift = |n: &[BigInt]| {
            let mut full = alloc::vec![BigInt::zero(); dim];
            for (k, &j) in chart.iter().enumerate() {
                full[j] = n[k].clone();
            }
            full
        };
        let facets = sub_hull.facets.iter().map(|(n, c)| (lift(n), c.clone())).collect();
        let rat_diffs: Vec<Vec<Rational>> = diffs
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let equalities = linalg::nullspace(&rat_diffs, dim)
            .into_iter()
            .map(|w| {
                let l = lcm_of_denominators(w.iter());
                let mut n: Vec<BigInt> = w.iter().map(|x| (x * &l).to_integer()).collect();
                make_primitive(&mut n);
                let c = dot(&n, base);
                (n, c)
            })
            .collect();
        IntHull {
            points: pts.to_vec(),
            affine_dim: rank,
            vertices: sub_hull.vertices,
            facets,
            equalities,
            boundary: Vec::new(),
        }
    }

    /// Hull of points known to span their ambient space.
    fn full(dim: usize, pts: Vec<Vec<BigInt>>) -> IntHull {
        if dim == 0 {
            return IntHull {
                points: pts,
                affine_dim: 0,
                vertices: alloc::vec![0],
                facets: Vec::new(),
                equalities: Vec::new(),
                boundary: Vec::new(),
            };
        }
        if dim == 1 {
            let last = pts.len() - 1;
            let facets = alloc::vec![
                (alloc::vec![BigInt::one()], pts[0][0].clone()),
                (alloc::vec![-BigInt::one()], -pts[last][0].clone()),
            ];
            return IntHull {
                points: pts,
                affine_dim: 1,
                vertices: alloc::vec![0, last],
                facets,
                equalities: Vec::new(),
                boundary: alloc::vec![(alloc::vec![0], 0), (alloc::vec![last], 1)],
            };
        }

        // Initial simplex: greedy affinely independent points in lexicographic order.
        let mut init: Vec<usize> = alloc::vec![0];
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 1..pts.len() {
            let mut trial = rows.clone();
            trial.push(sub(&pts[i], &pts[0]));
            if linalg::rank_int(&trial) == trial.len() {
                rows = trial;
                init.push(i);
                if init.len() == dim + 1 {
                    break;
                }
            }
        }
        let centroid: Vec<BigInt> = (0..dim)
            .map(|k| init.iter().fold(BigInt::zero(), |acc, &i| acc + &pts[i][k]))
            .collect();
        let weight = BigInt::from(dim + 1);
        let make = |verts: Vec<usize>, pts: &[Vec<BigInt>]| -> Simplex {
            let refs: Vec<&Vec<BigInt>> = verts.iter().map(|&i| &pts[i]).collect();
            let (mut normal, mut offset) = hyperplane(&refs);
            if (dot(&normal, &centroid) - &offset * &weight).is_negative() {
                normal.iter_mut().for_each(|x| *x = -&*x);
                offset = -offset;
            }
            Simplex { verts, normal, offset }
        };

        let mut boundary: Vec<Simplex> = (0..=dim)
            .map(|skip| {
                let mut v: Vec<usize> =
                    init.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| i).collect();
                v.sort_unstable();
                make(v, &pts)
            })
            .collect();

        for p in 0..pts.len() {
            if init.contains(&p) {
                continue;
            }
            let point = &pts[p];
            let visible: Vec<bool> =
                boundary.iter().map(|s| dot(&s.normal, point) < s.offset).collect();
            if !visible.iter().any(|&v| v) {
                continue;
            }
            let mut ridges: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
            for (s, _) in boundary.iter().zip(&visible).filter(|(_, &v)| v) {
                for skip in 0..s.verts.len() {
                    let ridge: Vec<usize> = s
                        .verts
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &i)| i)
                        .collect();
                    *ridges.entry(ridge).or_insert(0) += 1;
                }
            }
            let mut kept: Vec<Simplex> = boundary
                .into_iter()
                .zip(visible)
                .filter(|(_, v)| !v)
                .map(|(s, _)| s)
                .collect();
            for (ridge, count) in ridges {
                if count == 1 {
                    let mut v = ridge;
                    v.push(p);
                    v.sort_unstable();
                    kept.push(make(v, &pts));
                }
            }
            boundary = kept;
        }

        // Coplanar boundary simplices share one facet; facets are numbered in key order.
        let mut lookup: BTreeMap<(Vec<BigInt>, BigInt), usize> =
            boundary.iter().map(|s| ((s.normal.clone(), s.offset.clone()), 0)).collect();
        for (i, idx) in lookup.values_mut().enumerate() {
            *idx = i;
        }
        let facets: Vec<(Vec<BigInt>, BigInt)> = lookup.keys().cloned().collect();
        let simplices: Vec<(Vec<usize>, usize)> = boundary
            .into_iter()
            .map(|s| {
                let idx = lookup[&(s.normal, s.offset)];
                (s.verts, idx)
            })
            .collect();

        let mut candidates: Vec<usize> = simplices.iter().flat_map(|(v, _)| v.iter().copied()).collect();
        candidates.sort_unstable();
        candidates.dedup();
        let vertices = candidates
            .into_iter()
            .filter(|&i| {
                let tight: Vec<Vec<BigInt>> = facets
                    .iter()
                    .filter(|(n, c)| dot(n, &pts[i]) == *c)
                    .map(|(n, _)| n.clone())
                    .collect();
                tight.len() >= dim && linalg::rank_int(&tight) == dim
            })
            .collect();
        IntHull { points: pts, affine_dim: dim, vertices, facets, equalities: Vec::new(), boundary: simplices }
    }

    fn into_polytope(self, dim: usize, scale: &BigInt) -> Polytope {
        let unscale = |p: &Vec<BigInt>| -> RPoint {
            p.iter().map(|x| Rational::new(x.clone(), scale.clone())).collect()
        };
        let to_facet = |(n, c): &(Vec<BigInt>, BigInt)| Facet {
            normal: n.clone(),
            offset: Rational::new(c.clone(), scale.clone()),
        };
        let mut vertices: Vec<RPoint> = self.vertices.iter().map(|&i| unscale(&self.points[i])).collect();
        vertices.sort();
        let full = self.affine_dim == dim;
        let (facets, relative_facets) = if full {
            (self.facets.iter().map(to_facet).collect(), Vec::new())
        } else {
            (Vec::new(), self.facets.iter().map(to_facet).collect())
        };
        // Boundary simplices index into the original point list; keep only used points.
        let mut used: Vec<usize> = self.boundary.iter().flat_map(|(v, _)| v.iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        let position: BTreeMap<usize, usize> = used.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let boundary_points = used.iter().map(|&i| unscale(&self.points[i])).collect();
        let boundary = self
            .boundary
            .iter()
            .map(|(v, f)| (v.iter().map(|i| position[i]).collect(), *f))
            .collect();
        Polytope {
            dim,
            affine_dim: self.affine_dim as isize,
            vertices,
            facets,
            equalities: self.equalities.iter().map(to_facet).collect(),
            relative_facets,
            boundary_points,
            boundary,
        }
    }
}
