//! Piecewise-linear envelopes of polytopes, their convolutions and mixed integrals.
//!
//! A [`PLFunction`] keeps an explicit decomposition of its domain into cells,
//! each carrying an affine map, so that integration reduces to triangulating
//! cell-region intersections. Convolutions are realised as envelopes of
//! Minkowski sums: the infimal convolution of convex functions is the lower
//! envelope of the sum of their graph hulls, and dually for the supremal one.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{rat, RPoint, Rational};
use crate::polytope::{simplex_volume, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Convex; parameterises the lower boundary.
    Lower,
    /// Concave; parameterises the upper boundary.
    Upper,
}

/// An affine map `x -> gradient . x + constant` valid on `cell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub cell: Polytope,
    pub gradient: RPoint,
    pub constant: Rational,
}

impl Piece {
    pub fn value_at(&self, x: &[Rational]) -> Rational {
        self.gradient.iter().zip(x).fold(self.constant.clone(), |acc, (g, xi)| acc + g * xi)
    }
}

/// Piecewise-linear envelope function over a polytope domain in one dimension less than its source.
#[derive(Clone, Debug)]
pub struct PLFunction {
    source: Polytope,
    side: Side,
    domain: Polytope,
    pieces: Vec<Piece>,
}

impl PLFunction {
    pub fn source(&self) -> &Polytope {
        &self.source
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn domain(&self) -> &Polytope {
        &self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Value at `x`, or `None` outside the domain.
    pub fn evaluate(&self, x: &[Rational]) -> Option<Rational> {
        self.pieces.iter().find(|p| p.cell.contains(x)).map(|p| p.value_at(x))
    }

    /// Value from the max-of-affine (lower) or min-of-affine (upper) form.
    pub fn evaluate_extremal(&self, x: &[Rational]) -> Option<Rational> {
        if !self.domain.contains(x) {
            return None;
        }
        let values = self.pieces.iter().map(|p| p.value_at(x));
        match self.side {
            Side::Lower => values.max(),
            Side::Upper => values.min(),
        }
    }

    /// `-f`: a convex function becomes concave and vice versa.
    pub fn negate(&self) -> Result<PLFunction> {
        let d = self.source.dim();
        let reflected: Vec<RPoint> = self
            .source
            .vertices()
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w[d - 1] = -w[d - 1].clone();
                w
            })
            .collect();
        Ok(PLFunction {
            source: Polytope::hull(d, &reflected)?,
            side: match self.side {
                Side::Lower => Side::Upper,
                Side::Upper => Side::Lower,
            },
            domain: self.domain.clone(),
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece {
                    cell: p.cell.clone(),
                    gradient: p.gradient.iter().map(|g| -g).collect(),
                    constant: -p.constant.clone(),
                })
                .collect(),
        })
    }

    /// Convex hull of the graph over the cell vertices. Its envelope on `self.side` is `self`.
    pub fn graph_hull(&self) -> Result<Polytope> {
        let mut pts: Vec<RPoint> = Vec::new();
        for p in &self.pieces {
            for v in p.cell.vertices() {
                let mut w = v.clone();
                w.push(p.value_at(v));
                pts.push(w);
            }
        }
        Polytope::hull(self.domain.dim() + 1, &pts)
    }
}

fn envelope(q: &Polytope, side: Side) -> Result<PLFunction> {
    let d = q.dim();
    if d == 0 {
        return Err(Error::DegeneratePolytope);
    }
    let domain = q.project_last()?;
    let affine = |normal: &[BigInt], offset: &Rational| -> (RPoint, Rational) {
        // normal[..d-1] . x + normal[d-1] * t = offset
        let b = Rational::from_integer(normal[d - 1].clone());
        let gradient = normal[..d - 1].iter().map(|a| -Rational::from_integer(a.clone()) / &b).collect();
        (gradient, offset / &b)
    };
    let mut pieces = Vec::new();
    if q.is_full_dimensional() {
        for f in q.facets() {
            let wanted = match side {
                Side::Lower => f.normal[d - 1].is_positive(),
                Side::Upper => f.normal[d - 1].is_negative(),
            };
            if !wanted {
                continue;
            }
            let on_facet: Vec<RPoint> = q
                .vertices()
                .iter()
                .filter(|v| f.slack(v).is_zero())
                .map(|v| v[..d - 1].to_vec())
                .collect();
            let (gradient, constant) = affine(&f.normal, &f.offset);
            pieces.push(Piece { cell: Polytope::hull(d - 1, &on_facet)?, gradient, constant });
        }
    } else if q.affine_dim() == d as isize - 1 && domain.is_full_dimensional() {
        let eq = q
            .equalities()
            .iter()
            .find(|e| !e.normal[d - 1].is_zero())
            .ok_or(Error::DegeneratePolytope)?;
        let (gradient, constant) = affine(&eq.normal, &eq.offset);
        pieces.push(Piece { cell: domain.clone(), gradient, constant });
    } else {
        return Err(Error::DegeneratePolytope);
    }
    Ok(PLFunction { source: q.clone(), side, domain, pieces })
}

/// `rho_Q(x) = min { t : (x, t) in Q }` over `pi(Q)`.
///
/// `Q` must be full-dimensional, or a non-vertical hyperplane section whose
/// projection is full-dimensional (the envelope is then a single affine piece).
pub fn lower_envelope(q: &Polytope) -> Result<PLFunction> {
    envelope(q, Side::Lower)
}

/// `sigma_Q(x) = max { t : (x, t) in Q }` over `pi(Q)`.
pub fn upper_envelope(q: &Polytope) -> Result<PLFunction> {
    envelope(q, Side::Upper)
}

/// Restriction to a sub-polytope of the domain.
pub fn restrict(f: &PLFunction, region: &Polytope) -> Result<PLFunction> {
    if region.dim() != f.domain.dim() {
        return Err(Error::DimensionMismatch { expected: f.domain.dim(), found: region.dim() });
    }
    if !f.domain.contains_polytope(region) {
        return Err(Error::NotContained);
    }
    let mut pieces: Vec<Piece> = Vec::new();
    for p in &f.pieces {
        let Some(cell) = p.cell.intersect(region)? else {
            continue;
        };
        if cell.affine_dim() < region.affine_dim() || pieces.iter().any(|q| q.cell == cell) {
            continue;
        }
        pieces.push(Piece { cell, gradient: p.gradient.clone(), constant: p.constant.clone() });
    }
    Ok(PLFunction { source: f.source.clone(), side: f.side, domain: region.clone(), pieces })
}

fn convolution(fs: &[&PLFunction], side: Side) -> Result<PLFunction> {
    let first = fs.first().ok_or(Error::EmptyPointSet)?;
    for f in fs {
        if f.side != side {
            return Err(Error::MixedSides);
        }
        if f.domain.dim() != first.domain.dim() {
            return Err(Error::DimensionMismatch { expected: first.domain.dim(), found: f.domain.dim() });
        }
    }
    if fs.len() == 1 {
        return Ok((*first).clone());
    }
    let graphs: Vec<Polytope> = fs.iter().map(|f| f.graph_hull()).collect::<Result<_>>()?;
    let refs: Vec<&Polytope> = graphs.iter().collect();
    envelope(&Polytope::minkowski_sum(&refs)?, side)
}

/// `(f_1 [+]' ... [+]' f_k)(x) = min { sum f_j(y_j) : sum y_j = x }` for convex `f_j`.
pub fn inf_convolution(fs: &[&PLFunction]) -> Result<PLFunction> {
    convolution(fs, Side::Lower)
}

/// `(g_1 [+] ... [+] g_k)(x) = max { sum g_j(y_j) : sum y_j = x }` for concave `g_j`.
pub fn sup_convolution(fs: &[&PLFunction]) -> Result<PLFunction> {
    convolution(fs, Side::Upper)
}

/// Exact integral of `f` over `region`.
///
/// In dimension zero the measure is counting measure, so the integral is the value at the point.
pub fn integrate(f: &PLFunction, region: &Polytope) -> Result<Rational> {
    let m = f.domain.dim();
    if region.dim() != m {
        return Err(Error::DimensionMismatch { expected: m, found: region.dim() });
    }
    if !f.domain.contains_polytope(region) {
        return Err(Error::NotContained);
    }
    if m == 0 {
        return f.evaluate(&[]).ok_or(Error::NotContained);
    }
    if !region.is_full_dimensional() {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for p in &f.pieces {
        let Some(cell) = p.cell.intersect(region)? else {
            continue;
        };
        for simplex in cell.triangulation() {
            let mean = simplex.iter().fold(Rational::zero(), |acc, v| acc + p.value_at(v))
                / rat(simplex.len() as i64);
            total += simplex_volume(&simplex) * mean;
        }
    }
    Ok(total)
}

/// Sign `(-1)^(n - #J)`.
fn alternating(n: usize, mask: usize) -> bool {
    (n - mask.count_ones() as usize).is_multiple_of(2)
}

/// `MI'_n(rho_1, ..., rho_n)` for restricted lower envelopes `rho_j` of polytopes `Q_j`.
///
/// For each nonempty `J` the convolution over `D_J = sum_{j in J} dom(rho_j)` is the
/// lower envelope of `sum_{j in J} Q_j` restricted to `D_J`, where `Q_j` is each
/// function's source polytope. This matches the direct convolution of the restricted
/// functions when the domains are projected axis simplices of the `Q_j`.
pub fn mixed_integral_prime(fs: &[&PLFunction]) -> Result<Rational> {
    let n = fs.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    for f in fs {
        if f.side != Side::Lower {
            return Err(Error::MixedSides);
        }
        if f.source.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.source.dim() });
        }
    }
    let mut total = Rational::zero();
    for mask in 1usize..(1 << n) {
        let members: Vec<&PLFunction> = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| fs[j]).collect();
        let domains: Vec<&Polytope> = members.iter().map(|f| &f.domain).collect();
        let sources: Vec<&Polytope> = members.iter().map(|f| &f.source).collect();
        let region = Polytope::minkowski_sum(&domains)?;
        let conv = restrict(&lower_envelope(&Polytope::minkowski_sum(&sources)?)?, &region)?;
        let term = integrate(&conv, &region)?;
        if alternating(n, mask) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `MI_n(sigma_1, ..., sigma_n)` for concave functions, by direct supremal convolution.
pub fn mixed_integral(fs: &[&PLFunction]) -> Result<Rational> {
    let n = fs.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let mut total = Rational::zero();
    for mask in 1usize..(1 << n) {
        let members: Vec<&PLFunction> = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| fs[j]).collect();
        let conv = sup_convolution(&members)?;
        let term = integrate(&conv, &conv.domain)?;
        if alternating(n, mask) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `Delta_j = conv {0, lambda_1 e_1, ..., lambda_n e_n}` with `lambda_i = min { mu >= 1 : mu e_i in Q }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisSimplex {
    pub lambdas: Vec<u64>,
    pub simplex: Polytope,
}

fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Builds the axis simplex of `q`, testing axis membership against the hull itself.
pub fn axis_simplex(q: &Polytope) -> Result<AxisSimplex> {
    use num_traits::ToPrimitive;
    let n = q.dim();
    let mut lambdas = Vec::with_capacity(n);
    for i in 0..n {
        // Constraints restricted to the line mu * e_i read a * mu >= c or a * mu = c.
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut feasible = true;
        let mut tighten = |a: &BigInt, c: &Rational, equality: bool| {
            if a.is_zero() {
                if c.is_positive() || (equality && !c.is_zero()) {
                    feasible = false;
                }
                return;
            }
            let bound = c / Rational::from_integer(a.clone());
            if equality || a.is_positive() {
                lo = Some(lo.take().map_or(bound.clone(), |l| l.max(bound.clone())));
            }
            if equality || a.is_negative() {
                hi = Some(hi.take().map_or(bound.clone(), |h| h.min(bound)));
            }
        };
        for e in q.equalities() {
            tighten(&e.normal[i], &e.offset, true);
        }
        for f in q.inequalities() {
            tighten(&f.normal[i], &f.offset, false);
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::H3ViolatedOnAxis(i));
        };
        let mu = ceil(&lo).max(BigInt::one());
        if !feasible || Rational::from_integer(mu.clone()) > hi {
            return Err(Error::H3ViolatedOnAxis(i));
        }
        lambdas.push(mu.to_u64().ok_or(Error::H3ViolatedOnAxis(i))?);
    }
    let mut pts = alloc::vec![alloc::vec![Rational::zero(); n]];
    for (i, &l) in lambdas.iter().enumerate() {
        let mut e = alloc::vec![Rational::zero(); n];
        e[i] = rat(l as i64);
        pts.push(e);
    }
    Ok(AxisSimplex { lambdas, simplex: Polytope::hull(n, &pts)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio;

    fn poly(d: usize, raw: &[&[i64]]) -> Polytope {
        let pts: Vec<RPoint> = raw.iter().map(|p| p.iter().map(|&c| rat(c)).collect()).collect();
        Polytope::hull(d, &pts).unwrap()
    }

    fn at(f: &PLFunction, x: i64) -> Rational {
        f.evaluate(&[rat(x)]).unwrap()
    }

    #[test]
    fn lower_envelope_breakpoints() {
        let q1 = poly(2, &[&[2, 0], &[1, 1], &[0, 4]]);
        let r1 = lower_envelope(&q1).unwrap();
        assert_eq!((at(&r1, 0), at(&r1, 1), at(&r1, 2)), (rat(4), rat(1), rat(0)));
        assert_eq!(r1.pieces().len(), 2);
        let q2 = poly(2, &[&[4, 0], &[2, 1], &[0, 4]]);
        let r2 = lower_envelope(&q2).unwrap();
        assert_eq!((at(&r2, 0), at(&r2, 2), at(&r2, 4)), (rat(4), rat(1), rat(0)));
    }

    #[test]
    fn unit_square_envelopes() {
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let lo = lower_envelope(&sq).unwrap();
        let up = upper_envelope(&sq).unwrap();
        for x in [ratio(0, 1), ratio(1, 3), ratio(1, 1)] {
            assert_eq!(lo.evaluate(core::slice::from_ref(&x)), Some(rat(0)));
            assert_eq!(up.evaluate(&[x]), Some(rat(1)));
        }
        assert_eq!(lo.evaluate(&[rat(2)]), None);
    }

    #[test]
    fn degenerate_source_is_rejected() {
        let vertical = poly(2, &[&[1, 0], &[1, 3]]);
        assert_eq!(lower_envelope(&vertical).unwrap_err(), Error::DegeneratePolytope);
        let slanted = poly(2, &[&[0, 1], &[1, 0]]);
        let f = lower_envelope(&slanted).unwrap();
        assert_eq!(f.evaluate(&[ratio(1, 4)]), Some(ratio(3, 4)));
    }

    #[test]
    fn one_dimensional_source() {
        let seg = poly(1, &[&[2], &[7]]);
        let lo = lower_envelope(&seg).unwrap();
        let up = upper_envelope(&seg).unwrap();
        assert_eq!(lo.evaluate(&[]), Some(rat(2)));
        assert_eq!(up.evaluate(&[]), Some(rat(7)));
        assert_eq!(integrate(&lo, lo.domain()).unwrap(), rat(2));
    }

    #[test]
    fn restriction_cases() {
        let q1 = poly(2, &[&[2, 0], &[1, 1], &[0, 4], &[1, 3], &[3, 3]]);
        let rho = lower_envelope(&q1).unwrap();
        let same = restrict(&rho, rho.domain()).unwrap();
        assert_eq!(same.pieces(), rho.pieces());
        let bar = restrict(&rho, &poly(1, &[&[0], &[2]])).unwrap();
        assert_eq!((at(&bar, 0), at(&bar, 1), at(&bar, 2)), (rat(4), rat(1), rat(0)));
        assert_eq!(bar.evaluate(&[rat(3)]), None);
        let point = restrict(&rho, &poly(1, &[&[1]])).unwrap();
        assert_eq!(point.pieces().len(), 1);
        assert_eq!(at(&point, 1), rat(1));
        assert_eq!(restrict(&rho, &poly(1, &[&[0], &[5]])).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn axis_simplices() {
        let q1 = poly(2, &[&[2, 0], &[1, 1], &[0, 4], &[1, 3], &[3, 3]]);
        let a = axis_simplex(&q1).unwrap();
        assert_eq!(a.lambdas, vec![2, 4]);
        assert_eq!(a.simplex, poly(2, &[&[0, 0], &[2, 0], &[0, 4]]));
        let q2 = poly(2, &[&[4, 0], &[2, 1], &[0, 4], &[2, 5], &[1, 3]]);
        assert_eq!(axis_simplex(&q2).unwrap().lambdas, vec![4, 4]);
        let off_axis = poly(2, &[&[1, 1], &[2, 0], &[3, 3]]);
        assert_eq!(axis_simplex(&off_axis).unwrap_err(), Error::H3ViolatedOnAxis(1));
        // A hull can meet an axis between lattice points of the support.
        let q = poly(2, &[&[1, 0], &[3, 0], &[0, 1], &[0, 3]]);
        assert_eq!(axis_simplex(&q).unwrap().lambdas, vec![1, 1]);
    }

    #[test]
    fn convolution_sides_must_match() {
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let lo = lower_envelope(&sq).unwrap();
        let up = upper_envelope(&sq).unwrap();
        assert_eq!(inf_convolution(&[&lo, &up]).unwrap_err(), Error::MixedSides);
        let two = sup_convolution(&[&up, &up]).unwrap();
        assert_eq!(two.domain(), &poly(1, &[&[0], &[2]]));
        assert_eq!(two.evaluate(&[ratio(3, 2)]), Some(rat(2)));
    }

    #[test]
    fn zero_function_integrates_to_zero() {
        let sq = poly(2, &[&[0, 0], &[3, 0], &[0, 1], &[3, 1]]);
        let lo = lower_envelope(&sq).unwrap();
        assert_eq!(integrate(&lo, lo.domain()).unwrap(), rat(0));
    }
}
