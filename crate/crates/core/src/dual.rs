//! Multiplicity of an isolated zero of a concrete system from the dimensions of its
//! truncated dual spaces, computed as nullities of multiplicity matrices.
//!
//! Monomials are ordered by total degree, then lexicographically with larger
//! exponents of earlier variables first: `1, x1, x2, x1^2, x1 x2, x2^2, ...`.
//! Rows of a multiplicity matrix follow the same order on `beta`, then `j`.
//!
//! Ranks are exact. Rows are scaled to integers and reduced with fraction-free
//! elimination in which every pivot is the lowest-indexed nonzero column of its row. Because
//! columns are sorted by degree, one echelon form of `S_K` gives the rank of every
//! `S_k` with `k <= K`: it is the number of pivots of degree at most `k`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::num::{binomial, lcm_of_denominators, make_primitive, rat, RPoint, Rational};
use crate::point::{LatticePoint, PointSet};
use crate::support::SupportFamily;

/// Default cap on the order `k` of the multiplicity matrices.
pub const DEFAULT_K_MAX: usize = 24;

/// Default coefficient range `[-bound, bound]` for random instances.
pub const DEFAULT_BOUND: u64 = 1_000_000;

/// A polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<LatticePoint, Rational>,
}

impl SparsePolynomial {
    pub fn zero(n: usize) -> Self {
        SparsePolynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_terms(n, [(LatticePoint::zero(n), c)])
    }

    /// `x_i`, 0-based.
    pub fn variable(n: usize, i: usize) -> Self {
        Self::from_terms(n, [(LatticePoint::axis(n, i, 1), rat(1))])
    }

    /// Sums repeated exponents and drops zero coefficients. Panics on a dimension mismatch.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (LatticePoint, Rational)>) -> Self {
        let mut p = Self::zero(n);
        for (a, c) in terms {
            p.add_term(a, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &LatticePoint) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> PointSet {
        PointSet::new(self.n, self.terms.keys().cloned()).expect("terms share the dimension")
    }

    pub fn add_term(&mut self, a: LatticePoint, c: Rational) {
        assert_eq!(a.dim(), self.n, "exponent dimension");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(a).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> SparsePolynomial {
        Self::from_terms(self.n, self.terms.iter().map(|(a, v)| (a.clone(), v * c)))
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.add(b), c * d);
            }
        }
        out
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (a, c)| acc + c * monomial_value(a, x))
    }

    /// Substitutes `values` for the first `values.len()` variables, leaving a polynomial in the rest.
    pub fn specialize_prefix(&self, values: &[Rational]) -> SparsePolynomial {
        let r = values.len();
        let mut out = Self::zero(self.n - r);
        for (a, c) in &self.terms {
            let head = LatticePoint::new(a.coords()[..r].to_vec());
            let tail = LatticePoint::new(a.coords()[r..].to_vec());
            out.add_term(tail, c * monomial_value(&head, values));
        }
        out
    }
}

fn monomial_value(a: &LatticePoint, x: &[Rational]) -> Rational {
    a.coords()
        .iter()
        .zip(x)
        .fold(Rational::one(), |acc, (&e, xi)| acc * num_traits::pow(xi.clone(), e as usize))
}

/// A square system, with the seed that produced its coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSystem {
    pub polys: Vec<SparsePolynomial>,
    pub seed: u64,
}

impl SparseSystem {
    pub fn n(&self) -> usize {
        self.polys.len()
    }

    pub fn evaluate(&self, x: &[Rational]) -> Vec<Rational> {
        self.polys.iter().map(|p| p.evaluate(x)).collect()
    }

    pub fn is_zero_at(&self, x: &[Rational]) -> bool {
        self.polys.iter().all(|p| p.evaluate(x).is_zero())
    }
}

/// Uniform draw from the `2 * bound` nonzero integers in `[-bound, bound]`.
///
/// A 64-bit output `x` of the generator is accepted when `x < floor(2^64 / 2b) * 2b`
/// and then mapped through `v = x mod 2b` to `v - b` if `v < b` and to `v - b + 1`
/// otherwise. Rejected outputs are discarded and redrawn.
fn draw_nonzero(rng: &mut ChaCha8Rng, bound: u64) -> i64 {
    let range = 2 * bound;
    let zone = (u64::MAX / range) * range;
    loop {
        let x = rng.next_u64();
        if x < zone {
            let v = (x % range) as i64;
            let b = bound as i64;
            return if v < b { v - b } else { v - b + 1 };
        }
    }
}

fn check_bound(bound: u64) -> Result<()> {
    if !(2..=(i64::MAX as u64) / 2).contains(&bound) {
        return Err(Error::InvalidArgument(alloc::format!("coefficient bound {bound} out of range")));
    }
    Ok(())
}

/// A system with the given supports and every coefficient drawn by [`draw_nonzero`]
/// from a ChaCha8 stream seeded with `seed`, polynomial by polynomial, exponents in
/// increasing lexicographic order.
pub fn random_system(a: &SupportFamily, seed: u64, bound: u64) -> Result<SparseSystem> {
    check_bound(bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = a.n();
    let polys = a
        .supports()
        .iter()
        .map(|s| {
            SparsePolynomial::from_terms(n, s.iter().map(|p| (p.clone(), rat(draw_nonzero(&mut rng, bound)))))
        })
        .collect();
    Ok(SparseSystem { polys, seed })
}

/// A random support family for oracle runs.
///
/// Each support gets between 1 and `max_points` draws (duplicates merge). Every
/// coordinate of a drawn point is 0 with probability 1/2 and otherwise uniform in
/// `1..=max_exp`. Origin draws are discarded, so H1 always holds. All randomness
/// comes from a ChaCha8 stream seeded with `seed`.
pub fn random_family(n: usize, max_points: usize, max_exp: u32, seed: u64) -> Result<SupportFamily> {
    if n == 0 || max_points == 0 || max_exp == 0 {
        return Err(Error::InvalidArgument("random families need n, points and exponents >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut below = |m: u64| -> u64 {
        let zone = (u64::MAX / m) * m;
        loop {
            let x = rng.next_u64();
            if x < zone {
                return x % m;
            }
        }
    };
    let mut supports = Vec::with_capacity(n);
    for _ in 0..n {
        let count = 1 + below(max_points as u64) as usize;
        let mut pts = Vec::with_capacity(count);
        while pts.len() < count {
            let p: Vec<i64> = (0..n)
                .map(|_| if below(2) == 0 { 0 } else { 1 + below(max_exp as u64) as i64 })
                .collect();
            if p.iter().any(|&c| c != 0) {
                pts.push(LatticePoint::new(p));
            }
        }
        supports.push(PointSet::new(n, pts)?);
    }
    SupportFamily::new(supports)
}

/// `q(y) = p(y + zeta)`, expanded exactly.
pub fn shift(p: &SparsePolynomial, zeta: &[Rational]) -> Result<SparsePolynomial> {
    if zeta.len() != p.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: zeta.len() });
    }
    let mut out = SparsePolynomial::zero(p.n);
    for (a, c) in &p.terms {
        // (y_i + z_i)^{a_i} = sum_b C(a_i, b) z_i^{a_i - b} y_i^b, one variable at a time.
        let mut partial: Vec<(Vec<i64>, Rational)> = alloc::vec![(Vec::new(), c.clone())];
        for (&e, z) in a.coords().iter().zip(zeta) {
            let mut next = Vec::new();
            for (exps, coef) in &partial {
                for b in 0..=e {
                    if z.is_zero() && b < e {
                        continue;
                    }
                    let factor = Rational::from_integer(binomial(e as u64, b as u64))
                        * num_traits::pow(z.clone(), (e - b) as usize);
                    let mut ex = exps.clone();
                    ex.push(b);
                    next.push((ex, coef * factor));
                }
            }
            partial = next;
        }
        for (ex, coef) in partial {
            out.add_term(LatticePoint::new(ex), coef);
        }
    }
    Ok(out)
}

/// Exponents of degree at most `k` in `n` variables, in the documented graded order.
pub fn monomials_up_to(n: usize, k: usize) -> Vec<LatticePoint> {
    fn of_degree(n: usize, d: i64, prefix: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(LatticePoint::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            of_degree(n, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(LatticePoint::new(Vec::new()));
        return out;
    }
    for d in 0..=k as i64 {
        of_degree(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// `S_k(f, zeta)` stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    pub k: usize,
    /// Row labels `(beta, j)`, with `j` 0-based.
    pub rows: Vec<(LatticePoint, usize)>,
    /// Column labels `alpha`.
    pub cols: Vec<LatticePoint>,
    /// Nonzero entries of each row as `(column, value)`, sorted by column.
    pub entries: Vec<Vec<(usize, Rational)>>,
}

impl MultiplicityMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.entries[row]
            .binary_search_by_key(&col, |(c, _)| *c)
            .map(|i| self.entries[row][i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }
}

fn shifted_at_zero(f: &SparseSystem, zeta: &[Rational]) -> Result<Vec<SparsePolynomial>> {
    if zeta.len() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), found: zeta.len() });
    }
    if !f.is_zero_at(zeta) {
        return Err(Error::NotAZero);
    }
    f.polys.iter().map(|p| shift(p, zeta)).collect()
}

fn assemble(shifted: &[SparsePolynomial], n: usize, k: usize) -> MultiplicityMatrix {
    let cols = monomials_up_to(n, k);
    let index: BTreeMap<&LatticePoint, usize> = cols.iter().enumerate().map(|(i, a)| (a, i)).collect();
    // At order 0 the single column pairs with the values f_j(zeta), one row per equation.
    let betas = if k == 0 { monomials_up_to(n, 0) } else { monomials_up_to(n, k - 1) };
    let mut rows = Vec::with_capacity(betas.len() * n);
    let mut entries = Vec::with_capacity(betas.len() * n);
    for beta in &betas {
        for (j, g) in shifted.iter().enumerate() {
            let mut row: Vec<(usize, Rational)> = g
                .terms
                .iter()
                .filter(|(gamma, _)| (beta.degree() + gamma.degree()) as usize <= k)
                .map(|(gamma, c)| (index[&beta.add(gamma)], c.clone()))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            rows.push((beta.clone(), j));
            entries.push(row);
        }
    }
    MultiplicityMatrix { k, rows, cols, entries }
}

/// Builds `S_k(f, zeta)`: entry `((beta, j), alpha)` is the coefficient of `y^(alpha - beta)`
/// in `f_j(y + zeta)`. Fails with [`Error::NotAZero`] unless `f(zeta) = 0` exactly.
pub fn build_s_k(f: &SparseSystem, zeta: &[Rational], k: usize) -> Result<MultiplicityMatrix> {
    let shifted = shifted_at_zero(f, zeta)?;
    Ok(assemble(&shifted, f.n(), k))
}

type IntRow = Vec<(usize, BigInt)>;

fn integer_row(row: &[(usize, Rational)]) -> IntRow {
    let l = lcm_of_denominators(row.iter().map(|(_, v)| v));
    let mut out: IntRow = row
        .iter()
        .map(|(c, v)| (*c, (v * Rational::from_integer(l.clone())).to_integer()))
        .collect();
    primitive(&mut out);
    out
}

fn primitive(row: &mut IntRow) {
    let mut vals: Vec<BigInt> = row.iter().map(|(_, v)| v.clone()).collect();
    make_primitive(&mut vals);
    for ((_, v), p) in row.iter_mut().zip(vals) {
        *v = p;
    }
}

/// `row * (b/g) - pivot * (a/g)` where `a`, `b` are the leading entries and `g` their gcd.
fn eliminate(row: &IntRow, pivot: &IntRow) -> IntRow {
    let a = &row[0].1;
    let b = &pivot[0].1;
    let g = a.gcd(b);
    let (ra, pb) = (b / &g, a / &g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, v) = if take_row {
            i += 1;
            (row[i - 1].0, &row[i - 1].1 * &ra)
        } else if take_pivot {
            j += 1;
            (pivot[j - 1].0, -(&pivot[j - 1].1 * &pb))
        } else {
            i += 1;
            j += 1;
            (row[i - 1].0, &row[i - 1].1 * &ra - &pivot[j - 1].1 * &pb)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Leading columns of an echelon form of the row space.
///
/// Columns are swept left to right. All rows whose leading entry sits in the current
/// column compete for the pivot; the shortest row (then the one with the fewest bits)
/// wins, and the others are reduced by it and move on to their new leading columns.
/// Unreduced monomial multiples of the input thus stay pivots for as long as possible,
/// which keeps the integers small.
fn pivot_columns(rows: impl IntoIterator<Item = IntRow>) -> Vec<usize> {
    let weight = |r: &IntRow| (r.len(), r.iter().map(|(_, v)| v.bits()).sum::<u64>());
    let mut buckets: BTreeMap<usize, Vec<IntRow>> = BTreeMap::new();
    for r in rows {
        if let Some(&(c, _)) = r.first() {
            buckets.entry(c).or_default().push(r);
        }
    }
    let mut pivots = Vec::new();
    while let Some((c, mut group)) = buckets.pop_first() {
        let best = (0..group.len()).min_by_key(|&i| weight(&group[i])).expect("buckets are nonempty");
        let pivot = group.swap_remove(best);
        for r in group {
            let mut reduced = eliminate(&r, &pivot);
            if let Some(&(lead, _)) = reduced.first() {
                primitive(&mut reduced);
                buckets.entry(lead).or_default().push(reduced);
            }
        }
        pivots.push(c);
    }
    pivots
}

/// Exact rank.
pub fn rank(m: &MultiplicityMatrix) -> usize {
    pivot_columns(m.entries.iter().map(|r| integer_row(r))).len()
}

/// `columns - rank`.
pub fn nullity(m: &MultiplicityMatrix) -> usize {
    m.cols.len() - rank(m)
}

/// `dim ker S_k(f, zeta)` for `k = 0, ..., k_top`, from a single elimination of `S_{k_top}`.
pub fn nullity_profile(f: &SparseSystem, zeta: &[Rational], k_top: usize) -> Result<Vec<usize>> {
    let shifted = shifted_at_zero(f, zeta)?;
    Ok(profile_of(&shifted, f.n(), k_top))
}

fn profile_of(shifted: &[SparsePolynomial], n: usize, k_top: usize) -> Vec<usize> {
    let m = assemble(shifted, n, k_top);
    let mut pivots_by_degree = alloc::vec![0usize; k_top + 1];
    for c in pivot_columns(m.entries.iter().map(|r| integer_row(r))) {
        pivots_by_degree[m.cols[c].degree() as usize] += 1;
    }
    let mut profile = Vec::with_capacity(k_top + 1);
    let (mut cols, mut rank) = (0usize, 0usize);
    for (k, pivots) in pivots_by_degree.iter().enumerate() {
        cols += binomial((k + n - 1) as u64, k as u64).try_into().unwrap_or(usize::MAX);
        rank += pivots;
        profile.push(cols - rank);
    }
    profile
}

/// Result of a stabilized dual-space computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DzResult {
    pub multiplicity: usize,
    /// First `k` with `dim ker S_k = dim ker S_{k+1}`.
    pub k0: usize,
    /// Nullities for `k = 0, ..., k0 + 1`.
    pub profile: Vec<usize>,
}

/// Multiplicity of the isolated zero `zeta`: the nullity at which `dim ker S_k` first
/// repeats. Fails unless this happens with `k + 1 <= k_max`.
pub fn dz(f: &SparseSystem, zeta: &[Rational], k_max: usize) -> Result<DzResult> {
    let shifted = shifted_at_zero(f, zeta)?;
    let n = f.n();
    let mut k_top = k_max.min(4);
    loop {
        let profile = profile_of(&shifted, n, k_top);
        if let Some(k0) = (0..k_top).find(|&k| profile[k] == profile[k + 1]) {
            return Ok(DzResult { multiplicity: profile[k0], k0, profile: profile[..k0 + 2].to_vec() });
        }
        if k_top >= k_max {
            return Err(Error::NoStabilization { k_max });
        }
        k_top = (k_top + 2).min(k_max);
    }
}

/// See [`dz`].
pub fn multiplicity_dz(f: &SparseSystem, zeta: &[Rational], k_max: usize) -> Result<usize> {
    dz(f, zeta, k_max).map(|r| r.multiplicity)
}

/// A planted system `h` with zero `zeta = (xi, 0)` and its specialization `h_xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedSystem {
    pub system: SparseSystem,
    pub zeta: RPoint,
    pub xi: RPoint,
}

impl PlantedSystem {
    /// `h_xi`: the last `n - r` polynomials with `x_1..x_r` set to `xi`.
    pub fn specialize(&self) -> SparseSystem {
        let r = self.xi.len();
        SparseSystem {
            polys: self.system.polys[r..].iter().map(|p| p.specialize_prefix(&self.xi)).collect(),
            seed: self.system.seed,
        }
    }
}

const PLANT_RETRIES: usize = 8;

/// Builds `h = (h_1, ..., h_n)` with a nondegenerate zero `xi` of the first `r` polynomials.
///
/// For `j <= r`, `h_j = L_j(x' - xi) + sum_{a in upper_j} c_a (x'^a - xi^a)` in `x' = (x_1..x_r)`,
/// with `L_j` linear; the draw is repeated if the Jacobian at `xi` is singular. For
/// `j > r`, `h_j = sum_{b in lower_j} p_b(x') x''^b` where each `p_b` is affine with a
/// nonzero value at `xi`, so `h_xi` is supported exactly on the lower supports. `xi` has
/// nonzero entries in `[-3, 3]`; every other coefficient is drawn from `[-bound, bound]`.
pub fn planted_triangular_system(
    upper_supports: &[PointSet],
    lower_supports: &[PointSet],
    seed: u64,
    bound: u64,
) -> Result<PlantedSystem> {
    check_bound(bound)?;
    let r = upper_supports.len();
    let m = lower_supports.len();
    let n = r + m;
    if r == 0 {
        return Err(Error::InvalidArgument("a planted system needs r >= 1".into()));
    }
    if let Some(s) = upper_supports.iter().find(|s| s.dim() != r) {
        return Err(Error::DimensionMismatch { expected: r, found: s.dim() });
    }
    if let Some(s) = lower_supports.iter().find(|s| s.dim() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: s.dim() });
    }
    if lower_supports.iter().any(|s| s.is_empty() || s.contains(&LatticePoint::zero(m))) {
        return Err(Error::InvalidArgument("lower supports must be nonempty and avoid the origin".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi: RPoint = (0..r).map(|_| rat(draw_nonzero(&mut rng, 3))).collect();
    let lift = |a: &LatticePoint, head: bool| -> LatticePoint {
        let mut c = alloc::vec![0; n];
        let off = if head { 0 } else { r };
        c[off..off + a.dim()].copy_from_slice(a.coords());
        LatticePoint::new(c)
    };
    let x = |i: usize| SparsePolynomial::variable(n, i);

    let mut upper = None;
    for _ in 0..PLANT_RETRIES {
        let mut polys = Vec::with_capacity(r);
        for s in upper_supports {
            let mut h = SparsePolynomial::zero(n);
            for (i, xi_i) in xi.iter().enumerate() {
                let c = rat(draw_nonzero(&mut rng, bound));
                h = h.add(&x(i).sub(&SparsePolynomial::constant(n, xi_i.clone())).scale(&c));
            }
            for a in s.iter() {
                let c = rat(draw_nonzero(&mut rng, bound));
                let mono = SparsePolynomial::from_terms(n, [(lift(a, true), rat(1))]);
                let at_xi = monomial_value(a, &xi);
                h = h.add(&mono.sub(&SparsePolynomial::constant(n, at_xi)).scale(&c));
            }
            polys.push(h);
        }
        if jacobian_is_regular(&polys, &xi, r) {
            upper = Some(polys);
            break;
        }
    }
    let mut polys = upper.ok_or(Error::SingularLinearPart)?;

    for s in lower_supports {
        let mut h = SparsePolynomial::zero(n);
        for b in s.iter() {
            let value = rat(draw_nonzero(&mut rng, bound));
            let mut p = SparsePolynomial::constant(n, value);
            for (i, xi_i) in xi.iter().enumerate() {
                let d = rat(draw_nonzero(&mut rng, bound));
                p = p.add(&x(i).sub(&SparsePolynomial::constant(n, xi_i.clone())).scale(&d));
            }
            h = h.add(&p.mul(&SparsePolynomial::from_terms(n, [(lift(b, false), rat(1))])));
        }
        polys.push(h);
    }
    let mut zeta = xi.clone();
    zeta.extend((0..m).map(|_| Rational::zero()));
    let system = SparseSystem { polys, seed };
    debug_assert!(system.is_zero_at(&zeta));
    Ok(PlantedSystem { system, zeta, xi })
}

fn jacobian_is_regular(polys: &[SparsePolynomial], xi: &[Rational], r: usize) -> bool {
    let mut point = xi.to_vec();
    point.resize(polys[0].n(), Rational::zero());
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            let g = shift(p, &point).expect("dimension checked");
            (0..r).map(|i| g.coeff(&LatticePoint::axis(p.n(), i, 1))).collect()
        })
        .collect();
    let mut a = rows;
    crate::linalg::rref(&mut a).len() == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio;

    fn poly(n: usize, terms: &[(&[i64], i64)]) -> SparsePolynomial {
        SparsePolynomial::from_terms(n, terms.iter().map(|(a, c)| (LatticePoint::new(a.to_vec()), rat(*c))))
    }

    fn system(polys: Vec<SparsePolynomial>) -> SparseSystem {
        SparseSystem { polys, seed: 0 }
    }

    #[test]
    fn graded_order() {
        let m = monomials_up_to(2, 2);
        let want: Vec<LatticePoint> =
            [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]].iter().map(|c| LatticePoint::new(c.to_vec())).collect();
        assert_eq!(m, want);
        assert_eq!(monomials_up_to(3, 8).len(), 165);
    }

    #[test]
    fn shift_examples() {
        let p = poly(1, &[(&[2], 1)]);
        assert_eq!(shift(&p, &[rat(1)]).unwrap(), poly(1, &[(&[2], 1), (&[1], 2), (&[0], 1)]));
        let q = poly(2, &[(&[2, 1], 3), (&[0, 1], -1)]);
        assert_eq!(shift(&q, &[rat(0), rat(0)]).unwrap(), q);
        assert!(shift(&q, &[rat(0)]).is_err());
    }

    #[test]
    fn matrix_shapes() {
        let f = system(vec![poly(1, &[(&[2], 1)])]);
        let s1 = build_s_k(&f, &[rat(0)], 1).unwrap();
        assert_eq!(s1.shape(), (1, 2));
        assert_eq!(nullity(&s1), 2);
        let s0 = build_s_k(&f, &[rat(0)], 0).unwrap();
        assert_eq!((s0.shape(), nullity(&s0)), ((1, 1), 1));
        let g = system(vec![poly(3, &[(&[1, 0, 0], 1)]), poly(3, &[(&[0, 1, 0], 1)]), poly(3, &[(&[0, 0, 1], 1)])]);
        assert_eq!(build_s_k(&g, &[rat(0), rat(0), rat(0)], 8).unwrap().shape(), (360, 165));
    }

    #[test]
    fn not_a_zero() {
        let f = system(vec![poly(1, &[(&[2], 1)])]);
        assert_eq!(build_s_k(&f, &[rat(1)], 2).unwrap_err(), Error::NotAZero);
        assert_eq!(multiplicity_dz(&f, &[ratio(1, 2)], 8).unwrap_err(), Error::NotAZero);
    }

    #[test]
    fn monomial_ideals() {
        let f = system(vec![poly(2, &[(&[2, 0], 1)]), poly(2, &[(&[0, 3], 1)])]);
        let r = dz(&f, &[rat(0), rat(0)], 24).unwrap();
        assert_eq!(r.multiplicity, 6);
        assert_eq!(r.profile, vec![1, 3, 5, 6, 6]);
        let g = system(vec![poly(2, &[(&[1, 0], 1), (&[0, 2], 1)]), poly(2, &[(&[0, 3], 1)])]);
        assert_eq!(multiplicity_dz(&g, &[rat(0), rat(0)], 24).unwrap(), 3);
    }

    #[test]
    fn cap_is_reported() {
        // x^2 and x y share the line x = 0, so the origin is not isolated.
        let f = system(vec![poly(2, &[(&[2, 0], 1)]), poly(2, &[(&[1, 1], 1)])]);
        assert_eq!(multiplicity_dz(&f, &[rat(0), rat(0)], 6).unwrap_err(), Error::NoStabilization { k_max: 6 });
    }

    #[test]
    fn profile_matches_single_matrices() {
        let f = system(vec![
            poly(2, &[(&[2, 0], 3), (&[1, 1], -2), (&[0, 3], 5)]),
            poly(2, &[(&[1, 1], 7), (&[0, 2], 1), (&[3, 0], -1)]),
        ]);
        let z = [rat(0), rat(0)];
        let profile = nullity_profile(&f, &z, 6).unwrap();
        for (k, &v) in profile.iter().enumerate() {
            assert_eq!(nullity(&build_s_k(&f, &z, k).unwrap()), v, "k = {k}");
        }
    }

    #[test]
    fn draws_are_nonzero_and_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws: Vec<i64> = (0..2000).map(|_| draw_nonzero(&mut rng, 2)).collect();
        assert!(draws.iter().all(|&v| v != 0 && (-2..=2).contains(&v)));
        for v in [-2, -1, 1, 2] {
            assert!(draws.contains(&v));
        }
    }
}
