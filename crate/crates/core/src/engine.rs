//! Multiplicities and zero counts of generic systems with given supports.
//!
//! The multiplicity of the origin is obtained from mixed volumes of augmented
//! families, with the axis-augmented variants and the mixed-integral formula as
//! independent cross-checks. A zero in the coordinate stratum `O_I` inherits the
//! multiplicity of the origin for the projected family `B^I`, and the number of
//! such zeros is the mixed volume of the supports surviving on that stratum.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::envelope::{axis_simplex, lower_envelope, mixed_integral_prime, restrict, PLFunction};
use crate::error::{Error, Result};
use crate::mixed::{mixed_volume, stable_mixed_volume};
use crate::num::{as_u64, Rational};
use crate::polytope::Polytope;
use crate::support::{
    augment_full, augment_refined, describe_stratum, enumerate_strata, format_subset, require,
    StratumDescriptor, SupportFamily,
};

/// Independent ways of computing the multiplicity of the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    /// `MV(A^0) - MV(A)`, only when every support meets every axis.
    MvAxes,
    /// Mixed volumes after adjoining `M e_i` where an axis is missing.
    MvRefined,
    /// Mixed volumes after adjoining every `M e_i`.
    MvFull,
    /// Mixed integral of restricted lower envelopes.
    MixedIntegral,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::MvAxes, Route::MvRefined, Route::MvFull, Route::MixedIntegral];

    pub fn name(self) -> &'static str {
        match self {
            Route::MvAxes => "mv_axes",
            Route::MvRefined => "mv_refined",
            Route::MvFull => "mv_full",
            Route::MixedIntegral => "mixed_integral",
        }
    }

    pub fn from_name(s: &str) -> Option<Route> {
        Route::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The multiplicity of the origin with every route that was evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mult0 {
    pub value: u64,
    /// The augmentation parameter actually used.
    pub m: u64,
    pub routes: BTreeMap<Route, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub stratum: StratumDescriptor,
    /// Number of isolated zeros of a generic system in `O_I`.
    pub count: u64,
    /// Multiplicity shared by each of those zeros.
    pub multiplicity: u64,
    pub routes: BTreeMap<Route, u64>,
    /// Augmentation parameter for the projected family; `None` on the torus.
    pub m: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub strata: Vec<MultiplicityReport>,
    pub torus_count: u64,
    pub total_with_multiplicity: u64,
    pub sm: u64,
    pub mv_a0: u64,
}

fn mv_gap(with_zero: &SupportFamily, without: &SupportFamily) -> Result<u64> {
    let hi = mixed_volume(with_zero.supports())?;
    let lo = mixed_volume(without.supports())?;
    hi.checked_sub(lo)
        .ok_or_else(|| Error::InvariantBreach(alloc::format!("MV(A^0) = {hi} < MV(A) = {lo}")))
}

fn positive(v: u64, what: &str) -> Result<u64> {
    if v == 0 {
        return Err(Error::InvariantBreach(alloc::format!("{what} is 0 at a common zero")));
    }
    Ok(v)
}

/// `MV_n(A^0) - MV_n(A)`; requires H1 and H3.
pub fn mult0_axes(a: &SupportFamily) -> Result<u64> {
    require(a, true, false, true)?;
    positive(mv_gap(&a.with_origins(), a)?, "MV(A^0) - MV(A)")
}

/// `MV_n(A^0) - MV_n(A) + 1`, a safe augmentation parameter; requires H1 and H2.
pub fn default_m(a: &SupportFamily) -> Result<u64> {
    require(a, true, true, false)?;
    Ok(mv_gap(&a.with_origins(), a)? + 1)
}

fn agree(routes: &BTreeMap<Route, u64>) -> Result<u64> {
    let mut it = routes.iter();
    let (_, &first) = it.next().expect("at least one route");
    for (_, &v) in it {
        if v != first {
            return Err(Error::RouteDisagreement {
                what: "mult0",
                left: Box::new(Rational::from_integer(first.into())),
                right: Box::new(Rational::from_integer(v.into())),
            });
        }
    }
    Ok(first)
}

/// Multiplicity of the origin from both augmentations (and the axis formula when it applies).
///
/// Requires H1 and H2. `m` defaults to [`default_m`]; a smaller value is accepted
/// but the routes are still required to agree.
pub fn mult0_routes(a: &SupportFamily, m: Option<u64>) -> Result<Mult0> {
    let report = require(a, true, true, false)?;
    let m = match m {
        Some(m) => m,
        None => default_m(a)?,
    };
    let mut routes = BTreeMap::new();
    if report.h3 {
        routes.insert(Route::MvAxes, mv_gap(&a.with_origins(), a)?);
    }
    let (refined, refined0) = augment_refined(a, m)?;
    routes.insert(Route::MvRefined, mv_gap(&refined0, &refined)?);
    let (full, full0) = augment_full(a, m)?;
    routes.insert(Route::MvFull, mv_gap(&full0, &full)?);
    let value = positive(agree(&routes)?, "mult0")?;
    Ok(Mult0 { value, m, routes })
}

/// Multiplicity of the origin of a generic system; see [`mult0_routes`].
pub fn mult0(a: &SupportFamily, m: Option<u64>) -> Result<u64> {
    mult0_routes(a, m).map(|r| r.value)
}

/// Restricted lower envelopes `rho_j` of `conv(A_j)` over the projected axis simplices.
///
/// The family must satisfy H3.
pub fn restricted_envelopes(a: &SupportFamily) -> Result<Vec<PLFunction>> {
    let n = a.n();
    a.supports()
        .iter()
        .map(|s| {
            let q = Polytope::from_points(s)?;
            let delta = axis_simplex(&q)?;
            let base: Vec<_> = delta.simplex.vertices().iter().map(|v| v[..n - 1].to_vec()).collect();
            restrict(&lower_envelope(&q)?, &Polytope::hull(n - 1, &base)?)
        })
        .collect()
}

/// Multiplicity of the origin as the mixed integral `MI'_n` of the restricted lower
/// envelopes of the refined augmentation. Requires H1 and H2.
pub fn mult0_mixed_integral(a: &SupportFamily, m: Option<u64>) -> Result<Rational> {
    require(a, true, true, false)?;
    let m = match m {
        Some(m) => m,
        None => default_m(a)?,
    };
    let (refined, _) = augment_refined(a, m)?;
    let rhos = restricted_envelopes(&refined)?;
    let refs: Vec<&PLFunction> = rhos.iter().collect();
    mixed_integral_prime(&refs)
}

fn integral_value(v: Rational) -> Result<u64> {
    as_u64(&v).ok_or(Error::NonIntegralMultiplicity(v))
}

/// Every route, including the mixed integral, required to agree.
pub fn mult0_all_routes(a: &SupportFamily, m: Option<u64>) -> Result<Mult0> {
    let mut r = mult0_routes(a, m)?;
    let mi = integral_value(mult0_mixed_integral(a, Some(r.m))?)?;
    r.routes.insert(Route::MixedIntegral, mi);
    r.value = agree(&r.routes)?;
    Ok(r)
}

fn valid_stratum(a: &SupportFamily, i: &[usize]) -> Result<StratumDescriptor> {
    let d = describe_stratum(a, i)?;
    if !d.is_valid() {
        return Err(Error::InvalidStratum(format_subset(i)));
    }
    Ok(d)
}

fn projected_family(d: &StratumDescriptor) -> Result<SupportFamily> {
    SupportFamily::new(d.projected.clone())
}

/// Multiplicity of each isolated zero of a generic system in `O_I`: the multiplicity
/// of the origin for `B^I`. Zeros in the torus (`I` empty) are simple.
pub fn stratum_multiplicity(a: &SupportFamily, i: &[usize]) -> Result<u64> {
    let d = valid_stratum(a, i)?;
    if d.i.is_empty() {
        return Ok(1);
    }
    mult0(&projected_family(&d)?, None)
}

/// Number of isolated zeros of a generic system in `O_I`, the mixed volume of the torus supports.
pub fn stratum_count(a: &SupportFamily, i: &[usize]) -> Result<u64> {
    let d = valid_stratum(a, i)?;
    mixed_volume(&d.torus_supports)
}

fn report_for(d: StratumDescriptor, with_integral: bool) -> Result<MultiplicityReport> {
    let count = mixed_volume(&d.torus_supports)?;
    if d.i.is_empty() {
        return Ok(MultiplicityReport { stratum: d, count, multiplicity: 1, routes: BTreeMap::new(), m: None });
    }
    let b = projected_family(&d)?;
    let r = if with_integral { mult0_all_routes(&b, None)? } else { mult0_routes(&b, None)? };
    Ok(MultiplicityReport { stratum: d, count, multiplicity: r.value, routes: r.routes, m: Some(r.m) })
}

/// Full report for one valid stratum.
pub fn stratum_report(a: &SupportFamily, i: &[usize], with_integral: bool) -> Result<MultiplicityReport> {
    report_for(valid_stratum(a, i)?, with_integral)
}

/// Counts and multiplicities on every valid stratum, with the totals they must reproduce.
pub fn census(a: &SupportFamily, with_integral: bool) -> Result<CensusReport> {
    let strata: Vec<MultiplicityReport> =
        enumerate_strata(a).into_iter().map(|d| report_for(d, with_integral)).collect::<Result<_>>()?;
    let total_with_multiplicity = strata.iter().map(|r| r.count * r.multiplicity).sum();
    Ok(CensusReport {
        strata,
        torus_count: mixed_volume(a.supports())?,
        total_with_multiplicity,
        sm: stable_mixed_volume(a.supports())?,
        mv_a0: mixed_volume(a.with_origins().supports())?,
    })
}
