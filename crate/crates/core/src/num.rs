//! Exact scalars.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A point with rational coordinates.
pub type RPoint = Vec<Rational>;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `"p/q"` string. Integers are written with denominator `1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Returns the value as `u64` if it is a nonnegative integer that fits.
pub fn as_u64(r: &Rational) -> Option<u64> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_u64()
    } else {
        None
    }
}

pub(crate) fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        if !v.denom().is_one() {
            l = l.lcm(v.denom());
        }
    }
    l
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Divides every entry by the gcd of all entries; zero vectors are unchanged.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}
