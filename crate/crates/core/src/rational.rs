//! Exact rational helpers.
//!
//! Arbitrary-precision rationals come from `num-rational`; `BigRational` is
//! always kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Formats as `"num/den"`, including a `/1` denominator for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a bare integer. The result is reduced.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in `{text}`")))?;
    let denom: BigInt = denom
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in `{text}`")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(numer, denom))
}

fn exact_isqrt(value: &BigInt) -> Option<BigInt> {
    if value.is_negative() {
        return None;
    }
    let root = value.sqrt();
    (&root * &root == *value).then_some(root)
}

/// Returns `r` with `r >= 0` and `r * r == q` when `q` is a perfect rational square.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let numer = exact_isqrt(q.numer())?;
    let denom = exact_isqrt(q.denom())?;
    Some(Rational::new(numer, denom))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn is_one(q: &Rational) -> bool {
    q.is_one()
}
