//! Helpers around [`BigRat`]: parsing, exact rational powers, and small
//! conversions shared by the rest of the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar. Always stored reduced with a
/// positive denominator; zero is `0/1`.
pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Parses `p/q`, a plain integer, a decimal (`0.3`) or scientific notation
/// (`1e-30`, `2.5E3`). The result is exact.
pub fn parse_rat(text: &str) -> Result<BigRat> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rat(n)?;
        let d = parse_rat(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{whole}{frac}");
    let mut value = BigRat::from_integer(joined.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exponent - frac.len() as i64;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= BigRat::from_integer(scale);
    } else {
        value /= BigRat::from_integer(scale);
    }
    Ok(if negative { -value } else { value })
}

/// Exact `base^exponent` for a rational exponent, when the result is rational.
///
/// Returns `None` when the root does not exist in the rationals (or for a
/// negative base under an even root).
pub fn rational_power(base: &BigRat, exponent: &BigRat) -> Option<BigRat> {
    let p = exponent.numer();
    let r = exponent.denom().to_u32()?;
    if base.is_zero() {
        return if p.is_positive() {
            Some(BigRat::zero())
        } else if p.is_zero() {
            Some(BigRat::one())
        } else {
            None
        };
    }
    let root = if r == 1 {
        base.clone()
    } else {
        if base.is_negative() && r % 2 == 0 {
            return None;
        }
        let n = exact_root(base.numer(), r)?;
        let d = exact_root(base.denom(), r)?;
        BigRat::new(n, d)
    };
    let e = p.to_i32()?;
    Some(pow_i(&root, e))
}

fn exact_root(value: &BigInt, r: u32) -> Option<BigInt> {
    let root = value.nth_root(r);
    (num_traits::pow(root.clone(), r as usize) == *value).then_some(root)
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow_i(base: &BigRat, e: i32) -> BigRat {
    let mag = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
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

/// `true` when `value` lies strictly between 0 and 1.
pub fn in_unit_interval(value: &BigRat) -> bool {
    value.is_positive() && value < &BigRat::one()
}

pub(crate) fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a BigRat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
