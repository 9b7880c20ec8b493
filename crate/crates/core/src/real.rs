//! Binary floating point at a configurable precision, used for the series
//! evaluations. Thin wrapper over `astro_float` that adds exact conversions
//! to and from [`BigRat`] and a deterministic decimal rendering.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::rational::rational_power;
use crate::algebra::BigRat;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_BITS: usize = 256;
pub const MIN_PRECISION_BITS: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

/// A high-precision real value.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.abs())
    }

    /// Exact value of the binary float.
    pub fn to_rational(&self) -> BigRat {
        let Some((words, _bits, sign, exp, _)) = self.0.as_raw_parts() else {
            panic!("non-finite real");
        };
        if self.0.is_zero() {
            return BigRat::zero();
        }
        let mut mantissa = BigInt::from_slice(
            num_bigint::Sign::Plus,
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        if sign == Sign::Neg {
            mantissa = -mantissa;
        }
        let shift = exp as i64 - 64 * words.len() as i64;
        let two = BigInt::from(2);
        if shift >= 0 {
            BigRat::from_integer(mantissa * num_traits::pow(two, shift as usize))
        } else {
            BigRat::new(mantissa, num_traits::pow(two, (-shift) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Scientific notation with `digits` significant digits, e.g.
    /// `-4.000e-01`. Rounds half to even on the exact binary value.
    pub fn to_sci(&self, digits: usize) -> String {
        format_sci(&self.to_rational(), digits)
    }

    pub fn partial_cmp_real(&self, other: &Real) -> Ordering {
        match self.0.cmp(&other.0) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn le(&self, other: &Real) -> bool {
        self.partial_cmp_real(other) != Ordering::Greater
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

/// Number of decimal digits resolved by a binary precision.
pub fn decimal_digits(precision_bits: usize) -> usize {
    ((precision_bits as f64) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn format_sci(value: &BigRat, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return format!("{}e+00", pad_mantissa("0".repeat(digits)));
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let a = value.abs();
    let ten = BigInt::from(10);
    let pow10 = |k: i64| -> BigRat {
        let p = BigRat::from_integer(num_traits::pow(ten.clone(), k.unsigned_abs() as usize));
        if k >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let est = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut k = est.floor() as i64;
    while a >= pow10(k + 1) {
        k += 1;
    }
    while a < pow10(k) {
        k -= 1;
    }
    let scaled = &a * pow10(digits as i64 - 1 - k);
    let mut m = round_half_even(&scaled);
    if m == num_traits::pow(ten.clone(), digits) {
        m /= &ten;
        k += 1;
    }
    let exp_sign = if k < 0 { '-' } else { '+' };
    format!("{sign}{}e{exp_sign}{:02}", pad_mantissa(m.to_string()), k.abs())
}

fn pad_mantissa(s: String) -> String {
    if s.len() == 1 {
        s
    } else {
        format!("{}.{}", &s[..1], &s[1..])
    }
}

fn round_half_even(x: &BigRat) -> BigInt {
    let fl = x.floor();
    let frac = x - &fl;
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    let base = fl.to_integer();
    match frac.cmp(&half) {
        Ordering::Less => base,
        Ordering::Greater => base + 1,
        Ordering::Equal => {
            if (&base % 2u32).is_zero() {
                base
            } else {
                base + 1
            }
        }
    }
}

/// Arithmetic context: working precision plus the constant cache needed by
/// transcendental functions. Not shared between threads; create one per
/// evaluation.
pub struct RealCtx {
    prec: usize,
    consts: Consts,
}

impl RealCtx {
    pub fn new(precision_bits: usize) -> Result<Self> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(Error::Usage(format!(
                "precision must be at least {MIN_PRECISION_BITS} bits, got {precision_bits}"
            )));
        }
        let consts = Consts::new().map_err(|e| Error::Domain(format!("{e:?}")))?;
        Ok(RealCtx { prec: precision_bits, consts })
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn zero(&self) -> Real {
        Real(BigFloat::from_word(0, self.prec))
    }

    pub fn one(&self) -> Real {
        Real(BigFloat::from_word(1, self.prec))
    }

    pub fn from_u64(&self, v: u64) -> Real {
        Real(BigFloat::from_u64(v, self.prec))
    }

    /// Exact conversion.
    pub fn from_bigint(&self, v: &BigInt) -> Real {
        if v.is_zero() {
            return self.zero();
        }
        let words: Vec<u64> = v.magnitude().iter_u64_digits().collect();
        let sign = if v.is_negative() { Sign::Neg } else { Sign::Pos };
        Real(BigFloat::from_words(&words, sign, 64 * words.len() as i32))
    }

    /// Correctly rounded to the working precision.
    pub fn from_rat(&self, v: &BigRat) -> Real {
        let n = self.from_bigint(v.numer());
        if v.denom().is_one() {
            return Real(n.0.add(&BigFloat::from_word(0, self.prec), self.prec, RM));
        }
        let d = self.from_bigint(v.denom());
        Real(n.0.div(&d.0, self.prec, RM))
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        Real(a.0.add(&b.0, self.prec, RM))
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        Real(a.0.sub(&b.0, self.prec, RM))
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        Real(a.0.mul(&b.0, self.prec, RM))
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        Real(a.0.div(&b.0, self.prec, RM))
    }

    pub fn neg(&self, a: &Real) -> Real {
        Real(a.0.neg())
    }

    pub fn ln(&mut self, a: &Real) -> Real {
        Real(a.0.ln(self.prec, RM, &mut self.consts))
    }

    pub fn exp(&mut self, a: &Real) -> Real {
        Real(a.0.exp(self.prec, RM, &mut self.consts))
    }

    pub fn powi(&self, base: &Real, e: usize) -> Real {
        if e == 0 {
            return self.one();
        }
        Real(base.0.powi(e, self.prec, RM))
    }

    /// `base^e` for a positive base and rational exponent. Integer exponents
    /// use repeated multiplication.
    pub fn pow_rat(&mut self, base: &Real, e: &BigRat) -> Real {
        if e.is_integer() {
            if let Some(k) = e.numer().to_i64() {
                let mag = self.powi(base, k.unsigned_abs() as usize);
                return if k < 0 { self.div(&self.one(), &mag) } else { mag };
            }
        }
        let l = self.ln(base);
        let t = self.mul(&l, &self.from_rat(e));
        self.exp(&t)
    }

    /// `q0^e` for rational `q0 > 0`; exact (then rounded once) whenever the
    /// power is itself rational.
    pub fn rat_pow(&mut self, q0: &BigRat, e: &BigRat) -> Real {
        match rational_power(q0, e) {
            Some(v) => self.from_rat(&v),
            None => {
                let b = self.from_rat(q0);
                self.pow_rat(&b, e)
            }
        }
    }

    pub fn max(&self, a: &Real, b: &Real) -> Real {
        if a.le(b) {
            b.clone()
        } else {
            a.clone()
        }
    }
}
