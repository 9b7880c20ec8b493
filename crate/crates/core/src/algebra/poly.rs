use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::rational::{lcm_of_denominators, BigRat};
use super::zpoly::ZPoly;

/// Dense polynomial in `q` over the rationals, coefficients ascending.
///
/// The trailing coefficient is nonzero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: Vec<BigRat>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    /// `c · q^power`.
    pub fn monomial(c: BigRat, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRat::zero(); power + 1];
        v[power] = c;
        PolyQ { coeffs: v }
    }

    /// `q^power`.
    pub fn q_pow(power: usize) -> Self {
        Self::monomial(BigRat::one(), power)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        PolyQ { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, e: usize) -> Self {
        let (c, z) = self.to_z();
        Self::from_z(&num_traits::pow(c, e), &z.pow(e))
    }

    pub fn eval(&self, q: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * q + c)
    }

    /// `q ↦ q^a`.
    pub fn subst_power(&self, a: usize) -> Self {
        assert!(a >= 1, "substitution power must be positive");
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut v = vec![BigRat::zero(); deg * a + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * a] = c.clone();
        }
        PolyQ { coeffs: v }
    }

    /// Splits `self = scale · primitive` with `primitive` in `Z[q]`, primitive,
    /// positive leading coefficient.
    pub(crate) fn to_z(&self) -> (BigRat, ZPoly) {
        if self.is_zero() {
            return (BigRat::zero(), ZPoly::zero());
        }
        let l = lcm_of_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let (unit, prim) = ZPoly::from_coeffs(ints).primitive();
        (BigRat::new(unit, l), prim)
    }

    pub(crate) fn from_z(scale: &BigRat, z: &ZPoly) -> Self {
        if scale.is_zero() {
            return Self::zero();
        }
        PolyQ {
            coeffs: z
                .coeffs()
                .iter()
                .map(|c| scale * BigRat::from_integer(c.clone()))
                .collect(),
        }
    }

    /// Ascending coefficients rendered as `"p/q"` strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        PolyQ::new(v)
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        self + &(-rhs)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        let (ca, za) = self.to_z();
        let (cb, zb) = rhs.to_z();
        PolyQ::from_z(&(ca * cb), &za.mul(&zb))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeff_strings().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn trims_and_reports_degree() {
        assert_eq!(PolyQ::from_ints(&[0, 0]).degree(), None);
        assert_eq!(PolyQ::from_ints(&[1, 2, 0]).degree(), Some(1));
        assert!(PolyQ::from_ints(&[]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = PolyQ::from_ints(&[1, 1]);
        let b = PolyQ::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, PolyQ::from_ints(&[-1, 0, 1]));
        assert_eq!(&a + &b, PolyQ::from_ints(&[0, 2]));
        assert_eq!(&a - &a, PolyQ::zero());
        let half = PolyQ::new(vec![rat(1, 2), rat(-2, 3)]);
        assert_eq!(&half * &half, PolyQ::new(vec![rat(1, 4), rat(-2, 3), rat(4, 9)]));
        assert_eq!(a.pow(3), PolyQ::from_ints(&[1, 3, 3, 1]));
    }

    #[test]
    fn primitive_split_round_trips() {
        let p = PolyQ::new(vec![rat(-3, 4), rat(0, 1), rat(-9, 2)]);
        let (c, z) = p.to_z();
        assert!(z.lc().unwrap() > &BigInt::zero());
        assert_eq!(PolyQ::from_z(&c, &z), p);
    }

    #[test]
    fn substitution_and_eval() {
        let p = PolyQ::from_ints(&[1, 1]);
        assert_eq!(p.subst_power(3), PolyQ::from_ints(&[1, 0, 0, 1]));
        assert_eq!(p.eval(&rat(1, 2)), rat(3, 2));
    }

    #[test]
    fn display() {
        assert_eq!(PolyQ::from_ints(&[0, -1, 0, 2]).to_string(), "-q + 2*q^3");
        assert_eq!(PolyQ::zero().to_string(), "0");
    }
}
