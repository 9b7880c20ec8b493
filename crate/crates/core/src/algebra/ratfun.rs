use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::poly::PolyQ;
use super::rational::BigRat;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Reduced rational function in `q` over the rationals.
///
/// Stored as `scale · num / den` with `num` and `den` primitive integer
/// polynomials, both with positive leading coefficient and coprime. Zero is
/// `0 · 0 / 1`. This is a unique representation, so derived equality is
/// equality in `Q(q)`. [`RatQ::num`] and [`RatQ::den`] expose the usual
/// monic-denominator form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatQ {
    scale: BigRat,
    num: ZPoly,
    den: ZPoly,
}

/// Field operation selector for [`RatQ::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatQ {
    pub fn zero() -> Self {
        RatQ { scale: BigRat::zero(), num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatQ { scale: c, num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRat::from_integer(c.into()))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::constant(BigRat::from_integer(c))
    }

    pub fn from_poly(p: &PolyQ) -> Self {
        let (scale, num) = p.to_z();
        if scale.is_zero() {
            return Self::zero();
        }
        RatQ { scale, num, den: ZPoly::one() }
    }

    /// `q^power`.
    pub fn q_pow(power: usize) -> Self {
        RatQ {
            scale: BigRat::one(),
            num: ZPoly::monomial(BigInt::one(), power),
            den: ZPoly::one(),
        }
    }

    /// Canonical form of `num / den`.
    pub fn new(num: &PolyQ, den: &PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomialDivision);
        }
        let (sn, zn) = num.to_z();
        let (sd, zd) = den.to_z();
        Ok(Self::reduce(sn / sd, &zn, &zd))
    }

    /// Reduces `scale · n / d` with `n`, `d` arbitrary (d nonzero).
    fn reduce(scale: BigRat, n: &ZPoly, d: &ZPoly) -> Self {
        if scale.is_zero() || n.is_zero() {
            return Self::zero();
        }
        let (cn, pn) = n.primitive();
        let (cd, pd) = d.primitive();
        let g = pn.gcd(&pd);
        let (num, den) = if g.is_one() {
            (pn, pd)
        } else {
            (pn.div_exact(&g).unwrap(), pd.div_exact(&g).unwrap())
        };
        RatQ { scale: scale * BigRat::new(cn, cd), num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// `true` when the denominator is constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn den_lc(&self) -> BigRat {
        BigRat::from_integer(self.den.lc().cloned().unwrap_or_else(BigInt::one))
    }

    /// Numerator of the monic-denominator form.
    pub fn num(&self) -> PolyQ {
        PolyQ::from_z(&(&self.scale / self.den_lc()), &self.num)
    }

    /// Monic denominator.
    pub fn den(&self) -> PolyQ {
        PolyQ::from_z(&self.den_lc().recip(), &self.den)
    }

    pub fn arith(&self, other: &Self, op: FieldOp) -> Result<Self> {
        Ok(match op {
            FieldOp::Add => self + other,
            FieldOp::Sub => self - other,
            FieldOp::Mul => self * other,
            FieldOp::Div => self.checked_div(other)?,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::RatQDivisionByZero);
        }
        Ok(RatQ { scale: self.scale.recip(), num: self.den.clone(), den: self.num.clone() })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: usize) -> Self {
        if e == 0 {
            return Self::one();
        }
        // Powers of coprime primitive polynomials stay coprime and primitive.
        RatQ {
            scale: num_traits::pow(self.scale.clone(), e),
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale_by(&self, k: &BigRat) -> Self {
        if k.is_zero() || self.is_zero() {
            return Self::zero();
        }
        RatQ { scale: &self.scale * k, num: self.num.clone(), den: self.den.clone() }
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.clone()));
        }
        Ok(&self.scale * self.num.eval(q0) / d)
    }

    /// `q ↦ q^a`. Coprimality survives the substitution, so no gcd is needed.
    pub fn subst_power(&self, a: usize) -> Self {
        assert!(a >= 1, "substitution power must be positive");
        RatQ {
            scale: self.scale.clone(),
            num: self.num.subst_power(a),
            den: self.den.subst_power(a),
        }
    }

    /// Coefficient-list rendering `"[n0, n1, ...] / [d0, d1, ...]"` of the
    /// monic-denominator form.
    pub fn to_coeff_string(&self) -> String {
        format!(
            "[{}] / [{}]",
            self.num().coeff_strings().join(", "),
            self.den().coeff_strings().join(", ")
        )
    }
}

impl Add for &RatQ {
    type Output = RatQ;
    fn add(self, rhs: &RatQ) -> RatQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Henrici: with g = gcd(da, db) only gcd(numerator, g) can be
        // nontrivial.
        let (g, da_red, db_red) = if self.den == rhs.den {
            (self.den.clone(), ZPoly::one(), ZPoly::one())
        } else {
            let g = self.den.gcd(&rhs.den);
            if g.is_one() {
                (g, self.den.clone(), rhs.den.clone())
            } else {
                let da = self.den.div_exact(&g).unwrap();
                let db = rhs.den.div_exact(&g).unwrap();
                (g, da, db)
            }
        };
        let l = self.scale.denom().lcm(rhs.scale.denom());
        let ka = self.scale.numer() * (&l / self.scale.denom());
        let kb = rhs.scale.numer() * (&l / rhs.scale.denom());
        let t = self
            .num
            .mul(&db_red)
            .scale(&ka)
            .add(&rhs.num.mul(&da_red).scale(&kb));
        if t.is_zero() {
            return RatQ::zero();
        }
        let (ct, pt) = t.primitive();
        let h = if g.is_one() { g.clone() } else { pt.gcd(&g) };
        let (num, den) = if h.is_one() {
            (pt, g.mul(&da_red).mul(&db_red))
        } else {
            let g_red = g.div_exact(&h).unwrap();
            (pt.div_exact(&h).unwrap(), g_red.mul(&da_red).mul(&db_red))
        };
        RatQ { scale: BigRat::new(ct, l), num, den }
    }
}

impl Neg for &RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        RatQ { scale: -&self.scale, num: self.num.clone(), den: self.den.clone() }
    }
}

impl Sub for &RatQ {
    type Output = RatQ;
    fn sub(self, rhs: &RatQ) -> RatQ {
        self + &(-rhs)
    }
}

impl Mul for &RatQ {
    type Output = RatQ;
    fn mul(self, rhs: &RatQ) -> RatQ {
        if self.is_zero() || rhs.is_zero() {
            return RatQ::zero();
        }
        let cancel = |n: &ZPoly, d: &ZPoly| -> (ZPoly, ZPoly) {
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (na, db) = cancel(&self.num, &rhs.den);
        let (nb, da) = cancel(&rhs.num, &self.den);
        RatQ {
            scale: &self.scale * &rhs.scale,
            num: na.mul(&nb),
            den: da.mul(&db),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatQ {
            type Output = RatQ;
            fn $m(self, rhs: RatQ) -> RatQ {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatQ> for RatQ {
            type Output = RatQ;
            fn $m(self, rhs: &RatQ) -> RatQ {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        -&self
    }
}

impl From<PolyQ> for RatQ {
    fn from(p: PolyQ) -> Self {
        RatQ::from_poly(&p)
    }
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num();
        let den = self.den();
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / ({den})")
        }
    }
}

impl Serialize for RatQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RatQ", 2)?;
        s.serialize_field("num", &self.num())?;
        s.serialize_field("den", &self.den())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    fn r(n: &[i64], d: &[i64]) -> RatQ {
        RatQ::new(&p(n), &p(d)).unwrap()
    }

    #[test]
    fn make_cancels_common_factor() {
        let x = r(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(x.num(), p(&[1, 1]));
        assert_eq!(x.den(), p(&[1]));
    }

    #[test]
    fn make_normalizes_zero() {
        let x = r(&[0], &[1, 1]);
        assert!(x.is_zero());
        assert_eq!(x.num(), PolyQ::zero());
        assert_eq!(x.den(), p(&[1]));
    }

    #[test]
    fn make_reduces_content_and_makes_den_monic() {
        let x = r(&[0, 2], &[2, 2]);
        assert_eq!(x.num(), p(&[0, 1]));
        assert_eq!(x.den(), p(&[1, 1]));
        let y = r(&[3], &[0, -6]);
        assert_eq!(y.num(), PolyQ::constant(rat(-1, 2)));
        assert_eq!(y.den(), p(&[0, 1]));
    }

    #[test]
    fn make_rejects_zero_denominator() {
        let err = RatQ::new(&p(&[1]), &PolyQ::zero()).unwrap_err();
        assert_eq!(err.to_string(), "division by zero polynomial");
    }

    #[test]
    fn field_examples() {
        let a = r(&[1], &[1, 1]);
        let b = r(&[0, 1], &[1, 1]);
        assert_eq!(&a + &b, RatQ::one());
        assert!((&a * &RatQ::zero()).is_zero());
        let s = r(&[1, 1], &[1]);
        assert_eq!(s.arith(&s, FieldOp::Div).unwrap(), RatQ::one());
        assert!(s.arith(&RatQ::zero(), FieldOp::Div).is_err());
        assert_eq!(s.arith(&s, FieldOp::Sub).unwrap(), RatQ::zero());
    }

    #[test]
    fn addition_with_partially_shared_denominators() {
        // 1/((1+q)(1-q)) + 1/((1+q)(2+q)) = (3)/((1+q)(1-q)(2+q)) * (1+q)/(1+q)...
        let a = r(&[1], &[1, 0, -1]);
        let b = r(&[1], &[2, 3, 1]);
        let sum = &a + &b;
        // Verify by evaluation at a few points.
        for q0 in [rat(1, 3), rat(5, 7), int(3)] {
            assert_eq!(
                sum.eval(&q0).unwrap(),
                a.eval(&q0).unwrap() + b.eval(&q0).unwrap()
            );
        }
        // 1/(1-q^2) + 1/((1+q)(2+q)) = 3 / ((1-q)(1+q)(2+q))
        assert_eq!(sum, r(&[3], &[2, 1, -2, -1]));
    }

    #[test]
    fn evaluation() {
        assert_eq!(r(&[0, 1], &[1, 0, 1]).eval(&int(1)).unwrap(), rat(1, 2));
        assert_eq!(r(&[1, 1], &[1]).eval(&rat(1, 2)).unwrap(), rat(3, 2));
        let err = r(&[1], &[-1, 1]).eval(&int(1)).unwrap_err();
        assert!(err.to_string().contains("q = 1"), "{err}");
    }

    #[test]
    fn power_substitution() {
        assert_eq!(r(&[1, 1], &[1]).subst_power(3), r(&[1, 0, 0, 1], &[1]));
        assert_eq!(
            r(&[0, 1], &[1, 0, 1]).subst_power(2),
            r(&[0, 0, 1], &[1, 0, 0, 0, 1])
        );
        let x = r(&[2, -1, 3], &[1, 5, 0, 2]);
        assert_eq!(x.subst_power(1), x);
    }

    #[test]
    fn coefficient_rendering() {
        let e1 = r(&[0, -1], &[1, 0, 1]);
        assert_eq!(e1.to_coeff_string(), "[0, -1] / [1, 0, 1]");
        assert_eq!(e1.to_string(), "(-q) / (1 + q^2)");
    }
}
