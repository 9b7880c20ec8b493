use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::poly::PolyQ;
use super::ratfun::RatQ;

/// One of the two Laurent variables `X = q^x`, `Y = q^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Ring operation selector for [`LaurentXY::arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    ScaleBy(RatQ),
}

/// Sparse Laurent polynomial in `X`, `Y` with coefficients in `Q(q)`.
///
/// Keys are `(exponent of X, exponent of Y)`; zero coefficients are never
/// stored, so the zero element is the empty map and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentXY {
    terms: BTreeMap<(i64, i64), RatQ>,
}

impl LaurentXY {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RatQ::one())
    }

    pub fn constant(c: RatQ) -> Self {
        Self::term(0, 0, c)
    }

    /// `c · X^ex · Y^ey`.
    pub fn term(ex: i64, ey: i64, c: RatQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ex, ey), c);
        }
        LaurentXY { terms }
    }

    /// `X^ex · Y^ey`.
    pub fn monomial(ex: i64, ey: i64) -> Self {
        Self::term(ex, ey, RatQ::one())
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::monomial(1, 0),
            Var::Y => Self::monomial(0, 1),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), RatQ)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, ex: i64, ey: i64) -> Option<&RatQ> {
        self.terms.get(&(ex, ey))
    }

    /// Terms in ascending `(e_X, e_Y)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &RatQ)> {
        self.terms.iter()
    }

    /// The scalar when this is a constant (including zero).
    pub fn as_constant(&self) -> Option<RatQ> {
        match self.terms.len() {
            0 => Some(RatQ::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Accumulates `c · X^k.0 · Y^k.1`, pruning a coefficient that cancels.
    pub fn add_term(&mut self, key: (i64, i64), c: RatQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = &*slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn arith(&self, other: &Self, op: RingOp) -> Self {
        match op {
            RingOp::Add => self + other,
            RingOp::Sub => self - other,
            RingOp::Mul => self * other,
            RingOp::ScaleBy(c) => self.scale(&c),
        }
    }

    pub fn scale(&self, c: &RatQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentXY {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &PolyQ) -> Self {
        self.scale(&RatQ::from_poly(p))
    }

    /// Multiplies by `X^ex · Y^ey`.
    pub fn shift(&self, ex: i64, ey: i64) -> Self {
        LaurentXY {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + ex, b + ey), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies the exponent of `var` by `k` in every term (`X ↦ X^k`).
    pub fn subst_var(&self, var: Var, k: i64) -> Self {
        assert!(k != 0, "variable substitution exponent must be nonzero");
        LaurentXY {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| {
                    let key = match var {
                        Var::X => (a * k, b),
                        Var::Y => (a, b * k),
                    };
                    (key, v.clone())
                })
                .collect(),
        }
    }

    /// Sets `var = 1` (the specialization `x = 0` or `y = 0`).
    pub fn specialize_one(&self, var: Var) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), v)| {
            let key = match var {
                Var::X => (0, b),
                Var::Y => (a, 0),
            };
            (key, v.clone())
        }))
    }

    /// Applies `q ↦ q^a` to every coefficient.
    pub fn subst_q_power(&self, a: usize) -> Self {
        LaurentXY {
            terms: self.terms.iter().map(|(k, v)| (*k, v.subst_power(a))).collect(),
        }
    }
}

impl Add for &LaurentXY {
    type Output = LaurentXY;
    fn add(self, rhs: &LaurentXY) -> LaurentXY {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &LaurentXY {
    type Output = LaurentXY;
    fn sub(self, rhs: &LaurentXY) -> LaurentXY {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v);
        }
        out
    }
}

impl Neg for &LaurentXY {
    type Output = LaurentXY;
    fn neg(self) -> LaurentXY {
        LaurentXY {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Mul for &LaurentXY {
    type Output = LaurentXY;
    fn mul(self, rhs: &LaurentXY) -> LaurentXY {
        let mut out = LaurentXY::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentXY {
            type Output = LaurentXY;
            fn $m(self, rhs: LaurentXY) -> LaurentXY {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for LaurentXY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            match a {
                0 => {}
                1 => write!(f, "·X")?,
                _ => write!(f, "·X^{a}")?,
            }
            match b {
                0 => {}
                1 => write!(f, "·Y")?,
                _ => write!(f, "·Y^{b}")?,
            }
        }
        Ok(())
    }
}

/// Serializes as a sorted list of `[e_X, e_Y, num-coeffs, den-coeffs]`.
impl Serialize for LaurentXY {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&(a, b), c) in &self.terms {
            seq.serialize_element(&(a, b, c.num(), c.den()))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentXY {
        LaurentXY::var(Var::X)
    }
    fn y() -> LaurentXY {
        LaurentXY::var(Var::Y)
    }

    #[test]
    fn laurent_cancellation() {
        let xinv = LaurentXY::monomial(-1, 0);
        assert_eq!(&x() * &xinv, LaurentXY::one());
    }

    #[test]
    fn commutativity_prunes_to_zero() {
        let d = &(&x() + &y()) - &(&y() + &x());
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
    }

    #[test]
    fn scaling_by_two_bracket() {
        let two_q = RatQ::from_poly(&PolyQ::from_ints(&[1, 1]));
        let s = x().arith(&LaurentXY::zero(), RingOp::ScaleBy(two_q.clone()));
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(1, 0), Some(&two_q));
        assert!(x().scale(&RatQ::zero()).is_zero());
    }

    #[test]
    fn variable_substitution() {
        assert_eq!(x().pow(2).subst_var(Var::X, 3), LaurentXY::monomial(6, 0));
        let xy = LaurentXY::monomial(1, 1);
        assert_eq!(xy.subst_var(Var::Y, -1), LaurentXY::monomial(1, -1));
        let p = &(&x() + &y().pow(3)) + &LaurentXY::from_int_const(2);
        assert_eq!(p.subst_var(Var::X, 1), p);
    }

    #[test]
    fn specialization_merges_terms() {
        // (X - 1) at X = 1 is zero.
        let p = &x() - &LaurentXY::one();
        assert!(p.specialize_one(Var::X).is_zero());
        let q = &x() + &LaurentXY::monomial(2, 1);
        assert_eq!(q.specialize_one(Var::X), &LaurentXY::one() + &y());
    }

    impl LaurentXY {
        fn from_int_const(c: i64) -> Self {
            LaurentXY::constant(RatQ::from_int(c))
        }
    }
}
