//! Dense univariate polynomials over the integers.
//!
//! This is the arithmetic kernel behind [`RatQ`](super::RatQ): rational
//! functions are stored as a rational scale times a pair of primitive integer
//! polynomials, so every expensive operation (products, exact quotients, gcds)
//! runs over `Z[q]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp;
use super::rational::BigRat;

/// Coefficients in ascending order, no trailing zeros. The zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = ZPoly(coeffs);
        p.trim();
        p
    }

    pub fn monomial(coeff: BigInt, power: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); power + 1];
        v[power] = coeff;
        ZPoly(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Degree, with `0` for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.0.clone();
        for (o, s) in out.iter_mut().zip(&short.0) {
            *o += s;
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        ZPoly(self.0.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_scalar(&self, k: &BigInt) -> Self {
        if k.is_one() {
            return self.clone();
        }
        ZPoly(self.0.iter().map(|c| c / k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let bits_a = self.0.iter().map(|c| c.bits()).max().unwrap_or(0);
        let bits_b = other.0.iter().map(|c| c.bits()).max().unwrap_or(0);
        let terms = self.0.len().min(other.0.len()) as u64;
        let headroom = 64 - terms.leading_zeros() as u64;
        if bits_a + bits_b + headroom < 126 {
            return self.mul_small(other);
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Schoolbook product with `i128` accumulators; callers guarantee no
    /// overflow.
    fn mul_small(&self, other: &Self) -> Self {
        let to_i128 = |c: &BigInt| -> i128 { i128::try_from(c).expect("coefficient fits i128") };
        let a: Vec<i128> = self.0.iter().map(to_i128).collect();
        let b: Vec<i128> = other.0.iter().map(to_i128).collect();
        let mut out = vec![0i128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::from_coeffs(out.into_iter().map(BigInt::from).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits into `(unit, primitive part)` where the primitive part has a
    /// positive leading coefficient. The zero polynomial gives `(0, 0)`.
    pub fn primitive(&self) -> (BigInt, Self) {
        let Some(lc) = self.lc() else {
            return (BigInt::zero(), Self::zero());
        };
        let mut c = self.content();
        if lc.is_negative() {
            c = -c;
        }
        let p = self.div_scalar(&c);
        (c, p)
    }

    /// `q ↦ q^a`.
    pub fn subst_power(&self, a: usize) -> Self {
        assert!(a >= 1, "substitution power must be positive");
        if a == 1 || self.is_constant() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); self.degree() * a + 1];
        for (i, c) in self.0.iter().enumerate() {
            v[i * a] = c.clone();
        }
        ZPoly(v)
    }

    pub fn eval(&self, q: &BigRat) -> BigRat {
        if self.is_zero() {
            return BigRat::zero();
        }
        // Horner over a common denominator: acc = sum c_i n^i d^(deg - i).
        let (n, d) = (q.numer(), q.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        BigRat::new(acc, num_traits::pow(d.clone(), self.degree()))
    }

    /// Quotient when `divisor` divides `self` exactly in `Z[q]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        let dd = divisor.degree();
        if self.degree() < dd {
            return None;
        }
        let lc = divisor.lc().unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.0.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + i] -= &q * dc;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    fn reduce_mod(&self, p: u64) -> Vec<u64> {
        self.0.iter().map(|c| modp::reduce(c, p)).collect()
    }

    /// Primitive gcd with positive leading coefficient. Inputs need not be
    /// primitive; contents are ignored (this is the gcd up to units of
    /// `Q[q]`, normalized to `Z[q]`).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive().1;
        }
        if other.is_zero() {
            return self.primitive().1;
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        let f = self.primitive().1;
        let g = other.primitive().1;
        if f == g {
            return f;
        }
        gcd_modular(&f, &g)
    }
}

/// Brown-style modular gcd of two primitive polynomials of positive degree:
/// gcds over word-sized prime fields, combined by CRT until stable, then
/// certified by exact trial division.
fn gcd_modular(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let lc_f = f.lc().unwrap();
    let lc_g = g.lc().unwrap();
    let gamma = lc_f.gcd(lc_g);
    let max_deg = f.degree().min(g.degree());

    let mut modulus = BigInt::one();
    let mut candidate: Option<Vec<BigInt>> = None;
    let mut current_deg = usize::MAX;

    for &p in modp::primes() {
        if modp::reduce(lc_f, p) == 0 || modp::reduce(lc_g, p) == 0 {
            continue;
        }
        let gp = modp::gcd(f.reduce_mod(p), g.reduce_mod(p), p);
        let deg = gp.len() - 1;
        if deg == 0 {
            return ZPoly::one();
        }
        if deg > max_deg {
            continue;
        }
        let gamma_p = modp::reduce(&gamma, p);
        let image: Vec<u64> = gp.iter().map(|&c| modp::mul_mod(c, gamma_p, p)).collect();
        if deg > current_deg {
            continue;
        }
        if deg < current_deg {
            current_deg = deg;
            modulus = BigInt::from(p);
            candidate = Some(image.iter().map(|&c| symmetric(BigInt::from(c), &modulus)).collect());
            continue;
        }
        let coeffs = candidate.as_mut().unwrap();
        let m_inv = modp::inv_mod(modp::reduce(&modulus, p), p);
        let new_modulus = &modulus * p;
        let mut changed = false;
        for (c, &r) in coeffs.iter_mut().zip(&image) {
            let diff = modp::sub_mod(r, modp::reduce(c, p), p);
            if diff != 0 {
                changed = true;
                let t = modp::mul_mod(diff, m_inv, p);
                *c = symmetric(&*c + &modulus * t, &new_modulus);
            }
        }
        modulus = new_modulus;
        if !changed {
            let trial = ZPoly::from_coeffs(coeffs.clone()).primitive().1;
            if f.div_exact(&trial).is_some() && g.div_exact(&trial).is_some() {
                return trial;
            }
        }
    }
    unreachable!("modular gcd exhausted the prime table")
}

fn symmetric(mut c: BigInt, m: &BigInt) -> BigInt {
    c = c.mod_floor(m);
    if &c * 2 > *m {
        c -= m;
    }
    c
}
