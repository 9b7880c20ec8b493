//! q-brackets, Carlitz-type q-Euler numbers and polynomials, the addition
//! theorem, and the classical Euler polynomials they degenerate to at `q = 1`.
//!
//! Symbolic objects use the substitution `X = q^x`, `Y = q^y`, so a q-Euler
//! polynomial becomes a [`LaurentXY`] with coefficients in `Q(q)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{binomial, in_unit_interval, int, rational_power};
use crate::algebra::{BigRat, LaurentXY, PolyQ, RatQ};
use crate::error::{Error, Result};
use crate::real::{Real, RealCtx};
use crate::report::{Deviation, Fields, IdentityId, Mode, VerificationReport};
use crate::series::{geometric_bound, min_terms};

/// `[n]_{q^a} = 1 + q^a + … + q^{a(n-1)}`; `[0] = 0`.
pub fn q_bracket_int(n: usize, base_power: usize) -> PolyQ {
    assert!(base_power >= 1, "base power must be positive");
    let mut coeffs = vec![BigRat::zero(); if n == 0 { 0 } else { base_power * (n - 1) + 1 }];
    for j in 0..n {
        coeffs[base_power * j] = BigRat::one();
    }
    PolyQ::new(coeffs)
}

/// `1 - q^a`.
fn one_minus_q_pow(a: usize) -> RatQ {
    RatQ::from_poly(&(&PolyQ::one() - &PolyQ::q_pow(a)))
}

/// `q^c` for any integer `c`.
pub fn q_pow_signed(c: i64) -> RatQ {
    let p = RatQ::q_pow(c.unsigned_abs() as usize);
    if c < 0 {
        p.inv().expect("q^c is nonzero")
    } else {
        p
    }
}

/// The argument of a q-bracket or q-Euler polynomial, given by the monomial
/// that `(q^a)^t` becomes under `X = q^x`, `Y = q^y`, where `q^a` is the base
/// and `t` the argument.
///
/// With base `q^a`: the argument `x` is `X^a`; `bx + bj/a` is
/// `X^{ab} q^{bj}`; `x + y` under base `q` is `X·Y`; `-x` is `X^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arg {
    pub x_exp: i64,
    pub y_exp: i64,
    pub q_shift: i64,
}

impl Arg {
    pub const fn new(x_exp: i64, y_exp: i64, q_shift: i64) -> Self {
        Arg { x_exp, y_exp, q_shift }
    }

    /// `X^k`.
    pub const fn scaled_x(k: i64) -> Self {
        Self::new(k, 0, 0)
    }

    pub const fn x() -> Self {
        Self::new(1, 0, 0)
    }

    pub const fn y() -> Self {
        Self::new(0, 1, 0)
    }

    pub const fn xy() -> Self {
        Self::new(1, 1, 0)
    }

    pub const fn with_q_shift(self, c: i64) -> Self {
        Self::new(self.x_exp, self.y_exp, c)
    }

    /// The monomial itself, `X^x_exp Y^y_exp q^q_shift`, raised to `k`.
    pub fn monomial_pow(&self, k: i64) -> LaurentXY {
        LaurentXY::term(self.x_exp * k, self.y_exp * k, q_pow_signed(self.q_shift * k))
    }

    /// `[t]_{q^a} = (1 - monomial) / (1 - q^a)`.
    pub fn bracket(&self, base_power: usize) -> LaurentXY {
        let inv = one_minus_q_pow(base_power).inv().expect("1 - q^a is nonzero");
        let one_minus = &LaurentXY::one() - &self.monomial_pow(1);
        one_minus.scale(&inv)
    }
}

/// Which symbolic q-bracket [`q_bracket_symbolic`] builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketVar {
    X,
    Y,
    XY,
    XInverse,
}

/// `[x]_{q^a}`, `[y]_{q^a}`, `[x+y]_{q^a}` or `[-x]_{q^a}` as Laurent
/// polynomials, e.g. `[x]_{q^a} = (1 - X^a)/(1 - q^a)`.
pub fn q_bracket_symbolic(var: BracketVar, base_power: usize) -> LaurentXY {
    let a = base_power as i64;
    let arg = match var {
        BracketVar::X => Arg::new(a, 0, 0),
        BracketVar::Y => Arg::new(0, a, 0),
        BracketVar::XY => Arg::new(a, a, 0),
        BracketVar::XInverse => Arg::new(-a, 0, 0),
    };
    arg.bracket(base_power)
}

/// Exact q-Euler numbers `E_{0..=N, q^a}` for one base `q^a`.
///
/// Alongside the numbers the table keeps the umbral moments
/// `W_k = ((1 - q^a)E - 1)^k = Σ_l C(k,l) (-1)^{k-l} (1 - q^a)^l E_{l,q^a}`,
/// which turn the polynomial expansion into
/// `E_{n,q^a}(t) = (1 - q^a)^{-n} Σ_k C(n,k) W_k M^k` with `M = (q^a)^t`.
#[derive(Clone, Debug, PartialEq)]
pub struct QEulerTable {
    base_power: usize,
    entries: Vec<RatQ>,
    moments: Vec<RatQ>,
}

impl QEulerTable {
    fn empty(base_power: usize) -> Self {
        assert!(base_power >= 1, "base power must be positive");
        QEulerTable { base_power, entries: Vec::new(), moments: Vec::new() }
    }

    pub fn base_power(&self) -> usize {
        self.base_power
    }

    pub fn entries(&self) -> &[RatQ] {
        &self.entries
    }

    /// `E_{n,q^a}`. Panics when `n` is beyond the table.
    pub fn get(&self, n: usize) -> &RatQ {
        &self.entries[n]
    }

    /// `W_k`, see the type docs.
    pub fn moment(&self, k: usize) -> &RatQ {
        &self.moments[k]
    }

    pub fn max_n(&self) -> usize {
        self.entries.len() - 1
    }

    /// Continues the terminating recurrence
    /// `(q^{a(n+1)} + 1) E_n = [2]_{q^a} δ_{n,0} - q^a Σ_{l<n} C(n,l) q^{al} E_l`.
    fn extend_to(&mut self, n_max: usize) {
        let a = self.base_power;
        while self.entries.len() <= n_max {
            let n = self.entries.len();
            let mut sum = RatQ::zero();
            for (l, e) in self.entries.iter().enumerate() {
                let c = RatQ::from_bigint(binomial(n, l)) * RatQ::q_pow(a * l);
                sum = sum + c * e;
            }
            let mut rhs = -(RatQ::q_pow(a) * sum);
            if n == 0 {
                rhs = rhs + RatQ::from_poly(&q_bracket_int(2, a));
            }
            let lead = RatQ::from_poly(&(&PolyQ::one() + &PolyQ::q_pow(a * (n + 1))));
            self.entries.push(rhs.checked_div(&lead).expect("1 + q^k is nonzero"));

            let one_minus = one_minus_q_pow(a);
            let mut w = RatQ::zero();
            for (l, e) in self.entries.iter().enumerate() {
                let mut c = RatQ::from_bigint(binomial(n, l)) * one_minus.pow(l) * e;
                if (n - l) % 2 == 1 {
                    c = -c;
                }
                w = w + c;
            }
            self.moments.push(w);
        }
    }

    /// `E_{n,q^a}(t)` as a Laurent polynomial, where `arg` is the monomial
    /// for `(q^a)^t`.
    pub fn poly(&self, n: usize, arg: Arg) -> LaurentXY {
        assert!(n <= self.max_n(), "table holds E_0..E_{}, asked for E_{n}", self.max_n());
        let inv = one_minus_q_pow(self.base_power)
            .pow(n)
            .inv()
            .expect("1 - q^a is nonzero");
        let mut out = LaurentXY::zero();
        for k in 0..=n {
            let c = RatQ::from_bigint(binomial(n, k)) * &self.moments[k] * &inv;
            let m = arg.monomial_pow(k as i64);
            for (&key, coeff) in m.terms() {
                out.add_term(key, coeff * &c);
            }
        }
        out
    }

    /// `E_{n,q^a}(t)` expanded term by term as
    /// `Σ_l C(n,l) q^{a t l} E_{l,q^a} [t]_{q^a}^{n-l}`.
    pub fn poly_direct(&self, n: usize, arg: Arg) -> LaurentXY {
        assert!(n <= self.max_n(), "table holds E_0..E_{}, asked for E_{n}", self.max_n());
        let bracket = arg.bracket(self.base_power);
        let mut out = LaurentXY::zero();
        for l in 0..=n {
            let c = RatQ::from_bigint(binomial(n, l)) * &self.entries[l];
            let term = &arg.monomial_pow(l as i64) * &bracket.pow(n - l);
            out = &out + &term.scale(&c);
        }
        out
    }

    /// Exact values `E_{n,q0}` for the whole table.
    pub fn eval(&self, q0: &BigRat) -> Result<Vec<BigRat>> {
        self.entries.iter().map(|e| e.eval(q0)).collect()
    }
}

/// Table of `E_{0..=n_max, q^a}`. Deterministic; uncached.
pub fn euler_numbers(n_max: usize, base_power: usize) -> QEulerTable {
    let mut t = QEulerTable::empty(base_power);
    t.extend_to(n_max);
    t
}

type Slot = Arc<Mutex<Option<Arc<QEulerTable>>>>;

/// Per-base memo of [`QEulerTable`]s, extended on demand. Tables handed out
/// are immutable snapshots and may be shared across threads.
#[derive(Default)]
pub struct QEulerCache {
    slots: RwLock<HashMap<usize, Slot>>,
}

impl QEulerCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used by the verification routines.
    pub fn global() -> &'static QEulerCache {
        static GLOBAL: OnceLock<QEulerCache> = OnceLock::new();
        GLOBAL.get_or_init(QEulerCache::new)
    }

    /// A table for base `q^a` holding at least `E_0..=E_{n_max}`.
    pub fn table(&self, n_max: usize, base_power: usize) -> Arc<QEulerTable> {
        let slot = {
            let read = self.slots.read().unwrap();
            read.get(&base_power).cloned()
        };
        let slot = match slot {
            Some(s) => s,
            None => self
                .slots
                .write()
                .unwrap()
                .entry(base_power)
                .or_default()
                .clone(),
        };
        let mut guard = slot.lock().unwrap();
        if let Some(t) = guard.as_ref() {
            if t.max_n() >= n_max {
                return t.clone();
            }
        }
        let mut t = guard
            .as_ref()
            .map(|t| (**t).clone())
            .unwrap_or_else(|| QEulerTable::empty(base_power));
        t.extend_to(n_max);
        let t = Arc::new(t);
        *guard = Some(t.clone());
        t
    }
}

/// `E_{n,q^a}(t)` for the argument monomial `arg` (see [`Arg`]).
pub fn euler_poly_symbolic(n: usize, base_power: usize, arg: Arg) -> LaurentXY {
    QEulerCache::global().table(n, base_power).poly(n, arg)
}

/// Forms of the addition theorem `E_{n,q}(x+y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdditionForm {
    /// `Σ_i C(n,i) q^{xi} E_{i,q}(y) [x]_q^{n-i}`
    First,
    /// `Σ_i C(n,i) q^{(n-i)x} E_{n-i,q}(y) [x]_q^i`
    Second,
    /// `E_{n,q}(x+y)` expanded directly at the argument `x + y`.
    Direct,
}

pub fn addition_theorem_expand(n: usize, form: AdditionForm) -> LaurentXY {
    let table = QEulerCache::global().table(n, 1);
    let bracket_x = q_bracket_symbolic(BracketVar::X, 1);
    let mut out = LaurentXY::zero();
    match form {
        AdditionForm::Direct => return table.poly(n, Arg::xy()),
        AdditionForm::First => {
            for i in 0..=n {
                let term = table.poly(i, Arg::y()).shift(i as i64, 0) * bracket_x.pow(n - i);
                out = &out + &term.scale(&RatQ::from_bigint(binomial(n, i)));
            }
        }
        AdditionForm::Second => {
            for i in 0..=n {
                let term = table.poly(n - i, Arg::y()).shift((n - i) as i64, 0) * bracket_x.pow(i);
                out = &out + &term.scale(&RatQ::from_bigint(binomial(n, i)));
            }
        }
    }
    out
}

fn check_q0(q0: &BigRat) -> Result<()> {
    if !in_unit_interval(q0) {
        return Err(Error::Domain(format!("q must lie in (0, 1), got {q0}")));
    }
    Ok(())
}

/// `E_{n,q0}(x0) = Σ_l C(n,l) q0^{x0 l} E_{l,q0} [x0]_{q0}^{n-l}` at working
/// precision.
pub fn euler_poly_eval(n: usize, q0: &BigRat, x0: &BigRat, ctx: &mut RealCtx) -> Result<Real> {
    check_q0(q0)?;
    let numbers = QEulerCache::global().table(n, 1).eval(q0)?;
    let qx = ctx.rat_pow(q0, x0);
    let one = ctx.one();
    let bracket = ctx.div(&ctx.sub(&one, &qx), &ctx.from_rat(&(BigRat::one() - q0)));
    let mut acc = ctx.zero();
    for (l, e) in numbers.iter().take(n + 1).enumerate() {
        let c = BigRat::from_integer(binomial(n, l)) * e;
        let t = ctx.mul(&ctx.powi(&qx, l), &ctx.powi(&bracket, n - l));
        acc = ctx.add(&acc, &ctx.mul(&ctx.from_rat(&c), &t));
    }
    Ok(acc)
}

/// Exact `E_{n,q0}(x0)` when `q0^{x0}` is rational, `None` otherwise.
pub fn euler_poly_eval_exact(n: usize, q0: &BigRat, x0: &BigRat) -> Result<Option<BigRat>> {
    check_q0(q0)?;
    let Some(qx) = rational_power(q0, x0) else {
        return Ok(None);
    };
    let numbers = QEulerCache::global().table(n, 1).eval(q0)?;
    let bracket = (BigRat::one() - &qx) / (BigRat::one() - q0);
    let value = numbers
        .iter()
        .take(n + 1)
        .enumerate()
        .map(|(l, e)| {
            BigRat::from_integer(binomial(n, l))
                * e
                * num_traits::pow(qx.clone(), l)
                * num_traits::pow(bracket.clone(), n - l)
        })
        .fold(BigRat::zero(), |a, b| a + b);
    Ok(Some(value))
}

/// A truncated series value with its certified truncation error.
#[derive(Clone, Debug)]
pub struct SeriesEstimate {
    pub value: Real,
    pub tail_bound: BigRat,
    pub terms: usize,
}

/// Direct summation of `[2]_q Σ_k (-1)^k q^k [k + x0]_q^n`, truncated at the
/// first `N` with `[2]_q q^N (1-q)^{-n} / (1-q) <= tol`.
pub fn euler_number_series_oracle(
    n: usize,
    q0: &BigRat,
    x0: &BigRat,
    tol: &BigRat,
    ctx: &mut RealCtx,
) -> Result<SeriesEstimate> {
    if !tol.is_positive() {
        return Err(Error::Usage(format!("tolerance must be positive, got {tol}")));
    }
    check_q0(q0)?;
    if x0.is_negative() {
        return Err(Error::Domain(format!("x must be nonnegative, got {x0}")));
    }
    let two_q = BigRat::one() + q0;
    let one_minus = BigRat::one() - q0;
    let scale = &two_q / num_traits::pow(one_minus.clone(), n + 1);
    let terms = min_terms(&scale, q0, tol);
    let tail_bound = geometric_bound(&scale, q0, terms);

    let q = ctx.from_rat(q0);
    let qx = ctx.rat_pow(q0, x0);
    let denom = ctx.from_rat(&one_minus);
    let mut qk = ctx.one();
    let mut acc = ctx.zero();
    for k in 0..terms {
        let bracket = ctx.div(&ctx.sub(&ctx.one(), &ctx.mul(&qk, &qx)), &denom);
        let t = ctx.mul(&qk, &ctx.powi(&bracket, n));
        acc = if k % 2 == 0 { ctx.add(&acc, &t) } else { ctx.sub(&acc, &t) };
        qk = ctx.mul(&qk, &q);
    }
    let value = ctx.mul(&acc, &ctx.from_rat(&two_q));
    Ok(SeriesEstimate { value, tail_bound, terms })
}

/// Classical Euler polynomials `E_0(x)..E_N(x)` (coefficients in `x`).
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalEulerTable {
    pub entries: Vec<PolyQ>,
}

/// From `Σ_{k<=n} C(n,k) E_k(x) + E_n(x) = 2x^n`.
pub fn classical_euler(n_max: usize) -> ClassicalEulerTable {
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    let mut entries: Vec<PolyQ> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut sum = PolyQ::zero();
        for (k, e) in entries.iter().enumerate() {
            sum = &sum + &e.scale(&BigRat::from_integer(binomial(n, k)));
        }
        entries.push(&PolyQ::q_pow(n) - &sum.scale(&half));
    }
    ClassicalEulerTable { entries }
}

/// Checks `E_{n,q}|_{q=1} = E_n(0)` exactly for every `n <= n_max`.
pub fn q_limit_check(n_max: usize) -> VerificationReport {
    let table = QEulerCache::global().table(n_max, 1);
    let classical = classical_euler(n_max);
    let mut report = VerificationReport::new(
        IdentityId::Limit,
        Mode::Symbolic,
        Fields::new().with("n_max", n_max),
    );
    for n in 0..=n_max {
        let expected = classical.entries[n].eval(&BigRat::zero());
        let got = match table.get(n).eval(&int(1)) {
            Ok(v) => v,
            Err(e) => {
                report.passed = false;
                report.witness = Some(Fields::new().with("n", n).with("error", e));
                break;
            }
        };
        if got != expected {
            report.passed = false;
            report.deviation = Deviation::Exact(&got - &expected);
            report.witness = Some(
                Fields::new()
                    .with("n", n)
                    .with("q_limit", &got)
                    .with("classical", &expected),
            );
            break;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::Var;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    fn r(n: &[i64], d: &[i64]) -> RatQ {
        RatQ::new(&p(n), &p(d)).unwrap()
    }

    #[test]
    fn integer_brackets() {
        assert_eq!(q_bracket_int(0, 1), PolyQ::zero());
        assert_eq!(q_bracket_int(3, 1), p(&[1, 1, 1]));
        assert_eq!(q_bracket_int(2, 3), p(&[1, 0, 0, 1]));
    }

    #[test]
    fn symbolic_brackets() {
        let inv = r(&[1], &[1, -1]);
        let bx = q_bracket_symbolic(BracketVar::X, 1);
        assert_eq!(bx.coeff(0, 0), Some(&inv));
        assert_eq!(bx.coeff(1, 0), Some(&-&inv));
        let bxy = q_bracket_symbolic(BracketVar::XY, 1);
        assert_eq!(bxy.coeff(1, 1), Some(&-&inv));
        // q^x [-x]_q = -[x]_q
        let bneg = q_bracket_symbolic(BracketVar::XInverse, 1);
        assert_eq!(bneg.shift(1, 0), -&bx);
        let b3 = q_bracket_symbolic(BracketVar::Y, 3);
        assert_eq!(b3.coeff(0, 3), Some(&r(&[-1], &[1, 0, 0, -1])));
    }

    #[test]
    fn first_q_euler_numbers() {
        let t = euler_numbers(2, 1);
        assert_eq!(t.get(0), &RatQ::one());
        assert_eq!(t.get(1), &r(&[0, -1], &[1, 0, 1]));
        // -q(1 - q^2) / ((1 + q^2)(1 + q^3))
        let num = &p(&[0, -1]) * &p(&[1, 0, -1]);
        let den = &p(&[1, 0, 1]) * &p(&[1, 0, 0, 1]);
        assert_eq!(t.get(2), &RatQ::new(&num, &den).unwrap());
        assert_eq!(t.get(1).eval(&rat(1, 2)).unwrap(), rat(-2, 5));
        assert_eq!(t.get(2).eval(&rat(1, 2)).unwrap(), rat(-4, 15));
    }

    #[test]
    fn zeroth_number_is_one_for_every_base() {
        for a in 1..=7 {
            assert_eq!(euler_numbers(0, a).get(0), &RatQ::one());
        }
    }

    #[test]
    fn cache_extends_and_matches_fresh_tables() {
        let cache = QEulerCache::new();
        let small = cache.table(3, 2);
        assert!(small.max_n() >= 3);
        let big = cache.table(6, 2);
        assert_eq!(&big.entries()[..4], &small.entries()[..4]);
        assert_eq!(big.entries(), euler_numbers(6, 2).entries());
    }

    #[test]
    fn polynomial_examples() {
        let t = euler_numbers(3, 1);
        assert_eq!(t.poly(0, Arg::x()), LaurentXY::one());
        // E_1(x) = X E_1 + (1 - X)/(1 - q)
        let inv = r(&[1], &[1, -1]);
        let expect = &LaurentXY::term(1, 0, t.get(1).clone()) + &q_bracket_symbolic(BracketVar::X, 1);
        assert_eq!(t.poly(1, Arg::x()), expect);
        assert_eq!(expect.coeff(0, 0), Some(&inv));
        for n in 0..=3 {
            let at_zero = t.poly(n, Arg::x()).specialize_one(Var::X);
            assert_eq!(at_zero.as_constant().unwrap(), *t.get(n));
        }
    }

    #[test]
    fn moment_route_matches_term_by_term_expansion() {
        let t = euler_numbers(5, 3);
        for arg in [Arg::scaled_x(3), Arg::scaled_x(15).with_q_shift(5), Arg::new(3, 3, 0), Arg::new(-3, 0, -2)] {
            for n in 0..=5 {
                assert_eq!(t.poly(n, arg), t.poly_direct(n, arg), "n={n} arg={arg:?}");
            }
        }
    }

    #[test]
    fn exact_polynomial_value_at_integer_argument() {
        // q0 E_1 + 1 = (1/2)(-2/5) + 1
        assert_eq!(euler_poly_eval_exact(1, &rat(1, 2), &int(1)).unwrap(), Some(rat(4, 5)));
        assert_eq!(euler_poly_eval_exact(0, &rat(1, 3), &rat(7, 3)).unwrap(), None);
        let mut ctx = RealCtx::new(256).unwrap();
        let v = euler_poly_eval(1, &rat(1, 2), &int(1), &mut ctx).unwrap();
        assert!((v.to_rational() - rat(4, 5)).abs() < rat(1, 1 << 60));
        let one = euler_poly_eval(0, &rat(2, 7), &rat(1, 3), &mut ctx).unwrap();
        assert_eq!(one.to_rational(), int(1));
        assert!(euler_poly_eval(1, &int(2), &int(0), &mut ctx).is_err());
    }

    #[test]
    fn classical_examples() {
        let t = classical_euler(3);
        assert_eq!(t.entries[0], PolyQ::one());
        assert_eq!(t.entries[1], PolyQ::new(vec![rat(-1, 2), int(1)]));
        assert_eq!(t.entries[2], p(&[0, -1, 1]));
        assert_eq!(t.entries[3].eval(&int(0)), rat(1, 4));
    }

    #[test]
    fn series_oracle_rejects_bad_input() {
        let mut ctx = RealCtx::new(128).unwrap();
        assert!(euler_number_series_oracle(1, &rat(1, 2), &int(0), &int(0), &mut ctx).is_err());
        assert!(euler_number_series_oracle(1, &int(1), &int(0), &rat(1, 10), &mut ctx).is_err());
        assert!(euler_number_series_oracle(1, &rat(1, 2), &int(-1), &rat(1, 10), &mut ctx).is_err());
    }

    #[test]
    fn limit_check_small() {
        let r = q_limit_check(4);
        assert!(r.passed, "{r:?}");
    }
}
