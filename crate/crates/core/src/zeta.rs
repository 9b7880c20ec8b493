//! The alternating q-zeta series
//! `ζ_{q^a}(s, x) = [2]_{q^a} Σ_{n>=0} (-1)^n q^{an} [n+x]_{q^a}^{-s}`
//! evaluated with a certified truncation bound, and the numeric identity
//! checks built on it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{in_unit_interval, pow_i};
use crate::algebra::BigRat;
use crate::error::{Error, Result};
use crate::qeuler::euler_poly_eval;
use crate::real::{Real, RealCtx};
use crate::report::{Deviation, Fields, IdentityId, Mode, VerificationReport};
use crate::series::{geometric_bound, min_terms};

/// A truncated zeta value.
#[derive(Clone, Debug)]
pub struct ZetaValue {
    pub value: Real,
    /// Certified bound on the discarded tail.
    pub tail_bound: BigRat,
    /// Conservative bound on the accumulated floating-point error.
    pub rounding_bound: BigRat,
    pub terms_used: usize,
    pub s: BigRat,
    pub x: BigRat,
    pub q0: BigRat,
    pub base_power: usize,
}

impl ZetaValue {
    pub fn error_bound(&self) -> BigRat {
        &self.tail_bound + &self.rounding_bound
    }
}

/// Relative error allowance for a value produced by `ops` floating-point
/// steps involving a power with exponent `s`. Deliberately loose: it spends
/// 32 of the working bits as headroom.
fn rel_error(prec: usize, s: &BigRat, ops: usize) -> BigRat {
    let weight = BigRat::one() + s.abs().ceil();
    weight * BigRat::from_integer(BigInt::from(ops + 8))
        / BigRat::from_integer(BigInt::one() << prec.saturating_sub(32))
}

/// Rational upper bound for `|r|`.
fn upper(r: &Real, rel: &BigRat) -> BigRat {
    r.to_rational().abs() * (BigRat::one() + rel)
}

fn check_common(x: &BigRat, q0: &BigRat, tol: &BigRat) -> Result<()> {
    if !tol.is_positive() {
        return Err(Error::Usage(format!("tolerance must be positive, got {tol}")));
    }
    if !x.is_positive() {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    if !in_unit_interval(q0) {
        return Err(Error::Domain(format!("q must lie in (0, 1), got {q0}")));
    }
    Ok(())
}

/// Sums `ζ_{q0^a}(s, x)` up to the first `N` whose geometric tail bound
/// `[2]_Q Q^N M / (1 - Q)` is at most `tol`, with `Q = q0^a` and
/// `M = [x]_Q^{-s}` for `s >= 0`, `M = (1 - Q)^s` for `s < 0`.
pub fn zeta_eval(
    s: &BigRat,
    x: &BigRat,
    q0: &BigRat,
    base_power: usize,
    tol: &BigRat,
    ctx: &mut RealCtx,
) -> Result<ZetaValue> {
    check_common(x, q0, tol)?;
    if base_power == 0 {
        return Err(Error::Usage("base power must be positive".into()));
    }
    let prec = ctx.precision();
    let big_q = pow_i(q0, base_power as i32);
    let one_minus = BigRat::one() - &big_q;
    let two_q = BigRat::one() + &big_q;
    let neg_s = -s;

    let qx = ctx.rat_pow(q0, &(x * BigRat::from_integer(base_power.into())));
    let denom = ctx.from_rat(&one_minus);
    let m = if s.is_negative() {
        let base = ctx.from_rat(&one_minus);
        ctx.pow_rat(&base, s)
    } else {
        let bx = ctx.div(&ctx.sub(&ctx.one(), &qx), &denom);
        ctx.pow_rat(&bx, &neg_s)
    };
    let m_up = upper(&m, &rel_error(prec, s, 4));
    let scale = &two_q * m_up / &one_minus;
    let terms = min_terms(&scale, &big_q, tol);
    let tail_bound = geometric_bound(&scale, &big_q, terms);

    let q = ctx.from_rat(&big_q);
    let mut qn = ctx.one();
    let mut acc = ctx.zero();
    let mut abs_sum = ctx.zero();
    for n in 0..terms {
        let bracket = ctx.div(&ctx.sub(&ctx.one(), &ctx.mul(&qn, &qx)), &denom);
        let powered = ctx.pow_rat(&bracket, &neg_s);
        let t = ctx.mul(&qn, &powered);
        acc = if n % 2 == 0 { ctx.add(&acc, &t) } else { ctx.sub(&acc, &t) };
        abs_sum = ctx.add(&abs_sum, &t.abs());
        qn = ctx.mul(&qn, &q);
    }
    let value = ctx.mul(&acc, &ctx.from_rat(&two_q));
    let rel = rel_error(prec, s, terms);
    let rounding_bound = &two_q * upper(&abs_sum, &rel) * &rel;
    Ok(ZetaValue {
        value,
        tail_bound,
        rounding_bound,
        terms_used: terms,
        s: s.clone(),
        x: x.clone(),
        q0: q0.clone(),
        base_power,
    })
}

/// Compares `ζ_q(-m, x)` with `E_{m,q}(x)`; passes when they agree within
/// `2·tol`.
pub fn interpolation_check(
    m: usize,
    x: &BigRat,
    q0: &BigRat,
    tol: &BigRat,
    ctx: &mut RealCtx,
) -> Result<VerificationReport> {
    let s = -BigRat::from_integer(m.into());
    let z = zeta_eval(&s, x, q0, 1, tol, ctx)?;
    let e = euler_poly_eval(m, q0, x, ctx)?;
    let diff = ctx.sub(&z.value, &e).abs().to_rational();
    let bound = tol * BigRat::from_integer(2.into());
    let params = Fields::new()
        .with("m", m)
        .with("x", x)
        .with("q", q0)
        .with("tol", crate::real::format_sci(tol, 3));
    let mut report = VerificationReport::new(IdentityId::Eq5, Mode::Numeric, params);
    let digits = crate::real::decimal_digits(ctx.precision());
    report.passed = diff <= bound;
    report.details = Fields::new()
        .with("zeta", z.value.to_sci(digits))
        .with("euler_poly", e.to_sci(digits))
        .with("terms_used", z.terms_used)
        .with("tail_bound", crate::real::format_sci(&z.tail_bound, 6));
    report.params.push("bound", crate::real::format_sci(&bound, 6));
    report.deviation = Deviation::Numeric { value: diff, bound };
    Ok(report)
}

/// One side `[2]_{q^b} [b]_q^s Σ_{j<a} (-1)^j q^{bj} ζ_{q^a}(s, bx + bj/a)`
/// and its certified error.
fn thm21_side(
    s: &BigRat,
    a: usize,
    b: usize,
    x: &BigRat,
    q0: &BigRat,
    tol: &BigRat,
    ctx: &mut RealCtx,
) -> Result<(Real, BigRat)> {
    let prec = ctx.precision();
    let two_qb = BigRat::one() + pow_i(q0, b as i32);
    let bracket_b: BigRat = (0..b).map(|j| pow_i(q0, j as i32)).sum();
    let bb = ctx.from_rat(&bracket_b);
    let powered = ctx.pow_rat(&bb, s);
    let pref = ctx.mul(&ctx.from_rat(&two_qb), &powered);
    let pref_up = upper(&pref, &rel_error(prec, s, 4));
    // Half of tol for truncation, the rest covers rounding.
    let call_tol = tol / (BigRat::from_integer((2 * a).into()) * &pref_up);

    let bq = BigRat::from_integer(b.into());
    let mut acc = ctx.zero();
    let mut err = BigRat::zero();
    for j in 0..a {
        let arg = &bq * x + &bq * BigRat::new(j.into(), a.into());
        let z = zeta_eval(s, &arg, q0, a, &call_tol, ctx)?;
        let w = pow_i(q0, (b * j) as i32);
        let t = ctx.mul(&ctx.from_rat(&w), &z.value);
        acc = if j % 2 == 0 { ctx.add(&acc, &t) } else { ctx.sub(&acc, &t) };
        err += &w * z.error_bound();
    }
    let side = ctx.mul(&pref, &acc);
    let rel = rel_error(prec, s, a + 4);
    let err = &pref_up * err + upper(&side, &rel) * &rel;
    Ok((side, err))
}

/// Evaluates both sides of the zeta-level symmetric identity for `(a, b)`
/// and compares the gap against the summed certified errors. Even `a` or
/// `b` is rejected unless `force` is set.
#[allow(clippy::too_many_arguments)]
pub fn thm21_check(
    s: &BigRat,
    a: usize,
    b: usize,
    x: &BigRat,
    q0: &BigRat,
    tol: &BigRat,
    force: bool,
    ctx: &mut RealCtx,
) -> Result<VerificationReport> {
    check_common(x, q0, tol)?;
    crate::verify::check_parity(a, b, force)?;
    let (lhs, err_l) = thm21_side(s, a, b, x, q0, tol, ctx)?;
    let (rhs, err_r) = thm21_side(s, b, a, x, q0, tol, ctx)?;
    let diff = ctx.sub(&lhs, &rhs).abs().to_rational();
    let bound = err_l + err_r;
    let params = Fields::new()
        .with("s", s)
        .with("a", a)
        .with("b", b)
        .with("x", x)
        .with("q", q0)
        .with("tol", crate::real::format_sci(tol, 3));
    let mut report = VerificationReport::new(IdentityId::Thm21, Mode::Numeric, params);
    let digits = crate::real::decimal_digits(ctx.precision());
    report.passed = diff <= bound;
    report.details = Fields::new()
        .with("lhs", lhs.to_sci(digits))
        .with("rhs", rhs.to_sci(digits));
    report.params.push("bound", crate::real::format_sci(&bound, 6));
    report.deviation = Deviation::Numeric { value: diff, bound };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn ctx() -> RealCtx {
        RealCtx::new(256).unwrap()
    }

    fn tol() -> BigRat {
        BigRat::new(1.into(), BigInt::from(10).pow(30))
    }

    fn close(v: &Real, target: &BigRat, within: &BigRat) -> bool {
        (v.to_rational() - target).abs() <= *within
    }

    #[test]
    fn s_zero_is_one() {
        let mut c = ctx();
        for (x, q) in [(int(1), rat(1, 2)), (rat(1, 3), rat(7, 10))] {
            let z = zeta_eval(&int(0), &x, &q, 1, &tol(), &mut c).unwrap();
            assert!(close(&z.value, &int(1), &(z.error_bound() + tol())), "{}", z.value);
            assert!(z.tail_bound <= tol());
        }
    }

    #[test]
    fn negative_one_matches_first_polynomial() {
        let mut c = ctx();
        let r = interpolation_check(1, &rat(1, 2), &rat(1, 2), &tol(), &mut c).unwrap();
        assert!(r.passed, "{r:?}");
        let r = interpolation_check(5, &rat(3, 4), &rat(1, 3), &tol(), &mut c).unwrap();
        assert!(r.passed, "{r:?}");
        let r = interpolation_check(0, &rat(1, 4), &rat(3, 10), &tol(), &mut c).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn terms_used_is_minimal() {
        let mut c = ctx();
        let z = zeta_eval(&rat(3, 2), &rat(1, 2), &rat(1, 2), 2, &tol(), &mut c).unwrap();
        assert!(z.tail_bound <= tol());
        assert!(z.terms_used > 0);
        let loose = zeta_eval(&rat(3, 2), &rat(1, 2), &rat(1, 2), 2, &(tol() * int(1000)), &mut c).unwrap();
        assert!(loose.terms_used < z.terms_used);
    }

    #[test]
    fn rejects_bad_arguments() {
        let mut c = ctx();
        assert!(matches!(zeta_eval(&int(1), &int(0), &rat(1, 2), 1, &tol(), &mut c), Err(Error::Domain(_))));
        assert!(matches!(zeta_eval(&int(1), &int(1), &rat(1, 2), 1, &int(0), &mut c), Err(Error::Usage(_))));
        assert!(matches!(zeta_eval(&int(1), &int(1), &int(1), 1, &tol(), &mut c), Err(Error::Domain(_))));
    }

    #[test]
    fn symmetric_degenerate_cases() {
        let mut c = ctx();
        for (a, b) in [(1, 1), (3, 3)] {
            let r = thm21_check(&rat(3, 2), a, b, &rat(7, 10), &rat(3, 10), &tol(), false, &mut c).unwrap();
            assert!(r.passed);
            match r.deviation {
                Deviation::Numeric { value, .. } => assert!(value.is_zero()),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn even_parameters_need_force() {
        let mut c = ctx();
        let e = thm21_check(&int(1), 2, 1, &rat(1, 2), &rat(1, 2), &tol(), false, &mut c);
        assert!(matches!(e, Err(Error::Usage(_))));
    }
}
