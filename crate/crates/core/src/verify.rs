//! Exact symbolic checks of the symmetric identities.
//!
//! Every side is built in `Q(q)[X^±, Y^±]` with `X = q^x`, `Y = q^y`, and a
//! check passes only when the difference is the zero element.

use num_traits::{One, Zero};

use crate::algebra::rational::{binomial, in_unit_interval, rational_power};
use crate::algebra::{BigRat, LaurentXY, PolyQ, RatQ};
use crate::error::{Error, Result};
use crate::qeuler::{
    addition_theorem_expand, q_bracket_int, q_bracket_symbolic, AdditionForm, Arg, BracketVar,
    QEulerCache,
};
use crate::report::{Deviation, Fields, IdentityId, Mode, VerificationReport};

/// Rejects nonpositive parameters, and even ones unless `force` is set.
pub fn check_parity(a: usize, b: usize, force: bool) -> Result<()> {
    if a == 0 || b == 0 {
        return Err(Error::Usage(format!("a and b must be positive, got a={a}, b={b}")));
    }
    if !force && (a % 2 == 0 || b % 2 == 0) {
        return Err(Error::Usage(format!(
            "a and b must be odd, got a={a}, b={b} (use --force to override)"
        )));
    }
    Ok(())
}

fn binom(n: usize, k: usize) -> RatQ {
    RatQ::from_bigint(binomial(n, k))
}

fn bracket(n: usize, base_power: usize) -> RatQ {
    RatQ::from_poly(&q_bracket_int(n, base_power))
}

fn params_nab(n: usize, a: usize, b: usize, force: bool) -> Fields {
    let mut p = Fields::new().with("n", n).with("a", a).with("b", b);
    if force {
        p.push("forced", true);
    }
    p
}

/// `Σ_{j<a} (-1)^j q^{(n+1-i)j}` `[j]_{q^b}^i` in base `q^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct SStarSum {
    pub n: usize,
    pub i: usize,
    pub a: usize,
    pub base_power: usize,
    pub value: PolyQ,
}

pub fn s_star(n: usize, i: usize, a: usize, base_power: usize) -> Result<SStarSum> {
    if i > n {
        return Err(Error::Usage(format!("i must not exceed n, got i={i}, n={n}")));
    }
    if a == 0 || base_power == 0 {
        return Err(Error::Usage("a and the base power must be positive".into()));
    }
    let b = base_power;
    let mut value = PolyQ::zero();
    for j in 0..a {
        let term = &PolyQ::q_pow(b * j * (n + 1 - i)) * &q_bracket_int(j, b).pow(i);
        value = if j % 2 == 0 { &value + &term } else { &value - &term };
    }
    Ok(SStarSum { n, i, a, base_power, value })
}

/// `[2]_{q^b} [a]_q^n Σ_{j<a} (-1)^j q^{bj} E_{n,q^a}(bx + bj/a)`, each
/// polynomial expanded term by term at its own argument `X^{ab} q^{bj}`.
pub fn thm22_side(n: usize, a: usize, b: usize) -> LaurentXY {
    let table = QEulerCache::global().table(n, a);
    let mut sum = LaurentXY::zero();
    for j in 0..a {
        let arg = Arg::new((a * b) as i64, 0, (b * j) as i64);
        let mut t = table.poly_direct(n, arg).scale(&RatQ::q_pow(b * j));
        if j % 2 == 1 {
            t = -&t;
        }
        sum = &sum + &t;
    }
    sum.scale(&(RatQ::from_poly(&q_bracket_int(2, b)) * bracket(a, 1).pow(n)))
}

/// [`thm22_side`] computed another way. With `M = X^{ab} q^{bj}` the polynomial is
/// `(1 - q^a)^{-n} Σ_k C(n,k) W_k M^k`, so the `j`-sum collapses to the
/// geometric factor `Σ_j (-1)^j q^{bj(k+1)}` on each power `X^{abk}`.
pub fn thm22_side_grouped(n: usize, a: usize, b: usize) -> LaurentXY {
    let table = QEulerCache::global().table(n, a);
    let pre = RatQ::from_poly(&q_bracket_int(2, b))
        * bracket(a, 1).pow(n)
        * RatQ::from_poly(&(&PolyQ::one() - &PolyQ::q_pow(a)))
            .pow(n)
            .inv()
            .expect("1 - q^a is nonzero");
    let mut out = LaurentXY::zero();
    for k in 0..=n {
        let mut geo = PolyQ::zero();
        for j in 0..a {
            let t = PolyQ::q_pow(b * j * (k + 1));
            geo = if j % 2 == 0 { &geo + &t } else { &geo - &t };
        }
        let c = binom(n, k) * table.moment(k) * RatQ::from_poly(&geo) * &pre;
        out.add_term(((a * b * k) as i64, 0), c);
    }
    out
}

pub fn verify_thm22(n: usize, a: usize, b: usize, force: bool) -> Result<VerificationReport> {
    check_parity(a, b, force)?;
    let diff = &thm22_side(n, a, b) - &thm22_side(n, b, a);
    Ok(VerificationReport::symbolic(IdentityId::Thm22, params_nab(n, a, b, force), &diff))
}

/// `[2]_{q^b} Σ_i C(n,i) [a]_q^{n-i} [b]_q^i E_{n-i,q^a}(bx) S*_{n,i,q^b}(a)`.
pub fn thm24_side(n: usize, a: usize, b: usize) -> LaurentXY {
    let table = QEulerCache::global().table(n, a);
    let arg = Arg::scaled_x((a * b) as i64);
    let mut out = LaurentXY::zero();
    for i in 0..=n {
        let s = s_star(n, i, a, b).expect("valid indices").value;
        if s.is_zero() {
            continue;
        }
        let c = binom(n, i) * bracket(a, 1).pow(n - i) * bracket(b, 1).pow(i) * RatQ::from_poly(&s);
        for (&key, e) in table.poly(n - i, arg).terms() {
            out.add_term(key, e * &c);
        }
    }
    out.scale(&RatQ::from_poly(&q_bracket_int(2, b)))
}

/// The S*-sum identity for `(n, a, b)`. With `check_intermediates`, each of
/// its sides is also compared with the matching side of the polynomial
/// identity it is rearranged from.
pub fn verify_thm24(
    n: usize,
    a: usize,
    b: usize,
    check_intermediates: bool,
    force: bool,
) -> Result<VerificationReport> {
    check_parity(a, b, force)?;
    let lhs = thm24_side(n, a, b);
    let rhs = thm24_side(n, b, a);
    let mut params = params_nab(n, a, b, force);
    params.push("check_intermediates", check_intermediates);
    let mut report = VerificationReport::new(IdentityId::Thm24, Mode::Symbolic, params);
    report.record_difference(&(&lhs - &rhs), Some("sides"));
    if check_intermediates {
        report.record_difference(&(&lhs - &thm22_side(n, a, b)), Some("lhs_rearrangement"));
        report.record_difference(&(&rhs - &thm22_side(n, b, a)), Some("rhs_rearrangement"));
    }
    Ok(report)
}

/// Both forms of the addition theorem against each other and against the
/// direct expansion at `x + y`.
pub fn verify_prop23(n: usize) -> VerificationReport {
    let first = addition_theorem_expand(n, AdditionForm::First);
    let second = addition_theorem_expand(n, AdditionForm::Second);
    let direct = addition_theorem_expand(n, AdditionForm::Direct);
    let mut report =
        VerificationReport::new(IdentityId::Prop23, Mode::Symbolic, Fields::new().with("n", n));
    report.record_difference(&(&first - &second), Some("first_vs_second"));
    report.record_difference(&(&first - &direct), Some("first_vs_direct"));
    report
}

/// `[x]_q u + q^x [y+m]_q (u+v) = [x+y+m]_q (u+v) - [x]_q v` in exact
/// rationals; needs `q0^x` and `q0^y` rational.
pub fn verify_eq13(
    x: &BigRat,
    y: &BigRat,
    m: usize,
    u: &BigRat,
    v: &BigRat,
    q0: &BigRat,
) -> Result<VerificationReport> {
    if !in_unit_interval(q0) {
        return Err(Error::Domain(format!("q must lie in (0, 1), got {q0}")));
    }
    let power = |e: &BigRat| {
        rational_power(q0, e)
            .ok_or_else(|| Error::Domain(format!("{q0}^({e}) is not rational")))
    };
    let qx = power(x)?;
    let qy = power(y)?;
    let qm = num_traits::pow(q0.clone(), m);
    let one_minus = BigRat::one() - q0;
    let br = |p: &BigRat| (BigRat::one() - p) / &one_minus;
    let uv = u + v;
    let lhs = br(&qx) * u + &qx * br(&(&qy * &qm)) * &uv;
    let rhs = br(&(&qx * &qy * &qm)) * &uv - br(&qx) * v;
    let params = Fields::new()
        .with("x", x)
        .with("y", y)
        .with("m", m)
        .with("u", u)
        .with("v", v)
        .with("q", q0);
    let mut report = VerificationReport::new(IdentityId::Eq13, Mode::Symbolic, params);
    report.details = Fields::new().with("lhs", &lhs).with("rhs", &rhs);
    let diff = lhs - rhs;
    if !diff.is_zero() {
        report.passed = false;
        report.deviation = Deviation::Exact(diff);
    }
    Ok(report)
}

/// `Σ_{k<=m} C(m,k) X^{n+k} E_{n+k,q}(y) [x]_q^{m-k}`.
pub fn eq17_lhs(m: usize, n: usize) -> LaurentXY {
    let table = QEulerCache::global().table(m + n, 1);
    let bx = q_bracket_symbolic(BracketVar::X, 1);
    let mut out = LaurentXY::zero();
    for k in 0..=m {
        let t = table.poly(n + k, Arg::y()).shift((n + k) as i64, 0) * bx.pow(m - k);
        out = &out + &t.scale(&binom(m, k));
    }
    out
}

/// `Σ_{k<=n} C(n,k) X^{n-k} E_{m+k,q}(x+y) [-x]_q^{n-k}`.
pub fn eq17_rhs(m: usize, n: usize) -> LaurentXY {
    let table = QEulerCache::global().table(m + n, 1);
    let bneg = q_bracket_symbolic(BracketVar::XInverse, 1);
    let mut out = LaurentXY::zero();
    for k in 0..=n {
        let t = table.poly(m + k, Arg::xy()).shift((n - k) as i64, 0) * bneg.pow(n - k);
        out = &out + &t.scale(&binom(n, k));
    }
    out
}

/// The two-variable umbral identity for `(m, n)`. At `n = 0` its sides are
/// additionally required to coincide with the first and direct forms of the
/// addition theorem.
pub fn verify_eq17(m: usize, n: usize) -> VerificationReport {
    let lhs = eq17_lhs(m, n);
    let rhs = eq17_rhs(m, n);
    let mut params = Fields::new().with("m", m).with("n", n);
    if n == 0 {
        params.push("reduces_to", IdentityId::Prop23);
    }
    let mut report = VerificationReport::new(IdentityId::Eq17, Mode::Symbolic, params);
    report.details = Fields::new().with("generating_function", "exp([x+y+m]_q (u+v))");
    report.record_difference(&(&lhs - &rhs), Some("sides"));
    if n == 0 {
        let first = addition_theorem_expand(m, AdditionForm::First);
        let direct = addition_theorem_expand(m, AdditionForm::Direct);
        report.record_difference(&(&lhs - &first), Some("lhs_is_addition_first_form"));
        report.record_difference(&(&rhs - &direct), Some("rhs_is_direct_expansion"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::algebra::Var;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    #[test]
    fn s_star_examples() {
        for n in 0..4 {
            assert_eq!(s_star(n, 0, 1, 1).unwrap().value, PolyQ::one());
            for i in 1..=n {
                assert!(s_star(n, i, 1, 1).unwrap().value.is_zero());
            }
            // 1 - q^{n+1} + q^{2n+2}
            let mut c = vec![0i64; 2 * n + 3];
            c[0] = 1;
            c[n + 1] = -1;
            c[2 * n + 2] = 1;
            assert_eq!(s_star(n, 0, 3, 1).unwrap().value, p(&c));
        }
        assert!(matches!(s_star(1, 2, 3, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn parity_guard() {
        assert!(matches!(verify_thm22(1, 2, 1, false), Err(Error::Usage(_))));
        assert!(matches!(verify_thm22(1, 0, 1, true), Err(Error::Usage(_))));
        let r = verify_thm22(1, 2, 1, true).unwrap();
        assert!(!r.passed);
        assert_eq!(r.params.get("forced"), Some("true"));
    }

    #[test]
    fn grouped_side_matches_literal_sum() {
        for (n, a, b) in [(0, 3, 5), (2, 3, 1), (3, 1, 3), (2, 5, 3), (1, 2, 1)] {
            assert_eq!(thm22_side(n, a, b), thm22_side_grouped(n, a, b), "n={n} a={a} b={b}");
        }
    }

    #[test]
    fn small_polynomial_symmetry() {
        for (n, a, b) in [(0, 3, 5), (1, 1, 3), (2, 3, 5), (3, 5, 7), (2, 7, 7)] {
            let r = verify_thm22(n, a, b, false).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn small_s_star_symmetry_with_intermediates() {
        for (n, a, b) in [(0, 1, 1), (1, 1, 1), (2, 3, 5), (3, 1, 3)] {
            let r = verify_thm24(n, a, b, true, false).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn addition_theorem_small() {
        for n in 0..=4 {
            assert!(verify_prop23(n).passed);
        }
    }

    #[test]
    fn scalar_lemma_examples() {
        let r = verify_eq13(&int(1), &int(2), 3, &rat(1, 2), &rat(1, 3), &rat(1, 2)).unwrap();
        assert!(r.passed);
        let r = verify_eq13(&int(0), &int(5), 2, &rat(2, 7), &rat(-1, 3), &rat(3, 10)).unwrap();
        assert!(r.passed);
        let r = verify_eq13(&int(1), &int(1), 0, &int(0), &int(0), &rat(1, 3)).unwrap();
        assert!(r.passed);
        // (1/4)^(1/2) is rational; (1/2)^(1/2) is not.
        assert!(verify_eq13(&rat(1, 2), &rat(3, 2), 1, &int(1), &int(1), &rat(1, 4)).unwrap().passed);
        assert!(matches!(
            verify_eq13(&rat(1, 2), &int(1), 1, &int(1), &int(1), &rat(1, 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn two_variable_identity_small() {
        for m in 0..=3 {
            for n in 0..=3 {
                let r = verify_eq17(m, n);
                assert!(r.passed, "m={m} n={n}: {r:?}");
            }
        }
        assert_eq!(verify_eq17(2, 0).params.get("reduces_to"), Some("PROP23"));
    }

    #[test]
    fn specializing_x_to_zero_leaves_y_polynomial() {
        // E_n(0 + y) = E_n(y)
        let direct = addition_theorem_expand(3, AdditionForm::Direct);
        let table = QEulerCache::global().table(3, 1);
        assert_eq!(direct.specialize_one(Var::X), table.poly(3, Arg::y()));
    }
}
