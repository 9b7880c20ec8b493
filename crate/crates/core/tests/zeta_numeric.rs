use num_bigint::BigInt;
use num_traits::{One, Signed};
use qeuler::algebra::rational::{int, rat};
use qeuler::algebra::BigRat;
use qeuler::real::RealCtx;
use qeuler::report::Deviation;
use qeuler::verify::verify_thm22;
use qeuler::zeta::{interpolation_check, thm21_check, zeta_eval};

fn tol() -> BigRat {
    BigRat::new(BigInt::one(), BigInt::from(10).pow(30))
}

fn numeric(d: &Deviation) -> (BigRat, BigRat) {
    match d {
        Deviation::Numeric { value, bound } => (value.clone(), bound.clone()),
        other => panic!("expected a numeric deviation, got {other:?}"),
    }
}

#[test]
fn interpolation_grid() {
    let mut ctx = RealCtx::new(256).unwrap();
    let limit = tol() * int(2);
    for q0 in [rat(3, 10), rat(1, 2), rat(7, 10)] {
        for x in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            for m in 0..=8 {
                let r = interpolation_check(m, &x, &q0, &tol(), &mut ctx).unwrap();
                let (gap, _) = numeric(&r.deviation);
                assert!(r.passed && gap <= limit, "m={m} x={x} q={q0}");
            }
        }
    }
}

#[test]
fn tail_bounds_are_sound() {
    let mut ctx = RealCtx::new(256).unwrap();
    let loose = BigRat::new(BigInt::one(), BigInt::from(10).pow(12));
    for (s, x, q0, a) in [
        (rat(3, 2), rat(7, 10), rat(3, 10), 3),
        (rat(5, 2), rat(1, 3), rat(1, 2), 1),
        (int(-2), rat(1, 2), rat(7, 10), 1),
        (int(0), rat(5, 4), rat(9, 10), 2),
    ] {
        let coarse = zeta_eval(&s, &x, &q0, a, &loose, &mut ctx).unwrap();
        let fine = zeta_eval(&s, &x, &q0, a, &(&loose / int(100)), &mut ctx).unwrap();
        assert!(coarse.tail_bound <= loose);
        assert!(fine.terms_used >= coarse.terms_used);
        let moved = (coarse.value.to_rational() - fine.value.to_rational()).abs();
        assert!(moved <= coarse.error_bound() + fine.error_bound(), "s={s} x={x} q={q0}");
    }
}

#[test]
fn minimal_truncation_index() {
    let mut ctx = RealCtx::new(256).unwrap();
    let z = zeta_eval(&rat(3, 2), &rat(1, 2), &rat(1, 2), 1, &tol(), &mut ctx).unwrap();
    assert!(z.tail_bound <= tol());
    // One term fewer would not meet the tolerance: the tail bound is geometric
    // with ratio q0, so the previous bound is tail_bound / q0.
    assert!(&z.tail_bound / rat(1, 2) > tol());
}

#[test]
fn zeta_symmetry_at_real_s() {
    let mut ctx = RealCtx::new(256).unwrap();
    for s in [rat(3, 2), rat(5, 2)] {
        let r = thm21_check(&s, 3, 5, &rat(7, 10), &rat(3, 10), &tol(), false, &mut ctx).unwrap();
        let (gap, bound) = numeric(&r.deviation);
        assert!(r.passed && gap <= bound, "s={s}");
        assert!(bound <= BigRat::new(BigInt::one(), BigInt::from(10).pow(25)));
    }
}

#[test]
fn zeta_symmetry_at_negative_integers_matches_polynomial_verdict() {
    let mut ctx = RealCtx::new(256).unwrap();
    for n in 0..=3usize {
        for (a, b) in [(1, 3), (3, 5), (2, 1)] {
            let forced = a % 2 == 0 || b % 2 == 0;
            let s = -BigRat::from_integer(n.into());
            let numeric_r =
                thm21_check(&s, a, b, &rat(7, 10), &rat(3, 10), &tol(), forced, &mut ctx).unwrap();
            let symbolic = verify_thm22(n, a, b, forced).unwrap();
            assert_eq!(numeric_r.passed, symbolic.passed, "n={n} a={a} b={b}");
        }
    }
}

#[test]
fn s_zero_gives_one() {
    let mut ctx = RealCtx::new(256).unwrap();
    let z = zeta_eval(&int(0), &int(1), &rat(1, 2), 1, &tol(), &mut ctx).unwrap();
    assert!((z.value.to_rational() - int(1)).abs() <= z.error_bound());
    assert!(!z.value.is_negative());
}
