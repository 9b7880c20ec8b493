use num_bigint::BigInt;
use num_traits::{One, Signed};
use qeuler::algebra::rational::{int, rat};
use qeuler::algebra::{BigRat, PolyQ, RatQ, Var};
use qeuler::qeuler::{
    addition_theorem_expand, classical_euler, euler_number_series_oracle, euler_numbers,
    euler_poly_eval, euler_poly_eval_exact, q_limit_check, AdditionForm, Arg,
};
use qeuler::real::RealCtx;

fn factorial(n: usize) -> BigRat {
    BigRat::from_integer((1..=n).map(BigInt::from).product::<BigInt>())
}

/// `E_n(x)` read off `2 e^{xt} / (e^t + 1)` as a formal power series in `t`.
fn generating_function_euler(n_max: usize) -> Vec<PolyQ> {
    // g = 1 / (e^t + 1), by series inversion.
    let c: Vec<BigRat> = (0..=n_max)
        .map(|k| if k == 0 { int(2) } else { factorial(k).recip() })
        .collect();
    let mut g = vec![rat(1, 2)];
    for n in 1..=n_max {
        let s: BigRat = (1..=n).map(|k| &c[k] * &g[n - k]).sum();
        g.push(-s / &c[0]);
    }
    (0..=n_max)
        .map(|n| {
            let coeffs = (0..=n)
                .map(|k| int(2) * &g[n - k] / factorial(k) * factorial(n))
                .collect();
            PolyQ::new(coeffs)
        })
        .collect()
}

fn tol() -> BigRat {
    BigRat::new(BigInt::one(), BigInt::from(10).pow(30))
}

#[test]
fn classical_table_matches_generating_function() {
    let oracle = generating_function_euler(20);
    let table = classical_euler(20);
    assert_eq!(table.entries, oracle);
    for (n, e) in table.entries.iter().enumerate() {
        assert_eq!(e.degree(), Some(n));
        assert_eq!(e.leading_coeff(), Some(&int(1)));
    }
}

#[test]
fn q_numbers_at_one_are_classical_values() {
    let oracle = generating_function_euler(20);
    let table = euler_numbers(20, 1);
    for n in 0..=20 {
        let at_one = table.get(n).eval(&int(1)).unwrap();
        assert_eq!(at_one, oracle[n].eval(&int(0)), "n={n}");
    }
    assert_eq!(table.get(1).eval(&int(1)).unwrap(), rat(-1, 2));
    assert_eq!(table.get(2).eval(&int(1)).unwrap(), int(0));
    assert_eq!(table.get(3).eval(&int(1)).unwrap(), rat(1, 4));
    assert!(q_limit_check(20).passed);
}

#[test]
fn reduced_denominators_divide_the_expected_product() {
    let table = euler_numbers(20, 1);
    for n in 1..=20 {
        let mut product = PolyQ::one();
        for k in 1..=n {
            product = &product * &(&PolyQ::one() + &PolyQ::q_pow(k + 1));
        }
        let quotient = RatQ::new(&product, &table.get(n).den()).unwrap();
        assert!(quotient.is_polynomial(), "n={n}");
    }
}

#[test]
fn base_change_is_substitution() {
    let base = euler_numbers(8, 1);
    for a in [2, 3, 5, 7] {
        let t = euler_numbers(8, a);
        assert_eq!(t.get(0), &RatQ::one());
        for n in 0..=8 {
            assert_eq!(t.get(n), &base.get(n).subst_power(a), "a={a} n={n}");
        }
    }
}

#[test]
fn recurrence_agrees_with_truncated_series() {
    let mut ctx = RealCtx::new(256).unwrap();
    let table = euler_numbers(8, 1);
    for q0 in [rat(1, 3), rat(1, 2), rat(2, 3)] {
        for n in 0..=8 {
            let exact = table.get(n).eval(&q0).unwrap();
            let s = euler_number_series_oracle(n, &q0, &int(0), &tol(), &mut ctx).unwrap();
            assert!(s.tail_bound <= tol());
            let gap = (s.value.to_rational() - &exact).abs();
            assert!(gap <= tol() * int(2), "q={q0} n={n} gap={gap}");
        }
    }
}

#[test]
fn series_oracle_examples() {
    let mut ctx = RealCtx::new(256).unwrap();
    let s = euler_number_series_oracle(1, &rat(1, 2), &int(0), &tol(), &mut ctx).unwrap();
    assert!((s.value.to_rational() - rat(-2, 5)).abs() <= tol());
    let s = euler_number_series_oracle(0, &rat(1, 3), &int(0), &tol(), &mut ctx).unwrap();
    assert!((s.value.to_rational() - int(1)).abs() <= tol());
    let s = euler_number_series_oracle(2, &rat(1, 2), &int(0), &tol(), &mut ctx).unwrap();
    assert!((s.value.to_rational() - rat(-4, 15)).abs() <= tol());
}

#[test]
fn polynomial_values_agree_with_truncated_series() {
    let mut ctx = RealCtx::new(256).unwrap();
    for (q0, x0) in [(rat(1, 4), rat(1, 2)), (rat(3, 10), rat(3, 4)), (rat(1, 2), int(2))] {
        for n in 0..=6 {
            let v = euler_poly_eval(n, &q0, &x0, &mut ctx).unwrap();
            let s = euler_number_series_oracle(n, &q0, &x0, &tol(), &mut ctx).unwrap();
            let gap = (v.to_rational() - s.value.to_rational()).abs();
            assert!(gap <= tol() * int(2), "q={q0} x={x0} n={n}");
        }
    }
}

#[test]
fn shift_by_one_relation() {
    // q E_{n,q}(1) = -E_{n,q} for n >= 1
    for q0 in [rat(1, 2), rat(2, 7)] {
        let table = euler_numbers(10, 1);
        for n in 1..=10 {
            let at_one = euler_poly_eval_exact(n, &q0, &int(1)).unwrap().unwrap();
            assert_eq!(&q0 * at_one, -table.get(n).eval(&q0).unwrap());
        }
    }
}

#[test]
fn addition_theorem_forms_coincide() {
    let table = euler_numbers(12, 1);
    for n in 0..=12 {
        let first = addition_theorem_expand(n, AdditionForm::First);
        assert_eq!(first, addition_theorem_expand(n, AdditionForm::Second), "n={n}");
        assert_eq!(first, addition_theorem_expand(n, AdditionForm::Direct), "n={n}");
        // y = 0 leaves the one-variable polynomial in X.
        assert_eq!(first.specialize_one(Var::Y), table.poly(n, Arg::x()));
    }
    assert!(addition_theorem_expand(0, AdditionForm::First).as_constant().unwrap().is_one());
}

#[test]
fn polynomial_at_x_zero_is_the_number() {
    for a in [1, 3] {
        let table = euler_numbers(6, a);
        for n in 0..=6 {
            let p = table.poly(n, Arg::scaled_x(a as i64)).specialize_one(Var::X);
            assert_eq!(p.as_constant().unwrap(), *table.get(n));
        }
    }
}
