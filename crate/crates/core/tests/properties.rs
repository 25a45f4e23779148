use filbert_core::closedform::AnyMatrix;
use filbert_core::exact::{fib_rising_ext, rising_factorial_ext};
use filbert_core::hankel::cleared_identity_check;
use filbert_core::sequences::{
    fibonacci, fibonacci_poly, fibonacci_poly_at, fibonomial, x_fibonomial, x_fibonomial_at,
};
use filbert_core::{
    assemble_inverse, bareiss_inverse, build_reciprocal_hankel, mat_mul, Error, ExactMatrix, FamilySpec, IntPoly,
    Integer, MatrixSpec, Rational,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(p, q)| Rational::new(Integer::from(p), Integer::from(q)).unwrap())
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (any::<i128>(), 1u64..).prop_map(|(p, q)| Rational::new(Integer::from(p), Integer::from(q)).unwrap())
}

fn poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-50i64..50, 0..max_len).prop_map(|c| IntPoly::from_i64s(&c))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::Fibonacci),
        Just(FamilySpec::Hilbert),
        Just(FamilySpec::A),
        Just(FamilySpec::C),
        (1u32..6).prop_map(|r| FamilySpec::B { r }),
        (2u32..6).prop_map(|r| FamilySpec::D { r }),
    ]
}

fn square_matrix(max_n: usize) -> impl Strategy<Value = ExactMatrix<Rational>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-9i64..10, 1i64..4), n * n).prop_map(move |cells| {
            let entries = cells
                .into_iter()
                .map(|(p, q)| Rational::new(Integer::from(p), Integer::from(q)).unwrap())
                .collect();
            ExactMatrix::new(n, n, entries).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_render_parse_round_trip(a in big_rational()) {
        let text = a.to_string();
        prop_assert!(text.contains('/'));
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
            prop_assert_eq!(&b * &b.inv().unwrap(), Rational::one());
        } else {
            prop_assert_eq!(a.checked_div(&b), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn poly_exact_division_round_trip(a in poly(8), b in nonzero_poly(6)) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn poly_inexact_division_reports_remainder(a in poly(6), b in nonzero_poly(5), c in nonzero_poly(5)) {
        let deg_b = b.degree().unwrap();
        prop_assume!(deg_b >= 1);
        // truncate c below deg b
        let c = IntPoly::new(c.coeffs().iter().take(deg_b).cloned().collect());
        prop_assume!(!c.is_zero());
        match (&(&a * &b) + &c).exact_div(&b) {
            Err(Error::InexactDivision { .. }) => {}
            other => prop_assert!(false, "expected InexactDivision, got {:?}", other),
        }
    }

    #[test]
    fn poly_evaluation_is_a_ring_map(a in poly(7), b in poly(7), x in -20i64..20) {
        let x = Integer::from(x);
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!((&a - &b).eval(&x), a.eval(&x) - b.eval(&x));
    }

    #[test]
    fn rising_factorial_splits(a in 1i64..20, m in -10i64..10, k in -10i64..10) {
        prop_assume!(a + m >= 1 && a + m + k >= 1);
        let whole = rising_factorial_ext(a, m + k).unwrap();
        let split = rising_factorial_ext(a, m).unwrap() * rising_factorial_ext(a + m, k).unwrap();
        prop_assert_eq!(whole, split);
        let whole = fib_rising_ext(a, m + k).unwrap();
        let split = fib_rising_ext(a, m).unwrap() * fib_rising_ext(a + m, k).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn rising_factorial_positive_steps(a in 1i64..30, m in 0i64..12) {
        let direct: Integer = (0..m).map(|t| Integer::from(a + t)).product();
        prop_assert_eq!(rising_factorial_ext(a, m).unwrap(), Rational::from_integer(direct));
    }

    #[test]
    fn fibonomial_symmetry_and_recurrence(n in 1i64..40, k in 0i64..40) {
        prop_assume!(k <= n);
        prop_assert_eq!(fibonomial(n, k).unwrap(), fibonomial(n, n - k).unwrap());
        if k >= 1 {
            let lhs = fibonomial(n, k).unwrap();
            let rhs = fibonacci(k - 1).unwrap() * fibonomial(n - 1, k).unwrap()
                + fibonacci(n - k + 1).unwrap() * fibonomial(n - 1, k - 1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn x_fibonomial_specialisations(n in 0i64..14, k in 0i64..14, x in 1i64..6) {
        prop_assume!(k <= n);
        let p = x_fibonomial(n, k).unwrap();
        prop_assert_eq!(p.eval(&Integer::from(1)), fibonomial(n, k).unwrap());
        prop_assert_eq!(p.eval(&Integer::from(x)), x_fibonomial_at(n, k, &Integer::from(x)).unwrap());
        prop_assert_eq!(x_fibonomial(n, n - k).unwrap(), p);
    }

    #[test]
    fn fibonacci_poly_pointwise(n in 0i64..60, x in -6i64..7) {
        let x = Integer::from(x);
        prop_assert_eq!(fibonacci_poly(n).unwrap().eval(&x), fibonacci_poly_at(n, &x).unwrap());
    }

    #[test]
    fn reciprocal_hankel_is_symmetric_and_persymmetric(f in family(), n in 1usize..9) {
        let r = build_reciprocal_hankel(&f, n).unwrap();
        prop_assert!(r.is_symmetric());
        for i in 1..=n {
            for j in 1..=n {
                if i < n && j >= 2 {
                    prop_assert_eq!(r.entry(i, j), r.entry(i + 1, j - 1));
                }
            }
        }
    }

    #[test]
    fn closed_inverses_are_symmetric(f in family(), n in 1usize..8) {
        let inv = assemble_inverse(&MatrixSpec::of(f, n).unwrap()).unwrap();
        prop_assert!(inv.is_symmetric());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bareiss_inverts_random_matrices(m in square_matrix(8)) {
        let n = m.n_rows();
        match bareiss_inverse(&m) {
            Ok(inv) => {
                prop_assert_eq!(mat_mul(&m, &inv).unwrap(), ExactMatrix::identity(n));
                prop_assert_eq!(mat_mul(&inv, &m).unwrap(), ExactMatrix::identity(n));
            }
            Err(Error::Singular) => {
                // det(m) = det(m^T)
                prop_assert_eq!(bareiss_inverse(&m.transpose()), Err(Error::Singular));
            }
            Err(e) => prop_assert!(false, "unexpected error {:?}", e),
        }
    }

    #[test]
    fn bareiss_detects_dependent_rows(m in square_matrix(6), scale in -3i64..4) {
        let n = m.n_rows();
        prop_assume!(n >= 2);
        let mut entries = m.entries().to_vec();
        for j in 0..n {
            entries[n + j] = &entries[j] * &Rational::from(scale);
        }
        let dependent = ExactMatrix::new(n, n, entries).unwrap();
        prop_assert_eq!(bareiss_inverse(&dependent), Err(Error::Singular));
    }

    #[test]
    fn cleared_check_catches_any_perturbation(n in 1usize..6, i in 0usize..6, j in 0usize..6, d in 0usize..4, c in prop_oneof![-3i64..0, 1i64..4]) {
        let (i, j) = (i % n + 1, j % n + 1);
        let spec = MatrixSpec::of(FamilySpec::FibPoly, n).unwrap();
        let v = match assemble_inverse(&spec).unwrap() {
            AnyMatrix::Poly(v) => v,
            AnyMatrix::Rational(_) => unreachable!(),
        };
        let bump = IntPoly::monomial(Integer::from(c), d);
        let report = cleared_identity_check(&spec, |a, b| {
            let e = v.entry(a, b).clone();
            Ok(if (a, b) == (i, j) { &e + &bump } else { e })
        })
        .unwrap();
        prop_assert!(!report.identity_holds);
        // only row i of the product changes
        prop_assert_eq!(report.first_failure.unwrap().i, i);
    }
}

#[test]
fn fibpoly_inverse_at_one_is_the_filbert_inverse() {
    for n in 1..=8 {
        let v = assemble_inverse(&MatrixSpec::of(FamilySpec::FibPoly, n).unwrap()).unwrap();
        let w = assemble_inverse(&MatrixSpec::of(FamilySpec::Fibonacci, n).unwrap()).unwrap();
        assert_eq!(&v.eval_at(&Integer::from(1)), w.as_rational().unwrap(), "n={n}");
    }
}
