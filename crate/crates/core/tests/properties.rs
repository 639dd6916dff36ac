use circulant::arithmetic::{decompose, expected_coefficient, square_free_part};
use circulant::chebyshev::precise::Complex;
use circulant::chebyshev::{
    build_even_char, cheb_eval_large, cheb_t, find_roots, outer_preimage, tau_even,
    tau_even_u_form, tau_family, tau_formula,
};
use circulant::exact::tau_oracle_family;
use circulant::mahler::{associated_laurent, mahler_quadrature, mahler_root_product};
use circulant::{tau_oracle, CirculantSpec, Family, OracleConfig, StepFamily};
use dashu_int::{IBig, UBig};
use proptest::prelude::*;

fn step_set(max_step: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::btree_set(1..=max_step, 1..=max_len)
        .prop_map(|s| s.into_iter().collect::<Vec<u64>>())
}

/// Connected canonical specs of either family, at most 40 vertices.
fn connected_spec() -> impl Strategy<Value = CirculantSpec> {
    (3u64..=20, step_set(6, 3), any::<bool>()).prop_filter_map(
        "needs a connected canonical spec",
        |(n, steps, diag)| {
            let order = if diag { n / 2 + 1 } else { 2 * n };
            let raw: Vec<i64> = steps.iter().map(|&s| s as i64).collect();
            CirculantSpec::canonicalize(order, &raw, diag)
                .ok()
                .filter(|s| s.is_connected())
        },
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_a_fixed_point(spec in connected_spec()) {
        let raw: Vec<i64> = spec.steps().iter().map(|&s| s as i64).collect();
        let again = CirculantSpec::canonicalize(spec.order(), &raw, spec.is_diagonal()).unwrap();
        prop_assert_eq!(&again, &spec);
        prop_assert_eq!(spec.to_string().parse::<CirculantSpec>().unwrap(), spec);
    }

    #[test]
    fn closed_form_matches_oracle(spec in connected_spec()) {
        let oracle = tau_oracle(&spec, &OracleConfig::default()).unwrap();
        prop_assert_eq!(tau_formula(&spec).unwrap(), oracle.clone());
        if spec.family() == Family::Even {
            prop_assert_eq!(tau_even_u_form(&spec).unwrap(), oracle);
        }
    }

    #[test]
    fn tree_count_is_divisible_by_order(spec in connected_spec()) {
        let tau = tau_oracle(&spec, &OracleConfig::default()).unwrap();
        prop_assert_eq!(tau.value() % UBig::from(spec.order()), UBig::ZERO);
    }

    #[test]
    fn conjugate_specs_share_tree_counts(spec in connected_spec(), r in 1u64..200) {
        let n = spec.vertex_count();
        prop_assume!(gcd(r % n, n) == 1);
        let image = spec.conjugate(r).unwrap();
        let cfg = OracleConfig::default();
        prop_assert_eq!(tau_oracle(&image, &cfg).unwrap(), tau_oracle(&spec, &cfg).unwrap());
    }

    #[test]
    fn eigenvalue_product_gives_tree_count(spec in connected_spec()) {
        let big_n = spec.vertex_count();
        let log_product: f64 = (1..big_n).map(|j| spec.eigenvalue(j).ln()).sum();
        let predicted = log_product - (big_n as f64).ln();
        let tau = tau_oracle(&spec, &OracleConfig::default()).unwrap();
        let actual = circulant::mahler::ln_ubig(tau.value());
        prop_assert!((predicted - actual).abs() < 1e-9, "{} vs {}", predicted, actual);
    }

    #[test]
    fn decomposition_holds(spec in connected_spec()) {
        let tau = tau_oracle(&spec, &OracleConfig::default()).unwrap();
        let d = decompose(&spec, &tau).unwrap();
        prop_assert_eq!(d.coefficient, expected_coefficient(&spec).unwrap());
        let rebuilt = UBig::from(d.coefficient) * UBig::from(spec.order()) * &d.a * &d.a;
        prop_assert_eq!(&rebuilt, tau.value());
    }

    #[test]
    fn family_closed_form_matches_multigraph_oracle(
        steps in step_set(5, 3),
        n in 1u64..=9,
        diag in any::<bool>(),
    ) {
        let family = if diag { Family::Diagonal } else { Family::Even };
        let fam = StepFamily::new(&steps, family).unwrap();
        prop_assume!(fam.is_connected_at(n));
        let oracle = tau_oracle_family(&fam, n, &OracleConfig::default()).unwrap();
        prop_assert_eq!(tau_family(&fam, n).unwrap(), oracle);
    }

    #[test]
    fn square_free_part_splits(m in 1u64..1_000_000_000_000) {
        let q = square_free_part(m);
        prop_assert_eq!(m % q, 0);
        let r2 = m / q;
        let r = (r2 as f64).sqrt().round() as u64;
        prop_assert_eq!(r * r, r2);
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
            prop_assert!(!q.is_multiple_of(p * p));
        }
    }

    #[test]
    fn chebyshev_composition(a in 0usize..8, b in 0usize..8) {
        let inner = cheb_t(b);
        let outer = cheb_t(a);
        // T_a(T_b(x)) = T_{ab}(x) at integer points
        for x in -3i64..=3 {
            let x = IBig::from(x);
            prop_assert_eq!(outer.eval(&inner.eval(&x)), cheb_t(a * b).eval(&x));
        }
    }

    #[test]
    fn large_evaluation_matches_polynomial(num in -40i64..40, n in 0usize..25) {
        let w = num as f64 / 8.0;
        let exact = cheb_t(n)
            .to_f64()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * w + c);
        let fast = cheb_eval_large(&Complex::from_f64(w, 0.0, 256), n as u64).to_c64();
        prop_assert!((fast.re - exact).abs() <= 1e-9 * exact.abs().max(1.0));
        prop_assert!(fast.im.abs() <= 1e-9 * exact.abs().max(1.0));
    }

    #[test]
    fn characteristic_roots_avoid_the_unit_circle(steps in step_set(7, 3)) {
        let d = steps.iter().fold(0, |g, &s| gcd(g, s));
        prop_assume!(d == 1 && *steps.last().unwrap() > 1);
        let p = build_even_char(&steps).unwrap();
        prop_assert_eq!(p.eval(&IBig::ONE), IBig::from(steps.iter().map(|s| s * s).sum::<u64>()));
        let roots = find_roots(&p, 128).unwrap();
        for r in roots.to_c64() {
            prop_assert!(outer_preimage(r).norm() > 1.0 + 1e-9);
        }
    }

    #[test]
    fn measure_is_invariant_under_step_scaling(steps in step_set(4, 3), d in 2u64..=4, diag in any::<bool>()) {
        let family = if diag { Family::Diagonal } else { Family::Even };
        let scaled: Vec<u64> = steps.iter().map(|s| s * d).collect();
        let a = mahler_root_product(&associated_laurent(&steps, family).unwrap()).value;
        let b = mahler_root_product(&associated_laurent(&scaled, family).unwrap()).value;
        prop_assert!((a - b).abs() <= 1e-9 * a);
    }

    #[test]
    fn root_product_and_quadrature_agree(steps in step_set(6, 3), diag in any::<bool>()) {
        let family = if diag { Family::Diagonal } else { Family::Even };
        let spectrum = associated_laurent(&steps, family).unwrap();
        prop_assert!(spectrum.is_palindromic());
        prop_assert_eq!(spectrum.multiplicity_at_one(), 2);
        let a = mahler_root_product(&spectrum);
        let b = mahler_quadrature(&spectrum).unwrap();
        prop_assert!((a.value - b.value).abs() <= 1e-8 * a.value.max(1.0));
        prop_assert!(a.value >= 1.0);
    }
}

#[test]
fn fibonacci_family_through_forty() {
    let fam = StepFamily::new(&[1, 2], Family::Even).unwrap();
    let (mut f0, mut f1) = (UBig::ZERO, UBig::ONE);
    for n in 1..=40u64 {
        if n >= 5 {
            let tau = tau_even(&fam.at(n).unwrap()).unwrap();
            assert_eq!(tau.value(), &(UBig::from(n) * &f1 * &f1));
        }
        (f0, f1) = (f1.clone(), f0 + f1);
    }
}
