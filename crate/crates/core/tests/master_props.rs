mod common;

use common::tol;
use hadamard_tl::hadamard::{fourier, is_ghm};
use hadamard_tl::linalg::{unit_root, ONE};
use hadamard_tl::master::{
    check_master_condition, f4_master, f6_master, fourier_master_lifted, ghm_form_residual, master_matrix,
    master_polynomial_eval, nest, search_master_representation, MasterSpec, NestingSpec, NestingStage,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn fourier_spec() -> impl Strategy<Value = MasterSpec> {
    (1usize..=7, 1i64..7)
        .prop_filter("ℓ coprime to n", |(n, l)| common::gcd(*l, *n as i64) == 1)
        .prop_flat_map(|(n, l)| (Just(n), Just(l), prop::collection::vec(0u64..4, n)))
        .prop_map(|(n, l, lifts)| fourier_master_lifted(n, l, &lifts).unwrap())
}

fn f4_spec() -> impl Strategy<Value = MasterSpec> {
    (1u64..=5, -4i64..=4).prop_map(|(k, m)| f4_master(k, 2 * m + 1).unwrap())
}

fn f6_spec() -> impl Strategy<Value = MasterSpec> {
    (2u64..=6)
        .prop_flat_map(|k| (Just(k), 1..k, 1..k))
        .prop_map(|(k, r, s)| f6_master(k, r, s).unwrap())
}

fn stage() -> impl Strategy<Value = NestingStage> {
    (2u64..=3, 1u64..=2).prop_flat_map(|(p, k)| {
        let n = p as usize;
        (prop::collection::vec(0u64..=3, n), prop::collection::vec(0u64..=3, n))
            .prop_map(move |(g, f)| NestingStage { p, k, g, f })
    })
}

fn nesting() -> impl Strategy<Value = NestingSpec> {
    prop::collection::vec(stage(), 1..=3).prop_map(|stages| NestingSpec { stages })
}

fn any_spec() -> impl Strategy<Value = MasterSpec> {
    prop_oneof![fourier_spec(), f4_spec(), f6_spec(), nesting().prop_map(|s| nest(&s).unwrap())]
}

/// Distinct roots of unity and distinct exponents with no structure imposed.
fn random_spec() -> impl Strategy<Value = MasterSpec> {
    (2usize..=5, 2u64..=8).prop_flat_map(|(n, order)| {
        let n = n.min(order as usize);
        (
            Just(order),
            prop::sample::subsequence((0..order).collect::<Vec<_>>(), n),
            prop::sample::subsequence((0u64..10).collect::<Vec<_>>(), n),
        )
            .prop_map(|(order, roots, exps)| {
                let lambdas = roots.iter().map(|&k| unit_root(k as i64, order)).collect();
                MasterSpec::new(lambdas, exps).unwrap()
            })
    })
}

fn perturbed(spec: &MasterSpec, eps: f64) -> MasterSpec {
    let mut lambdas = spec.lambdas().to_vec();
    let last = lambdas.len() - 1;
    lambdas[last] *= Complex64::new(1.0 + eps, 0.0);
    MasterSpec::new(lambdas, spec.exponents().to_vec()).unwrap()
}

proptest! {
    #[test]
    fn constructed_specs_are_ghm(spec in any_spec()) {
        let check = check_master_condition(&spec, &tol());
        prop_assert!(check.passed, "residual {}", check.max_residual);
        let v = is_ghm(&master_matrix(&spec), &tol());
        prop_assert!(v.is_ghm && v.is_chm, "{v:?}");
    }

    #[test]
    fn master_forms_agree(spec in prop_oneof![any_spec(), random_spec(), any_spec().prop_map(|s| perturbed(&s, 0.01))]) {
        let check = check_master_condition(&spec, &tol());
        let other = ghm_form_residual(&spec);
        prop_assert_eq!(check.passed, other <= tol().abs_tol, "{} vs {}", check.max_residual, other);
    }

    #[test]
    fn nest_ratios_are_roots(spec in nesting()) {
        let m = nest(&spec).unwrap();
        let n = m.size() as f64;
        let exps = m.exponents();
        let at_one = master_polynomial_eval(exps, ONE);
        prop_assert!((at_one - Complex64::new(n, 0.0)).norm() <= 1e-12);
        for (i, li) in m.lambdas().iter().enumerate() {
            for (j, lj) in m.lambdas().iter().enumerate() {
                if i != j {
                    prop_assert!(master_polynomial_eval(exps, li / lj).norm() <= tol().abs_tol);
                }
            }
        }
    }

    #[test]
    fn normalization_preserves_master_condition(spec in any_spec()) {
        prop_assert!(check_master_condition(&spec.normalized(), &tol()).passed);
    }
}

#[test]
fn search_recovers_fourier_masters() {
    for n in 1..=5usize {
        for ell in (1..n.max(2) as i64).filter(|l| common::gcd(*l, n as i64) == 1) {
            let f = fourier(n, ell).unwrap();
            let found = search_master_representation(&f, n as u64, n as u64, &tol())
                .unwrap()
                .unwrap_or_else(|| panic!("no spec for n={n}, ℓ={ell}"));
            assert!(master_matrix(&found).max_diff(&f).unwrap() <= tol().abs_tol);
        }
    }
}

#[test]
fn degenerate_specs_rejected() {
    assert!(MasterSpec::new(vec![ONE, ONE], vec![0, 1]).is_err());
    assert!(MasterSpec::new(vec![ONE, -ONE], vec![1, 1]).is_err());
    assert!(MasterSpec::new(vec![ONE, Complex64::new(0.0, 0.0)], vec![0, 1]).is_err());
}
