use bethe_core::dwpf::{izergin, pdwpf, DwpfInput, PdwpfFormula};
use bethe_core::sample::{nonzero_rat, pole_free_sets, rng};
use bethe_core::scalarprod_su2::*;
use bethe_core::spinchain_su2::*;
use bethe_core::Rat;

#[test]
fn sum_formula_matches_chain() {
    let mut g = rng(10);
    for ell in 1..=3 {
        for _ in 0..20 {
            let s = pole_free_sets(&mut g, &[ell, ell, ell]);
            let a = EigenfunctionSpec::XxxFundamental(s[2].clone());
            let direct = su2_scalar_product_direct(&s[0], &s[1], &s[2]).unwrap();
            assert_eq!(sp_sum(&s[0], &s[1], &a, &EigenfunctionSpec::One).unwrap(), direct);
            // with as many roots as sites the product is Z(lB|w) Z(lC|w)
            assert_eq!(direct, izergin(&s[1], &s[2]).unwrap() * izergin(&s[0], &s[2]).unwrap());
        }
    }
}

fn free_r(xs: &[Rat], seed: u64) -> EigenfunctionSpec {
    let mut g = rng(seed);
    EigenfunctionSpec::table(xs.iter().map(|x| (x.clone(), nonzero_rat(&mut g))))
}

#[test]
fn slavnov_identity_with_free_constants() {
    let mut g = rng(11);
    for ell in 1..=3 {
        for k in 0..5 {
            let s = pole_free_sets(&mut g, &[ell, ell]);
            let r = free_r(&s[0], 100 + k);
            assert_eq!(slavnov_onshell_sum(&s[0], &s[1], &r).unwrap(), slavnov_det(&s[0], &s[1], &r).unwrap());
        }
    }
}

#[test]
fn infinite_forms_and_their_limit() {
    let mut g = rng(12);
    for ell in 1..=3 {
        let s = pole_free_sets(&mut g, &[ell]);
        let r = free_r(&s[0], 200 + ell as u64);
        let sum = sp_infinite(&s[0], &r, InfiniteForm::Sum).unwrap();
        assert_eq!(sp_infinite(&s[0], &r, InfiniteForm::Det).unwrap(), sum);
        assert_eq!(sp_infinite_limit(&s[0], &r).unwrap(), sum, "ell = {ell}");
    }
}

#[test]
fn infinite_form_of_the_chain_is_a_partial_dwpf() {
    let s = pole_free_sets(&mut rng(13), &[2, 3]);
    let r = EigenfunctionSpec::XxxFundamental(s[1].clone());
    let det = sp_infinite(&s[0], &r, InfiniteForm::Det).unwrap();
    let p = pdwpf(&DwpfInput { lambdas: s[0].clone(), ws: s[1].clone() }, PdwpfFormula::Kostov).unwrap();
    assert_eq!(det, p);
}

#[test]
fn normalisation_relation() {
    let s = pole_free_sets(&mut rng(14), &[2, 2, 2]);
    let a = EigenfunctionSpec::XxxFundamental(s[2].clone());
    let d = EigenfunctionSpec::XxxAntiFundamental(vec![Rat::new(9, 2)]);
    let r = EigenfunctionSpec::table(
        s[0].iter().chain(&s[1]).map(|x| (x.clone(), a.eval(x).unwrap().checked_div(&d.eval(x).unwrap()).unwrap())),
    );
    let mut prod_d = Rat::one();
    for x in s[0].iter().chain(&s[1]) {
        prod_d *= d.eval(x).unwrap();
    }
    assert_eq!(sp_sum(&s[0], &s[1], &a, &d).unwrap(), sp_sum_normalized(&s[0], &s[1], &r).unwrap() * prod_d);
}

#[test]
fn numeric_two_site_root_is_an_eigenvector() {
    let w = [Rat::zero(), Rat::new(1, 2)];
    let roots = solve_bethe_numeric(2, &w, 1, 3).unwrap();
    assert_eq!(roots.len(), 1);
    assert!((roots[0].re + 0.25).abs() < 1e-12 && roots[0].im.abs() < 1e-12);
    assert!(transfer_check(&Rat::new(3, 7), &roots, &w).unwrap() < 1e-8);
}
