use bethe_core::dwpf::{izergin, kostov};
use bethe_core::sample::{nonzero_rat, pole_free_sets, rng};
use bethe_core::scalarprod_su2::{slavnov_det, slavnov_onshell_sum, sp_infinite, InfiniteForm};
use bethe_core::scalarprod_su3::{lemma1_check, z_su3_sum, z_su3_sum_audit};
use bethe_core::spinchain_su2::EigenfunctionSpec;
use bethe_core::vertexmodel::{yang_baxter_residual, YbCombo};
use bethe_core::{Rat, RatFunc};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| Rat::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rat_text_round_trip(x in rat()) {
        let back: Rat = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn ratfunc_eval_is_a_ring_map(a in rat(), b in rat(), x in rat()) {
        prop_assume!(&x * &x != b);
        let p = RatFunc::x() * RatFunc::constant(a.clone()) + RatFunc::constant(b.clone());
        let q = RatFunc::x() * RatFunc::x() - RatFunc::constant(b.clone());
        let at = |f: &RatFunc| f.eval(&x).unwrap();
        prop_assert_eq!(at(&(p.clone() * q.clone())), at(&p) * at(&q));
        prop_assert_eq!(at(&(p.clone() + q.clone())), at(&p) + at(&q));
    }

    #[test]
    fn yang_baxter_holds(seed in any::<u64>()) {
        let s = pole_free_sets(&mut rng(seed), &[3]);
        for combo in [YbCombo::Su2, YbCombo::Su3, YbCombo::MixedStar] {
            prop_assert!(yang_baxter_residual(combo, &s[0][0], &s[0][1], &s[0][2]).unwrap().is_zero());
        }
    }

    #[test]
    fn dwpf_symmetric_and_kostov_agrees(seed in any::<u64>(), swap in 0usize..2) {
        let s = pole_free_sets(&mut rng(seed), &[3, 3]);
        let z = izergin(&s[0], &s[1]).unwrap();
        let mut l = s[0].clone();
        l.swap(swap, 2);
        prop_assert_eq!(izergin(&l, &s[1]).unwrap(), z.clone());
        prop_assert_eq!(kostov(&s[0], &s[1]).unwrap(), z);
    }

    #[test]
    fn slavnov_sum_is_the_determinant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = pole_free_sets(&mut g, &[2, 2]);
        let r = EigenfunctionSpec::table(s[0].iter().map(|x| (x.clone(), nonzero_rat(&mut g))));
        prop_assert_eq!(slavnov_onshell_sum(&s[0], &s[1], &r).unwrap(), slavnov_det(&s[0], &s[1], &r).unwrap());
        prop_assert_eq!(
            sp_infinite(&s[0], &r, InfiniteForm::Sum).unwrap(),
            sp_infinite(&s[0], &r, InfiniteForm::Det).unwrap()
        );
    }

    #[test]
    fn z_su3_skips_only_vanishing_terms(seed in any::<u64>(), ell in 1usize..3, m in 1usize..3) {
        let s = pole_free_sets(&mut rng(seed), &[ell, m, ell, m]);
        let a = z_su3_sum_audit(&s[0], &s[1], &s[2], &s[3]).unwrap();
        prop_assert_eq!(a.skipped_nonzero, 0);
        prop_assert_eq!(a.value, z_su3_sum(&s[0], &s[1], &s[2], &s[3]).unwrap());
    }

    #[test]
    fn lemma1_holds(seed in any::<u64>(), m in 0usize..3) {
        let s = pole_free_sets(&mut rng(seed), &[2, m, 2]);
        let (lhs, rhs) = lemma1_check(&s[0], &s[1], &s[2]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
