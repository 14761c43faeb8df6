mod common;

use gtl::formula::negative_translation;
use gtl::semantics::*;
use gtl::Formula;
use num_rational::Rational64;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn bit(b: bool) -> Rational64 {
    if b {
        Rational64::one()
    } else {
        Rational64::zero()
    }
}

/// 500 crisp models, each with a fresh classical formula, at every time.
#[test]
fn crisp_correspondence() {
    let mut r = rng(5);
    for _ in 0..500 {
        let k = r.gen_range(1..=4);
        let vs = common::some_vars(&mut r);
        let m = common::random_crisp(&mut r, k, vs);
        let f = common::random(&mut r, 6, vs, true);
        let nf = negative_translation(&f).unwrap();
        let c = crispify(&m);
        for t in 0..k {
            let truth = ltl_eval(&m, &f, t).unwrap();
            assert_eq!(eval_real(&c, &nf, t).unwrap(), bit(truth), "{nf} at {t} on {m:?}");
            assert_eq!(eval_real(&c, &f, t).unwrap(), bit(truth), "{f} at {t} on {m:?}");
        }
    }
}

/// The translation reads a real model through its positive support.
#[test]
fn translation_sees_the_crisp_shadow() {
    let mut r = rng(6);
    for _ in 0..500 {
        let k = r.gen_range(1..=4);
        let vs = common::some_vars(&mut r);
        let m = common::random_real(&mut r, k, vs);
        let f = common::random(&mut r, 6, vs, true);
        let nf = negative_translation(&f).unwrap();
        let shadow = crisp_shadow(&m);
        for t in 0..k {
            assert_eq!(eval_real(&m, &nf, t).unwrap(), bit(ltl_eval(&shadow, &f, t).unwrap()), "{nf} at {t}");
        }
    }
}

fn case(seed: u64) -> (ChaCha8Rng, usize, &'static [&'static str]) {
    let mut r = rng(seed);
    let k = r.gen_range(1..=4);
    let vs = common::some_vars(&mut r);
    (r, k, vs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn goedel_algebra_laws(seed in any::<u64>()) {
        let (mut r, k, vs) = case(seed);
        let m = common::random_real(&mut r, k, vs);
        let a = common::random(&mut r, 4, vs, false);
        let b = common::random(&mut r, 4, vs, false);
        let c = common::random(&mut r, 3, vs, false);
        let t = r.gen_range(0..k);
        let v = |f: &Formula| eval_real(&m, f, t).unwrap();
        let (va, vb, vc) = (v(&a), v(&b), v(&c));
        for x in [va, vb, vc] {
            prop_assert!(x >= Rational64::zero() && x <= Rational64::one());
        }
        let one = Rational64::one();
        let (and, or, imp, co) = (Formula::and, Formula::or, Formula::imp, Formula::coimp);
        let (a_, b_, c_) = (|| a.clone(), || b.clone(), || c.clone());
        prop_assert_eq!(v(&and(a_(), b_())), va.min(vb));
        prop_assert_eq!(v(&or(a_(), b_())), va.max(vb));
        prop_assert_eq!(v(&imp(a_(), a_())), one);
        prop_assert_eq!(v(&co(a_(), a_())), Rational64::zero());
        prop_assert_eq!(v(&or(imp(a_(), b_()), imp(b_(), a_()))), one);
        // residuation: a & b <= c iff a <= b -> c
        prop_assert_eq!(va.min(vb) <= vc, va <= v(&imp(b_(), c_())));
        // co-residuation: a <= b | c iff a -< b <= c
        prop_assert_eq!(va <= vb.max(vc), v(&co(a_(), b_())) <= vc);
    }

    #[test]
    fn downward_persistence(seed in any::<u64>()) {
        let (mut r, k, vs) = case(seed);
        let worlds = r.gen_range(1..=3);
        let m = common::random_bi_model(&mut r, worlds, k, vs);
        let f = common::random(&mut r, 6, vs, false);
        for t in 0..k {
            for w in 0..worlds {
                // index w + 1 lies below w
                if w + 1 < worlds && eval_bi(&m, &f, w, t).unwrap() {
                    prop_assert!(eval_bi(&m, &f, w + 1, t).unwrap(), "{} at ({}, {})", f, w, t);
                }
            }
        }
    }

    #[test]
    fn horizon_two_periods_suffices(seed in any::<u64>()) {
        let (mut r, k, vs) = case(seed);
        let m = common::random_real(&mut r, k, vs);
        let f = common::random(&mut r, 6, vs, false);
        let long = EvalOptions { horizon: 4, ..Default::default() };
        for t in 0..k {
            prop_assert_eq!(eval_real(&m, &f, t).unwrap(), eval_real_with(&m, &f, t, &long).unwrap(), "{}", f);
        }
        let bi = common::random_bi_model(&mut r, 2, k, vs);
        for t in 0..k {
            for w in 0..2 {
                prop_assert_eq!(eval_bi(&bi, &f, w, t).unwrap(), eval_bi_with(&bi, &f, w, t, &long).unwrap());
            }
        }
    }

    #[test]
    fn real_and_bi_agree_on_crisp_models(seed in any::<u64>()) {
        let (mut r, k, vs) = case(seed);
        let m = common::random_crisp(&mut r, k, vs);
        let f = common::random(&mut r, 6, vs, false);
        let c = crispify(&m);
        for t in 0..k {
            let real = eval_real(&c, &f, t).unwrap();
            prop_assert!(real.is_zero() || real.is_one());
            prop_assert_eq!(real.is_one(), eval_bi(&m.model, &f, 0, t).unwrap(), "{}", f);
        }
    }

    #[test]
    fn bi_matches_classical_on_one_world(seed in any::<u64>()) {
        let (mut r, k, vs) = case(seed);
        let m = common::random_crisp(&mut r, k, vs);
        let f = common::random(&mut r, 6, vs, true);
        for t in 0..k {
            prop_assert_eq!(eval_bi(&m.model, &f, 0, t).unwrap(), ltl_eval(&m, &f, t).unwrap(), "{}", f);
        }
    }
}
