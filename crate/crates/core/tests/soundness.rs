//! Soundness of the bounded equality decision against finite-model
//! semantics, and the algebraic laws of the syntactic category on random
//! data.

use gatlab_core::cat::corpus::seed_categories;
use gatlab_core::cat::to_model;
use gatlab_core::gen;
use gatlab_core::kernel::{elaborate_theory, Verdict, DEFAULT_FUEL};
use gatlab_core::syncat::ContextMorphism;
use gatlab_core::theories;

#[test]
fn yes_verdicts_hold_in_every_checked_model() {
    // if terms_equal says Yes, the two terms evaluate identically in every
    // corpus model at every tuple of the context
    let th = elaborate_theory(&theories::cat_eq()).unwrap();
    let models: Vec<_> = seed_categories().iter().map(|c| to_model(&th, c)).collect();
    let mut rng = gen::rng_from_seed(11);
    let mut yes_cases = 0usize;
    for _ in 0..400 {
        let ctx = gen::gen_context(&th, &mut rng, 4);
        // draw two random terms of a shared type from the bank via a random
        // morphism trick: substitute into a random codomain entry
        let Some(f) = gen::gen_morphism(&th, &mut rng, &ctx, &ctx) else { continue };
        for (s, t) in f.terms.iter().zip(ContextMorphism::identity(&ctx).terms.iter()) {
            let Ok(ty) = th.infer_type(&ctx, s) else { continue };
            if th.terms_equal(&ctx, s, t, &ty, DEFAULT_FUEL) != Verdict::Yes {
                continue;
            }
            yes_cases += 1;
            for m in &models {
                for x in m.enumerate_context(&ctx) {
                    assert_eq!(
                        m.try_eval_term(s, &x),
                        m.try_eval_term(t, &x),
                        "Yes verdict broken semantically"
                    );
                }
            }
        }
    }
    assert!(yes_cases > 50, "too few Yes cases exercised ({yes_cases})");
}

#[test]
fn normalize_preserves_evaluation() {
    let th = elaborate_theory(&theories::cat()).unwrap();
    let models: Vec<_> = seed_categories().iter().map(|c| to_model(&th, c)).collect();
    let mut rng = gen::rng_from_seed(23);
    let mut cases = 0usize;
    for _ in 0..300 {
        let ctx = gen::gen_context(&th, &mut rng, 4);
        let Some(f) = gen::gen_morphism(&th, &mut rng, &ctx, &ctx) else { continue };
        for t in &f.terms {
            let (nf, exhausted) = th.normalize(&ctx, t, DEFAULT_FUEL);
            if exhausted {
                continue;
            }
            cases += 1;
            for m in &models {
                for x in m.enumerate_context(&ctx) {
                    assert_eq!(m.try_eval_term(t, &x), m.try_eval_term(&nf, &x));
                }
            }
        }
    }
    assert!(cases > 50, "too few cases exercised ({cases})");
}

#[test]
fn composition_of_morphisms_is_associative_and_unital() {
    let th = elaborate_theory(&theories::cat_eq()).unwrap();
    let mut rng = gen::rng_from_seed(5);
    let mut checked = 0usize;
    while checked < 120 {
        let a = gen::gen_context(&th, &mut rng, 3);
        let b = gen::gen_context(&th, &mut rng, 3);
        let c = gen::gen_context(&th, &mut rng, 3);
        let d = gen::gen_context(&th, &mut rng, 3);
        let Some(f) = gen::gen_morphism(&th, &mut rng, &a, &b) else { continue };
        let Some(g) = gen::gen_morphism(&th, &mut rng, &b, &c) else { continue };
        let Some(h) = gen::gen_morphism(&th, &mut rng, &c, &d) else { continue };
        // h . (g . f) == (h . g) . f
        let left = ContextMorphism::compose(&h, &ContextMorphism::compose(&g, &f).unwrap()).unwrap();
        let right =
            ContextMorphism::compose(&ContextMorphism::compose(&h, &g).unwrap(), &f).unwrap();
        assert_eq!(left, right);
        // units
        let id_a = ContextMorphism::identity(&a);
        let id_b = ContextMorphism::identity(&b);
        assert_eq!(ContextMorphism::compose(&f, &id_a).unwrap(), f);
        assert_eq!(ContextMorphism::compose(&id_b, &f).unwrap(), f);
        checked += 1;
    }
}
