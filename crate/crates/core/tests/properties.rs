//! Property tests of the library's structural laws, with proptest driving
//! the seeds of the theory-aware generators.

use proptest::prelude::*;

use gatlab_core::formulas::{subst_formula, wf_formula};
use gatlab_core::gen;
use gatlab_core::kernel::{elaborate_theory, Theory, DEFAULT_FUEL};
use gatlab_core::syncat::{pullback_display, ContextMorphism, DisplayMap};
use gatlab_core::theories;

fn cat_eq() -> Theory {
    elaborate_theory(&theories::cat_eq()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_contexts_are_well_formed(seed in any::<u64>()) {
        let th = cat_eq();
        let mut rng = gen::rng_from_seed(seed);
        let ctx = gen::gen_context(&th, &mut rng, 4);
        prop_assert!(th.wf_context(&ctx).is_ok());
    }

    #[test]
    fn generated_formulas_are_well_formed(seed in any::<u64>()) {
        let th = cat_eq();
        let mut rng = gen::rng_from_seed(seed);
        let ctx = gen::gen_context(&th, &mut rng, 4);
        let phi = gen::gen_formula(&th, &mut rng, &ctx, 3);
        prop_assert!(wf_formula(&th, &ctx, &phi).is_ok());
    }

    #[test]
    fn substitution_along_identity_is_the_identity(seed in any::<u64>()) {
        let th = cat_eq();
        let mut rng = gen::rng_from_seed(seed);
        let ctx = gen::gen_context(&th, &mut rng, 4);
        let phi = gen::gen_formula(&th, &mut rng, &ctx, 3);
        let id = ContextMorphism::identity(&ctx);
        prop_assert_eq!(subst_formula(&th, &id, &phi).unwrap(), phi);
    }

    #[test]
    fn generated_morphisms_check(seed in any::<u64>()) {
        let th = cat_eq();
        let mut rng = gen::rng_from_seed(seed);
        let gamma = gen::gen_context(&th, &mut rng, 4);
        let delta = gen::gen_context(&th, &mut rng, 4);
        if let Some(f) = gen::gen_morphism(&th, &mut rng, &delta, &gamma) {
            prop_assert!(f.check(&th).is_ok());
        }
    }

    #[test]
    fn pullback_is_functorial_on_random_data(seed in any::<u64>()) {
        let th = cat_eq();
        let mut rng = gen::rng_from_seed(seed);
        let gamma = gen::gen_context(&th, &mut rng, 3);
        let ext = gen::gen_context(&th, &mut rng, 2);
        // extend gamma by re-checking ext entry by entry; skip seeds whose
        // extension does not typecheck over gamma
        let mut total = gamma.clone();
        for ty in ext.entries() {
            if th.check_type(&total, ty).is_err() {
                return Ok(());
            }
            total.push(ty.clone());
        }
        let p = DisplayMap::new(total, gamma.len()).unwrap();
        let delta = gen::gen_context(&th, &mut rng, 3);
        let eps = gen::gen_context(&th, &mut rng, 3);
        let Some(f) = gen::gen_morphism(&th, &mut rng, &delta, &gamma) else { return Ok(()) };
        let Some(g) = gen::gen_morphism(&th, &mut rng, &eps, &delta) else { return Ok(()) };
        let fg = ContextMorphism::compose(&f, &g).unwrap();
        let direct = pullback_display(&th, &fg, &p).unwrap();
        let through_f = pullback_display(&th, &f, &p).unwrap();
        let through_g = pullback_display(&th, &g, &through_f.display).unwrap();
        prop_assert_eq!(direct.total, through_g.total);
        prop_assert_eq!(
            direct.top,
            ContextMorphism::compose(&through_f.top, &through_g.top).unwrap()
        );
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let th = cat_eq();
        let mut rng = gen::rng_from_seed(seed);
        let ctx = gen::gen_context(&th, &mut rng, 4);
        let Some(f) = gen::gen_morphism(&th, &mut rng, &ctx, &ctx) else { return Ok(()) };
        for t in &f.terms {
            let (once, exhausted) = th.normalize(&ctx, t, DEFAULT_FUEL);
            if exhausted {
                continue;
            }
            let (twice, _) = th.normalize(&ctx, &once, DEFAULT_FUEL);
            prop_assert_eq!(&once, &twice);
        }
    }
}
