//! Model-enumeration counts and soundness at small bounds.

use std::ops::ControlFlow;

use gatlab_core::kernel::elaborate_theory;
use gatlab_core::theories;

fn count_models(th: &gatlab_core::Theory, bound: usize) -> usize {
    let mut n = 0;
    let _ = gatlab_core::formulas::for_each_model(th, bound, &mut |m| {
        m.check(th).expect("enumerated model checks");
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

#[test]
fn graph_model_counts_match_the_closed_form() {
    // a graph model is a vertex set V and one edge set per ordered pair, so
    // with carrier sizes at most b there are sum_{v<=b} (b+1)^(v^2) models
    let th = elaborate_theory(&theories::graph()).unwrap();
    for bound in [0usize, 1, 2, 3] {
        let expected: usize = (0..=bound).map(|v| (bound + 1).pow((v * v) as u32)).sum();
        assert_eq!(count_models(&th, bound), expected, "bound {bound}");
    }
}

#[test]
fn category_models_at_bound_one_are_empty_and_point() {
    let th = elaborate_theory(&theories::cat_eq()).unwrap();
    assert_eq!(count_models(&th, 1), 2);
}

#[test]
fn category_models_at_bound_two_include_the_named_small_categories() {
    use gatlab_core::cat::{from_model, to_model};
    let th = elaborate_theory(&theories::cat_eq()).unwrap();
    let mut decoded = Vec::new();
    let _ = gatlab_core::formulas::for_each_model(&th, 2, &mut |m| {
        m.check(&th).expect("enumerated model checks");
        decoded.push(from_model(&th, m).expect("every enumerated model is a category"));
        ControlFlow::Continue(())
    });
    // the canonical encodings of some known categories all occur
    let corpus = gatlab_core::cat::corpus::seed_categories();
    for want in corpus.iter().filter(|c| {
        c.object_count() <= 2
            && (0..c.object_count())
                .all(|x| (0..c.object_count()).all(|y| c.hom(x, y).len() <= 2))
    }) {
        let want_model = to_model(&th, want);
        let found = decoded.iter().any(|c| {
            // compare shapes: object count, hom sizes, and composition
            // tables, which determine the category up to element naming
            c.object_count() == want.object_count()
                && to_model(&th, &rename_elements(c)) == to_model(&th, &rename_elements(want))
        });
        assert!(found, "{} does not occur in the bound-2 enumeration", want.name);
        let _ = want_model;
    }
}

/// Renames all objects and arrows canonically so that two categories with
/// the same tables compare equal.
fn rename_elements(cat: &gatlab_core::cat::FinCategory) -> gatlab_core::cat::FinCategory {
    use std::collections::BTreeMap;
    let n = cat.object_count();
    let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let mut homs = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let names: Vec<String> =
                (0..cat.hom(x, y).len()).map(|k| format!("a{x}_{y}_{k}")).collect();
            homs.insert((x, y), names);
            for z in 0..n {
                let mut table = Vec::new();
                for f in 0..cat.hom(x, y).len() {
                    let mut row = Vec::new();
                    for g in 0..cat.hom(y, z).len() {
                        row.push(
                            cat.compose(
                                gatlab_core::cat::Arrow { src: x, tgt: y, idx: f },
                                gatlab_core::cat::Arrow { src: y, tgt: z, idx: g },
                            )
                            .idx,
                        );
                    }
                    table.push(row);
                }
                comp.insert((x, y, z), table);
            }
        }
    }
    let ids = (0..n).map(|x| cat.id_arrow(x).idx).collect();
    gatlab_core::cat::FinCategory::new("canon", objects, homs, comp, ids).unwrap()
}

#[test]
fn sig_eq_models_are_exactly_pointed_magmas() {
    // a model of the pointed-magma signature theory is a carrier M, a unit
    // element and a binary table, with the equality sort forced to the
    // singleton-iff-equal pattern: sum over |M| <= 2 of |M|^(|M|^2) * |M|
    // gives 1 + 32 = 33 models (|M| = 0 dies on the unit constant)
    let th = elaborate_theory(&theories::sig_eq(&theories::sig_pointed_magma())).unwrap();
    let eq_sort = th.sort_by_name("EqM").unwrap();
    let mut count = 0usize;
    let _ = gatlab_core::formulas::for_each_model(&th, 2, &mut |m| {
        m.check(&th).expect("enumerated model checks");
        let carrier_len = m.carrier(th.sort_by_name("M").unwrap(), &[]).unwrap().len();
        for a in 0..carrier_len {
            for b in 0..carrier_len {
                let fiber = m.carrier(eq_sort, &[a, b]).unwrap().len();
                assert_eq!(fiber, usize::from(a == b), "equality fibers must be forced");
            }
        }
        count += 1;
        ControlFlow::Continue(())
    });
    assert_eq!(count, 33);
}

#[test]
fn chain_models_respect_the_cycle_type_equality() {
    // at bound 1 everything is forced: Z0 = {0} by the zero constant,
    // Z1 = {0}, and C1(0) must be bit-identical to Z1
    let th = elaborate_theory(&theories::chain_f2(1)).unwrap();
    let z1 = th.sort_by_name("Z1").unwrap();
    let c1 = th.sort_by_name("C1").unwrap();
    let mut count = 0usize;
    let _ = gatlab_core::formulas::for_each_model(&th, 1, &mut |m| {
        m.check(&th).expect("enumerated model checks");
        assert_eq!(m.carrier(c1, &[0]), m.carrier(z1, &[]));
        count += 1;
        ControlFlow::Continue(())
    });
    assert_eq!(count, 1);
}
