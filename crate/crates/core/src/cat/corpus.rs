//! The builtin corpus: seed categories, equivalence and anodyne-fibration
//! generation (object duplication with a chosen iso, collapse, full
//! inclusions, automorphisms), the six-formula corpus, and the exhaustive
//! sweep drivers used by the invariance suites.

use std::collections::BTreeMap;

use crate::cat::{path_object, to_model, Arrow, FinCategory, Functor};
use crate::formulas::Formula;
use crate::kernel::{Context, TermExpr, Theory, TypeExpr};
use crate::semantics::ContextElement;

/// Builds a category from name-based tables. `comps` lists the composites of
/// non-identity pairs; compositions with an identity are filled in
/// automatically.
pub fn build_category(
    name: &str,
    objects: &[&str],
    arrows: &[(&str, &str, &str)],
    ids: &[&str],
    comps: &[(&str, &str, &str)],
) -> FinCategory {
    let object_names: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    let n = object_names.len();
    let obj = |s: &str| object_names.iter().position(|o| o == s).expect("unknown object");
    let mut homs: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            homs.insert((x, y), Vec::new());
        }
    }
    for (arrow, src, tgt) in arrows {
        homs.get_mut(&(obj(src), obj(tgt))).unwrap().push(arrow.to_string());
    }
    let locate = |s: &str| -> Arrow {
        for ((x, y), names) in &homs {
            if let Some(idx) = names.iter().position(|a| a == s) {
                return Arrow { src: *x, tgt: *y, idx };
            }
        }
        panic!("unknown arrow `{s}`");
    };
    let id_arrows: Vec<Arrow> = ids.iter().map(|s| locate(s)).collect();
    let mut comp: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let table =
                    vec![vec![usize::MAX; homs[&(y, z)].len()]; homs[&(x, y)].len()];
                comp.insert((x, y, z), table);
            }
        }
    }
    let mut set = |f: Arrow, g: Arrow, fg: Arrow| {
        comp.get_mut(&(f.src, f.tgt, g.tgt)).unwrap()[f.idx][g.idx] = fg.idx;
    };
    for (x, &idx) in id_arrows.iter().enumerate() {
        assert_eq!((idx.src, idx.tgt), (x, x), "identity of wrong shape");
    }
    let all_arrows: Vec<Arrow> = {
        let mut v = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for idx in 0..homs[&(x, y)].len() {
                    v.push(Arrow { src: x, tgt: y, idx });
                }
            }
        }
        v
    };
    for &a in &all_arrows {
        set(id_arrows[a.src], a, a);
        set(a, id_arrows[a.tgt], a);
    }
    for (f, g, fg) in comps {
        set(locate(f), locate(g), locate(fg));
    }
    let ids_idx: Vec<usize> = id_arrows.iter().map(|a| a.idx).collect();
    FinCategory::new(name, object_names, homs, comp, ids_idx)
        .unwrap_or_else(|e| panic!("bad category `{name}`: {e}"))
}

/// Builds a functor by naming object and arrow images. Identity arrows are
/// mapped automatically.
pub fn functor_by_names(
    name: &str,
    source: &FinCategory,
    target: &FinCategory,
    objects: &[(&str, &str)],
    arrows: &[(&str, &str)],
) -> Functor {
    let find_obj = |cat: &FinCategory, s: &str| {
        cat.objects().iter().position(|o| o == s).expect("unknown object")
    };
    let find_arrow = |cat: &FinCategory, s: &str| {
        cat.arrows()
            .into_iter()
            .find(|&a| cat.arrow_name(a) == s)
            .unwrap_or_else(|| panic!("unknown arrow `{s}`"))
    };
    let mut ob_map = vec![usize::MAX; source.object_count()];
    for (from, to) in objects {
        ob_map[find_obj(source, from)] = find_obj(target, to);
    }
    let mut assignments: BTreeMap<(usize, usize, usize), Arrow> = BTreeMap::new();
    for (x, &fx) in ob_map.iter().enumerate() {
        let id = source.id_arrow(x);
        assignments.insert((id.src, id.tgt, id.idx), target.id_arrow(fx));
    }
    for (from, to) in arrows {
        let a = find_arrow(source, from);
        assignments.insert((a.src, a.tgt, a.idx), find_arrow(target, to));
    }
    let mut arrow_map = BTreeMap::new();
    for x in 0..source.object_count() {
        for y in 0..source.object_count() {
            let map: Vec<usize> = (0..source.hom(x, y).len())
                .map(|idx| {
                    let image = assignments
                        .get(&(x, y, idx))
                        .unwrap_or_else(|| panic!("arrow image missing in functor `{name}`"));
                    image.idx
                })
                .collect();
            arrow_map.insert((x, y), map);
        }
    }
    Functor::new(name, source.clone(), target.clone(), ob_map, arrow_map)
        .unwrap_or_else(|e| panic!("bad functor `{name}`: {e}"))
}

pub fn empty_category() -> FinCategory {
    build_category("empty", &[], &[], &[], &[])
}

pub fn point() -> FinCategory {
    build_category("point", &["t"], &[("idt", "t", "t")], &["idt"], &[])
}

pub fn discrete(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    let ids: Vec<String> = (0..n).map(|i| format!("idd{i}")).collect();
    let objects: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let arrows: Vec<(&str, &str, &str)> =
        (0..n).map(|i| (ids[i].as_str(), names[i].as_str(), names[i].as_str())).collect();
    let id_refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    build_category(&format!("discrete{n}"), &objects, &arrows, &id_refs, &[])
}

/// The walking arrow `a -> b`.
pub fn walking_arrow() -> FinCategory {
    build_category(
        "arrow",
        &["a", "b"],
        &[("ida", "a", "a"), ("idb", "b", "b"), ("f", "a", "b")],
        &["ida", "idb"],
        &[],
    )
}

/// Two parallel arrows `a => b`.
pub fn parallel_pair() -> FinCategory {
    build_category(
        "parallel",
        &["a", "b"],
        &[("ida", "a", "a"), ("idb", "b", "b"), ("f", "a", "b"), ("g", "a", "b")],
        &["ida", "idb"],
        &[],
    )
}

/// The walking isomorphism `a ~ b`.
pub fn walking_iso() -> FinCategory {
    build_category(
        "iso",
        &["a", "b"],
        &[("ida", "a", "a"), ("idb", "b", "b"), ("j", "a", "b"), ("k", "b", "a")],
        &["ida", "idb"],
        &[("j", "k", "ida"), ("k", "j", "idb")],
    )
}

/// A composable pair `a -> b -> c` with its composite.
pub fn chain3() -> FinCategory {
    build_category(
        "chain3",
        &["a", "b", "c"],
        &[
            ("ida", "a", "a"),
            ("idb", "b", "b"),
            ("idc", "c", "c"),
            ("f", "a", "b"),
            ("g", "b", "c"),
            ("fg", "a", "c"),
        ],
        &["ida", "idb", "idc"],
        &[("f", "g", "fg")],
    )
}

/// The group Z/2 as a one-object category.
pub fn involution() -> FinCategory {
    build_category(
        "invol",
        &["m"],
        &[("idm", "m", "m"), ("s", "m", "m")],
        &["idm"],
        &[("s", "s", "idm")],
    )
}

/// The seed categories of the corpus (at most 3 objects, at most 2 parallel
/// arrows).
pub fn seed_categories() -> Vec<FinCategory> {
    vec![
        empty_category(),
        point(),
        discrete(2),
        discrete(3),
        walking_arrow(),
        parallel_pair(),
        walking_iso(),
        chain3(),
        involution(),
    ]
}

/// Duplicates an object along a fresh isomorphism and returns the enlarged
/// category together with the collapse functor back. The collapse is full,
/// faithful and surjective on objects, hence a trivial fibration.
pub fn duplicate_object(cat: &FinCategory, obj: usize) -> (FinCategory, Functor) {
    let n = cat.object_count();
    let pi = |i: usize| if i == n { obj } else { i };
    let mut objects: Vec<String> = cat.objects().to_vec();
    let mut fresh = format!("{}'", cat.objects()[obj]);
    while objects.contains(&fresh) {
        fresh.push('\'');
    }
    objects.push(fresh);
    let mut homs = BTreeMap::new();
    for c in 0..=n {
        for d in 0..=n {
            let base: Vec<String> = cat.hom(pi(c), pi(d)).to_vec();
            let names: Vec<String> = if c < n && d < n {
                base
            } else {
                base.iter().map(|s| format!("{s}@{c}{d}")).collect()
            };
            homs.insert((c, d), names);
        }
    }
    let mut comp = BTreeMap::new();
    for c in 0..=n {
        for d in 0..=n {
            for e in 0..=n {
                let mut table = Vec::new();
                for f in 0..homs[&(c, d)].len() {
                    let mut row = Vec::new();
                    for g in 0..homs[&(d, e)].len() {
                        let out = cat.compose(
                            Arrow { src: pi(c), tgt: pi(d), idx: f },
                            Arrow { src: pi(d), tgt: pi(e), idx: g },
                        );
                        row.push(out.idx);
                    }
                    table.push(row);
                }
                comp.insert((c, d, e), table);
            }
        }
    }
    let mut ids: Vec<usize> = (0..n).map(|x| cat.id_arrow(x).idx).collect();
    ids.push(cat.id_arrow(obj).idx);
    let doubled = FinCategory::new(
        format!("{}+{}", cat.name, cat.objects()[obj]),
        objects,
        homs,
        comp,
        ids,
    )
    .expect("duplication preserves the category laws");
    let ob_map: Vec<usize> = (0..=n).map(pi).collect();
    let mut arrow_map = BTreeMap::new();
    for c in 0..=n {
        for d in 0..=n {
            arrow_map.insert((c, d), (0..doubled.hom(c, d).len()).collect());
        }
    }
    let collapse = Functor::new(
        format!("collapse_{}", doubled.name),
        doubled.clone(),
        cat.clone(),
        ob_map,
        arrow_map,
    )
    .expect("collapse is a functor");
    (doubled, collapse)
}

/// The full subcategory on a set of objects, with its inclusion.
pub fn full_inclusion(cat: &FinCategory, objs: &[usize], name: &str) -> Functor {
    let objects: Vec<String> = objs.iter().map(|&i| cat.objects()[i].to_owned()).collect();
    let mut homs = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for (i, &x) in objs.iter().enumerate() {
        for (j, &y) in objs.iter().enumerate() {
            homs.insert((i, j), cat.hom(x, y).to_vec());
            for (k, &z) in objs.iter().enumerate() {
                let mut table = Vec::new();
                for f in 0..cat.hom(x, y).len() {
                    let mut row = Vec::new();
                    for g in 0..cat.hom(y, z).len() {
                        row.push(
                            cat.compose(
                                Arrow { src: x, tgt: y, idx: f },
                                Arrow { src: y, tgt: z, idx: g },
                            )
                            .idx,
                        );
                    }
                    table.push(row);
                }
                comp.insert((i, j, k), table);
            }
        }
    }
    let ids: Vec<usize> = objs.iter().map(|&x| cat.id_arrow(x).idx).collect();
    let sub = FinCategory::new(name, objects, homs, comp, ids)
        .expect("full subcategory is a category");
    let mut arrow_map = BTreeMap::new();
    for (i, _) in objs.iter().enumerate() {
        for (j, _) in objs.iter().enumerate() {
            arrow_map.insert((i, j), (0..sub.hom(i, j).len()).collect());
        }
    }
    Functor::new(format!("incl_{name}"), sub, cat.clone(), objs.to_vec(), arrow_map)
        .expect("inclusion is a functor")
}

/// The corpus of anodyne candidates: identities of all seeds, single and
/// iterated object-duplication collapses keeping every category at three or
/// fewer objects, and two nontrivial automorphisms. Every functor here is
/// full, faithful and surjective on objects by construction.
pub fn anodyne_corpus() -> Vec<Functor> {
    let mut out = Vec::new();
    for cat in seed_categories() {
        out.push(Functor::identity(&cat));
    }
    for cat in seed_categories() {
        if cat.object_count() == 0 || cat.object_count() > 2 {
            continue;
        }
        for obj in 0..cat.object_count() {
            let (doubled, collapse) = duplicate_object(&cat, obj);
            if doubled.object_count() <= 3 {
                out.push(collapse.clone());
                // a second duplication, collapsed in two stages
                if doubled.object_count() <= 2 {
                    for obj2 in 0..doubled.object_count() {
                        let (_, collapse2) = duplicate_object(&doubled, obj2);
                        out.push(Functor::compose(&collapse2, &collapse));
                    }
                }
            }
        }
    }
    let iso = walking_iso();
    out.push(functor_by_names(
        "swap_iso",
        &iso,
        &iso,
        &[("a", "b"), ("b", "a")],
        &[("j", "k"), ("k", "j")],
    ));
    let d2 = discrete(2);
    out.push(functor_by_names("swap_d2", &d2, &d2, &[("d0", "d1"), ("d1", "d0")], &[]));
    out
}

/// The corpus of equivalences: all anodyne functors plus full inclusions
/// that are essentially surjective without being surjective on objects.
pub fn equivalence_corpus() -> Vec<Functor> {
    let mut out = anodyne_corpus();
    let iso = walking_iso();
    out.push(full_inclusion(&iso, &[0], "pt_in_iso"));
    let (indiscrete3, _) = {
        let (two, _) = duplicate_object(&point(), 0);
        duplicate_object(&two, 0)
    };
    out.push(full_inclusion(&indiscrete3, &[0], "pt_in_ind3"));
    out.push(full_inclusion(&indiscrete3, &[0, 2], "two_in_ind3"));
    out
}

/// The six-formula corpus over the category theory with equality sort,
/// paired with its contexts. Sort and operation indices are resolved by
/// name from the given theory.
pub fn cat_formulas(th: &Theory) -> Vec<(String, Context, Formula)> {
    let ob = th.sort_by_name("Ob").expect("Ob");
    let hom = th.sort_by_name("Hom").expect("Hom");
    let eq = th.sort_by_name("Eq").expect("Eq");
    let comp = th.op_by_name("comp").expect("comp");
    let id = th.op_by_name("id").expect("id");
    let var = TermExpr::Var;
    let ob_t = TypeExpr { sort: ob, args: vec![] };
    let hom_t = |x: usize, y: usize| TypeExpr { sort: hom, args: vec![var(x), var(y)] };
    let eq_t = |x: usize, y: usize, f: TermExpr, g: TermExpr| TypeExpr {
        sort: eq,
        args: vec![var(x), var(y), f, g],
    };
    let comp_t = |x: usize, y: usize, z: usize, f: TermExpr, g: TermExpr| {
        TermExpr::App(comp, vec![var(x), var(y), var(z), f, g])
    };
    let arrows_equal = |x: usize, y: usize, f: TermExpr, g: TermExpr| {
        Formula::exists(vec![eq_t(x, y, f, g)], Formula::Top)
    };

    let one_ob = Context::from_entries(vec![ob_t.clone()]);
    let arrow_ctx = Context::from_entries(vec![ob_t.clone(), ob_t.clone(), hom_t(0, 1)]);

    // isTerminal(x) := forall y. (exists v : Hom(y, x)) and (forall u, w : Hom(y, x). u = w)
    let is_terminal = Formula::forall(
        vec![ob_t.clone()],
        Formula::and(vec![
            Formula::exists(vec![hom_t(1, 0)], Formula::Top),
            Formula::forall(
                vec![hom_t(1, 0), hom_t(1, 0)],
                arrows_equal(1, 0, var(2), var(3)),
            ),
        ]),
    );
    let is_initial = Formula::forall(
        vec![ob_t.clone()],
        Formula::and(vec![
            Formula::exists(vec![hom_t(0, 1)], Formula::Top),
            Formula::forall(
                vec![hom_t(0, 1), hom_t(0, 1)],
                arrows_equal(0, 1, var(2), var(3)),
            ),
        ]),
    );
    let weakly_initial = Formula::forall(
        vec![ob_t.clone()],
        Formula::exists(vec![hom_t(0, 1)], Formula::Top),
    );
    // isEpi(f) := forall z, g, h : Hom(y, z). f;g = f;h => g = h
    let is_epi = Formula::forall(
        vec![ob_t.clone(), hom_t(1, 3), hom_t(1, 3)],
        Formula::or(vec![
            Formula::not(arrows_equal(
                0,
                3,
                comp_t(0, 1, 3, var(2), var(4)),
                comp_t(0, 1, 3, var(2), var(5)),
            )),
            arrows_equal(1, 3, var(4), var(5)),
        ]),
    );
    let is_mono = Formula::forall(
        vec![ob_t.clone(), hom_t(3, 0), hom_t(3, 0)],
        Formula::or(vec![
            Formula::not(arrows_equal(
                3,
                1,
                comp_t(3, 0, 1, var(4), var(2)),
                comp_t(3, 0, 1, var(5), var(2)),
            )),
            arrows_equal(3, 0, var(4), var(5)),
        ]),
    );
    // hasRetraction(f) := exists r : Hom(y, x). f;r = id x
    let has_retraction = Formula::exists(
        vec![hom_t(1, 0)],
        arrows_equal(0, 0, comp_t(0, 1, 0, var(2), var(3)), TermExpr::App(id, vec![var(0)])),
    );

    vec![
        ("is_initial".to_owned(), one_ob.clone(), is_initial),
        ("is_terminal".to_owned(), one_ob.clone(), is_terminal),
        ("weakly_initial".to_owned(), one_ob, weakly_initial),
        ("is_epi".to_owned(), arrow_ctx.clone(), is_epi),
        ("is_mono".to_owned(), arrow_ctx.clone(), is_mono),
        ("has_retraction".to_owned(), arrow_ctx, has_retraction),
    ]
}

/// A semantic predicate that is not a formula of the language: whether the
/// category has an even number of objects. Used as the negative control:
/// some equivalence in the corpus changes it.
pub fn has_even_object_count(cat: &FinCategory) -> bool {
    cat.object_count().is_multiple_of(2)
}

/// All homotopic pairs of interpretations of `Γ` in the model of `cat`,
/// computed once through the path object.
pub fn homotopic_pairs(
    th: &Theory,
    cat: &FinCategory,
    gamma: &Context,
) -> Vec<(ContextElement, ContextElement)> {
    let path = path_object(cat);
    let pm = to_model(th, &path.category);
    let h1 = path.p1.to_hom(th);
    let h2 = path.p2.to_hom(th);
    let mut out = Vec::new();
    for h in pm.enumerate_context(gamma) {
        let pair = (h1.map_tuple(gamma, &h), h2.map_tuple(gamma, &h));
        if !out.contains(&pair) {
            out.push(pair);
        }
    }
    out
}
