//! The builtin corpus: theories, formulas, models, categories, functors,
//! homs, the proof library and the default suite config. Everything is
//! constructed programmatically and printed canonically; `gatlab corpus`
//! writes the same files the repository ships.

use gatlab_core::cat::corpus as catcorpus;
use gatlab_core::cat::{to_model, Functor};
use gatlab_core::fibrations::ModelHom;
use gatlab_core::formulas::{Formula, ProofNode, RuleApp, Sequent};
use gatlab_core::kernel::{elaborate_theory, Context, SortId, Theory, TypeExpr};
use gatlab_core::semantics::FiniteModel;
use gatlab_core::theories;

use crate::print;

/// Builtin theory names resolvable without a file.
pub const BUILTIN_THEORIES: &[&str] =
    &["cat", "cat_eq", "graph", "bicat_eq", "chain_f2_3", "sig_eq_magma", "sig_eq_graph"];

pub fn builtin_theory(name: &str) -> Option<Theory> {
    let decls = match name {
        "cat" => theories::cat(),
        "cat_eq" => theories::cat_eq(),
        "graph" => theories::graph(),
        "bicat_eq" => theories::bicat_eq(),
        "chain_f2_3" => theories::chain_f2(3),
        "sig_eq_magma" => theories::sig_eq(&theories::sig_pointed_magma()),
        "sig_eq_graph" => theories::sig_eq(&theories::sig_pointed_graph()),
        _ => return None,
    };
    Some(elaborate_theory(&decls).expect("builtin theory elaborates"))
}

/// The truncated chain complex `F2 --id--> F2` in degrees 0 and 1, extended
/// by zero in degrees 2 and 3: a small model exercising dependent carriers
/// and the type equality `C_n(0) == Z_n`.
pub fn chain_line_model(th: &Theory) -> FiniteModel {
    let mut m = FiniteModel::new(th);
    let sort = |n: &str| th.sort_by_name(n).unwrap();
    let op = |n: &str| th.op_by_name(n).unwrap();
    // Z0 = F2
    m.set_carrier(sort("Z0"), vec![], vec!["c0".into(), "c1".into()]);
    m.set_op(op("zero0"), vec![], 0);
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        m.set_op(op("addZ0"), vec![a, b], a ^ b);
    }
    // C1(x) is a singleton for each x (the unique 1-chain with boundary x);
    // C1(0) must be bit-identical to Z1
    m.set_carrier(sort("C1"), vec![0], vec!["z1".into()]);
    m.set_carrier(sort("C1"), vec![1], vec!["w".into()]);
    m.set_carrier(sort("Z1"), vec![], vec!["z1".into()]);
    m.set_op(op("zero1"), vec![], 0);
    m.set_op(op("addZ1"), vec![0, 0], 0);
    for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        // the unique elements add to the unique element over x + y
        m.set_op(op("addC1"), vec![x, y, 0, 0], 0);
    }
    // degrees 2 and 3 vanish
    for n in [2usize, 3] {
        let zn = sort(&format!("Z{n}"));
        let cn = sort(&format!("C{n}"));
        let zname = format!("z{n}");
        m.set_carrier(zn, vec![], vec![zname.clone()]);
        m.set_op(op(&format!("zero{n}")), vec![], 0);
        m.set_op(op(&format!("addZ{n}")), vec![0, 0], 0);
        m.set_carrier(cn, vec![0], vec![zname]);
        m.set_op(op(&format!("addC{n}")), vec![0, 0, 0, 0], 0);
    }
    m
}

// ---------------------------------------------------------------- proof library

fn v_type(th: &Theory) -> TypeExpr {
    TypeExpr { sort: th.sort_by_name("V").unwrap(), args: vec![] }
}

fn e_type(th: &Theory, x: usize, y: usize) -> TypeExpr {
    TypeExpr {
        sort: th.sort_by_name("E").unwrap(),
        args: vec![
            gatlab_core::kernel::TermExpr::Var(x),
            gatlab_core::kernel::TermExpr::Var(y),
        ],
    }
}

/// `exists v: V. true`
fn has_vertex(th: &Theory) -> Formula {
    Formula::exists(vec![v_type(th)], Formula::Top)
}

/// `exists v: V, e: E(v, v). true`
fn has_loop(th: &Theory) -> Formula {
    Formula::exists(vec![v_type(th), e_type(th, 0, 0)], Formula::Top)
}

fn node(ctx: Context, lhs: Formula, rhs: Formula, rule: RuleApp) -> ProofNode {
    ProofNode { conclusion: Sequent { ctx, lhs, rhs }, rule }
}

/// The shipped library of valid proofs over the graph theory, covering all
/// five rule groups.
pub fn proof_library(th: &Theory) -> Vec<(String, ProofNode)> {
    let empty = Context::empty();
    let one_v = Context::from_entries(vec![v_type(th)]);
    let hv = has_vertex(th);
    let hl = has_loop(th);
    // group 1: reflexivity and transitivity
    let mut out: Vec<(String, ProofNode)> = vec![(
        "refl_has_vertex".into(),
        node(empty.clone(), hv.clone(), hv.clone(), RuleApp::Refl),
    )];
    out.push((
        "trans_through_self".into(),
        node(
            empty.clone(),
            hv.clone(),
            Formula::Top,
            RuleApp::Trans {
                middle: hv.clone(),
                left: Box::new(node(empty.clone(), hv.clone(), hv.clone(), RuleApp::Refl)),
                right: Box::new(node(empty.clone(), hv.clone(), Formula::Top, RuleApp::TopIntro)),
            },
        ),
    ));

    // group 2: top and bottom
    out.push((
        "loop_entails_top".into(),
        node(empty.clone(), hl.clone(), Formula::Top, RuleApp::TopIntro),
    ));
    out.push((
        "bot_entails_has_vertex".into(),
        node(empty.clone(), Formula::Bot, hv.clone(), RuleApp::BotElim),
    ));

    // group 3: excluded middle and non-contradiction
    out.push((
        "non_contradiction".into(),
        node(
            empty.clone(),
            Formula::and(vec![hv.clone(), Formula::not(hv.clone())]),
            Formula::Bot,
            RuleApp::NonContradiction,
        ),
    ));
    out.push((
        "excluded_middle".into(),
        node(
            empty.clone(),
            Formula::Top,
            Formula::or(vec![hv.clone(), Formula::not(hv.clone())]),
            RuleApp::ExcludedMiddle,
        ),
    ));

    // group 4: universal properties of disjunction and conjunction
    let disj = Formula::or(vec![hv.clone(), hv.clone()]);
    out.push((
        "or_elim_idempotent".into(),
        node(
            empty.clone(),
            disj.clone(),
            hv.clone(),
            RuleApp::OrElim {
                premises: vec![
                    node(empty.clone(), hv.clone(), hv.clone(), RuleApp::Refl),
                    node(empty.clone(), hv.clone(), hv.clone(), RuleApp::Refl),
                ],
            },
        ),
    ));
    let conj = Formula::and(vec![hv.clone(), Formula::Top]);
    let and_intro = node(
        empty.clone(),
        hv.clone(),
        conj.clone(),
        RuleApp::AndIntro {
            premises: vec![
                node(empty.clone(), hv.clone(), hv.clone(), RuleApp::Refl),
                node(empty.clone(), hv.clone(), Formula::Top, RuleApp::TopIntro),
            ],
        },
    );
    out.push(("and_intro_with_top".into(), and_intro.clone()));
    out.push((
        "and_proj_first".into(),
        node(
            empty.clone(),
            hv.clone(),
            hv.clone(),
            RuleApp::AndProj { index: 0, premise: Box::new(and_intro) },
        ),
    ));
    let wide = Formula::or(vec![Formula::Bot, hv.clone()]);
    out.push((
        "or_injection_second".into(),
        node(
            empty.clone(),
            hv.clone(),
            wide.clone(),
            RuleApp::OrProj {
                index: 1,
                premise: Box::new(node(empty.clone(), wide.clone(), wide.clone(), RuleApp::Refl)),
            },
        ),
    ));

    // group 5: the quantifier adjunctions, over a genuine display map
    let weakened_hv =
        gatlab_core::formulas::weaken_formula(th, &empty, &[v_type(th)], &hv).unwrap();
    out.push((
        "exists_unit".into(),
        node(
            one_v.clone(),
            Formula::Top,
            weakened_hv.clone(),
            RuleApp::ExistsCoadj {
                ext_len: 1,
                premise: Box::new(node(empty.clone(), hv.clone(), hv.clone(), RuleApp::Refl)),
            },
        ),
    ));
    out.push((
        "exists_bot_collapses".into(),
        node(
            empty.clone(),
            Formula::exists(vec![v_type(th)], Formula::Bot),
            Formula::Bot,
            RuleApp::ExistsAdj {
                premise: Box::new(node(one_v.clone(), Formula::Bot, Formula::Bot, RuleApp::BotElim)),
            },
        ),
    ));
    out.push((
        "forall_top_holds".into(),
        node(
            empty.clone(),
            Formula::Top,
            Formula::forall(vec![v_type(th)], Formula::Top),
            RuleApp::ForallAdj {
                premise: Box::new(node(one_v.clone(), Formula::Top, Formula::Top, RuleApp::TopIntro)),
            },
        ),
    ));
    let everywhere_out = Formula::forall(
        vec![v_type(th)],
        Formula::exists(vec![v_type(th), e_type(th, 0, 1)], Formula::Top),
    );
    let weakened_all =
        gatlab_core::formulas::weaken_formula(th, &empty, &[v_type(th)], &everywhere_out).unwrap();
    out.push((
        "forall_counit".into(),
        node(
            one_v.clone(),
            weakened_all,
            Formula::exists(vec![v_type(th), e_type(th, 0, 1)], Formula::Top),
            RuleApp::ForallCoadj {
                ext_len: 1,
                premise: Box::new(node(
                    empty.clone(),
                    everywhere_out.clone(),
                    everywhere_out,
                    RuleApp::Refl,
                )),
            },
        ),
    ));
    out
}

/// Broken proofs shipped as negative controls, with the rule tag their
/// rejection must cite.
pub fn broken_proofs(th: &Theory) -> Vec<(String, String, ProofNode)> {
    let empty = Context::empty();
    let hv = has_vertex(th);
    vec![
        (
            "broken_refl".into(),
            "refl".into(),
            node(empty.clone(), Formula::Top, Formula::Bot, RuleApp::Refl),
        ),
        (
            "broken_non_contradiction".into(),
            "non-contradiction".into(),
            // negation on the wrong side of the conjunction
            node(
                empty.clone(),
                Formula::and(vec![Formula::not(hv.clone()), hv.clone()]),
                Formula::Bot,
                RuleApp::NonContradiction,
            ),
        ),
        (
            "broken_or_elim".into(),
            "or-elim".into(),
            node(
                empty.clone(),
                Formula::or(vec![hv.clone(), hv.clone()]),
                hv.clone(),
                RuleApp::OrElim {
                    premises: vec![node(empty.clone(), hv.clone(), hv.clone(), RuleApp::Refl)],
                },
            ),
        ),
        (
            "broken_exists_adj".into(),
            "exists-adj".into(),
            // the premise claims the wrong context (not extended)
            node(
                empty.clone(),
                Formula::exists(vec![v_type(th)], Formula::Top),
                hv.clone(),
                RuleApp::ExistsAdj {
                    premise: Box::new(node(
                        empty.clone(),
                        Formula::Top,
                        hv.clone(),
                        RuleApp::TopIntro,
                    )),
                },
            ),
        ),
    ]
}

/// A one-node quantifier proof with no premise at all: an `exists-adj`
/// node missing its subproof. Expressible only in file syntax, so shipped
/// as text.
pub fn broken_exists_adj_no_premise_text(th: &Theory) -> String {
    let _ = th;
    "proof broken_exists_no_premise of graph\n(exists-adj (seq (ctx) (exists ((v V)) true) (exists ((w V)) true)))\n"
        .to_owned()
}

// ---------------------------------------------------------------- file set

/// Every file of the builtin corpus as (relative path, contents).
pub fn corpus_files() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = Vec::new();
    // theories
    for name in BUILTIN_THEORIES {
        let th = builtin_theory(name).unwrap();
        files.push((format!("theories/{name}.gat"), print::print_theory(name, &th)));
    }
    let cat_eq = builtin_theory("cat_eq").unwrap();
    // formulas
    for (name, ctx, phi) in catcorpus::cat_formulas(&cat_eq) {
        files.push((
            format!("formulas/{name}.gfm"),
            print::print_formula_file(&cat_eq, &name, &ctx, &phi),
        ));
    }
    let exists_object = Formula::exists(
        vec![TypeExpr { sort: cat_eq.sort_by_name("Ob").unwrap(), args: vec![] }],
        Formula::Top,
    );
    files.push((
        "formulas/exists_object.gfm".into(),
        print::print_formula_file(&cat_eq, "exists_object", &Context::empty(), &exists_object),
    ));
    // rejected formulas: the skeletality formula uses equality on objects
    // (a parse error), the identities-only-isos formula types its equality
    // sort at mismatched endpoints (an elaboration error)
    files.push((
        "formulas/bad/skeletal.gfm".into(),
        "formula skeletal in () :=\n  forall (x: Ob, y: Ob, f: Hom(x, y), g: Hom(y, x)).\n    or(not(and(exists (e: Eq(y, y, comp(y, x, y, g, f), id(y))). true,\n               exists (e: Eq(x, x, comp(x, y, x, f, g), id(x))). true)),\n       x = y)\n"
            .to_owned(),
    ));
    files.push((
        "formulas/bad/identities_only_isos.gfm".into(),
        "formula identities_only_isos in () :=\n  forall (x: Ob, y: Ob, f: Hom(x, y), g: Hom(y, x)).\n    or(not(and(exists (e: Eq(y, y, comp(y, x, y, g, f), id(y))). true,\n               exists (e: Eq(x, x, comp(x, y, x, f, g), id(x))). true)),\n       exists (e: Eq(x, y, f, id(x))). true)\n"
            .to_owned(),
    ));
    // categories and models
    let seeds = catcorpus::seed_categories();
    for cat in &seeds {
        files.push((format!("categories/{}.gcat", cat.name), print::print_category(cat)));
        files.push((
            format!("models/{}.gmod", cat.name),
            print::print_model(&cat_eq, &cat.name, "cat_eq", &to_model(&cat_eq, cat)),
        ));
    }
    let (indiscrete2, collapse) = catcorpus::duplicate_object(&catcorpus::point(), 0);
    files.push((
        "categories/indiscrete2.gcat".into(),
        print::print_category(&rename(&indiscrete2, "indiscrete2")),
    ));
    files.push((
        "models/indiscrete2.gmod".into(),
        print::print_model(&cat_eq, "indiscrete2", "cat_eq", &to_model(&cat_eq, &indiscrete2)),
    ));
    let chain_th = builtin_theory("chain_f2_3").unwrap();
    files.push((
        "models/chain_line.gmod".into(),
        print::print_model(&chain_th, "chain_line", "chain_f2_3", &chain_line_model(&chain_th)),
    ));
    // functors
    files.push((
        "functors/collapse_indiscrete2.gfun".into(),
        print::print_functor(
            &named_functor(&collapse, "collapse_indiscrete2"),
            "../categories/indiscrete2.gcat",
            "../categories/point.gcat",
        ),
    ));
    let iso = catcorpus::walking_iso();
    let swap = catcorpus::functor_by_names(
        "swap_iso",
        &iso,
        &iso,
        &[("a", "b"), ("b", "a")],
        &[("j", "k"), ("k", "j")],
    );
    files.push((
        "functors/swap_iso.gfun".into(),
        print::print_functor(&swap, "../categories/iso.gcat", "../categories/iso.gcat"),
    ));
    let collapse_iso = catcorpus::functor_by_names(
        "collapse_iso",
        &iso,
        &catcorpus::point(),
        &[("a", "t"), ("b", "t")],
        &[("j", "idt"), ("k", "idt")],
    );
    files.push((
        "functors/collapse_iso.gfun".into(),
        print::print_functor(&collapse_iso, "../categories/iso.gcat", "../categories/point.gcat"),
    ));
    let incl = catcorpus::full_inclusion(&iso, &[0], "pt_in_iso");
    files.push((
        "functors/pt_in_iso.gfun".into(),
        print::print_functor(&incl, "../categories/pt_in_iso_src.gcat", "../categories/iso.gcat"),
    ));
    files.push((
        "categories/pt_in_iso_src.gcat".into(),
        print::print_category(&incl.source),
    ));
    // homs
    let collapse_hom = collapse.to_hom(&cat_eq);
    files.push((
        "homs/collapse_indiscrete2.ghom".into(),
        print::print_hom(
            &cat_eq,
            "collapse_indiscrete2",
            "cat_eq",
            "../models/indiscrete2.gmod",
            "../models/point.gmod",
            &collapse_hom,
        ),
    ));
    files.push((
        "homs/collapse_iso.ghom".into(),
        print::print_hom(
            &cat_eq,
            "collapse_iso",
            "cat_eq",
            "../models/iso.gmod",
            "../models/point.gmod",
            &collapse_iso.to_hom(&cat_eq),
        ),
    ));
    let empty_into_point = {
        let empty_m = to_model(&cat_eq, &catcorpus::empty_category());
        let point_m = to_model(&cat_eq, &catcorpus::point());
        let mut h = ModelHom::new(empty_m, point_m, cat_eq.sorts().len());
        h.set_component(SortId(cat_eq.sort_by_name("Ob").unwrap().0), vec![], vec![]);
        for (s, decl) in cat_eq.sorts().iter().enumerate() {
            for tuple in h.source.enumerate_context(&decl.telescope) {
                if h.component(SortId(s), &tuple).is_none() {
                    h.set_component(SortId(s), tuple, vec![]);
                }
            }
        }
        h
    };
    files.push((
        "homs/empty_into_point.ghom".into(),
        print::print_hom(
            &cat_eq,
            "empty_into_point",
            "cat_eq",
            "../models/empty.gmod",
            "../models/point.gmod",
            &empty_into_point,
        ),
    ));
    // proofs
    let graph = builtin_theory("graph").unwrap();
    for (name, proof) in proof_library(&graph) {
        files.push((
            format!("proofs/{name}.gpf"),
            print::print_proof(&graph, &name, "graph", &proof),
        ));
    }
    for (name, _tag, proof) in broken_proofs(&graph) {
        files.push((
            format!("proofs/bad/{name}.gpf"),
            print::print_proof(&graph, &name, "graph", &proof),
        ));
    }
    files.push((
        "proofs/bad/broken_exists_no_premise.gpf".into(),
        broken_exists_adj_no_premise_text(&graph),
    ));
    // suite config
    files.push((
        "suite.toml".into(),
        "# default invariance suite configuration\nseed = 0\nexhaustive = true\nsample_cap = 10000\nformulas = []\n"
            .to_owned(),
    ));
    files.push(("README.txt".into(), CORPUS_README.to_owned()));
    files
}

fn rename(cat: &gatlab_core::cat::FinCategory, name: &str) -> gatlab_core::cat::FinCategory {
    let mut c = cat.clone();
    c.name = name.to_owned();
    c
}

fn named_functor(f: &Functor, name: &str) -> Functor {
    let mut g = f.clone();
    g.name = name.to_owned();
    g
}

const CORPUS_README: &str = "\
Builtin corpus, regenerable with `gatlab corpus --out <dir>`.

theories/    .gat   theory declarations
formulas/    .gfm   formulas in context (bad/ holds files that must be rejected)
models/      .gmod  finite models with explicit tables
categories/  .gcat  finite categories
functors/    .gfun  functors between category files
homs/        .ghom  model homomorphisms between model files
proofs/      .gpf   entailment proofs (bad/ holds proofs that must be rejected)
suite.toml          default invariance suite configuration
";
