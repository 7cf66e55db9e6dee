use super::raw::{RawDecl, RawTerm, RawType};
use super::*;
use crate::theories;

fn cat() -> Theory {
    elaborate_theory(&theories::cat()).expect("cat elaborates")
}

fn cat_eq() -> Theory {
    elaborate_theory(&theories::cat_eq()).expect("cat_eq elaborates")
}

fn ob(th: &Theory) -> TypeExpr {
    TypeExpr { sort: th.sort_by_name("Ob").unwrap(), args: vec![] }
}

fn hom(th: &Theory, x: TermExpr, y: TermExpr) -> TypeExpr {
    TypeExpr { sort: th.sort_by_name("Hom").unwrap(), args: vec![x, y] }
}

fn comp(th: &Theory, args: Vec<TermExpr>) -> TermExpr {
    TermExpr::App(th.op_by_name("comp").unwrap(), args)
}

fn id(th: &Theory, x: TermExpr) -> TermExpr {
    TermExpr::App(th.op_by_name("id").unwrap(), vec![x])
}

fn var(i: usize) -> TermExpr {
    TermExpr::Var(i)
}

/// (x: Ob, y: Ob, f: Hom(x, y))
fn arrow_context(th: &Theory) -> Context {
    Context::from_entries(vec![ob(th), ob(th), hom(th, var(0), var(1))])
}

#[test]
fn cat_elaborates_with_expected_counts() {
    let th = cat();
    assert_eq!(th.sorts().len(), 2);
    assert_eq!(th.ops().len(), 2);
    assert_eq!(th.equations().len(), 3);
    assert!(th.is_confluent());
}

#[test]
fn empty_theory_elaborates() {
    let th = elaborate_theory(&[]).expect("empty theory");
    assert!(th.sorts().is_empty() && th.ops().is_empty() && th.equations().is_empty());
}

#[test]
fn cat_eq_elaborates() {
    let th = cat_eq();
    assert_eq!(th.sorts().len(), 3);
    assert_eq!(th.ops().len(), 3);
    assert_eq!(th.equations().len(), 5);
}

#[test]
fn prefix_stability_of_elaboration() {
    // every prefix of the declaration list elaborates: declaration order is
    // a well-foundedness witness
    let decls = theories::cat_eq();
    for i in 0..=decls.len() {
        elaborate_theory(&decls[..i]).unwrap_or_else(|e| panic!("prefix {i}: {e}"));
    }
}

#[test]
fn unknown_symbol_is_cited_with_declaration_index() {
    let decls = vec![
        RawDecl::Sort { name: "Ob".into(), telescope: vec![] },
        RawDecl::Sort {
            name: "Hom".into(),
            telescope: vec![("x".into(), RawType::plain("Obj"))],
        },
    ];
    let err = elaborate_theory(&decls).unwrap_err();
    assert_eq!(err.decl_index, 1);
    assert!(err.to_string().contains("Obj"));
}

#[test]
fn arity_mismatch_rejected() {
    let decls = vec![
        RawDecl::Sort { name: "Ob".into(), telescope: vec![] },
        RawDecl::Sort {
            name: "Hom".into(),
            telescope: vec![
                ("x".into(), RawType::plain("Ob")),
                ("y".into(), RawType::plain("Ob")),
            ],
        },
        RawDecl::Op {
            name: "bad".into(),
            telescope: vec![("x".into(), RawType::plain("Ob"))],
            result: RawType::new("Hom", vec![RawTerm::var("x")]),
        },
    ];
    let err = elaborate_theory(&decls).unwrap_err();
    assert!(matches!(err.cause, KernelError::ArityMismatch { .. }));
}

#[test]
fn wf_context_accepts_arrow_context() {
    let th = cat();
    th.wf_context(&arrow_context(&th)).expect("arrow context is well-formed");
}

#[test]
fn wf_context_accepts_empty() {
    let th = cat();
    th.wf_context(&Context::empty()).expect("empty context");
}

#[test]
fn wf_context_rejects_dangling_variable() {
    let th = cat();
    // (f: Hom(x0, x1)) with nothing in scope
    let ctx = Context::from_entries(vec![hom(&th, var(0), var(1))]);
    let err = th.wf_context(&ctx).unwrap_err();
    let KernelError::IllFormedTelescope { position: 0, cause } = err else {
        panic!("expected telescope error, got {err}")
    };
    assert!(matches!(*cause, KernelError::VarOutOfRange { .. }));
}

#[test]
fn infer_composition_type() {
    let th = cat();
    // (x, y, z: Ob, f: Hom(x, y), g: Hom(y, z)) |- comp(x, y, z, f, g) : Hom(x, z)
    let ctx = Context::from_entries(vec![
        ob(&th),
        ob(&th),
        ob(&th),
        hom(&th, var(0), var(1)),
        hom(&th, var(1), var(2)),
    ]);
    let t = comp(&th, vec![var(0), var(1), var(2), var(3), var(4)]);
    let ty = th.infer_type(&ctx, &t).expect("comp is well-typed");
    assert_eq!(ty, hom(&th, var(0), var(2)));
}

#[test]
fn infer_variable_type() {
    let th = cat();
    let ctx = Context::from_entries(vec![ob(&th)]);
    assert_eq!(th.infer_type(&ctx, &var(0)).unwrap(), ob(&th));
}

#[test]
fn infer_identity_type() {
    let th = cat();
    let ctx = Context::from_entries(vec![ob(&th)]);
    let ty = th.infer_type(&ctx, &id(&th, var(0))).unwrap();
    assert_eq!(ty, hom(&th, var(0), var(0)));
}

#[test]
fn infer_rejects_badly_typed_argument() {
    let th = cat();
    let ctx = Context::from_entries(vec![ob(&th), ob(&th)]);
    // id applied to an arrow-typed hole: comp arity is wrong outright
    let t = comp(&th, vec![var(0), var(1)]);
    assert!(matches!(th.infer_type(&ctx, &t), Err(KernelError::ArityMismatch { .. })));
    // f in Hom(x,y) used where an object is expected
    let ctx2 = arrow_context(&th);
    let t2 = id(&th, var(2));
    assert!(matches!(th.infer_type(&ctx2, &t2), Err(KernelError::TypeMismatch { .. })));
}

#[test]
fn unit_law_rewrites_to_identity() {
    let th = cat();
    let ctx = arrow_context(&th);
    // f ; id(y) -> f
    let t = comp(&th, vec![var(0), var(1), var(1), var(2), id(&th, var(1))]);
    let (nf, exhausted) = th.normalize(&ctx, &t, DEFAULT_FUEL);
    assert!(!exhausted);
    assert_eq!(nf, var(2));
    // id(x) ; f -> f, as an equality verdict
    let s = comp(&th, vec![var(0), var(0), var(1), id(&th, var(0)), var(2)]);
    assert_eq!(
        th.terms_equal(&ctx, &s, &var(2), &hom(&th, var(0), var(1)), DEFAULT_FUEL),
        Verdict::Yes
    );
}

#[test]
fn variable_is_normal() {
    let th = cat();
    let ctx = arrow_context(&th);
    let (nf, _) = th.normalize(&ctx, &var(2), DEFAULT_FUEL);
    assert_eq!(nf, var(2));
}

#[test]
fn types_equal_is_reflexive() {
    let th = cat();
    let ctx = arrow_context(&th);
    assert_eq!(th.types_equal(&ctx, &ob(&th), &ob(&th), DEFAULT_FUEL), Verdict::Yes);
}

#[test]
fn distinct_identities_are_unequal_under_confluence_pragma() {
    let th = cat();
    let ctx = Context::from_entries(vec![ob(&th), ob(&th)]);
    let verdict = th.terms_equal(
        &ctx,
        &id(&th, var(0)),
        &id(&th, var(1)),
        &hom(&th, var(0), var(0)),
        DEFAULT_FUEL,
    );
    assert_eq!(verdict, Verdict::No);
    // confirmed semantically: in the two-object discrete category the two
    // sides denote arrows in different hom-sets, so they are distinct
    // arrows of the decoded category
    let discrete2 = crate::cat::corpus::discrete(2);
    let m = crate::cat::to_model(&th, &discrete2);
    let x = vec![0usize, 1];
    let arrow_of = |t: &TermExpr| {
        let ty = th.infer_type(&ctx, t).unwrap();
        let endpoints: Vec<usize> = ty.args.iter().map(|a| m.eval_term(a, &x)).collect();
        (endpoints, m.eval_term(t, &x))
    };
    assert_ne!(arrow_of(&id(&th, var(0))), arrow_of(&id(&th, var(1))));
}

#[test]
fn no_verdict_needs_confluence_pragma() {
    let mut decls = theories::cat();
    assert_eq!(decls.pop(), Some(RawDecl::PragmaConfluent));
    let th = elaborate_theory(&decls).unwrap();
    let ctx = Context::from_entries(vec![ob(&th), ob(&th)]);
    let verdict = th.terms_equal(
        &ctx,
        &id(&th, var(0)),
        &id(&th, var(1)),
        &hom(&th, var(0), var(0)),
        DEFAULT_FUEL,
    );
    assert_eq!(verdict, Verdict::Unknown);
}

#[test]
fn equality_verdicts_are_symmetric() {
    let th = cat();
    let ctx = arrow_context(&th);
    let lhs = comp(&th, vec![var(0), var(1), var(1), var(2), id(&th, var(1))]);
    let rhs = var(2);
    let at = hom(&th, var(0), var(1));
    assert_eq!(
        th.terms_equal(&ctx, &lhs, &rhs, &at, DEFAULT_FUEL),
        th.terms_equal(&ctx, &rhs, &lhs, &at, DEFAULT_FUEL)
    );
}

#[test]
fn fuel_exhaustion_yields_unknown() {
    let th = cat();
    let ctx = arrow_context(&th);
    let lhs = comp(&th, vec![var(0), var(1), var(1), var(2), id(&th, var(1))]);
    // zero fuel: cannot even take the single unit-law step
    assert_eq!(
        th.terms_equal(&ctx, &lhs, &var(2), &hom(&th, var(0), var(1)), 0),
        Verdict::Unknown
    );
}

/// Exhaustive one-step rewriting, independent of the normalize engine: used
/// to certify confluence of specific instances by complete search.
fn all_normal_forms(th: &Theory, ctx: &Context, t: &TermExpr) -> Vec<TermExpr> {
    fn one_steps(th: &Theory, ctx: &Context, t: &TermExpr) -> Vec<TermExpr> {
        let mut out = Vec::new();
        out.extend(th.root_steps_all(ctx, t));
        if let TermExpr::App(op, args) = t {
            for (i, arg) in args.iter().enumerate() {
                for stepped in one_steps(th, ctx, arg) {
                    let mut new_args = args.clone();
                    new_args[i] = stepped;
                    out.push(TermExpr::App(*op, new_args));
                }
            }
        }
        out
    }
    let mut normals = Vec::new();
    let mut stack = vec![t.clone()];
    let mut seen = Vec::new();
    while let Some(cur) = stack.pop() {
        if seen.contains(&cur) {
            continue;
        }
        seen.push(cur.clone());
        let steps: Vec<TermExpr> =
            one_steps(th, ctx, &cur).into_iter().filter(|s| *s != cur).collect();
        if steps.is_empty() {
            if !normals.contains(&cur) {
                normals.push(cur);
            }
        } else {
            stack.extend(steps);
        }
    }
    normals
}

#[test]
fn associativity_orientation_is_confluent_on_the_spec_instance() {
    let th = cat();
    // (w, x, y, z: Ob, f: Hom(w,x), g: Hom(x,y), h: Hom(y,z))
    let ctx = Context::from_entries(vec![
        ob(&th),
        ob(&th),
        ob(&th),
        ob(&th),
        hom(&th, var(0), var(1)),
        hom(&th, var(1), var(2)),
        hom(&th, var(2), var(3)),
    ]);
    let inner = comp(&th, vec![var(1), var(2), var(3), var(5), var(6)]);
    let t = comp(&th, vec![var(0), var(1), var(3), var(4), inner]);
    let expected_inner = comp(&th, vec![var(0), var(1), var(2), var(4), var(5)]);
    let expected = comp(&th, vec![var(0), var(2), var(3), expected_inner, var(6)]);
    let (nf, _) = th.normalize(&ctx, &t, DEFAULT_FUEL);
    assert_eq!(nf, expected);
    // certified by exhaustive rewriting: a single normal form is reachable
    let normals = all_normal_forms(&th, &ctx, &t);
    assert_eq!(normals, vec![expected]);
}

#[test]
fn reflected_equality_rewrites_under_hypothesis() {
    let th = cat_eq();
    let eq_sort = th.sort_by_name("Eq").unwrap();
    // (x, y: Ob, f, g: Hom(x, y), a: Eq(x, y, f, g))
    let ctx = Context::from_entries(vec![
        ob(&th),
        ob(&th),
        hom(&th, var(0), var(1)),
        hom(&th, var(0), var(1)),
        TypeExpr { sort: eq_sort, args: vec![var(0), var(1), var(2), var(3)] },
    ]);
    th.wf_context(&ctx).expect("hypothesis context");
    // under a : Eq(f, g), the sides are judgmentally equal
    assert_eq!(
        th.terms_equal(&ctx, &var(2), &var(3), &hom(&th, var(0), var(1)), DEFAULT_FUEL),
        Verdict::Yes
    );
    // without the hypothesis they are not
    let bare = Context::from_entries(vec![
        ob(&th),
        ob(&th),
        hom(&th, var(0), var(1)),
        hom(&th, var(0), var(1)),
    ]);
    assert_eq!(
        th.terms_equal(&bare, &var(2), &var(3), &hom(&th, var(0), var(1)), DEFAULT_FUEL),
        Verdict::No
    );
}

#[test]
fn infer_type_stable_under_normalize() {
    let th = cat();
    let ctx = arrow_context(&th);
    let t = comp(&th, vec![var(0), var(1), var(1), var(2), id(&th, var(1))]);
    let (nf, _) = th.normalize(&ctx, &t, DEFAULT_FUEL);
    let ty_before = th.infer_type(&ctx, &t).unwrap();
    let ty_after = th.infer_type(&ctx, &nf).unwrap();
    assert_eq!(th.types_equal(&ctx, &ty_before, &ty_after, DEFAULT_FUEL), Verdict::Yes);
}
