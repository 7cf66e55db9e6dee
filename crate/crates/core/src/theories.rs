//! Builders for the builtin theories: categories, categories with an
//! equality sort, Σ-structure theories, bicategories (elaboration-level
//! fragment) and truncated chain complexes over F₂.
//!
//! Each builder returns raw declarations so the same source feeds both the
//! elaborator and the corpus file printer.

use crate::kernel::raw::{RawDecl, RawTerm, RawType};

fn tele(entries: &[(&str, RawType)]) -> Vec<(String, RawType)> {
    entries.iter().map(|(n, t)| (n.to_string(), t.clone())).collect()
}

fn v(name: &str) -> RawTerm {
    RawTerm::var(name)
}

fn ob() -> RawType {
    RawType::plain("Ob")
}

fn hom(x: RawTerm, y: RawTerm) -> RawType {
    RawType::new("Hom", vec![x, y])
}

/// `comp(x, y, z, f, g)` is `f` followed by `g` (diagrammatic order), for
/// `f : Hom(x, y)` and `g : Hom(y, z)`.
fn comp(x: RawTerm, y: RawTerm, z: RawTerm, f: RawTerm, g: RawTerm) -> RawTerm {
    RawTerm::app("comp", vec![x, y, z, f, g])
}

fn id(x: RawTerm) -> RawTerm {
    RawTerm::app("id", vec![x])
}

/// The theory of categories: 2 sorts, 2 operations, 3 equations.
pub fn cat() -> Vec<RawDecl> {
    let mut decls = vec![
        RawDecl::Sort { name: "Ob".into(), telescope: vec![] },
        RawDecl::Sort {
            name: "Hom".into(),
            telescope: tele(&[("x", ob()), ("y", ob())]),
        },
        // id before comp: model enumeration fills tables in declaration
        // order, and the unit laws can only prune composition choices once
        // identities are fixed
        RawDecl::Op {
            name: "id".into(),
            telescope: tele(&[("x", ob())]),
            result: hom(v("x"), v("x")),
        },
        RawDecl::Op {
            name: "comp".into(),
            telescope: tele(&[
                ("x", ob()),
                ("y", ob()),
                ("z", ob()),
                ("f", hom(v("x"), v("y"))),
                ("g", hom(v("y"), v("z"))),
            ]),
            result: hom(v("x"), v("z")),
        },
    ];
    decls.extend(cat_equations());
    decls.push(RawDecl::PragmaConfluent);
    decls
}

fn cat_equations() -> Vec<RawDecl> {
    vec![
        // post-composition with an identity
        RawDecl::TermEq {
            telescope: tele(&[("x", ob()), ("y", ob()), ("f", hom(v("x"), v("y")))]),
            lhs: comp(v("x"), v("y"), v("y"), v("f"), id(v("y"))),
            rhs: v("f"),
            at: hom(v("x"), v("y")),
        },
        // pre-composition with an identity
        RawDecl::TermEq {
            telescope: tele(&[("x", ob()), ("y", ob()), ("f", hom(v("x"), v("y")))]),
            lhs: comp(v("x"), v("x"), v("y"), id(v("x")), v("f")),
            rhs: v("f"),
            at: hom(v("x"), v("y")),
        },
        // associativity, oriented towards left-nested composites
        RawDecl::TermEq {
            telescope: tele(&[
                ("w", ob()),
                ("x", ob()),
                ("y", ob()),
                ("z", ob()),
                ("f", hom(v("w"), v("x"))),
                ("g", hom(v("x"), v("y"))),
                ("h", hom(v("y"), v("z"))),
            ]),
            lhs: comp(v("w"), v("x"), v("z"), v("f"), comp(v("x"), v("y"), v("z"), v("g"), v("h"))),
            rhs: comp(v("w"), v("y"), v("z"), comp(v("w"), v("x"), v("y"), v("f"), v("g")), v("h")),
            at: hom(v("w"), v("z")),
        },
    ]
}

/// The theory of categories with a reflected equality sort on parallel
/// morphisms: models are exactly categories, with `Eq(f, g)` inhabited (by a
/// unique element) precisely when `f = g`.
pub fn cat_eq() -> Vec<RawDecl> {
    let eq_ty = |f: RawTerm, g: RawTerm| RawType::new("Eq", vec![v("x"), v("y"), f, g]);
    let mut decls = cat();
    decls.pop(); // pragma goes last
    decls.push(RawDecl::Sort {
        name: "Eq".into(),
        telescope: tele(&[
            ("x", ob()),
            ("y", ob()),
            ("f", hom(v("x"), v("y"))),
            ("g", hom(v("x"), v("y"))),
        ]),
    });
    decls.push(RawDecl::Op {
        name: "refl".into(),
        telescope: tele(&[("x", ob()), ("y", ob()), ("f", hom(v("x"), v("y")))]),
        result: eq_ty(v("f"), v("f")),
    });
    // equality is reflected into judgmental equality
    decls.push(RawDecl::TermEq {
        telescope: tele(&[
            ("x", ob()),
            ("y", ob()),
            ("f", hom(v("x"), v("y"))),
            ("g", hom(v("x"), v("y"))),
            ("a", eq_ty(v("f"), v("g"))),
        ]),
        lhs: v("f"),
        rhs: v("g"),
        at: hom(v("x"), v("y")),
    });
    // equality proofs are unique
    decls.push(RawDecl::TermEq {
        telescope: tele(&[
            ("x", ob()),
            ("y", ob()),
            ("f", hom(v("x"), v("y"))),
            ("g", hom(v("x"), v("y"))),
            ("a", eq_ty(v("f"), v("g"))),
        ]),
        lhs: v("a"),
        rhs: RawTerm::app("refl", vec![v("x"), v("y"), v("f")]),
        at: eq_ty(v("f"), v("g")),
    });
    decls.push(RawDecl::PragmaConfluent);
    decls
}

/// A signature of traditional model theory: sorts, function symbols and
/// relation symbols.
#[derive(Clone, Debug)]
pub struct Signature {
    pub sorts: Vec<String>,
    /// (name, argument sorts, result sort)
    pub functions: Vec<(String, Vec<String>, String)>,
    /// (name, argument sorts)
    pub relations: Vec<(String, Vec<String>)>,
}

/// The theory `T_{Σ,=}` whose models are exactly Σ-structures: one closed
/// sort per signature sort, each with a reflected equality sort, one
/// operation per function symbol, and one proof-irrelevant dependent sort per
/// relation symbol.
pub fn sig_eq(sig: &Signature) -> Vec<RawDecl> {
    let mut decls = Vec::new();
    for s in &sig.sorts {
        let eq_name = format!("Eq{s}");
        decls.push(RawDecl::Sort { name: s.clone(), telescope: vec![] });
        decls.push(RawDecl::Sort {
            name: eq_name.clone(),
            telescope: tele(&[("a", RawType::plain(s)), ("b", RawType::plain(s))]),
        });
        decls.push(RawDecl::Op {
            name: format!("refl{s}"),
            telescope: tele(&[("a", RawType::plain(s))]),
            result: RawType::new(eq_name.clone(), vec![v("a"), v("a")]),
        });
        decls.push(RawDecl::TermEq {
            telescope: tele(&[
                ("a", RawType::plain(s)),
                ("b", RawType::plain(s)),
                ("e", RawType::new(eq_name.clone(), vec![v("a"), v("b")])),
            ]),
            lhs: v("a"),
            rhs: v("b"),
            at: RawType::plain(s),
        });
        decls.push(RawDecl::TermEq {
            telescope: tele(&[
                ("a", RawType::plain(s)),
                ("b", RawType::plain(s)),
                ("e", RawType::new(eq_name.clone(), vec![v("a"), v("b")])),
            ]),
            lhs: v("e"),
            rhs: RawTerm::app(format!("refl{s}"), vec![v("a")]),
            at: RawType::new(eq_name, vec![v("a"), v("b")]),
        });
    }
    for (name, arg_sorts, result) in &sig.functions {
        let telescope: Vec<(String, RawType)> = arg_sorts
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("a{i}"), RawType::plain(s)))
            .collect();
        decls.push(RawDecl::Op {
            name: name.clone(),
            telescope,
            result: RawType::plain(result),
        });
    }
    for (name, arg_sorts) in &sig.relations {
        let telescope: Vec<(String, RawType)> = arg_sorts
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("a{i}"), RawType::plain(s)))
            .collect();
        let args: Vec<RawTerm> = (0..arg_sorts.len()).map(|i| v(&format!("a{i}"))).collect();
        decls.push(RawDecl::Sort { name: name.clone(), telescope: telescope.clone() });
        // relations are proof-irrelevant
        let mut wit_tele = telescope;
        wit_tele.push(("t1".into(), RawType::new(name.clone(), args.clone())));
        wit_tele.push(("t2".into(), RawType::new(name.clone(), args.clone())));
        decls.push(RawDecl::TermEq {
            telescope: wit_tele,
            lhs: v("t1"),
            rhs: v("t2"),
            at: RawType::new(name.clone(), args),
        });
    }
    decls
}

/// A small example signature: directed graphs with a distinguished vertex
/// and an edge relation.
pub fn sig_pointed_graph() -> Signature {
    Signature {
        sorts: vec!["V".into()],
        functions: vec![("base".into(), vec![], "V".into())],
        relations: vec![("Edge".into(), vec!["V".into(), "V".into()])],
    }
}

/// A one-sorted algebraic example signature: a magma with a unit constant.
pub fn sig_pointed_magma() -> Signature {
    Signature {
        sorts: vec!["M".into()],
        functions: vec![
            ("unit".into(), vec![], "M".into()),
            ("mul".into(), vec!["M".into(), "M".into()], "M".into()),
        ],
        relations: vec![],
    }
}

/// Elaboration-level fragment of the theory of bicategories: objects,
/// 1-cells, 2-cells with a reflected equality sort, vertical composition
/// with its strict laws, whiskering, and associator/unitor 2-cells.
pub fn bicat_eq() -> Vec<RawDecl> {
    let hom2 = |f: RawTerm, g: RawTerm, x: &str, y: &str| {
        RawType::new("Hom2", vec![v(x), v(y), f, g])
    };
    let mut decls = vec![
        RawDecl::Sort { name: "Ob".into(), telescope: vec![] },
        RawDecl::Sort {
            name: "Hom".into(),
            telescope: tele(&[("x", ob()), ("y", ob())]),
        },
        RawDecl::Sort {
            name: "Hom2".into(),
            telescope: tele(&[
                ("x", ob()),
                ("y", ob()),
                ("f", hom(v("x"), v("y"))),
                ("g", hom(v("x"), v("y"))),
            ]),
        },
        RawDecl::Sort {
            name: "Eq2".into(),
            telescope: tele(&[
                ("x", ob()),
                ("y", ob()),
                ("f", hom(v("x"), v("y"))),
                ("g", hom(v("x"), v("y"))),
                ("al", hom2(v("f"), v("g"), "x", "y")),
                ("be", hom2(v("f"), v("g"), "x", "y")),
            ]),
        },
        RawDecl::Op {
            name: "comp".into(),
            telescope: tele(&[
                ("x", ob()),
                ("y", ob()),
                ("z", ob()),
                ("f", hom(v("x"), v("y"))),
                ("g", hom(v("y"), v("z"))),
            ]),
            result: hom(v("x"), v("z")),
        },
        RawDecl::Op {
            name: "id".into(),
            telescope: tele(&[("x", ob())]),
            result: hom(v("x"), v("x")),
        },
        RawDecl::Op {
            name: "vcomp".into(),
            telescope: tele(&[
                ("x", ob()),
                ("y", ob()),
                ("f", hom(v("x"), v("y"))),
                ("g", hom(v("x"), v("y"))),
                ("h", hom(v("x"), v("y"))),
                ("al", hom2(v("f"), v("g"), "x", "y")),
                ("be", hom2(v("g"), v("h"), "x", "y")),
            ]),
            result: hom2(v("f"), v("h"), "x", "y"),
        },
        RawDecl::Op {
            name: "id2".into(),
            telescope: tele(&[("x", ob()), ("y", ob()), ("f", hom(v("x"), v("y")))]),
            result: hom2(v("f"), v("f"), "x", "y"),
        },
        // the associator and unitors witness the weak laws of composition
        RawDecl::Op {
            name: "assoc".into(),
            telescope: tele(&[
                ("w", ob()),
                ("x", ob()),
                ("y", ob()),
                ("z", ob()),
                ("f", hom(v("w"), v("x"))),
                ("g", hom(v("x"), v("y"))),
                ("h", hom(v("y"), v("z"))),
            ]),
            result: RawType::new(
                "Hom2",
                vec![
                    v("w"),
                    v("z"),
                    comp(v("w"), v("x"), v("z"), v("f"), comp(v("x"), v("y"), v("z"), v("g"), v("h"))),
                    comp(v("w"), v("y"), v("z"), comp(v("w"), v("x"), v("y"), v("f"), v("g")), v("h")),
                ],
            ),
        },
        RawDecl::Op {
            name: "lunit".into(),
            telescope: tele(&[("x", ob()), ("y", ob()), ("f", hom(v("x"), v("y")))]),
            result: RawType::new(
                "Hom2",
                vec![v("x"), v("y"), comp(v("x"), v("x"), v("y"), id(v("x")), v("f")), v("f")],
            ),
        },
        RawDecl::Op {
            name: "runit".into(),
            telescope: tele(&[("x", ob()), ("y", ob()), ("f", hom(v("x"), v("y")))]),
            result: RawType::new(
                "Hom2",
                vec![v("x"), v("y"), comp(v("x"), v("y"), v("y"), v("f"), id(v("y"))), v("f")],
            ),
        },
        RawDecl::Op {
            name: "refl2".into(),
            telescope: tele(&[
                ("x", ob()),
                ("y", ob()),
                ("f", hom(v("x"), v("y"))),
                ("g", hom(v("x"), v("y"))),
                ("al", hom2(v("f"), v("g"), "x", "y")),
            ]),
            result: RawType::new("Eq2", vec![v("x"), v("y"), v("f"), v("g"), v("al"), v("al")]),
        },
    ];
    // strict laws of vertical composition
    let vc = |f: RawTerm, g: RawTerm, h: RawTerm, al: RawTerm, be: RawTerm| {
        RawTerm::app("vcomp", vec![v("x"), v("y"), f, g, h, al, be])
    };
    let id2of = |f: RawTerm| RawTerm::app("id2", vec![v("x"), v("y"), f]);
    decls.push(RawDecl::TermEq {
        telescope: tele(&[
            ("x", ob()),
            ("y", ob()),
            ("f", hom(v("x"), v("y"))),
            ("g", hom(v("x"), v("y"))),
            ("al", hom2(v("f"), v("g"), "x", "y")),
        ]),
        lhs: vc(v("f"), v("g"), v("g"), v("al"), id2of(v("g"))),
        rhs: v("al"),
        at: hom2(v("f"), v("g"), "x", "y"),
    });
    decls.push(RawDecl::TermEq {
        telescope: tele(&[
            ("x", ob()),
            ("y", ob()),
            ("f", hom(v("x"), v("y"))),
            ("g", hom(v("x"), v("y"))),
            ("al", hom2(v("f"), v("g"), "x", "y")),
        ]),
        lhs: vc(v("f"), v("f"), v("g"), id2of(v("f")), v("al")),
        rhs: v("al"),
        at: hom2(v("f"), v("g"), "x", "y"),
    });
    decls.push(RawDecl::TermEq {
        telescope: tele(&[
            ("x", ob()),
            ("y", ob()),
            ("f", hom(v("x"), v("y"))),
            ("g", hom(v("x"), v("y"))),
            ("h", hom(v("x"), v("y"))),
            ("k", hom(v("x"), v("y"))),
            ("al", hom2(v("f"), v("g"), "x", "y")),
            ("be", hom2(v("g"), v("h"), "x", "y")),
            ("ga", hom2(v("h"), v("k"), "x", "y")),
        ]),
        lhs: vc(v("f"), v("g"), v("k"), v("al"), vc(v("g"), v("h"), v("k"), v("be"), v("ga"))),
        rhs: vc(v("f"), v("h"), v("k"), vc(v("f"), v("g"), v("h"), v("al"), v("be")), v("ga")),
        at: hom2(v("f"), v("k"), "x", "y"),
    });
    // 2-cell equality is reflected and proof-irrelevant
    let eq2_tele = tele(&[
        ("x", ob()),
        ("y", ob()),
        ("f", hom(v("x"), v("y"))),
        ("g", hom(v("x"), v("y"))),
        ("al", hom2(v("f"), v("g"), "x", "y")),
        ("be", hom2(v("f"), v("g"), "x", "y")),
        ("e", RawType::new("Eq2", vec![v("x"), v("y"), v("f"), v("g"), v("al"), v("be")])),
    ]);
    decls.push(RawDecl::TermEq {
        telescope: eq2_tele.clone(),
        lhs: v("al"),
        rhs: v("be"),
        at: hom2(v("f"), v("g"), "x", "y"),
    });
    decls.push(RawDecl::TermEq {
        telescope: eq2_tele,
        lhs: v("e"),
        rhs: RawTerm::app("refl2", vec![v("x"), v("y"), v("f"), v("g"), v("al")]),
        at: RawType::new("Eq2", vec![v("x"), v("y"), v("f"), v("g"), v("al"), v("be")]),
    });
    decls
}

/// Truncated chain complexes over F₂ in degrees `0..=max_degree`: sorts
/// `Z_n` of n-cycles and `C_n(x)` of n-chains with prescribed boundary
/// `x : Z_{n-1}`, Boolean group structure on both, and the type equality
/// `C_n(0) == Z_n` identifying chains with zero boundary as cycles.
pub fn chain_f2(max_degree: usize) -> Vec<RawDecl> {
    let mut decls = Vec::new();
    let zn = |n: usize| format!("Z{n}");
    let cn = |n: usize| format!("C{n}");
    for n in 0..=max_degree {
        let z = zn(n);
        decls.push(RawDecl::Sort { name: z.clone(), telescope: vec![] });
        decls.push(RawDecl::Op {
            name: format!("zero{n}"),
            telescope: vec![],
            result: RawType::plain(&z),
        });
        decls.push(RawDecl::Op {
            name: format!("addZ{n}"),
            telescope: tele(&[("a", RawType::plain(&z)), ("b", RawType::plain(&z))]),
            result: RawType::plain(&z),
        });
        let addz = |a: RawTerm, b: RawTerm| RawTerm::app(format!("addZ{n}"), vec![a, b]);
        let zero = RawTerm::app(format!("zero{n}"), vec![]);
        let one_var = |nm: &str| tele(&[(nm, RawType::plain(&z))]);
        decls.push(RawDecl::TermEq {
            telescope: one_var("a"),
            lhs: addz(v("a"), zero.clone()),
            rhs: v("a"),
            at: RawType::plain(&z),
        });
        decls.push(RawDecl::TermEq {
            telescope: one_var("a"),
            lhs: addz(zero.clone(), v("a")),
            rhs: v("a"),
            at: RawType::plain(&z),
        });
        // every element is its own inverse over F₂
        decls.push(RawDecl::TermEq {
            telescope: one_var("a"),
            lhs: addz(v("a"), v("a")),
            rhs: zero.clone(),
            at: RawType::plain(&z),
        });
        decls.push(RawDecl::TermEq {
            telescope: tele(&[
                ("a", RawType::plain(&z)),
                ("b", RawType::plain(&z)),
                ("c", RawType::plain(&z)),
            ]),
            lhs: addz(v("a"), addz(v("b"), v("c"))),
            rhs: addz(addz(v("a"), v("b")), v("c")),
            at: RawType::plain(&z),
        });
        decls.push(RawDecl::TermEq {
            telescope: tele(&[("a", RawType::plain(&z)), ("b", RawType::plain(&z))]),
            lhs: addz(v("a"), v("b")),
            rhs: addz(v("b"), v("a")),
            at: RawType::plain(&z),
        });
    }
    for n in 1..=max_degree {
        let c = cn(n);
        let zprev = zn(n - 1);
        let zero_prev = RawTerm::app(format!("zero{}", n - 1), vec![]);
        decls.push(RawDecl::Sort {
            name: c.clone(),
            telescope: tele(&[("x", RawType::plain(&zprev))]),
        });
        // chains add over boundaries that add
        decls.push(RawDecl::Op {
            name: format!("addC{n}"),
            telescope: tele(&[
                ("x", RawType::plain(&zprev)),
                ("y", RawType::plain(&zprev)),
                ("a", RawType::new(c.clone(), vec![v("x")])),
                ("b", RawType::new(c.clone(), vec![v("y")])),
            ]),
            result: RawType::new(
                c.clone(),
                vec![RawTerm::app(format!("addZ{}", n - 1), vec![v("x"), v("y")])],
            ),
        });
        // chains with zero boundary are exactly the cycles
        decls.push(RawDecl::TypeEq {
            telescope: vec![],
            lhs: RawType::new(c, vec![zero_prev]),
            rhs: RawType::plain(zn(n)),
        });
    }
    decls
}

/// The theory of directed graphs: a sort of vertices and a dependent sort of
/// edges, no operations, no equations. Used by the shipped proof library
/// (its models enumerate quickly at small bounds).
pub fn graph() -> Vec<RawDecl> {
    vec![
        RawDecl::Sort { name: "V".into(), telescope: vec![] },
        RawDecl::Sort {
            name: "E".into(),
            telescope: tele(&[("x", RawType::plain("V")), ("y", RawType::plain("V"))]),
        },
    ]
}
