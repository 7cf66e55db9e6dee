//! Canonical printers for every file format. Printing an elaborated object
//! and reparsing it yields a structurally identical object; variable names
//! are canonical (`x0`, `x1`, ..) since the kernel is positional.

use std::fmt::Write;

use gatlab_core::cat::FinCategory;
use gatlab_core::fibrations::ModelHom;
use gatlab_core::formulas::{Formula, ProofNode, RuleApp, Sequent};
use gatlab_core::kernel::{Context, SortId, TermExpr, Theory, TypeExpr};
use gatlab_core::semantics::FiniteModel;

fn var_name(i: usize) -> String {
    format!("x{i}")
}

pub fn print_term(th: &Theory, t: &TermExpr) -> String {
    match t {
        TermExpr::Var(i) => var_name(*i),
        TermExpr::App(op, args) => {
            let name = &th.op(*op).name;
            if args.is_empty() {
                format!("{name}()")
            } else {
                let parts: Vec<String> = args.iter().map(|a| print_term(th, a)).collect();
                format!("{name}({})", parts.join(", "))
            }
        }
    }
}

pub fn print_type(th: &Theory, ty: &TypeExpr) -> String {
    let name = &th.sort(ty.sort).name;
    if ty.args.is_empty() {
        name.clone()
    } else {
        let parts: Vec<String> = ty.args.iter().map(|a| print_term(th, a)).collect();
        format!("{name}({})", parts.join(", "))
    }
}

pub fn print_telescope(th: &Theory, ctx: &Context) -> String {
    let parts: Vec<String> = ctx
        .entries()
        .iter()
        .enumerate()
        .map(|(i, ty)| format!("{}: {}", var_name(i), print_type(th, ty)))
        .collect();
    format!("({})", parts.join(", "))
}

fn print_telescope_offset(th: &Theory, types: &[TypeExpr], offset: usize) -> String {
    let parts: Vec<String> = types
        .iter()
        .enumerate()
        .map(|(i, ty)| format!("{}: {}", var_name(offset + i), print_type(th, ty)))
        .collect();
    format!("({})", parts.join(", "))
}

pub fn print_theory(name: &str, th: &Theory) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theory {name} {{");
    for decl in th.decl_stream() {
        match decl {
            gatlab_core::kernel::DeclRef::Sort(s) => {
                let d = th.sort(*s);
                let _ = writeln!(out, "  sort {} {};", d.name, print_telescope(th, &d.telescope));
            }
            gatlab_core::kernel::DeclRef::Op(o) => {
                let d = th.op(*o);
                let _ = writeln!(
                    out,
                    "  op {} {} : {};",
                    d.name,
                    print_telescope(th, &d.telescope),
                    print_type(th, &d.result)
                );
            }
        }
    }
    for eq in th.equations() {
        match &eq.body {
            gatlab_core::kernel::EquationBody::TermEq { lhs, rhs, at } => {
                let _ = writeln!(
                    out,
                    "  eq {} : {} == {} : {};",
                    print_telescope(th, &eq.telescope),
                    print_term(th, lhs),
                    print_term(th, rhs),
                    print_type(th, at)
                );
            }
            gatlab_core::kernel::EquationBody::TypeEq { lhs, rhs } => {
                let _ = writeln!(
                    out,
                    "  typeq {} : {} == {};",
                    print_telescope(th, &eq.telescope),
                    print_type(th, lhs),
                    print_type(th, rhs)
                );
            }
        }
    }
    if th.is_confluent() {
        let _ = writeln!(out, "  pragma confluent;");
    }
    out.push_str("}\n");
    out
}

pub fn print_formula_body(th: &Theory, phi: &Formula, depth: usize) -> String {
    match phi {
        Formula::Top => "true".to_owned(),
        Formula::Bot => "false".to_owned(),
        Formula::Not(body) => format!("not({})", print_formula_body(th, body, depth)),
        Formula::And(parts) => {
            let inner: Vec<String> =
                parts.iter().map(|p| print_formula_body(th, p, depth)).collect();
            format!("and({})", inner.join(", "))
        }
        Formula::Or(parts) => {
            let inner: Vec<String> =
                parts.iter().map(|p| print_formula_body(th, p, depth)).collect();
            format!("or({})", inner.join(", "))
        }
        Formula::Exists { ext, body } => format!(
            "exists {}. {}",
            print_telescope_offset(th, ext, depth),
            print_formula_body(th, body, depth + ext.len())
        ),
        Formula::Forall { ext, body } => format!(
            "forall {}. {}",
            print_telescope_offset(th, ext, depth),
            print_formula_body(th, body, depth + ext.len())
        ),
    }
}

pub fn print_formula_file(th: &Theory, name: &str, ctx: &Context, phi: &Formula) -> String {
    format!(
        "formula {name} in {} :=\n  {}\n",
        print_telescope(th, ctx),
        print_formula_body(th, phi, ctx.len())
    )
}

pub fn print_model(th: &Theory, name: &str, theory_name: &str, m: &FiniteModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {name} of {theory_name} {{");
    for (s, decl) in th.sorts().iter().enumerate() {
        for (tuple, carrier) in m.sort_table(SortId(s)) {
            if carrier.is_empty() {
                continue; // omitted rows default to empty carriers
            }
            let args = element_names(m, &decl.telescope, tuple);
            let _ = writeln!(
                out,
                "  sort {} [{}] = {{ {} }};",
                decl.name,
                args.join(", "),
                carrier.join(", ")
            );
        }
    }
    for (o, decl) in th.ops().iter().enumerate() {
        for (tuple, value) in m.op_table(gatlab_core::kernel::OpId(o)) {
            let args = element_names(m, &decl.telescope, tuple);
            let carrier = m.type_carrier(&decl.result, tuple);
            let _ = writeln!(
                out,
                "  op {} [{}] = {};",
                decl.name,
                args.join(", "),
                carrier[*value]
            );
        }
    }
    out.push_str("}\n");
    out
}

fn element_names(m: &FiniteModel, telescope: &Context, tuple: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    for (i, ty) in telescope.entries().iter().enumerate() {
        let carrier = m.type_carrier(ty, &tuple[..i]);
        out.push(carrier[tuple[i]].clone());
    }
    out
}

pub fn print_hom(
    th: &Theory,
    name: &str,
    theory_name: &str,
    source_path: &str,
    target_path: &str,
    hom: &ModelHom,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hom {name} of {theory_name} {{");
    let _ = writeln!(out, "  source \"{source_path}\";");
    let _ = writeln!(out, "  target \"{target_path}\";");
    for (s, decl) in th.sorts().iter().enumerate() {
        for tuple in hom.source.enumerate_context(&decl.telescope) {
            let component = hom.component(SortId(s), &tuple).expect("total hom");
            let source_carrier = hom.source.carrier(SortId(s), &tuple).expect("total model");
            if source_carrier.is_empty() {
                continue;
            }
            let image = hom.map_tuple(&decl.telescope, &tuple);
            let target_carrier = hom.target.carrier(SortId(s), &image).expect("total model");
            let args = element_names(&hom.source, &decl.telescope, &tuple);
            let entries: Vec<String> = component
                .iter()
                .enumerate()
                .map(|(from, &to)| format!("{} -> {}", source_carrier[from], target_carrier[to]))
                .collect();
            let _ = writeln!(
                out,
                "  map {} [{}] : {};",
                decl.name,
                args.join(", "),
                entries.join(", ")
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn print_category(cat: &FinCategory) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "category {} {{", cat.name);
    let _ = writeln!(out, "  objects {};", cat.objects().join(", "));
    for a in cat.arrows() {
        let _ = writeln!(
            out,
            "  arrow {} : {} -> {};",
            cat.arrow_name(a),
            cat.objects()[a.src],
            cat.objects()[a.tgt]
        );
    }
    for (x, obj) in cat.objects().iter().enumerate() {
        let _ = writeln!(out, "  id {} = {};", obj, cat.arrow_name(cat.id_arrow(x)));
    }
    for f in cat.arrows() {
        for g in cat.arrows() {
            if f.tgt != g.src {
                continue;
            }
            if f == cat.id_arrow(f.src) || g == cat.id_arrow(g.src) {
                continue; // unit rows are implied
            }
            let fg = cat.compose(f, g);
            let _ = writeln!(
                out,
                "  comp {} {} = {};",
                cat.arrow_name(f),
                cat.arrow_name(g),
                cat.arrow_name(fg)
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn print_functor(f: &gatlab_core::cat::Functor, source_path: &str, target_path: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "functor {} {{", f.name);
    let _ = writeln!(out, "  source \"{source_path}\";");
    let _ = writeln!(out, "  target \"{target_path}\";");
    for (x, obj) in f.source.objects().iter().enumerate() {
        let _ = writeln!(out, "  ob {} -> {};", obj, f.target.objects()[f.on_object(x)]);
    }
    for a in f.source.arrows() {
        if a == f.source.id_arrow(a.src) {
            continue; // identities are implied
        }
        let _ = writeln!(
            out,
            "  arrow {} -> {};",
            f.source.arrow_name(a),
            f.target.arrow_name(f.on_arrow(a))
        );
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------- proofs

fn sexp_type(th: &Theory, ty: &TypeExpr, names: &[String]) -> String {
    let sort = &th.sort(ty.sort).name;
    if ty.args.is_empty() {
        sort.clone()
    } else {
        let args: Vec<String> = ty.args.iter().map(|a| sexp_term(th, a, names)).collect();
        format!("({} {})", sort, args.join(" "))
    }
}

fn sexp_term(th: &Theory, t: &TermExpr, names: &[String]) -> String {
    match t {
        TermExpr::Var(i) => names[*i].clone(),
        TermExpr::App(op, args) => {
            let name = &th.op(*op).name;
            if args.is_empty() {
                format!("({name})")
            } else {
                let parts: Vec<String> = args.iter().map(|a| sexp_term(th, a, names)).collect();
                format!("({} {})", name, parts.join(" "))
            }
        }
    }
}

fn sexp_formula(th: &Theory, phi: &Formula, names: &mut Vec<String>) -> String {
    match phi {
        Formula::Top => "true".to_owned(),
        Formula::Bot => "false".to_owned(),
        Formula::Not(body) => format!("(not {})", sexp_formula(th, body, names)),
        Formula::And(parts) | Formula::Or(parts) => {
            let tag = if matches!(phi, Formula::And(_)) { "and" } else { "or" };
            if parts.is_empty() {
                format!("({tag})")
            } else {
                let inner: Vec<String> =
                    parts.iter().map(|p| sexp_formula(th, p, names)).collect();
                format!("({} {})", tag, inner.join(" "))
            }
        }
        Formula::Exists { ext, body } | Formula::Forall { ext, body } => {
            let tag = if matches!(phi, Formula::Exists { .. }) { "exists" } else { "forall" };
            let mut binder = String::new();
            let before = names.len();
            for ty in ext {
                let v = var_name(names.len());
                let _ = write!(binder, "({} {}) ", v, sexp_type(th, ty, names));
                names.push(v);
            }
            let body_str = sexp_formula(th, body, names);
            names.truncate(before);
            format!("({} ({}) {})", tag, binder.trim_end(), body_str)
        }
    }
}

fn sexp_sequent(th: &Theory, seq: &Sequent) -> String {
    let mut names: Vec<String> = (0..seq.ctx.len()).map(var_name).collect();
    let ctx_parts: Vec<String> = seq
        .ctx
        .entries()
        .iter()
        .enumerate()
        .map(|(i, ty)| format!("({} {})", var_name(i), sexp_type(th, ty, &names[..i])))
        .collect();
    format!(
        "(seq (ctx {}) {} {})",
        ctx_parts.join(" "),
        sexp_formula(th, &seq.lhs, &mut names.clone()),
        sexp_formula(th, &seq.rhs, &mut names)
    )
}

pub fn print_proof(th: &Theory, name: &str, theory_name: &str, node: &ProofNode) -> String {
    let mut out = format!("proof {name} of {theory_name}\n");
    print_proof_node(th, node, 0, &mut out);
    out.push('\n');
    out
}

fn print_proof_node(th: &Theory, node: &ProofNode, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let _ = write!(out, "{pad}({} {}", node.rule.tag(), sexp_sequent(th, &node.conclusion));
    let children: Vec<&ProofNode> = match &node.rule {
        RuleApp::Refl
        | RuleApp::TopIntro
        | RuleApp::BotElim
        | RuleApp::NonContradiction
        | RuleApp::ExcludedMiddle => vec![],
        RuleApp::Trans { middle, left, right } => {
            let mut names: Vec<String> = (0..node.conclusion.ctx.len()).map(var_name).collect();
            let _ = write!(out, " {}", sexp_formula(th, middle, &mut names));
            vec![left, right]
        }
        RuleApp::OrElim { premises } | RuleApp::AndIntro { premises } => {
            premises.iter().collect()
        }
        RuleApp::OrProj { index, premise } | RuleApp::AndProj { index, premise } => {
            let _ = write!(out, " {index}");
            vec![premise]
        }
        RuleApp::ExistsAdj { premise } | RuleApp::ForallAdj { premise } => vec![premise],
        RuleApp::ExistsCoadj { ext_len, premise } | RuleApp::ForallCoadj { ext_len, premise } => {
            let _ = write!(out, " {ext_len}");
            vec![premise]
        }
    };
    if children.is_empty() {
        out.push(')');
    } else {
        for child in children {
            out.push('\n');
            print_proof_node(th, child, indent + 1, out);
        }
        out.push(')');
    }
}
