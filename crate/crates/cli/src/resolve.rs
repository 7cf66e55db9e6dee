//! Resolution of parsed, name-based payloads against an elaborated theory:
//! formulas, models, homs, categories, functors and proofs.

use std::collections::BTreeMap;

use gatlab_core::cat::{FinCategory, Functor};
use gatlab_core::fibrations::ModelHom;
use gatlab_core::formulas::{Formula, ProofNode, RuleApp, Sequent};
use gatlab_core::kernel::raw::{RawTerm, RawType};
use gatlab_core::kernel::{Context, SortId, TermExpr, Theory, TypeExpr};
use gatlab_core::semantics::{ContextElement, FiniteModel};

use crate::diag::Span;
use crate::parse::{
    CategoryFile, FormulaFile, FunctorFile, HomFile, ModelFile, ProofFile, RawFormula,
    RawProofNode,
};

pub type ResolveResult<T> = Result<T, (Span, String)>;

fn err<T>(span: Span, message: impl Into<String>) -> ResolveResult<T> {
    Err((span, message.into()))
}

/// Variable scope: names by position.
#[derive(Clone, Default)]
pub struct Scope(Vec<String>);

impl Scope {
    fn lookup(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn push(&mut self, name: &str) {
        self.0.push(name.to_owned());
    }
}

pub fn resolve_term(
    th: &Theory,
    scope: &Scope,
    raw: &RawTerm,
    span: Span,
) -> ResolveResult<TermExpr> {
    match raw {
        RawTerm::Ident(name) => {
            if let Some(pos) = scope.lookup(name) {
                return Ok(TermExpr::Var(pos));
            }
            match th.op_by_name(name) {
                Some(op) => Ok(TermExpr::App(op, vec![])),
                None => err(span, format!("unknown term `{name}`")),
            }
        }
        RawTerm::App(name, args) => {
            let op = th
                .op_by_name(name)
                .ok_or_else(|| (span, format!("unknown operation `{name}`")))?;
            let args = args
                .iter()
                .map(|a| resolve_term(th, scope, a, span))
                .collect::<ResolveResult<Vec<_>>>()?;
            Ok(TermExpr::App(op, args))
        }
    }
}

pub fn resolve_type(
    th: &Theory,
    scope: &Scope,
    raw: &RawType,
    span: Span,
) -> ResolveResult<TypeExpr> {
    let sort = th
        .sort_by_name(&raw.sort)
        .ok_or_else(|| (span, format!("unknown sort `{}`", raw.sort)))?;
    let args = raw
        .args
        .iter()
        .map(|a| resolve_term(th, scope, a, span))
        .collect::<ResolveResult<Vec<_>>>()?;
    Ok(TypeExpr { sort, args })
}

pub fn resolve_telescope(
    th: &Theory,
    base_scope: &Scope,
    raw: &[(String, RawType)],
    span: Span,
) -> ResolveResult<(Vec<TypeExpr>, Scope)> {
    let mut scope = base_scope.clone();
    let mut types = Vec::new();
    for (var, raw_ty) in raw {
        let ty = resolve_type(th, &scope, raw_ty, span)?;
        types.push(ty);
        scope.push(var);
    }
    Ok((types, scope))
}

pub fn resolve_formula(
    th: &Theory,
    scope: &Scope,
    raw: &RawFormula,
    span: Span,
) -> ResolveResult<Formula> {
    Ok(match raw {
        RawFormula::Top => Formula::Top,
        RawFormula::Bot => Formula::Bot,
        RawFormula::Not(body) => Formula::not(resolve_formula(th, scope, body, span)?),
        RawFormula::And(parts) => Formula::And(
            parts
                .iter()
                .map(|q| resolve_formula(th, scope, q, span))
                .collect::<ResolveResult<Vec<_>>>()?,
        ),
        RawFormula::Or(parts) => Formula::Or(
            parts
                .iter()
                .map(|q| resolve_formula(th, scope, q, span))
                .collect::<ResolveResult<Vec<_>>>()?,
        ),
        RawFormula::Exists { ext, body } | RawFormula::Forall { ext, body } => {
            let (types, inner_scope) = resolve_telescope(th, scope, ext, span)?;
            let body = resolve_formula(th, &inner_scope, body, span)?;
            match raw {
                RawFormula::Exists { .. } => Formula::exists(types, body),
                _ => Formula::forall(types, body),
            }
        }
    })
}

/// Resolves a formula file to its context and formula, checking
/// well-formedness against the theory.
pub fn resolve_formula_file(
    th: &Theory,
    file: &FormulaFile,
    whole: Span,
) -> ResolveResult<(Context, Formula)> {
    let (types, scope) = resolve_telescope(th, &Scope::default(), &file.context, whole)?;
    let ctx = Context::from_entries(types);
    th.wf_context(&ctx).map_err(|e| (whole, e.to_string()))?;
    let formula = resolve_formula(th, &scope, &file.body, whole)?;
    gatlab_core::formulas::wf_formula(th, &ctx, &formula).map_err(|e| (whole, e.to_string()))?;
    Ok((ctx, formula))
}

// ---------------------------------------------------------------- models

/// Builds a finite model from a model file. Omitted sort rows default to
/// empty carriers; op rows must be total, which the model checker verifies.
pub fn resolve_model(th: &Theory, file: &ModelFile) -> ResolveResult<FiniteModel> {
    let mut m = FiniteModel::new(th);
    // sort rows first, in declaration order, so element lookups for
    // dependent arguments resolve against earlier tables
    let mut rows_by_sort: BTreeMap<usize, Vec<&crate::parse::SortRow>> = BTreeMap::new();
    for row in &file.sort_rows {
        let sort = th
            .sort_by_name(&row.sort)
            .ok_or_else(|| (row.span, format!("unknown sort `{}`", row.sort)))?;
        rows_by_sort.entry(sort.0).or_default().push(row);
    }
    for (sort_idx, rows) in &rows_by_sort {
        let decl = &th.sorts()[*sort_idx];
        for row in rows {
            let tuple = resolve_element_tuple(&m, &decl.telescope, &row.args, row.span)?;
            if m.carrier(SortId(*sort_idx), &tuple).is_some() {
                return err(row.span, format!("duplicate carrier row for `{}`", row.sort));
            }
            m.set_carrier(SortId(*sort_idx), tuple, row.elements.clone());
        }
    }
    // fill omitted rows with empty carriers, in declaration order
    for (s, decl) in th.sorts().iter().enumerate() {
        let tuples = m.enumerate_context(&decl.telescope);
        for tuple in tuples {
            if m.carrier(SortId(s), &tuple).is_none() {
                m.set_carrier(SortId(s), tuple, vec![]);
            }
        }
    }
    for row in &file.op_rows {
        let op = th
            .op_by_name(&row.op)
            .ok_or_else(|| (row.span, format!("unknown operation `{}`", row.op)))?;
        let decl = th.op(op);
        let tuple = resolve_element_tuple(&m, &decl.telescope, &row.args, row.span)?;
        let carrier = m
            .try_type_carrier(&decl.result, &tuple)
            .ok_or_else(|| (row.span, "result carrier missing".to_owned()))?;
        let value = carrier.iter().position(|e| *e == row.value).ok_or_else(|| {
            (row.span, format!("element `{}` is not in the result carrier", row.value))
        })?;
        if m.op_entry(op, &tuple).is_some() {
            return err(row.span, format!("duplicate op row for `{}`", row.op));
        }
        m.set_op(op, tuple, value);
    }
    Ok(m)
}

/// Resolves a tuple of element names against the (dependent) carriers of a
/// telescope.
fn resolve_element_tuple(
    m: &FiniteModel,
    telescope: &Context,
    names: &[String],
    span: Span,
) -> ResolveResult<ContextElement> {
    if names.len() != telescope.len() {
        return err(span, format!("expected {} arguments, got {}", telescope.len(), names.len()));
    }
    let mut tuple = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let carrier = m
            .try_type_carrier(telescope.entry(i), &tuple)
            .ok_or_else(|| (span, format!("carrier for argument {i} is not declared yet")))?;
        let elem = carrier.iter().position(|e| e == name).ok_or_else(|| {
            (span, format!("element `{name}` is not in the expected carrier"))
        })?;
        tuple.push(elem);
    }
    Ok(tuple)
}

/// Resolves a context element given by element names, relative to a context.
pub fn resolve_context_element(
    m: &FiniteModel,
    ctx: &Context,
    names: &[String],
    span: Span,
) -> ResolveResult<ContextElement> {
    resolve_element_tuple(m, ctx, names, span)
}

// ---------------------------------------------------------------- homs

pub fn resolve_hom(
    th: &Theory,
    file: &HomFile,
    source: FiniteModel,
    target: FiniteModel,
) -> ResolveResult<ModelHom> {
    let mut hom = ModelHom::new(source, target, th.sorts().len());
    let mut rows_by_sort: BTreeMap<usize, Vec<&crate::parse::MapRow>> = BTreeMap::new();
    for row in &file.rows {
        let sort = th
            .sort_by_name(&row.sort)
            .ok_or_else(|| (row.span, format!("unknown sort `{}`", row.sort)))?;
        rows_by_sort.entry(sort.0).or_default().push(row);
    }
    for (s, decl) in th.sorts().iter().enumerate() {
        let rows = rows_by_sort.remove(&s).unwrap_or_default();
        let mut declared: BTreeMap<ContextElement, Vec<usize>> = BTreeMap::new();
        for row in rows {
            let tuple =
                resolve_element_tuple(&hom.source, &decl.telescope, &row.args, row.span)?;
            let source_carrier = hom
                .source
                .carrier(SortId(s), &tuple)
                .ok_or_else(|| (row.span, "source carrier missing".to_owned()))?
                .clone();
            // the image tuple needs the earlier components, which are
            // already installed since sorts are processed in order
            let image = hom.map_tuple(&decl.telescope, &tuple);
            let target_carrier = hom
                .target
                .carrier(SortId(s), &image)
                .ok_or_else(|| (row.span, "target carrier missing".to_owned()))?
                .clone();
            let mut component = vec![usize::MAX; source_carrier.len()];
            for (from, to) in &row.entries {
                let from_idx = source_carrier.iter().position(|e| e == from).ok_or_else(|| {
                    (row.span, format!("element `{from}` not in the source carrier"))
                })?;
                let to_idx = target_carrier.iter().position(|e| e == to).ok_or_else(|| {
                    (row.span, format!("element `{to}` not in the target carrier"))
                })?;
                component[from_idx] = to_idx;
            }
            if let Some(missing) = component.iter().position(|&v| v == usize::MAX) {
                return err(
                    row.span,
                    format!("element `{}` has no image", source_carrier[missing]),
                );
            }
            declared.insert(tuple, component);
        }
        // omitted rows are legal exactly when the source carrier is empty
        for tuple in hom.source.enumerate_context(&decl.telescope) {
            let component = match declared.remove(&tuple) {
                Some(c) => c,
                None => {
                    let carrier_len = hom
                        .source
                        .carrier(SortId(s), &tuple)
                        .map(|c| c.len())
                        .unwrap_or(0);
                    if carrier_len > 0 {
                        return err(
                            Span::default(),
                            format!(
                                "hom `{}`: missing map row for sort `{}` at a nonempty carrier",
                                file.name, decl.name
                            ),
                        );
                    }
                    Vec::new()
                }
            };
            hom.set_component(SortId(s), tuple, component);
        }
    }
    Ok(hom)
}

// ---------------------------------------------------------------- categories

pub fn resolve_category(file: &CategoryFile, whole: Span) -> ResolveResult<FinCategory> {
    let objects: Vec<&str> = file.objects.iter().map(|s| s.as_str()).collect();
    let arrows: Vec<(&str, &str, &str)> = file
        .arrows
        .iter()
        .map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str()))
        .collect();
    // ids must be given for every object, in some order
    let mut ids = Vec::new();
    for obj in &file.objects {
        let id = file
            .ids
            .iter()
            .find(|(o, _)| o == obj)
            .map(|(_, a)| a.as_str())
            .ok_or_else(|| (whole, format!("no identity declared for object `{obj}`")))?;
        ids.push(id);
    }
    let comps: Vec<(&str, &str, &str)> = file
        .comps
        .iter()
        .map(|(f, g, h)| (f.as_str(), g.as_str(), h.as_str()))
        .collect();

    let obj = |name: &str| {
        objects
            .iter()
            .position(|o| *o == name)
            .ok_or_else(|| (whole, format!("unknown object `{name}`")))
    };
    let n = objects.len();
    let mut homs: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            homs.insert((x, y), Vec::new());
        }
    }
    for (arrow, src, tgt) in &arrows {
        homs.get_mut(&(obj(src)?, obj(tgt)?)).unwrap().push(arrow.to_string());
    }
    let locate = |name: &str| -> ResolveResult<(usize, usize, usize)> {
        for ((x, y), names) in &homs {
            if let Some(idx) = names.iter().position(|a| a == name) {
                return Ok((*x, *y, idx));
            }
        }
        err(whole, format!("unknown arrow `{name}`"))
    };
    let mut comp: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                comp.insert(
                    (x, y, z),
                    vec![vec![usize::MAX; homs[&(y, z)].len()]; homs[&(x, y)].len()],
                );
            }
        }
    }
    let mut id_triples = Vec::new();
    for id in &ids {
        id_triples.push(locate(id)?);
    }
    for (x, &(s, t, _)) in id_triples.iter().enumerate() {
        if (s, t) != (x, x) {
            return err(whole, format!("identity of `{}` is not an endomorphism", objects[x]));
        }
    }
    // unit rows are implied; list only the remaining composites
    let mut all = Vec::new();
    for ((x, y), names) in &homs {
        for idx in 0..names.len() {
            all.push((*x, *y, idx));
        }
    }
    for &(x, y, idx) in &all {
        let (ix, _, iidx) = id_triples[x];
        let (jx, _, jidx) = id_triples[y];
        comp.get_mut(&(ix, x, y)).unwrap()[iidx][idx] = idx;
        comp.get_mut(&(x, jx, y)).unwrap()[idx][jidx] = idx;
    }
    for (f, g, h) in &comps {
        let (fx, fy, fi) = locate(f)?;
        let (gx, gy, gi) = locate(g)?;
        let (hx, hy, hi) = locate(h)?;
        if fy != gx || (hx, hy) != (fx, gy) {
            return err(whole, format!("composite `{f} ; {g} = {h}` has mismatched endpoints"));
        }
        comp.get_mut(&(fx, fy, gy)).unwrap()[fi][gi] = hi;
    }
    for ((x, y, z), table) in &comp {
        for (fi, row) in table.iter().enumerate() {
            for (gi, &out) in row.iter().enumerate() {
                if out == usize::MAX {
                    return err(
                        whole,
                        format!(
                            "missing composite `{} ; {}`",
                            homs[&(*x, *y)][fi],
                            homs[&(*y, *z)][gi]
                        ),
                    );
                }
            }
        }
    }
    let ids_idx: Vec<usize> = id_triples.iter().map(|&(_, _, i)| i).collect();
    let object_names: Vec<String> = file.objects.clone();
    FinCategory::new(&file.name, object_names, homs, comp, ids_idx)
        .map_err(|e| (whole, e.to_string()))
}

// ---------------------------------------------------------------- functors

pub fn resolve_functor(
    file: &FunctorFile,
    source: FinCategory,
    target: FinCategory,
    whole: Span,
) -> ResolveResult<Functor> {
    let objects: Vec<(&str, &str)> =
        file.ob_map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let arrows: Vec<(&str, &str)> =
        file.arrow_map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let find_obj = |cat: &FinCategory, name: &str| {
        cat.objects()
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| (whole, format!("unknown object `{name}`")))
    };
    let find_arrow = |cat: &FinCategory, name: &str| {
        cat.arrows()
            .into_iter()
            .find(|&a| cat.arrow_name(a) == name)
            .ok_or_else(|| (whole, format!("unknown arrow `{name}`")))
    };
    let mut ob_map = vec![usize::MAX; source.object_count()];
    for (from, to) in &objects {
        ob_map[find_obj(&source, from)?] = find_obj(&target, to)?;
    }
    if let Some(missing) = ob_map.iter().position(|&v| v == usize::MAX) {
        return err(whole, format!("object `{}` has no image", source.objects()[missing]));
    }
    let mut assignments: BTreeMap<(usize, usize, usize), gatlab_core::cat::Arrow> =
        BTreeMap::new();
    for (x, &fx) in ob_map.iter().enumerate() {
        let id = source.id_arrow(x);
        assignments.insert((id.src, id.tgt, id.idx), target.id_arrow(fx));
    }
    for (from, to) in &arrows {
        let a = find_arrow(&source, from)?;
        assignments.insert((a.src, a.tgt, a.idx), find_arrow(&target, to)?);
    }
    let mut arrow_map = BTreeMap::new();
    for x in 0..source.object_count() {
        for y in 0..source.object_count() {
            let mut map = Vec::new();
            for idx in 0..source.hom(x, y).len() {
                let image = assignments.get(&(x, y, idx)).ok_or_else(|| {
                    (whole, format!("arrow `{}` has no image", source.hom(x, y)[idx]))
                })?;
                if (image.src, image.tgt) != (ob_map[x], ob_map[y]) {
                    return err(
                        whole,
                        format!("image of `{}` has the wrong endpoints", source.hom(x, y)[idx]),
                    );
                }
                map.push(image.idx);
            }
            arrow_map.insert((x, y), map);
        }
    }
    Functor::new(&file.name, source, target, ob_map, arrow_map).map_err(|e| (whole, e.to_string()))
}

// ---------------------------------------------------------------- proofs

pub fn resolve_proof(th: &Theory, file: &ProofFile) -> ResolveResult<ProofNode> {
    resolve_proof_node(th, &file.root)
}

fn resolve_proof_node(th: &Theory, raw: &RawProofNode) -> ResolveResult<ProofNode> {
    let span = raw.span;
    let (types, scope) = resolve_telescope(th, &Scope::default(), &raw.ctx, span)?;
    let ctx = Context::from_entries(types);
    let lhs = resolve_formula(th, &scope, &raw.lhs, span)?;
    let rhs = resolve_formula(th, &scope, &raw.rhs, span)?;
    let conclusion = Sequent { ctx, lhs, rhs };
    let mut children = raw
        .children
        .iter()
        .map(|c| resolve_proof_node(th, c))
        .collect::<ResolveResult<Vec<_>>>()?;
    let arity_error = |expected: usize| {
        (
            span,
            format!(
                "rule `{}` takes {} subproof(s), found {}",
                raw.rule,
                expected,
                raw.children.len()
            ),
        )
    };
    fn pop_single(
        children: &mut Vec<ProofNode>,
        arity_error: impl Fn(usize) -> (Span, String),
    ) -> ResolveResult<Box<ProofNode>> {
        if children.len() != 1 {
            return Err(arity_error(1));
        }
        Ok(Box::new(children.remove(0)))
    }
    let rule = match raw.rule.as_str() {
        "refl" => RuleApp::Refl,
        "top-intro" => RuleApp::TopIntro,
        "bot-elim" => RuleApp::BotElim,
        "non-contradiction" => RuleApp::NonContradiction,
        "excluded-middle" => RuleApp::ExcludedMiddle,
        "trans" => {
            if children.len() != 2 {
                return Err(arity_error(2));
            }
            let middle_raw = raw
                .middle
                .as_ref()
                .ok_or_else(|| (span, "trans needs its middle formula".to_owned()))?;
            let middle = resolve_formula(th, &scope, middle_raw, span)?;
            let right = Box::new(children.pop().unwrap());
            let left = Box::new(children.pop().unwrap());
            RuleApp::Trans { middle, left, right }
        }
        "or-elim" => RuleApp::OrElim { premises: std::mem::take(&mut children) },
        "and-intro" => RuleApp::AndIntro { premises: std::mem::take(&mut children) },
        "or-proj" => RuleApp::OrProj {
            index: raw.index.ok_or_else(|| (span, "or-proj needs an index".to_owned()))?,
            premise: pop_single(&mut children, arity_error)?,
        },
        "and-proj" => RuleApp::AndProj {
            index: raw.index.ok_or_else(|| (span, "and-proj needs an index".to_owned()))?,
            premise: pop_single(&mut children, arity_error)?,
        },
        "exists-adj" => RuleApp::ExistsAdj { premise: pop_single(&mut children, arity_error)? },
        "forall-adj" => RuleApp::ForallAdj { premise: pop_single(&mut children, arity_error)? },
        "exists-coadj" => RuleApp::ExistsCoadj {
            ext_len: raw.index.ok_or_else(|| (span, "exists-coadj needs the extension length".to_owned()))?,
            premise: pop_single(&mut children, arity_error)?,
        },
        "forall-coadj" => RuleApp::ForallCoadj {
            ext_len: raw.index.ok_or_else(|| (span, "forall-coadj needs the extension length".to_owned()))?,
            premise: pop_single(&mut children, arity_error)?,
        },
        other => return err(span, format!("unknown rule tag `{other}`")),
    };
    if !children.is_empty() && !matches!(rule, RuleApp::OrElim { .. } | RuleApp::AndIntro { .. }) {
        return err(span, format!("rule `{}` has extra subproofs", raw.rule));
    }
    Ok(ProofNode { conclusion, rule })
}
