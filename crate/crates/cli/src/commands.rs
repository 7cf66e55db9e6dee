//! Command implementations. Each command produces a [`Report`]; the exit
//! code is zero exactly when every verdict passes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gatlab_core::cat::corpus as catcorpus;
use gatlab_core::cat::{to_model, FinCategory, Functor};
use gatlab_core::fibrations::{
    beck_chevalley_holds, invariance_suite, is_anodyne_fibration, ModelHom,
};
use gatlab_core::formulas::{check_proof, find_countermodel, Formula};
use gatlab_core::kernel::{elaborate_theory, Context, SortId, Theory};
use gatlab_core::semantics::FiniteModel;

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::corpus;
use crate::diag::{Diagnostic, Span};
use crate::parse;
use crate::report::{Report, ReportBuilder};
use crate::resolve;

pub type CmdResult<T> = Result<T, Box<dyn std::error::Error>>;

fn read(path: &Path) -> CmdResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

fn diag(path: &Path, source: &str, span: Span, message: String) -> Box<dyn std::error::Error> {
    Box::new(Diagnostic::new(&path.display().to_string(), source, span, message))
}

/// Loads a theory: an explicit path wins, otherwise the name must be a
/// builtin.
pub fn load_theory(name: &str, path: Option<&Path>) -> CmdResult<(Theory, String)> {
    if let Some(path) = path {
        let source = read(path)?;
        let file = parse::parse_theory(&source)
            .map_err(|(span, msg)| diag(path, &source, span, msg))?;
        let th = elaborate_theory(&file.decls).map_err(|e| {
            let span = file.decl_spans.get(e.decl_index).copied().unwrap_or_default();
            diag(path, &source, span, e.to_string())
        })?;
        return Ok((th, file.name));
    }
    match corpus::builtin_theory(name) {
        Some(th) => Ok((th, name.to_owned())),
        None => Err(format!(
            "`{name}` is not a builtin theory (builtins: {}); pass --theory <file.gat>",
            corpus::BUILTIN_THEORIES.join(", ")
        )
        .into()),
    }
}

fn load_model(path: &Path, theory_override: Option<&Path>) -> CmdResult<(Theory, FiniteModel, String)> {
    let source = read(path)?;
    let file = parse::parse_model(&source).map_err(|(span, msg)| diag(path, &source, span, msg))?;
    let (th, _) = load_theory(&file.theory, theory_override)?;
    let model = resolve::resolve_model(&th, &file)
        .map_err(|(span, msg)| diag(path, &source, span, msg))?;
    Ok((th, model, file.name))
}

fn load_category(path: &Path) -> CmdResult<FinCategory> {
    let source = read(path)?;
    let file =
        parse::parse_category(&source).map_err(|(span, msg)| diag(path, &source, span, msg))?;
    resolve::resolve_category(&file, Span::new(0, source.len()))
        .map_err(|(span, msg)| diag(path, &source, span, msg))
}

fn sibling(base: &Path, relative: &str) -> PathBuf {
    base.parent().unwrap_or_else(|| Path::new(".")).join(relative)
}

fn load_hom(path: &Path, theory_override: Option<&Path>) -> CmdResult<(Theory, ModelHom, String)> {
    let source = read(path)?;
    let file = parse::parse_hom(&source).map_err(|(span, msg)| diag(path, &source, span, msg))?;
    let (th, _) = load_theory(&file.theory, theory_override)?;
    let (_, source_model, _) = load_model(&sibling(path, &file.source_path), theory_override)?;
    let (_, target_model, _) = load_model(&sibling(path, &file.target_path), theory_override)?;
    let hom = resolve::resolve_hom(&th, &file, source_model, target_model)
        .map_err(|(span, msg)| diag(path, &source, span, msg))?;
    Ok((th, hom, file.name))
}

fn load_functor(path: &Path) -> CmdResult<Functor> {
    let source = read(path)?;
    let file =
        parse::parse_functor(&source).map_err(|(span, msg)| diag(path, &source, span, msg))?;
    let src = load_category(&sibling(path, &file.source_path))?;
    let tgt = load_category(&sibling(path, &file.target_path))?;
    resolve::resolve_functor(&file, src, tgt, Span::new(0, source.len()))
        .map_err(|(span, msg)| diag(path, &source, span, msg))
}

fn load_formula(
    path: &Path,
    th: &Theory,
) -> CmdResult<(String, Context, Formula)> {
    let source = read(path)?;
    let file =
        parse::parse_formula_file(&source).map_err(|(span, msg)| diag(path, &source, span, msg))?;
    let (ctx, formula) = resolve::resolve_formula_file(th, &file, Span::new(0, source.len()))
        .map_err(|(span, msg)| diag(path, &source, span, msg))?;
    Ok((file.name, ctx, formula))
}

// ---------------------------------------------------------------- check

pub fn cmd_check(files: &[PathBuf], theory: Option<&Path>) -> CmdResult<Report> {
    let mut report = ReportBuilder::new("check");
    for path in files {
        let content = read(path)?;
        report.input(&path.display().to_string(), &content);
        let name = path.display().to_string();
        let outcome: Result<String, String> = match path.extension().and_then(|e| e.to_str()) {
            Some("gat") => check_theory_file(path).map_err(|e| e.to_string()),
            Some("gfm") => check_formula_file(path, theory).map_err(|e| e.to_string()),
            Some("gmod") => load_model(path, theory)
                .and_then(|(th, m, _)| {
                    m.check(&th).map_err(|e| e.to_string())?;
                    Ok("model checks".to_owned())
                })
                .map_err(|e| e.to_string()),
            Some("ghom") => load_hom(path, theory)
                .and_then(|(th, h, _)| {
                    h.check(&th).map_err(|e| e.to_string())?;
                    Ok("hom checks".to_owned())
                })
                .map_err(|e| e.to_string()),
            Some("gcat") => load_category(path)
                .map(|c| format!("category with {} objects", c.object_count()))
                .map_err(|e| e.to_string()),
            Some("gfun") => load_functor(path)
                .map(|f| format!("functor {}", f.name))
                .map_err(|e| e.to_string()),
            Some("gpf") => cmd_prove_inner(path, theory).map_err(|e| e.to_string()),
            other => Err(format!("unknown file kind: {other:?}")),
        };
        match outcome {
            Ok(detail) => report.verdict(&name, true, Some(detail)),
            Err(e) => report.verdict(&name, false, Some(e)),
        }
    }
    Ok(report.finish())
}

fn check_theory_file(path: &Path) -> CmdResult<String> {
    let source = read(path)?;
    let file = parse::parse_theory(&source).map_err(|(span, msg)| diag(path, &source, span, msg))?;
    let th = elaborate_theory(&file.decls).map_err(|e| {
        let span = file.decl_spans.get(e.decl_index).copied().unwrap_or_default();
        diag(path, &source, span, e.to_string())
    })?;
    Ok(format!(
        "theory {} elaborates: {} sorts, {} ops, {} equations",
        file.name,
        th.sorts().len(),
        th.ops().len(),
        th.equations().len()
    ))
}

fn check_formula_file(path: &Path, theory: Option<&Path>) -> CmdResult<String> {
    // formulas default to the category theory with equality unless a theory
    // file is given
    let (th, th_name) = load_theory("cat_eq", theory)?;
    let (name, ctx, _) = load_formula(path, &th)?;
    Ok(format!("formula {name} well-formed over {th_name} in a context of length {}", ctx.len()))
}

// ---------------------------------------------------------------- eval

pub fn cmd_eval(
    theory: Option<&Path>,
    theory_name: &str,
    model_path: &Path,
    formula_path: &Path,
    at: &str,
) -> CmdResult<Report> {
    let mut report = ReportBuilder::new("eval");
    let (th, _) = load_theory(theory_name, theory)?;
    let model_src = read(model_path)?;
    report.input(&model_path.display().to_string(), &model_src);
    let (_, model, _) = load_model(model_path, theory)?;
    model.check(&th).map_err(|e| format!("model does not check: {e}"))?;
    let formula_src = read(formula_path)?;
    report.input(&formula_path.display().to_string(), &formula_src);
    let (name, ctx, formula) = load_formula(formula_path, &th)?;
    let names: Vec<String> = if at.trim().is_empty() {
        vec![]
    } else {
        at.split(',').map(|s| s.trim().to_owned()).collect()
    };
    let element = resolve::resolve_context_element(&model, &ctx, &names, Span::default())
        .map_err(|(_, msg)| msg)?;
    let value = model.eval_formula(&formula, &element);
    report.verdict(&name, true, Some(value.to_string()));
    Ok(report.finish())
}

// ---------------------------------------------------------------- prove

fn cmd_prove_inner(path: &Path, theory: Option<&Path>) -> CmdResult<String> {
    let source = read(path)?;
    let file = parse::parse_proof(&source).map_err(|(span, msg)| diag(path, &source, span, msg))?;
    let (th, _) = load_theory(&file.theory, theory)?;
    let proof = resolve::resolve_proof(&th, &file)
        .map_err(|(span, msg)| diag(path, &source, span, msg))?;
    check_proof(&th, &proof).map_err(|e| -> Box<dyn std::error::Error> { e.to_string().into() })?;
    Ok(format!("proof {} accepted", file.name))
}

pub fn cmd_prove(path: &Path, theory: Option<&Path>) -> CmdResult<Report> {
    let mut report = ReportBuilder::new("prove");
    let content = read(path)?;
    report.input(&path.display().to_string(), &content);
    match cmd_prove_inner(path, theory) {
        Ok(detail) => report.verdict(&path.display().to_string(), true, Some(detail)),
        Err(e) => report.verdict(&path.display().to_string(), false, Some(e.to_string())),
    }
    Ok(report.finish())
}

// ---------------------------------------------------------------- countermodel

pub fn cmd_countermodel(
    theory: Option<&Path>,
    theory_name: &str,
    phi_path: &Path,
    psi_path: &Path,
    bound: usize,
) -> CmdResult<Report> {
    let mut report = ReportBuilder::new("countermodel");
    let (th, th_name) = load_theory(theory_name, theory)?;
    for p in [phi_path, psi_path] {
        report.input(&p.display().to_string(), &read(p)?);
    }
    let (phi_name, phi_ctx, phi) = load_formula(phi_path, &th)?;
    let (psi_name, psi_ctx, psi) = load_formula(psi_path, &th)?;
    if phi_ctx != psi_ctx {
        return Err("the two formulas must share a context".into());
    }
    match find_countermodel(&th, &phi_ctx, &phi, &psi, bound) {
        Some(hit) => {
            let detail = format!(
                "countermodel found, witness {}\n{}",
                hit.model.show_element(&phi_ctx, &hit.witness),
                crate::print::print_model(&th, "countermodel", &th_name, &hit.model)
            );
            report.verdict(&format!("{phi_name} |- {psi_name}"), true, Some(detail));
        }
        None => {
            report.verdict(
                &format!("{phi_name} |- {psi_name}"),
                true,
                Some(format!("none (no countermodel with carriers <= {bound})")),
            );
        }
    }
    Ok(report.finish())
}

// ---------------------------------------------------------------- fib-check

pub fn cmd_fib_check(path: &Path, theory: Option<&Path>) -> CmdResult<Report> {
    let mut report = ReportBuilder::new("fib-check");
    let content = read(path)?;
    report.input(&path.display().to_string(), &content);
    let (th, hom, name) = load_hom(path, theory)?;
    hom.source.check(&th).map_err(|e| format!("source model: {e}"))?;
    hom.target.check(&th).map_err(|e| format!("target model: {e}"))?;
    match hom.check(&th) {
        Ok(()) => report.verdict(&format!("{name}: hom"), true, Some("naturality holds".into())),
        Err(e) => {
            report.verdict(&format!("{name}: hom"), false, Some(e.to_string()));
            return Ok(report.finish());
        }
    }
    match is_anodyne_fibration(&th, &hom) {
        Ok(()) => report.verdict(&format!("{name}: anodyne"), true, Some("true".into())),
        Err(w) => report.verdict(
            &format!("{name}: anodyne"),
            false,
            Some(format!(
                "false: gap map not surjective at sort {} over tuple {:?} (element {})",
                th.sort(w.sort).name,
                w.tuple,
                w.uncovered
            )),
        ),
    }
    Ok(report.finish())
}

// ---------------------------------------------------------------- invariance suite

pub struct SuiteOptions {
    pub seed: u64,
    pub exhaustive: bool,
    pub sample_cap: usize,
    pub formulas: Vec<String>,
}

impl From<parse::SuiteConfig> for SuiteOptions {
    fn from(c: parse::SuiteConfig) -> Self {
        SuiteOptions {
            seed: c.seed,
            exhaustive: c.exhaustive,
            sample_cap: c.sample_cap,
            formulas: c.formulas,
        }
    }
}

/// Runs the full invariance suite: the anodyne-fibration corollary on the
/// generated corpus, the Beck–Chevalley squares it certifies, the negative
/// controls, and the two invariance theorems on the folk model structure.
pub fn cmd_invariance(opts: &SuiteOptions) -> CmdResult<Report> {
    let mut report = ReportBuilder::new("invariance");
    let th = corpus::builtin_theory("cat_eq").expect("cat_eq builtin");
    let mut formulas = catcorpus::cat_formulas(&th);
    if !opts.formulas.is_empty() {
        formulas.retain(|(name, _, _)| opts.formulas.contains(name));
    }

    let workers = std::env::var("GATLAB_JOBS").ok().and_then(|v| v.parse::<usize>().ok());
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = workers {
            builder = builder.num_threads(n);
        }
        builder.build().map_err(|e| e.to_string())?
    };

    // --- corollary: anodyne fibrations preserve and reflect satisfaction
    let anodyne = catcorpus::anodyne_corpus();
    let mut all_anodyne = true;
    for f in &anodyne {
        let hom = f.to_hom(&th);
        hom.check(&th).map_err(|e| format!("{}: {e}", f.name))?;
        if is_anodyne_fibration(&th, &hom).is_err() {
            all_anodyne = false;
        }
    }
    report.verdict(
        "anodyne-corpus",
        all_anodyne,
        Some(format!("{} functors, all pass the weak-pullback test", anodyne.len())),
    );

    let suites: Vec<(String, ModelHom)> =
        anodyne.iter().map(|f| (f.name.clone(), f.to_hom(&th))).collect();
    let sampler = Sampler::new(opts);
    let reports: Vec<(String, gatlab_core::fibrations::InvarianceReport)> = pool.install(|| {
        use rayon::prelude::*;
        suites
            .par_iter()
            .map(|(name, hom)| {
                let report = if opts.exhaustive {
                    invariance_suite(&th, hom, &formulas, None)
                } else {
                    sampled_invariance_suite(&th, hom, &formulas, &sampler)
                };
                (name.clone(), report)
            })
            .collect()
    });
    let total_checks: usize = reports.iter().map(|(_, r)| r.checks).sum();
    let violations: Vec<String> = reports
        .iter()
        .flat_map(|(name, r)| {
            r.violations.iter().map(move |v| format!("{name}: {} at {:?}", v.formula, v.element))
        })
        .collect();
    report.bulk(total_checks, total_checks - violations.len());
    report.verdict(
        "corollary-invariance",
        violations.is_empty(),
        Some(if violations.is_empty() {
            format!("{total_checks} evaluations agree across {} anodyne fibrations", suites.len())
        } else {
            violations.join("; ")
        }),
    );

    // --- Beck–Chevalley on every certified square
    let mut bc_checks = 0usize;
    let mut bc_ok = true;
    for (_, hom) in &suites {
        for s in 0..th.sorts().len() {
            bc_checks += 1;
            if !beck_chevalley_holds(&th, hom, SortId(s)) {
                bc_ok = false;
            }
        }
    }
    report.bulk(bc_checks, if bc_ok { bc_checks } else { 0 });
    report.verdict(
        "beck-chevalley",
        bc_ok,
        Some(format!("{bc_checks} generator squares commute with the existential image")),
    );

    // --- negative control: a non-anodyne map disagrees on an existential
    let exists_ob = Formula::exists(
        vec![gatlab_core::kernel::TypeExpr {
            sort: th.sort_by_name("Ob").unwrap(),
            args: vec![],
        }],
        Formula::Top,
    );
    let empty_to_point = {
        let empty_m = to_model(&th, &catcorpus::empty_category());
        let point_m = to_model(&th, &catcorpus::point());
        let mut h = ModelHom::new(empty_m, point_m, th.sorts().len());
        for (s, decl) in th.sorts().iter().enumerate() {
            for tuple in h.source.enumerate_context(&decl.telescope) {
                h.set_component(SortId(s), tuple, vec![]);
            }
        }
        h
    };
    let control = invariance_suite(
        &th,
        &empty_to_point,
        &[("exists_object".to_owned(), Context::empty(), exists_ob)],
        None,
    );
    let not_anodyne = is_anodyne_fibration(&th, &empty_to_point).is_err();
    report.verdict(
        "negative-control-anodyne",
        not_anodyne && !control.agreed(),
        Some("the empty-into-point inclusion is not anodyne and disagrees on an existential".into()),
    );

    // --- 2nd invariance theorem: equivalences between fibrant objects
    let equivalences = catcorpus::equivalence_corpus();
    let mut inv2_checks = 0usize;
    let mut inv2_violations = Vec::new();
    for f in &equivalences {
        assert!(f.is_equivalence(), "{} is in the equivalence corpus", f.name);
        let hom = f.to_hom(&th);
        for (fname, ctx, phi) in &formulas {
            for x in sampler.pick(hom.source.enumerate_context(ctx)) {
                inv2_checks += 1;
                let left = hom.source.eval_formula(phi, &x);
                let right = hom.target.eval_formula(phi, &hom.map_tuple(ctx, &x));
                if left != right {
                    inv2_violations.push(format!("{}: {fname} at {x:?}", f.name));
                }
            }
        }
    }
    report.bulk(inv2_checks, inv2_checks - inv2_violations.len());
    report.verdict(
        "invariance-2",
        inv2_violations.is_empty(),
        Some(if inv2_violations.is_empty() {
            format!("{inv2_checks} evaluations agree across {} equivalences", equivalences.len())
        } else {
            inv2_violations.join("; ")
        }),
    );

    // --- 1st invariance theorem: homotopic interpretations
    let mut inv1_checks = 0usize;
    let mut inv1_violations = Vec::new();
    for cat in catcorpus::seed_categories() {
        let model = to_model(&th, &cat);
        for (fname, ctx, phi) in &formulas {
            for (x1, x2) in sampler.pick(catcorpus::homotopic_pairs(&th, &cat, ctx)) {
                inv1_checks += 1;
                if model.eval_formula(phi, &x1) != model.eval_formula(phi, &x2) {
                    inv1_violations.push(format!("{}: {fname} at {x1:?} ~ {x2:?}", cat.name));
                }
            }
        }
    }
    report.bulk(inv1_checks, inv1_checks - inv1_violations.len());
    report.verdict(
        "invariance-1",
        inv1_violations.is_empty(),
        Some(if inv1_violations.is_empty() {
            format!("{inv1_checks} homotopic pairs agree")
        } else {
            inv1_violations.join("; ")
        }),
    );

    // --- negative control: object-count parity is not invariant
    let parity_broken = equivalences.iter().any(|f| {
        catcorpus::has_even_object_count(&f.source) != catcorpus::has_even_object_count(&f.target)
    });
    report.verdict(
        "negative-control-parity",
        parity_broken,
        Some("object-count parity changes under some equivalence in the corpus".into()),
    );

    Ok(report.finish())
}

/// Seeded sample selection: exhaustive runs keep every item, sampled runs
/// take a seeded shuffle truncated at the cap. Each pick reseeds from the
/// suite seed, so results do not depend on worker scheduling and repeated
/// runs are byte-identical.
struct Sampler {
    exhaustive: bool,
    cap: usize,
    seed: u64,
}

impl Sampler {
    fn new(opts: &SuiteOptions) -> Sampler {
        Sampler { exhaustive: opts.exhaustive, cap: opts.sample_cap, seed: opts.seed }
    }

    fn pick<T>(&self, mut items: Vec<T>) -> Vec<T> {
        if self.exhaustive || items.len() <= self.cap {
            return items;
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
        items.shuffle(&mut rng);
        items.truncate(self.cap);
        items
    }
}

fn sampled_invariance_suite(
    th: &Theory,
    hom: &ModelHom,
    corpus: &[(String, Context, Formula)],
    sampler: &Sampler,
) -> gatlab_core::fibrations::InvarianceReport {
    let mut out = gatlab_core::fibrations::InvarianceReport::default();
    for (name, ctx, phi) in corpus {
        for x in sampler.pick(hom.source.enumerate_context(ctx)) {
            let left = hom.source.eval_formula(phi, &x);
            let right = hom.target.eval_formula(phi, &hom.map_tuple(ctx, &x));
            out.checks += 1;
            if left != right {
                out.violations.push(gatlab_core::fibrations::InvarianceViolation {
                    formula: name.clone(),
                    element: x,
                    source_value: left,
                    target_value: right,
                });
            }
        }
    }
    let _ = th;
    out
}

// ---------------------------------------------------------------- corpus

pub fn cmd_corpus(out: &Path) -> CmdResult<Report> {
    let mut report = ReportBuilder::new("corpus");
    let files = corpus::corpus_files();
    for (rel, content) in &files {
        let path = out.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| e.to_string())?;
        }
        std::fs::write(&path, content).map_err(|e| e.to_string())?;
    }
    report.verdict("corpus", true, Some(format!("{} files written to {}", files.len(), out.display())));
    Ok(report.finish())
}

// ---------------------------------------------------------------- helpers for tests

/// Round-trips every corpus file through its printer and parser, comparing
/// the resolved structures; returns the mismatches.
pub fn corpus_round_trip_failures() -> Vec<String> {
    let mut failures = Vec::new();
    let files: BTreeMap<String, String> = corpus::corpus_files().into_iter().collect();
    for (rel, content) in &files {
        if rel.contains("/bad/") || !rel.contains('.') {
            continue;
        }
        let outcome = round_trip_one(rel, content, &files);
        if let Err(e) = outcome {
            failures.push(format!("{rel}: {e}"));
        }
    }
    failures
}

fn round_trip_one(
    rel: &str,
    content: &str,
    files: &BTreeMap<String, String>,
) -> Result<(), String> {
    let kind = rel.rsplit('.').next().unwrap_or("");
    let fail = |s: (Span, String)| s.1;
    match kind {
        "gat" => {
            let a = parse::parse_theory(content).map_err(fail)?;
            let th = elaborate_theory(&a.decls).map_err(|e| e.to_string())?;
            let printed = crate::print::print_theory(&a.name, &th);
            let b = parse::parse_theory(&printed).map_err(fail)?;
            let th2 = elaborate_theory(&b.decls).map_err(|e| e.to_string())?;
            if format!("{th:?}") != format!("{th2:?}") {
                return Err("theories differ after round trip".into());
            }
        }
        "gfm" => {
            let th = corpus::builtin_theory("cat_eq").unwrap();
            let a = parse::parse_formula_file(content).map_err(fail)?;
            let (ctx, phi) =
                resolve::resolve_formula_file(&th, &a, Span::default()).map_err(fail)?;
            let printed = crate::print::print_formula_file(&th, &a.name, &ctx, &phi);
            let b = parse::parse_formula_file(&printed).map_err(fail)?;
            let (ctx2, phi2) =
                resolve::resolve_formula_file(&th, &b, Span::default()).map_err(fail)?;
            if ctx != ctx2 || phi != phi2 {
                return Err("formulas differ after round trip".into());
            }
        }
        "gmod" => {
            let a = parse::parse_model(content).map_err(fail)?;
            let th = corpus::builtin_theory(&a.theory).ok_or("unknown theory")?;
            let m = resolve::resolve_model(&th, &a).map_err(fail)?;
            let printed = crate::print::print_model(&th, &a.name, &a.theory, &m);
            let b = parse::parse_model(&printed).map_err(fail)?;
            let m2 = resolve::resolve_model(&th, &b).map_err(fail)?;
            if m != m2 {
                return Err("models differ after round trip".into());
            }
        }
        "gcat" => {
            let a = parse::parse_category(content).map_err(fail)?;
            let c = resolve::resolve_category(&a, Span::default()).map_err(fail)?;
            let printed = crate::print::print_category(&c);
            let b = parse::parse_category(&printed).map_err(fail)?;
            let c2 = resolve::resolve_category(&b, Span::default()).map_err(fail)?;
            if c != c2 {
                return Err("categories differ after round trip".into());
            }
        }
        "gfun" => {
            let a = parse::parse_functor(content).map_err(fail)?;
            let src_content = files
                .get(&normalize_rel(rel, &a.source_path))
                .ok_or("missing source category in corpus")?;
            let tgt_content = files
                .get(&normalize_rel(rel, &a.target_path))
                .ok_or("missing target category in corpus")?;
            let src = resolve::resolve_category(
                &parse::parse_category(src_content).map_err(fail)?,
                Span::default(),
            )
            .map_err(fail)?;
            let tgt = resolve::resolve_category(
                &parse::parse_category(tgt_content).map_err(fail)?,
                Span::default(),
            )
            .map_err(fail)?;
            let f = resolve::resolve_functor(&a, src.clone(), tgt.clone(), Span::default())
                .map_err(fail)?;
            let printed = crate::print::print_functor(&f, &a.source_path, &a.target_path);
            let b = parse::parse_functor(&printed).map_err(fail)?;
            let f2 = resolve::resolve_functor(&b, src, tgt, Span::default()).map_err(fail)?;
            if f != f2 {
                return Err("functors differ after round trip".into());
            }
        }
        "ghom" => {
            let a = parse::parse_hom(content).map_err(fail)?;
            let th = corpus::builtin_theory(&a.theory).ok_or("unknown theory")?;
            let load = |p: &str| -> Result<FiniteModel, String> {
                let content = files.get(&normalize_rel(rel, p)).ok_or("missing model")?;
                let file = parse::parse_model(content).map_err(fail)?;
                resolve::resolve_model(&th, &file).map_err(fail)
            };
            let src = load(&a.source_path)?;
            let tgt = load(&a.target_path)?;
            let h = resolve::resolve_hom(&th, &a, src.clone(), tgt.clone()).map_err(fail)?;
            let printed = crate::print::print_hom(
                &th,
                &a.name,
                &a.theory,
                &a.source_path,
                &a.target_path,
                &h,
            );
            let b = parse::parse_hom(&printed).map_err(fail)?;
            let h2 = resolve::resolve_hom(&th, &b, src, tgt).map_err(fail)?;
            if h != h2 {
                return Err("homs differ after round trip".into());
            }
        }
        "gpf" => {
            let a = parse::parse_proof(content).map_err(fail)?;
            let th = corpus::builtin_theory(&a.theory).ok_or("unknown theory")?;
            let p = resolve::resolve_proof(&th, &a).map_err(fail)?;
            let printed = crate::print::print_proof(&th, &a.name, &a.theory, &p);
            let b = parse::parse_proof(&printed).map_err(fail)?;
            let p2 = resolve::resolve_proof(&th, &b).map_err(fail)?;
            if p != p2 {
                return Err("proofs differ after round trip".into());
            }
        }
        "toml" | "txt" => {}
        other => return Err(format!("unhandled corpus kind {other}")),
    }
    Ok(())
}

/// Resolves a `../`-style reference between corpus-relative paths.
fn normalize_rel(from: &str, relative: &str) -> String {
    let mut parts: Vec<&str> = from.split('/').collect();
    parts.pop();
    for seg in relative.split('/') {
        match seg {
            "." => {}
            ".." => {
                parts.pop();
            }
            other => parts.push(other),
        }
    }
    parts.join("/")
}
