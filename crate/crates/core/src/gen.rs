//! Seeded random generators for contexts, context morphisms and formulas,
//! used by the property suites. All draws go through a ChaCha stream cipher
//! RNG, so a fixed seed reproduces the same objects on every run.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formulas::Formula;
use crate::kernel::{subst_type, Context, SortId, TermExpr, Theory, TypeExpr, DEFAULT_FUEL};
use crate::syncat::ContextMorphism;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All well-formed terms of depth below the bound in `ctx`, grouped with
/// their normalized types.
fn term_bank(th: &Theory, ctx: &Context, depth: usize) -> Vec<(TermExpr, TypeExpr)> {
    let mut bank: Vec<(TermExpr, TypeExpr)> = Vec::new();
    for i in 0..ctx.len() {
        let (ty, _) = th.normalize_type(ctx, ctx.entry(i), DEFAULT_FUEL);
        bank.push((TermExpr::Var(i), ty));
    }
    for _ in 1..depth {
        let snapshot = bank.clone();
        for (op_idx, op) in th.ops().iter().enumerate() {
            let candidates = instantiations(th, ctx, &snapshot, &op.telescope, &mut Vec::new());
            for args in candidates {
                let term = TermExpr::App(crate::kernel::OpId(op_idx), args.clone());
                if bank.iter().any(|(t, _)| *t == term) {
                    continue;
                }
                let (ty, _) = th.normalize_type(ctx, &subst_type(&op.result, &args), DEFAULT_FUEL);
                bank.push((term, ty));
            }
        }
    }
    bank
}

/// All ways of filling a telescope from the bank (capped to keep the
/// search finite). Types are compared after normalization in the ambient
/// context the bank was built over.
fn instantiations(
    th: &Theory,
    ambient: &Context,
    bank: &[(TermExpr, TypeExpr)],
    telescope: &Context,
    chosen: &mut Vec<TermExpr>,
) -> Vec<Vec<TermExpr>> {
    if chosen.len() == telescope.len() {
        return vec![chosen.clone()];
    }
    let expected = subst_type(telescope.entry(chosen.len()), chosen);
    let (expected_norm, _) = th.normalize_type(ambient, &expected, DEFAULT_FUEL);
    let mut out = Vec::new();
    for (term, ty) in bank {
        if *ty == expected_norm {
            chosen.push(term.clone());
            out.extend(instantiations(th, ambient, bank, telescope, chosen));
            chosen.pop();
            if out.len() > 64 {
                break;
            }
        }
    }
    out
}

/// A random well-formed context of at most `max_len` entries.
pub fn gen_context(th: &Theory, rng: &mut ChaCha8Rng, max_len: usize) -> Context {
    let target = rng.gen_range(0..=max_len);
    let mut ctx = Context::empty();
    let mut attempts = 0;
    while ctx.len() < target && attempts < 40 {
        attempts += 1;
        let sort_idx = rng.gen_range(0..th.sorts().len());
        let sort = &th.sorts()[sort_idx];
        let bank = term_bank(th, &ctx, 2);
        let choices = instantiations(th, &ctx, &bank, &sort.telescope, &mut Vec::new());
        if choices.is_empty() {
            continue;
        }
        let args = choices[rng.gen_range(0..choices.len())].clone();
        ctx.push(TypeExpr { sort: SortId(sort_idx), args });
    }
    ctx
}

/// A random context morphism into `cod` from a freshly generated domain;
/// `None` if no assignment of components exists from the domain's term bank.
pub fn gen_morphism(
    th: &Theory,
    rng: &mut ChaCha8Rng,
    dom: &Context,
    cod: &Context,
) -> Option<ContextMorphism> {
    let bank = term_bank(th, dom, 3);
    fn assign(
        th: &Theory,
        rng: &mut ChaCha8Rng,
        dom: &Context,
        bank: &[(TermExpr, TypeExpr)],
        cod: &Context,
        chosen: &mut Vec<TermExpr>,
    ) -> bool {
        if chosen.len() == cod.len() {
            return true;
        }
        let expected = subst_type(cod.entry(chosen.len()), chosen);
        let (expected_norm, _) = th.normalize_type(dom, &expected, DEFAULT_FUEL);
        let mut candidates: Vec<&TermExpr> =
            bank.iter().filter(|(_, ty)| *ty == expected_norm).map(|(t, _)| t).collect();
        // random order, then backtrack deterministically
        for i in (1..candidates.len()).rev() {
            let j = rng.gen_range(0..=i);
            candidates.swap(i, j);
        }
        for cand in candidates {
            chosen.push(cand.clone());
            if assign(th, rng, dom, bank, cod, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if assign(th, rng, dom, &bank, cod, &mut chosen) {
        Some(ContextMorphism { dom: dom.clone(), cod: cod.clone(), terms: chosen })
    } else {
        None
    }
}

/// A random formula in `ctx` with nesting depth at most `depth`. Quantifier
/// extensions are nonempty telescopes of at most two entries.
pub fn gen_formula(th: &Theory, rng: &mut ChaCha8Rng, ctx: &Context, depth: usize) -> Formula {
    if depth == 0 {
        return if rng.gen_bool(0.5) { Formula::Top } else { Formula::Bot };
    }
    match rng.gen_range(0..7u32) {
        0 => Formula::Top,
        1 => Formula::Bot,
        2 => Formula::not(gen_formula(th, rng, ctx, depth - 1)),
        3 => {
            let n = rng.gen_range(0..=2);
            Formula::and((0..n).map(|_| gen_formula(th, rng, ctx, depth - 1)).collect())
        }
        4 => {
            let n = rng.gen_range(0..=2);
            Formula::or((0..n).map(|_| gen_formula(th, rng, ctx, depth - 1)).collect())
        }
        q => {
            let want = rng.gen_range(1..=2);
            let mut extended = ctx.clone();
            let mut ext = Vec::new();
            let mut attempts = 0;
            while ext.len() < want && attempts < 20 {
                attempts += 1;
                let sort_idx = rng.gen_range(0..th.sorts().len());
                let sort = &th.sorts()[sort_idx];
                let bank = term_bank(th, &extended, 2);
                let choices = instantiations(th, &extended, &bank, &sort.telescope, &mut Vec::new());
                if choices.is_empty() {
                    continue;
                }
                let args = choices[rng.gen_range(0..choices.len())].clone();
                let ty = TypeExpr { sort: SortId(sort_idx), args };
                extended.push(ty.clone());
                ext.push(ty);
            }
            if ext.is_empty() {
                return gen_formula(th, rng, ctx, depth - 1);
            }
            let body = gen_formula(th, rng, &extended, depth - 1);
            if q == 5 {
                Formula::exists(ext, body)
            } else {
                Formula::forall(ext, body)
            }
        }
    }
}
