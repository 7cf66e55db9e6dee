//! Checker for entailment proofs.
//!
//! A proof is a finite tree; every node claims a sequent `Φ ⊢_Γ Ψ` and names
//! the rule deriving it from its subproofs. The checker validates each node
//! locally against its rule schema: contexts and formulas are recomputed
//! (including the display-map substitutions used by the quantifier
//! adjunctions) and compared structurally.

use crate::formulas::{weaken_formula, wf_formula, Formula};
use crate::kernel::{Context, Theory, TypeExpr};

/// A claimed entailment `lhs ⊢_{ctx} rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub ctx: Context,
    pub lhs: Formula,
    pub rhs: Formula,
}

/// A proof node: its conclusion and the rule application deriving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub conclusion: Sequent,
    pub rule: RuleApp,
}

/// The rule applications, grouped as in the definition of the entailment
/// relation: reflexivity/transitivity; the top/bottom laws; excluded middle
/// and non-contradiction; the universal properties of finite disjunction and
/// conjunction; and the two quantifier adjunctions (each usable in both
/// directions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleApp {
    /// `Φ ⊢ Φ`
    Refl,
    /// From `Φ ⊢ μ` and `μ ⊢ Ψ` conclude `Φ ⊢ Ψ`.
    Trans { middle: Formula, left: Box<ProofNode>, right: Box<ProofNode> },
    /// `Φ ⊢ ⊤`
    TopIntro,
    /// `⊥ ⊢ Φ`
    BotElim,
    /// `Φ ∧ ¬Φ ⊢ ⊥`
    NonContradiction,
    /// `⊤ ⊢ Φ ∨ ¬Φ`
    ExcludedMiddle,
    /// From `Φ_i ⊢ Ψ` for every disjunct conclude `⋁ Φ_i ⊢ Ψ`.
    OrElim { premises: Vec<ProofNode> },
    /// From `⋁ Φ_i ⊢ Ψ` conclude `Φ_k ⊢ Ψ`.
    OrProj { index: usize, premise: Box<ProofNode> },
    /// From `Ψ ⊢ Φ_i` for every conjunct conclude `Ψ ⊢ ⋀ Φ_i`.
    AndIntro { premises: Vec<ProofNode> },
    /// From `Ψ ⊢ ⋀ Φ_i` conclude `Ψ ⊢ Φ_k`.
    AndProj { index: usize, premise: Box<ProofNode> },
    /// From `Ψ ⊢_{Γ.ext} p*Φ` conclude `∃ext.Ψ ⊢_Γ Φ`.
    ExistsAdj { premise: Box<ProofNode> },
    /// From `∃ext.Ψ ⊢_Γ Φ` conclude `Ψ ⊢_{Γ.ext} p*Φ`.
    ExistsCoadj { ext_len: usize, premise: Box<ProofNode> },
    /// From `p*Φ ⊢_{Γ.ext} Ψ` conclude `Φ ⊢_Γ ∀ext.Ψ`.
    ForallAdj { premise: Box<ProofNode> },
    /// From `Φ ⊢_Γ ∀ext.Ψ` conclude `p*Φ ⊢_{Γ.ext} Ψ`.
    ForallCoadj { ext_len: usize, premise: Box<ProofNode> },
}

impl RuleApp {
    /// The rule tag, as used in proof files and error reports.
    pub fn tag(&self) -> &'static str {
        match self {
            RuleApp::Refl => "refl",
            RuleApp::Trans { .. } => "trans",
            RuleApp::TopIntro => "top-intro",
            RuleApp::BotElim => "bot-elim",
            RuleApp::NonContradiction => "non-contradiction",
            RuleApp::ExcludedMiddle => "excluded-middle",
            RuleApp::OrElim { .. } => "or-elim",
            RuleApp::OrProj { .. } => "or-proj",
            RuleApp::AndIntro { .. } => "and-intro",
            RuleApp::AndProj { .. } => "and-proj",
            RuleApp::ExistsAdj { .. } => "exists-adj",
            RuleApp::ExistsCoadj { .. } => "exists-coadj",
            RuleApp::ForallAdj { .. } => "forall-adj",
            RuleApp::ForallCoadj { .. } => "forall-coadj",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error("{path}: rule `{rule}` does not match its conclusion: {detail}")]
    RuleMismatch { path: String, rule: &'static str, detail: String },
    #[error("{path}: rule `{rule}`: context mismatch between node and subproof")]
    ContextMismatch { path: String, rule: &'static str },
    #[error("{path}: ill-formed sequent: {detail}")]
    IllFormedSequent { path: String, detail: String },
}

/// Checks a proof tree; acceptance establishes that the root's claimed
/// entailment is derivable.
pub fn check_proof(th: &Theory, root: &ProofNode) -> Result<(), ProofError> {
    check_node(th, root, &mut vec!["root".to_owned()])
}

fn check_node(th: &Theory, node: &ProofNode, path: &mut Vec<String>) -> Result<(), ProofError> {
    let here = || path.join(".");
    let seq = &node.conclusion;
    let rule = node.rule.tag();
    let mismatch = |detail: String| ProofError::RuleMismatch { path: here(), rule, detail };

    th.wf_context(&seq.ctx).map_err(|e| ProofError::IllFormedSequent {
        path: here(),
        detail: format!("context: {e}"),
    })?;
    for (side, phi) in [("lhs", &seq.lhs), ("rhs", &seq.rhs)] {
        wf_formula(th, &seq.ctx, phi).map_err(|e| ProofError::IllFormedSequent {
            path: here(),
            detail: format!("{side}: {e}"),
        })?;
    }

    // Local premise check: recompute what the rule requires of each subproof
    // and compare structurally before recursing.
    match &node.rule {
        RuleApp::Refl => {
            if seq.lhs != seq.rhs {
                return Err(mismatch("sides of a reflexivity node differ".into()));
            }
        }
        RuleApp::Trans { middle, left, right } => {
            expect_sequent(&left.conclusion, &seq.ctx, &seq.lhs, middle, path, "left", rule)?;
            expect_sequent(&right.conclusion, &seq.ctx, middle, &seq.rhs, path, "right", rule)?;
            recurse(th, left, path, "left")?;
            recurse(th, right, path, "right")?;
        }
        RuleApp::TopIntro => {
            if seq.rhs != Formula::Top {
                return Err(mismatch("right side is not the true formula".into()));
            }
        }
        RuleApp::BotElim => {
            if seq.lhs != Formula::Bot {
                return Err(mismatch("left side is not the false formula".into()));
            }
        }
        RuleApp::NonContradiction => {
            if seq.rhs != Formula::Bot {
                return Err(mismatch("right side is not the false formula".into()));
            }
            let ok = matches!(&seq.lhs, Formula::And(parts)
                if parts.len() == 2 && parts[1] == Formula::not(parts[0].clone()));
            if !ok {
                return Err(mismatch("left side is not of the shape Φ ∧ ¬Φ".into()));
            }
        }
        RuleApp::ExcludedMiddle => {
            if seq.lhs != Formula::Top {
                return Err(mismatch("left side is not the true formula".into()));
            }
            let ok = matches!(&seq.rhs, Formula::Or(parts)
                if parts.len() == 2 && parts[1] == Formula::not(parts[0].clone()));
            if !ok {
                return Err(mismatch("right side is not of the shape Φ ∨ ¬Φ".into()));
            }
        }
        RuleApp::OrElim { premises } => {
            let Formula::Or(parts) = &seq.lhs else {
                return Err(mismatch("left side is not a disjunction".into()));
            };
            if premises.len() != parts.len() {
                return Err(mismatch(format!(
                    "expected {} premises, found {}",
                    parts.len(),
                    premises.len()
                )));
            }
            for (i, (part, premise)) in parts.iter().zip(premises).enumerate() {
                let label = format!("premise[{i}]");
                expect_sequent(&premise.conclusion, &seq.ctx, part, &seq.rhs, path, &label, rule)?;
                recurse(th, premise, path, &label)?;
            }
        }
        RuleApp::OrProj { index, premise } => {
            let Formula::Or(parts) = &premise.conclusion.lhs else {
                return Err(mismatch("premise's left side is not a disjunction".into()));
            };
            let part = parts.get(*index).ok_or_else(|| {
                mismatch(format!("disjunct index {index} out of range ({})", parts.len()))
            })?;
            if *part != seq.lhs {
                return Err(mismatch("conclusion's left side is not the selected disjunct".into()));
            }
            if premise.conclusion.ctx != seq.ctx {
                return Err(ProofError::ContextMismatch { path: here(), rule });
            }
            if premise.conclusion.rhs != seq.rhs {
                return Err(mismatch("premise's right side differs from the conclusion's".into()));
            }
            recurse(th, premise, path, "premise")?;
        }
        RuleApp::AndIntro { premises } => {
            let Formula::And(parts) = &seq.rhs else {
                return Err(mismatch("right side is not a conjunction".into()));
            };
            if premises.len() != parts.len() {
                return Err(mismatch(format!(
                    "expected {} premises, found {}",
                    parts.len(),
                    premises.len()
                )));
            }
            for (i, (part, premise)) in parts.iter().zip(premises).enumerate() {
                let label = format!("premise[{i}]");
                expect_sequent(&premise.conclusion, &seq.ctx, &seq.lhs, part, path, &label, rule)?;
                recurse(th, premise, path, &label)?;
            }
        }
        RuleApp::AndProj { index, premise } => {
            let Formula::And(parts) = &premise.conclusion.rhs else {
                return Err(mismatch("premise's right side is not a conjunction".into()));
            };
            let part = parts.get(*index).ok_or_else(|| {
                mismatch(format!("conjunct index {index} out of range ({})", parts.len()))
            })?;
            if *part != seq.rhs {
                return Err(mismatch("conclusion's right side is not the selected conjunct".into()));
            }
            if premise.conclusion.ctx != seq.ctx {
                return Err(ProofError::ContextMismatch { path: here(), rule });
            }
            if premise.conclusion.lhs != seq.lhs {
                return Err(mismatch("premise's left side differs from the conclusion's".into()));
            }
            recurse(th, premise, path, "premise")?;
        }
        RuleApp::ExistsAdj { premise } => {
            let Formula::Exists { ext, body } = &seq.lhs else {
                return Err(mismatch("left side is not an existential".into()));
            };
            let (extended, weakened_rhs) = weaken(th, &seq.ctx, ext, &seq.rhs, path, rule)?;
            expect_sequent(&premise.conclusion, &extended, body, &weakened_rhs, path, "premise", rule)?;
            recurse(th, premise, path, "premise")?;
        }
        RuleApp::ExistsCoadj { ext_len, premise } => {
            let Formula::Exists { ext, body } = &premise.conclusion.lhs else {
                return Err(mismatch("premise's left side is not an existential".into()));
            };
            if ext.len() != *ext_len {
                return Err(mismatch(format!(
                    "stated extension length {ext_len} differs from the premise's {}",
                    ext.len()
                )));
            }
            let base = &premise.conclusion.ctx;
            let (extended, weakened_rhs) =
                weaken(th, base, ext, &premise.conclusion.rhs, path, rule)?;
            expect_self(seq, &extended, body, &weakened_rhs, path, rule)?;
            recurse(th, premise, path, "premise")?;
        }
        RuleApp::ForallAdj { premise } => {
            let Formula::Forall { ext, body } = &seq.rhs else {
                return Err(mismatch("right side is not a universal".into()));
            };
            let (extended, weakened_lhs) = weaken(th, &seq.ctx, ext, &seq.lhs, path, rule)?;
            expect_sequent(&premise.conclusion, &extended, &weakened_lhs, body, path, "premise", rule)?;
            recurse(th, premise, path, "premise")?;
        }
        RuleApp::ForallCoadj { ext_len, premise } => {
            let Formula::Forall { ext, body } = &premise.conclusion.rhs else {
                return Err(mismatch("premise's right side is not a universal".into()));
            };
            if ext.len() != *ext_len {
                return Err(mismatch(format!(
                    "stated extension length {ext_len} differs from the premise's {}",
                    ext.len()
                )));
            }
            let base = &premise.conclusion.ctx;
            let (extended, weakened_lhs) =
                weaken(th, base, ext, &premise.conclusion.lhs, path, rule)?;
            expect_self(seq, &extended, &weakened_lhs, body, path, rule)?;
            recurse(th, premise, path, "premise")?;
        }
    }
    Ok(())
}

/// Computes the extended context and the weakening `p*phi` along the genuine
/// display map of a quantifier extension.
fn weaken(
    th: &Theory,
    base: &Context,
    ext: &[TypeExpr],
    phi: &Formula,
    path: &[String],
    rule: &'static str,
) -> Result<(Context, Formula), ProofError> {
    let extended = base.extend(ext);
    let weakened = weaken_formula(th, base, ext, phi).map_err(|e| ProofError::RuleMismatch {
        path: path.join("."),
        rule,
        detail: format!("display-map substitution failed: {e}"),
    })?;
    Ok((extended, weakened))
}

fn expect_sequent(
    found: &Sequent,
    ctx: &Context,
    lhs: &Formula,
    rhs: &Formula,
    path: &mut Vec<String>,
    label: &str,
    rule: &'static str,
) -> Result<(), ProofError> {
    path.push(label.to_owned());
    let result = check_expected(found, ctx, lhs, rhs, path, rule);
    path.pop();
    result
}

fn expect_self(
    seq: &Sequent,
    ctx: &Context,
    lhs: &Formula,
    rhs: &Formula,
    path: &[String],
    rule: &'static str,
) -> Result<(), ProofError> {
    let mut p = path.to_vec();
    check_expected(seq, ctx, lhs, rhs, &mut p, rule)
}

fn check_expected(
    found: &Sequent,
    ctx: &Context,
    lhs: &Formula,
    rhs: &Formula,
    path: &mut [String],
    rule: &'static str,
) -> Result<(), ProofError> {
    if found.ctx != *ctx {
        return Err(ProofError::ContextMismatch { path: path.join("."), rule });
    }
    if found.lhs != *lhs {
        return Err(ProofError::RuleMismatch {
            path: path.join("."),
            rule,
            detail: "left side differs from the formula the rule requires".into(),
        });
    }
    if found.rhs != *rhs {
        return Err(ProofError::RuleMismatch {
            path: path.join("."),
            rule,
            detail: "right side differs from the formula the rule requires".into(),
        });
    }
    Ok(())
}

fn recurse(
    th: &Theory,
    node: &ProofNode,
    path: &mut Vec<String>,
    label: &str,
) -> Result<(), ProofError> {
    path.push(label.to_owned());
    let result = check_node(th, node, path);
    path.pop();
    result
}
