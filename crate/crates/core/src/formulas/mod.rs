//! The equality-free first-order language over a theory: formulas in
//! context, well-formedness, and substitution along context morphisms.
//!
//! The only atoms are the true and false formulas; free variables enter
//! through quantification over dependent context extensions. There is no
//! equality constructor at all; surface equality must elaborate through a
//! declared equality sort of the theory.

mod countermodel;
mod proof;

pub use countermodel::{find_countermodel, for_each_model, Countermodel};
pub use proof::{check_proof, ProofError, ProofNode, RuleApp, Sequent};

use crate::kernel::{Context, KernelError, Theory, TypeExpr};
use crate::syncat::{pullback_display, ContextMorphism, DisplayMap, SyncatError};

/// A formula of the language, relative to an ambient context. Quantifier
/// extensions are telescopes over the ambient context; their bodies live in
/// the extended context (variables stay positional, so the body's indices
/// run over ambient entries first, then the extension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Top,
    Bot,
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists { ext: Vec<TypeExpr>, body: Box<Formula> },
    Forall { ext: Vec<TypeExpr>, body: Box<Formula> },
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(body: Formula) -> Formula {
        Formula::Not(Box::new(body))
    }

    pub fn and(parts: Vec<Formula>) -> Formula {
        Formula::And(parts)
    }

    pub fn or(parts: Vec<Formula>) -> Formula {
        Formula::Or(parts)
    }

    /// Existential quantification; zero-length extensions are normalized
    /// away to the body.
    pub fn exists(ext: Vec<TypeExpr>, body: Formula) -> Formula {
        if ext.is_empty() {
            body
        } else {
            Formula::Exists { ext, body: Box::new(body) }
        }
    }

    pub fn forall(ext: Vec<TypeExpr>, body: Formula) -> Formula {
        if ext.is_empty() {
            body
        } else {
            Formula::Forall { ext, body: Box::new(body) }
        }
    }

    /// Quantifier depth, the usual nesting measure.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot => 0,
            Formula::Not(b) => b.quantifier_depth(),
            Formula::And(ps) | Formula::Or(ps) => {
                ps.iter().map(|p| p.quantifier_depth()).max().unwrap_or(0)
            }
            Formula::Exists { body, .. } | Formula::Forall { body, .. } => {
                1 + body.quantifier_depth()
            }
        }
    }
}

/// Error raised by formula well-formedness checking, with the path of the
/// offending subformula.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at {path}: {cause}")]
pub struct FormulaError {
    pub path: String,
    pub cause: KernelError,
}

/// Checks that a formula is well-formed in `ctx`: every quantifier extension
/// forms a context over its ambient prefix, and no extension is empty.
pub fn wf_formula(th: &Theory, ctx: &Context, phi: &Formula) -> Result<(), FormulaError> {
    fn go(
        th: &Theory,
        ctx: &Context,
        phi: &Formula,
        path: &mut Vec<String>,
    ) -> Result<(), FormulaError> {
        let fail = |path: &[String], cause: KernelError| FormulaError {
            path: if path.is_empty() { "root".to_owned() } else { path.join(".") },
            cause,
        };
        match phi {
            Formula::Top | Formula::Bot => Ok(()),
            Formula::Not(body) => {
                path.push("not".into());
                go(th, ctx, body, path)?;
                path.pop();
                Ok(())
            }
            Formula::And(parts) | Formula::Or(parts) => {
                let tag = if matches!(phi, Formula::And(_)) { "and" } else { "or" };
                for (i, part) in parts.iter().enumerate() {
                    path.push(format!("{tag}[{i}]"));
                    go(th, ctx, part, path)?;
                    path.pop();
                }
                Ok(())
            }
            Formula::Exists { ext, body } | Formula::Forall { ext, body } => {
                let tag = if matches!(phi, Formula::Exists { .. }) { "exists" } else { "forall" };
                if ext.is_empty() {
                    return Err(fail(
                        path,
                        KernelError::IllFormedTelescope {
                            position: 0,
                            cause: Box::new(KernelError::UnknownSymbol {
                                name: "<empty quantifier telescope>".into(),
                            }),
                        },
                    ));
                }
                let mut extended = ctx.clone();
                for (i, ty) in ext.iter().enumerate() {
                    th.check_type(&extended, ty).map_err(|cause| {
                        fail(path, KernelError::IllFormedTelescope {
                            position: i,
                            cause: Box::new(cause),
                        })
                    })?;
                    extended.push(ty.clone());
                }
                path.push(format!("{tag}.body"));
                go(th, &extended, body, path)?;
                path.pop();
                Ok(())
            }
        }
    }
    let mut path = Vec::new();
    go(th, ctx, phi, &mut path)
}

/// Substitution of a formula along a context morphism `f : Δ -> Γ`, for
/// `phi` in `Γ`: boolean connectives are mapped structurally, and quantifier
/// extensions are replaced by the types of the canonical pullback of the
/// corresponding generalized display map along `f`.
pub fn subst_formula(
    th: &Theory,
    f: &ContextMorphism,
    phi: &Formula,
) -> Result<Formula, SyncatError> {
    match phi {
        Formula::Top => Ok(Formula::Top),
        Formula::Bot => Ok(Formula::Bot),
        Formula::Not(body) => Ok(Formula::not(subst_formula(th, f, body)?)),
        Formula::And(parts) => Ok(Formula::And(
            parts.iter().map(|p| subst_formula(th, f, p)).collect::<Result<_, _>>()?,
        )),
        Formula::Or(parts) => Ok(Formula::Or(
            parts.iter().map(|p| subst_formula(th, f, p)).collect::<Result<_, _>>()?,
        )),
        Formula::Exists { ext, body } | Formula::Forall { ext, body } => {
            let display = DisplayMap { total: f.cod.extend(ext), base_len: f.cod.len() };
            let square = pullback_display(th, f, &display)?;
            let new_ext = square.total.entries()[f.dom.len()..].to_vec();
            let new_body = subst_formula(th, &square.top, body)?;
            Ok(match phi {
                Formula::Exists { .. } => Formula::exists(new_ext, new_body),
                _ => Formula::forall(new_ext, new_body),
            })
        }
    }
}

/// Substitution along the display map `Γ.ext ->> Γ` (weakening). Types are
/// untouched; only nested quantifier positions shift past the new entries.
pub fn weaken_formula(
    th: &Theory,
    base: &Context,
    ext: &[TypeExpr],
    phi: &Formula,
) -> Result<Formula, SyncatError> {
    let display = DisplayMap { total: base.extend(ext), base_len: base.len() };
    subst_formula(th, &display.as_morphism(), phi)
}
