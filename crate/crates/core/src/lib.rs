//! Finitary generalized algebraic theories and their homotopy-invariant
//! first-order language.
//!
//! The crate is organized around the pipeline a theory goes through:
//!
//! - [`kernel`] elaborates raw declarations into a checked [`kernel::Theory`],
//!   infers types of terms and decides judgmental equality by bounded
//!   rewriting.
//! - [`syncat`] is the syntactic category at desk scale: context morphisms,
//!   composition by substitution, display maps and their pullbacks.
//! - [`formulas`] is the equality-free first-order language over a theory:
//!   construction, substitution along context morphisms, an entailment proof
//!   checker and a finite-model countermodel finder.
//! - [`semantics`] gives tabulated finite set-valued models, context
//!   enumeration and formula evaluation.
//! - [`fibrations`] has model homomorphisms, the weak-pullback test for
//!   anodyne fibrations and the generic invariance harness.
//! - [`cat`] instantiates everything on finite categories: the folk model
//!   structure, path objects, homotopy of interpretations and the two
//!   invariance theorems in executable form.
//! - [`gen`] provides seeded random generators for contexts, morphisms and
//!   formulas, used by the property suites.

pub mod cat;
pub mod fibrations;
pub mod formulas;
pub mod gen;
pub mod kernel;
pub mod semantics;
pub mod syncat;
pub mod theories;

pub use kernel::{Context, Equation, OpDecl, SortDecl, TermExpr, Theory, TypeExpr, Verdict};
pub use syncat::{ContextMorphism, DisplayMap};
