//! Simultaneous substitution of terms for context variables.
//!
//! A substitution is a slice of terms, one per variable of the source
//! context; `sub[i]` replaces `Var(i)`. Terms have no binders, so
//! substitution is plain structural replacement.

use super::{TermExpr, TypeExpr};

pub fn subst_term(t: &TermExpr, sub: &[TermExpr]) -> TermExpr {
    match t {
        TermExpr::Var(i) => sub[*i].clone(),
        TermExpr::App(op, args) => {
            TermExpr::App(*op, args.iter().map(|a| subst_term(a, sub)).collect())
        }
    }
}

pub fn subst_type(ty: &TypeExpr, sub: &[TermExpr]) -> TypeExpr {
    TypeExpr {
        sort: ty.sort,
        args: ty.args.iter().map(|a| subst_term(a, sub)).collect(),
    }
}
