//! Elaboration of raw declarations into a checked theory.
//!
//! Declarations are processed in the order given; each one must be
//! well-formed relative to the previously accepted ones, so the declaration
//! order itself is the witness of well-foundedness.

use super::raw::{RawDecl, RawTerm, RawType};
use super::{
    Context, DeclRef, Equation, EquationBody, KernelError, OpDecl, OpId, SortDecl, SortId,
    TermExpr, Theory, TypeExpr,
};

/// An elaboration failure, citing the offending declaration by index.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("declaration #{decl_index} ({decl_desc}): {cause}")]
pub struct ElabError {
    pub decl_index: usize,
    pub decl_desc: String,
    pub cause: KernelError,
}

/// Elaborates an ordered declaration list into a [`Theory`]. Every axiom's
/// telescope and bodies are checked against the earlier declarations only.
pub fn elaborate_theory(decls: &[RawDecl]) -> Result<Theory, ElabError> {
    let mut th = Theory::default();
    for (decl_index, decl) in decls.iter().enumerate() {
        let fail = |cause: KernelError| ElabError {
            decl_index,
            decl_desc: describe(decl),
            cause,
        };
        match decl {
            RawDecl::Sort { name, telescope } => {
                check_fresh(&th, name).map_err(fail)?;
                let (tele, _) = elab_telescope(&th, telescope).map_err(fail)?;
                th.decl_stream.push(DeclRef::Sort(SortId(th.sorts.len())));
                th.sorts.push(SortDecl { name: clone_name(name), telescope: tele });
            }
            RawDecl::Op { name, telescope, result } => {
                check_fresh(&th, name).map_err(fail)?;
                let (tele, scope) = elab_telescope(&th, telescope).map_err(fail)?;
                let result = elab_type(&th, &scope, result).map_err(fail)?;
                th.check_type(&tele, &result).map_err(fail)?;
                th.decl_stream.push(DeclRef::Op(OpId(th.ops.len())));
                th.ops.push(OpDecl { name: clone_name(name), telescope: tele, result });
            }
            RawDecl::TermEq { telescope, lhs, rhs, at } => {
                let (tele, scope) = elab_telescope(&th, telescope).map_err(fail)?;
                let at = elab_type(&th, &scope, at).map_err(fail)?;
                th.check_type(&tele, &at).map_err(fail)?;
                let lhs = elab_term(&th, &scope, lhs).map_err(fail)?;
                let rhs = elab_term(&th, &scope, rhs).map_err(fail)?;
                th.check_term(&tele, &lhs, &at).map_err(fail)?;
                th.check_term(&tele, &rhs, &at).map_err(fail)?;
                th.equations.push(Equation {
                    telescope: tele,
                    body: EquationBody::TermEq { lhs, rhs, at },
                });
            }
            RawDecl::TypeEq { telescope, lhs, rhs } => {
                let (tele, scope) = elab_telescope(&th, telescope).map_err(fail)?;
                let lhs = elab_type(&th, &scope, lhs).map_err(fail)?;
                let rhs = elab_type(&th, &scope, rhs).map_err(fail)?;
                th.check_type(&tele, &lhs).map_err(fail)?;
                th.check_type(&tele, &rhs).map_err(fail)?;
                th.equations.push(Equation { telescope: tele, body: EquationBody::TypeEq { lhs, rhs } });
            }
            RawDecl::PragmaConfluent => {
                th.confluent = true;
            }
        }
    }
    Ok(th)
}

fn clone_name(name: &str) -> String {
    name.to_owned()
}

fn describe(decl: &RawDecl) -> String {
    match decl {
        RawDecl::Sort { name, .. } => format!("sort {name}"),
        RawDecl::Op { name, .. } => format!("op {name}"),
        RawDecl::TermEq { .. } => "eq".to_owned(),
        RawDecl::TypeEq { .. } => "typeq".to_owned(),
        RawDecl::PragmaConfluent => "pragma confluent".to_owned(),
    }
}

fn check_fresh(th: &Theory, name: &str) -> Result<(), KernelError> {
    if th.sort_by_name(name).is_some() || th.op_by_name(name).is_some() {
        return Err(KernelError::DuplicateSymbol { name: name.to_owned() });
    }
    Ok(())
}

/// Variable names in scope, by position.
type Scope = Vec<String>;

fn elab_telescope(
    th: &Theory,
    raw: &[(String, RawType)],
) -> Result<(Context, Scope), KernelError> {
    let mut ctx = Context::empty();
    let mut scope: Scope = Vec::new();
    for (position, (var, raw_ty)) in raw.iter().enumerate() {
        let wrap = |cause: KernelError| KernelError::IllFormedTelescope {
            position,
            cause: Box::new(cause),
        };
        if scope.iter().any(|s| s == var) {
            return Err(wrap(KernelError::DuplicateSymbol { name: var.clone() }));
        }
        let ty = elab_type(th, &scope, raw_ty).map_err(wrap)?;
        th.check_type(&ctx, &ty).map_err(wrap)?;
        ctx.push(ty);
        scope.push(var.clone());
    }
    Ok((ctx, scope))
}

fn elab_type(th: &Theory, scope: &Scope, raw: &RawType) -> Result<TypeExpr, KernelError> {
    let sort = th
        .sort_by_name(&raw.sort)
        .ok_or_else(|| KernelError::UnknownSymbol { name: raw.sort.clone() })?;
    let args = raw
        .args
        .iter()
        .map(|a| elab_term(th, scope, a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TypeExpr { sort, args })
}

fn elab_term(th: &Theory, scope: &Scope, raw: &RawTerm) -> Result<TermExpr, KernelError> {
    match raw {
        RawTerm::Ident(name) => {
            if let Some(pos) = scope.iter().position(|s| s == name) {
                return Ok(TermExpr::Var(pos));
            }
            let op = th
                .op_by_name(name)
                .ok_or_else(|| KernelError::UnknownSymbol { name: name.clone() })?;
            Ok(TermExpr::App(op, Vec::new()))
        }
        RawTerm::App(name, args) => {
            if scope.iter().any(|s| s == name) {
                return Err(KernelError::NotAnOperation { name: name.clone() });
            }
            let op = th
                .op_by_name(name)
                .ok_or_else(|| KernelError::UnknownSymbol { name: name.clone() })?;
            let args = args
                .iter()
                .map(|a| elab_term(th, scope, a))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TermExpr::App(op, args))
        }
    }
}
