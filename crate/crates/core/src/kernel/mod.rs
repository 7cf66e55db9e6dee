//! Kernel: checked theories, type inference and bounded judgmental equality.
//!
//! A theory is an ordered list of sort, operation and equation axioms where
//! every axiom is well-formed using only earlier declarations; declaration
//! order is the well-founded order and is never reinferred. Variables are
//! positional: a term refers to the i-th variable of its ambient telescope,
//! so weakening a term into an extended context is the identity and
//! substitution is structural.

mod elaborate;
mod rewrite;
mod subst;
#[cfg(test)]
mod tests;
mod typing;

pub mod raw;

pub use elaborate::{elaborate_theory, ElabError};
pub use subst::{subst_term, subst_type};


use std::fmt;

/// Index of a sort declaration in its theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortId(pub usize);

/// Index of an operation declaration in its theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpId(pub usize);

/// A type expression `B(t_0, .., t_{n-1})`: a sort applied to one term per
/// entry of the sort's telescope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeExpr {
    pub sort: SortId,
    pub args: Vec<TermExpr>,
}

/// A term expression: a variable (by position in the ambient context) or an
/// operation applied to one term per entry of its telescope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermExpr {
    Var(usize),
    App(OpId, Vec<TermExpr>),
}

impl TermExpr {
    pub fn app(op: OpId, args: Vec<TermExpr>) -> Self {
        TermExpr::App(op, args)
    }
}

/// A telescope of types where entry `i` may reference only variables
/// `0..i-1`. Every prefix of a context is itself a context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Context {
    entries: Vec<TypeExpr>,
}

impl Context {
    pub fn empty() -> Self {
        Context { entries: Vec::new() }
    }

    /// Wraps a telescope without checking well-formedness; run
    /// [`Theory::wf_context`] to validate.
    pub fn from_entries(entries: Vec<TypeExpr>) -> Self {
        Context { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &TypeExpr {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[TypeExpr] {
        &self.entries
    }

    pub fn push(&mut self, ty: TypeExpr) {
        self.entries.push(ty);
    }

    /// The length-`k` prefix, a context by the prefix property.
    pub fn prefix(&self, k: usize) -> Context {
        Context { entries: self.entries[..k].to_vec() }
    }

    /// This context extended by further entries (which may reference the
    /// existing variables).
    pub fn extend(&self, ext: &[TypeExpr]) -> Context {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(ext);
        Context { entries }
    }
}

/// Sort axiom: the premise of the type-introduction judgment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortDecl {
    pub name: String,
    pub telescope: Context,
}

/// Operation axiom: telescope plus the declared result type, valid in the
/// telescope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpDecl {
    pub name: String,
    pub telescope: Context,
    pub result: TypeExpr,
}

/// Body of an equation axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationBody {
    TermEq { lhs: TermExpr, rhs: TermExpr, at: TypeExpr },
    TypeEq { lhs: TypeExpr, rhs: TypeExpr },
}

/// Equation axiom over a telescope. Term equations are oriented left to
/// right for rewriting, exactly as declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub telescope: Context,
    pub body: EquationBody,
}

/// Three-valued verdict of the bounded equality decision procedure.
///
/// `No` is only ever produced for theories elaborated with the `confluent`
/// pragma; otherwise distinct normal forms yield `Unknown`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Default step budget for normalization and equality decisions.
pub const DEFAULT_FUEL: u64 = 1000;

/// Reference to a sort or operation declaration, in original declaration
/// order. The stream is the well-founded order used by model enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclRef {
    Sort(SortId),
    Op(OpId),
}

/// A checked finitary generalized algebraic theory. Immutable after
/// elaboration; all operations on it are pure.
#[derive(Clone, Debug, Default)]
pub struct Theory {
    pub(crate) sorts: Vec<SortDecl>,
    pub(crate) ops: Vec<OpDecl>,
    pub(crate) equations: Vec<Equation>,
    pub(crate) confluent: bool,
    pub(crate) decl_stream: Vec<DeclRef>,
}

impl Theory {
    pub fn sorts(&self) -> &[SortDecl] {
        &self.sorts
    }

    pub fn ops(&self) -> &[OpDecl] {
        &self.ops
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Whether the theory was declared confluent (`pragma confluent`),
    /// licensing `No` equality verdicts.
    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    /// Sorts and operations interleaved in declaration order.
    pub fn decl_stream(&self) -> &[DeclRef] {
        &self.decl_stream
    }

    pub fn sort(&self, id: SortId) -> &SortDecl {
        &self.sorts[id.0]
    }

    pub fn op(&self, id: OpId) -> &OpDecl {
        &self.ops[id.0]
    }

    pub fn sort_by_name(&self, name: &str) -> Option<SortId> {
        self.sorts.iter().position(|s| s.name == name).map(SortId)
    }

    pub fn op_by_name(&self, name: &str) -> Option<OpId> {
        self.ops.iter().position(|o| o.name == name).map(OpId)
    }

    /// Renders a term with canonical variable names `x0, x1, ..`.
    pub fn show_term(&self, t: &TermExpr) -> String {
        match t {
            TermExpr::Var(i) => format!("x{i}"),
            TermExpr::App(op, args) => {
                let name = &self.op(*op).name;
                if args.is_empty() {
                    name.clone()
                } else {
                    let rendered: Vec<String> = args.iter().map(|a| self.show_term(a)).collect();
                    format!("{}({})", name, rendered.join(", "))
                }
            }
        }
    }

    pub fn show_type(&self, ty: &TypeExpr) -> String {
        let name = &self.sort(ty.sort).name;
        if ty.args.is_empty() {
            name.clone()
        } else {
            let rendered: Vec<String> = ty.args.iter().map(|a| self.show_term(a)).collect();
            format!("{}({})", name, rendered.join(", "))
        }
    }

    pub fn show_context(&self, ctx: &Context) -> String {
        let rendered: Vec<String> = ctx
            .entries()
            .iter()
            .enumerate()
            .map(|(i, ty)| format!("x{i}: {}", self.show_type(ty)))
            .collect();
        format!("({})", rendered.join(", "))
    }
}

/// Errors raised by kernel checking operations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("unknown symbol `{name}`")]
    UnknownSymbol { name: String },
    #[error("`{name}` is a variable and cannot be applied to arguments")]
    NotAnOperation { name: String },
    #[error("duplicate declaration of `{name}`")]
    DuplicateSymbol { name: String },
    #[error("`{symbol}` expects {expected} arguments, got {actual}")]
    ArityMismatch { symbol: String, expected: usize, actual: usize },
    #[error("variable x{index} out of range in a context of length {len}")]
    VarOutOfRange { index: usize, len: usize },
    #[error("type mismatch: expected `{expected}`, found `{actual}` (equality verdict: no)")]
    TypeMismatch { expected: String, actual: String },
    #[error("equality undecided between `{lhs}` and `{rhs}` within the step budget")]
    EqualityUndecided { lhs: String, rhs: String },
    #[error("ill-formed telescope at entry {position}: {cause}")]
    IllFormedTelescope { position: usize, cause: Box<KernelError> },
}
