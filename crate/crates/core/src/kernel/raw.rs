//! Raw (name-based) theory declarations, the input to elaboration.
//!
//! Raw syntax refers to sorts, operations and telescope variables by name;
//! elaboration resolves names to indices and variables to positions in
//! declaration order.

/// One declaration of a raw pretheory, in source order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawDecl {
    Sort { name: String, telescope: Vec<(String, RawType)> },
    Op { name: String, telescope: Vec<(String, RawType)>, result: RawType },
    TermEq { telescope: Vec<(String, RawType)>, lhs: RawTerm, rhs: RawTerm, at: RawType },
    TypeEq { telescope: Vec<(String, RawType)>, lhs: RawType, rhs: RawType },
    PragmaConfluent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawType {
    pub sort: String,
    pub args: Vec<RawTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawTerm {
    /// A bare identifier: a telescope variable if one of that name is in
    /// scope, otherwise a nullary operation.
    Ident(String),
    App(String, Vec<RawTerm>),
}

impl RawType {
    pub fn new(sort: impl Into<String>, args: Vec<RawTerm>) -> Self {
        RawType { sort: sort.into(), args }
    }

    pub fn plain(sort: impl Into<String>) -> Self {
        RawType { sort: sort.into(), args: Vec::new() }
    }
}

impl RawTerm {
    pub fn var(name: impl Into<String>) -> Self {
        RawTerm::Ident(name.into())
    }

    pub fn app(op: impl Into<String>, args: Vec<RawTerm>) -> Self {
        RawTerm::App(op.into(), args)
    }
}
