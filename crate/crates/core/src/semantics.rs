//! Tabulated finite set-valued models: per sort a table of carriers indexed
//! by telescope tuples, per operation a table of outputs. Equations are
//! validated by exhaustive evaluation, so a checked model satisfies every
//! axiom on the nose.

use std::collections::BTreeMap;

use crate::formulas::Formula;
use crate::kernel::{Context, Theory, TypeExpr, TermExpr, SortId, OpId, Equation, EquationBody};

/// An element of a carrier, by index into the carrier's name list.
pub type Elem = usize;

/// An element of `M(Γ)`: one carrier element per context entry, dependently
/// typed componentwise.
pub type ContextElement = Vec<Elem>;

/// A finite model: carriers are explicit lists of named elements, tables are
/// ordered maps so every traversal is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FiniteModel {
    /// Indexed by `SortId`: telescope tuple -> carrier element names.
    sort_tables: Vec<BTreeMap<ContextElement, Vec<String>>>,
    /// Indexed by `OpId`: telescope tuple -> output element.
    op_tables: Vec<BTreeMap<ContextElement, Elem>>,
}

/// Violation reported by [`FiniteModel::check`], citing the first failure in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelViolation {
    #[error("missing table entry for {symbol} at tuple {tuple:?}")]
    MissingTableEntry { symbol: String, tuple: ContextElement },
    #[error("extraneous table entry for {symbol} at tuple {tuple:?}")]
    ExtraneousEntry { symbol: String, tuple: ContextElement },
    #[error("duplicate element name `{name}` in carrier of {symbol} at {tuple:?}")]
    DuplicateElement { symbol: String, tuple: ContextElement, name: String },
    #[error("output of {op} at {tuple:?} is {value}, outside its carrier of size {carrier_len}")]
    OutputOutOfRange { op: String, tuple: ContextElement, value: Elem, carrier_len: usize },
    #[error("equation #{eq_index} fails at tuple {tuple:?}: {lhs} != {rhs}")]
    EquationViolation { eq_index: usize, tuple: ContextElement, lhs: String, rhs: String },
    #[error("type equality #{eq_index} fails at tuple {tuple:?}: carriers differ")]
    TypeEqViolation { eq_index: usize, tuple: ContextElement },
}

impl FiniteModel {
    pub fn new(th: &Theory) -> FiniteModel {
        FiniteModel {
            sort_tables: vec![BTreeMap::new(); th.sorts().len()],
            op_tables: vec![BTreeMap::new(); th.ops().len()],
        }
    }

    pub fn set_carrier(&mut self, sort: SortId, tuple: ContextElement, elements: Vec<String>) {
        self.sort_tables[sort.0].insert(tuple, elements);
    }

    pub fn set_op(&mut self, op: OpId, tuple: ContextElement, value: Elem) {
        self.op_tables[op.0].insert(tuple, value);
    }

    pub fn remove_carrier(&mut self, sort: SortId, tuple: &[Elem]) {
        self.sort_tables[sort.0].remove(tuple);
    }

    pub fn remove_op(&mut self, op: OpId, tuple: &[Elem]) {
        self.op_tables[op.0].remove(tuple);
    }

    pub fn carrier(&self, sort: SortId, tuple: &[Elem]) -> Option<&Vec<String>> {
        self.sort_tables[sort.0].get(tuple)
    }

    pub fn op_entry(&self, op: OpId, tuple: &[Elem]) -> Option<Elem> {
        self.op_tables[op.0].get(tuple).copied()
    }

    pub fn sort_table(&self, sort: SortId) -> &BTreeMap<ContextElement, Vec<String>> {
        &self.sort_tables[sort.0]
    }

    pub fn op_table(&self, op: OpId) -> &BTreeMap<ContextElement, Elem> {
        &self.op_tables[op.0]
    }

    /// Evaluates a term at a context element; `None` on a missing table
    /// entry (possible only for unchecked models).
    pub fn try_eval_term(&self, t: &TermExpr, x: &[Elem]) -> Option<Elem> {
        match t {
            TermExpr::Var(i) => x.get(*i).copied(),
            TermExpr::App(op, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.try_eval_term(a, x))
                    .collect::<Option<ContextElement>>()?;
                self.op_entry(*op, &vals)
            }
        }
    }

    /// Evaluates a term at a context element. Total on checked models.
    pub fn eval_term(&self, t: &TermExpr, x: &[Elem]) -> Elem {
        self.try_eval_term(t, x).expect("eval_term: missing table entry in checked model")
    }

    /// The carrier interpreting a type at a context element.
    pub fn try_type_carrier(&self, ty: &TypeExpr, x: &[Elem]) -> Option<&Vec<String>> {
        let vals = ty
            .args
            .iter()
            .map(|a| self.try_eval_term(a, x))
            .collect::<Option<ContextElement>>()?;
        self.carrier(ty.sort, &vals)
    }

    pub fn type_carrier(&self, ty: &TypeExpr, x: &[Elem]) -> &Vec<String> {
        self.try_type_carrier(ty, x).expect("type_carrier: missing table entry in checked model")
    }

    /// All extensions of `x` by elements of the given telescope tail, in
    /// lexicographic order.
    pub fn extensions(&self, x: &[Elem], ext: &[TypeExpr]) -> Vec<ContextElement> {
        let mut out = vec![x.to_vec()];
        for ty in ext {
            let mut next = Vec::new();
            for partial in &out {
                let carrier = self.type_carrier(ty, partial);
                for e in 0..carrier.len() {
                    let mut extended = partial.clone();
                    extended.push(e);
                    next.push(extended);
                }
            }
            out = next;
        }
        out
    }

    /// The set `M(Γ)` as an ordered list: the lexicographic dependent-product
    /// enumeration of the context's carriers.
    pub fn enumerate_context(&self, ctx: &Context) -> Vec<ContextElement> {
        self.extensions(&[], ctx.entries())
    }

    /// Classical recursive evaluation of a formula at `x ∈ M(Γ)`. Quantifiers
    /// range over the extensions of `x` along the quantifier telescope, which
    /// are exactly the elements of the extended context that project to `x`.
    pub fn eval_formula(&self, phi: &Formula, x: &[Elem]) -> bool {
        match phi {
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(body) => !self.eval_formula(body, x),
            Formula::And(parts) => parts.iter().all(|p| self.eval_formula(p, x)),
            Formula::Or(parts) => parts.iter().any(|p| self.eval_formula(p, x)),
            Formula::Exists { ext, body } => {
                self.extensions(x, ext).iter().any(|y| self.eval_formula(body, y))
            }
            Formula::Forall { ext, body } => {
                self.extensions(x, ext).iter().all(|y| self.eval_formula(body, y))
            }
        }
    }

    /// Renders a context element with its element names.
    pub fn show_element(&self, ctx: &Context, x: &[Elem]) -> String {
        let mut parts = Vec::new();
        for (i, ty) in ctx.entries().iter().enumerate() {
            match self.try_type_carrier(ty, &x[..i]) {
                Some(carrier) => parts.push(carrier[x[i]].clone()),
                None => parts.push(format!("#{}", x[i])),
            }
        }
        format!("({})", parts.join(", "))
    }

    /// Exhaustive verification: typing shape of every table, totality, and
    /// every equation axiom on every tuple of its telescope. Reports the
    /// first failure in canonical (declaration, tuple) order.
    pub fn check(&self, th: &Theory) -> Result<(), ModelViolation> {
        for (s, decl) in th.sorts().iter().enumerate() {
            let expected = self.try_enumerate(decl.telescope.entries()).ok_or_else(|| {
                ModelViolation::MissingTableEntry {
                    symbol: decl.name.clone(),
                    tuple: Vec::new(),
                }
            })?;
            for tuple in &expected {
                let carrier = self.carrier(SortId(s), tuple).ok_or_else(|| {
                    ModelViolation::MissingTableEntry { symbol: decl.name.clone(), tuple: tuple.clone() }
                })?;
                for (i, name) in carrier.iter().enumerate() {
                    if carrier[..i].iter().any(|other| other == name) {
                        return Err(ModelViolation::DuplicateElement {
                            symbol: decl.name.clone(),
                            tuple: tuple.clone(),
                            name: name.clone(),
                        });
                    }
                }
            }
            for tuple in self.sort_tables[s].keys() {
                if !expected.contains(tuple) {
                    return Err(ModelViolation::ExtraneousEntry {
                        symbol: decl.name.clone(),
                        tuple: tuple.clone(),
                    });
                }
            }
        }
        for (o, decl) in th.ops().iter().enumerate() {
            let expected = self.try_enumerate(decl.telescope.entries()).ok_or_else(|| {
                ModelViolation::MissingTableEntry { symbol: decl.name.clone(), tuple: Vec::new() }
            })?;
            for tuple in &expected {
                let value = self.op_entry(OpId(o), tuple).ok_or_else(|| {
                    ModelViolation::MissingTableEntry { symbol: decl.name.clone(), tuple: tuple.clone() }
                })?;
                let carrier = self.try_type_carrier(&decl.result, tuple).ok_or_else(|| {
                    ModelViolation::MissingTableEntry { symbol: decl.name.clone(), tuple: tuple.clone() }
                })?;
                if value >= carrier.len() {
                    return Err(ModelViolation::OutputOutOfRange {
                        op: decl.name.clone(),
                        tuple: tuple.clone(),
                        value,
                        carrier_len: carrier.len(),
                    });
                }
            }
            for tuple in self.op_tables[o].keys() {
                if !expected.contains(tuple) {
                    return Err(ModelViolation::ExtraneousEntry {
                        symbol: decl.name.clone(),
                        tuple: tuple.clone(),
                    });
                }
            }
        }
        for (eq_index, eq) in th.equations().iter().enumerate() {
            self.check_equation(th, eq_index, eq)?;
        }
        Ok(())
    }

    fn check_equation(
        &self,
        th: &Theory,
        eq_index: usize,
        eq: &Equation,
    ) -> Result<(), ModelViolation> {
        let tuples = self.try_enumerate(eq.telescope.entries()).ok_or_else(|| {
            ModelViolation::MissingTableEntry { symbol: format!("eq#{eq_index}"), tuple: Vec::new() }
        })?;
        for tuple in &tuples {
            match &eq.body {
                EquationBody::TermEq { lhs, rhs, .. } => {
                    let lv = self.try_eval_term(lhs, tuple);
                    let rv = self.try_eval_term(rhs, tuple);
                    match (lv, rv) {
                        (Some(l), Some(r)) if l == r => {}
                        (Some(l), Some(r)) => {
                            return Err(ModelViolation::EquationViolation {
                                eq_index,
                                tuple: tuple.clone(),
                                lhs: format!("{} = {l}", th.show_term(lhs)),
                                rhs: format!("{} = {r}", th.show_term(rhs)),
                            });
                        }
                        _ => {
                            return Err(ModelViolation::MissingTableEntry {
                                symbol: format!("eq#{eq_index}"),
                                tuple: tuple.clone(),
                            });
                        }
                    }
                }
                EquationBody::TypeEq { lhs, rhs } => {
                    let lc = self.try_type_carrier(lhs, tuple);
                    let rc = self.try_type_carrier(rhs, tuple);
                    match (lc, rc) {
                        (Some(l), Some(r)) if l == r => {}
                        (Some(_), Some(_)) => {
                            return Err(ModelViolation::TypeEqViolation {
                                eq_index,
                                tuple: tuple.clone(),
                            });
                        }
                        _ => {
                            return Err(ModelViolation::MissingTableEntry {
                                symbol: format!("eq#{eq_index}"),
                                tuple: tuple.clone(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Enumeration that tolerates missing entries, for use while checking.
    fn try_enumerate(&self, ext: &[TypeExpr]) -> Option<Vec<ContextElement>> {
        let mut out = vec![Vec::new()];
        for ty in ext {
            let mut next = Vec::new();
            for partial in &out {
                let carrier = self.try_type_carrier(ty, partial)?;
                for e in 0..carrier.len() {
                    let mut extended = partial.clone();
                    extended.push(e);
                    next.push(extended);
                }
            }
            out = next;
        }
        Some(out)
    }
}
