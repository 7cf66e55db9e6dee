//! Exhaustive finite-model enumeration and the countermodel finder.
//!
//! Models are enumerated in a canonical order: declarations are walked in
//! their well-founded declaration order; for a sort, every telescope tuple
//! (in lexicographic order) gets a carrier size chosen ascending from 0 to
//! the bound, carriers being initial segments of canonically named elements;
//! for an operation, every tuple gets an output chosen ascending. Equation
//! axioms are enforced as soon as their instances become evaluable, and two
//! consequences of the axioms are propagated into the size choice itself
//! (an operation output forces its carrier nonempty; an axiom equating a
//! variable to a term independent of it forces the carrier to be a
//! singleton or empty), so the search prunes without changing the set or
//! order of surviving models.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::formulas::Formula;
use crate::kernel::{Context, DeclRef, Equation, EquationBody, OpId, SortId, TermExpr, Theory, TypeExpr};
use crate::semantics::{ContextElement, FiniteModel};

/// A model refuting an entailment, with the first witness in `M(Γ)` order.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub model: FiniteModel,
    pub witness: ContextElement,
}

/// Enumerates every model of the theory with all carriers of size at most
/// `max_size`, in canonical order, applying the visitor to each.
pub fn for_each_model(
    th: &Theory,
    max_size: usize,
    visitor: &mut dyn FnMut(&FiniteModel) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut search = Search::new(th, max_size, visitor);
    search.go_item(0)
}

/// Searches for a model and an element of `M(Γ)` satisfying `phi` but not
/// `psi`, by exhaustive enumeration up to the carrier bound. Deterministic
/// first hit; `None` means no countermodel exists within the bound.
pub fn find_countermodel(
    th: &Theory,
    gamma: &Context,
    phi: &Formula,
    psi: &Formula,
    max_size: usize,
) -> Option<Countermodel> {
    let mut found = None;
    let _ = for_each_model(th, max_size, &mut |m| {
        for x in m.enumerate_context(gamma) {
            if m.eval_formula(phi, &x) && !m.eval_formula(psi, &x) {
                found = Some(Countermodel { model: m.clone(), witness: x });
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    found
}

/// Symbols an equation's instances depend on, for filter triggering.
struct Touch {
    sorts: BTreeSet<usize>,
    ops: BTreeSet<usize>,
}

struct Search<'a> {
    th: &'a Theory,
    max_size: usize,
    model: FiniteModel,
    visitor: &'a mut dyn FnMut(&FiniteModel) -> ControlFlow<()>,
    touches: Vec<Touch>,
    /// Equations of the shape `tele, v : T |- v == rhs` with `rhs`
    /// independent of `v`: the carrier of any instance of `T` has at most
    /// one element.
    unique_carriers: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(
        th: &'a Theory,
        max_size: usize,
        visitor: &'a mut dyn FnMut(&FiniteModel) -> ControlFlow<()>,
    ) -> Self {
        let touches = th.equations().iter().map(equation_touch).collect();
        let unique_carriers = th
            .equations()
            .iter()
            .enumerate()
            .filter_map(|(i, eq)| {
                let EquationBody::TermEq { lhs, rhs, .. } = &eq.body else { return None };
                let last = eq.telescope.len().checked_sub(1)?;
                (matches!(lhs, TermExpr::Var(j) if *j == last) && !mentions_var(rhs, last))
                    .then_some(i)
            })
            .collect();
        Search { th, max_size, model: FiniteModel::new(th), visitor, touches, unique_carriers }
    }

    fn go_item(&mut self, item: usize) -> ControlFlow<()> {
        let Some(decl) = self.th.decl_stream().get(item) else {
            return (self.visitor)(&self.model);
        };
        match *decl {
            DeclRef::Sort(s) => {
                let tuples = self
                    .try_tuples(self.th.sort(s).telescope.entries())
                    .expect("sort telescope must be enumerable in declaration order");
                self.go_sort(item, s, &tuples, 0)
            }
            DeclRef::Op(o) => {
                let tuples = self
                    .try_tuples(self.th.op(o).telescope.entries())
                    .expect("op telescope must be enumerable in declaration order");
                self.go_op(item, o, &tuples, 0)
            }
        }
    }

    fn go_sort(
        &mut self,
        item: usize,
        s: SortId,
        tuples: &[ContextElement],
        k: usize,
    ) -> ControlFlow<()> {
        let Some(tuple) = tuples.get(k) else { return self.go_item(item + 1) };
        let min = if self.forced_nonempty(s, tuple) { 1 } else { 0 };
        let max = if self.forced_unique(s, tuple) { 1.min(self.max_size) } else { self.max_size };
        for size in min..=max {
            let elements = (0..size).map(|e| format!("e{e}")).collect();
            self.model.set_carrier(s, tuple.clone(), elements);
            if self.equations_hold_after(DeclRef::Sort(s)) {
                self.go_sort(item, s, tuples, k + 1)?;
            }
            self.model.remove_carrier(s, tuple);
        }
        ControlFlow::Continue(())
    }

    fn go_op(
        &mut self,
        item: usize,
        o: OpId,
        tuples: &[ContextElement],
        k: usize,
    ) -> ControlFlow<()> {
        let Some(tuple) = tuples.get(k) else { return self.go_item(item + 1) };
        let carrier_len = self
            .model
            .try_type_carrier(&self.th.op(o).result, tuple)
            .map(|c| c.len())
            .expect("op result carrier must exist in declaration order");
        for value in 0..carrier_len {
            self.model.set_op(o, tuple.clone(), value);
            if self.equations_hold_after(DeclRef::Op(o)) {
                self.go_op(item, o, tuples, k + 1)?;
            }
            self.model.remove_op(o, tuple);
        }
        ControlFlow::Continue(())
    }

    /// Checks every currently evaluable instance of every equation that
    /// mentions the touched symbol. Instances with missing lookups are
    /// rechecked when the relevant table grows.
    fn equations_hold_after(&self, touched: DeclRef) -> bool {
        for (eq, touch) in self.th.equations().iter().zip(&self.touches) {
            let relevant = match touched {
                DeclRef::Sort(s) => touch.sorts.contains(&s.0),
                DeclRef::Op(o) => touch.ops.contains(&o.0),
            };
            if relevant && !self.equation_holds_so_far(eq) {
                return false;
            }
        }
        true
    }

    fn equation_holds_so_far(&self, eq: &Equation) -> bool {
        let tuples = self.try_tuples_partial(eq.telescope.entries());
        for tuple in &tuples {
            match &eq.body {
                EquationBody::TermEq { lhs, rhs, .. } => {
                    if let (Some(l), Some(r)) =
                        (self.model.try_eval_term(lhs, tuple), self.model.try_eval_term(rhs, tuple))
                    {
                        if l != r {
                            return false;
                        }
                    }
                }
                EquationBody::TypeEq { lhs, rhs } => {
                    if let (Some(l), Some(r)) =
                        (self.model.try_type_carrier(lhs, tuple), self.model.try_type_carrier(rhs, tuple))
                    {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Some operation output is forced to land in this carrier, so size 0 is
    /// inconsistent.
    fn forced_nonempty(&self, s: SortId, tuple: &[usize]) -> bool {
        for op in self.th.ops() {
            if op.result.sort != s {
                continue;
            }
            let op_tuples = self.try_tuples_partial(op.telescope.entries());
            for t in &op_tuples {
                let args: Option<ContextElement> =
                    op.result.args.iter().map(|a| self.model.try_eval_term(a, t)).collect();
                if args.as_deref() == Some(tuple) {
                    return true;
                }
            }
        }
        false
    }

    /// A proof-irrelevance axiom covers this carrier, so sizes above 1 are
    /// inconsistent.
    fn forced_unique(&self, s: SortId, tuple: &[usize]) -> bool {
        for &eq_index in &self.unique_carriers {
            let eq = &self.th.equations()[eq_index];
            let last = eq.telescope.len() - 1;
            let pattern = eq.telescope.entry(last);
            if pattern.sort != s {
                continue;
            }
            let prefix = eq.telescope.prefix(last);
            let prefix_tuples = self.try_tuples_partial(prefix.entries());
            for w in &prefix_tuples {
                let args: Option<ContextElement> =
                    pattern.args.iter().map(|a| self.model.try_eval_term(a, w)).collect();
                if args.as_deref() == Some(tuple) {
                    return true;
                }
            }
        }
        false
    }

    /// Dependent tuple enumeration over complete tables; `None` if some
    /// carrier is missing outright.
    fn try_tuples(&self, ext: &[TypeExpr]) -> Option<Vec<ContextElement>> {
        let mut out = vec![Vec::new()];
        for ty in ext {
            let mut next = Vec::new();
            for partial in &out {
                let carrier = self.model.try_type_carrier(ty, partial)?;
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

    /// Dependent tuple enumeration over partially built tables: branches
    /// whose lookups are not yet decided are skipped rather than failing.
    fn try_tuples_partial(&self, ext: &[TypeExpr]) -> Vec<ContextElement> {
        let mut out = vec![Vec::new()];
        for ty in ext {
            let mut next = Vec::new();
            for partial in &out {
                if let Some(carrier) = self.model.try_type_carrier(ty, partial) {
                    for e in 0..carrier.len() {
                        let mut extended = partial.clone();
                        extended.push(e);
                        next.push(extended);
                    }
                }
            }
            out = next;
        }
        out
    }
}

fn mentions_var(t: &TermExpr, v: usize) -> bool {
    match t {
        TermExpr::Var(i) => *i == v,
        TermExpr::App(_, args) => args.iter().any(|a| mentions_var(a, v)),
    }
}

fn term_ops(t: &TermExpr, out: &mut BTreeSet<usize>) {
    if let TermExpr::App(op, args) = t {
        out.insert(op.0);
        for a in args {
            term_ops(a, out);
        }
    }
}

fn type_touch(ty: &TypeExpr, sorts: &mut BTreeSet<usize>, ops: &mut BTreeSet<usize>) {
    sorts.insert(ty.sort.0);
    for a in &ty.args {
        term_ops(a, ops);
    }
}

fn equation_touch(eq: &Equation) -> Touch {
    let mut sorts = BTreeSet::new();
    let mut ops = BTreeSet::new();
    for ty in eq.telescope.entries() {
        type_touch(ty, &mut sorts, &mut ops);
    }
    match &eq.body {
        EquationBody::TermEq { lhs, rhs, .. } => {
            term_ops(lhs, &mut ops);
            term_ops(rhs, &mut ops);
        }
        EquationBody::TypeEq { lhs, rhs } => {
            type_touch(lhs, &mut sorts, &mut ops);
            type_touch(rhs, &mut sorts, &mut ops);
        }
    }
    Touch { sorts, ops }
}
