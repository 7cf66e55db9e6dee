//! Bounded equality decision by oriented rewriting.
//!
//! Term equation axioms are used as rewrite rules, left to right exactly as
//! declared; type equality axioms rewrite type expressions the same way.
//! Rewriting is innermost-leftmost and deterministic (rules tried in
//! declaration order, first applicable step taken). A rule matches a redex
//! when its left-hand side matches structurally; telescope variables not
//! fixed by the match are completed first from the redex's type and then by
//! searching the ambient context for a variable of the required type. Rules
//! whose instantiation stays underdetermined are skipped, which makes the
//! procedure a strict under-approximation of derivable equality.

use super::subst::subst_term;
use super::{Context, Equation, EquationBody, TermExpr, Theory, TypeExpr, Verdict};

/// Partial assignment of terms to the telescope variables of a rule.
type Assignment = Vec<Option<TermExpr>>;

fn match_term(pattern: &TermExpr, term: &TermExpr, sigma: &mut Assignment) -> bool {
    match pattern {
        TermExpr::Var(i) => match &sigma[*i] {
            Some(existing) => existing == term,
            None => {
                sigma[*i] = Some(term.clone());
                true
            }
        },
        TermExpr::App(op, pargs) => match term {
            TermExpr::App(top, targs) if top == op && targs.len() == pargs.len() => {
                pargs.iter().zip(targs).all(|(p, t)| match_term(p, t, sigma))
            }
            _ => false,
        },
    }
}

fn match_type(pattern: &TypeExpr, ty: &TypeExpr, sigma: &mut Assignment) -> bool {
    pattern.sort == ty.sort
        && pattern.args.len() == ty.args.len()
        && pattern.args.iter().zip(&ty.args).all(|(p, t)| match_term(p, t, sigma))
}

/// Tracks the remaining step budget across a normalization.
struct Budget {
    fuel: u64,
    exhausted: bool,
}

impl Budget {
    fn new(fuel: u64) -> Self {
        Budget { fuel, exhausted: false }
    }

    fn step(&mut self) -> bool {
        if self.fuel == 0 {
            self.exhausted = true;
            return false;
        }
        self.fuel -= 1;
        true
    }
}

impl Theory {
    /// Normalizes `t` under the oriented equation axioms. Returns the
    /// fixpoint, or the partially rewritten term with the flag set when the
    /// step budget runs out.
    pub fn normalize(&self, ctx: &Context, t: &TermExpr, fuel: u64) -> (TermExpr, bool) {
        let mut budget = Budget::new(fuel);
        let out = self.norm_term(ctx, t, &mut budget);
        (out, budget.exhausted)
    }

    /// Normalizes the argument terms of a type and rewrites at the type root
    /// with the declared type equalities.
    pub fn normalize_type(&self, ctx: &Context, ty: &TypeExpr, fuel: u64) -> (TypeExpr, bool) {
        let mut budget = Budget::new(fuel);
        let out = self.norm_type(ctx, ty, &mut budget);
        (out, budget.exhausted)
    }

    /// Bounded decision of judgmental type equality. `Yes` means the normal
    /// forms coincide syntactically; `No` is only emitted for theories
    /// declared confluent; everything else is `Unknown`.
    pub fn types_equal(&self, ctx: &Context, a: &TypeExpr, b: &TypeExpr, fuel: u64) -> Verdict {
        if a == b {
            return Verdict::Yes;
        }
        let (na, ea) = self.normalize_type(ctx, a, fuel);
        let (nb, eb) = self.normalize_type(ctx, b, fuel);
        self.compare(na == nb, ea || eb)
    }

    /// Bounded decision of judgmental term equality at a stated type.
    pub fn terms_equal(
        &self,
        ctx: &Context,
        s: &TermExpr,
        t: &TermExpr,
        at: &TypeExpr,
        fuel: u64,
    ) -> Verdict {
        if s == t {
            return Verdict::Yes;
        }
        let (ns, es) = self.normalize(ctx, s, fuel);
        let (nt, et) = self.normalize(ctx, t, fuel);
        if ns == nt {
            return Verdict::Yes;
        }
        // The stated type itself may normalize two proofs of an equality sort
        // apart; compare once more after normalizing the type's arguments.
        let (_, eat) = self.normalize_type(ctx, at, fuel);
        self.compare(false, es || et || eat)
    }

    fn compare(&self, equal: bool, exhausted: bool) -> Verdict {
        if equal {
            Verdict::Yes
        } else if exhausted || !self.confluent {
            Verdict::Unknown
        } else {
            Verdict::No
        }
    }

    fn norm_term(&self, ctx: &Context, t: &TermExpr, budget: &mut Budget) -> TermExpr {
        let mut cur = match t {
            TermExpr::Var(_) => t.clone(),
            TermExpr::App(op, args) => TermExpr::App(
                *op,
                args.iter().map(|a| self.norm_term(ctx, a, budget)).collect(),
            ),
        };
        // Loop guard: oriented axioms such as commutativity cycle; stop at
        // the first repeat so the result stays a deterministic function of
        // the input.
        let mut seen: Vec<TermExpr> = Vec::new();
        loop {
            let Some(next) = self.step_term(ctx, &cur) else { return cur };
            if !budget.step() {
                return cur;
            }
            let next = match next {
                TermExpr::Var(_) => next,
                TermExpr::App(op, args) => TermExpr::App(
                    op,
                    args.iter().map(|a| self.norm_term(ctx, a, budget)).collect(),
                ),
            };
            if next == cur || seen.contains(&next) {
                return cur;
            }
            seen.push(std::mem::replace(&mut cur, next));
        }
    }

    fn norm_type(&self, ctx: &Context, ty: &TypeExpr, budget: &mut Budget) -> TypeExpr {
        let mut cur = TypeExpr {
            sort: ty.sort,
            args: ty.args.iter().map(|a| self.norm_term(ctx, a, budget)).collect(),
        };
        let mut seen: Vec<TypeExpr> = Vec::new();
        loop {
            let Some(next) = self.step_type(ctx, &cur) else { return cur };
            if !budget.step() {
                return cur;
            }
            let next = TypeExpr {
                sort: next.sort,
                args: next.args.iter().map(|a| self.norm_term(ctx, a, budget)).collect(),
            };
            if next == cur || seen.contains(&next) {
                return cur;
            }
            seen.push(std::mem::replace(&mut cur, next));
        }
    }

    /// Every root rewrite of a term, one per applicable equation. Test
    /// support for exhaustive confluence certification.
    #[cfg(test)]
    pub(crate) fn root_steps_all(&self, ctx: &Context, t: &TermExpr) -> Vec<TermExpr> {
        let mut out = Vec::new();
        for eq in &self.equations {
            if let Some(stepped) = self.try_term_rule(ctx, t, eq) {
                out.push(stepped);
            }
        }
        out
    }

    /// First applicable root rewrite of a term, by declaration order.
    fn step_term(&self, ctx: &Context, t: &TermExpr) -> Option<TermExpr> {
        for eq in &self.equations {
            if let Some(stepped) = self.try_term_rule(ctx, t, eq) {
                return Some(stepped);
            }
        }
        None
    }

    fn try_term_rule(&self, ctx: &Context, t: &TermExpr, eq: &Equation) -> Option<TermExpr> {
        let EquationBody::TermEq { lhs, rhs, at } = &eq.body else { return None };
        let mut sigma: Assignment = vec![None; eq.telescope.len()];
        if !match_term(lhs, t, &mut sigma) {
            return None;
        }
        if sigma.iter().any(Option::is_none) {
            // Complete from the redex's type, then from hypotheses.
            if let Some(t_ty) = self.infer_type_loose(ctx, t) {
                let mut with_ty = sigma.clone();
                if match_type(at, &t_ty, &mut with_ty) {
                    sigma = with_ty;
                }
            }
            if !self.complete_from_context(ctx, eq, &mut sigma) {
                return None;
            }
        }
        let sub: Vec<TermExpr> = sigma.into_iter().map(Option::unwrap).collect();
        if !self.instantiation_well_typed(ctx, eq, &sub) {
            return None;
        }
        let out = subst_term(rhs, &sub);
        if out != *t {
            Some(out)
        } else {
            None
        }
    }

    /// Guards a rule application: every telescope variable's assigned term
    /// must have (loosely inferred) type syntactically equal to the
    /// instantiated telescope entry. Bare-variable patterns match any term
    /// structurally, so without this check a rule could fire at the wrong
    /// type.
    fn instantiation_well_typed(&self, ctx: &Context, eq: &Equation, sub: &[TermExpr]) -> bool {
        for (j, term) in sub.iter().enumerate() {
            let expected = crate::kernel::subst_type(eq.telescope.entry(j), &sub[..j]);
            match self.infer_type_loose(ctx, term) {
                Some(actual) if actual == expected => {}
                _ => return false,
            }
        }
        true
    }

    /// First applicable root rewrite of a type, by declaration order.
    fn step_type(&self, ctx: &Context, ty: &TypeExpr) -> Option<TypeExpr> {
        for eq in &self.equations {
            let EquationBody::TypeEq { lhs, rhs } = &eq.body else { continue };
            let mut sigma: Assignment = vec![None; eq.telescope.len()];
            if !match_type(lhs, ty, &mut sigma) {
                continue;
            }
            if !self.complete_from_context(ctx, eq, &mut sigma) {
                continue;
            }
            let sub: Vec<TermExpr> = sigma.into_iter().map(Option::unwrap).collect();
            if !self.instantiation_well_typed(ctx, eq, &sub) {
                continue;
            }
            let out = TypeExpr {
                sort: rhs.sort,
                args: rhs.args.iter().map(|a| subst_term(a, &sub)).collect(),
            };
            if out != *ty {
                return Some(out);
            }
        }
        None
    }

    /// Instantiates telescope variables left undetermined by the structural
    /// match, by searching the ambient context for variables of the required
    /// (partially instantiated) types. This is what lets a reflected equality
    /// axiom like `a : Eq(f, g) |- f == g` fire when a witness `a` is in
    /// scope. Backtracking search; the first solution in (telescope entry,
    /// context variable) lexicographic order wins.
    fn complete_from_context(&self, ctx: &Context, eq: &Equation, sigma: &mut Assignment) -> bool {
        fn search(ctx: &Context, eq: &Equation, sigma: &Assignment, j: usize) -> Option<Assignment> {
            let Some(j) = (j..eq.telescope.len()).find(|&j| sigma[j].is_none()) else {
                return Some(sigma.clone());
            };
            let pattern_ty = eq.telescope.entry(j);
            for v in 0..ctx.len() {
                let mut candidate = sigma.clone();
                candidate[j] = Some(TermExpr::Var(v));
                if match_type(pattern_ty, ctx.entry(v), &mut candidate) {
                    if let Some(solution) = search(ctx, eq, &candidate, j + 1) {
                        return Some(solution);
                    }
                }
            }
            None
        }
        match search(ctx, eq, sigma, 0) {
            Some(solution) => {
                *sigma = solution;
                true
            }
            None => false,
        }
    }
}
