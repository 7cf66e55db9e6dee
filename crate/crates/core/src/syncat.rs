//! The syntactic category at desk scale: context morphisms with substitution
//! as composition, display maps onto context prefixes, and the explicit
//! pullback of a display map along an arbitrary morphism.
//!
//! Contexts are compared by structural equality of positional telescopes;
//! no quotient by provable type equality is taken. Canonical pullbacks are
//! strictly functorial on the nose.

use crate::kernel::{
    subst_term, subst_type, Context, KernelError, TermExpr, Theory, TypeExpr, Verdict,
    DEFAULT_FUEL,
};

/// A morphism of contexts `dom -> cod`: one term per entry of `cod`, each
/// well-typed in `dom` against the entry with the earlier terms substituted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextMorphism {
    pub dom: Context,
    pub cod: Context,
    pub terms: Vec<TermExpr>,
}

/// The projection from a context onto one of its prefixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayMap {
    pub total: Context,
    pub base_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SyncatError {
    #[error("domain mismatch: codomain of the first morphism differs from the domain of the second")]
    DomainMismatch,
    #[error("prefix length {k} exceeds context length {len}")]
    RangeError { k: usize, len: usize },
    #[error("component {index}: {cause}")]
    IllTypedComponent { index: usize, cause: KernelError },
}

impl ContextMorphism {
    /// The identity morphism: each variable maps to itself.
    pub fn identity(ctx: &Context) -> ContextMorphism {
        ContextMorphism {
            dom: ctx.clone(),
            cod: ctx.clone(),
            terms: (0..ctx.len()).map(TermExpr::Var).collect(),
        }
    }

    /// Component-wise substitution: `g` after `f`, defined when
    /// `f.cod == g.dom` structurally.
    pub fn compose(g: &ContextMorphism, f: &ContextMorphism) -> Result<ContextMorphism, SyncatError> {
        if f.cod != g.dom {
            return Err(SyncatError::DomainMismatch);
        }
        Ok(ContextMorphism {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            terms: g.terms.iter().map(|t| subst_term(t, &f.terms)).collect(),
        })
    }

    /// Serialization in the DSL notation: `[t1, t2, ..] : DOM -> COD`.
    pub fn show(&self, th: &Theory) -> String {
        let terms: Vec<String> = self.terms.iter().map(|t| th.show_term(t)).collect();
        format!(
            "[{}] : {} -> {}",
            terms.join(", "),
            th.show_context(&self.dom),
            th.show_context(&self.cod)
        )
    }

    /// Checks each component against its substituted codomain entry.
    pub fn check(&self, th: &Theory) -> Result<(), SyncatError> {
        if self.terms.len() != self.cod.len() {
            return Err(SyncatError::DomainMismatch);
        }
        for (i, term) in self.terms.iter().enumerate() {
            let expected = subst_type(self.cod.entry(i), &self.terms[..i]);
            th.check_term(&self.dom, term, &expected)
                .map_err(|cause| SyncatError::IllTypedComponent { index: i, cause })?;
        }
        Ok(())
    }
}

impl DisplayMap {
    /// The display map forgetting all but the first `k` variables.
    pub fn new(total: Context, k: usize) -> Result<DisplayMap, SyncatError> {
        if k > total.len() {
            return Err(SyncatError::RangeError { k, len: total.len() });
        }
        Ok(DisplayMap { total, base_len: k })
    }

    pub fn base(&self) -> Context {
        self.total.prefix(self.base_len)
    }

    /// The types of the forgotten tail, over the total context.
    pub fn extension(&self) -> &[TypeExpr] {
        &self.total.entries()[self.base_len..]
    }

    /// The underlying context morphism `total -> base`.
    pub fn as_morphism(&self) -> ContextMorphism {
        ContextMorphism {
            dom: self.total.clone(),
            cod: self.base(),
            terms: (0..self.base_len).map(TermExpr::Var).collect(),
        }
    }

    /// Length of the forgotten tail.
    pub fn height(&self) -> usize {
        self.total.len() - self.base_len
    }
}

/// Result of pulling a display map back along a morphism: the new total
/// context, the new display map over `f.dom`, and the top morphism of the
/// square into the original total context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackSquare {
    pub total: Context,
    pub display: DisplayMap,
    pub top: ContextMorphism,
}

/// Pulls the display map `p : total ->> base` back along `f : dom -> base`.
/// The new context is `f.dom` extended by the substituted tail types, so
/// `lt(p') = lt(p)`; the square commutes strictly. Substituted types are
/// re-checked; an undecidable equality surfaces as an error rather than
/// being guessed.
pub fn pullback_display(
    th: &Theory,
    f: &ContextMorphism,
    p: &DisplayMap,
) -> Result<PullbackSquare, SyncatError> {
    if f.cod != p.base() {
        return Err(SyncatError::DomainMismatch);
    }
    let mut total = f.dom.clone();
    let mut top_terms = f.terms.clone();
    for (offset, ty) in p.extension().iter().enumerate() {
        let substituted = subst_type(ty, &top_terms);
        th.check_type(&total, &substituted).map_err(|cause| SyncatError::IllTypedComponent {
            index: p.base_len + offset,
            cause,
        })?;
        total.push(substituted);
        top_terms.push(TermExpr::Var(f.dom.len() + offset));
    }
    let display = DisplayMap { total: total.clone(), base_len: f.dom.len() };
    let top = ContextMorphism { dom: total.clone(), cod: p.total.clone(), terms: top_terms };
    Ok(PullbackSquare { total, display, top })
}

/// Builds the coercion morphism `identity`-like map between two contexts of
/// equal length whose entries are judged equal; `None` when some entry pair
/// is not decided `Yes`.
pub fn coercion(th: &Theory, from: &Context, to: &Context) -> Option<ContextMorphism> {
    if from.len() != to.len() {
        return None;
    }
    for i in 0..from.len() {
        let prefix = from.prefix(i);
        if th.types_equal(&prefix, from.entry(i), to.entry(i), DEFAULT_FUEL) != Verdict::Yes {
            return None;
        }
    }
    Some(ContextMorphism {
        dom: from.clone(),
        cod: to.clone(),
        terms: (0..from.len()).map(TermExpr::Var).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::elaborate_theory;
    use crate::theories;

    fn cat() -> Theory {
        elaborate_theory(&theories::cat()).unwrap()
    }

    fn ob(th: &Theory) -> TypeExpr {
        TypeExpr { sort: th.sort_by_name("Ob").unwrap(), args: vec![] }
    }

    fn hom(th: &Theory, x: TermExpr, y: TermExpr) -> TypeExpr {
        TypeExpr { sort: th.sort_by_name("Hom").unwrap(), args: vec![x, y] }
    }

    fn var(i: usize) -> TermExpr {
        TermExpr::Var(i)
    }

    fn arrow_context(th: &Theory) -> Context {
        Context::from_entries(vec![ob(th), ob(th), hom(th, var(0), var(1))])
    }

    #[test]
    fn identity_lists_variables_in_order() {
        let th = cat();
        let ctx = arrow_context(&th);
        let idm = ContextMorphism::identity(&ctx);
        assert_eq!(idm.terms, vec![var(0), var(1), var(2)]);
        idm.check(&th).unwrap();
        let empty = ContextMorphism::identity(&Context::empty());
        assert!(empty.terms.is_empty());
        let single = ContextMorphism::identity(&Context::from_entries(vec![ob(&th)]));
        assert_eq!(single.terms, vec![var(0)]);
    }

    #[test]
    fn compose_is_unital() {
        let th = cat();
        let ctx = arrow_context(&th);
        // f : (a: Ob) -> (x, y: Ob, h: Hom(x, y)) sending everything through a
        let dom = Context::from_entries(vec![ob(&th)]);
        let id_op = th.op_by_name("id").unwrap();
        let f = ContextMorphism {
            dom: dom.clone(),
            cod: ctx.clone(),
            terms: vec![var(0), var(0), TermExpr::App(id_op, vec![var(0)])],
        };
        f.check(&th).unwrap();
        let left = ContextMorphism::compose(&ContextMorphism::identity(&ctx), &f).unwrap();
        let right = ContextMorphism::compose(&f, &ContextMorphism::identity(&dom)).unwrap();
        assert_eq!(left, f);
        assert_eq!(right, f);
    }

    #[test]
    fn compose_substitutes_componentwise() {
        let th = cat();
        // display projection (x, y: Ob, h: Hom(x, y)) ->> (x, y: Ob)
        let ctx = arrow_context(&th);
        let display = DisplayMap::new(ctx.clone(), 2).unwrap();
        let id_op = th.op_by_name("id").unwrap();
        let f = ContextMorphism {
            dom: Context::from_entries(vec![ob(&th)]),
            cod: ctx,
            terms: vec![var(0), var(0), TermExpr::App(id_op, vec![var(0)])],
        };
        let composed = ContextMorphism::compose(&display.as_morphism(), &f).unwrap();
        assert_eq!(composed.terms, vec![var(0), var(0)]);
        composed.check(&th).unwrap();
    }

    #[test]
    fn morphisms_serialize_in_the_bracket_notation() {
        let th = cat();
        let id_op = th.op_by_name("id").unwrap();
        let f = ContextMorphism {
            dom: Context::from_entries(vec![ob(&th)]),
            cod: arrow_context(&th),
            terms: vec![var(0), var(0), TermExpr::App(id_op, vec![var(0)])],
        };
        assert_eq!(
            f.show(&th),
            "[x0, x0, id(x0)] : (x0: Ob) -> (x0: Ob, x1: Ob, x2: Hom(x0, x1))"
        );
    }

    #[test]
    fn compose_requires_matching_middle_context() {
        let th = cat();
        let a = ContextMorphism::identity(&Context::from_entries(vec![ob(&th)]));
        let b = ContextMorphism::identity(&Context::empty());
        assert_eq!(ContextMorphism::compose(&a, &b), Err(SyncatError::DomainMismatch));
    }

    #[test]
    fn display_extremes() {
        let th = cat();
        let ctx = arrow_context(&th);
        let full = DisplayMap::new(ctx.clone(), ctx.len()).unwrap();
        assert_eq!(full.as_morphism(), ContextMorphism::identity(&ctx));
        let to_empty = DisplayMap::new(ctx.clone(), 0).unwrap();
        assert_eq!(to_empty.base(), Context::empty());
        assert!(to_empty.as_morphism().terms.is_empty());
        assert!(matches!(
            DisplayMap::new(ctx, 7),
            Err(SyncatError::RangeError { k: 7, .. })
        ));
    }

    #[test]
    fn pullback_of_hom_display_along_diagonal() {
        let th = cat();
        // pull (x, y: Ob, h: Hom(x, y)) ->> (x, y: Ob) back along
        // <a, a> : (a: Ob) -> (x, y: Ob)
        let total = arrow_context(&th);
        let p = DisplayMap::new(total, 2).unwrap();
        let f = ContextMorphism {
            dom: Context::from_entries(vec![ob(&th)]),
            cod: p.base(),
            terms: vec![var(0), var(0)],
        };
        let square = pullback_display(&th, &f, &p).unwrap();
        assert_eq!(
            square.total,
            Context::from_entries(vec![ob(&th), hom(&th, var(0), var(0))])
        );
        assert_eq!(square.display.base_len, 1);
        assert_eq!(square.top.terms, vec![var(0), var(0), var(1)]);
        square.top.check(&th).unwrap();
        // the square commutes strictly
        let left = ContextMorphism::compose(&f, &square.display.as_morphism()).unwrap();
        let right = ContextMorphism::compose(&p.as_morphism(), &square.top).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn pullback_along_identity_is_identity() {
        let th = cat();
        let total = arrow_context(&th);
        let p = DisplayMap::new(total, 2).unwrap();
        let square = pullback_display(&th, &ContextMorphism::identity(&p.base()), &p).unwrap();
        assert_eq!(square.total, p.total);
        assert_eq!(square.display, p);
        assert_eq!(square.top, ContextMorphism::identity(&p.total));
    }

    #[test]
    fn pullback_is_strictly_functorial() {
        let th = cat();
        // p : (x, y: Ob, h: Hom(x, y)) ->> (x, y: Ob),
        // f : (a, b: Ob, g: Hom(a, b)) -> (x, y: Ob)  picking (b, a)
        // g : (c: Ob) -> (a, b: Ob, g: Hom(a, b))  the diagonal with id
        let total = arrow_context(&th);
        let p = DisplayMap::new(total, 2).unwrap();
        let mid = arrow_context(&th);
        let f = ContextMorphism {
            dom: mid.clone(),
            cod: p.base(),
            terms: vec![var(1), var(0)],
        };
        let id_op = th.op_by_name("id").unwrap();
        let g = ContextMorphism {
            dom: Context::from_entries(vec![ob(&th)]),
            cod: mid,
            terms: vec![var(0), var(0), TermExpr::App(id_op, vec![var(0)])],
        };
        f.check(&th).unwrap();
        g.check(&th).unwrap();
        let fg = ContextMorphism::compose(&f, &g).unwrap();

        let direct = pullback_display(&th, &fg, &p).unwrap();
        let through_f = pullback_display(&th, &f, &p).unwrap();
        let through_g = pullback_display(&th, &g, &through_f.display).unwrap();
        assert_eq!(direct.total, through_g.total);
        assert_eq!(direct.display, through_g.display);
        // q(fg, A) = q(f, A) . q(g, f*A)
        let composed_top = ContextMorphism::compose(&through_f.top, &through_g.top).unwrap();
        assert_eq!(direct.top, composed_top);
    }

    #[test]
    fn generalized_display_factors_through_length_one_displays() {
        let th = cat();
        let total = arrow_context(&th);
        // the length-2 display (x, y, h) ->> (x) equals the composite of
        // single-variable displays
        let p = DisplayMap::new(total.clone(), 1).unwrap();
        let step1 = DisplayMap::new(total.clone(), 2).unwrap();
        let step2 = DisplayMap::new(total.prefix(2), 1).unwrap();
        let composite =
            ContextMorphism::compose(&step2.as_morphism(), &step1.as_morphism()).unwrap();
        assert_eq!(composite, p.as_morphism());
    }

    #[test]
    fn length_one_displays_are_pullbacks_of_sort_declaration_displays() {
        // every single-variable display arises by pulling the sort's
        // generic display back along the classifying morphism of the entry
        let th = elaborate_theory(&theories::cat_eq()).unwrap();
        let eq_sort = th.sort_by_name("Eq").unwrap();
        let ctx = Context::from_entries(vec![
            ob(&th),
            ob(&th),
            hom(&th, var(0), var(1)),
            hom(&th, var(0), var(1)),
            TypeExpr { sort: eq_sort, args: vec![var(0), var(1), var(2), var(3)] },
        ]);
        th.wf_context(&ctx).unwrap();
        for i in 0..ctx.len() {
            let entry = ctx.entry(i);
            let decl = th.sort(entry.sort);
            // generic display: the sort's telescope extended by the sort
            // applied to its own variables
            let generic_ty = TypeExpr {
                sort: entry.sort,
                args: (0..decl.telescope.len()).map(TermExpr::Var).collect(),
            };
            let generic = DisplayMap {
                total: decl.telescope.extend(&[generic_ty]),
                base_len: decl.telescope.len(),
            };
            let classifier = ContextMorphism {
                dom: ctx.prefix(i),
                cod: decl.telescope.clone(),
                terms: entry.args.clone(),
            };
            classifier.check(&th).unwrap();
            let square = pullback_display(&th, &classifier, &generic).unwrap();
            assert_eq!(square.total, ctx.prefix(i + 1));
            assert_eq!(square.display, DisplayMap { total: ctx.prefix(i + 1), base_len: i });
        }
    }

    #[test]
    fn coercion_exists_between_judgmentally_equal_contexts() {
        // chains with zero boundary are cycles: C1(zero0) == Z1 as a type
        // equality, so contexts built from either side coerce
        let th = elaborate_theory(&theories::chain_f2(1)).unwrap();
        let z1 = TypeExpr { sort: th.sort_by_name("Z1").unwrap(), args: vec![] };
        let zero0 = TermExpr::App(th.op_by_name("zero0").unwrap(), vec![]);
        let c1_zero = TypeExpr { sort: th.sort_by_name("C1").unwrap(), args: vec![zero0] };
        let a = Context::from_entries(vec![z1.clone()]);
        let b = Context::from_entries(vec![c1_zero]);
        th.wf_context(&a).unwrap();
        th.wf_context(&b).unwrap();
        let c = coercion(&th, &a, &b).expect("judgmentally equal contexts coerce");
        c.check(&th).unwrap();
        assert!(coercion(&th, &a, &Context::empty()).is_none());
        // Hom(x, x) and Hom(x, y) do not coerce over the category theory
        let cat_th = cat();
        let p = Context::from_entries(vec![ob(&cat_th), ob(&cat_th), hom(&cat_th, var(0), var(0))]);
        let q = Context::from_entries(vec![ob(&cat_th), ob(&cat_th), hom(&cat_th, var(0), var(1))]);
        assert!(coercion(&cat_th, &p, &q).is_none());
    }
}
