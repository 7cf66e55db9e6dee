//! Model homomorphisms, the weak-pullback test for anodyne fibrations, and
//! the invariance harness.
//!
//! A homomorphism is anodyne when every naturality square over a generator
//! display map (one per sort declaration) is a weak pullback, i.e. the gap
//! map into the actual pullback is surjective. Checking the length-1
//! generators suffices: every generalized display map is a finite tower of
//! pullbacks of them, and weak pullbacks compose and are stable under the
//! pullbacks involved.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::formulas::Formula;
use crate::kernel::{Context, SortId, TermExpr, Theory, TypeExpr};
use crate::semantics::{ContextElement, Elem, FiniteModel};

/// A morphism of finite models: for each sort and each source telescope
/// tuple, a map between the corresponding carriers (the target carrier taken
/// at the image tuple).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelHom {
    pub source: FiniteModel,
    pub target: FiniteModel,
    /// Indexed by `SortId`: source tuple -> per-element image.
    components: Vec<BTreeMap<ContextElement, Vec<Elem>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HomViolation {
    #[error("missing component for sort {sort} at tuple {tuple:?}")]
    MissingComponent { sort: String, tuple: ContextElement },
    #[error("component for sort {sort} at {tuple:?} has length {found}, carrier has {expected}")]
    ComponentShape { sort: String, tuple: ContextElement, found: usize, expected: usize },
    #[error("component for sort {sort} at {tuple:?} maps element {elem} to {value}, outside the target carrier of size {carrier_len}")]
    ComponentRange { sort: String, tuple: ContextElement, elem: Elem, value: Elem, carrier_len: usize },
    #[error("naturality fails for op {op} at tuple {tuple:?}: h(f_M(x)) = {lhs} but f_N(h(x)) = {rhs}")]
    Naturality { op: String, tuple: ContextElement, lhs: Elem, rhs: Elem },
}

impl ModelHom {
    pub fn new(source: FiniteModel, target: FiniteModel, n_sorts: usize) -> ModelHom {
        ModelHom { source, target, components: vec![BTreeMap::new(); n_sorts] }
    }

    /// The identity homomorphism of a checked model.
    pub fn identity(th: &Theory, model: &FiniteModel) -> ModelHom {
        let mut hom = ModelHom::new(model.clone(), model.clone(), th.sorts().len());
        for (s, decl) in th.sorts().iter().enumerate() {
            for tuple in model.enumerate_context(&decl.telescope) {
                let carrier = model
                    .carrier(SortId(s), &tuple)
                    .expect("identity hom over a checked model");
                hom.set_component(SortId(s), tuple, (0..carrier.len()).collect());
            }
        }
        hom
    }

    pub fn set_component(&mut self, sort: SortId, tuple: ContextElement, map: Vec<Elem>) {
        self.components[sort.0].insert(tuple, map);
    }

    pub fn component(&self, sort: SortId, tuple: &[Elem]) -> Option<&Vec<Elem>> {
        self.components[sort.0].get(tuple)
    }

    /// Maps one carrier element sitting over a source tuple.
    pub fn map_at(&self, ty: &TypeExpr, x: &[Elem], value: Elem) -> Elem {
        let args: ContextElement =
            ty.args.iter().map(|a| self.source.eval_term(a, x)).collect();
        self.component(ty.sort, &args).expect("component missing in checked hom")[value]
    }

    /// Maps an element of `M(Γ)` to an element of `N(Γ)` componentwise.
    pub fn map_tuple(&self, ctx: &Context, x: &[Elem]) -> ContextElement {
        let mut out = Vec::with_capacity(x.len());
        for (i, ty) in ctx.entries().iter().enumerate() {
            out.push(self.map_at(ty, &x[..i], x[i]));
        }
        out
    }

    /// Exhaustive naturality check: component shape over every tuple, and
    /// commutation with every operation table entry. Reports the first
    /// failure in canonical order.
    pub fn check(&self, th: &Theory) -> Result<(), HomViolation> {
        for (s, decl) in th.sorts().iter().enumerate() {
            for tuple in self.source.enumerate_context(&decl.telescope) {
                let source_carrier = self
                    .source
                    .carrier(SortId(s), &tuple)
                    .expect("checked source model");
                let image = self.map_tuple(&decl.telescope, &tuple);
                let target_carrier = self
                    .target
                    .carrier(SortId(s), &image)
                    .expect("checked target model");
                let component = self.component(SortId(s), &tuple).ok_or_else(|| {
                    HomViolation::MissingComponent { sort: decl.name.clone(), tuple: tuple.clone() }
                })?;
                if component.len() != source_carrier.len() {
                    return Err(HomViolation::ComponentShape {
                        sort: decl.name.clone(),
                        tuple,
                        found: component.len(),
                        expected: source_carrier.len(),
                    });
                }
                for (elem, &value) in component.iter().enumerate() {
                    if value >= target_carrier.len() {
                        return Err(HomViolation::ComponentRange {
                            sort: decl.name.clone(),
                            tuple,
                            elem,
                            value,
                            carrier_len: target_carrier.len(),
                        });
                    }
                }
            }
        }
        for (o, decl) in th.ops().iter().enumerate() {
            for tuple in self.source.enumerate_context(&decl.telescope) {
                let out = self
                    .source
                    .op_entry(crate::kernel::OpId(o), &tuple)
                    .expect("checked source model");
                let lhs = self.map_at(&decl.result, &tuple, out);
                let image = self.map_tuple(&decl.telescope, &tuple);
                let rhs = self
                    .target
                    .op_entry(crate::kernel::OpId(o), &image)
                    .expect("checked target model");
                if lhs != rhs {
                    return Err(HomViolation::Naturality {
                        op: decl.name.clone(),
                        tuple,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Failure witness of the weak-pullback test: the sort whose generator
/// square is not a weak pullback, the source telescope tuple, and the
/// uncovered element of the target fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnodyneWitness {
    pub sort: SortId,
    pub tuple: ContextElement,
    pub uncovered: Elem,
}

/// Tests whether a (checked) homomorphism is an anodyne fibration: for every
/// sort declaration `Γ ⊢ B`, the gap map `M(Γ.B) -> N(Γ.B) ×_{N(Γ)} M(Γ)`
/// must be surjective, which amounts to each component map being onto the
/// target fiber over the image tuple.
pub fn is_anodyne_fibration(th: &Theory, hom: &ModelHom) -> Result<(), AnodyneWitness> {
    for (s, decl) in th.sorts().iter().enumerate() {
        for tuple in hom.source.enumerate_context(&decl.telescope) {
            let component = hom.component(SortId(s), &tuple).expect("checked hom");
            let image = hom.map_tuple(&decl.telescope, &tuple);
            let fiber = hom.target.carrier(SortId(s), &image).expect("checked target");
            let covered: BTreeSet<Elem> = component.iter().copied().collect();
            for uncovered in 0..fiber.len() {
                if !covered.contains(&uncovered) {
                    return Err(AnodyneWitness { sort: SortId(s), tuple, uncovered });
                }
            }
        }
    }
    Ok(())
}

/// One disagreement found by the invariance harness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceViolation {
    pub formula: String,
    pub element: ContextElement,
    pub source_value: bool,
    pub target_value: bool,
}

/// Outcome of an invariance sweep: how many (formula, element) pairs were
/// checked and every disagreement in input order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvarianceReport {
    pub checks: usize,
    pub violations: Vec<InvarianceViolation>,
}

impl InvarianceReport {
    pub fn agreed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the anodyne-invariance sweep: for each corpus formula and every
/// element of `M(Γ)`, evaluation in the source must agree with evaluation of
/// the image in the target. For an anodyne fibration this is a theorem, so
/// any violation indicates an implementation bug; for non-anodyne homs the
/// report documents genuine non-invariance.
pub fn invariance_suite(
    th: &Theory,
    hom: &ModelHom,
    corpus: &[(String, Context, Formula)],
    sample_cap: Option<usize>,
) -> InvarianceReport {
    let mut report = InvarianceReport::default();
    for (name, ctx, phi) in corpus {
        debug_assert!(crate::formulas::wf_formula(th, ctx, phi).is_ok(), "corpus formula {name}");
        let mut samples = hom.source.enumerate_context(ctx);
        if let Some(cap) = sample_cap {
            samples.truncate(cap);
        }
        for x in samples {
            let source_value = hom.source.eval_formula(phi, &x);
            let target_value = hom.target.eval_formula(phi, &hom.map_tuple(ctx, &x));
            report.checks += 1;
            if source_value != target_value {
                report.violations.push(InvarianceViolation {
                    formula: name.clone(),
                    element: x,
                    source_value,
                    target_value,
                });
            }
        }
    }
    report
}

/// Set-level Beck–Chevalley check over the generator square of one sort:
/// for subsets of `N(Γ.B)`, existential image then restriction along the
/// hom equals restriction then existential image, as computed subsets of
/// `M(Γ)`. Singletons suffice (equality for all singletons forces it for
/// all subsets), but the empty and full subsets are thrown in as well.
pub fn beck_chevalley_holds(th: &Theory, hom: &ModelHom, sort: SortId) -> bool {
    let decl = th.sort(sort);
    let generic: TypeExpr = TypeExpr {
        sort,
        args: (0..decl.telescope.len()).map(TermExpr::Var).collect(),
    };
    let extended: Context = decl.telescope.extend(&[generic]);
    let base_len = decl.telescope.len();

    let m_total = hom.source.enumerate_context(&extended);
    let n_total = hom.target.enumerate_context(&extended);
    let m_base = hom.source.enumerate_context(&decl.telescope);

    let mut subsets: Vec<BTreeSet<ContextElement>> = Vec::new();
    subsets.push(BTreeSet::new());
    subsets.push(n_total.iter().cloned().collect());
    for v in &n_total {
        subsets.push(BTreeSet::from([v.clone()]));
    }

    for p in &subsets {
        // restrict-then-∃: truncations of source elements whose image lies in P
        let lhs: BTreeSet<ContextElement> = m_total
            .iter()
            .filter(|w| p.contains(&hom.map_tuple(&extended, w)))
            .map(|w| w[..base_len].to_vec())
            .collect();
        // ∃-then-restrict: base elements whose image is a truncation of some element of P
        let truncated: BTreeSet<ContextElement> =
            p.iter().map(|v| v[..base_len].to_vec()).collect();
        let rhs: BTreeSet<ContextElement> = m_base
            .iter()
            .filter(|u| truncated.contains(&hom.map_tuple(&decl.telescope, u)))
            .cloned()
            .collect();
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Composition of homomorphisms (`second` after `first`).
pub fn compose_homs(th: &Theory, first: &ModelHom, second: &ModelHom) -> ModelHom {
    let mut out = ModelHom::new(first.source.clone(), second.target.clone(), th.sorts().len());
    for (s, decl) in th.sorts().iter().enumerate() {
        for tuple in first.source.enumerate_context(&decl.telescope) {
            let c1 = first.component(SortId(s), &tuple).expect("checked hom").clone();
            let mid_tuple = first.map_tuple(&decl.telescope, &tuple);
            let c2 = second.component(SortId(s), &mid_tuple).expect("checked hom");
            let composed: Vec<Elem> = c1.iter().map(|&e| c2[e]).collect();
            out.set_component(SortId(s), tuple, composed);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::corpus::*;
    use crate::cat::{to_model, Functor};
    use crate::kernel::elaborate_theory;
    use crate::theories;

    fn cat_eq() -> Theory {
        elaborate_theory(&theories::cat_eq()).unwrap()
    }

    #[test]
    fn identity_hom_checks_and_is_anodyne() {
        let th = cat_eq();
        let m = to_model(&th, &walking_arrow());
        let h = ModelHom::identity(&th, &m);
        h.check(&th).unwrap();
        assert!(is_anodyne_fibration(&th, &h).is_ok());
    }

    #[test]
    fn collapse_of_walking_iso_is_anodyne() {
        let th = cat_eq();
        let (_, collapse) = duplicate_object(&point(), 0);
        let h = collapse.to_hom(&th);
        h.check(&th).unwrap();
        assert!(is_anodyne_fibration(&th, &h).is_ok());
    }

    #[test]
    fn broken_identity_preservation_is_reported() {
        let th = cat_eq();
        let m = to_model(&th, &involution());
        let mut h = ModelHom::identity(&th, &m);
        // swap the identity with the involution: id is no longer preserved
        let hom_sort = th.sort_by_name("Hom").unwrap();
        h.set_component(hom_sort, vec![0, 0], vec![1, 0]);
        let err = h.check(&th).unwrap_err();
        assert!(matches!(err, HomViolation::Naturality { .. }), "{err}");
    }

    #[test]
    fn inclusion_of_point_into_iso_is_not_anodyne() {
        let th = cat_eq();
        let incl = full_inclusion(&walking_iso(), &[0], "pt_in_iso");
        let h = incl.to_hom(&th);
        h.check(&th).unwrap();
        let witness = is_anodyne_fibration(&th, &h).unwrap_err();
        assert_eq!(witness.sort, th.sort_by_name("Ob").unwrap());
        assert_eq!(witness.uncovered, 1);
    }

    #[test]
    fn trivial_fibrations_induce_anodyne_homs() {
        let th = cat_eq();
        for f in anodyne_corpus() {
            assert!(f.is_trivial_fibration(), "{}", f.name);
            let h = f.to_hom(&th);
            h.check(&th).unwrap();
            assert!(is_anodyne_fibration(&th, &h).is_ok(), "hom of {}", f.name);
        }
    }

    #[test]
    fn anodyne_closed_under_composition() {
        let th = cat_eq();
        let (doubled, collapse) = duplicate_object(&point(), 0);
        let (_, collapse2) = duplicate_object(&doubled, 0);
        let h1 = collapse2.to_hom(&th);
        let h2 = collapse.to_hom(&th);
        let composed = compose_homs(&th, &h1, &h2);
        composed.check(&th).unwrap();
        assert!(is_anodyne_fibration(&th, &composed).is_ok());
        // matches the hom of the composed functor
        let f = Functor::compose(&collapse2, &collapse);
        assert_eq!(composed, f.to_hom(&th));
    }

    #[test]
    fn invariance_suite_agrees_on_identity_and_collapse() {
        let th = cat_eq();
        let corpus = cat_formulas(&th);
        let m = to_model(&th, &walking_iso());
        let id_hom = ModelHom::identity(&th, &m);
        let report = invariance_suite(&th, &id_hom, &corpus, None);
        assert!(report.agreed());
        assert!(report.checks > 0);

        let (_, collapse) = duplicate_object(&point(), 0);
        let report = invariance_suite(&th, &collapse.to_hom(&th), &corpus, None);
        assert!(report.agreed());
    }

    #[test]
    fn non_anodyne_hom_shows_disagreement_on_existential() {
        // the inclusion of the empty model into the point disagrees on
        // "there exists an object", exactly because it is not anodyne
        let th = cat_eq();
        let empty = to_model(&th, &empty_category());
        let pt = to_model(&th, &point());
        let mut h = ModelHom::new(empty, pt, th.sorts().len());
        let ob = th.sort_by_name("Ob").unwrap();
        h.set_component(ob, vec![], vec![]);
        // every other sort has an empty source enumeration, hence no rows
        h.check(&th).unwrap();
        assert!(is_anodyne_fibration(&th, &h).is_err());

        let ob_ty = crate::kernel::TypeExpr { sort: ob, args: vec![] };
        let exists_object = crate::formulas::Formula::exists(
            vec![ob_ty],
            crate::formulas::Formula::Top,
        );
        let corpus = vec![("exists_object".to_owned(), Context::empty(), exists_object)];
        let report = invariance_suite(&th, &h, &corpus, None);
        assert_eq!(report.checks, 1);
        assert_eq!(report.violations.len(), 1);
        assert!(!report.violations[0].source_value && report.violations[0].target_value);
    }

    #[test]
    fn beck_chevalley_on_anodyne_corpus() {
        let th = cat_eq();
        for f in anodyne_corpus() {
            let h = f.to_hom(&th);
            for s in 0..th.sorts().len() {
                assert!(
                    beck_chevalley_holds(&th, &h, SortId(s)),
                    "Beck-Chevalley fails for {} at sort {}",
                    f.name,
                    th.sorts()[s].name
                );
            }
        }
    }

    #[test]
    fn beck_chevalley_fails_for_non_anodyne_hom() {
        let th = cat_eq();
        let incl = full_inclusion(&walking_iso(), &[0], "pt_in_iso");
        let h = incl.to_hom(&th);
        let ob = th.sort_by_name("Ob").unwrap();
        assert!(!beck_chevalley_holds(&th, &h, ob));
    }
}
