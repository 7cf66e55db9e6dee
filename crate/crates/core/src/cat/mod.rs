//! Finite categories and the folk model structure: equivalences,
//! isofibrations, trivial fibrations by generator lifting, path objects,
//! homotopy of interpretations, and the two invariance theorems in
//! executable form over models of the category theory with equality sort.

pub mod corpus;

use std::collections::BTreeMap;

use crate::fibrations::ModelHom;
use crate::formulas::Formula;
use crate::kernel::{Context, Theory};
use crate::semantics::{ContextElement, Elem, FiniteModel};

/// An arrow, identified by hom-set and position: `f : objects[src] ->
/// objects[tgt]`, the `idx`-th arrow of that hom-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub idx: usize,
}

/// A finite category as explicit tables: objects, hom-sets, a composition
/// table and identity choices. Arrow names are unique across the category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    pub name: String,
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), Vec<String>>,
    /// `(x, y, z) -> [f][g]`: the composite of `f : x -> y` and `g : y -> z`
    /// (diagrammatic order), as an index into `hom(x, z)`.
    comp: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
    ids: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("{0}")]
    Malformed(String),
    #[error("unit law fails at arrow {0}")]
    UnitLaw(String),
    #[error("associativity fails at ({0}, {1}, {2})")]
    Associativity(String, String, String),
}

impl FinCategory {
    /// Builds and validates a category from tables. `homs` must be total
    /// over all object pairs, `comp` total over all composable triples.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), Vec<String>>,
        comp: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
        ids: Vec<usize>,
    ) -> Result<FinCategory, CategoryError> {
        let cat = FinCategory { name: name.into(), objects, homs, comp, ids };
        cat.validate()?;
        Ok(cat)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, src: usize, tgt: usize) -> &[String] {
        self.homs.get(&(src, tgt)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn id_arrow(&self, x: usize) -> Arrow {
        Arrow { src: x, tgt: x, idx: self.ids[x] }
    }

    /// Composite of `f : x -> y` then `g : y -> z`.
    pub fn compose(&self, f: Arrow, g: Arrow) -> Arrow {
        assert_eq!(f.tgt, g.src, "arrows not composable");
        let table = &self.comp[&(f.src, f.tgt, g.tgt)];
        Arrow { src: f.src, tgt: g.tgt, idx: table[f.idx][g.idx] }
    }

    pub fn arrow_name(&self, a: Arrow) -> &str {
        &self.hom(a.src, a.tgt)[a.idx]
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for x in 0..self.objects.len() {
            for y in 0..self.objects.len() {
                for idx in 0..self.hom(x, y).len() {
                    out.push(Arrow { src: x, tgt: y, idx });
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let n = self.objects.len();
        if self.ids.len() != n {
            return Err(CategoryError::Malformed("one identity per object required".into()));
        }
        for (i, obj) in self.objects.iter().enumerate() {
            if self.objects[..i].contains(obj) {
                return Err(CategoryError::Malformed(format!(
                    "object name `{obj}` is not unique"
                )));
            }
        }
        let mut names: Vec<&str> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let hom = self
                    .homs
                    .get(&(x, y))
                    .ok_or_else(|| CategoryError::Malformed(format!("missing hom({x}, {y})")))?;
                for name in hom {
                    if names.contains(&name.as_str()) {
                        return Err(CategoryError::Malformed(format!(
                            "arrow name `{name}` is not unique"
                        )));
                    }
                    names.push(name);
                }
            }
        }
        for x in 0..n {
            if self.ids[x] >= self.hom(x, x).len() {
                return Err(CategoryError::Malformed(format!(
                    "identity of {} out of range",
                    self.objects[x]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let table = self.comp.get(&(x, y, z)).ok_or_else(|| {
                        CategoryError::Malformed(format!("missing comp({x}, {y}, {z})"))
                    })?;
                    if table.len() != self.hom(x, y).len()
                        || table.iter().any(|row| row.len() != self.hom(y, z).len())
                    {
                        return Err(CategoryError::Malformed(format!(
                            "comp({x}, {y}, {z}) has the wrong shape"
                        )));
                    }
                    if table.iter().flatten().any(|&k| k >= self.hom(x, z).len()) {
                        return Err(CategoryError::Malformed(format!(
                            "comp({x}, {y}, {z}) output out of range"
                        )));
                    }
                }
            }
        }
        for a in self.arrows() {
            let pre = self.compose(self.id_arrow(a.src), a);
            let post = self.compose(a, self.id_arrow(a.tgt));
            if pre != a || post != a {
                return Err(CategoryError::UnitLaw(self.arrow_name(a).to_owned()));
            }
        }
        for f in self.arrows() {
            for g in self.arrows() {
                if f.tgt != g.src {
                    continue;
                }
                for h in self.arrows() {
                    if g.tgt != h.src {
                        continue;
                    }
                    let left = self.compose(self.compose(f, g), h);
                    let right = self.compose(f, self.compose(g, h));
                    if left != right {
                        return Err(CategoryError::Associativity(
                            self.arrow_name(f).to_owned(),
                            self.arrow_name(g).to_owned(),
                            self.arrow_name(h).to_owned(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `f` is invertible, returning the inverse.
    pub fn inverse(&self, f: Arrow) -> Option<Arrow> {
        for idx in 0..self.hom(f.tgt, f.src).len() {
            let g = Arrow { src: f.tgt, tgt: f.src, idx };
            if self.compose(f, g) == self.id_arrow(f.src)
                && self.compose(g, f) == self.id_arrow(f.tgt)
            {
                return Some(g);
            }
        }
        None
    }

    /// All isomorphisms, in canonical arrow order.
    pub fn isos(&self) -> Vec<Arrow> {
        self.arrows().into_iter().filter(|&a| self.inverse(a).is_some()).collect()
    }

    pub fn isomorphic_objects(&self, x: usize, y: usize) -> bool {
        self.isos().iter().any(|a| a.src == x && a.tgt == y)
    }
}

/// A functor between finite categories, as explicit object and arrow maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub name: String,
    pub source: FinCategory,
    pub target: FinCategory,
    ob_map: Vec<usize>,
    /// `(x, y) ->` image index in `hom(F x, F y)` per arrow of `hom(x, y)`.
    arrow_map: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Functor {
    pub fn new(
        name: impl Into<String>,
        source: FinCategory,
        target: FinCategory,
        ob_map: Vec<usize>,
        arrow_map: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Functor, CategoryError> {
        let f = Functor { name: name.into(), source, target, ob_map, arrow_map };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(cat: &FinCategory) -> Functor {
        let ob_map = (0..cat.object_count()).collect();
        let mut arrow_map = BTreeMap::new();
        for x in 0..cat.object_count() {
            for y in 0..cat.object_count() {
                arrow_map.insert((x, y), (0..cat.hom(x, y).len()).collect());
            }
        }
        Functor {
            name: format!("id_{}", cat.name),
            source: cat.clone(),
            target: cat.clone(),
            ob_map,
            arrow_map,
        }
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.ob_map[x]
    }

    pub fn on_arrow(&self, a: Arrow) -> Arrow {
        Arrow {
            src: self.ob_map[a.src],
            tgt: self.ob_map[a.tgt],
            idx: self.arrow_map[&(a.src, a.tgt)][a.idx],
        }
    }

    /// Composition: `second` after `first`.
    pub fn compose(first: &Functor, second: &Functor) -> Functor {
        assert_eq!(first.target, second.source, "functors not composable");
        let ob_map = first.ob_map.iter().map(|&x| second.ob_map[x]).collect();
        let mut arrow_map = BTreeMap::new();
        for x in 0..first.source.object_count() {
            for y in 0..first.source.object_count() {
                let mid = (first.ob_map[x], first.ob_map[y]);
                let map: Vec<usize> = first.arrow_map[&(x, y)]
                    .iter()
                    .map(|&i| second.arrow_map[&mid][i])
                    .collect();
                arrow_map.insert((x, y), map);
            }
        }
        Functor {
            name: format!("{};{}", first.name, second.name),
            source: first.source.clone(),
            target: second.target.clone(),
            ob_map,
            arrow_map,
        }
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let n = self.source.object_count();
        if self.ob_map.len() != n || self.ob_map.iter().any(|&x| x >= self.target.object_count()) {
            return Err(CategoryError::Malformed(format!("functor {}: bad object map", self.name)));
        }
        for x in 0..n {
            for y in 0..n {
                let map = self.arrow_map.get(&(x, y)).ok_or_else(|| {
                    CategoryError::Malformed(format!("functor {}: missing arrow map ({x}, {y})", self.name))
                })?;
                let expected = self.source.hom(x, y).len();
                let image_len = self.target.hom(self.ob_map[x], self.ob_map[y]).len();
                if map.len() != expected || map.iter().any(|&i| i >= image_len) {
                    return Err(CategoryError::Malformed(format!(
                        "functor {}: bad arrow map at ({x}, {y})",
                        self.name
                    )));
                }
            }
        }
        for x in 0..n {
            if self.on_arrow(self.source.id_arrow(x)) != self.target.id_arrow(self.ob_map[x]) {
                return Err(CategoryError::Malformed(format!(
                    "functor {}: identities not preserved at {}",
                    self.name, self.source.objects[x]
                )));
            }
        }
        for f in self.source.arrows() {
            for g in self.source.arrows() {
                if f.tgt != g.src {
                    continue;
                }
                let lhs = self.on_arrow(self.source.compose(f, g));
                let rhs = self.target.compose(self.on_arrow(f), self.on_arrow(g));
                if lhs != rhs {
                    return Err(CategoryError::Malformed(format!(
                        "functor {}: composition not preserved",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full, faithful, and essentially surjective, each by enumeration.
    pub fn is_equivalence(&self) -> bool {
        self.is_full() && self.is_faithful() && self.is_essentially_surjective()
    }

    pub fn is_full(&self) -> bool {
        (0..self.source.object_count()).all(|x| {
            (0..self.source.object_count()).all(|y| {
                let image: Vec<usize> = self.arrow_map[&(x, y)].clone();
                (0..self.target.hom(self.ob_map[x], self.ob_map[y]).len())
                    .all(|i| image.contains(&i))
            })
        })
    }

    pub fn is_faithful(&self) -> bool {
        (0..self.source.object_count()).all(|x| {
            (0..self.source.object_count()).all(|y| {
                let map = &self.arrow_map[&(x, y)];
                map.iter().enumerate().all(|(i, fi)| map[..i].iter().all(|fj| fj != fi))
            })
        })
    }

    pub fn is_essentially_surjective(&self) -> bool {
        (0..self.target.object_count()).all(|d| {
            (0..self.source.object_count())
                .any(|c| self.target.isomorphic_objects(self.ob_map[c], d))
        })
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        (0..self.target.object_count()).all(|d| self.ob_map.contains(&d))
    }

    /// Isofibration: every isomorphism out of an image object lifts to an
    /// isomorphism in the source mapping onto it.
    pub fn is_isofibration(&self) -> bool {
        for x in 0..self.source.object_count() {
            for phi in self.target.isos() {
                if phi.src != self.ob_map[x] {
                    continue;
                }
                let lifted = self
                    .source
                    .isos()
                    .into_iter()
                    .any(|psi| psi.src == x && self.on_arrow(psi) == phi);
                if !lifted {
                    return false;
                }
            }
        }
        true
    }

    /// Trivial fibration by right lifting against the three generating
    /// cofibrations directly: lifting squares are enumerated for the empty
    /// inclusion into the point (objects), the boundary inclusion into the
    /// arrow (hom surjectivity), and the parallel-pair quotient onto the
    /// arrow (hom injectivity).
    pub fn is_trivial_fibration(&self) -> bool {
        self.lifts_against_point() && self.lifts_against_boundary() && self.lifts_against_parallel()
    }

    /// Squares against `0 -> 1`: a map `1 -> target` is an object, a lift is
    /// a preimage object.
    fn lifts_against_point(&self) -> bool {
        (0..self.target.object_count()).all(|d| self.ob_map.contains(&d))
    }

    /// Squares against `{0, 1} -> 2`: given `a, b` in the source and an
    /// arrow `g : F a -> F b`, a lift is an arrow `f : a -> b` with `F f = g`.
    fn lifts_against_boundary(&self) -> bool {
        for a in 0..self.source.object_count() {
            for b in 0..self.source.object_count() {
                for gi in 0..self.target.hom(self.ob_map[a], self.ob_map[b]).len() {
                    let g = Arrow { src: self.ob_map[a], tgt: self.ob_map[b], idx: gi };
                    let lifted = (0..self.source.hom(a, b).len())
                        .any(|fi| self.on_arrow(Arrow { src: a, tgt: b, idx: fi }) == g);
                    if !lifted {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Squares against `P -> 2`: a parallel pair `f, g` in the source with
    /// `F f = F g` lifts only via an arrow equal to both, so `f = g`.
    fn lifts_against_parallel(&self) -> bool {
        for a in 0..self.source.object_count() {
            for b in 0..self.source.object_count() {
                let map = &self.arrow_map[&(a, b)];
                for i in 0..map.len() {
                    for j in 0..i {
                        if map[i] == map[j] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The induced homomorphism of models of the category theory.
    pub fn to_hom(&self, th: &Theory) -> ModelHom {
        let source = to_model(th, &self.source);
        let target = to_model(th, &self.target);
        let mut hom = ModelHom::new(source, target, th.sorts().len());
        let ob = th.sort_by_name("Ob").expect("category theory has Ob");
        let hom_sort = th.sort_by_name("Hom").expect("category theory has Hom");
        hom.set_component(ob, vec![], self.ob_map.clone());
        for x in 0..self.source.object_count() {
            for y in 0..self.source.object_count() {
                hom.set_component(hom_sort, vec![x, y], self.arrow_map[&(x, y)].clone());
            }
        }
        if let Some(eq_sort) = th.sort_by_name("Eq") {
            for x in 0..self.source.object_count() {
                for y in 0..self.source.object_count() {
                    let n = self.source.hom(x, y).len();
                    for f in 0..n {
                        for g in 0..n {
                            // singleton fiber maps to the singleton fiber of
                            // the (equal) image arrows; empty fibers carry
                            // the empty map
                            let map = if f == g { vec![0] } else { vec![] };
                            hom.set_component(eq_sort, vec![x, y, f, g], map);
                        }
                    }
                }
            }
        }
        hom
    }
}

/// Encodes a finite category as a model: `Ob` and `Hom` carriers are the
/// object and arrow names, `Eq(f, g)` is a singleton exactly when `f = g`,
/// and the operation tables tabulate composition, identities and
/// reflexivity. Works for the plain category theory too (no `Eq` sort).
pub fn to_model(th: &Theory, cat: &FinCategory) -> FiniteModel {
    let mut m = FiniteModel::new(th);
    let ob = th.sort_by_name("Ob").expect("category theory has Ob");
    let hom_sort = th.sort_by_name("Hom").expect("category theory has Hom");
    m.set_carrier(ob, vec![], cat.objects.to_vec());
    for x in 0..cat.object_count() {
        for y in 0..cat.object_count() {
            m.set_carrier(hom_sort, vec![x, y], cat.hom(x, y).to_vec());
        }
    }
    let comp = th.op_by_name("comp").expect("category theory has comp");
    let id = th.op_by_name("id").expect("category theory has id");
    for x in 0..cat.object_count() {
        m.set_op(id, vec![x], cat.ids[x]);
        for y in 0..cat.object_count() {
            for z in 0..cat.object_count() {
                for f in 0..cat.hom(x, y).len() {
                    for g in 0..cat.hom(y, z).len() {
                        let out = cat.compose(
                            Arrow { src: x, tgt: y, idx: f },
                            Arrow { src: y, tgt: z, idx: g },
                        );
                        m.set_op(comp, vec![x, y, z, f, g], out.idx);
                    }
                }
            }
        }
    }
    if let (Some(eq_sort), Some(refl)) = (th.sort_by_name("Eq"), th.op_by_name("refl")) {
        for x in 0..cat.object_count() {
            for y in 0..cat.object_count() {
                let n = cat.hom(x, y).len();
                for f in 0..n {
                    m.set_op(refl, vec![x, y, f], 0);
                    for g in 0..n {
                        let carrier = if f == g { vec!["r".to_owned()] } else { vec![] };
                        m.set_carrier(eq_sort, vec![x, y, f, g], carrier);
                    }
                }
            }
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FromModelError {
    #[error("Eq carrier at {0:?} violates the singleton-iff-equal pattern")]
    EqPattern(ContextElement),
    #[error("model is not a category: {0}")]
    NotACategory(String),
}

/// Decodes a checked model of the category theory back into a finite
/// category. Rejects models whose `Eq` tables violate the
/// singleton-iff-equal pattern (the reflection axiom forces `f = g`
/// whenever `Eq(f, g)` is inhabited, and proofs are unique).
pub fn from_model(th: &Theory, m: &FiniteModel) -> Result<FinCategory, FromModelError> {
    let ob = th.sort_by_name("Ob").expect("category theory has Ob");
    let hom_sort = th.sort_by_name("Hom").expect("category theory has Hom");
    let comp = th.op_by_name("comp").expect("category theory has comp");
    let id = th.op_by_name("id").expect("category theory has id");
    let objects = m.carrier(ob, &[]).expect("checked model").clone();
    let n = objects.len();
    let mut homs = BTreeMap::new();
    let mut seen_names = std::collections::BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            // element names are only unique per carrier in a model; arrow
            // names must be unique across the category, so mangle repeats
            let mut names = m.carrier(hom_sort, &[x, y]).expect("checked model").clone();
            for (i, name) in names.iter_mut().enumerate() {
                if !seen_names.insert(name.clone()) {
                    *name = format!("{name}@{x}_{y}_{i}");
                    seen_names.insert(name.clone());
                }
            }
            homs.insert((x, y), names);
        }
    }
    if let Some(eq_sort) = th.sort_by_name("Eq") {
        for x in 0..n {
            for y in 0..n {
                let hom_len = homs[&(x, y)].len();
                for f in 0..hom_len {
                    for g in 0..hom_len {
                        let carrier =
                            m.carrier(eq_sort, &[x, y, f, g]).expect("checked model").len();
                        let expected = if f == g { 1 } else { 0 };
                        if carrier != expected {
                            return Err(FromModelError::EqPattern(vec![x, y, f, g]));
                        }
                    }
                }
            }
        }
    }
    let mut comp_tables = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut table = Vec::new();
                for f in 0..homs[&(x, y)].len() {
                    let mut row = Vec::new();
                    for g in 0..homs[&(y, z)].len() {
                        row.push(m.op_entry(comp, &[x, y, z, f, g]).expect("checked model"));
                    }
                    table.push(row);
                }
                comp_tables.insert((x, y, z), table);
            }
        }
    }
    let ids: Vec<usize> = (0..n).map(|x| m.op_entry(id, &[x]).expect("checked model")).collect();
    FinCategory::new("from_model", objects, homs, comp_tables, ids)
        .map_err(|e| FromModelError::NotACategory(e.to_string()))
}

/// The path object `X^J`: objects are the isomorphisms of `X`, arrows are
/// commuting squares, and the two projections are trivial fibrations.
pub struct PathObject {
    pub category: FinCategory,
    pub p1: Functor,
    pub p2: Functor,
}

pub fn path_object(cat: &FinCategory) -> PathObject {
    let isos = cat.isos();
    let objects: Vec<String> = isos.iter().map(|&a| format!("p_{}", cat.arrow_name(a))).collect();
    let mut homs = BTreeMap::new();
    // arrows (u, v) : f -> f' with u : src f -> src f', v : tgt f -> tgt f',
    // u ; f' = f ; v
    let mut square_arrows: BTreeMap<(usize, usize), Vec<(Arrow, Arrow)>> = BTreeMap::new();
    for (i, &f) in isos.iter().enumerate() {
        for (j, &f2) in isos.iter().enumerate() {
            let mut names = Vec::new();
            let mut squares = Vec::new();
            for ui in 0..cat.hom(f.src, f2.src).len() {
                let u = Arrow { src: f.src, tgt: f2.src, idx: ui };
                for vi in 0..cat.hom(f.tgt, f2.tgt).len() {
                    let v = Arrow { src: f.tgt, tgt: f2.tgt, idx: vi };
                    if cat.compose(u, f2) == cat.compose(f, v) {
                        names.push(format!("{}_{}", cat.arrow_name(u), cat.arrow_name(v)));
                        squares.push((u, v));
                    }
                }
            }
            homs.insert((i, j), names);
            square_arrows.insert((i, j), squares);
        }
    }
    // names must be unique across the whole category
    let mut seen = std::collections::BTreeSet::new();
    for ((i, j), names) in homs.iter_mut() {
        for (k, name) in names.iter_mut().enumerate() {
            if !seen.insert(name.clone()) {
                *name = format!("{name}@{i}_{j}_{k}");
                seen.insert(name.clone());
            }
        }
    }
    let mut comp = BTreeMap::new();
    for i in 0..isos.len() {
        for j in 0..isos.len() {
            for k in 0..isos.len() {
                let ab = &square_arrows[&(i, j)];
                let bc = &square_arrows[&(j, k)];
                let ac = &square_arrows[&(i, k)];
                let mut table = Vec::new();
                for &(u1, v1) in ab {
                    let mut row = Vec::new();
                    for &(u2, v2) in bc {
                        let composed = (cat.compose(u1, u2), cat.compose(v1, v2));
                        let pos = ac
                            .iter()
                            .position(|&s| s == composed)
                            .expect("composite square commutes");
                        row.push(pos);
                    }
                    table.push(row);
                }
                comp.insert((i, j, k), table);
            }
        }
    }
    let ids: Vec<usize> = isos
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            square_arrows[&(i, i)]
                .iter()
                .position(|&(u, v)| u == cat.id_arrow(f.src) && v == cat.id_arrow(f.tgt))
                .expect("identity square exists")
        })
        .collect();
    let category = FinCategory::new(format!("path({})", cat.name), objects, homs, comp, ids)
        .expect("path object is a category");

    let project = |pick_src: bool| -> Functor {
        let ob_map: Vec<usize> =
            isos.iter().map(|&f| if pick_src { f.src } else { f.tgt }).collect();
        let mut arrow_map = BTreeMap::new();
        for i in 0..isos.len() {
            for j in 0..isos.len() {
                let map: Vec<usize> = square_arrows[&(i, j)]
                    .iter()
                    .map(|&(u, v)| if pick_src { u.idx } else { v.idx })
                    .collect();
                arrow_map.insert((i, j), map);
            }
        }
        Functor::new(
            format!("p{}({})", if pick_src { 1 } else { 2 }, cat.name),
            category.clone(),
            cat.clone(),
            ob_map,
            arrow_map,
        )
        .expect("path projection is a functor")
    };
    let p1 = project(true);
    let p2 = project(false);
    PathObject { category, p1, p2 }
}

/// Whether two interpretations of `Γ` in the model of `X` are homotopic:
/// some element of `PX(Γ)` projects to them under the two path projections.
pub fn are_homotopic(
    th: &Theory,
    cat: &FinCategory,
    gamma: &Context,
    x1: &[Elem],
    x2: &[Elem],
) -> bool {
    let path = path_object(cat);
    let pm = to_model(th, &path.category);
    let h1 = path.p1.to_hom(th);
    let h2 = path.p2.to_hom(th);
    pm.enumerate_context(gamma)
        .iter()
        .any(|h| h1.map_tuple(gamma, h) == x1 && h2.map_tuple(gamma, h) == x2)
}

/// Report of one invariance check: the two evaluations and whether they
/// agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub left: bool,
    pub right: bool,
}

impl InvarianceCheck {
    pub fn agree(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PreconditionUnmet {
    #[error("interpretations are not homotopic")]
    NotHomotopic,
    #[error("functor is not an equivalence")]
    NotEquivalence,
}

/// First invariance theorem, instantiated: homotopic interpretations
/// satisfy the same formulas. Any disagreement is an implementation bug.
pub fn invariance1_check(
    th: &Theory,
    cat: &FinCategory,
    gamma: &Context,
    phi: &Formula,
    x1: &[Elem],
    x2: &[Elem],
) -> Result<InvarianceCheck, PreconditionUnmet> {
    if !are_homotopic(th, cat, gamma, x1, x2) {
        return Err(PreconditionUnmet::NotHomotopic);
    }
    let m = to_model(th, cat);
    Ok(InvarianceCheck { left: m.eval_formula(phi, x1), right: m.eval_formula(phi, x2) })
}

/// Second invariance theorem, instantiated: an equivalence of categories
/// preserves and reflects satisfaction.
pub fn invariance2_check(
    th: &Theory,
    f: &Functor,
    gamma: &Context,
    phi: &Formula,
    x: &[Elem],
) -> Result<InvarianceCheck, PreconditionUnmet> {
    if !f.is_equivalence() {
        return Err(PreconditionUnmet::NotEquivalence);
    }
    let hom = f.to_hom(th);
    Ok(InvarianceCheck {
        left: hom.source.eval_formula(phi, x),
        right: hom.target.eval_formula(phi, &hom.map_tuple(gamma, x)),
    })
}

#[cfg(test)]
mod tests {
    use super::corpus::*;
    use super::*;
    use crate::kernel::{elaborate_theory, TypeExpr};
    use crate::theories;

    fn cat_eq() -> Theory {
        elaborate_theory(&theories::cat_eq()).unwrap()
    }

    #[test]
    fn terminal_category_round_trips() {
        let th = cat_eq();
        let m = to_model(&th, &point());
        m.check(&th).unwrap();
        assert_eq!(m.carrier(th.sort_by_name("Ob").unwrap(), &[]).unwrap().len(), 1);
        assert_eq!(m.carrier(th.sort_by_name("Hom").unwrap(), &[0, 0]).unwrap().len(), 1);
        let back = from_model(&th, &m).unwrap();
        assert_eq!(back.objects(), point().objects());
    }

    #[test]
    fn walking_arrow_round_trips() {
        let th = cat_eq();
        let cat = walking_arrow();
        let back = from_model(&th, &to_model(&th, &cat)).unwrap();
        assert_eq!(back.objects(), cat.objects());
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(back.hom(x, y), cat.hom(x, y));
            }
        }
        assert_eq!(back.id_arrow(0), cat.id_arrow(0));
    }

    #[test]
    fn inhabited_eq_between_distinct_arrows_is_rejected() {
        let th = cat_eq();
        let mut m = to_model(&th, &parallel_pair());
        let eq = th.sort_by_name("Eq").unwrap();
        // claim f = g
        m.set_carrier(eq, vec![0, 1, 0, 1], vec!["bogus".into()]);
        assert!(matches!(from_model(&th, &m), Err(FromModelError::EqPattern(_))));
        // and indeed it is not even a model: the reflection axiom fails
        assert!(m.check(&th).is_err());
    }

    #[test]
    fn duplicate_object_names_are_rejected() {
        let mut homs = BTreeMap::new();
        for x in 0..2 {
            for y in 0..2 {
                homs.insert((x, y), if x == y { vec![format!("id{x}")] } else { vec![] });
            }
        }
        let mut comp = BTreeMap::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let rows = vec![vec![0; homs[&(y, z)].len()]; homs[&(x, y)].len()];
                    comp.insert((x, y, z), rows);
                }
            }
        }
        let err = FinCategory::new(
            "dup",
            vec!["a".into(), "a".into()],
            homs,
            comp,
            vec![0, 0],
        )
        .unwrap_err();
        assert!(err.to_string().contains("not unique"), "{err}");
    }

    #[test]
    fn equivalence_examples() {
        let iso = walking_iso();
        assert!(Functor::identity(&iso).is_equivalence());
        let (_, collapse) = duplicate_object(&point(), 0);
        assert!(collapse.is_equivalence());
        let endpoint = full_inclusion(&walking_arrow(), &[1], "endpoint");
        assert!(!endpoint.is_equivalence());
        assert!(endpoint.is_full() && endpoint.is_faithful());
        assert!(!endpoint.is_essentially_surjective());
    }

    #[test]
    fn isofibration_and_trivial_fibration_examples() {
        let point_cat = point();
        let idp = Functor::identity(&point_cat);
        assert!(idp.is_isofibration() && idp.is_trivial_fibration());

        // collapse of the walking iso onto the point: trivial fibration
        let (doubled, collapse) = duplicate_object(&point_cat, 0);
        assert_eq!(doubled.object_count(), 2);
        assert!(collapse.is_trivial_fibration());
        assert!(collapse.is_isofibration());

        // projection of the parallel pair onto the point: fails the
        // parallel-pair lifting (not faithful), but is an isofibration
        let pp = parallel_pair();
        let to_point = functor_by_names(
            "pp_to_point",
            &pp,
            &point_cat,
            &[("a", "t"), ("b", "t")],
            &[("f", "idt"), ("g", "idt")],
        );
        assert!(to_point.is_isofibration());
        assert!(!to_point.is_trivial_fibration());
        assert!(to_point.lifts_against_point());
        // the two parallel arrows collapse: the w-square has no lift
        assert!(!to_point.lifts_against_parallel());

        // inclusion of an endpoint into the walking iso: not an isofibration
        // (the iso out of the image does not lift)
        let incl = full_inclusion(&walking_iso(), &[0], "pt_in_iso");
        assert!(!incl.is_isofibration());
        assert!(!incl.is_trivial_fibration());
        assert!(incl.is_equivalence());
    }

    #[test]
    fn trivial_fibration_matches_surjective_full_faithful() {
        for f in anodyne_corpus() {
            assert_eq!(
                f.is_trivial_fibration(),
                f.is_surjective_on_objects() && f.is_full() && f.is_faithful(),
                "functor {}",
                f.name
            );
            assert!(f.is_trivial_fibration(), "corpus functor {} must be anodyne", f.name);
        }
        // and a functor that is an equivalence but not surjective on objects
        let incl = full_inclusion(&walking_iso(), &[0], "pt_in_iso");
        assert!(!incl.is_trivial_fibration());
    }

    #[test]
    fn path_object_of_discrete_category_is_discrete() {
        let d = discrete(3);
        let path = path_object(&d);
        assert_eq!(path.category.object_count(), 3);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(path.category.hom(x, y).len(), usize::from(x == y));
            }
        }
    }

    #[test]
    fn path_object_of_walking_iso_has_four_objects() {
        let path = path_object(&walking_iso());
        assert_eq!(path.category.object_count(), 4);
    }

    #[test]
    fn path_projections_are_trivial_fibrations() {
        for cat in [walking_arrow(), walking_iso(), parallel_pair(), chain3(), involution()] {
            let path = path_object(&cat);
            assert!(path.p1.is_trivial_fibration(), "p1 of path({})", cat.name);
            assert!(path.p2.is_trivial_fibration(), "p2 of path({})", cat.name);
        }
    }

    #[test]
    fn homotopy_examples() {
        let th = cat_eq();
        let ob = TypeExpr { sort: th.sort_by_name("Ob").unwrap(), args: vec![] };
        let gamma = Context::from_entries(vec![ob]);
        // equal interpretations are homotopic via the identity iso
        assert!(are_homotopic(&th, &walking_arrow(), &gamma, &[0], &[0]));
        // the two objects of the walking iso are homotopic
        assert!(are_homotopic(&th, &walking_iso(), &gamma, &[0], &[1]));
        // the two objects of the walking arrow are not
        assert!(!are_homotopic(&th, &walking_arrow(), &gamma, &[0], &[1]));
    }

    #[test]
    fn invariance1_examples() {
        let th = cat_eq();
        let corpus = cat_formulas(&th);
        let (_, gamma, is_terminal) =
            corpus.iter().find(|(n, _, _)| n == "is_terminal").unwrap().clone();
        let iso = walking_iso();
        let check = invariance1_check(&th, &iso, &gamma, &is_terminal, &[0], &[1]).unwrap();
        assert!(check.left && check.right && check.agree());
        // precondition: non-homotopic interpretations are refused
        let arrow = walking_arrow();
        assert_eq!(
            invariance1_check(&th, &arrow, &gamma, &is_terminal, &[0], &[1]),
            Err(PreconditionUnmet::NotHomotopic)
        );
    }

    #[test]
    fn epi_agreement_across_isomorphic_arrows() {
        // in the path category of X, isomorphic arrows of X interpret the
        // arrow context; epi-ness transfers along the homotopy
        let th = cat_eq();
        let corpus = cat_formulas(&th);
        let (_, gamma, is_epi) = corpus.iter().find(|(n, _, _)| n == "is_epi").unwrap().clone();
        let iso = walking_iso();
        let m = to_model(&th, &iso);
        for pair in homotopic_pairs(&th, &iso, &gamma) {
            let check = invariance1_check(&th, &iso, &gamma, &is_epi, &pair.0, &pair.1).unwrap();
            assert!(check.agree(), "disagree at {pair:?}");
        }
        // and in the walking iso every arrow is in fact epi
        for x in m.enumerate_context(&gamma) {
            assert!(m.eval_formula(&is_epi, &x));
        }
    }

    #[test]
    fn invariance2_examples() {
        let th = cat_eq();
        let corpus = cat_formulas(&th);
        let (_, gamma, is_terminal) =
            corpus.iter().find(|(n, _, _)| n == "is_terminal").unwrap().clone();
        let iso = walking_iso();
        let id = Functor::identity(&iso);
        for x in to_model(&th, &iso).enumerate_context(&gamma) {
            let check = invariance2_check(&th, &id, &gamma, &is_terminal, &x).unwrap();
            assert!(check.agree());
        }
        // a non-equivalence is refused
        let endpoint = full_inclusion(&walking_arrow(), &[0], "src_endpoint");
        assert_eq!(
            invariance2_check(&th, &endpoint, &gamma, &is_terminal, &[0]),
            Err(PreconditionUnmet::NotEquivalence)
        );
    }
}
