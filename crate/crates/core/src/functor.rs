//! Functors, natural transformations and set-valued functors between
//! finite categories.

use std::sync::Arc;

use crate::category::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::report::{Law, ValidationReport};

#[derive(Debug, Clone)]
pub struct Functor {
    name: String,
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl Functor {
    /// Packages the maps without checking them; see [`validate_functor`].
    pub fn from_maps(
        name: impl Into<String>,
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Functor {
        Functor {
            name: name.into(),
            source,
            target,
            obj_map,
            mor_map,
        }
    }

    pub fn new(
        name: impl Into<String>,
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Functor, ValidationReport> {
        let f = Functor::from_maps(name, source, target, obj_map, mor_map);
        validate_functor(&f).into_result(f)
    }

    pub fn identity(cat: &Arc<FinCategory>) -> Functor {
        Functor::from_maps(
            format!("Id_{}", cat.name()),
            cat.clone(),
            cat.clone(),
            cat.objects().collect(),
            cat.morphisms().collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Functor {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    #[inline]
    pub fn ob(&self, x: ObjId) -> ObjId {
        self.obj_map[x.index()]
    }

    #[inline]
    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f.index()]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Functor) -> Result<Functor> {
        if !self.target.same_structure(&next.source) {
            return Err(Error::Shape(format!(
                "cannot compose `{}` after `{}`: categories differ",
                next.name, self.name
            )));
        }
        Ok(Functor::from_maps(
            format!("{}.{}", next.name, self.name),
            self.source.clone(),
            next.target.clone(),
            self.obj_map.iter().map(|&x| next.ob(x)).collect(),
            self.mor_map.iter().map(|&f| next.mor(f)).collect(),
        ))
    }

    /// Same source, target and action (names of the functors are ignored).
    pub fn same_action(&self, other: &Functor) -> bool {
        self.source.same_structure(&other.source)
            && self.target.same_structure(&other.target)
            && self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
    }

    pub fn is_identity(&self) -> bool {
        self.source.same_structure(&self.target)
            && self.obj_map.iter().enumerate().all(|(i, x)| x.index() == i)
            && self.mor_map.iter().enumerate().all(|(i, f)| f.index() == i)
    }
}

/// Endpoint, identity and composition preservation.
pub fn validate_functor(functor: &Functor) -> ValidationReport {
    let mut report = ValidationReport::new(format!("functor `{}`", functor.name));
    let (src, tgt) = (&functor.source, &functor.target);
    if functor.obj_map.len() != src.num_objects() || functor.mor_map.len() != src.num_morphisms() {
        report.push(Law::FunctorShape, "object or morphism map is not total on the source");
        return report;
    }
    if functor.obj_map.iter().any(|x| x.index() >= tgt.num_objects())
        || functor.mor_map.iter().any(|f| f.index() >= tgt.num_morphisms())
    {
        report.push(Law::FunctorShape, "map refers to something outside the target category");
        return report;
    }
    let mut endpoints_ok = true;
    for f in src.morphisms() {
        let img = functor.mor(f);
        if tgt.dom(img) != functor.ob(src.dom(f)) || tgt.cod(img) != functor.ob(src.cod(f)) {
            endpoints_ok = false;
            report.push(
                Law::EndpointPreservation,
                format!("`{}` is sent to `{}` with the wrong endpoints", src.morphism_name(f), tgt.morphism_name(img)),
            );
        }
    }
    for x in src.objects() {
        if functor.mor(src.identity(x)) != tgt.identity(functor.ob(x)) {
            report.push(
                Law::IdentityPreservation,
                format!("identity of `{}` is not sent to an identity", src.object_name(x)),
            );
        }
    }
    if !endpoints_ok {
        return report;
    }
    for g in src.morphisms() {
        for &f in src.morphisms_into(src.dom(g)) {
            let lhs = functor.mor(src.comp(g, f));
            let rhs = tgt.comp(functor.mor(g), functor.mor(f));
            if lhs != rhs {
                report.push(
                    Law::CompositionPreservation,
                    format!(
                        "F({} . {}) = {} but F({}) . F({}) = {}",
                        src.morphism_name(g),
                        src.morphism_name(f),
                        tgt.morphism_name(lhs),
                        src.morphism_name(g),
                        src.morphism_name(f),
                        tgt.morphism_name(rhs)
                    ),
                );
            }
        }
    }
    report
}

/// A family of components `F(x) ⇒ G(x)` for parallel functors `F, G`.
#[derive(Debug, Clone)]
pub struct NatTransform {
    pub name: String,
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<MorId>,
}

impl NatTransform {
    pub fn identity(f: &Functor) -> NatTransform {
        NatTransform {
            name: format!("1_{}", f.name()),
            source: f.clone(),
            target: f.clone(),
            components: f.source().objects().map(|x| f.target().identity(f.ob(x))).collect(),
        }
    }
}

pub fn check_natural_transformation(t: &NatTransform, require_iso: bool) -> ValidationReport {
    let mut report = ValidationReport::new(format!("transformation `{}`", t.name));
    let (f, g) = (&t.source, &t.target);
    if !f.source().same_structure(g.source()) || !f.target().same_structure(g.target()) {
        report.push(Law::ComponentShape, "functors are not parallel");
        return report;
    }
    let (src, tgt) = (f.source(), f.target());
    if t.components.len() != src.num_objects() || t.components.iter().any(|c| c.index() >= tgt.num_morphisms()) {
        report.push(Law::ComponentShape, "component family is not indexed by the source objects");
        return report;
    }
    for x in src.objects() {
        let c = t.components[x.index()];
        if tgt.dom(c) != f.ob(x) || tgt.cod(c) != g.ob(x) {
            report.push(
                Law::ComponentShape,
                format!(
                    "component at `{}` is `{}`, not a morphism {} => {}",
                    src.object_name(x),
                    tgt.morphism_name(c),
                    tgt.object_name(f.ob(x)),
                    tgt.object_name(g.ob(x))
                ),
            );
        }
    }
    if !report.is_valid() {
        return report;
    }
    for m in src.morphisms() {
        let (x, y) = (src.dom(m), src.cod(m));
        let lhs = tgt.comp(t.components[y.index()], f.mor(m));
        let rhs = tgt.comp(g.mor(m), t.components[x.index()]);
        if lhs != rhs {
            report.push(
                Law::Naturality,
                format!("naturality square at `{}` does not commute", src.morphism_name(m)),
            );
        }
    }
    if require_iso {
        for x in src.objects() {
            if !tgt.is_isomorphism(t.components[x.index()]) {
                report.push(
                    Law::NotIsomorphism,
                    format!("component at `{}` has no inverse", src.object_name(x)),
                );
            }
        }
    }
    report
}

/// A functor into finite sets: each object goes to `{0, .., size-1}` and each
/// morphism to a function table.
#[derive(Debug, Clone)]
pub struct SetFunctor {
    pub name: String,
    pub source: Arc<FinCategory>,
    pub sizes: Vec<usize>,
    pub action: Vec<Vec<u32>>,
}

pub fn validate_set_functor(functor: &SetFunctor) -> ValidationReport {
    let mut report = ValidationReport::new(format!("set-valued functor `{}`", functor.name));
    let src = &functor.source;
    if functor.sizes.len() != src.num_objects() || functor.action.len() != src.num_morphisms() {
        report.push(Law::FunctorShape, "maps are not total on the source");
        return report;
    }
    for f in src.morphisms() {
        let (d, c) = (src.dom(f).index(), src.cod(f).index());
        let table = &functor.action[f.index()];
        if table.len() != functor.sizes[d] || table.iter().any(|&v| v as usize >= functor.sizes[c]) {
            report.push(
                Law::EndpointPreservation,
                format!("action of `{}` is not a function between the right sets", src.morphism_name(f)),
            );
        }
    }
    if !report.is_valid() {
        return report;
    }
    for x in src.objects() {
        let table = &functor.action[src.identity(x).index()];
        if table.iter().enumerate().any(|(i, &v)| v as usize != i) {
            report.push(
                Law::IdentityPreservation,
                format!("identity of `{}` acts non-trivially", src.object_name(x)),
            );
        }
    }
    for g in src.morphisms() {
        for &f in src.morphisms_into(src.dom(g)) {
            let gf = &functor.action[src.comp(g, f).index()];
            let (ft, gt) = (&functor.action[f.index()], &functor.action[g.index()]);
            if gf.iter().zip(ft).any(|(&lhs, &mid)| lhs != gt[mid as usize]) {
                report.push(
                    Law::CompositionPreservation,
                    format!(
                        "action of `{} . {}` is not the composite of the actions",
                        src.morphism_name(g),
                        src.morphism_name(f)
                    ),
                );
            }
        }
    }
    report
}

#[derive(Debug, Clone)]
pub struct SetNatTransform {
    pub name: String,
    pub source: SetFunctor,
    pub target: SetFunctor,
    pub components: Vec<Vec<u32>>,
}

pub fn check_set_natural_transformation(t: &SetNatTransform, require_iso: bool) -> ValidationReport {
    let mut report = ValidationReport::new(format!("transformation `{}`", t.name));
    let (f, g) = (&t.source, &t.target);
    if !f.source.same_structure(&g.source) {
        report.push(Law::ComponentShape, "set-valued functors are not parallel");
        return report;
    }
    let src = &f.source;
    if t.components.len() != src.num_objects() {
        report.push(Law::ComponentShape, "component family is not indexed by the source objects");
        return report;
    }
    for x in src.objects() {
        let c = &t.components[x.index()];
        if c.len() != f.sizes[x.index()] || c.iter().any(|&v| v as usize >= g.sizes[x.index()]) {
            report.push(
                Law::ComponentShape,
                format!("component at `{}` is not a function F(x) -> G(x)", src.object_name(x)),
            );
        }
    }
    if !report.is_valid() {
        return report;
    }
    for m in src.morphisms() {
        let (x, y) = (src.dom(m).index(), src.cod(m).index());
        let (fm, gm) = (&f.action[m.index()], &g.action[m.index()]);
        let (cx, cy) = (&t.components[x], &t.components[y]);
        if (0..f.sizes[x]).any(|e| cy[fm[e] as usize] != gm[cx[e] as usize]) {
            report.push(
                Law::Naturality,
                format!("naturality square at `{}` does not commute", src.morphism_name(m)),
            );
        }
    }
    if require_iso {
        for x in src.objects() {
            let c = &t.components[x.index()];
            let mut seen = vec![false; g.sizes[x.index()]];
            let injective = c.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true));
            if !injective || c.len() != g.sizes[x.index()] {
                report.push(
                    Law::NotIsomorphism,
                    format!("component at `{}` is not a bijection", src.object_name(x)),
                );
            }
        }
    }
    report
}
