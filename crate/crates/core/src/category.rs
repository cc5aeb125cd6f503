//! Finite categories stored as explicit tables.
//!
//! A category goes through three stages: a [`CategoryBuilder`] (name-keyed,
//! sparse, used by parsers and hand-written examples), a [`RawCategory`]
//! (dense tables that may still break the axioms) and a [`FinCategory`]
//! (validated, immutable). Only `FinCategory` is accepted downstream.
//!
//! Composition is written `compose(g, f)` and means "`f` first, then `g`";
//! it is defined exactly when `cod(f) = dom(g)`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Law, ValidationReport};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObjId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MorId(pub u32);

impl ObjId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphismDef {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// Name-keyed sparse description of a category.
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismDef>,
    identities: HashMap<ObjId, MorId>,
    compose: Vec<(MorId, MorId, MorId)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        ObjId(self.objects.len() as u32 - 1)
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, dom: ObjId, cod: ObjId) -> MorId {
        self.morphisms.push(MorphismDef {
            name: name.into(),
            dom,
            cod,
        });
        MorId(self.morphisms.len() as u32 - 1)
    }

    /// Adds a fresh morphism `id_<object>` and registers it as the identity.
    pub fn add_identity(&mut self, obj: ObjId) -> MorId {
        let name = format!("id_{}", self.objects.get(obj.index()).map_or("?", |s| s.as_str()));
        let id = self.add_morphism(name, obj, obj);
        self.identities.insert(obj, id);
        id
    }

    pub fn set_identity(&mut self, obj: ObjId, mor: MorId) {
        self.identities.insert(obj, mor);
    }

    pub fn identity(&self, obj: ObjId) -> Option<MorId> {
        self.identities.get(&obj).copied()
    }

    /// Records `compose(g, f) = h`. Later entries override earlier ones.
    pub fn set_compose(&mut self, g: MorId, f: MorId, h: MorId) {
        self.compose.push((g, f, h));
    }

    pub fn has_compose(&self, g: MorId, f: MorId) -> bool {
        self.compose.iter().any(|&(g2, f2, _)| g2 == g && f2 == f)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_defs(&self) -> &[MorphismDef] {
        &self.morphisms
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(|i| ObjId(i as u32))
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name).map(|i| MorId(i as u32))
    }

    /// Adds the composites `id ∘ f = f` and `f ∘ id = f` wherever they are
    /// not given explicitly.
    pub fn fill_identity_composites(&mut self) {
        let given: HashSet<(MorId, MorId)> = self.compose.iter().map(|&(g, f, _)| (g, f)).collect();
        let mut extra = Vec::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            let f = MorId(i as u32);
            if let Some(&idc) = self.identities.get(&m.cod) {
                if !given.contains(&(idc, f)) {
                    extra.push((idc, f, f));
                }
            }
            if let Some(&idd) = self.identities.get(&m.dom) {
                if !given.contains(&(f, idd)) && idd != f {
                    extra.push((f, idd, f));
                }
            }
        }
        // id ∘ id is produced twice by the loop above; keep one.
        let mut seen = given;
        for e in extra {
            if seen.insert((e.0, e.1)) {
                self.compose.push(e);
            }
        }
    }

    /// Structural checks (dangling ids, duplicates, non-composable entries)
    /// followed by conversion to dense tables.
    pub fn into_raw(self) -> Result<RawCategory, ValidationReport> {
        let mut report = ValidationReport::new(format!("category `{}`", self.name));
        check_duplicates(&mut report, "object", self.objects.iter());
        check_duplicates(&mut report, "morphism", self.morphisms.iter().map(|m| &m.name));
        let n = self.objects.len() as u32;
        let nm = self.morphisms.len() as u32;
        for m in &self.morphisms {
            if m.dom.0 >= n || m.cod.0 >= n {
                report.push(Law::DanglingReference, format!("morphism `{}` has an endpoint outside the object list", m.name));
            }
        }
        for (&o, &m) in &self.identities {
            if o.0 >= n || m.0 >= nm {
                report.push(Law::DanglingReference, format!("identity entry {o} -> {m} is out of range"));
            }
        }
        for &(g, f, h) in &self.compose {
            if g.0 >= nm || f.0 >= nm || h.0 >= nm {
                report.push(Law::DanglingReference, format!("composition entry ({g}, {f}) = {h} refers to an unknown morphism"));
                continue;
            }
            let (gd, fd) = (&self.morphisms[g.index()], &self.morphisms[f.index()]);
            if fd.cod != gd.dom {
                report.push(
                    Law::ExtraComposite,
                    format!("composition entry `{} . {}` given for a non-composable pair", gd.name, fd.name),
                );
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        let identities = (0..n)
            .map(|o| self.identities.get(&ObjId(o)).copied())
            .collect();
        let mut raw = RawCategory::new(self.name, self.objects, self.morphisms, identities);
        for (g, f, h) in self.compose {
            raw.set_compose(g, f, h);
        }
        Ok(raw)
    }

    pub fn build(self) -> Result<FinCategory, ValidationReport> {
        FinCategory::from_raw(self.into_raw()?)
    }
}

fn check_duplicates<'a>(report: &mut ValidationReport, kind: &str, names: impl Iterator<Item = &'a String>) {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            report.push(Law::DuplicateName, format!("{kind} name `{n}` is used twice"));
        }
    }
}

/// Dense hom-set layout shared by raw and validated categories.
#[derive(Debug, Clone)]
struct Layout {
    homs: Vec<Vec<MorId>>,
    local: Vec<u32>,
    into: Vec<Vec<MorId>>,
    out_of: Vec<Vec<MorId>>,
    comp_offset: Vec<usize>,
}

impl Layout {
    fn new(n: usize, morphisms: &[MorphismDef]) -> (Layout, usize) {
        let mut homs = vec![Vec::new(); n * n];
        let mut local = Vec::with_capacity(morphisms.len());
        let mut into = vec![Vec::new(); n];
        let mut out_of = vec![Vec::new(); n];
        for (i, m) in morphisms.iter().enumerate() {
            let slot = &mut homs[m.dom.index() * n + m.cod.index()];
            local.push(slot.len() as u32);
            slot.push(MorId(i as u32));
            into[m.cod.index()].push(MorId(i as u32));
            out_of[m.dom.index()].push(MorId(i as u32));
        }
        let mut comp_offset = vec![0usize; n * n * n];
        let mut total = 0usize;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    comp_offset[(a * n + b) * n + c] = total;
                    total += homs[a * n + b].len() * homs[b * n + c].len();
                }
            }
        }
        (
            Layout {
                homs,
                local,
                into,
                out_of,
                comp_offset,
            },
            total,
        )
    }
}

/// Dense tables that have not been checked against the category axioms.
#[derive(Debug, Clone)]
pub struct RawCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismDef>,
    identities: Vec<u32>,
    layout: Layout,
    comp: Vec<u32>,
}

impl RawCategory {
    /// `morphisms` must have in-range endpoints (checked by the builder).
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<MorphismDef>,
        identities: Vec<Option<MorId>>,
    ) -> RawCategory {
        let n = objects.len();
        let (layout, total) = Layout::new(n, &morphisms);
        RawCategory {
            name: name.into(),
            objects,
            morphisms,
            identities: identities.into_iter().map(|m| m.map_or(NONE, |m| m.0)).collect(),
            layout,
            comp: vec![NONE; total],
        }
    }

    #[inline]
    fn slot(&self, g: MorId, f: MorId) -> usize {
        let n = self.objects.len();
        let (fd, gd) = (&self.morphisms[f.index()], &self.morphisms[g.index()]);
        let a = fd.dom.index();
        let b = fd.cod.index();
        let c = gd.cod.index();
        let width = self.layout.homs[a * n + b].len();
        self.layout.comp_offset[(a * n + b) * n + c]
            + self.layout.local[g.index()] as usize * width
            + self.layout.local[f.index()] as usize
    }

    /// Overwrites `compose(g, f)`. The pair must be composable.
    pub fn set_compose(&mut self, g: MorId, f: MorId, h: MorId) {
        assert_eq!(self.morphisms[f.index()].cod, self.morphisms[g.index()].dom, "set_compose on a non-composable pair");
        let s = self.slot(g, f);
        self.comp[s] = h.0;
    }

    pub fn get_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let v = self.comp[self.slot(g, f)];
        (v != NONE).then_some(MorId(v))
    }

    pub fn set_identity(&mut self, obj: ObjId, mor: MorId) {
        self.identities[obj.index()] = mor.0;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, f: MorId) -> &MorphismDef {
        &self.morphisms[f.index()]
    }

    pub fn hom_set(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.layout.homs[x.index() * self.objects.len() + y.index()]
    }

    /// Fills every composable pair from `f`.
    pub fn fill_with(&mut self, mut compose: impl FnMut(MorId, MorId) -> MorId) {
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let off = self.layout.comp_offset[(a * n + b) * n + c];
                    let fs = &self.layout.homs[a * n + b];
                    let gs = &self.layout.homs[b * n + c];
                    for (gi, &g) in gs.iter().enumerate() {
                        for (fi, &f) in fs.iter().enumerate() {
                            self.comp[off + gi * fs.len() + fi] = compose(g, f).0;
                        }
                    }
                }
            }
        }
    }

    fn mor_name(&self, f: MorId) -> &str {
        self.morphisms.get(f.index()).map_or("?", |m| m.name.as_str())
    }
}

/// Checks the three category axioms (identity laws, closure, associativity)
/// plus table well-formedness. An empty report means the tables describe a
/// category.
pub fn validate_category(raw: &RawCategory) -> ValidationReport {
    check_raw(raw).0
}

fn check_raw(raw: &RawCategory) -> (ValidationReport, Option<Vec<MorId>>) {
    let mut report = ValidationReport::new(format!("category `{}`", raw.name));
    let n = raw.objects.len();
    let nm = raw.morphisms.len() as u32;

    for (o, &id) in raw.identities.iter().enumerate() {
        if id == NONE {
            report.push(Law::IdentityTable, format!("object `{}` has no identity", raw.objects[o]));
        } else if id >= nm {
            report.push(Law::DanglingReference, format!("identity of `{}` is out of range", raw.objects[o]));
        } else {
            let m = &raw.morphisms[id as usize];
            if m.dom.index() != o || m.cod.index() != o {
                report.push(
                    Law::IdentityTable,
                    format!("identity of `{}` is `{}`, which is not an endomorphism of it", raw.objects[o], m.name),
                );
            }
        }
    }

    // Closure: every composable pair has a well-typed composite.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let off = raw.layout.comp_offset[(a * n + b) * n + c];
                let fs = &raw.layout.homs[a * n + b];
                let gs = &raw.layout.homs[b * n + c];
                for (gi, &g) in gs.iter().enumerate() {
                    for (fi, &f) in fs.iter().enumerate() {
                        let h = raw.comp[off + gi * fs.len() + fi];
                        if h == NONE {
                            report.push(
                                Law::MissingComposite,
                                format!("no composite for `{} . {}`", raw.mor_name(g), raw.mor_name(f)),
                            );
                        } else if h >= nm {
                            report.push(
                                Law::DanglingReference,
                                format!("composite of `{} . {}` is out of range", raw.mor_name(g), raw.mor_name(f)),
                            );
                        } else {
                            let hd = &raw.morphisms[h as usize];
                            if hd.dom.index() != a || hd.cod.index() != c {
                                report.push(
                                    Law::IllTypedComposite,
                                    format!(
                                        "`{} . {}` = `{}` but `{}` does not go from `{}` to `{}`",
                                        raw.mor_name(g),
                                        raw.mor_name(f),
                                        hd.name,
                                        hd.name,
                                        raw.objects[a],
                                        raw.objects[c]
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    if !report.is_valid() {
        return (report, None);
    }

    let id = |o: ObjId| MorId(raw.identities[o.index()]);
    let comp = |g: MorId, f: MorId| MorId(raw.comp[raw.slot(g, f)]);
    for (i, m) in raw.morphisms.iter().enumerate() {
        let f = MorId(i as u32);
        if comp(id(m.cod), f) != f {
            report.push(Law::IdentityLaw, format!("identity law at `{}`: id_cod . f != f", m.name));
        }
        if comp(f, id(m.dom)) != f {
            report.push(Law::IdentityLaw, format!("identity law at `{}`: f . id_dom != f", m.name));
        }
    }

    let generators = greedy_generators(raw, &comp, &id);
    // (h . s) . f = h . (s . f) for generators s suffices: every morphism is a
    // word in the generators and the middle-element property is closed under
    // composition.
    for &s in &generators {
        let sd = &raw.morphisms[s.index()];
        for &f in &raw.layout.into[sd.dom.index()] {
            let sf = comp(s, f);
            for &h in &raw.layout.out_of[sd.cod.index()] {
                if comp(comp(h, s), f) != comp(h, sf) {
                    report.push(
                        Law::Associativity,
                        format!(
                            "associativity fails at ({}, {}, {})",
                            raw.mor_name(h),
                            raw.mor_name(s),
                            raw.mor_name(f)
                        ),
                    );
                }
            }
        }
    }
    (report, Some(generators))
}

/// Greedy generating set in canonical order: a morphism becomes a generator
/// when it is not yet a word in the earlier generators. Words are built by
/// right multiplication `c ∘ s`, so every non-identity morphism is `c ∘ s`
/// for a shorter word `c` and a generator `s`.
fn greedy_generators(
    raw: &RawCategory,
    comp: &impl Fn(MorId, MorId) -> MorId,
    id: &impl Fn(ObjId) -> MorId,
) -> Vec<MorId> {
    let n = raw.objects.len();
    let nm = raw.morphisms.len();
    let mut in_closure = vec![false; nm];
    let mut closure_by_dom: Vec<Vec<MorId>> = vec![Vec::new(); n];
    let mut gens_by_cod: Vec<Vec<MorId>> = vec![Vec::new(); n];
    let mut generators = Vec::new();
    let mut queue = Vec::new();
    for o in 0..n {
        let i = id(ObjId(o as u32));
        if !in_closure[i.index()] {
            in_closure[i.index()] = true;
            closure_by_dom[o].push(i);
        }
    }
    for m in 0..nm {
        if in_closure[m] {
            continue;
        }
        let s = MorId(m as u32);
        let sd = &raw.morphisms[m];
        generators.push(s);
        gens_by_cod[sd.cod.index()].push(s);
        // existing words c with dom c = cod s give c ∘ s
        for &c in &closure_by_dom[sd.cod.index()].clone() {
            let w = comp(c, s);
            if !in_closure[w.index()] {
                in_closure[w.index()] = true;
                closure_by_dom[raw.morphisms[w.index()].dom.index()].push(w);
                queue.push(w);
            }
        }
        while let Some(e) = queue.pop() {
            let ed = raw.morphisms[e.index()].dom.index();
            for &s2 in &gens_by_cod[ed] {
                let w = comp(e, s2);
                if !in_closure[w.index()] {
                    in_closure[w.index()] = true;
                    closure_by_dom[raw.morphisms[w.index()].dom.index()].push(w);
                    queue.push(w);
                }
            }
        }
    }
    generators
}

/// A validated, immutable finite category.
#[derive(Debug, Clone)]
pub struct FinCategory {
    raw: RawCategory,
    generators: Vec<MorId>,
    fingerprint: u64,
    object_index: HashMap<String, ObjId>,
    morphism_index: HashMap<String, MorId>,
}

impl FinCategory {
    pub fn from_raw(raw: RawCategory) -> Result<FinCategory, ValidationReport> {
        let (report, generators) = check_raw(&raw);
        if !report.is_valid() {
            return Err(report);
        }
        let mut h = DefaultHasher::new();
        raw.objects.hash(&mut h);
        raw.morphisms.hash(&mut h);
        raw.identities.hash(&mut h);
        raw.comp.hash(&mut h);
        let object_index = raw
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), ObjId(i as u32)))
            .collect();
        let morphism_index = raw
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.name.clone(), MorId(i as u32)))
            .collect();
        Ok(FinCategory {
            raw,
            generators: generators.unwrap_or_default(),
            fingerprint: h.finish(),
            object_index,
            morphism_index,
        })
    }

    pub fn to_raw(&self) -> RawCategory {
        self.raw.clone()
    }

    /// Same tables as `self` under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> FinCategory {
        let mut c = self.clone();
        c.raw.name = name.into();
        c
    }

    pub fn name(&self) -> &str {
        &self.raw.name
    }

    pub fn num_objects(&self) -> usize {
        self.raw.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.raw.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone {
        (0..self.raw.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = MorId> + Clone {
        (0..self.raw.morphisms.len() as u32).map(MorId)
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.raw.objects[x.index()]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.raw.morphisms[f.index()].name
    }

    pub fn morphism(&self, f: MorId) -> &MorphismDef {
        &self.raw.morphisms[f.index()]
    }

    #[inline]
    pub fn dom(&self, f: MorId) -> ObjId {
        self.raw.morphisms[f.index()].dom
    }

    #[inline]
    pub fn cod(&self, f: MorId) -> ObjId {
        self.raw.morphisms[f.index()].cod
    }

    #[inline]
    pub fn identity(&self, x: ObjId) -> MorId {
        MorId(self.raw.identities[x.index()])
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        let d = self.dom(f);
        d == self.cod(f) && self.identity(d) == f
    }

    /// All morphisms `x ⇒ y` in canonical order.
    #[inline]
    pub fn hom_set(&self, x: ObjId, y: ObjId) -> &[MorId] {
        self.raw.hom_set(x, y)
    }

    /// Position of `f` inside its hom-set.
    #[inline]
    pub fn local_index(&self, f: MorId) -> usize {
        self.raw.layout.local[f.index()] as usize
    }

    /// Morphisms with codomain `x`.
    pub fn morphisms_into(&self, x: ObjId) -> &[MorId] {
        &self.raw.layout.into[x.index()]
    }

    /// Morphisms with domain `x`.
    pub fn morphisms_from(&self, x: ObjId) -> &[MorId] {
        &self.raw.layout.out_of[x.index()]
    }

    /// A generating set under composition, in canonical order.
    pub fn generators(&self) -> &[MorId] {
        &self.generators
    }

    pub fn compose(&self, g: MorId, f: MorId) -> Result<MorId> {
        if self.cod(f) != self.dom(g) {
            return Err(Error::NotComposable {
                g: self.morphism_name(g).to_string(),
                f: self.morphism_name(f).to_string(),
            });
        }
        Ok(self.comp(g, f))
    }

    /// Unchecked composition; the caller guarantees `cod f = dom g`.
    #[inline]
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        debug_assert_eq!(self.cod(f), self.dom(g));
        MorId(self.raw.comp[self.raw.slot(g, f)])
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.morphism_index.get(name).copied()
    }

    pub fn lookup_object(&self, name: &str) -> Result<ObjId> {
        self.object_by_name(name).ok_or_else(|| Error::Lookup {
            kind: "object",
            name: name.to_string(),
            context: format!("category `{}`", self.name()),
        })
    }

    pub fn lookup_morphism(&self, name: &str) -> Result<MorId> {
        self.morphism_by_name(name).ok_or_else(|| Error::Lookup {
            kind: "morphism",
            name: name.to_string(),
            context: format!("category `{}`", self.name()),
        })
    }

    pub fn hom_set_checked(&self, x: ObjId, y: ObjId) -> Result<&[MorId]> {
        for o in [x, y] {
            if o.index() >= self.num_objects() {
                return Err(Error::Lookup {
                    kind: "object",
                    name: o.to_string(),
                    context: format!("category `{}`", self.name()),
                });
            }
        }
        Ok(self.hom_set(x, y))
    }

    pub fn num_composable_pairs(&self) -> usize {
        self.raw.comp.len()
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (x, y) = (self.dom(f), self.cod(f));
        self.hom_set(y, x)
            .iter()
            .copied()
            .find(|&g| self.comp(g, f) == self.identity(x) && self.comp(f, g) == self.identity(y))
    }

    /// All isomorphisms `x ⇒ y` in canonical order.
    pub fn find_isomorphisms(&self, x: ObjId, y: ObjId) -> Vec<MorId> {
        self.hom_set(x, y)
            .iter()
            .copied()
            .filter(|&f| self.inverse(f).is_some())
            .collect()
    }

    pub fn is_isomorphism(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Structural fingerprint, independent of the category name.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Equal tables and names, ignoring the category's own name.
    pub fn same_structure(&self, other: &FinCategory) -> bool {
        std::ptr::eq(self, other)
            || (self.fingerprint == other.fingerprint
                && self.raw.objects == other.raw.objects
                && self.raw.morphisms == other.raw.morphisms
                && self.raw.identities == other.raw.identities
                && self.raw.comp == other.raw.comp)
    }

    /// Canonical renaming onto `other`: objects match by position, identities
    /// match identities and the remaining morphisms of each hom-set match in
    /// order. Returns the morphism correspondence when it is an isomorphism
    /// of categories.
    pub fn renaming_to(&self, other: &FinCategory) -> Option<Vec<MorId>> {
        let n = self.num_objects();
        if n != other.num_objects() || self.num_morphisms() != other.num_morphisms() {
            return None;
        }
        let mut map = vec![MorId(NONE); self.num_morphisms()];
        for x in self.objects() {
            for y in self.objects() {
                let a: Vec<MorId> = self.hom_set(x, y).iter().copied().filter(|&f| !self.is_identity(f)).collect();
                let b: Vec<MorId> = other.hom_set(x, y).iter().copied().filter(|&f| !other.is_identity(f)).collect();
                if a.len() != b.len() {
                    return None;
                }
                for (f, g) in a.into_iter().zip(b) {
                    map[f.index()] = g;
                }
            }
            map[self.identity(x).index()] = other.identity(x);
        }
        for g in self.morphisms() {
            for &f in self.morphisms_into(self.dom(g)) {
                if map[self.comp(g, f).index()] != other.comp(map[g.index()], map[f.index()]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    pub fn same_up_to_renaming(&self, other: &FinCategory) -> bool {
        self.renaming_to(other).is_some()
    }
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.same_structure(other)
    }
}

impl Eq for FinCategory {}
