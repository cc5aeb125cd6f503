//! Het bifunctors `Het: X^op × A → Sets`.
//!
//! A het `e: x → a` can be post-composed with a hom `h: a ⇒ a'` of `A`
//! (`post(h, e): x → a'`) and pre-composed with a hom `g: x' ⇒ x` of `X`
//! (`pre(e, g): x' → a`). Both actions are stored as dense tables: for each
//! element, one slot per morphism out of its target (post) or into its
//! source (pre).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{FinCategory, MorId, ObjId, NONE};
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::report::{Law, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HetId(pub u32);

impl HetId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for HetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HetDef {
    pub name: String,
    /// Object of `X`.
    pub source: ObjId,
    /// Object of `A`.
    pub target: ObjId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Pre-composition with a hom of the source category.
    Pre,
    /// Post-composition with a hom of the target category.
    Post,
}

/// Name-keyed sparse description of a het bifunctor.
#[derive(Debug, Clone)]
pub struct HetBuilder {
    name: String,
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    elems: Vec<HetDef>,
    post: Vec<(MorId, HetId, HetId)>,
    pre: Vec<(HetId, MorId, HetId)>,
}

impl HetBuilder {
    pub fn new(name: impl Into<String>, source: Arc<FinCategory>, target: Arc<FinCategory>) -> HetBuilder {
        HetBuilder {
            name: name.into(),
            source,
            target,
            elems: Vec::new(),
            post: Vec::new(),
            pre: Vec::new(),
        }
    }

    pub fn add_elem(&mut self, name: impl Into<String>, source: ObjId, target: ObjId) -> HetId {
        self.elems.push(HetDef {
            name: name.into(),
            source,
            target,
        });
        HetId(self.elems.len() as u32 - 1)
    }

    /// Records `post(h, e) = r`.
    pub fn set_post(&mut self, h: MorId, e: HetId, r: HetId) {
        self.post.push((h, e, r));
    }

    /// Records `pre(e, g) = r`.
    pub fn set_pre(&mut self, e: HetId, g: MorId, r: HetId) {
        self.pre.push((e, g, r));
    }

    pub fn elem_by_name(&self, name: &str) -> Option<HetId> {
        self.elems.iter().position(|e| e.name == name).map(|i| HetId(i as u32))
    }

    pub fn elems(&self) -> &[HetDef] {
        &self.elems
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    /// Adds `post(id, e) = e` and `pre(e, id) = e` wherever not given.
    pub fn fill_identity_actions(&mut self) {
        let post_given: HashSet<(MorId, HetId)> = self.post.iter().map(|&(h, e, _)| (h, e)).collect();
        let pre_given: HashSet<(HetId, MorId)> = self.pre.iter().map(|&(e, g, _)| (e, g)).collect();
        for (i, d) in self.elems.iter().enumerate() {
            let e = HetId(i as u32);
            if d.target.index() < self.target.num_objects() {
                let ida = self.target.identity(d.target);
                if !post_given.contains(&(ida, e)) {
                    self.post.push((ida, e, e));
                }
            }
            if d.source.index() < self.source.num_objects() {
                let idx = self.source.identity(d.source);
                if !pre_given.contains(&(e, idx)) {
                    self.pre.push((e, idx, e));
                }
            }
        }
    }

    pub fn into_raw(self) -> Result<RawHet, ValidationReport> {
        let mut report = ValidationReport::new(format!("het bifunctor `{}`", self.name));
        let mut seen = HashSet::new();
        for d in &self.elems {
            if !seen.insert(&d.name) {
                report.push(Law::DuplicateName, format!("het element name `{}` is used twice", d.name));
            }
            if d.source.index() >= self.source.num_objects() || d.target.index() >= self.target.num_objects() {
                report.push(Law::DanglingReference, format!("het element `{}` has an endpoint outside its categories", d.name));
            }
        }
        let ne = self.elems.len() as u32;
        for &(h, e, r) in &self.post {
            if h.index() >= self.target.num_morphisms() || e.0 >= ne || r.0 >= ne {
                report.push(Law::DanglingReference, format!("post entry ({h}, {e}) = {r} refers to something unknown"));
            } else if self.target.dom(h) != self.elems[e.index()].target {
                report.push(
                    Law::IllTypedAction,
                    format!(
                        "post entry `{} . {}` given although `{}` does not start at the target of `{}`",
                        self.target.morphism_name(h),
                        self.elems[e.index()].name,
                        self.target.morphism_name(h),
                        self.elems[e.index()].name
                    ),
                );
            }
        }
        for &(e, g, r) in &self.pre {
            if g.index() >= self.source.num_morphisms() || e.0 >= ne || r.0 >= ne {
                report.push(Law::DanglingReference, format!("pre entry ({e}, {g}) = {r} refers to something unknown"));
            } else if self.source.cod(g) != self.elems[e.index()].source {
                report.push(
                    Law::IllTypedAction,
                    format!(
                        "pre entry `{} . {}` given although `{}` does not end at the source of `{}`",
                        self.elems[e.index()].name,
                        self.source.morphism_name(g),
                        self.source.morphism_name(g),
                        self.elems[e.index()].name
                    ),
                );
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        let mut raw = RawHet::new(self.name, self.source, self.target, self.elems);
        for (h, e, r) in self.post {
            raw.set_post(h, e, r);
        }
        for (e, g, r) in self.pre {
            raw.set_pre(e, g, r);
        }
        Ok(raw)
    }

    pub fn build(self) -> Result<HetBifunctor, ValidationReport> {
        HetBifunctor::from_raw(self.into_raw()?)
    }
}

/// Dense action tables that have not been checked against the bifunctor laws.
#[derive(Debug, Clone)]
pub struct RawHet {
    name: String,
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    elems: Vec<HetDef>,
    /// Elements of `Het(x, a)` at `x * |A| + a`.
    sets: Vec<Vec<HetId>>,
    local: Vec<u32>,
    post_base: Vec<u32>,
    post: Vec<u32>,
    pre_base: Vec<u32>,
    pre: Vec<u32>,
    /// Position of each morphism of `A` in `morphisms_from(dom)`.
    from_pos: Vec<u32>,
    /// Position of each morphism of `X` in `morphisms_into(cod)`.
    into_pos: Vec<u32>,
}

impl RawHet {
    /// Element endpoints must be in range (checked by the builder).
    pub fn new(
        name: impl Into<String>,
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        elems: Vec<HetDef>,
    ) -> RawHet {
        let na = target.num_objects();
        let mut sets = vec![Vec::new(); source.num_objects() * na];
        let mut local = Vec::with_capacity(elems.len());
        let mut post_base = Vec::with_capacity(elems.len() + 1);
        let mut pre_base = Vec::with_capacity(elems.len() + 1);
        let (mut post_len, mut pre_len) = (0u32, 0u32);
        for (i, d) in elems.iter().enumerate() {
            let slot = &mut sets[d.source.index() * na + d.target.index()];
            local.push(slot.len() as u32);
            slot.push(HetId(i as u32));
            post_base.push(post_len);
            pre_base.push(pre_len);
            post_len += target.morphisms_from(d.target).len() as u32;
            pre_len += source.morphisms_into(d.source).len() as u32;
        }
        post_base.push(post_len);
        pre_base.push(pre_len);
        let mut from_pos = vec![0u32; target.num_morphisms()];
        for a in target.objects() {
            for (i, &h) in target.morphisms_from(a).iter().enumerate() {
                from_pos[h.index()] = i as u32;
            }
        }
        let mut into_pos = vec![0u32; source.num_morphisms()];
        for x in source.objects() {
            for (i, &g) in source.morphisms_into(x).iter().enumerate() {
                into_pos[g.index()] = i as u32;
            }
        }
        RawHet {
            name: name.into(),
            source,
            target,
            elems,
            sets,
            local,
            post_base,
            post: vec![NONE; post_len as usize],
            pre_base,
            pre: vec![NONE; pre_len as usize],
            from_pos,
            into_pos,
        }
    }

    #[inline]
    fn post_slot(&self, h: MorId, e: HetId) -> usize {
        (self.post_base[e.index()] + self.from_pos[h.index()]) as usize
    }

    #[inline]
    fn pre_slot(&self, e: HetId, g: MorId) -> usize {
        (self.pre_base[e.index()] + self.into_pos[g.index()]) as usize
    }

    pub fn set_post(&mut self, h: MorId, e: HetId, r: HetId) {
        assert_eq!(self.target.dom(h), self.elems[e.index()].target, "post entry on a mismatched pair");
        let s = self.post_slot(h, e);
        self.post[s] = r.0;
    }

    pub fn set_pre(&mut self, e: HetId, g: MorId, r: HetId) {
        assert_eq!(self.source.cod(g), self.elems[e.index()].source, "pre entry on a mismatched pair");
        let s = self.pre_slot(e, g);
        self.pre[s] = r.0;
    }

    pub fn get_post(&self, h: MorId, e: HetId) -> Option<HetId> {
        let v = self.post[self.post_slot(h, e)];
        (v != NONE).then_some(HetId(v))
    }

    pub fn get_pre(&self, e: HetId, g: MorId) -> Option<HetId> {
        let v = self.pre[self.pre_slot(e, g)];
        (v != NONE).then_some(HetId(v))
    }

    /// Fills every post entry from `f(h, e)`.
    pub fn fill_post_with(&mut self, mut f: impl FnMut(MorId, HetId) -> HetId) {
        for i in 0..self.elems.len() {
            let e = HetId(i as u32);
            let base = self.post_base[i] as usize;
            for (k, &h) in self.target.morphisms_from(self.elems[i].target).iter().enumerate() {
                self.post[base + k] = f(h, e).0;
            }
        }
    }

    /// Fills every pre entry from `f(e, g)`.
    pub fn fill_pre_with(&mut self, mut f: impl FnMut(HetId, MorId) -> HetId) {
        for i in 0..self.elems.len() {
            let e = HetId(i as u32);
            let base = self.pre_base[i] as usize;
            for (k, &g) in self.source.morphisms_into(self.elems[i].source).iter().enumerate() {
                self.pre[base + k] = f(e, g).0;
            }
        }
    }

    pub fn het_set(&self, x: ObjId, a: ObjId) -> &[HetId] {
        &self.sets[x.index() * self.target.num_objects() + a.index()]
    }

    pub fn elems(&self) -> &[HetDef] {
        &self.elems
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }
}

/// Checks table totality and typing, identity actions, functoriality on both
/// sides and mixed associativity.
pub fn validate_het_bifunctor(raw: &RawHet) -> ValidationReport {
    let mut report = ValidationReport::new(format!("het bifunctor `{}`", raw.name));
    let (xs, a_cat) = (&raw.source, &raw.target);
    let ne = raw.elems.len() as u32;

    for (i, d) in raw.elems.iter().enumerate() {
        let base = raw.post_base[i] as usize;
        for (k, &h) in a_cat.morphisms_from(d.target).iter().enumerate() {
            let r = raw.post[base + k];
            if r == NONE {
                report.push(
                    Law::IncompleteAction,
                    format!("incomplete action table: no entry for `{} . {}`", a_cat.morphism_name(h), d.name),
                );
            } else if r >= ne {
                report.push(Law::DanglingReference, format!("post entry `{} . {}` is out of range", a_cat.morphism_name(h), d.name));
            } else {
                let rd = &raw.elems[r as usize];
                if rd.source != d.source || rd.target != a_cat.cod(h) {
                    report.push(
                        Law::IllTypedAction,
                        format!(
                            "`{} . {}` = `{}` lies outside Het({}, {})",
                            a_cat.morphism_name(h),
                            d.name,
                            rd.name,
                            xs.object_name(d.source),
                            a_cat.object_name(a_cat.cod(h))
                        ),
                    );
                }
            }
        }
        let base = raw.pre_base[i] as usize;
        for (k, &g) in xs.morphisms_into(d.source).iter().enumerate() {
            let r = raw.pre[base + k];
            if r == NONE {
                report.push(
                    Law::IncompleteAction,
                    format!("incomplete action table: no entry for `{} . {}`", d.name, xs.morphism_name(g)),
                );
            } else if r >= ne {
                report.push(Law::DanglingReference, format!("pre entry `{} . {}` is out of range", d.name, xs.morphism_name(g)));
            } else {
                let rd = &raw.elems[r as usize];
                if rd.source != xs.dom(g) || rd.target != d.target {
                    report.push(
                        Law::IllTypedAction,
                        format!(
                            "`{} . {}` = `{}` lies outside Het({}, {})",
                            d.name,
                            xs.morphism_name(g),
                            rd.name,
                            xs.object_name(xs.dom(g)),
                            a_cat.object_name(d.target)
                        ),
                    );
                }
            }
        }
    }
    if !report.is_valid() {
        return report;
    }

    let post = |h: MorId, e: HetId| HetId(raw.post[raw.post_slot(h, e)]);
    let pre = |e: HetId, g: MorId| HetId(raw.pre[raw.pre_slot(e, g)]);
    let elem = |e: HetId| &raw.elems[e.index()];

    for i in 0..ne {
        let e = HetId(i);
        let d = elem(e);
        if post(a_cat.identity(d.target), e) != e {
            report.push(
                Law::IdentityAction,
                format!("identity action: `{} . {}` != `{}`", a_cat.morphism_name(a_cat.identity(d.target)), d.name, d.name),
            );
        }
        if pre(e, xs.identity(d.source)) != e {
            report.push(
                Law::IdentityAction,
                format!("identity action: `{} . {}` != `{}`", d.name, xs.morphism_name(xs.identity(d.source)), d.name),
            );
        }
    }

    // As for category associativity, it suffices to let the outer morphism
    // range over generators: every morphism is a word in them.
    for &s in a_cat.generators() {
        for &h in a_cat.morphisms_into(a_cat.dom(s)) {
            let sh = a_cat.comp(s, h);
            for x in xs.objects() {
                for &e in raw.het_set(x, a_cat.dom(h)) {
                    if post(sh, e) != post(s, post(h, e)) {
                        report.push(
                            Law::CovariantFunctoriality,
                            format!(
                                "covariant functoriality fails at ({}, {}, {})",
                                a_cat.morphism_name(s),
                                a_cat.morphism_name(h),
                                elem(e).name
                            ),
                        );
                    }
                }
            }
        }
    }
    for &s in xs.generators() {
        for &g in xs.morphisms_into(xs.dom(s)) {
            let sg = xs.comp(s, g);
            for a in a_cat.objects() {
                for &e in raw.het_set(xs.cod(s), a) {
                    if pre(e, sg) != pre(pre(e, s), g) {
                        report.push(
                            Law::ContravariantFunctoriality,
                            format!(
                                "contravariant functoriality fails at ({}, {}, {})",
                                elem(e).name,
                                xs.morphism_name(s),
                                xs.morphism_name(g)
                            ),
                        );
                    }
                }
            }
        }
    }
    // With both functoriality laws in place, mixed associativity for
    // generator pairs implies it for all pairs.
    for &s in a_cat.generators() {
        for &t in xs.generators() {
            for &e in raw.het_set(xs.cod(t), a_cat.dom(s)) {
                if post(s, pre(e, t)) != pre(post(s, e), t) {
                    report.push(
                        Law::MixedAssociativity,
                        format!(
                            "mixed associativity fails at ({}, {}, {})",
                            a_cat.morphism_name(s),
                            elem(e).name,
                            xs.morphism_name(t)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// A validated het bifunctor.
#[derive(Debug, Clone)]
pub struct HetBifunctor {
    raw: RawHet,
    index: HashMap<String, HetId>,
}

impl HetBifunctor {
    pub fn from_raw(raw: RawHet) -> Result<HetBifunctor, ValidationReport> {
        validate_het_bifunctor(&raw).into_result(())?;
        let index = raw
            .elems
            .iter()
            .enumerate()
            .map(|(i, d)| (d.name.clone(), HetId(i as u32)))
            .collect();
        Ok(HetBifunctor { raw, index })
    }

    /// The bifunctor with every het-set empty.
    pub fn empty(name: impl Into<String>, source: Arc<FinCategory>, target: Arc<FinCategory>) -> HetBifunctor {
        HetBifunctor::from_raw(RawHet::new(name, source, target, Vec::new())).expect("empty bifunctor is valid")
    }

    /// `Hom_C` viewed as hets from `C` to itself.
    pub fn hom(cat: &Arc<FinCategory>) -> HetBifunctor {
        let elems = cat
            .morphisms()
            .map(|f| HetDef {
                name: cat.morphism_name(f).to_string(),
                source: cat.dom(f),
                target: cat.cod(f),
            })
            .collect();
        let mut raw = RawHet::new(format!("Hom_{}", cat.name()), cat.clone(), cat.clone(), elems);
        raw.fill_post_with(|h, e| HetId(cat.comp(h, MorId(e.0)).0));
        raw.fill_pre_with(|e, g| HetId(cat.comp(MorId(e.0), g).0));
        HetBifunctor::from_raw(raw).expect("hom bifunctor of a valid category is valid")
    }

    pub fn to_raw(&self) -> RawHet {
        self.raw.clone()
    }

    pub fn renamed(&self, name: impl Into<String>) -> HetBifunctor {
        let mut h = self.clone();
        h.raw.name = name.into();
        h
    }

    pub fn name(&self) -> &str {
        &self.raw.name
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.raw.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.raw.target
    }

    pub fn num_elems(&self) -> usize {
        self.raw.elems.len()
    }

    pub fn elems(&self) -> impl ExactSizeIterator<Item = HetId> + Clone {
        (0..self.raw.elems.len() as u32).map(HetId)
    }

    pub fn elem(&self, e: HetId) -> &HetDef {
        &self.raw.elems[e.index()]
    }

    pub fn elem_name(&self, e: HetId) -> &str {
        &self.raw.elems[e.index()].name
    }

    #[inline]
    pub fn elem_source(&self, e: HetId) -> ObjId {
        self.raw.elems[e.index()].source
    }

    #[inline]
    pub fn elem_target(&self, e: HetId) -> ObjId {
        self.raw.elems[e.index()].target
    }

    /// `Het(x, a)` in canonical order.
    #[inline]
    pub fn het_set(&self, x: ObjId, a: ObjId) -> &[HetId] {
        self.raw.het_set(x, a)
    }

    /// Position of `e` inside its het-set.
    #[inline]
    pub fn local_index(&self, e: HetId) -> usize {
        self.raw.local[e.index()] as usize
    }

    /// Unchecked `h ∘ e`; requires `dom h = target e`.
    #[inline]
    pub fn post(&self, h: MorId, e: HetId) -> HetId {
        debug_assert_eq!(self.target().dom(h), self.elem_target(e));
        HetId(self.raw.post[self.raw.post_slot(h, e)])
    }

    /// Unchecked `e ∘ g`; requires `cod g = source e`.
    #[inline]
    pub fn pre(&self, e: HetId, g: MorId) -> HetId {
        debug_assert_eq!(self.source().cod(g), self.elem_source(e));
        HetId(self.raw.pre[self.raw.pre_slot(e, g)])
    }

    pub fn compose_het_hom(&self, e: HetId, mor: MorId, side: Side) -> Result<HetId> {
        match side {
            Side::Post => {
                if self.target().dom(mor) != self.elem_target(e) {
                    return Err(Error::NotComposable {
                        g: self.target().morphism_name(mor).to_string(),
                        f: self.elem_name(e).to_string(),
                    });
                }
                Ok(self.post(mor, e))
            }
            Side::Pre => {
                if self.source().cod(mor) != self.elem_source(e) {
                    return Err(Error::NotComposable {
                        g: self.elem_name(e).to_string(),
                        f: self.source().morphism_name(mor).to_string(),
                    });
                }
                Ok(self.pre(e, mor))
            }
        }
    }

    pub fn elem_by_name(&self, name: &str) -> Option<HetId> {
        self.index.get(name).copied()
    }

    pub fn lookup_elem(&self, name: &str) -> Result<HetId> {
        self.elem_by_name(name).ok_or_else(|| Error::Lookup {
            kind: "het element",
            name: name.to_string(),
            context: format!("het bifunctor `{}`", self.name()),
        })
    }

    /// Equal categories, elements and tables, ignoring the bifunctor's name.
    pub fn same_structure(&self, other: &HetBifunctor) -> bool {
        self.source().same_structure(other.source())
            && self.target().same_structure(other.target())
            && self.raw.elems == other.raw.elems
            && self.raw.post == other.raw.post
            && self.raw.pre == other.raw.pre
    }

    /// Canonical renaming onto `other`, whose categories may themselves be
    /// renamed copies: objects match by position, morphisms by
    /// [`FinCategory::renaming_to`] and elements by position in their
    /// het-set. Returns the element correspondence when it respects both
    /// actions.
    pub fn renaming_to(&self, other: &HetBifunctor) -> Option<Vec<HetId>> {
        let xmap = self.source().renaming_to(other.source())?;
        let amap = self.target().renaming_to(other.target())?;
        if self.num_elems() != other.num_elems() {
            return None;
        }
        let mut map = vec![HetId(NONE); self.num_elems()];
        for x in self.source().objects() {
            for a in self.target().objects() {
                let (s, t) = (self.het_set(x, a), other.het_set(x, a));
                if s.len() != t.len() {
                    return None;
                }
                for (&e, &e2) in s.iter().zip(t) {
                    map[e.index()] = e2;
                }
            }
        }
        for e in self.elems() {
            for &h in self.target().morphisms_from(self.elem_target(e)) {
                if map[self.post(h, e).index()] != other.post(amap[h.index()], map[e.index()]) {
                    return None;
                }
            }
            for &g in self.source().morphisms_into(self.elem_source(e)) {
                if map[self.pre(e, g).index()] != other.pre(map[e.index()], xmap[g.index()]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    pub fn same_up_to_renaming(&self, other: &HetBifunctor) -> bool {
        self.renaming_to(other).is_some()
    }

    /// `Het'(x', a') = Het(J x', I a')` with actions through `J` and `I`.
    ///
    /// Element names are kept when both functors are injective on objects;
    /// otherwise they become `(x',a',e)`.
    pub fn pullback(&self, j: &Functor, i: &Functor, name: impl Into<String>) -> Result<HetBifunctor> {
        if !j.target().same_structure(self.source()) || !i.target().same_structure(self.target()) {
            return Err(Error::Shape(format!(
                "functors `{}` and `{}` do not land in the categories of `{}`",
                j.name(),
                i.name(),
                self.name()
            )));
        }
        let (xs, as_) = (j.source().clone(), i.source().clone());
        let injective = |f: &Functor| {
            let mut seen = HashSet::new();
            f.obj_map().iter().all(|x| seen.insert(*x))
        };
        let keep_names = injective(j) && injective(i);
        let mut elems = Vec::new();
        // new element (x', a', k) corresponds to het_set(J x', I a')[k]
        let mut origin = Vec::new();
        let mut first = vec![0u32; xs.num_objects() * as_.num_objects()];
        for x in xs.objects() {
            for a in as_.objects() {
                first[x.index() * as_.num_objects() + a.index()] = elems.len() as u32;
                for &e in self.het_set(j.ob(x), i.ob(a)) {
                    let name = if keep_names {
                        self.elem_name(e).to_string()
                    } else {
                        format!("({},{},{})", xs.object_name(x), as_.object_name(a), self.elem_name(e))
                    };
                    elems.push(HetDef {
                        name,
                        source: x,
                        target: a,
                    });
                    origin.push(e);
                }
            }
        }
        let na = as_.num_objects();
        let mut raw = RawHet::new(name, xs.clone(), as_.clone(), elems);
        let defs = raw.elems.clone();
        raw.fill_post_with(|h, e| {
            let d = &defs[e.index()];
            let r = self.post(i.mor(h), origin[e.index()]);
            let cod = as_.cod(h);
            HetId(first[d.source.index() * na + cod.index()] + self.local_index(r) as u32)
        });
        raw.fill_pre_with(|e, g| {
            let d = &defs[e.index()];
            let r = self.pre(origin[e.index()], j.mor(g));
            let dom = xs.dom(g);
            HetId(first[dom.index() * na + d.target.index()] + self.local_index(r) as u32)
        });
        HetBifunctor::from_raw(raw).map_err(Error::Invalid)
    }

    /// Restriction along a functor into the source category.
    pub fn restrict_source(&self, j: &Functor) -> Result<HetBifunctor> {
        self.pullback(j, &Functor::identity(self.target()), self.name().to_string())
    }

    /// Restriction along a functor into the target category.
    pub fn restrict_target(&self, i: &Functor) -> Result<HetBifunctor> {
        self.pullback(&Functor::identity(self.source()), i, self.name().to_string())
    }
}
