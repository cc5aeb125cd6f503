//! Named categories, functors and het bifunctors resolved from DSL blocks or
//! loaded from the gallery.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use hetcat::category::validate_category;
use hetcat::construct::product;
use hetcat::functor::validate_functor;
use hetcat::gallery::GalleryInstance;
use hetcat::het::validate_het_bifunctor;
use hetcat::{CategoryBuilder, FinCategory, Functor, HetBifunctor, HetBuilder, HetId, Law, MorId, ObjId, ValidationReport};

use crate::diag::{Diagnostic, Location};
use crate::parser::{parse_blocks, Block, CategoryBlock, FunctorBlock, HetBlock, Name, ProductBlock};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Category,
    Functor,
    Het,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Category => "category",
            Kind::Functor => "functor",
            Kind::Het => "het bifunctor",
        })
    }
}

#[derive(Debug, Clone)]
pub enum Structure {
    Category(Arc<FinCategory>),
    Functor(Functor),
    Het(Arc<HetBifunctor>),
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub kind: Kind,
    /// `None` when the structure failed validation.
    pub structure: Option<Structure>,
    pub report: ValidationReport,
    pub location: Option<Location>,
    /// Declarations and table entries (`"g . f"`) by key.
    items: HashMap<String, Location>,
}

impl Entry {
    pub fn is_valid(&self) -> bool {
        self.structure.is_some() && self.report.is_valid()
    }

    /// Violations of the report, each anchored at the nearest source item.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let subject = format!("{} `{}`", self.kind, self.name);
        self.report
            .violations
            .iter()
            .map(|v| Diagnostic {
                location: self.locate(&v.message).or_else(|| self.location.clone()),
                subject: Some(subject.clone()),
                message: v.to_string(),
            })
            .chain((self.report.omitted > 0).then(|| {
                Diagnostic::about(subject.clone(), format!("{} further violations omitted", self.report.omitted))
            }))
            .collect()
    }

    fn locate(&self, message: &str) -> Option<Location> {
        let quoted: Vec<&str> = message.split('`').skip(1).step_by(2).collect();
        quoted
            .iter()
            .filter(|q| q.contains(" . "))
            .chain(quoted.iter().filter(|q| !q.contains(" . ")))
            .find_map(|q| self.items.get(*q).cloned())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Workspace {
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

fn unresolved(name: &Name, kind: &str, scope: &str) -> Diagnostic {
    Diagnostic::at(name.loc.clone(), format!("unresolved {kind} `{}` in {scope}", name.text))
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every violation in the workspace; empty when all structures validate.
    pub fn validation_errors(&self) -> Vec<Diagnostic> {
        self.entries.iter().filter(|e| !e.is_valid()).flat_map(Entry::diagnostics).collect()
    }

    fn lookup(&self, name: &str, kind: Kind) -> Result<&Entry, Diagnostic> {
        let entry = self.entry(name).ok_or_else(|| {
            let known: Vec<&str> = self
                .entries
                .iter()
                .filter(|e| e.kind == kind)
                .map(|e| e.name.as_str())
                .collect();
            Diagnostic::about(
                format!("{kind} `{name}`"),
                format!("not defined; known: {}", if known.is_empty() { "none".into() } else { known.join(", ") }),
            )
        })?;
        if entry.kind != kind {
            return Err(Diagnostic::about(format!("`{name}`"), format!("is a {}, not a {kind}", entry.kind)));
        }
        if entry.structure.is_none() {
            return Err(Diagnostic {
                location: entry.location.clone(),
                subject: Some(format!("{kind} `{name}`")),
                message: "failed validation; run `validate` for details".into(),
            });
        }
        Ok(entry)
    }

    pub fn category(&self, name: &str) -> Result<&Arc<FinCategory>, Diagnostic> {
        match &self.lookup(name, Kind::Category)?.structure {
            Some(Structure::Category(c)) => Ok(c),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn functor(&self, name: &str) -> Result<&Functor, Diagnostic> {
        match &self.lookup(name, Kind::Functor)?.structure {
            Some(Structure::Functor(f)) => Ok(f),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn het(&self, name: &str) -> Result<&Arc<HetBifunctor>, Diagnostic> {
        match &self.lookup(name, Kind::Het)?.structure {
            Some(Structure::Het(h)) => Ok(h),
            _ => unreachable!("kind checked"),
        }
    }

    fn push(&mut self, entry: Entry) {
        self.index.insert(entry.name.clone(), self.entries.len());
        self.entries.push(entry);
    }

    fn reserve(&self, name: &Name) -> Result<(), Diagnostic> {
        match self.entry(&name.text) {
            Some(prev) => Err(Diagnostic::at(
                name.loc.clone(),
                format!(
                    "duplicate name `{}`, already defined{}",
                    name.text,
                    prev.location.as_ref().map(|l| format!(" at {l}")).unwrap_or_default()
                ),
            )),
            None => Ok(()),
        }
    }

    /// Adds a validated category, reusing an existing entry with the same
    /// name and structure.
    pub fn add_category(&mut self, cat: &Arc<FinCategory>) -> Result<(), Diagnostic> {
        if let Some(e) = self.entry(cat.name()) {
            return match &e.structure {
                Some(Structure::Category(c)) if c.same_structure(cat) => Ok(()),
                _ => Err(Diagnostic::about(format!("category `{}`", cat.name()), "name already in use")),
            };
        }
        let report = validate_category(&cat.to_raw());
        self.push(Entry {
            name: cat.name().to_string(),
            kind: Kind::Category,
            structure: Some(Structure::Category(cat.clone())),
            report,
            location: None,
            items: HashMap::new(),
        });
        Ok(())
    }

    pub fn add_functor(&mut self, f: &Functor) -> Result<(), Diagnostic> {
        self.add_category(f.source())?;
        self.add_category(f.target())?;
        if self.entry(f.name()).is_some() {
            return Err(Diagnostic::about(format!("functor `{}`", f.name()), "name already in use"));
        }
        self.push(Entry {
            name: f.name().to_string(),
            kind: Kind::Functor,
            structure: Some(Structure::Functor(f.clone())),
            report: validate_functor(f),
            location: None,
            items: HashMap::new(),
        });
        Ok(())
    }

    pub fn add_het(&mut self, h: &Arc<HetBifunctor>) -> Result<(), Diagnostic> {
        self.add_category(h.source())?;
        self.add_category(h.target())?;
        if self.entry(h.name()).is_some() {
            return Err(Diagnostic::about(format!("het bifunctor `{}`", h.name()), "name already in use"));
        }
        self.push(Entry {
            name: h.name().to_string(),
            kind: Kind::Het,
            structure: Some(Structure::Het(h.clone())),
            report: validate_het_bifunctor(&h.to_raw()),
            location: None,
            items: HashMap::new(),
        });
        Ok(())
    }

    pub fn from_gallery(g: &GalleryInstance) -> Result<Workspace, Diagnostic> {
        let mut ws = Workspace::new();
        ws.add_gallery(g)?;
        Ok(ws)
    }

    pub fn add_gallery(&mut self, g: &GalleryInstance) -> Result<(), Diagnostic> {
        for c in &g.categories {
            self.add_category(c)?;
        }
        for f in &g.functors {
            self.add_functor(f)?;
        }
        for h in &g.hets {
            self.add_het(h)?;
        }
        Ok(())
    }

    /// Parses and resolves one or more DSL sources `(file, text)`. Names
    /// may refer to blocks of any source, in any order.
    pub fn parse(sources: &[(&str, &str)]) -> Result<Workspace, Vec<Diagnostic>> {
        let mut ws = Workspace::new();
        ws.extend_from_sources(sources)?;
        Ok(ws)
    }

    pub fn extend_from_sources(&mut self, sources: &[(&str, &str)]) -> Result<(), Vec<Diagnostic>> {
        let mut blocks = Vec::new();
        let mut errors = Vec::new();
        for (file, text) in sources {
            match parse_blocks(text, file) {
                Ok(b) => blocks.extend(b),
                Err(e) => errors.extend(e),
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        let mut seen: HashMap<&str, &Name> = HashMap::new();
        for b in &blocks {
            let name = b.name();
            if let Err(e) = self.reserve(name) {
                errors.push(e);
            } else if let Some(prev) = seen.insert(&name.text, name) {
                errors.push(Diagnostic::at(
                    name.loc.clone(),
                    format!("duplicate name `{}`, already defined at {}", name.text, prev.loc),
                ));
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        for b in &blocks {
            if let Block::Category(c) = b {
                match resolve_category(c) {
                    Ok(e) => self.push(e),
                    Err(e) => errors.extend(e),
                }
            }
        }
        let mut pending: Vec<&ProductBlock> = blocks
            .iter()
            .filter_map(|b| match b {
                Block::Product(p) => Some(p),
                _ => None,
            })
            .collect();
        // products may be nested; resolve in passes until no progress
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for p in pending {
                let known = |n: &Name| self.entry(&n.text).is_some();
                if known(&p.left) && known(&p.right) {
                    match self.resolve_product(p) {
                        Ok(e) => self.push(e),
                        Err(e) => errors.extend(e),
                    }
                } else {
                    rest.push(p);
                }
            }
            if rest.len() == before {
                for p in rest {
                    for n in [&p.left, &p.right] {
                        if self.entry(&n.text).is_none() {
                            errors.push(unresolved(n, "category", &format!("category `{}`", p.name.text)));
                        }
                    }
                }
                break;
            }
            pending = rest;
        }
        for b in &blocks {
            let entry = match b {
                Block::Category(_) | Block::Product(_) => continue,
                Block::Functor(f) => self.resolve_functor(f),
                Block::Het(h) => self.resolve_het(h),
            };
            match entry {
                Ok(e) => self.push(e),
                Err(e) => errors.extend(e),
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    /// Source and target categories of a functor or het block. A reference
    /// to a category that failed validation yields `Ok(None)`.
    fn endpoints(
        &self,
        source: &Name,
        target: &Name,
        scope: &str,
    ) -> Result<Option<(Arc<FinCategory>, Arc<FinCategory>)>, Vec<Diagnostic>> {
        let mut errors = Vec::new();
        let mut get = |n: &Name| match self.entry(&n.text) {
            Some(Entry {
                kind: Kind::Category,
                structure,
                ..
            }) => Some(structure.clone()),
            _ => {
                errors.push(unresolved(n, "category", scope));
                None
            }
        };
        let (s, t) = (get(source), get(target));
        if !errors.is_empty() {
            return Err(errors);
        }
        match (s.flatten(), t.flatten()) {
            (Some(Structure::Category(s)), Some(Structure::Category(t))) => Ok(Some((s, t))),
            _ => Ok(None),
        }
    }

    fn resolve_product(&self, b: &ProductBlock) -> Result<Entry, Vec<Diagnostic>> {
        let scope = format!("category `{}`", b.name.text);
        let Some((l, r)) = self.endpoints(&b.left, &b.right, &scope)? else {
            return Ok(self.dependent_failure(&b.name, Kind::Category));
        };
        let cat = product(&l, &r).renamed(b.name.text.clone());
        Ok(Entry {
            name: b.name.text.clone(),
            kind: Kind::Category,
            report: validate_category(&cat.to_raw()),
            structure: Some(Structure::Category(Arc::new(cat))),
            location: Some(b.name.loc.clone()),
            items: HashMap::new(),
        })
    }

    fn dependent_failure(&self, name: &Name, kind: Kind) -> Entry {
        let mut report = ValidationReport::new(format!("{kind} `{}`", name.text));
        report.push(Law::DanglingReference, "source or target category failed validation");
        Entry {
            name: name.text.clone(),
            kind,
            structure: None,
            report,
            location: Some(name.loc.clone()),
            items: HashMap::new(),
        }
    }

    fn resolve_functor(&self, b: &FunctorBlock) -> Result<Entry, Vec<Diagnostic>> {
        let scope = format!("functor `{}`", b.name.text);
        let Some((src, tgt)) = self.endpoints(&b.source, &b.target, &scope)? else {
            return Ok(self.dependent_failure(&b.name, Kind::Functor));
        };
        let mut errors = Vec::new();
        let mut items = HashMap::new();
        let mut obj_map: Vec<Option<ObjId>> = vec![None; src.num_objects()];
        for (from, to) in &b.objects {
            let x = src.object_by_name(&from.text);
            let y = tgt.object_by_name(&to.text);
            if x.is_none() {
                errors.push(unresolved(from, "object", &format!("category `{}`", src.name())));
            }
            if y.is_none() {
                errors.push(unresolved(to, "object", &format!("category `{}`", tgt.name())));
            }
            if let (Some(x), Some(y)) = (x, y) {
                if obj_map[x.index()].replace(y).is_some() {
                    errors.push(Diagnostic::at(from.loc.clone(), format!("object `{}` mapped twice", from.text)));
                }
                items.insert(from.text.clone(), from.loc.clone());
            }
        }
        let mut mor_map: Vec<Option<MorId>> = vec![None; src.num_morphisms()];
        for (from, to) in &b.morphisms {
            let f = lookup_morphism(&src, &from.text);
            let g = lookup_morphism(&tgt, &to.text);
            if f.is_none() {
                errors.push(unresolved(from, "morphism", &format!("category `{}`", src.name())));
            }
            if g.is_none() {
                errors.push(unresolved(to, "morphism", &format!("category `{}`", tgt.name())));
            }
            if let (Some(f), Some(g)) = (f, g) {
                if mor_map[f.index()].replace(g).is_some() {
                    errors.push(Diagnostic::at(from.loc.clone(), format!("morphism `{}` mapped twice", from.text)));
                }
                items.insert(from.text.clone(), from.loc.clone());
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        let mut report = ValidationReport::new(format!("functor `{}`", b.name.text));
        for x in src.objects() {
            if obj_map[x.index()].is_none() {
                report.push(Law::FunctorShape, format!("no image for object `{}`", src.object_name(x)));
            }
        }
        for x in src.objects() {
            let id = src.identity(x);
            if mor_map[id.index()].is_none() {
                mor_map[id.index()] = obj_map[x.index()].map(|y| tgt.identity(y));
            }
        }
        for f in src.morphisms() {
            if mor_map[f.index()].is_none() {
                report.push(Law::FunctorShape, format!("no image for morphism `{}`", src.morphism_name(f)));
            }
        }
        let structure = if report.is_valid() {
            let f = Functor::from_maps(
                b.name.text.clone(),
                src,
                tgt,
                obj_map.into_iter().flatten().collect(),
                mor_map.into_iter().flatten().collect(),
            );
            report = validate_functor(&f);
            report.is_valid().then_some(Structure::Functor(f))
        } else {
            None
        };
        Ok(Entry {
            name: b.name.text.clone(),
            kind: Kind::Functor,
            structure,
            report,
            location: Some(b.name.loc.clone()),
            items,
        })
    }

    fn resolve_het(&self, b: &HetBlock) -> Result<Entry, Vec<Diagnostic>> {
        let scope = format!("het bifunctor `{}`", b.name.text);
        let Some((src, tgt)) = self.endpoints(&b.source, &b.target, &scope)? else {
            return Ok(self.dependent_failure(&b.name, Kind::Het));
        };
        let mut errors = Vec::new();
        let mut items = HashMap::new();
        let mut hb = HetBuilder::new(b.name.text.clone(), src.clone(), tgt.clone());
        let mut elem_index: HashMap<String, HetId> = HashMap::new();
        for d in &b.elems {
            let x = src.object_by_name(&d.source.text);
            let a = tgt.object_by_name(&d.target.text);
            if x.is_none() {
                errors.push(unresolved(&d.source, "object", &format!("category `{}`", src.name())));
            }
            if a.is_none() {
                errors.push(unresolved(&d.target, "object", &format!("category `{}`", tgt.name())));
            }
            let (Some(x), Some(a)) = (x, a) else { continue };
            for e in &d.elems {
                if let Some(prev) = items.insert(e.text.clone(), e.loc.clone()) {
                    errors.push(Diagnostic::at(
                        e.loc.clone(),
                        format!("duplicate het element `{}`, already declared at {prev}", e.text),
                    ));
                }
                let id = hb.add_elem(e.text.clone(), x, a);
                elem_index.entry(e.text.clone()).or_insert(id);
            }
        }
        let elem = |n: &Name, errors: &mut Vec<Diagnostic>| {
            let e = elem_index.get(&n.text).copied();
            if e.is_none() {
                errors.push(unresolved(n, "het element", &scope));
            }
            e
        };
        let mut post = Vec::new();
        for eq in &b.post {
            let u = lookup_morphism(&tgt, &eq.left.text);
            if u.is_none() {
                errors.push(unresolved(&eq.left, "morphism", &format!("category `{}`", tgt.name())));
            }
            let (e, r) = (elem(&eq.right, &mut errors), elem(&eq.result, &mut errors));
            if let (Some(u), Some(e), Some(r)) = (u, e, r) {
                items.insert(format!("{} . {}", eq.left.text, eq.right.text), eq.left.loc.clone());
                post.push((u, e, r));
            }
        }
        let mut pre = Vec::new();
        for eq in &b.pre {
            let f = lookup_morphism(&src, &eq.right.text);
            if f.is_none() {
                errors.push(unresolved(&eq.right, "morphism", &format!("category `{}`", src.name())));
            }
            let (e, r) = (elem(&eq.left, &mut errors), elem(&eq.result, &mut errors));
            if let (Some(f), Some(e), Some(r)) = (f, e, r) {
                items.insert(format!("{} . {}", eq.left.text, eq.right.text), eq.left.loc.clone());
                pre.push((e, f, r));
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        for (u, e, r) in post {
            hb.set_post(u, e, r);
        }
        for (e, f, r) in pre {
            hb.set_pre(e, f, r);
        }
        hb.fill_identity_actions();
        let (structure, report) = match hb.into_raw() {
            Ok(raw) => {
                let report = validate_het_bifunctor(&raw);
                let h = report
                    .is_valid()
                    .then(|| HetBifunctor::from_raw(raw).ok().map(|h| Structure::Het(Arc::new(h))))
                    .flatten();
                (h, report)
            }
            Err(report) => (None, report),
        };
        Ok(Entry {
            name: b.name.text.clone(),
            kind: Kind::Het,
            structure,
            report,
            location: Some(b.name.loc.clone()),
            items,
        })
    }
}

fn lookup_morphism(cat: &FinCategory, name: &str) -> Option<MorId> {
    cat.morphism_by_name(name).or_else(|| {
        let obj = name.strip_prefix("id_")?;
        cat.object_by_name(obj).map(|x| cat.identity(x))
    })
}

fn resolve_category(b: &CategoryBlock) -> Result<Entry, Vec<Diagnostic>> {
    let scope = format!("category `{}`", b.name.text);
    let mut errors = Vec::new();
    let mut items: HashMap<String, Location> = HashMap::new();
    let mut cb = CategoryBuilder::new(b.name.text.clone());
    // `morphism id_a: a -> a` places the identity of `a` explicitly; other
    // identities are implicit and come first
    let explicit: HashSet<&str> = b
        .morphisms
        .iter()
        .filter(|m| m.dom.text == m.cod.text && m.name.text.strip_prefix("id_") == Some(m.dom.text.as_str()))
        .map(|m| m.dom.text.as_str())
        .collect();
    let mut objects = Vec::new();
    for o in &b.objects {
        if let Some(prev) = items.insert(o.text.clone(), o.loc.clone()) {
            errors.push(Diagnostic::at(
                o.loc.clone(),
                format!("duplicate object `{}`, already declared at {prev}", o.text),
            ));
            continue;
        }
        objects.push(cb.add_object(o.text.clone()));
    }
    for (x, o) in objects.iter().zip(&b.objects) {
        if !explicit.contains(o.text.as_str()) {
            cb.add_identity(*x);
        }
    }
    let obj_index: HashMap<&str, ObjId> = b.objects.iter().map(|o| o.text.as_str()).zip(objects.iter().copied()).collect();
    let mut mor_index: HashMap<String, MorId> = cb
        .morphism_defs()
        .iter()
        .enumerate()
        .map(|(i, d)| (d.name.clone(), MorId(i as u32)))
        .collect();
    for m in &b.morphisms {
        let dom = obj_index.get(m.dom.text.as_str()).copied();
        let cod = obj_index.get(m.cod.text.as_str()).copied();
        if dom.is_none() {
            errors.push(unresolved(&m.dom, "object", &scope));
        }
        if cod.is_none() {
            errors.push(unresolved(&m.cod, "object", &scope));
        }
        if mor_index.contains_key(&m.name.text) {
            let prev = items.get(&m.name.text).map(|l| format!(", already declared at {l}")).unwrap_or_default();
            errors.push(Diagnostic::at(m.name.loc.clone(), format!("duplicate morphism `{}`{prev}", m.name.text)));
            continue;
        }
        if let (Some(d), Some(c)) = (dom, cod) {
            let f = cb.add_morphism(m.name.text.clone(), d, c);
            mor_index.insert(m.name.text.clone(), f);
            if d == c && explicit.contains(m.dom.text.as_str()) && m.name.text.strip_prefix("id_") == Some(m.dom.text.as_str()) {
                cb.set_identity(d, f);
            }
            items.insert(m.name.text.clone(), m.name.loc.clone());
        }
    }
    for eq in &b.compose {
        let mut get = |n: &Name| {
            let m = mor_index.get(&n.text).copied();
            if m.is_none() {
                errors.push(unresolved(n, "morphism", &scope));
            }
            m
        };
        let (g, f, h) = (get(&eq.left), get(&eq.right), get(&eq.result));
        if let (Some(g), Some(f), Some(h)) = (g, f, h) {
            let key = format!("{} . {}", eq.left.text, eq.right.text);
            if let Some(prev) = items.insert(key.clone(), eq.left.loc.clone()) {
                errors.push(Diagnostic::at(
                    eq.left.loc.clone(),
                    format!("composite `{key}` given twice, first at {prev}"),
                ));
            }
            cb.set_compose(g, f, h);
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    cb.fill_identity_composites();
    let (structure, report) = match cb.into_raw() {
        Ok(raw) => {
            let report = validate_category(&raw);
            let c = report
                .is_valid()
                .then(|| FinCategory::from_raw(raw).ok().map(|c| Structure::Category(Arc::new(c))))
                .flatten();
            (c, report)
        }
        Err(report) => (None, report),
    };
    Ok(Entry {
        name: b.name.text.clone(),
        kind: Kind::Category,
        structure,
        report,
        location: Some(b.name.loc.clone()),
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const WALK: &str = "
category C {
  objects: a b
  morphism f: a -> b
}
category D {
  objects: x
  morphism e: x -> x
  compose e . e = e
}
functor F: C -> D { object a => x; object b => x; morphism f => e }
het H: C ~> D {
  elems (a,x): s t
  elems (b,x): u
  post e . s = s; post e . t = t; post e . u = u
  pre u . f = t
}
";

    #[test]
    fn resolves_and_validates() {
        let ws = Workspace::parse(&[("w.hc", WALK)]).unwrap();
        assert!(ws.validation_errors().is_empty(), "{:?}", ws.validation_errors());
        let c = ws.category("C").unwrap();
        assert_eq!(c.num_morphisms(), 3);
        assert_eq!(ws.functor("F").unwrap().ob(c.lookup_object("b").unwrap()).0, 0);
        assert_eq!(ws.het("H").unwrap().num_elems(), 3);
        assert!(ws.category("F").is_err());
    }

    #[test]
    fn one_object_category_has_its_identity() {
        let ws = Workspace::parse(&[("one.hc", "category One { objects: o }")]).unwrap();
        let c = ws.category("One").unwrap();
        assert_eq!((c.num_objects(), c.num_morphisms()), (1, 1));
        assert_eq!(c.morphism_name(c.identity(ObjId(0))), "id_o");
    }

    #[test]
    fn missing_action_is_an_incomplete_table_at_its_block() {
        let src = WALK.replace("post e . u = u", "");
        let ws = Workspace::parse(&[("w.hc", &src)]).unwrap();
        let errs = ws.validation_errors();
        assert!(!errs.is_empty());
        assert!(errs[0].message.contains("incomplete action table"), "{}", errs[0]);
        assert!(errs[0].location.is_some());
    }

    #[test]
    fn reference_errors_carry_locations() {
        let src = WALK.replace("pre u . f = t", "pre u . g = t").replace("functor F: C -> D", "functor F: C -> E");
        let errs = Workspace::parse(&[("w.hc", &src)]).unwrap_err();
        assert_eq!(errs.len(), 2);
        assert!(errs.iter().all(|e| e.location.is_some()));
        assert!(errs.iter().any(|e| e.message.contains("unresolved category `E`")));
        let dup = format!("{WALK}\ncategory C {{ objects: z }}");
        assert!(Workspace::parse(&[("w.hc", &dup)]).unwrap_err()[0].message.contains("duplicate name `C`"));
    }

    #[test]
    fn broken_associativity_names_the_triple() {
        let broken = "
category M {
  objects: o
  morphisms a, b: o -> o
  compose a . a = a; compose a . b = b; compose b . a = a; compose b . b = a
}";
        let ws = Workspace::parse(&[("m.hc", broken)]).unwrap();
        let errs = ws.validation_errors();
        assert!(errs.iter().any(|e| e.message.contains("associativity")), "{errs:?}");
    }
}
