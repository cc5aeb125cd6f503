//! Workspace to DSL text. Identities are written out only when they do not
//! lead the morphism list, and always come back as `id_<object>`.

use std::fmt::Write as _;

use hetcat::construct::product;
use hetcat::{FinCategory, Functor, HetBifunctor, HetId, MorId};

use crate::diag::Diagnostic;
use crate::lexer::is_bare_name;
use crate::workspace::{Structure, Workspace};

fn quote(name: &str) -> Result<String, Diagnostic> {
    if is_bare_name(name) {
        Ok(name.to_string())
    } else if name.contains('\n') || name.is_empty() {
        Err(Diagnostic::about(format!("`{name}`"), "name cannot be written in the DSL"))
    } else {
        Ok(format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\"")))
    }
}

/// Names with identities replaced by their implicit `id_<object>` form.
fn morphism_names(cat: &FinCategory) -> Result<Vec<String>, Diagnostic> {
    cat.morphisms()
        .map(|f| {
            if cat.is_identity(f) {
                quote(&format!("id_{}", cat.object_name(cat.dom(f))))
            } else {
                quote(cat.morphism_name(f))
            }
        })
        .collect()
}

fn object_names(cat: &FinCategory) -> Result<Vec<String>, Diagnostic> {
    cat.objects().map(|x| quote(cat.object_name(x))).collect()
}

fn non_identities(cat: &FinCategory) -> impl Iterator<Item = MorId> + '_ {
    cat.morphisms().filter(|&f| !cat.is_identity(f))
}

pub fn write_category(out: &mut String, cat: &FinCategory) -> Result<(), Diagnostic> {
    let objs = object_names(cat)?;
    let mors = morphism_names(cat)?;
    let _ = writeln!(out, "category {} {{", quote(cat.name())?);
    let _ = writeln!(out, "  objects: {}", objs.join(" "));
    // identities stay implicit only where the parser would put them
    let leading = cat.objects().all(|x| cat.identity(x).index() == x.index());
    let declared = cat.morphisms().filter(|&f| !leading || !cat.is_identity(f));
    for f in declared {
        let _ = writeln!(
            out,
            "  morphism {}: {} -> {}",
            mors[f.index()],
            objs[cat.dom(f).index()],
            objs[cat.cod(f).index()]
        );
    }
    for g in non_identities(cat) {
        for &f in cat.morphisms_into(cat.dom(g)) {
            if !cat.is_identity(f) {
                let h = cat.comp(g, f);
                let _ = writeln!(out, "  compose {} . {} = {}", mors[g.index()], mors[f.index()], mors[h.index()]);
            }
        }
    }
    out.push_str("}\n");
    Ok(())
}

pub fn write_functor(out: &mut String, f: &Functor) -> Result<(), Diagnostic> {
    let (s, t) = (f.source(), f.target());
    let (so, to) = (object_names(s)?, object_names(t)?);
    let (sm, tm) = (morphism_names(s)?, morphism_names(t)?);
    let _ = writeln!(out, "functor {}: {} -> {} {{", quote(f.name())?, quote(s.name())?, quote(t.name())?);
    for x in s.objects() {
        let _ = writeln!(out, "  object {} => {}", so[x.index()], to[f.ob(x).index()]);
    }
    for m in non_identities(s) {
        let _ = writeln!(out, "  morphism {} => {}", sm[m.index()], tm[f.mor(m).index()]);
    }
    out.push_str("}\n");
    Ok(())
}

/// `name` as one half of an `(x,a)` pair, if it can be written that way.
fn pair_part(name: &str) -> Option<&str> {
    if !is_bare_name(name) {
        return None;
    }
    let mut depth = 0i32;
    for c in name.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return None,
            _ => {}
        }
    }
    Some(name)
}

pub fn write_het(out: &mut String, h: &HetBifunctor) -> Result<(), Diagnostic> {
    let (xs, xa) = (h.source(), h.target());
    let (sm, tm) = (morphism_names(xs)?, morphism_names(xa)?);
    let elems: Vec<String> = h.elems().map(|e| quote(h.elem_name(e))).collect::<Result<_, _>>()?;
    let _ = writeln!(out, "het {}: {} ~> {} {{", quote(h.name())?, quote(xs.name())?, quote(xa.name())?);
    for x in xs.objects() {
        for a in xa.objects() {
            let set = h.het_set(x, a);
            if set.is_empty() {
                continue;
            }
            let names: Vec<&str> = set.iter().map(|e| elems[e.index()].as_str()).collect();
            let (xn, an) = (xs.object_name(x), xa.object_name(a));
            match (pair_part(xn), pair_part(an)) {
                (Some(xp), Some(ap)) => {
                    let _ = writeln!(out, "  elems ({xp},{ap}): {}", names.join(" "));
                }
                _ => {
                    let _ = writeln!(out, "  elems {}, {}: {}", quote(xn)?, quote(an)?, names.join(" "));
                }
            }
        }
    }
    // het-set order, which is also the order elements are declared in
    let order: Vec<HetId> = xs
        .objects()
        .flat_map(|x| xa.objects().flat_map(move |a| h.het_set(x, a).iter().copied()))
        .collect();
    for &e in &order {
        for &u in xa.morphisms_from(h.elem_target(e)) {
            if !xa.is_identity(u) {
                let r = h.post(u, e);
                let _ = writeln!(out, "  post {} . {} = {}", tm[u.index()], elems[e.index()], elems[r.index()]);
            }
        }
    }
    for &e in &order {
        for &g in xs.morphisms_into(h.elem_source(e)) {
            if !xs.is_identity(g) {
                let r = h.pre(e, g);
                let _ = writeln!(out, "  pre {} . {} = {}", elems[e.index()], sm[g.index()], elems[r.index()]);
            }
        }
    }
    out.push_str("}\n");
    Ok(())
}

/// Earlier categories `(C, D)` such that `cat` is exactly `C × D`.
fn as_product<'a>(ws: &'a Workspace, before: usize, cat: &FinCategory) -> Option<(&'a FinCategory, &'a FinCategory)> {
    let cats: Vec<&FinCategory> = ws.entries()[..before]
        .iter()
        .filter_map(|e| match &e.structure {
            Some(Structure::Category(c)) => Some(&**c),
            _ => None,
        })
        .collect();
    for &c in &cats {
        for &d in &cats {
            if c.num_objects() * d.num_objects() == cat.num_objects()
                && c.num_morphisms() * d.num_morphisms() == cat.num_morphisms()
                && product(c, d).same_structure(cat)
            {
                return Some((c, d));
            }
        }
    }
    None
}

/// DSL text for every valid structure of the workspace, in definition order.
/// Categories that are products of earlier ones are written as
/// `category P = C * D`.
pub fn to_dsl(ws: &Workspace) -> Result<String, Diagnostic> {
    let mut out = String::new();
    for (i, e) in ws.entries().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match &e.structure {
            Some(Structure::Category(c)) => match as_product(ws, i, c) {
                Some((l, r)) => {
                    let _ = writeln!(out, "category {} = {} * {}", quote(c.name())?, quote(l.name())?, quote(r.name())?);
                }
                None => write_category(&mut out, c)?,
            },
            Some(Structure::Functor(f)) => write_functor(&mut out, f)?,
            Some(Structure::Het(h)) => write_het(&mut out, h)?,
            None => return Err(Diagnostic::about(format!("{} `{}`", e.kind, e.name), "cannot serialize an invalid structure")),
        }
    }
    Ok(out)
}

/// Whether two workspaces hold the same names and kinds with structures
/// that agree up to canonical renaming.
pub fn isomorphic_workspaces(a: &Workspace, b: &Workspace) -> bool {
    a.entries().len() == b.entries().len()
        && a.entries().iter().all(|ea| {
            let Some(eb) = b.entry(&ea.name) else { return false };
            match (&ea.structure, &eb.structure) {
                (Some(Structure::Category(x)), Some(Structure::Category(y))) => x.same_up_to_renaming(y),
                (Some(Structure::Het(x)), Some(Structure::Het(y))) => x.same_up_to_renaming(y),
                (Some(Structure::Functor(x)), Some(Structure::Functor(y))) => {
                    match (x.source().renaming_to(y.source()), x.target().renaming_to(y.target())) {
                        (Some(s), Some(t)) => {
                            x.obj_map() == y.obj_map()
                                && x.source().morphisms().all(|m| t[x.mor(m).index()] == y.mor(s[m.index()]))
                        }
                        _ => false,
                    }
                }
                _ => false,
            }
        })
}
