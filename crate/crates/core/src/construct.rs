//! Opposite, product and full-subcategory constructions.

use std::sync::Arc;

use crate::category::{FinCategory, MorId, MorphismDef, ObjId, RawCategory};
use crate::error::{Error, Result};
use crate::functor::Functor;

/// Same objects and morphisms with endpoints swapped; `g ∘op f = f ∘ g`.
pub fn opposite(cat: &FinCategory) -> FinCategory {
    let objects: Vec<String> = cat.objects().map(|x| cat.object_name(x).to_string()).collect();
    let morphisms = cat
        .morphisms()
        .map(|f| {
            let m = cat.morphism(f);
            MorphismDef {
                name: m.name.clone(),
                dom: m.cod,
                cod: m.dom,
            }
        })
        .collect();
    let identities = cat.objects().map(|x| Some(cat.identity(x))).collect();
    let mut raw = RawCategory::new(format!("{}^op", cat.name()), objects, morphisms, identities);
    raw.fill_with(|g, f| cat.comp(f, g));
    FinCategory::from_raw(raw).expect("opposite of a valid category is valid")
}

/// Objects `(c,d)` and morphisms `(f,g)`, both ordered with the left factor
/// major. Identities are named `id_(c,d)`.
pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let mut objects = Vec::with_capacity(c.num_objects() * d.num_objects());
    for x in c.objects() {
        for y in d.objects() {
            objects.push(format!("({},{})", c.object_name(x), d.object_name(y)));
        }
    }
    let mut morphisms = Vec::with_capacity(c.num_morphisms() * d.num_morphisms());
    for f in c.morphisms() {
        for g in d.morphisms() {
            let dom = product_object(d, c.dom(f), d.dom(g));
            let cod = product_object(d, c.cod(f), d.cod(g));
            let name = if c.is_identity(f) && d.is_identity(g) {
                format!("id_{}", objects[dom.index()])
            } else {
                format!("({},{})", c.morphism_name(f), d.morphism_name(g))
            };
            morphisms.push(MorphismDef { name, dom, cod });
        }
    }
    let identities = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| Some(product_morphism(d, c.identity(x), d.identity(y))))
        .collect();
    let mut raw = RawCategory::new(format!("{}x{}", c.name(), d.name()), objects, morphisms, identities);
    raw.fill_with(|g, f| {
        let (g1, g2) = split_morphism(d, g);
        let (f1, f2) = split_morphism(d, f);
        product_morphism(d, c.comp(g1, f1), d.comp(g2, f2))
    });
    FinCategory::from_raw(raw).expect("product of valid categories is valid")
}

/// Index of `(x, y)` in `product(c, d)`; only the right factor's size matters.
#[inline]
pub fn product_object(d: &FinCategory, x: ObjId, y: ObjId) -> ObjId {
    ObjId(x.0 * d.num_objects() as u32 + y.0)
}

#[inline]
pub fn product_morphism(d: &FinCategory, f: MorId, g: MorId) -> MorId {
    MorId(f.0 * d.num_morphisms() as u32 + g.0)
}

#[inline]
pub fn split_object(d: &FinCategory, p: ObjId) -> (ObjId, ObjId) {
    let n = d.num_objects() as u32;
    (ObjId(p.0 / n), ObjId(p.0 % n))
}

#[inline]
pub fn split_morphism(d: &FinCategory, p: MorId) -> (MorId, MorId) {
    let n = d.num_morphisms() as u32;
    (MorId(p.0 / n), MorId(p.0 % n))
}

/// `Δ: C → C×C`, where `square` must be `product(cat, cat)`.
pub fn diagonal(cat: &Arc<FinCategory>, square: &Arc<FinCategory>) -> Result<Functor> {
    if square.num_objects() != cat.num_objects().pow(2) || square.num_morphisms() != cat.num_morphisms().pow(2) {
        return Err(Error::Shape(format!("`{}` is not the square of `{}`", square.name(), cat.name())));
    }
    let functor = Functor::from_maps(
        "Delta",
        cat.clone(),
        square.clone(),
        cat.objects().map(|x| product_object(cat, x, x)).collect(),
        cat.morphisms().map(|f| product_morphism(cat, f, f)).collect(),
    );
    let report = crate::functor::validate_functor(&functor);
    if report.is_valid() {
        Ok(functor)
    } else {
        Err(Error::Invalid(report))
    }
}

/// The full subcategory on `objs` (kept in the given order) with its inclusion.
pub fn full_subcategory(
    cat: &Arc<FinCategory>,
    objs: &[ObjId],
    name: impl Into<String>,
) -> Result<(Arc<FinCategory>, Functor)> {
    let mut new_index = vec![u32::MAX; cat.num_objects()];
    for (i, &x) in objs.iter().enumerate() {
        if x.index() >= cat.num_objects() {
            return Err(Error::Shape(format!("object {x} is not in `{}`", cat.name())));
        }
        if new_index[x.index()] != u32::MAX {
            return Err(Error::Shape(format!("object `{}` listed twice", cat.object_name(x))));
        }
        new_index[x.index()] = i as u32;
    }
    let kept: Vec<MorId> = cat
        .morphisms()
        .filter(|&f| new_index[cat.dom(f).index()] != u32::MAX && new_index[cat.cod(f).index()] != u32::MAX)
        .collect();
    let mut new_mor = vec![u32::MAX; cat.num_morphisms()];
    for (i, &f) in kept.iter().enumerate() {
        new_mor[f.index()] = i as u32;
    }
    let objects = objs.iter().map(|&x| cat.object_name(x).to_string()).collect();
    let morphisms = kept
        .iter()
        .map(|&f| MorphismDef {
            name: cat.morphism_name(f).to_string(),
            dom: ObjId(new_index[cat.dom(f).index()]),
            cod: ObjId(new_index[cat.cod(f).index()]),
        })
        .collect();
    let identities = objs.iter().map(|&x| Some(MorId(new_mor[cat.identity(x).index()]))).collect();
    let mut raw = RawCategory::new(name, objects, morphisms, identities);
    raw.fill_with(|g, f| MorId(new_mor[cat.comp(kept[g.index()], kept[f.index()]).index()]));
    let sub = Arc::new(FinCategory::from_raw(raw).expect("full subcategory of a valid category is valid"));
    let inclusion = Functor::from_maps(
        format!("incl_{}", sub.name()),
        sub.clone(),
        cat.clone(),
        objs.to_vec(),
        kept,
    );
    Ok((sub, inclusion))
}
