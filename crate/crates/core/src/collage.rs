//! The collage of a het bifunctor: one category holding `X`, `A` and the hets
//! as morphisms `x ⇒ a`, with no morphisms back from `A` to `X`.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{FinCategory, MorId, MorphismDef, ObjId, RawCategory};
use crate::error::{Error, Result};
use crate::het::{HetBifunctor, HetDef, HetId, RawHet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CollageSide {
    X,
    A,
}

/// Where a collage morphism came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorOrigin {
    Source(MorId),
    Target(MorId),
    Het(HetId),
}

#[derive(Debug, Clone)]
pub struct CollageCategory {
    pub category: Arc<FinCategory>,
    /// Side of each object.
    pub sides: Vec<CollageSide>,
    /// Index of each object within its side.
    pub obj_origin: Vec<ObjId>,
    pub mor_origin: Vec<MorOrigin>,
}

const X_PREFIX: &str = "x_";
const A_PREFIX: &str = "a_";
const H_PREFIX: &str = "h_";

fn strip<'a>(name: &'a str, prefix: &str) -> &'a str {
    name.strip_prefix(prefix).unwrap_or(name)
}

/// Objects of `X` then of `A`; morphisms of `X`, of `A`, then the hets, with
/// names prefixed `x_`, `a_` and `h_`.
pub fn build_collage(h: &HetBifunctor) -> Result<CollageCategory> {
    let (xs, xa) = (h.source(), h.target());
    let nx = xs.num_objects();
    let (mx, ma) = (xs.num_morphisms(), xa.num_morphisms());
    let mut objects = Vec::with_capacity(nx + xa.num_objects());
    objects.extend(xs.objects().map(|x| format!("{X_PREFIX}{}", xs.object_name(x))));
    objects.extend(xa.objects().map(|a| format!("{A_PREFIX}{}", xa.object_name(a))));
    let a_obj = |a: ObjId| ObjId((nx + a.index()) as u32);
    let mut morphisms = Vec::with_capacity(mx + ma + h.num_elems());
    let mut origin = Vec::with_capacity(morphisms.capacity());
    for f in xs.morphisms() {
        morphisms.push(MorphismDef {
            name: format!("{X_PREFIX}{}", xs.morphism_name(f)),
            dom: xs.dom(f),
            cod: xs.cod(f),
        });
        origin.push(MorOrigin::Source(f));
    }
    for f in xa.morphisms() {
        morphisms.push(MorphismDef {
            name: format!("{A_PREFIX}{}", xa.morphism_name(f)),
            dom: a_obj(xa.dom(f)),
            cod: a_obj(xa.cod(f)),
        });
        origin.push(MorOrigin::Target(f));
    }
    for e in h.elems() {
        morphisms.push(MorphismDef {
            name: format!("{H_PREFIX}{}", h.elem_name(e)),
            dom: h.elem_source(e),
            cod: a_obj(h.elem_target(e)),
        });
        origin.push(MorOrigin::Het(e));
    }
    let identities = xs
        .objects()
        .map(|x| Some(xs.identity(x)))
        .chain(xa.objects().map(|a| Some(MorId((mx + xa.identity(a).index()) as u32))))
        .collect();
    let mut raw = RawCategory::new(format!("Collage({})", h.name()), objects, morphisms, identities);
    let src = |f: MorId| MorId(f.0);
    let tgt = |f: MorId| MorId((mx + f.index()) as u32);
    let het = |e: HetId| MorId((mx + ma + e.index()) as u32);
    raw.fill_with(|g, f| match (origin[g.index()], origin[f.index()]) {
        (MorOrigin::Source(g), MorOrigin::Source(f)) => src(xs.comp(g, f)),
        (MorOrigin::Target(g), MorOrigin::Target(f)) => tgt(xa.comp(g, f)),
        (MorOrigin::Het(e), MorOrigin::Source(f)) => het(h.pre(e, f)),
        (MorOrigin::Target(g), MorOrigin::Het(e)) => het(h.post(g, e)),
        _ => unreachable!("no other pairs are composable in a collage"),
    });
    let category = Arc::new(FinCategory::from_raw(raw).map_err(Error::Invalid)?);
    let sides = (0..nx)
        .map(|_| CollageSide::X)
        .chain(xa.objects().map(|_| CollageSide::A))
        .collect();
    let obj_origin = xs.objects().chain(xa.objects()).collect();
    Ok(CollageCategory {
        category,
        sides,
        obj_origin,
        mor_origin: origin,
    })
}

impl CollageCategory {
    /// Reads provenance off a side partition of an arbitrary category.
    /// Morphisms from an `A`-side object to an `X`-side object are rejected.
    pub fn from_partition(category: Arc<FinCategory>, sides: Vec<CollageSide>) -> Result<CollageCategory> {
        if sides.len() != category.num_objects() {
            return Err(Error::Shape(format!(
                "partition lists {} objects but `{}` has {}",
                sides.len(),
                category.name(),
                category.num_objects()
            )));
        }
        let mut counts = [0u32; 2];
        let obj_origin: Vec<ObjId> = sides
            .iter()
            .map(|&s| {
                let c = &mut counts[s as usize];
                *c += 1;
                ObjId(*c - 1)
            })
            .collect();
        let mut mor_counts = [0u32; 3];
        let mut mor_origin = Vec::with_capacity(category.num_morphisms());
        for f in category.morphisms() {
            let (d, c) = (sides[category.dom(f).index()], sides[category.cod(f).index()]);
            let (slot, make): (usize, fn(u32) -> MorOrigin) = match (d, c) {
                (CollageSide::X, CollageSide::X) => (0, |i| MorOrigin::Source(MorId(i))),
                (CollageSide::A, CollageSide::A) => (1, |i| MorOrigin::Target(MorId(i))),
                (CollageSide::X, CollageSide::A) => (2, |i| MorOrigin::Het(HetId(i))),
                (CollageSide::A, CollageSide::X) => {
                    return Err(Error::NotACollage(format!(
                        "morphism `{}` goes from the A side back to the X side",
                        category.morphism_name(f)
                    )))
                }
            };
            mor_origin.push(make(mor_counts[slot]));
            mor_counts[slot] += 1;
        }
        Ok(CollageCategory {
            category,
            sides,
            obj_origin,
            mor_origin,
        })
    }

    fn side_objects(&self, side: CollageSide) -> Vec<ObjId> {
        self.category.objects().filter(|o| self.sides[o.index()] == side).collect()
    }

    /// Full subcategory on one side, with the collage prefixes removed from
    /// names. Returns it with the collage morphism behind each of its
    /// morphisms.
    fn side_category(&self, side: CollageSide) -> Result<(Arc<FinCategory>, Vec<MorId>)> {
        let c = &self.category;
        let prefix = if side == CollageSide::X { X_PREFIX } else { A_PREFIX };
        let objs = self.side_objects(side);
        let kept: Vec<MorId> = c
            .morphisms()
            .filter(|&f| self.sides[c.dom(f).index()] == side && self.sides[c.cod(f).index()] == side)
            .collect();
        let mut local = vec![u32::MAX; c.num_morphisms()];
        for (i, &f) in kept.iter().enumerate() {
            local[f.index()] = i as u32;
        }
        let objects = objs.iter().map(|&o| strip(c.object_name(o), prefix).to_string()).collect();
        let morphisms = kept
            .iter()
            .map(|&f| MorphismDef {
                name: strip(c.morphism_name(f), prefix).to_string(),
                dom: self.obj_origin[c.dom(f).index()],
                cod: self.obj_origin[c.cod(f).index()],
            })
            .collect();
        let identities = objs.iter().map(|&o| Some(MorId(local[c.identity(o).index()]))).collect();
        let name = match side {
            CollageSide::X => "X",
            CollageSide::A => "A",
        };
        let mut raw = RawCategory::new(name, objects, morphisms, identities);
        raw.fill_with(|g, f| MorId(local[c.comp(kept[g.index()], kept[f.index()]).index()]));
        let cat = FinCategory::from_raw(raw).map_err(Error::Invalid)?;
        Ok((Arc::new(cat), kept))
    }
}

/// Recovers `X`, `A` and the het bifunctor from a collage.
pub fn extract_het_from_collage(c: &CollageCategory) -> Result<(Arc<FinCategory>, Arc<FinCategory>, HetBifunctor)> {
    let cat = &c.category;
    for f in cat.morphisms() {
        if c.sides[cat.dom(f).index()] == CollageSide::A && c.sides[cat.cod(f).index()] == CollageSide::X {
            return Err(Error::NotACollage(format!(
                "morphism `{}` goes from the A side back to the X side",
                cat.morphism_name(f)
            )));
        }
    }
    let (xs, xmors) = c.side_category(CollageSide::X)?;
    let (xa, amors) = c.side_category(CollageSide::A)?;
    let hets: Vec<MorId> = cat
        .morphisms()
        .filter(|&f| c.sides[cat.dom(f).index()] == CollageSide::X && c.sides[cat.cod(f).index()] == CollageSide::A)
        .collect();
    let mut het_of = vec![u32::MAX; cat.num_morphisms()];
    for (i, &f) in hets.iter().enumerate() {
        het_of[f.index()] = i as u32;
    }
    let elems = hets
        .iter()
        .map(|&f| HetDef {
            name: strip(cat.morphism_name(f), H_PREFIX).to_string(),
            source: c.obj_origin[cat.dom(f).index()],
            target: c.obj_origin[cat.cod(f).index()],
        })
        .collect();
    let name = cat
        .name()
        .strip_prefix("Collage(")
        .and_then(|n| n.strip_suffix(')'))
        .unwrap_or(cat.name())
        .to_string();
    let mut raw = RawHet::new(name, xs.clone(), xa.clone(), elems);
    raw.fill_post_with(|h, e| HetId(het_of[cat.comp(amors[h.index()], hets[e.index()]).index()]));
    raw.fill_pre_with(|e, g| HetId(het_of[cat.comp(hets[e.index()], xmors[g.index()]).index()]));
    let h = HetBifunctor::from_raw(raw).map_err(Error::Invalid)?;
    Ok((xs, xa, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategoryBuilder;

    fn arrow() -> Arc<FinCategory> {
        let mut b = CategoryBuilder::new("2");
        let x = b.add_object("p");
        let y = b.add_object("q");
        b.add_identity(x);
        b.add_identity(y);
        b.add_morphism("f", x, y);
        b.fill_identity_composites();
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn hom_collage_round_trips() {
        let c = arrow();
        let h = HetBifunctor::hom(&c);
        let col = build_collage(&h).unwrap();
        assert_eq!(col.category.num_objects(), 4);
        assert_eq!(col.category.num_morphisms(), 3 + 3 + 3);
        let (xs, xa, back) = extract_het_from_collage(&col).unwrap();
        assert!(xs.same_up_to_renaming(&c) && xa.same_up_to_renaming(&c));
        assert!(back.same_up_to_renaming(&h));
        assert_eq!(back.elem_name(HetId(2)), h.elem_name(HetId(2)));
    }

    #[test]
    fn backward_morphism_is_rejected() {
        let c = arrow();
        let err = CollageCategory::from_partition(c, vec![CollageSide::A, CollageSide::X]).unwrap_err();
        assert!(matches!(err, Error::NotACollage(_)));
    }
}
