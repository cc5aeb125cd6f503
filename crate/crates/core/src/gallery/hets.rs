//! Het bifunctors whose elements are tuples of morphisms of a base category
//! (cones, cocones, functions into underlying sets) or bilinear maps.

use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::finfield::Matrix;
use crate::gallery::finvect::FinVect;
use crate::het::{HetBifunctor, HetDef, HetId, RawHet};

/// Het bifunctor whose elements at `(x, a)` are tuples `[m1, .., mk]` of
/// morphisms of `base`, slot `i` ranging over the hom-set `slots(x, a)[i]`.
/// The actions act slotwise through `post` and `pre`.
#[allow(clippy::too_many_arguments)]
pub fn tuple_het(
    name: &str,
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
    base: &FinCategory,
    budget: &Budget,
    slots: impl Fn(ObjId, ObjId) -> Vec<(ObjId, ObjId)>,
    post: impl Fn(MorId, usize, MorId) -> MorId,
    pre: impl Fn(usize, MorId, MorId) -> MorId,
) -> Result<HetBifunctor> {
    let na = target.num_objects();
    let mut first = vec![0u32; source.num_objects() * na];
    let mut shapes = vec![Vec::new(); source.num_objects() * na];
    let mut total = 0usize;
    for x in source.objects() {
        for a in target.objects() {
            let k = x.index() * na + a.index();
            first[k] = total as u32;
            shapes[k] = slots(x, a);
            let size: usize = shapes[k].iter().map(|&(d, c)| base.hom_set(d, c).len()).product();
            total += size;
            budget.check_het_size(name, total)?;
        }
    }
    let mut elems = Vec::with_capacity(total);
    let mut comps: Vec<Vec<MorId>> = Vec::with_capacity(total);
    for x in source.objects() {
        for a in target.objects() {
            let homs: Vec<&[MorId]> = shapes[x.index() * na + a.index()]
                .iter()
                .map(|&(d, c)| base.hom_set(d, c))
                .collect();
            for tuple in cartesian(&homs) {
                let names: Vec<&str> = tuple.iter().map(|&m| base.morphism_name(m)).collect();
                elems.push(HetDef {
                    name: format!("[{}]", names.join(",")),
                    source: x,
                    target: a,
                });
                comps.push(tuple);
            }
        }
    }
    let index_of = |x: ObjId, a: ObjId, tuple: &[MorId]| {
        let k = x.index() * na + a.index();
        let mut idx = 0u32;
        for (i, &m) in tuple.iter().enumerate() {
            let (d, c) = shapes[k][i];
            debug_assert_eq!((base.dom(m), base.cod(m)), (d, c), "slot action left its hom-set");
            idx = idx * base.hom_set(d, c).len() as u32 + base.local_index(m) as u32;
        }
        HetId(first[k] + idx)
    };
    let mut raw = RawHet::new(name, source.clone(), target.clone(), elems);
    let defs: Vec<(ObjId, ObjId)> = raw.elems().iter().map(|d| (d.source, d.target)).collect();
    raw.fill_post_with(|h, e| {
        let t: Vec<MorId> = comps[e.index()].iter().enumerate().map(|(i, &m)| post(h, i, m)).collect();
        index_of(defs[e.index()].0, target.cod(h), &t)
    });
    raw.fill_pre_with(|e, g| {
        let t: Vec<MorId> = comps[e.index()].iter().enumerate().map(|(i, &m)| pre(i, m, g)).collect();
        index_of(source.dom(g), defs[e.index()].1, &t)
    });
    HetBifunctor::from_raw(raw).map_err(Error::Invalid)
}

/// Lexicographic product of the lists, first list most significant.
fn cartesian(lists: &[&[MorId]]) -> Vec<Vec<MorId>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&m| {
                    let mut t = prefix.clone();
                    t.push(m);
                    t
                })
            })
            .collect();
    }
    out
}

/// Bilinear maps `V_a × V_b → V_c` as hets from pairs `⟨V_a, V_b⟩` of the
/// square of `pairs` (a FinVect) to `spaces` (another FinVect over the same
/// field). A map is stored by its values on basis pairs: entry
/// `(i * b + j) * c + r` is coordinate `r` of `β(e_i, e_j)`.
pub fn bilinear_het(
    name: &str,
    pairs: &FinVect,
    square: &Arc<FinCategory>,
    spaces: &FinVect,
    budget: &Budget,
) -> Result<HetBifunctor> {
    let field = pairs.field();
    if field != spaces.field() {
        return Err(Error::Shape("bilinear hets need a single field".into()));
    }
    let p = field.order() as u64;
    let pc = pairs.category();
    let target = spaces.category();
    let na = target.num_objects();
    let split = |x: ObjId| crate::construct::split_object(pc, x);
    let mut first = vec![0u32; square.num_objects() * na];
    let mut total = 0u64;
    for x in square.objects() {
        let (a, b) = split(x);
        for c in target.objects() {
            first[x.index() * na + c.index()] = total as u32;
            total += p.pow((a.index() * b.index() * c.index()) as u32);
            budget.check_het_size(name, total as usize)?;
        }
    }
    let mut elems = Vec::with_capacity(total as usize);
    for x in square.objects() {
        let (a, b) = split(x);
        for c in target.objects() {
            let len = a.index() * b.index() * c.index();
            for code in 0..p.pow(len as u32) {
                let digits = Matrix::from_code(1, len, code, field).data;
                let mut nm = format!("bl{}{}{}", a.index(), b.index(), c.index());
                if !digits.is_empty() {
                    nm.push('_');
                    nm.extend(digits.iter().map(|d| char::from(b'0' + d)));
                }
                elems.push(HetDef {
                    name: nm,
                    source: x,
                    target: c,
                });
            }
        }
    }
    let mut raw = RawHet::new(name, square.clone(), target.clone(), elems);
    let defs: Vec<(ObjId, ObjId)> = raw.elems().iter().map(|d| (d.source, d.target)).collect();
    let values = |e: HetId| {
        let (x, c) = defs[e.index()];
        let (a, b) = split(x);
        let len = a.index() * b.index() * c.index();
        Matrix::from_code(1, len, (e.0 - first[x.index() * na + c.index()]) as u64, field).data
    };
    let encode = |x: ObjId, c: ObjId, data: &[u8]| {
        let code = data.iter().fold(0u64, |acc, &d| acc * p + d as u64);
        HetId(first[x.index() * na + c.index()] + code as u32)
    };
    raw.fill_post_with(|h, e| {
        let (x, c) = defs[e.index()];
        let (a, b) = split(x);
        let m = spaces.matrix(h);
        let v = values(e);
        let mut out = Vec::with_capacity(a.index() * b.index() * m.rows);
        for pair in 0..a.index() * b.index() {
            out.extend(m.apply(&v[pair * c.index()..(pair + 1) * c.index()], field));
        }
        encode(x, target.cod(h), &out)
    });
    raw.fill_pre_with(|e, g| {
        let (x, c) = defs[e.index()];
        let (a, b) = split(x);
        let (f1, f2) = crate::construct::split_morphism(pc, g);
        let (m1, m2) = (pairs.matrix(f1), pairs.matrix(f2));
        let (a2, b2) = (m1.cols, m2.cols);
        let v = values(e);
        let cd = c.index();
        let mut out = vec![0u8; a2 * b2 * cd];
        for i in 0..a2 {
            for j in 0..b2 {
                for k in 0..a.index() {
                    for l in 0..b.index() {
                        let coeff = field.mul(m1.get(k, i), m2.get(l, j));
                        if coeff == 0 {
                            continue;
                        }
                        for r in 0..cd {
                            let slot = (i * b2 + j) * cd + r;
                            out[slot] = field.add(out[slot], field.mul(coeff, v[(k * b.index() + l) * cd + r]));
                        }
                    }
                }
            }
        }
        encode(square.dom(g), c, &out)
    });
    HetBifunctor::from_raw(raw).map_err(Error::Invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{product, product_object, split_morphism, split_object};
    use crate::gallery::finset::FinSetSkeleton;

    #[test]
    fn cone_counts() {
        let b = Budget::default();
        let s = FinSetSkeleton::new(2, &b).unwrap();
        let c = s.category().clone();
        let sq = Arc::new(product(&c, &c));
        let cones = tuple_het(
            "cones",
            &c,
            &sq,
            &c,
            &b,
            |x, ab| {
                let (a, bb) = split_object(&c, ab);
                vec![(x, a), (x, bb)]
            },
            |h, i, m| {
                let (p, q) = split_morphism(&c, h);
                c.comp(if i == 0 { p } else { q }, m)
            },
            |_, m, g| c.comp(m, g),
        )
        .unwrap();
        for x in 0..=2usize {
            for a in 0..=2usize {
                for bb in 0..=2usize {
                    let ab = product_object(&c, s.object(a), s.object(bb));
                    assert_eq!(cones.het_set(s.object(x), ab).len(), a.pow(x as u32) * bb.pow(x as u32));
                }
            }
        }
    }

    #[test]
    fn bilinear_counts() {
        let b = Budget::default();
        let v = FinVect::new(2, 2, &b).unwrap();
        let sq = Arc::new(product(v.category(), v.category()));
        let h = bilinear_het("bilinear", &v, &sq, &v, &b).unwrap();
        let x = product_object(v.category(), v.object(2), v.object(2));
        assert_eq!(h.het_set(x, v.object(1)).len(), 16);
    }
}
