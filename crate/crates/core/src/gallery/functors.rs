//! Concrete functors between gallery categories, built directly from their
//! set-level or matrix-level definitions.

use std::sync::Arc;

use crate::category::{FinCategory, ObjId};
use crate::construct::{product_object, split_morphism, split_object};
use crate::error::{Error, Result};
use crate::finfield::Matrix;
use crate::functor::{validate_functor, Functor};
use crate::gallery::finset::FinSetSkeleton;
use crate::gallery::finvect::FinVect;

fn checked(f: Functor) -> Result<Functor> {
    let report = validate_functor(&f);
    if report.is_valid() {
        Ok(f)
    } else {
        Err(Error::Invalid(report))
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Shape(msg()))
    }
}

/// `×: FinSet(≤n)² → FinSet(≤N)` with `(i, j) ↦ i·b + j` as pairing.
pub fn product_functor(small: &FinSetSkeleton, square: &Arc<FinCategory>, big: &FinSetSkeleton) -> Result<Functor> {
    let n = small.max_size();
    require(n * n <= big.max_size(), || format!("products of sets of size {n} leave FinSet{}", big.max_size()))?;
    let sc = small.category();
    let obj_map = square
        .objects()
        .map(|p| {
            let (a, b) = split_object(sc, p);
            big.object(a.index() * b.index())
        })
        .collect();
    let mor_map = square
        .morphisms()
        .map(|m| {
            let (f, g) = split_morphism(sc, m);
            let (tf, tg) = (small.table(f), small.table(g));
            let (b, b2) = (tg.len(), small.size(sc.cod(g)));
            let mut values = Vec::with_capacity(tf.len() * b);
            for &vf in tf {
                for &vg in tg {
                    values.push((vf as usize * b2 + vg as usize) as u8);
                }
            }
            big.function(tf.len() * b, small.size(sc.cod(f)) * b2, &values)
        })
        .collect();
    checked(Functor::from_maps("Product", square.clone(), big.category().clone(), obj_map, mor_map))
}

/// `⊎: FinSet(≤n)² → FinSet(≤N)`, left summand first.
pub fn coproduct_functor(small: &FinSetSkeleton, square: &Arc<FinCategory>, big: &FinSetSkeleton) -> Result<Functor> {
    let n = small.max_size();
    require(2 * n <= big.max_size(), || format!("sums of sets of size {n} leave FinSet{}", big.max_size()))?;
    let sc = small.category();
    let obj_map = square
        .objects()
        .map(|p| {
            let (a, b) = split_object(sc, p);
            big.object(a.index() + b.index())
        })
        .collect();
    let mor_map = square
        .morphisms()
        .map(|m| {
            let (f, g) = split_morphism(sc, m);
            let a2 = small.size(sc.cod(f));
            let mut values: Vec<u8> = small.table(f).to_vec();
            values.extend(small.table(g).iter().map(|&v| v + a2 as u8));
            big.function(values.len(), a2 + small.size(sc.cod(g)), &values)
        })
        .collect();
    checked(Functor::from_maps("Coproduct", square.clone(), big.category().clone(), obj_map, mor_map))
}

/// Underlying-set functor `U: FinVect → FinSet`, vectors indexed by their
/// base-`p` digits.
pub fn underlying_functor(spaces: &FinVect, sets: &FinSetSkeleton) -> Result<Functor> {
    let vc = spaces.category();
    let largest = spaces.cardinality(spaces.object(spaces.max_dim()));
    require(largest <= sets.max_size(), || {
        format!("a space with {largest} vectors does not fit in FinSet{}", sets.max_size())
    })?;
    let obj_map = vc.objects().map(|v| sets.object(spaces.cardinality(v))).collect();
    let mor_map = vc
        .morphisms()
        .map(|f| {
            let table: Vec<u8> = spaces.element_table(f).into_iter().map(|v| v as u8).collect();
            sets.function(table.len(), spaces.cardinality(vc.cod(f)), &table)
        })
        .collect();
    checked(Functor::from_maps("Underlying", vc.clone(), sets.category().clone(), obj_map, mor_map))
}

/// Free functor `FinSet(≤n) → FinVect`: a set of size `k` goes to `F_p^k`
/// and a function to the matrix whose column `i` is `e_{f(i)}`.
pub fn free_functor(sets: &FinSetSkeleton, spaces: &FinVect) -> Result<Functor> {
    require(sets.max_size() <= spaces.max_dim(), || {
        format!("free spaces on {} generators leave the category", sets.max_size())
    })?;
    let sc = sets.category();
    let obj_map = sc.objects().map(|x| spaces.object(sets.size(x))).collect();
    let mor_map = sc
        .morphisms()
        .map(|f| {
            let table = sets.table(f);
            let mut m = Matrix::zero(sets.size(sc.cod(f)), table.len());
            for (i, &v) in table.iter().enumerate() {
                m.set(v as usize, i, 1);
            }
            spaces.morphism(&m)
        })
        .collect();
    checked(Functor::from_maps("Free", sc.clone(), spaces.category().clone(), obj_map, mor_map))
}

/// Direct sum `⊕: pairs → FinVect`, with `pairs` a full subcategory of the
/// square of `small` (given by its inclusion) and block-diagonal action.
pub fn direct_sum_functor(small: &FinVect, pairs_incl: &Functor, big: &FinVect) -> Result<Functor> {
    let sc = small.category();
    let pairs = pairs_incl.source();
    let mut obj_map = Vec::with_capacity(pairs.num_objects());
    for p in pairs.objects() {
        let (a, b) = split_object(sc, pairs_incl.ob(p));
        let d = a.index() + b.index();
        require(d <= big.max_dim(), || format!("direct sum of dimension {d} leaves the category"))?;
        obj_map.push(big.object(d));
    }
    let mor_map = pairs
        .morphisms()
        .map(|m| {
            let (f, g) = split_morphism(sc, pairs_incl.mor(m));
            big.morphism(&block_diagonal(small.matrix(f), small.matrix(g)))
        })
        .collect();
    checked(Functor::from_maps("DirectSum", pairs.clone(), big.category().clone(), obj_map, mor_map))
}

/// Inclusion `FinSet(≤n) ↪ FinSet(≤N)`.
pub fn set_inclusion(small: &FinSetSkeleton, big: &FinSetSkeleton) -> Result<Functor> {
    require(small.max_size() <= big.max_size(), || "inclusion into a smaller skeleton".to_string())?;
    let sc = small.category();
    let obj_map = sc.objects().map(|x| big.object(small.size(x))).collect();
    let mor_map = sc
        .morphisms()
        .map(|f| big.function(small.table(f).len(), small.size(sc.cod(f)), small.table(f)))
        .collect();
    let name = format!("incl_{}", sc.name());
    checked(Functor::from_maps(name, sc.clone(), big.category().clone(), obj_map, mor_map))
}

/// Inclusion `FinVect(≤n) ↪ FinVect(≤N)` over one field.
pub fn vect_inclusion(small: &FinVect, big: &FinVect) -> Result<Functor> {
    require(small.max_dim() <= big.max_dim() && small.field() == big.field(), || {
        "inclusion into a smaller category of spaces".to_string()
    })?;
    let sc = small.category();
    let obj_map = sc.objects().map(|x| big.object(small.dim(x))).collect();
    let mor_map = sc.morphisms().map(|f| big.morphism(small.matrix(f))).collect();
    let name = format!("incl_{}", sc.name());
    checked(Functor::from_maps(name, sc.clone(), big.category().clone(), obj_map, mor_map))
}

pub fn block_diagonal(f: &Matrix, g: &Matrix) -> Matrix {
    let mut m = Matrix::zero(f.rows + g.rows, f.cols + g.cols);
    for r in 0..f.rows {
        for c in 0..f.cols {
            m.set(r, c, f.get(r, c));
        }
    }
    for r in 0..g.rows {
        for c in 0..g.cols {
            m.set(f.rows + r, f.cols + c, g.get(r, c));
        }
    }
    m
}

/// Canonical injection of summand `which` (0 or 1) into `F_p^(a+b)`.
pub fn injection(a: usize, b: usize, which: usize) -> Matrix {
    let (rows, cols, offset) = (a + b, if which == 0 { a } else { b }, if which == 0 { 0 } else { a });
    let mut m = Matrix::zero(rows, cols);
    for i in 0..cols {
        m.set(offset + i, i, 1);
    }
    m
}

/// Canonical projection of `F_p^(a+b)` onto summand `which`.
pub fn projection(a: usize, b: usize, which: usize) -> Matrix {
    let i = injection(a, b, which);
    let mut m = Matrix::zero(i.cols, i.rows);
    for r in 0..i.rows {
        for c in 0..i.cols {
            m.set(c, r, i.get(r, c));
        }
    }
    m
}

/// The object `(x, y)` of the square of `cat`.
pub fn pair(cat: &FinCategory, x: ObjId, y: ObjId) -> ObjId {
    product_object(cat, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::construct::product;

    #[test]
    fn set_functors_are_valid() {
        let b = Budget::default();
        let s2 = FinSetSkeleton::new(2, &b).unwrap();
        let s4 = FinSetSkeleton::new(4, &b).unwrap();
        let sq = Arc::new(product(s2.category(), s2.category()));
        let p = product_functor(&s2, &sq, &s4).unwrap();
        let c = coproduct_functor(&s2, &sq, &s4).unwrap();
        let two = s2.object(2);
        assert_eq!(p.ob(pair(s2.category(), two, two)), s4.object(4));
        assert_eq!(c.ob(pair(s2.category(), two, s2.object(1))), s4.object(3));
    }

    #[test]
    fn free_and_underlying_are_valid() {
        let b = Budget::default();
        let v = FinVect::new(2, 2, &b).unwrap();
        let s4 = FinSetSkeleton::new(4, &b).unwrap();
        let s2 = FinSetSkeleton::new(2, &b).unwrap();
        let u = underlying_functor(&v, &s4).unwrap();
        assert_eq!(u.ob(v.object(2)), s4.object(4));
        let f = free_functor(&s2, &v).unwrap();
        assert_eq!(f.ob(s2.object(2)), v.object(2));
    }

    #[test]
    fn injections_and_projections() {
        let f = crate::finfield::Fp::new(2).unwrap();
        for (a, b) in [(1, 2), (2, 1), (0, 2)] {
            for w in 0..2 {
                let pi = projection(a, b, w);
                let iota = injection(a, b, w);
                assert_eq!(pi.mul(&iota, f), Matrix::identity(iota.cols));
            }
        }
    }
}
