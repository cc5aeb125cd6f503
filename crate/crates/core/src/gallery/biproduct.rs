//! Direct sums of `F_p`-spaces as a brain functor: cocones from pairs of
//! spaces are left-represented and cones into them right-represented by the
//! same object `V_a ⊕ V_b`.

use std::sync::Arc;

use crate::budget::Budget;
use crate::category::{FinCategory, MorId, ObjId};
use crate::construct::{full_subcategory, product, product_object, split_morphism, split_object};
use crate::error::Result;
use crate::functor::Functor;
use crate::gallery::finvect::FinVect;
use crate::gallery::functors::{direct_sum_functor, injection, projection};
use crate::gallery::hets::tuple_het;
use crate::het::{HetBifunctor, HetId};

#[derive(Debug, Clone)]
pub struct Biproduct {
    /// Components, `FinVect(≤d)`.
    pub small: FinVect,
    /// Receives the sums, `FinVect(≤D)`.
    pub big: FinVect,
    /// Pairs with `d1 + d2 ≤ D`, a full subcategory of the square of `small`.
    pub pairs: Arc<FinCategory>,
    pub pairs_inclusion: Functor,
    pub direct_sum: Functor,
    /// `[f1, f2]: (V_a, V_b) → V`.
    pub cocones: Arc<HetBifunctor>,
    /// `[g1, g2]: V → (V_a, V_b)`.
    pub cones: Arc<HetBifunctor>,
}

impl Biproduct {
    pub fn new(p: u32, max_dim: usize, max_sum: usize, budget: &Budget) -> Result<Biproduct> {
        let small = FinVect::new(p, max_dim, budget)?;
        let big = FinVect::new(p, max_sum, budget)?;
        let sc = small.category();
        let square = Arc::new(product(sc, sc));
        let kept: Vec<ObjId> = square
            .objects()
            .filter(|&o| {
                let (a, b) = split_object(sc, o);
                small.dim(a) + small.dim(b) <= max_sum
            })
            .collect();
        let (pairs, pairs_inclusion) = full_subcategory(&square, &kept, "Pairs")?;
        let direct_sum = direct_sum_functor(&small, &pairs_inclusion, &big)?;
        let bc = big.category();
        let embed: Vec<MorId> = sc.morphisms().map(|f| big.morphism(small.matrix(f))).collect();
        let lift = |o: ObjId| big.object(small.dim(o));
        let parts = |x: ObjId| split_object(sc, pairs_inclusion.ob(x));
        let part_mor = |g: MorId, i: usize| {
            let (g1, g2) = split_morphism(sc, pairs_inclusion.mor(g));
            embed[if i == 0 { g1 } else { g2 }.index()]
        };
        let cocones = tuple_het(
            "cocones",
            &pairs,
            bc,
            bc,
            budget,
            |x, v| {
                let (a, b) = parts(x);
                vec![(lift(a), v), (lift(b), v)]
            },
            |h, _, m| bc.comp(h, m),
            |i, m, g| bc.comp(m, part_mor(g, i)),
        )?;
        let cones = tuple_het(
            "cones",
            bc,
            &pairs,
            bc,
            budget,
            |v, x| {
                let (a, b) = parts(x);
                vec![(v, lift(a)), (v, lift(b))]
            },
            |h, i, m| bc.comp(part_mor(h, i), m),
            |_, m, g| bc.comp(m, g),
        )?;
        Ok(Biproduct {
            small,
            big,
            pairs,
            pairs_inclusion,
            direct_sum,
            cocones: Arc::new(cocones),
            cones: Arc::new(cones),
        })
    }

    /// The object `(V_a, V_b)` of the pair category, if kept.
    pub fn pair(&self, a: usize, b: usize) -> Option<ObjId> {
        let sc = self.small.category();
        let o = product_object(sc, self.small.object(a), self.small.object(b));
        self.pairs_inclusion
            .obj_map()
            .iter()
            .position(|&k| k == o)
            .map(|i| ObjId(i as u32))
    }

    pub fn dims(&self, x: ObjId) -> (usize, usize) {
        let (a, b) = split_object(self.small.category(), self.pairs_inclusion.ob(x));
        (self.small.dim(a), self.small.dim(b))
    }

    /// The cocone of canonical injections into `V_(a+b)`.
    pub fn injections(&self, x: ObjId) -> Result<HetId> {
        let (a, b) = self.dims(x);
        let n = |m| self.big.category().morphism_name(self.big.morphism(&m)).to_string();
        self.cocones
            .lookup_elem(&format!("[{},{}]", n(injection(a, b, 0)), n(injection(a, b, 1))))
    }

    /// The cone of canonical projections out of `V_(a+b)`.
    pub fn projections(&self, x: ObjId) -> Result<HetId> {
        let (a, b) = self.dims(x);
        let n = |m| self.big.category().morphism_name(self.big.morphism(&m)).to_string();
        self.cones
            .lookup_elem(&format!("[{},{}]", n(projection(a, b, 0)), n(projection(a, b, 1))))
    }
}

pub fn build_biproduct_instance(p: u32, max_dim: usize, max_sum: usize, budget: &Budget) -> Result<Biproduct> {
    Biproduct::new(p, max_dim, max_sum, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_cocones_exist() {
        let bp = Biproduct::new(2, 2, 3, &Budget::default()).unwrap();
        assert_eq!(bp.pairs.num_objects(), 8);
        let x = bp.pair(1, 2).unwrap();
        assert_eq!(bp.big.dim(bp.direct_sum.ob(x)), 3);
        let e = bp.injections(x).unwrap();
        assert_eq!(bp.cocones.elem_target(e), bp.big.object(3));
        assert!(bp.projections(x).is_ok());
        assert!(bp.pair(2, 2).is_none());
    }
}
