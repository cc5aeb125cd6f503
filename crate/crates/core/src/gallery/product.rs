//! Products, coproducts and the diagonal on finite sets: cone and cocone
//! hets, and the hand-built adjunctions `Δ ⊣ ×` and `⊎ ⊣ Δ`.

use std::sync::Arc;

use crate::adjunction::Adjunction;
use crate::budget::Budget;
use crate::category::{FinCategory, MorId, ObjId};
use crate::construct::{diagonal, product, product_morphism, split_morphism, split_object};
use crate::error::Result;
use crate::functor::Functor;
use crate::gallery::finset::FinSetSkeleton;
use crate::gallery::functors::{coproduct_functor, product_functor, set_inclusion};
use crate::gallery::hets::tuple_het;
use crate::het::HetBifunctor;

/// Sets of size `≤ n` against pairs of sets of size `≤ m`.
#[derive(Debug, Clone)]
pub struct ProductDiagonal {
    /// `X = FinSet(≤n)`.
    pub sets: FinSetSkeleton,
    /// Components of `A`, `FinSet(≤m)`.
    pub components: FinSetSkeleton,
    /// `A = FinSet(≤m)²`.
    pub square: Arc<FinCategory>,
    /// `[f, g]: c → (a, b)`.
    pub cones: Arc<HetBifunctor>,
    /// `[f, g]: (a, b) → c`.
    pub cocones: Arc<HetBifunctor>,
}

impl ProductDiagonal {
    pub fn new(n: usize, m: usize, budget: &Budget) -> Result<ProductDiagonal> {
        let sets = FinSetSkeleton::new(n, budget)?;
        let components = FinSetSkeleton::new(m, budget)?;
        let base = if n >= m { sets.clone() } else { components.clone() };
        let square = Arc::new(product(components.category(), components.category()));
        budget.check_objects(square.name(), square.num_objects())?;
        let embed = |s: &FinSetSkeleton| -> Vec<MorId> {
            let c = s.category();
            c.morphisms()
                .map(|f| base.function(s.table(f).len(), s.size(c.cod(f)), s.table(f)))
                .collect()
        };
        let (ex, ep) = (embed(&sets), embed(&components));
        let bc = base.category();
        let pc = components.category();
        let x = sets.category();
        let cones = tuple_het(
            "cones",
            x,
            &square,
            bc,
            budget,
            |c, ab| {
                let (a, b) = split_object(pc, ab);
                vec![(c, a), (c, b)]
            },
            |h, i, m| {
                let (p, q) = split_morphism(pc, h);
                bc.comp(ep[if i == 0 { p } else { q }.index()], m)
            },
            |_, m, g| bc.comp(m, ex[g.index()]),
        )?;
        let cocones = tuple_het(
            "cocones",
            &square,
            x,
            bc,
            budget,
            |ab, c| {
                let (a, b) = split_object(pc, ab);
                vec![(a, c), (b, c)]
            },
            |h, _, m| bc.comp(ex[h.index()], m),
            |i, m, g| {
                let (p, q) = split_morphism(pc, g);
                bc.comp(m, ep[if i == 0 { p } else { q }.index()])
            },
        )?;
        Ok(ProductDiagonal {
            sets,
            components,
            square,
            cones: Arc::new(cones),
            cocones: Arc::new(cocones),
        })
    }

    /// The pair object `(a, b)` of `A` by sizes.
    pub fn pair(&self, a: usize, b: usize) -> ObjId {
        crate::construct::product_object(self.components.category(), self.components.object(a), self.components.object(b))
    }

    /// The cone `[1_c, 1_c]: c → (c, c)`.
    pub fn identity_cone(&self, c: usize) -> Result<crate::het::HetId> {
        let id = self.sets.category().morphism_name(self.sets.category().identity(self.sets.object(c)));
        self.cones.lookup_elem(&format!("[{id},{id}]"))
    }

    /// The cocone `[1_c, 1_c]: (c, c) → c`.
    pub fn codiagonal(&self, c: usize) -> Result<crate::het::HetId> {
        let id = self.sets.category().morphism_name(self.sets.category().identity(self.sets.object(c)));
        self.cocones.lookup_elem(&format!("[{id},{id}]"))
    }
}

/// Cone and cocone hets between `FinSet(≤n)` and its square.
pub fn build_cone_cocone_hets(max_size: usize, budget: &Budget) -> Result<(Arc<HetBifunctor>, Arc<HetBifunctor>)> {
    let pd = ProductDiagonal::new(max_size, max_size, budget)?;
    Ok((pd.cones, pd.cocones))
}

/// The functors and hand-built adjunctions `Δ ⊣ ×` and `⊎ ⊣ Δ` between
/// `FinSet(≤k)`, its square, and `FinSet(≤N)` receiving sums and products.
#[derive(Debug, Clone)]
pub struct DiagonalAdjunctions {
    pub small: FinSetSkeleton,
    pub big: FinSetSkeleton,
    pub square: Arc<FinCategory>,
    pub delta: Functor,
    pub product: Functor,
    pub coproduct: Functor,
    /// `FinSet(≤k) ↪ FinSet(≤N)`.
    pub inclusion: Functor,
    /// `Δ ⊣ ×` with `phi(⟨f, g⟩) = x ↦ (f x, g x)` (pairing `i·b + j`).
    pub delta_product: Adjunction,
    /// `⊎ ⊣ Δ` with `phi(h) = ⟨h ∘ inl, h ∘ inr⟩`.
    pub coproduct_delta: Adjunction,
}

impl DiagonalAdjunctions {
    pub fn new(k: usize, n: usize, budget: &Budget) -> Result<DiagonalAdjunctions> {
        let small = FinSetSkeleton::new(k, budget)?;
        let big = FinSetSkeleton::new(n, budget)?;
        let sc = small.category().clone();
        let square = Arc::new(product(&sc, &sc));
        let delta = diagonal(&sc, &square)?;
        let prod = product_functor(&small, &square, &big)?;
        let coprod = coproduct_functor(&small, &square, &big)?;
        let inclusion = set_inclusion(&small, &big)?;
        let delta_product = Adjunction::from_fn(
            "Delta -| Product",
            delta.clone(),
            prod.clone(),
            inclusion.clone(),
            Functor::identity(&square),
            |c, ab, h| {
                let (f, g) = split_morphism(&sc, h);
                let (a, b) = split_object(&sc, ab);
                let bsize = small.size(b);
                let values: Vec<u8> = small
                    .table(f)
                    .iter()
                    .zip(small.table(g))
                    .map(|(&i, &j)| (i as usize * bsize + j as usize) as u8)
                    .collect();
                big.function(small.size(c), small.size(a) * bsize, &values)
            },
        );
        let coproduct_delta = Adjunction::from_fn(
            "Coproduct -| Delta",
            coprod.clone(),
            delta.clone(),
            Functor::identity(&square),
            inclusion.clone(),
            |ab, c, h| {
                let (a, b) = split_object(&sc, ab);
                let (na, nb, nc) = (small.size(a), small.size(b), small.size(c));
                let t = big.table(h);
                let f = small.function(na, nc, &t[..na]);
                let g = small.function(nb, nc, &t[na..na + nb]);
                product_morphism(&sc, f, g)
            },
        );
        Ok(DiagonalAdjunctions {
            small,
            big,
            square,
            delta,
            product: prod,
            coproduct: coprod,
            inclusion,
            delta_product,
            coproduct_delta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunction::verify_homset_adjunction;

    #[test]
    fn cone_actions_are_componentwise() {
        let pd = ProductDiagonal::new(2, 2, &Budget::default()).unwrap();
        let c = pd.sets.category();
        let e = pd.identity_cone(2).unwrap();
        // pre-compose [1,1] with the constant map 1 -> 2 at 0
        let k = pd.sets.function(1, 2, &[0]);
        let r = pd.cones.pre(e, k);
        let name = c.morphism_name(k);
        assert_eq!(pd.cones.elem_name(r), format!("[{name},{name}]"));
    }

    #[test]
    fn hand_built_adjunctions_verify() {
        let d = DiagonalAdjunctions::new(2, 4, &Budget::default()).unwrap();
        assert!(verify_homset_adjunction(&d.delta_product).unwrap().is_valid());
        assert!(verify_homset_adjunction(&d.coproduct_delta).unwrap().is_valid());
    }
}
