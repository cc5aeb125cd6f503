//! Free `F_p`-vector spaces on finite sets and the underlying-set functor,
//! standing in for free groups: hets are functions between sets and the
//! element sets of spaces.

use std::sync::Arc;

use crate::adjunction::Adjunction;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finfield::vector_index;
use crate::functor::Functor;
use crate::gallery::finset::FinSetSkeleton;
use crate::gallery::finvect::FinVect;
use crate::gallery::functors::{free_functor, set_inclusion, underlying_functor};
use crate::gallery::hets::tuple_het;
use crate::het::{HetBifunctor, HetId};

#[derive(Debug, Clone)]
pub struct FreeVector {
    pub spaces: FinVect,
    /// `FinSet(≤p^max_dim)`, large enough for every underlying set.
    pub sets: FinSetSkeleton,
    /// `FinSet(≤max_set)`, where the free functor is defined.
    pub small_sets: FinSetSkeleton,
    pub underlying: Functor,
    pub free: Functor,
    pub small_inclusion: Functor,
    /// Functions `S → U V`, hets from sets to spaces.
    pub set_to_space: Arc<HetBifunctor>,
    /// Functions `U V → S`, hets from spaces to sets.
    pub space_to_set: Arc<HetBifunctor>,
    /// `free ⊣ U` with `phi(h) = s ↦ h(e_s)`.
    pub adjunction: Adjunction,
}

impl FreeVector {
    pub fn new(p: u32, max_set: usize, max_dim: usize, budget: &Budget) -> Result<FreeVector> {
        if max_set > max_dim {
            return Err(Error::Shape(format!(
                "free spaces on {max_set} generators need dimension {max_set} > {max_dim}"
            )));
        }
        let spaces = FinVect::new(p, max_dim, budget)?;
        let top = spaces.cardinality(spaces.object(max_dim));
        let sets = FinSetSkeleton::new(top, budget)?;
        let small_sets = FinSetSkeleton::new(max_set, budget)?;
        let underlying = underlying_functor(&spaces, &sets)?;
        let free = free_functor(&small_sets, &spaces)?;
        let small_inclusion = set_inclusion(&small_sets, &sets)?;
        let (sc, vc) = (sets.category(), spaces.category());
        let u = &underlying;
        let set_to_space = tuple_het(
            "set_to_space",
            sc,
            vc,
            sc,
            budget,
            |s, v| vec![(s, u.ob(v))],
            |h, _, m| sc.comp(u.mor(h), m),
            |_, m, g| sc.comp(m, g),
        )?;
        let space_to_set = tuple_het(
            "space_to_set",
            vc,
            sc,
            sc,
            budget,
            |v, s| vec![(u.ob(v), s)],
            |h, _, m| sc.comp(h, m),
            |_, m, g| sc.comp(m, u.mor(g)),
        )?;
        let field = spaces.field();
        let adjunction = Adjunction::from_fn(
            "Free -| Underlying",
            free.clone(),
            underlying.clone(),
            small_inclusion.clone(),
            Functor::identity(vc),
            |s, v, h| {
                let m = spaces.matrix(h);
                let values: Vec<u8> = (0..m.cols)
                    .map(|c| {
                        let col: Vec<u8> = (0..m.rows).map(|r| m.get(r, c)).collect();
                        vector_index(&col, field) as u8
                    })
                    .collect();
                sets.function(small_sets.size(s), spaces.cardinality(v), &values)
            },
        );
        Ok(FreeVector {
            spaces,
            sets,
            small_sets,
            underlying,
            free,
            small_inclusion,
            set_to_space: Arc::new(set_to_space),
            space_to_set: Arc::new(space_to_set),
            adjunction,
        })
    }

    /// Generator insertion `S → U(F S)`, `s ↦ e_s`, as a het.
    pub fn insertion(&self, size: usize) -> Result<HetId> {
        let field = self.spaces.field();
        let values: Vec<u8> = (0..size)
            .map(|s| {
                let mut e = vec![0u8; size];
                e[s] = 1;
                vector_index(&e, field) as u8
            })
            .collect();
        let f = self.sets.function(size, self.spaces.cardinality(self.spaces.object(size)), &values);
        self.set_to_space
            .lookup_elem(&format!("[{}]", self.sets.category().morphism_name(f)))
    }

    /// The identity function on `U V`, as a het in either direction.
    pub fn identity_het(&self, het: &HetBifunctor, dim: usize) -> Result<HetId> {
        let s = self.underlying.ob(self.spaces.object(dim));
        het.lookup_elem(&format!("[{}]", self.sets.category().morphism_name(self.sets.category().identity(s))))
    }
}

/// The free-vector instance at its default size: `F_2`, sets `≤ 2`, spaces of
/// dimension `≤ 2`.
pub fn build_free_underlying_hets(p: u32, max_set: usize, max_dim: usize, budget: &Budget) -> Result<FreeVector> {
    FreeVector::new(p, max_set, max_dim, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunction::verify_homset_adjunction;

    #[test]
    fn hom_counts_match_function_counts() {
        let fv = FreeVector::new(2, 2, 2, &Budget::default()).unwrap();
        for s in 0..=2 {
            for d in 0..=2 {
                let v = fv.spaces.object(d);
                let homs = fv.spaces.category().hom_set(fv.spaces.object(s), v).len();
                let hets = fv.set_to_space.het_set(fv.sets.object(s), v).len();
                assert_eq!(homs, hets);
                assert_eq!(hets, fv.spaces.cardinality(v).pow(s as u32));
            }
        }
        assert!(verify_homset_adjunction(&fv.adjunction).unwrap().is_valid());
    }
}
