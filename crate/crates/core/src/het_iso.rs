//! Isomorphisms of het bifunctors over the same pair of categories: a
//! bijection of every het-set commuting with both actions.

use crate::budget::Budget;
use crate::category::MorId;
use crate::error::{Error, Result};
use crate::het::{HetBifunctor, HetId};

/// `map[e]` is the image of element `e` of the first bifunctor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HetIso {
    pub map: Vec<HetId>,
}

struct Search<'a> {
    h1: &'a HetBifunctor,
    h2: &'a HetBifunctor,
    /// morphisms of the first bifunctor's categories translated to the second's
    xmap: Vec<MorId>,
    amap: Vec<MorId>,
    map: Vec<Option<HetId>>,
    used: Vec<bool>,
    trail: Vec<HetId>,
}

impl Search<'_> {
    /// Assigns `e1 ↦ e2` and closes under the generator actions. Returns
    /// false on conflict; the trail records every assignment made.
    fn assign(&mut self, e1: HetId, e2: HetId) -> bool {
        let mut queue = vec![(e1, e2)];
        while let Some((p, q)) = queue.pop() {
            match self.map[p.index()] {
                Some(r) if r == q => continue,
                Some(_) => return false,
                None if self.used[q.index()] => return false,
                None => {}
            }
            self.map[p.index()] = Some(q);
            self.used[q.index()] = true;
            self.trail.push(p);
            let (xs, xa) = (self.h1.source(), self.h1.target());
            let (x, a) = (self.h1.elem_source(p), self.h1.elem_target(p));
            for &h in xa.generators() {
                if xa.dom(h) == a {
                    queue.push((self.h1.post(h, p), self.h2.post(self.amap[h.index()], q)));
                }
            }
            for &g in xs.generators() {
                if xs.cod(g) == x {
                    queue.push((self.h1.pre(p, g), self.h2.pre(q, self.xmap[g.index()])));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().expect("trail above mark");
            let q = self.map[p.index()].take().expect("trailed entries are assigned");
            self.used[q.index()] = false;
        }
    }

    fn solve(&mut self, next: usize, meter: &crate::budget::WorkMeter) -> Result<bool> {
        let Some(start) = (next..self.map.len()).find(|&i| self.map[i].is_none()) else {
            return Ok(true);
        };
        let e1 = HetId(start as u32);
        let (x, a) = (self.h1.elem_source(e1), self.h1.elem_target(e1));
        let candidates: Vec<HetId> = self.h2.het_set(x, a).to_vec();
        for e2 in candidates {
            if self.used[e2.index()] {
                continue;
            }
            meter.charge(1)?;
            let mark = self.trail.len();
            if self.assign(e1, e2) && self.solve(start + 1, meter)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

/// Finds the canonically least isomorphism `h1 ≅ h2`, if any. The two
/// bifunctors must have categories equal up to renaming of identifiers.
pub fn find_het_isomorphism(h1: &HetBifunctor, h2: &HetBifunctor, budget: &Budget) -> Result<Option<HetIso>> {
    let (Some(xmap), Some(amap)) = (
        h1.source().renaming_to(h2.source()),
        h1.target().renaming_to(h2.target()),
    ) else {
        return Err(Error::Shape(format!(
            "`{}` and `{}` are not over the same categories",
            h1.name(),
            h2.name()
        )));
    };
    for x in h1.source().objects() {
        for a in h1.target().objects() {
            if h1.het_set(x, a).len() != h2.het_set(x, a).len() {
                return Ok(None);
            }
        }
    }
    let mut s = Search {
        h1,
        h2,
        xmap,
        amap,
        map: vec![None; h1.num_elems()],
        used: vec![false; h2.num_elems()],
        trail: Vec::new(),
    };
    let meter = budget.meter();
    if !s.solve(0, &meter)? {
        return Ok(None);
    }
    let iso = HetIso {
        map: s.map.into_iter().map(|e| e.expect("solved")).collect(),
    };
    if !is_het_isomorphism(h1, h2, &iso) {
        return Err(Error::Internal("het isomorphism search produced a non-isomorphism".into()));
    }
    Ok(Some(iso))
}

/// Checks that `iso` is a bijection preserving endpoints and commuting with
/// every action.
pub fn is_het_isomorphism(h1: &HetBifunctor, h2: &HetBifunctor, iso: &HetIso) -> bool {
    let (Some(xmap), Some(amap)) = (
        h1.source().renaming_to(h2.source()),
        h1.target().renaming_to(h2.target()),
    ) else {
        return false;
    };
    if iso.map.len() != h1.num_elems() || h1.num_elems() != h2.num_elems() {
        return false;
    }
    let mut seen = vec![false; h2.num_elems()];
    for e in h1.elems() {
        let f = iso.map[e.index()];
        if f.index() >= h2.num_elems() || std::mem::replace(&mut seen[f.index()], true) {
            return false;
        }
        if (h1.elem_source(e), h1.elem_target(e)) != (h2.elem_source(f), h2.elem_target(f)) {
            return false;
        }
    }
    let (xs, xa) = (h1.source(), h1.target());
    h1.elems().all(|e| {
        let f = iso.map[e.index()];
        let (x, a) = (h1.elem_source(e), h1.elem_target(e));
        xa.morphisms_from(a)
            .iter()
            .all(|&h| iso.map[h1.post(h, e).index()] == h2.post(amap[h.index()], f))
            && xs
                .morphisms_into(x)
                .iter()
                .all(|&g| iso.map[h1.pre(e, g).index()] == h2.pre(f, xmap[g.index()]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::finset::FinSetSkeleton;

    #[test]
    fn renamed_hom_bifunctor_is_isomorphic() {
        let s = FinSetSkeleton::new(2, &Budget::default()).unwrap();
        let c = s.category().clone();
        let h = HetBifunctor::hom(&c);
        let iso = find_het_isomorphism(&h, &h.renamed("copy"), &Budget::default())
            .unwrap()
            .unwrap();
        assert!(iso.map.iter().enumerate().all(|(i, e)| e.index() == i));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let s = FinSetSkeleton::new(1, &Budget::default()).unwrap();
        let c = s.category().clone();
        let h = HetBifunctor::hom(&c);
        let e = HetBifunctor::empty("empty", c.clone(), c.clone());
        assert_eq!(find_het_isomorphism(&h, &e, &Budget::default()).unwrap(), None);
    }
}
