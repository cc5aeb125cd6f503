//! Invariants on random partial orders, where every question has a
//! closed-form answer.

mod common;

use std::sync::Arc;

use common::{chain, close_relation, order, poset, thin_het};
use hetcat::adjunction::{verify_homset_adjunction, HetAdjunction};
use hetcat::collage::{build_collage, extract_het_from_collage};
use hetcat::functor::validate_functor;
use hetcat::het_iso::find_het_isomorphism;
use hetcat::universals::{find_representation_at, find_representation_family, Chirality};
use hetcat::{Budget, FinCategory, Functor, HetBifunctor, MorId, ObjId};
use proptest::prelude::*;

fn edges() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..5, 0usize..5), 0..8)
}

/// Object map between partial orders extended to morphisms; a non-monotone
/// map sends the offending morphism to an identity of the wrong type.
fn object_map_functor(p: &Arc<FinCategory>, q: &Arc<FinCategory>, map: &[usize]) -> Functor {
    let obj: Vec<ObjId> = map.iter().map(|&i| ObjId(i as u32)).collect();
    let mor: Vec<MorId> = p
        .morphisms()
        .map(|f| {
            let (s, t) = (obj[p.dom(f).index()], obj[p.cod(f).index()]);
            q.hom_set(s, t).first().copied().unwrap_or_else(|| q.identity(s))
        })
        .collect();
    Functor::from_maps("F", p.clone(), q.clone(), obj, mor)
}

/// The least element of `{a : pred(a)}` in the order `le`, if any.
fn least(le: &[Vec<bool>], pred: impl Fn(usize) -> bool) -> Option<usize> {
    let set: Vec<usize> = (0..le.len()).filter(|&a| pred(a)).collect();
    set.iter().copied().find(|&a| set.iter().all(|&b| le[a][b]))
}

fn greatest(le: &[Vec<bool>], pred: impl Fn(usize) -> bool) -> Option<usize> {
    let set: Vec<usize> = (0..le.len()).filter(|&a| pred(a)).collect();
    set.iter().copied().find(|&a| set.iter().all(|&b| le[b][a]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_is_represented_by_identities(n in 1usize..5, e in edges()) {
        let b = Budget::default();
        let p = poset("P", &order(n, &e));
        let hom = Arc::new(HetBifunctor::hom(&p));
        for chir in [Chirality::Left, Chirality::Right] {
            let fs = find_representation_family(&hom, chir, &b).unwrap();
            prop_assert!(fs.family.is_total());
            prop_assert!(fs.family.functor.is_identity());
            for (x, ws) in &fs.per_base {
                prop_assert_eq!(ws.len(), 1);
                prop_assert_eq!(ws[0].rep_object, *x);
                prop_assert_eq!(ws[0].universal, hom.het_set(*x, *x)[0]);
            }
        }
    }

    #[test]
    fn representations_of_thin_hets_are_extrema(
        n in 1usize..5, m in 1usize..5, ep in edges(), eq in edges(),
        seed in prop::collection::vec((0usize..5, 0usize..5), 0..4),
    ) {
        let b = Budget::default();
        let (lp, lq) = (order(n, &ep), order(m, &eq));
        let rel = close_relation(&lp, &lq, &seed);
        let h = thin_het("R", &poset("P", &lp), &poset("Q", &lq), &rel);
        for x in 0..n {
            let ws = find_representation_at(&h, ObjId(x as u32), Chirality::Left, &b).unwrap();
            let expected = least(&lq, |a| rel[x][a]).filter(|&a| (0..m).all(|a2| rel[x][a2] == lq[a][a2]));
            prop_assert_eq!(ws.iter().map(|w| w.rep_object.index()).collect::<Vec<_>>(), expected.into_iter().collect::<Vec<_>>());
        }
        for a in 0..m {
            let ws = find_representation_at(&h, ObjId(a as u32), Chirality::Right, &b).unwrap();
            let expected = greatest(&lp, |x| rel[x][a]).filter(|&x| (0..n).all(|x2| rel[x2][a] == lp[x2][x]));
            prop_assert_eq!(ws.iter().map(|w| w.rep_object.index()).collect::<Vec<_>>(), expected.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn functor_laws_hold_exactly_for_monotone_maps(
        n in 1usize..5, m in 1usize..5, ep in edges(), eq in edges(),
        raw_map in prop::collection::vec(0usize..5, 5),
    ) {
        let (lp, lq) = (order(n, &ep), order(m, &eq));
        let (p, q) = (poset("P", &lp), poset("Q", &lq));
        let map: Vec<usize> = raw_map[..n].iter().map(|&i| i % m).collect();
        let monotone = (0..n).all(|i| (0..n).all(|j| !lp[i][j] || lq[map[i]][map[j]]));
        let f = object_map_functor(&p, &q, &map);
        prop_assert_eq!(validate_functor(&f).is_valid(), monotone);
    }

    #[test]
    fn collage_counts_and_round_trip(
        n in 1usize..5, m in 1usize..5, ep in edges(), eq in edges(),
        seed in prop::collection::vec((0usize..5, 0usize..5), 0..4),
    ) {
        let (lp, lq) = (order(n, &ep), order(m, &eq));
        let rel = close_relation(&lp, &lq, &seed);
        let (p, q) = (poset("P", &lp), poset("Q", &lq));
        let h = thin_het("R", &p, &q, &rel);
        let c = build_collage(&h).unwrap();
        let hets = rel.iter().flatten().filter(|&&r| r).count();
        prop_assert_eq!(c.category.num_objects(), n + m);
        prop_assert_eq!(c.category.num_morphisms(), p.num_morphisms() + q.num_morphisms() + hets);
        let (_, _, back) = extract_het_from_collage(&c).unwrap();
        prop_assert!(back.same_up_to_renaming(&h));
    }

    #[test]
    fn thin_hets_are_isomorphic_iff_relations_agree(
        n in 1usize..4, m in 1usize..4, ep in edges(), eq in edges(),
        s1 in prop::collection::vec((0usize..5, 0usize..5), 0..3),
        s2 in prop::collection::vec((0usize..5, 0usize..5), 0..3),
    ) {
        let b = Budget::default();
        let (lp, lq) = (order(n, &ep), order(m, &eq));
        let (p, q) = (poset("P", &lp), poset("Q", &lq));
        let (r1, r2) = (close_relation(&lp, &lq, &s1), close_relation(&lp, &lq, &s2));
        let (h1, h2) = (thin_het("R1", &p, &q, &r1), thin_het("R2", &p, &q, &r2));
        prop_assert_eq!(find_het_isomorphism(&h1, &h2, &b).unwrap().is_some(), r1 == r2);
        // the order relation itself is the hom bifunctor under other names
        let le = thin_het("Le", &p, &p, &lp);
        prop_assert!(find_het_isomorphism(&le, &HetBifunctor::hom(&p), &b).unwrap().is_some());
    }

    #[test]
    fn monotone_maps_of_chains_have_right_adjoints_iff_they_keep_the_bottom(
        n in 1usize..5, m in 1usize..5, steps in prop::collection::vec(0usize..3, 5), start in 0usize..5,
    ) {
        let b = Budget::default();
        // a random monotone map [n] -> [m]
        let mut f = vec![start % m];
        for i in 1..n {
            f.push((f[i - 1] + steps[i]).min(m - 1));
        }
        let (p, q) = (chain("P", n), chain("Q", m));
        let rel: Vec<Vec<bool>> = (0..n).map(|x| (0..m).map(|a| f[x] <= a).collect()).collect();
        let h = Arc::new(thin_het("H", &p, &q, &rel));
        let left = find_representation_family(&h, Chirality::Left, &b).unwrap().family;
        let right = find_representation_family(&h, Chirality::Right, &b).unwrap().family;
        prop_assert!(left.is_total());
        prop_assert_eq!(left.functor.obj_map().iter().map(|o| o.index()).collect::<Vec<_>>(), f.clone());
        prop_assert_eq!(right.is_total(), f[0] == 0);
        for a in 0..m {
            let g = (0..n).rev().find(|&x| f[x] <= a);
            let got = right.witness_at(ObjId(a as u32)).map(|w| w.rep_object.index());
            prop_assert_eq!(got, g);
        }
        if right.is_total() {
            let adj = HetAdjunction::new(left, right).unwrap().to_adjunction().unwrap();
            prop_assert!(verify_homset_adjunction(&adj).unwrap().is_valid());
        }
    }
}
