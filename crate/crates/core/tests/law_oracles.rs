//! The validators against brute-force law checks over randomly filled tables.

mod common;

use std::collections::HashMap;
use std::sync::Arc;

use hetcat::category::validate_category;
use hetcat::het::validate_het_bifunctor;
use hetcat::{CategoryBuilder, FinCategory, HetBuilder, HetId, MorId, ObjId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain description of a category with a total composition table.
struct Tables {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    id: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
}

impl Tables {
    fn random(rng: &mut ChaCha8Rng) -> Tables {
        let objects = rng.gen_range(1..=3);
        let mut dom: Vec<usize> = (0..objects).collect();
        let mut cod = dom.clone();
        let id: Vec<usize> = (0..objects).collect();
        for _ in 0..rng.gen_range(0..=4) {
            dom.push(rng.gen_range(0..objects));
            cod.push(rng.gen_range(0..objects));
        }
        // every composable pair needs somewhere to land
        loop {
            let n = dom.len();
            let missing = (0..n)
                .flat_map(|g| (0..n).map(move |f| (g, f)))
                .filter(|&(g, f)| cod[f] == dom[g])
                .map(|(g, f)| (dom[f], cod[g]))
                .find(|&(s, t)| !(0..n).any(|h| dom[h] == s && cod[h] == t));
            match missing {
                Some((s, t)) => {
                    dom.push(s);
                    cod.push(t);
                }
                None => break,
            }
        }
        let n = dom.len();
        let sloppy = rng.gen_bool(0.2);
        let mut comp = HashMap::new();
        for g in 0..n {
            for f in 0..n {
                if cod[f] != dom[g] {
                    continue;
                }
                let typed: Vec<usize> = (0..n).filter(|&h| dom[h] == dom[f] && cod[h] == cod[g]).collect();
                let h = if g == id[dom[g]] && !sloppy {
                    f
                } else if f == id[cod[f]] && !sloppy {
                    g
                } else if sloppy && rng.gen_bool(0.1) {
                    rng.gen_range(0..n)
                } else {
                    typed[rng.gen_range(0..typed.len())]
                };
                comp.insert((g, f), h);
            }
        }
        Tables { objects, dom, cod, id, comp }
    }

    fn builder(&self) -> CategoryBuilder {
        let mut cb = CategoryBuilder::new("T");
        let objs: Vec<ObjId> = (0..self.objects).map(|i| cb.add_object(format!("o{i}"))).collect();
        for m in 0..self.dom.len() {
            let f = cb.add_morphism(format!("m{m}"), objs[self.dom[m]], objs[self.cod[m]]);
            if m < self.objects {
                cb.set_identity(objs[m], f);
            }
        }
        for (&(g, f), &h) in &self.comp {
            cb.set_compose(MorId(g as u32), MorId(f as u32), MorId(h as u32));
        }
        cb
    }

    fn is_category(&self) -> bool {
        let n = self.dom.len();
        let c = |g: usize, f: usize| self.comp[&(g, f)];
        for (&(g, f), &h) in &self.comp {
            if self.dom[h] != self.dom[f] || self.cod[h] != self.cod[g] {
                return false;
            }
        }
        for f in 0..n {
            if c(self.id[self.cod[f]], f) != f || c(f, self.id[self.dom[f]]) != f {
                return false;
            }
        }
        for f in 0..n {
            for g in (0..n).filter(|&g| self.dom[g] == self.cod[f]) {
                for h in (0..n).filter(|&h| self.dom[h] == self.cod[g]) {
                    if c(h, c(g, f)) != c(c(h, g), f) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The validator must agree with the triple loop on random tables.
fn agree_on_category(seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = Tables::random(&mut rng);
    let raw = t.builder().into_raw().expect("tables are well formed");
    let verdict = validate_category(&raw).is_valid();
    assert_eq!(verdict, t.is_category(), "seed {seed}");
    verdict
}

/// Random post/pre tables between two categories, checked against the
/// functoriality and mixed associativity equations.
fn agree_on_het(seed: u64, x: &Arc<FinCategory>, a: &Arc<FinCategory>) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hb = HetBuilder::new("H", x.clone(), a.clone());
    let mut elems: Vec<(ObjId, ObjId)> = Vec::new();
    for xo in x.objects() {
        for ao in a.objects() {
            for k in 0..rng.gen_range(0..=2) {
                hb.add_elem(format!("e{}_{}_{k}", xo.index(), ao.index()), xo, ao);
                elems.push((xo, ao));
            }
        }
    }
    let at = |xo: ObjId, ao: ObjId| -> Vec<usize> { (0..elems.len()).filter(|&i| elems[i] == (xo, ao)).collect() };
    let mut post = HashMap::new();
    let mut pre = HashMap::new();
    for (e, &(xo, ao)) in elems.iter().enumerate() {
        for &h in a.morphisms_from(ao) {
            let choices = at(xo, a.cod(h));
            if choices.is_empty() {
                return true;
            }
            let r = if a.is_identity(h) && rng.gen_bool(0.9) { e } else { choices[rng.gen_range(0..choices.len())] };
            post.insert((h, e), r);
            hb.set_post(h, HetId(e as u32), HetId(r as u32));
        }
        for &g in x.morphisms_into(xo) {
            let choices = at(x.dom(g), ao);
            if choices.is_empty() {
                return true;
            }
            let r = if x.is_identity(g) && rng.gen_bool(0.9) { e } else { choices[rng.gen_range(0..choices.len())] };
            pre.insert((e, g), r);
            hb.set_pre(HetId(e as u32), g, HetId(r as u32));
        }
    }
    let raw = hb.into_raw().expect("entries are typed");
    let verdict = validate_het_bifunctor(&raw).is_valid();

    let mut oracle = true;
    for (e, &(xo, ao)) in elems.iter().enumerate() {
        oracle &= post[&(a.identity(ao), e)] == e && pre[&(e, x.identity(xo))] == e;
        for &h1 in a.morphisms_from(ao) {
            for &h2 in a.morphisms_from(a.cod(h1)) {
                oracle &= post[&(a.comp(h2, h1), e)] == post[&(h2, post[&(h1, e)])];
            }
            for &g in x.morphisms_into(xo) {
                oracle &= post[&(h1, pre[&(e, g)])] == pre[&(post[&(h1, e)], g)];
            }
        }
        for &g1 in x.morphisms_into(xo) {
            for &g2 in x.morphisms_into(x.dom(g1)) {
                oracle &= pre[&(e, x.comp(g1, g2))] == pre[&(pre[&(e, g1)], g2)];
            }
        }
    }
    assert_eq!(verdict, oracle, "seed {seed}");
    verdict
}

#[test]
fn both_verdicts_occur_for_categories() {
    let verdicts: Vec<bool> = (0..400).map(agree_on_category).collect();
    assert!(verdicts.iter().any(|&v| v));
    assert!(verdicts.iter().any(|&v| !v));
}

#[test]
fn both_verdicts_occur_for_hets() {
    let x = common::chain("X", 2);
    let a = Arc::new(common::monoid("A", &[vec![0, 1], vec![1, 0]]).unwrap());
    let verdicts: Vec<bool> = (0..300).map(|s| agree_on_het(s, &x, &a)).collect();
    assert!(verdicts.iter().any(|&v| v));
    assert!(verdicts.iter().any(|&v| !v));
}

#[test]
fn cyclic_groups_are_categories_and_shifted_tables_are_not() {
    for n in 1..6 {
        let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|f| (g + f) % n).collect()).collect();
        assert!(common::monoid("Z", &table).is_some(), "Z/{n}");
        if n > 1 {
            let shifted: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|f| (g + f + 1) % n).collect()).collect();
            assert!(common::monoid("Z", &shifted).is_none(), "shifted Z/{n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn category_validator_matches_oracle(seed in any::<u64>()) {
        agree_on_category(seed);
    }

    #[test]
    fn het_validator_matches_oracle(seed in any::<u64>(), m in 1usize..4) {
        let x = common::chain("X", 2);
        let table: Vec<Vec<usize>> = (0..m).map(|g| (0..m).map(|f| (g + f) % m).collect()).collect();
        let a = Arc::new(common::monoid("A", &table).unwrap());
        agree_on_het(seed, &x, &a);
        agree_on_het(seed, &a, &x);
    }
}
