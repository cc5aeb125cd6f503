#![allow(dead_code)]

use std::sync::Arc;

use hetcat::{CategoryBuilder, FinCategory, HetBifunctor, HetBuilder, ObjId};

/// Reflexive-transitive closure of `edges` (pairs `i < j` only, so the
/// result is a partial order on `0..n`).
pub fn order(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in edges {
        let (i, j) = (i % n, j % n);
        if i < j {
            le[i][j] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

/// The thin category of a partial order; the morphism `i -> j` is `i<j`.
pub fn poset(name: &str, le: &[Vec<bool>]) -> Arc<FinCategory> {
    let n = le.len();
    let mut cb = CategoryBuilder::new(name);
    let objs: Vec<ObjId> = (0..n).map(|i| cb.add_object(format!("p{i}"))).collect();
    let mut mor = vec![vec![None; n]; n];
    for i in 0..n {
        mor[i][i] = Some(cb.add_identity(objs[i]));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                mor[i][j] = Some(cb.add_morphism(format!("{i}<{j}"), objs[i], objs[j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g), Some(h)) = (mor[i][j], mor[j][k], mor[i][k]) {
                    cb.set_compose(g, f, h);
                }
            }
        }
    }
    Arc::new(cb.build().expect("partial orders are categories"))
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(name: &str, n: usize) -> Arc<FinCategory> {
    let le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
    poset(name, &le)
}

/// The one-object category of a finite monoid given by its table; element 0
/// is the unit.
pub fn monoid(name: &str, table: &[Vec<usize>]) -> Option<FinCategory> {
    let n = table.len();
    let mut cb = CategoryBuilder::new(name);
    let x = cb.add_object("*");
    let mut ms = vec![cb.add_identity(x)];
    for i in 1..n {
        ms.push(cb.add_morphism(format!("m{i}"), x, x));
    }
    for g in 0..n {
        for f in 0..n {
            cb.set_compose(ms[g], ms[f], ms[table[g][f]]);
        }
    }
    cb.build().ok()
}

/// Het bifunctor between two partial orders given by a relation closed
/// under `x' <= x R a <= a'`. Elements are named `x~a`.
pub fn thin_het(name: &str, p: &Arc<FinCategory>, q: &Arc<FinCategory>, rel: &[Vec<bool>]) -> HetBifunctor {
    let mut hb = HetBuilder::new(name, p.clone(), q.clone());
    let mut id = vec![vec![None; q.num_objects()]; p.num_objects()];
    for x in p.objects() {
        for a in q.objects() {
            if rel[x.index()][a.index()] {
                id[x.index()][a.index()] = Some(hb.add_elem(format!("{}~{}", x.index(), a.index()), x, a));
            }
        }
    }
    for x in p.objects() {
        for a in q.objects() {
            let Some(e) = id[x.index()][a.index()] else { continue };
            for &u in q.morphisms_from(a) {
                let r = id[x.index()][q.cod(u).index()].expect("relation is upward closed");
                hb.set_post(u, e, r);
            }
            for &g in p.morphisms_into(x) {
                let r = id[p.dom(g).index()][a.index()].expect("relation is downward closed");
                hb.set_pre(e, g, r);
            }
        }
    }
    let raw = hb.into_raw().expect("total tables");
    HetBifunctor::from_raw(raw).expect("thin profunctors are het bifunctors")
}

/// Closes `rel` under `x' <= x R a <= a'`.
pub fn close_relation(p: &[Vec<bool>], q: &[Vec<bool>], seed: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let (n, m) = (p.len(), q.len());
    let mut rel = vec![vec![false; m]; n];
    for &(x, a) in seed {
        let (x, a) = (x % n, a % m);
        for x2 in 0..n {
            for a2 in 0..m {
                if p[x2][x] && q[a][a2] {
                    rel[x2][a2] = true;
                }
            }
        }
    }
    rel
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Number of invertible `n x n` matrices over `F_q`.
pub fn gl_order(n: u32, q: usize) -> usize {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}
