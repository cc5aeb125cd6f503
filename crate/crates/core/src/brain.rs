//! Brain functors: a functor `B: X → A` that left-represents hets `X ⇝ A`
//! and right-represents hets `A ⇝ X` at the same objects `B x`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::adjunction::{het_from_adjunction, Adjunction};
use crate::budget::{Budget, WorkMeter};
use crate::category::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::het::{HetBifunctor, HetId};
use crate::report::{Law, ValidationReport};
use crate::universals::{find_family_for_functor, Chirality, FamilyFailure, RepresentationFamily};

/// `B` with its two representation families: `α_x ∈ H_in(x, B x)` on the
/// left and `ε_x ∈ H_out(B x, x)` on the right.
#[derive(Debug, Clone)]
pub struct BrainWitness {
    pub functor: Functor,
    pub h_in: Arc<HetBifunctor>,
    pub h_out: Arc<HetBifunctor>,
    pub left: RepresentationFamily,
    pub right: RepresentationFamily,
}

impl BrainWitness {
    pub fn alpha(&self, x: ObjId) -> HetId {
        self.left.witnesses[x.index()].universal
    }

    pub fn epsilon(&self, x: ObjId) -> HetId {
        self.right.witnesses[x.index()].universal
    }
}

fn check_shapes(b: &Functor, h_in: &HetBifunctor, h_out: &HetBifunctor) -> Result<()> {
    let (x, a) = (b.source(), b.target());
    let ok = h_in.source().same_structure(x)
        && h_in.target().same_structure(a)
        && h_out.source().same_structure(a)
        && h_out.target().same_structure(x);
    if ok {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "`{}` must go from `{}` to `{}` and `{}` back",
            h_in.name(),
            x.name(),
            a.name(),
            h_out.name()
        )))
    }
}

fn failure_message(side: &str, het: &HetBifunctor, b: &Functor, failure: &FamilyFailure) -> String {
    let (x, a) = (b.source(), b.target());
    match *failure {
        FamilyFailure::NoUniversal { base, rep_object } => match side {
            "left" => format!(
                "left side: no universal het in `{}` from `{}` to `{}`",
                het.name(),
                x.object_name(base),
                a.object_name(rep_object)
            ),
            _ => format!(
                "right side: no universal het in `{}` from `{}` to `{}`",
                het.name(),
                a.object_name(rep_object),
                x.object_name(base)
            ),
        },
        FamilyFailure::NotInduced => format!(
            "{side} side: universal hets of `{}` exist but no choice of them induces `{}`",
            het.name(),
            b.name()
        ),
    }
}

/// Looks for natural families `α` and `ε` whose induced functors are both
/// `b`. The report names the side and base object that fail.
pub fn verify_brain_functor(
    b: &Functor,
    h_in: &Arc<HetBifunctor>,
    h_out: &Arc<HetBifunctor>,
    budget: &Budget,
) -> Result<std::result::Result<BrainWitness, ValidationReport>> {
    check_shapes(b, h_in, h_out)?;
    let id = Functor::identity(b.source());
    let mut report = ValidationReport::new(format!("brain functor `{}`", b.name()));
    let left = find_family_for_functor(h_in, b, &id, Chirality::Left, budget)?;
    let right = find_family_for_functor(h_out, b, &id, Chirality::Right, budget)?;
    if let Err(f) = &left {
        report.push(Law::Representation, failure_message("left", h_in, b, f));
    }
    if let Err(f) = &right {
        report.push(Law::Representation, failure_message("right", h_out, b, f));
    }
    match (left, right) {
        (Ok(left), Ok(right)) => Ok(Ok(BrainWitness {
            functor: b.clone(),
            h_in: h_in.clone(),
            h_out: h_out.clone(),
            left,
            right,
        })),
        _ => Ok(Err(report)),
    }
}

/// From `L ⊣ B` and `B ⊣ R`: `H_in = Hom_A(B -, -)` and
/// `H_out = Hom_X(L -, -)`, the latter restricted to the domain of `B` when
/// the adjunction is relative.
pub fn brain_from_adjoints(adj_lb: &Adjunction, adj_br: &Adjunction, budget: &Budget) -> Result<BrainWitness> {
    let b = &adj_br.left;
    if !adj_lb.right.same_action(b) {
        return Err(Error::Shape(format!(
            "`{}` and `{}` do not share the middle functor",
            adj_lb.name, adj_br.name
        )));
    }
    let h_in = het_from_adjunction(adj_br)?.het;
    let h_out = het_from_adjunction(adj_lb)?.het;
    let h_out = if adj_lb.right_incl.is_identity() {
        h_out
    } else {
        let name = h_out.name().to_string();
        Arc::new(h_out.pullback(&Functor::identity(h_out.source()), &adj_lb.right_incl, name)?)
    };
    match verify_brain_functor(b, &h_in, &h_out, budget)? {
        Ok(w) => Ok(w),
        Err(report) => Err(Error::Internal(format!(
            "functor with both adjoints failed the brain check: {report}"
        ))),
    }
}

/// Objects of `A` whose hom-set sizes match the het-set sizes at `x` on both
/// sides.
fn object_candidates(x: ObjId, a: &FinCategory, h_in: &HetBifunctor, h_out: &HetBifunctor) -> Vec<ObjId> {
    a.objects()
        .filter(|&c| {
            a.objects().all(|o| {
                a.hom_set(c, o).len() == h_in.het_set(x, o).len() && a.hom_set(o, c).len() == h_out.het_set(o, x).len()
            })
        })
        .collect()
}

/// Every functor with the given object map, in lexicographic order of
/// morphism images, pruned by identity and composition preservation.
fn functors_over(x: &Arc<FinCategory>, a: &Arc<FinCategory>, obj_map: &[ObjId], meter: &WorkMeter) -> Result<Vec<Functor>> {
    let n = x.num_morphisms();
    // composition constraints keyed by the last of the three morphisms
    let mut checks: Vec<Vec<(MorId, MorId, MorId)>> = vec![Vec::new(); n];
    for g in x.morphisms() {
        for &f in x.morphisms_into(x.dom(g)) {
            let gf = x.comp(g, f);
            let last = g.index().max(f.index()).max(gf.index());
            checks[last].push((g, f, gf));
        }
    }
    let candidates: Vec<Vec<MorId>> = x
        .morphisms()
        .map(|m| {
            let (d, c) = (obj_map[x.dom(m).index()], obj_map[x.cod(m).index()]);
            if x.is_identity(m) {
                vec![a.identity(d)]
            } else {
                a.hom_set(d, c).to_vec()
            }
        })
        .collect();
    let mut out = Vec::new();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    let mut choice = vec![0usize; n];
    let mut image = vec![MorId(0); n];
    let mut level = 0usize;
    if n == 0 {
        out.push(Functor::from_maps("B", x.clone(), a.clone(), obj_map.to_vec(), Vec::new()));
        return Ok(out);
    }
    loop {
        meter.charge(1)?;
        image[level] = candidates[level][choice[level]];
        let ok = checks[level]
            .iter()
            .all(|&(g, f, gf)| a.comp(image[g.index()], image[f.index()]) == image[gf.index()]);
        if ok && level + 1 == n {
            out.push(Functor::from_maps("B", x.clone(), a.clone(), obj_map.to_vec(), image.clone()));
        }
        if ok && level + 1 < n {
            level += 1;
            choice[level] = 0;
            continue;
        }
        loop {
            choice[level] += 1;
            if choice[level] < candidates[level].len() {
                break;
            }
            if level == 0 {
                return Ok(out);
            }
            level -= 1;
        }
    }
}

/// All brain functors `X → A` for the given het pair, in canonical order
/// (object maps lexicographic, then morphism maps).
pub fn find_brain_functors(
    h_in: &Arc<HetBifunctor>,
    h_out: &Arc<HetBifunctor>,
    budget: &Budget,
) -> Result<Vec<BrainWitness>> {
    let (x, a) = (h_in.source().clone(), h_in.target().clone());
    if !h_out.source().same_structure(&a) || !h_out.target().same_structure(&x) {
        return Err(Error::Shape(format!(
            "`{}` does not go back from `{}` to `{}`",
            h_out.name(),
            a.name(),
            x.name()
        )));
    }
    budget.check_objects(x.name(), x.num_objects())?;
    budget.check_objects(a.name(), a.num_objects())?;
    let per_object: Vec<Vec<ObjId>> = x.objects().map(|o| object_candidates(o, &a, h_in, h_out)).collect();
    let mut obj_maps: Vec<Vec<ObjId>> = vec![Vec::new()];
    for cands in &per_object {
        let total = obj_maps.len().saturating_mul(cands.len());
        if total as u64 > budget.max_work {
            return Err(Error::Budget(format!("{total} candidate object maps exceed the work budget")));
        }
        obj_maps = obj_maps
            .into_iter()
            .flat_map(|m| {
                cands.iter().map(move |&c| {
                    let mut next = m.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    let meter = budget.meter();
    let search = |obj_map: &Vec<ObjId>| -> Result<Vec<BrainWitness>> {
        let mut found = Vec::new();
        for b in functors_over(&x, &a, obj_map, &meter)? {
            if let Ok(w) = verify_brain_functor(&b, h_in, h_out, budget)? {
                found.push(w);
            }
        }
        Ok(found)
    };
    let results: Vec<Result<Vec<BrainWitness>>> = if budget.parallel {
        obj_maps.par_iter().map(search).collect()
    } else {
        obj_maps.iter().map(search).collect()
    };
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
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
    fn identity_is_the_only_brain_functor_for_homs() {
        let c = arrow();
        let h = Arc::new(HetBifunctor::hom(&c));
        let found = find_brain_functors(&h, &h, &Budget::default()).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].functor.is_identity());
        assert_eq!(found[0].alpha(ObjId(0)).0, c.identity(ObjId(0)).0);
    }

    #[test]
    fn empty_out_bifunctor_has_no_brain_functor() {
        let c = arrow();
        let h = Arc::new(HetBifunctor::hom(&c));
        let e = Arc::new(HetBifunctor::empty("empty", c.clone(), c.clone()));
        assert!(find_brain_functors(&h, &e, &Budget::default()).unwrap().is_empty());
        let report = verify_brain_functor(&Functor::identity(&c), &h, &e, &Budget::default())
            .unwrap()
            .unwrap_err();
        assert!(report.violations[0].message.starts_with("right side"));
    }
}
