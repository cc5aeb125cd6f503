//! Universal hets: participation as unique factorization, exhaustive search
//! for left and right representations, and assembly of the representing
//! functor.
//!
//! A *left* representation at `x` is an object `R` of the target category
//! with a het `η: x → R` such that every het `f: x → a` is `post(f⋆, η)` for
//! exactly one hom `f⋆: R ⇒ a`. A *right* representation at `a` is an object
//! `R` of the source category with `ε: R → a` such that every `f: x → a` is
//! `pre(ε, f⋆)` for exactly one `f⋆: x ⇒ R`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Budget, WorkMeter};
use crate::category::{FinCategory, MorId, ObjId};
use crate::construct::full_subcategory;
use crate::error::{Error, Result};
use crate::functor::{validate_functor, Functor};
use crate::het::{HetBifunctor, HetId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    pub fn label(self) -> &'static str {
        match self {
            Chirality::Left => "left",
            Chirality::Right => "right",
        }
    }
}

/// A universal het together with the factorization of every het at its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepWitness {
    pub chirality: Chirality,
    /// Object of the source category (left) or target category (right).
    pub base: ObjId,
    /// Object of the other category.
    pub rep_object: ObjId,
    pub universal: HetId,
    /// `(f, f⋆)` for every het `f` at the base, sorted by `f`.
    pub factors: Vec<(HetId, MorId)>,
}

impl RepWitness {
    pub fn factor_of(&self, f: HetId) -> Option<MorId> {
        self.factors
            .binary_search_by_key(&f, |&(e, _)| e)
            .ok()
            .map(|i| self.factors[i].1)
    }
}

/// A het at the base with zero or several factors through a candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub het: HetId,
    pub factors: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniversalCheck {
    Universal(RepWitness),
    Fails(Counterexample),
}

impl UniversalCheck {
    pub fn is_universal(&self) -> bool {
        matches!(self, UniversalCheck::Universal(_))
    }

    pub fn witness(self) -> Option<RepWitness> {
        match self {
            UniversalCheck::Universal(w) => Some(w),
            UniversalCheck::Fails(_) => None,
        }
    }
}

/// The category holding the base objects, and the one holding representing
/// objects.
fn sides(h: &HetBifunctor, chirality: Chirality) -> (&Arc<FinCategory>, &Arc<FinCategory>) {
    match chirality {
        Chirality::Left => (h.source(), h.target()),
        Chirality::Right => (h.target(), h.source()),
    }
}

/// Hets between `base` and `other`, oriented by chirality.
fn hets_at(h: &HetBifunctor, chirality: Chirality, base: ObjId, other: ObjId) -> &[HetId] {
    match chirality {
        Chirality::Left => h.het_set(base, other),
        Chirality::Right => h.het_set(other, base),
    }
}

/// Homs from the representing object to `other` (left) or from `other` to it
/// (right).
fn homs_at<'a>(cat: &'a FinCategory, chirality: Chirality, rep: ObjId, other: ObjId) -> &'a [MorId] {
    match chirality {
        Chirality::Left => cat.hom_set(rep, other),
        Chirality::Right => cat.hom_set(other, rep),
    }
}

#[inline]
fn act(h: &HetBifunctor, chirality: Chirality, universal: HetId, m: MorId) -> HetId {
    match chirality {
        Chirality::Left => h.post(m, universal),
        Chirality::Right => h.pre(universal, m),
    }
}

fn universal_endpoints(h: &HetBifunctor, chirality: Chirality, e: HetId) -> (ObjId, ObjId) {
    match chirality {
        Chirality::Left => (h.elem_source(e), h.elem_target(e)),
        Chirality::Right => (h.elem_target(e), h.elem_source(e)),
    }
}

/// Whether hom-set and het-set sizes agree at every counterpart object, a
/// necessary condition that does not depend on the universal het.
fn cardinalities_match(h: &HetBifunctor, chirality: Chirality, base: ObjId, rep: ObjId) -> bool {
    let (_, rc) = sides(h, chirality);
    rc.objects()
        .all(|o| homs_at(rc, chirality, rep, o).len() == hets_at(h, chirality, base, o).len())
}

fn check_metered(
    h: &HetBifunctor,
    candidate_obj: ObjId,
    candidate_het: HetId,
    chirality: Chirality,
    meter: Option<&WorkMeter>,
) -> Result<UniversalCheck> {
    let (base, rep) = universal_endpoints(h, chirality, candidate_het);
    if rep != candidate_obj {
        return Err(Error::Shape(format!(
            "het `{}` does not end at the candidate object",
            h.elem_name(candidate_het)
        )));
    }
    let (_, rc) = sides(h, chirality);
    let mut factors = Vec::new();
    for o in rc.objects() {
        let homs = homs_at(rc, chirality, rep, o);
        let hets = hets_at(h, chirality, base, o);
        if let Some(m) = meter {
            m.charge(homs.len() as u64 + 1)?;
        }
        let mut first = vec![None::<MorId>; hets.len()];
        let mut bad = None;
        for &m in homs {
            let e = act(h, chirality, candidate_het, m);
            let slot = &mut first[h.local_index(e)];
            if slot.is_some() {
                bad = Some(e);
                break;
            }
            *slot = Some(m);
        }
        let bad = bad.or_else(|| first.iter().position(|s| s.is_none()).map(|i| hets[i]));
        if let Some(e) = bad {
            let all = homs
                .iter()
                .copied()
                .filter(|&m| act(h, chirality, candidate_het, m) == e)
                .collect();
            return Ok(UniversalCheck::Fails(Counterexample { het: e, factors: all }));
        }
        factors.extend(hets.iter().zip(first).map(|(&e, m)| (e, m.expect("checked above"))));
    }
    factors.sort_unstable();
    Ok(UniversalCheck::Universal(RepWitness {
        chirality,
        base,
        rep_object: rep,
        universal: candidate_het,
        factors,
    }))
}

/// Universality condition: every het at the base factors uniquely through
/// `candidate_het`. On failure, returns a het with zero or several factors.
pub fn check_universal(
    h: &HetBifunctor,
    candidate_obj: ObjId,
    candidate_het: HetId,
    chirality: Chirality,
) -> Result<UniversalCheck> {
    check_metered(h, candidate_obj, candidate_het, chirality, None)
}

/// Every universal het at `base`, ordered by representing object and then by
/// het. An empty list means there is no representation at `base`.
pub fn find_representation_at(
    h: &HetBifunctor,
    base: ObjId,
    chirality: Chirality,
    budget: &Budget,
) -> Result<Vec<RepWitness>> {
    let (bc, rc) = sides(h, chirality);
    if base.index() >= bc.num_objects() {
        return Err(Error::Lookup {
            kind: "object",
            name: base.to_string(),
            context: format!("category `{}`", bc.name()),
        });
    }
    budget.check_objects(rc.name(), rc.num_objects())?;
    budget.check_het_size(h.name(), h.num_elems())?;
    let meter = budget.meter();
    let candidates: Vec<(ObjId, HetId)> = rc
        .objects()
        .filter(|&r| cardinalities_match(h, chirality, base, r))
        .flat_map(|r| hets_at(h, chirality, base, r).iter().map(move |&e| (r, e)))
        .collect();
    let run = |&(r, e): &(ObjId, HetId)| check_metered(h, r, e, chirality, Some(&meter));
    let results: Vec<Result<UniversalCheck>> = if budget.parallel {
        candidates.par_iter().map(run).collect()
    } else {
        candidates.iter().map(run).collect()
    };
    let mut out = Vec::new();
    for r in results {
        if let UniversalCheck::Universal(w) = r? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Participation: the unique hom through which `f` factors, recomputed from
/// the action tables.
pub fn factor_through(h: &HetBifunctor, f: HetId, w: &RepWitness) -> Result<MorId> {
    let (base, other) = universal_endpoints(h, w.chirality, f);
    if base != w.base {
        return Err(Error::Shape(format!(
            "het `{}` is not at the base object of the witness",
            h.elem_name(f)
        )));
    }
    let (_, rc) = sides(h, w.chirality);
    let found: Vec<MorId> = homs_at(rc, w.chirality, w.rep_object, other)
        .iter()
        .copied()
        .filter(|&m| act(h, w.chirality, w.universal, m) == f)
        .collect();
    match found.len() {
        0 => Err(Error::NotUniversal {
            het: h.elem_name(f).to_string(),
        }),
        1 => Ok(found[0]),
        _ => Err(Error::NotUnique {
            het: h.elem_name(f).to_string(),
            factors: found.iter().map(|&m| rc.morphism_name(m).to_string()).collect(),
        }),
    }
}

/// Uniqueness condition: any two witnesses are related by mutually inverse
/// factor maps carrying one universal het to the other.
pub fn check_uniqueness_up_to_iso(h: &HetBifunctor, witnesses: &[RepWitness]) -> bool {
    let Some(first) = witnesses.first() else {
        return true;
    };
    if witnesses
        .iter()
        .any(|w| w.base != first.base || w.chirality != first.chirality)
    {
        return false;
    }
    let (_, rc) = sides(h, first.chirality);
    for (i, w1) in witnesses.iter().enumerate() {
        for w2 in &witnesses[i + 1..] {
            let (Ok(u), Ok(v)) = (factor_through(h, w2.universal, w1), factor_through(h, w1.universal, w2)) else {
                return false;
            };
            // u relates the two representing objects in one direction, v in
            // the other; composites must be identities.
            let (id1, id2) = (rc.identity(w1.rep_object), rc.identity(w2.rep_object));
            let ok = match first.chirality {
                Chirality::Left => rc.comp(v, u) == id1 && rc.comp(u, v) == id2,
                Chirality::Right => rc.comp(u, v) == id1 && rc.comp(v, u) == id2,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Checks performed while certifying a representation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct NaturalityCertificate {
    /// Bijections `Hom ≅ Het` confirmed, one per pair of objects.
    pub bijections: usize,
    /// Naturality squares confirmed, in both variables.
    pub squares: usize,
}

/// One representation per base object of a (possibly partial) domain,
/// together with the functor they induce.
#[derive(Debug, Clone)]
pub struct RepresentationFamily {
    pub chirality: Chirality,
    pub het: Arc<HetBifunctor>,
    /// Sorted by base object.
    pub witnesses: Vec<RepWitness>,
    /// `F: X' → A` (left) or `G: A' → X` (right).
    pub functor: Functor,
    /// Inclusion of the domain `X'` or `A'` into the base category.
    pub inclusion: Functor,
    pub certificate: NaturalityCertificate,
}

impl RepresentationFamily {
    pub fn witness_at(&self, base: ObjId) -> Option<&RepWitness> {
        self.witnesses
            .binary_search_by_key(&base, |w| w.base)
            .ok()
            .map(|i| &self.witnesses[i])
    }

    /// Base objects with a witness, in canonical order.
    pub fn domain(&self) -> Vec<ObjId> {
        self.witnesses.iter().map(|w| w.base).collect()
    }

    pub fn is_total(&self) -> bool {
        let (bc, _) = sides(&self.het, self.chirality);
        self.witnesses.len() == bc.num_objects()
    }

    /// The domain object (in the functor's source) sitting over `base`.
    pub fn domain_object(&self, base: ObjId) -> Option<ObjId> {
        self.inclusion.obj_map().iter().position(|&o| o == base).map(|i| ObjId(i as u32))
    }
}

/// Builds the functor induced by one witness per base object and certifies
/// bijectivity and naturality of the family.
///
/// Left: `F(g: x1 ⇒ x2)` is the unique hom with `post(F g, η_x1) = pre(η_x2, g)`.
/// Right: `G(k: a1 ⇒ a2)` is the unique hom with `pre(ε_a2, G k) = post(k, ε_a1)`.
pub fn assemble_representation_functor(
    h: &Arc<HetBifunctor>,
    mut witnesses: Vec<RepWitness>,
    chirality: Chirality,
) -> Result<RepresentationFamily> {
    witnesses.sort_by_key(|w| w.base);
    if witnesses.windows(2).any(|p| p[0].base == p[1].base) {
        return Err(Error::Shape("two witnesses share a base object".into()));
    }
    if witnesses.iter().any(|w| w.chirality != chirality) {
        return Err(Error::Shape("witness chirality does not match the family".into()));
    }
    let (bc, rc) = sides(h, chirality);
    let bases: Vec<ObjId> = witnesses.iter().map(|w| w.base).collect();
    let (domain, inclusion) = if bases.len() == bc.num_objects() {
        (bc.clone(), Functor::identity(bc))
    } else {
        let name = format!("{}|{}", bc.name(), h.name());
        full_subcategory(bc, &bases, name)?
    };
    let obj_map: Vec<ObjId> = witnesses.iter().map(|w| w.rep_object).collect();
    let mut mor_map = Vec::with_capacity(domain.num_morphisms());
    for m in domain.morphisms() {
        let (d1, d2) = (domain.dom(m).index(), domain.cod(m).index());
        let g = inclusion.mor(m);
        let image = match chirality {
            Chirality::Left => witnesses[d1].factor_of(h.pre(witnesses[d2].universal, g)),
            Chirality::Right => witnesses[d2].factor_of(h.post(g, witnesses[d1].universal)),
        };
        let image = image.ok_or_else(|| {
            Error::Internal(format!(
                "witness at `{}` does not factor the transported universal het",
                bc.object_name(bases[d1])
            ))
        })?;
        mor_map.push(image);
    }
    let name = match chirality {
        Chirality::Left => format!("Left({})", h.name()),
        Chirality::Right => format!("Right({})", h.name()),
    };
    let functor = Functor::from_maps(name, domain.clone(), rc.clone(), obj_map, mor_map);
    let report = validate_functor(&functor);
    if !report.is_valid() {
        return Err(Error::Internal(format!("induced functor is not a functor: {report}")));
    }
    let mut family = RepresentationFamily {
        chirality,
        het: h.clone(),
        witnesses,
        functor,
        inclusion,
        certificate: NaturalityCertificate::default(),
    };
    family.certificate = certify_family(&family)?;
    Ok(family)
}

/// Re-verifies that `Hom(F x, a) → Het(x, a)` (or `Hom(x', G a) → Het(x', a)`)
/// is a bijection natural in both variables. The squares are checked for
/// generators of both categories, which suffices because both sides are
/// functorial.
pub fn certify_family(family: &RepresentationFamily) -> Result<NaturalityCertificate> {
    let h = &family.het;
    let chirality = family.chirality;
    let (_, rc) = sides(h, chirality);
    let domain = family.functor.source();
    let mut cert = NaturalityCertificate::default();
    for w in &family.witnesses {
        match check_universal(h, w.rep_object, w.universal, chirality)? {
            UniversalCheck::Universal(_) => cert.bijections += rc.num_objects(),
            UniversalCheck::Fails(c) => {
                return Err(Error::Internal(format!(
                    "family member at base {} is not universal (het `{}`)",
                    w.base,
                    h.elem_name(c.het)
                )))
            }
        }
    }
    let fail = |what: &str| Err(Error::Internal(format!("naturality fails {what}")));
    // variable on the representing side
    for w in &family.witnesses {
        for &k in rc.generators() {
            let pre_obj = match chirality {
                Chirality::Left => rc.dom(k),
                Chirality::Right => rc.cod(k),
            };
            for &m in homs_at(rc, chirality, w.rep_object, pre_obj) {
                let (lhs, rhs) = match chirality {
                    Chirality::Left => (h.post(k, h.post(m, w.universal)), h.post(rc.comp(k, m), w.universal)),
                    Chirality::Right => (h.pre(h.pre(w.universal, m), k), h.pre(w.universal, rc.comp(m, k))),
                };
                if lhs != rhs {
                    return fail(&format!("at `{}` for het `{}`", rc.morphism_name(k), h.elem_name(w.universal)));
                }
                cert.squares += 1;
            }
        }
    }
    // variable on the base side, through the induced functor
    for &g in domain.generators() {
        let (d1, d2) = (domain.dom(g), domain.cod(g));
        let (w1, w2) = (&family.witnesses[d1.index()], &family.witnesses[d2.index()]);
        let fg = family.functor.mor(g);
        let ig = family.inclusion.mor(g);
        for o in rc.objects() {
            match chirality {
                Chirality::Left => {
                    // post(m ∘ F g, η_1) = pre(post(m, η_2), g) for m: F x2 ⇒ a
                    for &m in rc.hom_set(w2.rep_object, o) {
                        if h.post(rc.comp(m, fg), w1.universal) != h.pre(h.post(m, w2.universal), ig) {
                            return fail(&format!("at base morphism `{}`", domain.morphism_name(g)));
                        }
                        cert.squares += 1;
                    }
                }
                Chirality::Right => {
                    // pre(ε_2, G g ∘ m) = post(g, pre(ε_1, m)) for m: x ⇒ G a1
                    for &m in rc.hom_set(o, w1.rep_object) {
                        if h.pre(w2.universal, rc.comp(fg, m)) != h.post(ig, h.pre(w1.universal, m)) {
                            return fail(&format!("at base morphism `{}`", domain.morphism_name(g)));
                        }
                        cert.squares += 1;
                    }
                }
            }
        }
    }
    Ok(cert)
}

/// All witnesses at every base object plus the family assembled from the
/// canonically least witness at each base that has one.
#[derive(Debug, Clone)]
pub struct FamilySearch {
    pub per_base: Vec<(ObjId, Vec<RepWitness>)>,
    pub family: RepresentationFamily,
}

pub fn find_representation_family(
    h: &Arc<HetBifunctor>,
    chirality: Chirality,
    budget: &Budget,
) -> Result<FamilySearch> {
    let (bc, _) = sides(h, chirality);
    let mut per_base = Vec::with_capacity(bc.num_objects());
    for b in bc.objects() {
        per_base.push((b, find_representation_at(h, b, chirality, budget)?));
    }
    let chosen = per_base
        .iter()
        .filter_map(|(_, ws)| ws.first().cloned())
        .collect();
    let family = assemble_representation_functor(h, chosen, chirality)?;
    Ok(FamilySearch { per_base, family })
}

/// Why no family through a prescribed functor exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyFailure {
    /// No universal het at this base object lands on the prescribed object.
    NoUniversal { base: ObjId, rep_object: ObjId },
    /// Universal hets exist everywhere but no choice induces the functor.
    NotInduced,
}

/// A representation family whose induced functor is exactly `functor`,
/// defined on the objects `inclusion` picks out of the base category.
///
/// Left: `functor: D → A`, `inclusion: D → X`; right: `functor: D → X`,
/// `inclusion: D → A`. The universal hets are chosen by backtracking so that
/// the factorization of transported universals reproduces `functor` on
/// every morphism.
pub fn find_family_for_functor(
    h: &Arc<HetBifunctor>,
    functor: &Functor,
    inclusion: &Functor,
    chirality: Chirality,
    budget: &Budget,
) -> Result<std::result::Result<RepresentationFamily, FamilyFailure>> {
    let (bc, rc) = sides(h, chirality);
    let d = functor.source();
    if !inclusion.source().same_structure(d)
        || !inclusion.target().same_structure(bc)
        || !functor.target().same_structure(rc)
    {
        return Err(Error::Shape(format!(
            "functor `{}` does not fit the {} side of `{}`",
            functor.name(),
            chirality.label(),
            h.name()
        )));
    }
    let mut seen = vec![false; bc.num_objects()];
    if inclusion.obj_map().iter().any(|o| std::mem::replace(&mut seen[o.index()], true)) {
        return Err(Error::Shape(format!("`{}` is not injective on objects", inclusion.name())));
    }
    let meter = budget.meter();
    // compatibility of universal hets u1 at d1 and u2 at d2 along m: d1 ⇒ d2
    let compatible = |m: MorId, u1: HetId, u2: HetId| match chirality {
        Chirality::Left => h.post(functor.mor(m), u1) == h.pre(u2, inclusion.mor(m)),
        Chirality::Right => h.pre(u2, functor.mor(m)) == h.post(inclusion.mor(m), u1),
    };
    let mut candidates: Vec<Vec<RepWitness>> = Vec::with_capacity(d.num_objects());
    for o in d.objects() {
        let (base, rep) = (inclusion.ob(o), functor.ob(o));
        let mut list = Vec::new();
        if cardinalities_match(h, chirality, base, rep) {
            for &u in hets_at(h, chirality, base, rep) {
                if let UniversalCheck::Universal(w) = check_metered(h, rep, u, chirality, Some(&meter))? {
                    let endo_ok = d
                        .hom_set(o, o)
                        .iter()
                        .all(|&m| compatible(m, w.universal, w.universal));
                    if endo_ok {
                        list.push(w);
                    }
                }
            }
            if list.is_empty() && !hets_at(h, chirality, base, rep).iter().any(|&u| {
                check_universal(h, rep, u, chirality).map(|c| c.is_universal()).unwrap_or(false)
            }) {
                return Ok(Err(FamilyFailure::NoUniversal { base, rep_object: rep }));
            }
        } else {
            return Ok(Err(FamilyFailure::NoUniversal { base, rep_object: rep }));
        }
        if list.is_empty() {
            return Ok(Err(FamilyFailure::NotInduced));
        }
        candidates.push(list);
    }
    let n = d.num_objects();
    let mut choice = vec![0usize; n];
    let mut level = 0usize;
    // iterative backtracking over objects in canonical order
    let consistent = |choice: &[usize], level: usize| {
        let o = ObjId(level as u32);
        let u = candidates[level][choice[level]].universal;
        (0..level).all(|j| {
            let p = ObjId(j as u32);
            let v = candidates[j][choice[j]].universal;
            d.hom_set(p, o).iter().all(|&m| compatible(m, v, u)) && d.hom_set(o, p).iter().all(|&m| compatible(m, u, v))
        })
    };
    if n > 0 {
        loop {
            meter.charge(1)?;
            if consistent(&choice, level) {
                if level + 1 == n {
                    break;
                }
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
                    return Ok(Err(FamilyFailure::NotInduced));
                }
                level -= 1;
            }
        }
    }
    let witnesses: Vec<RepWitness> = (0..n).map(|i| candidates[i][choice[i]].clone()).collect();
    let family = assemble_representation_functor(h, witnesses, chirality)?;
    // the assembled functor lives on the full subcategory over the bases;
    // compare it with `functor` morphism by morphism
    let mut sub_index = vec![None; bc.num_morphisms()];
    for m in family.functor.source().morphisms() {
        sub_index[family.inclusion.mor(m).index()] = Some(m);
    }
    for m in d.morphisms() {
        let same = sub_index[inclusion.mor(m).index()].map(|s| family.functor.mor(s)) == Some(functor.mor(m));
        if !same {
            return Ok(Err(FamilyFailure::NotInduced));
        }
    }
    Ok(Ok(family))
}
