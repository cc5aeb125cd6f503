//! Adjunctions as natural hom-set bijections and as pairs of representations
//! of one het bifunctor, with conversions between the two presentations.
//!
//! An [`Adjunction`] may be relative: `F: X' → A` and `G: A' → X` are defined
//! on subcategories `J: X' ↪ X` and `I: A' ↪ A`, and `phi` is a natural
//! bijection `Hom_A(F x', I a') ≅ Hom_X(J x', G a')`. With both inclusions
//! identities this is the ordinary hom-set definition.

use std::sync::Arc;

use crate::category::{MorId, ObjId};
use crate::error::{Error, Result};
use crate::functor::{validate_functor, Functor};
use crate::het::{HetBifunctor, HetId};
use crate::report::{Law, ValidationReport};
use crate::universals::{
    assemble_representation_functor, check_universal, Chirality, RepWitness, RepresentationFamily, UniversalCheck,
};

#[derive(Debug, Clone)]
pub struct Adjunction {
    pub name: String,
    /// `F: X' → A`.
    pub left: Functor,
    /// `G: A' → X`.
    pub right: Functor,
    /// `J: X' → X`.
    pub left_incl: Functor,
    /// `I: A' → A`.
    pub right_incl: Functor,
    /// `phi[x' * |A'| + a'][k]` is the image of the `k`-th hom of
    /// `Hom_A(F x', I a')`, a hom in `Hom_X(J x', G a')`.
    pub phi: Vec<Vec<MorId>>,
    /// Name of the het bifunctor the bijections were composed through.
    pub middle: Option<String>,
}

impl Adjunction {
    /// Ordinary adjunction `F ⊣ G` with `F: X → A` and `G: A → X`.
    pub fn new(name: impl Into<String>, left: Functor, right: Functor, phi: Vec<Vec<MorId>>) -> Adjunction {
        let left_incl = Functor::identity(left.source());
        let right_incl = Functor::identity(right.source());
        Adjunction::relative(name, left, right, left_incl, right_incl, phi)
    }

    pub fn relative(
        name: impl Into<String>,
        left: Functor,
        right: Functor,
        left_incl: Functor,
        right_incl: Functor,
        phi: Vec<Vec<MorId>>,
    ) -> Adjunction {
        Adjunction {
            name: name.into(),
            left,
            right,
            left_incl,
            right_incl,
            phi,
            middle: None,
        }
    }

    /// Builds `phi` from a function on homs.
    pub fn from_fn(
        name: impl Into<String>,
        left: Functor,
        right: Functor,
        left_incl: Functor,
        right_incl: Functor,
        mut phi: impl FnMut(ObjId, ObjId, MorId) -> MorId,
    ) -> Adjunction {
        let (xp, ap) = (left.source().clone(), right.source().clone());
        let a = left.target().clone();
        let mut table = Vec::with_capacity(xp.num_objects() * ap.num_objects());
        for x in xp.objects() {
            for y in ap.objects() {
                table.push(
                    a.hom_set(left.ob(x), right_incl.ob(y))
                        .iter()
                        .map(|&h| phi(x, y, h))
                        .collect(),
                );
            }
        }
        Adjunction::relative(name, left, right, left_incl, right_incl, table)
    }

    pub fn is_relative(&self) -> bool {
        !(self.left_incl.is_identity() && self.right_incl.is_identity())
    }

    /// `phi(h)` for `h: F x' ⇒ I a'`.
    pub fn apply(&self, x: ObjId, a: ObjId, h: MorId) -> MorId {
        let na = self.right.source().num_objects();
        self.phi[x.index() * na + a.index()][self.left.target().local_index(h)]
    }

    /// `phi⁻¹(g)` for `g: J x' ⇒ G a'`.
    pub fn unapply(&self, x: ObjId, a: ObjId, g: MorId) -> Option<MorId> {
        let na = self.right.source().num_objects();
        let at = self.left.target();
        let k = self.phi[x.index() * na + a.index()].iter().position(|&m| m == g)?;
        Some(at.hom_set(self.left.ob(x), self.right_incl.ob(a))[k])
    }
}

/// Checks that each component of `phi` is a bijection and that the family
/// is natural in both variables. Missing or surplus components are a shape
/// error; everything else is reported.
pub fn verify_homset_adjunction(adj: &Adjunction) -> Result<ValidationReport> {
    let (f, g, j, i) = (&adj.left, &adj.right, &adj.left_incl, &adj.right_incl);
    let (xp, ap) = (f.source(), g.source());
    let (xc, ac) = (g.target(), f.target());
    let fits = j.source().same_structure(xp)
        && i.source().same_structure(ap)
        && j.target().same_structure(xc)
        && i.target().same_structure(ac);
    if !fits {
        return Err(Error::Shape(format!("functors of `{}` are not opposed", adj.name)));
    }
    let na = ap.num_objects();
    if adj.phi.len() != xp.num_objects() * na {
        return Err(Error::Shape(format!(
            "`{}` has {} components, expected {}",
            adj.name,
            adj.phi.len(),
            xp.num_objects() * na
        )));
    }
    let mut report = ValidationReport::new(adj.name.clone());
    for functor in [f, g, j, i] {
        report.merge(validate_functor(functor));
    }
    if !report.is_valid() {
        return Ok(report);
    }
    let mut shape_ok = true;
    for x in xp.objects() {
        for a in ap.objects() {
            let homs = ac.hom_set(f.ob(x), i.ob(a));
            let comp = &adj.phi[x.index() * na + a.index()];
            let at = format!("({}, {})", xp.object_name(x), ap.object_name(a));
            if comp.len() != homs.len() {
                return Err(Error::Shape(format!(
                    "component {at} of `{}` has {} entries for {} homs",
                    adj.name,
                    comp.len(),
                    homs.len()
                )));
            }
            let targets = xc.hom_set(j.ob(x), g.ob(a));
            if comp.iter().any(|&m| m.index() >= xc.num_morphisms() || xc.dom(m) != j.ob(x) || xc.cod(m) != g.ob(a)) {
                report.push(Law::ComponentShape, format!("component {at} leaves Hom(J x, G a)"));
                shape_ok = false;
                continue;
            }
            let mut seen = vec![false; targets.len()];
            for &m in comp {
                seen[xc.local_index(m)] = true;
            }
            if comp.len() != targets.len() || seen.iter().any(|s| !s) {
                report.push(
                    Law::Bijectivity,
                    format!(
                        "component {at} maps {} homs onto {} of {}",
                        comp.len(),
                        seen.iter().filter(|&&s| s).count(),
                        targets.len()
                    ),
                );
            }
        }
    }
    if !shape_ok {
        return Ok(report);
    }
    // naturality in x': phi(h ∘ F u) = phi(h) ∘ J u for generators u: x1 ⇒ x2
    for &u in xp.generators() {
        let (x1, x2) = (xp.dom(u), xp.cod(u));
        for a in ap.objects() {
            for &h in ac.hom_set(f.ob(x2), i.ob(a)) {
                let lhs = adj.apply(x1, a, ac.comp(h, f.mor(u)));
                let rhs = xc.comp(adj.apply(x2, a, h), j.mor(u));
                if lhs != rhs {
                    report.push(
                        Law::Naturality,
                        format!(
                            "square at `{}` and `{}`: phi(h . F u) = `{}` but phi(h) . J u = `{}`",
                            xp.morphism_name(u),
                            ac.morphism_name(h),
                            xc.morphism_name(lhs),
                            xc.morphism_name(rhs)
                        ),
                    );
                }
            }
        }
    }
    // naturality in a': phi(I v ∘ h) = G v ∘ phi(h) for generators v: a1 ⇒ a2
    for &v in ap.generators() {
        let (a1, a2) = (ap.dom(v), ap.cod(v));
        for x in xp.objects() {
            for &h in ac.hom_set(f.ob(x), i.ob(a1)) {
                let lhs = adj.apply(x, a2, ac.comp(i.mor(v), h));
                let rhs = xc.comp(g.mor(v), adj.apply(x, a1, h));
                if lhs != rhs {
                    report.push(
                        Law::Naturality,
                        format!(
                            "square at `{}` and `{}`: phi(I v . h) = `{}` but G v . phi(h) = `{}`",
                            ap.morphism_name(v),
                            ac.morphism_name(h),
                            xc.morphism_name(lhs),
                            xc.morphism_name(rhs)
                        ),
                    );
                }
            }
        }
    }
    Ok(report)
}

fn require_valid(report: ValidationReport) -> Result<()> {
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Internal(format!("adjunction failed verification: {report}")))
    }
}

/// Deletes the het middle term: `phi(h) = (f ↦ f⋆⋆)(post(h, η_x'))`.
pub fn adjunction_from_representations(left: &RepresentationFamily, right: &RepresentationFamily) -> Result<Adjunction> {
    if left.chirality != Chirality::Left || right.chirality != Chirality::Right {
        return Err(Error::Shape("expected a left and a right representation family".into()));
    }
    let h = &left.het;
    if !(Arc::ptr_eq(h, &right.het) || h.same_structure(&right.het)) {
        return Err(Error::Shape(format!(
            "families are over different bifunctors `{}` and `{}`",
            h.name(),
            right.het.name()
        )));
    }
    let a = h.target().clone();
    let (xp, ap) = (left.functor.source().clone(), right.functor.source().clone());
    let mut phi = Vec::with_capacity(xp.num_objects() * ap.num_objects());
    for x in xp.objects() {
        let eta = &left.witnesses[x.index()];
        for y in ap.objects() {
            let eps = &right.witnesses[y.index()];
            let mut comp = Vec::new();
            for &m in a.hom_set(left.functor.ob(x), right.inclusion.ob(y)) {
                let f = h.post(m, eta.universal);
                let g = eps
                    .factor_of(f)
                    .ok_or_else(|| Error::Internal(format!("het `{}` has no right factor", h.elem_name(f))))?;
                comp.push(g);
            }
            phi.push(comp);
        }
    }
    let mut adj = Adjunction::relative(
        format!("{} -| {}", left.functor.name(), right.functor.name()),
        left.functor.clone(),
        right.functor.clone(),
        left.inclusion.clone(),
        right.inclusion.clone(),
        phi,
    );
    adj.middle = Some(h.name().to_string());
    require_valid(verify_homset_adjunction(&adj)?)?;
    Ok(adj)
}

/// An adjunction presented by one het bifunctor and its two representation
/// families.
#[derive(Debug, Clone)]
pub struct HetAdjunction {
    pub het: Arc<HetBifunctor>,
    pub left: RepresentationFamily,
    pub right: RepresentationFamily,
}

impl HetAdjunction {
    pub fn new(left: RepresentationFamily, right: RepresentationFamily) -> Result<HetAdjunction> {
        if left.chirality != Chirality::Left || right.chirality != Chirality::Right {
            return Err(Error::Shape("expected a left and a right representation family".into()));
        }
        if !(Arc::ptr_eq(&left.het, &right.het) || left.het.same_structure(&right.het)) {
            return Err(Error::Shape("families are over different bifunctors".into()));
        }
        Ok(HetAdjunction {
            het: left.het.clone(),
            left,
            right,
        })
    }

    /// The hom-set adjunction obtained by composing the two bijections.
    pub fn to_adjunction(&self) -> Result<Adjunction> {
        adjunction_from_representations(&self.left, &self.right)
    }
}

/// `Het(x', a) := Hom_A(F x', a)` with `η_x' = 1_{F x'}`, and the right
/// representation at `I a'` (when `G a'` lies in `J X'`) with
/// `ε = phi⁻¹(1_{G a'})`. Both families are re-verified by the universals
/// module, and the recovered functors must agree with `F` and `G`.
pub fn het_from_adjunction(adj: &Adjunction) -> Result<HetAdjunction> {
    require_valid(verify_homset_adjunction(adj)?)?;
    let (f, g, j, i) = (&adj.left, &adj.right, &adj.left_incl, &adj.right_incl);
    let a = f.target().clone();
    let hom_a = HetBifunctor::hom(&a);
    let name = format!("Hom({}-,-)", f.name());
    let het = Arc::new(hom_a.pullback(f, &Functor::identity(&a), name)?);
    let xp = f.source().clone();
    let universal = |w: UniversalCheck, what: &str| {
        w.witness()
            .ok_or_else(|| Error::Internal(format!("{what} of the carrier is not universal")))
    };
    let mut left = Vec::with_capacity(xp.num_objects());
    for x in xp.objects() {
        let fx = f.ob(x);
        let eta = het.het_set(x, fx)[a.local_index(a.identity(fx))];
        left.push(universal(check_universal(&het, fx, eta, Chirality::Left)?, "unit")?);
    }
    let left = assemble_representation_functor(&het, left, Chirality::Left)?;
    if !left.functor.same_action(f) {
        return Err(Error::Internal("left representation does not recover F".into()));
    }
    let mut seen = vec![false; a.num_objects()];
    if i.obj_map().iter().any(|o| std::mem::replace(&mut seen[o.index()], true)) {
        return Err(Error::Shape(format!("`{}` is not injective on objects", i.name())));
    }
    let mut right: Vec<RepWitness> = Vec::new();
    let mut from = Vec::new();
    for y in g.source().objects() {
        let gy = g.ob(y);
        let Some(x) = j.obj_map().iter().position(|&o| o == gy).map(|k| ObjId(k as u32)) else {
            continue;
        };
        let Some(eps) = adj.unapply(x, y, g.target().identity(gy)) else {
            return Err(Error::Internal("phi misses the identity of G a".into()));
        };
        let e: HetId = het.het_set(x, i.ob(y))[a.local_index(eps)];
        right.push(universal(check_universal(&het, x, e, Chirality::Right)?, "counit")?);
        from.push(y);
    }
    from.sort_by_key(|&y| i.ob(y));
    let right = assemble_representation_functor(&het, right, Chirality::Right)?;
    // the recovered G' lands in X' and lives over I(A'); J ∘ G' must be G
    let sub = right.functor.source();
    for (k, &y) in from.iter().enumerate() {
        let o = ObjId(k as u32);
        if j.ob(right.functor.ob(o)) != g.ob(y) {
            return Err(Error::Internal("right representation does not recover G on objects".into()));
        }
        for &y2 in &from {
            let k2 = from.iter().position(|&t| t == y2).expect("listed");
            let o2 = ObjId(k2 as u32);
            for (&m_sub, &m) in sub.hom_set(o, o2).iter().zip(g.source().hom_set(y, y2)) {
                if j.mor(right.functor.mor(m_sub)) != g.mor(m) {
                    return Err(Error::Internal("right representation does not recover G".into()));
                }
            }
        }
    }
    HetAdjunction::new(left, right)
}

/// Both hom-set carriers of a relative adjunction over `X' × A'`:
/// `Hom_A(F x', I a')` and `Hom_X(J x', G a')`. `phi` is an isomorphism
/// between them.
pub fn homset_carriers(adj: &Adjunction) -> Result<(HetBifunctor, HetBifunctor)> {
    let (f, g, j, i) = (&adj.left, &adj.right, &adj.left_incl, &adj.right_incl);
    let by_left = HetBifunctor::hom(f.target()).pullback(f, i, format!("Hom({}-,-)", f.name()))?;
    let by_right = HetBifunctor::hom(g.target()).pullback(j, g, format!("Hom(-,{}-)", g.name()))?;
    Ok((by_left, by_right))
}

/// Outcome of the adjunctive-square check for one het.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCheck {
    pub holds: bool,
    /// `f⋆: F x ⇒ a`, the left factor.
    pub f_star: MorId,
    /// `f⋆⋆: x ⇒ G a`, the right factor.
    pub f_star_star: MorId,
}

fn het_endpoints(ha: &HetAdjunction, f: HetId) -> Result<(&RepWitness, &RepWitness)> {
    let h = &ha.het;
    if f.index() >= h.num_elems() {
        return Err(Error::Lookup {
            kind: "het",
            name: f.to_string(),
            context: format!("bifunctor `{}`", h.name()),
        });
    }
    let (x, a) = (h.elem_source(f), h.elem_target(f));
    let lw = ha.left.witness_at(x).ok_or_else(|| {
        Error::Shape(format!("no left representation at `{}`", h.source().object_name(x)))
    })?;
    let rw = ha.right.witness_at(a).ok_or_else(|| {
        Error::Shape(format!("no right representation at `{}`", h.target().object_name(a)))
    })?;
    Ok((lw, rw))
}

/// The square `x → F x ⇒ a` / `x ⇒ G a → a` with diagonal `f`: both
/// factorizations exist and both paths compose to `f`.
pub fn check_adjunctive_square(ha: &HetAdjunction, f: HetId) -> Result<SquareCheck> {
    let (lw, rw) = het_endpoints(ha, f)?;
    let h = &ha.het;
    let f_star = lw.factor_of(f).ok_or_else(|| Error::Internal("left factor missing".into()))?;
    let f_star_star = rw.factor_of(f).ok_or_else(|| Error::Internal("right factor missing".into()))?;
    let holds = h.post(f_star, lw.universal) == f && h.pre(rw.universal, f_star_star) == f;
    Ok(SquareCheck {
        holds,
        f_star,
        f_star_star,
    })
}

/// Outcome of the over-and-back check for one het.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverAndBack {
    pub holds: bool,
    /// `u_x: x ⇒ G F x`, the right factor of `η_x`.
    pub unit: MorId,
    /// `G(f⋆) ∘ u_x`.
    pub composite: MorId,
    pub f_star_star: MorId,
}

fn family_mor(family: &RepresentationFamily, m: MorId) -> Option<MorId> {
    family
        .inclusion
        .mor_map()
        .iter()
        .position(|&k| k == m)
        .map(|k| family.functor.mor(MorId(k as u32)))
}

/// Transports `f` to `f⋆: F x ⇒ a`, applies `G`, and precomposes with the
/// unit `u_x`; the result must be `f⋆⋆`.
pub fn check_over_and_back(ha: &HetAdjunction, f: HetId) -> Result<OverAndBack> {
    let (lw, rw) = het_endpoints(ha, f)?;
    let h = &ha.het;
    let fx = lw.rep_object;
    let rfx = ha.right.witness_at(fx).ok_or_else(|| {
        Error::Shape(format!("no right representation at `{}`", h.target().object_name(fx)))
    })?;
    let unit = rfx.factor_of(lw.universal).ok_or_else(|| Error::Internal("unit factor missing".into()))?;
    let f_star = lw.factor_of(f).ok_or_else(|| Error::Internal("left factor missing".into()))?;
    let f_star_star = rw.factor_of(f).ok_or_else(|| Error::Internal("right factor missing".into()))?;
    let g_f_star = family_mor(&ha.right, f_star).ok_or_else(|| Error::Internal("G undefined on f*".into()))?;
    let composite = h.source().comp(g_f_star, unit);
    Ok(OverAndBack {
        holds: composite == f_star_star,
        unit,
        composite,
        f_star_star,
    })
}

/// Hets at which both checks apply: a left witness at the source and right
/// witnesses at the target and at `F` of the source.
pub fn checkable_hets(ha: &HetAdjunction) -> Vec<HetId> {
    let h = &ha.het;
    h.elems()
        .filter(|&e| {
            let lw = ha.left.witness_at(h.elem_source(e));
            lw.is_some_and(|w| ha.right.witness_at(w.rep_object).is_some())
                && ha.right.witness_at(h.elem_target(e)).is_some()
        })
        .collect()
}
