//! Named gallery instances: the constructed structures together with the
//! outcomes every verification check is expected to produce.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::adjunction::{
    check_adjunctive_square, check_over_and_back, checkable_hets, het_from_adjunction, verify_homset_adjunction,
    HetAdjunction,
};
use crate::brain::{brain_from_adjoints, find_brain_functors, verify_brain_functor};
use crate::budget::Budget;
use crate::category::{validate_category, FinCategory};
use crate::error::Result;
use crate::functor::{validate_functor, Functor};
use crate::gallery::biproduct::Biproduct;
use crate::gallery::free::FreeVector;
use crate::gallery::product::{DiagonalAdjunctions, ProductDiagonal};
use crate::gallery::tensor::Tensor;
use crate::het::{validate_het_bifunctor, HetBifunctor};
use crate::het_iso::find_het_isomorphism;
use crate::report::ValidationReport;
use crate::universals::{
    check_uniqueness_up_to_iso, factor_through, find_representation_at, find_representation_family, Chirality,
    RepWitness,
};

/// Names accepted by [`gallery_instance`], in listing order.
pub const GALLERY: &[&str] = &["product-diagonal", "free-vector", "biproduct", "tensor"];

/// Result of one expectation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub check: String,
    pub expected: bool,
    pub observed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.expected == self.observed
    }
}

type CheckFn = Box<dyn Fn(&Budget) -> Result<(bool, String)> + Send + Sync>;

pub struct Expectation {
    pub check: String,
    pub expected: bool,
    run: CheckFn,
}

pub struct GalleryInstance {
    pub name: String,
    pub note: String,
    pub categories: Vec<Arc<FinCategory>>,
    pub functors: Vec<Functor>,
    pub hets: Vec<Arc<HetBifunctor>>,
    pub expectations: Vec<Expectation>,
}

impl GalleryInstance {
    fn expect(
        &mut self,
        check: &str,
        expected: bool,
        run: impl Fn(&Budget) -> Result<(bool, String)> + Send + Sync + 'static,
    ) {
        self.expectations.push(Expectation {
            check: check.to_string(),
            expected,
            run: Box::new(run),
        });
    }

    /// Re-validates every contained category, functor and het bifunctor.
    pub fn validate_structures(&self) -> ValidationReport {
        let mut report = ValidationReport::new(format!("gallery instance `{}`", self.name));
        for c in &self.categories {
            report.merge(validate_category(&c.to_raw()));
        }
        for f in &self.functors {
            report.merge(validate_functor(f));
        }
        for h in &self.hets {
            report.merge(validate_het_bifunctor(&h.to_raw()));
        }
        report
    }

    /// Runs every expectation in order.
    pub fn run(&self, budget: &Budget) -> Result<Vec<Outcome>> {
        let laws = self.validate_structures();
        let mut out = vec![Outcome {
            check: "all structures satisfy their laws".into(),
            expected: true,
            observed: laws.is_valid(),
            detail: format!(
                "{} categories, {} functors, {} het bifunctors",
                self.categories.len(),
                self.functors.len(),
                self.hets.len()
            ),
        }];
        for e in &self.expectations {
            let (observed, detail) = (e.run)(budget)?;
            out.push(Outcome {
                check: e.check.clone(),
                expected: e.expected,
                observed,
                detail,
            });
        }
        Ok(out)
    }
}

pub fn gallery_instance(name: &str, budget: &Budget) -> Result<GalleryInstance> {
    match name {
        "product-diagonal" => product_diagonal_instance(budget),
        "free-vector" => free_vector_instance(budget),
        "biproduct" => biproduct_instance(budget),
        "tensor" => tensor_instance(budget),
        _ => Err(crate::error::Error::Lookup {
            kind: "gallery instance",
            name: name.to_string(),
            context: format!("available: {}", GALLERY.join(", ")),
        }),
    }
}

fn empty(name: &str, note: &str) -> GalleryInstance {
    GalleryInstance {
        name: name.into(),
        note: note.into(),
        categories: Vec::new(),
        functors: Vec::new(),
        hets: Vec::new(),
        expectations: Vec::new(),
    }
}

/// Witness lists at every base object, each checked for uniqueness up to
/// isomorphism and self-participation of its universal hets.
pub fn uniqueness_holds(h: &HetBifunctor, per_base: &[(crate::category::ObjId, Vec<RepWitness>)]) -> (bool, usize) {
    let mut count = 0;
    let ok = per_base.iter().all(|(_, ws)| {
        count += ws.len();
        check_uniqueness_up_to_iso(h, ws)
            && ws.iter().all(|w| {
                let rc = match w.chirality {
                    Chirality::Left => h.target(),
                    Chirality::Right => h.source(),
                };
                factor_through(h, w.universal, w).ok() == Some(rc.identity(w.rep_object))
            })
    });
    (ok, count)
}

/// Runs the adjunctive-square and over-and-back checks on every het where
/// the needed witnesses exist.
pub fn square_checks(ha: &HetAdjunction) -> Result<(bool, String)> {
    let hets = checkable_hets(ha);
    let mut failures = 0;
    for &e in &hets {
        if !check_adjunctive_square(ha, e)?.holds || !check_over_and_back(ha, e)?.holds {
            failures += 1;
        }
    }
    Ok((
        failures == 0,
        format!("{} of {} hets checked, {failures} failures", hets.len(), ha.het.num_elems()),
    ))
}

fn product_diagonal_instance(budget: &Budget) -> Result<GalleryInstance> {
    let pd3 = Arc::new(ProductDiagonal::new(3, 3, budget)?);
    let pd2 = Arc::new(ProductDiagonal::new(2, 2, budget)?);
    let pd1 = Arc::new(ProductDiagonal::new(1, 1, budget)?);
    let wide = Arc::new(ProductDiagonal::new(4, 2, budget)?);
    let da = Arc::new(DiagonalAdjunctions::new(2, 4, budget)?);
    let mut g = empty(
        "product-diagonal",
        "Cones c -> (a,b) and cocones (a,b) -> c between finite sets and pairs of finite sets; \
         the diagonal is left adjoint to the product and right adjoint to the disjoint union.",
    );
    g.categories = vec![pd2.sets.category().clone(), pd2.square.clone(), wide.sets.category().clone()];
    g.functors = vec![da.delta.clone(), da.product.clone(), da.coproduct.clone(), da.inclusion.clone()];
    g.hets = vec![
        pd2.cones.clone(),
        pd2.cocones.clone(),
        Arc::new(wide.cones.renamed("cones_wide")),
        Arc::new(wide.cocones.renamed("cocones_wide")),
    ];

    let p = pd3.clone();
    g.expect("size-3 cones and cocones satisfy their laws", true, move |_| {
        let mut report = ValidationReport::new("size-3 product-diagonal structures");
        report.merge(validate_category(&p.sets.category().to_raw()));
        report.merge(validate_category(&p.square.to_raw()));
        report.merge(validate_het_bifunctor(&p.cones.to_raw()));
        report.merge(validate_het_bifunctor(&p.cocones.to_raw()));
        Ok((report.is_valid(), format!("{} cones, {} cocones", p.cones.num_elems(), p.cocones.num_elems())))
    });
    let p = pd3.clone();
    g.expect("right representation of cones at (a,b) sits at a*b when in range", true, move |b| {
        let mut ok = true;
        let mut detail = String::new();
        for a in 0..=3 {
            for c in 0..=3 {
                let ws = find_representation_at(&p.cones, p.pair(a, c), Chirality::Right, b)?;
                let want = (a * c <= 3).then(|| p.sets.object(a * c));
                let at: Vec<_> = ws.iter().map(|w| w.rep_object).collect();
                ok &= match want {
                    Some(o) => !at.is_empty() && at.iter().all(|&r| r == o),
                    None => at.is_empty(),
                };
                let _ = write!(detail, "({a},{c}):{} ", at.first().map_or("-".into(), |r| r.0.to_string()));
            }
        }
        Ok((ok, detail.trim_end().to_string()))
    });
    let p = pd3.clone();
    g.expect("left representation of cones at c is (c,c) with [1_c,1_c]", true, move |b| {
        let fam = find_representation_family(&p.cones, Chirality::Left, b)?;
        let ok = (0..=3).all(|c| {
            let (_, ws) = &fam.per_base[c];
            let id = p.identity_cone(c).ok();
            !ws.is_empty() && ws.iter().all(|w| w.rep_object == p.pair(c, c)) && ws[0].universal == id.unwrap()
        });
        Ok((ok, format!("functor `{}`", fam.family.functor.name())))
    });
    let p = pd3.clone();
    g.expect("adjunction from the two cone representations verifies", true, move |b| {
        let l = find_representation_family(&p.cones, Chirality::Left, b)?;
        let r = find_representation_family(&p.cones, Chirality::Right, b)?;
        let (ul, nl) = uniqueness_holds(&p.cones, &l.per_base);
        let (ur, nr) = uniqueness_holds(&p.cones, &r.per_base);
        let adj = crate::adjunction::adjunction_from_representations(&l.family, &r.family)?;
        let report = verify_homset_adjunction(&adj)?;
        Ok((
            report.is_valid() && ul && ur,
            format!("{} left and {} right witnesses, all unique up to isomorphism", nl, nr),
        ))
    });
    let w = wide.clone();
    g.expect("adjunctive square and over-and-back hold for every cone", true, move |b| {
        let l = find_representation_family(&w.cones, Chirality::Left, b)?.family;
        let r = find_representation_family(&w.cones, Chirality::Right, b)?.family;
        square_checks(&HetAdjunction::new(l, r)?)
    });
    let d = da.clone();
    g.expect("hand-built Delta -| Product and Coproduct -| Delta verify", true, move |_| {
        let a = verify_homset_adjunction(&d.delta_product)?;
        let c = verify_homset_adjunction(&d.coproduct_delta)?;
        Ok((a.is_valid() && c.is_valid(), String::new()))
    });
    let (d, p2, w) = (da.clone(), pd2.clone(), wide.clone());
    g.expect("het_from_adjunction recovers cones and cocones up to isomorphism", true, move |b| {
        let h1 = het_from_adjunction(&d.delta_product)?;
        let h2 = het_from_adjunction(&d.coproduct_delta)?;
        let i1 = find_het_isomorphism(&h1.het, &p2.cones, b)?.is_some();
        let i2 = find_het_isomorphism(&h2.het, &w.cocones, b)?.is_some();
        Ok((i1 && i2, format!("cones {i1}, cocones {i2}")))
    });
    let w = wide.clone();
    g.expect("het -> adjunction -> het is the identity up to isomorphism", true, move |b| {
        let l = find_representation_family(&w.cones, Chirality::Left, b)?.family;
        let r = find_representation_family(&w.cones, Chirality::Right, b)?.family;
        let incl = l.inclusion.clone();
        let adj = HetAdjunction::new(l, r)?.to_adjunction()?;
        let back = het_from_adjunction(&adj)?;
        let original = w.cones.restrict_source(&incl)?;
        Ok((find_het_isomorphism(&back.het, &original, b)?.is_some(), String::new()))
    });
    let (d, p2) = (da.clone(), pd2.clone());
    g.expect("Delta is a brain functor for cones and cocones", true, move |b| {
        match verify_brain_functor(&d.delta, &p2.cones, &p2.cocones, b)? {
            Ok(w) => {
                let ok = (0..=2).all(|c| {
                    let x = p2.sets.object(c);
                    Some(w.alpha(x)) == p2.identity_cone(c).ok() && Some(w.epsilon(x)) == p2.codiagonal(c).ok()
                });
                Ok((ok, "alpha = [1,1], epsilon = codiagonal".into()))
            }
            Err(r) => Ok((false, r.to_string())),
        }
    });
    let (d, p2) = (da.clone(), pd2.clone());
    g.expect("brain_from_adjoints(Coproduct, Delta, Product) reproduces the Delta witness", true, move |b| {
        let w = brain_from_adjoints(&d.coproduct_delta, &d.delta_product, b)?;
        let iso_in = find_het_isomorphism(&w.h_in, &p2.cones, b)?;
        let iso_out = find_het_isomorphism(&w.h_out, &p2.cocones, b)?;
        let (Some(i), Some(o)) = (iso_in, iso_out) else {
            return Ok((false, "carriers not isomorphic to cones/cocones".into()));
        };
        let ok = w.functor.same_action(&d.delta)
            && (0..=2).all(|c| {
                let x = p2.sets.object(c);
                Some(i.map[w.alpha(x).index()]) == p2.identity_cone(c).ok()
                    && Some(o.map[w.epsilon(x).index()]) == p2.codiagonal(c).ok()
            });
        Ok((ok, String::new()))
    });
    let p1 = pd1.clone();
    g.expect("exhaustive brain search over sets of size <= 1 finds exactly Delta", true, move |b| {
        let found = find_brain_functors(&p1.cones, &p1.cocones, b)?;
        let delta = crate::construct::diagonal(p1.sets.category(), &p1.square)?;
        Ok((
            found.len() == 1 && found[0].functor.same_action(&delta),
            format!("{} functor(s)", found.len()),
        ))
    });
    Ok(g)
}

fn free_vector_instance(budget: &Budget) -> Result<GalleryInstance> {
    let fv = Arc::new(FreeVector::new(2, 2, 2, budget)?);
    let mut g = empty(
        "free-vector",
        "Free F_2-vector spaces on finite sets stand in for free groups: hets are functions between a set \
         and the element set of a space; the underlying-set functor is right adjoint to the free functor.",
    );
    g.categories = vec![fv.sets.category().clone(), fv.spaces.category().clone()];
    g.functors = vec![fv.underlying.clone(), fv.free.clone(), fv.small_inclusion.clone()];
    g.hets = vec![fv.set_to_space.clone(), fv.space_to_set.clone()];

    let f = fv.clone();
    g.expect("left representation at a set S is the free space with generator insertion", true, move |b| {
        let mut ok = true;
        let mut detail = String::new();
        for s in 0..=4 {
            let ws = find_representation_at(&f.set_to_space, f.sets.object(s), Chirality::Left, b)?;
            if s <= 2 {
                let ins = f.insertion(s)?;
                ok &= !ws.is_empty()
                    && ws.iter().all(|w| f.spaces.dim(w.rep_object) == s)
                    && ws.iter().any(|w| w.universal == ins)
                    && check_uniqueness_up_to_iso(&f.set_to_space, &ws);
            } else {
                ok &= ws.is_empty();
            }
            let _ = write!(detail, "{s}:{} ", ws.len());
        }
        Ok((ok, format!("witnesses per set size {}", detail.trim_end())))
    });
    let f = fv.clone();
    g.expect("right representation at a space V is U V with the identity function", true, move |b| {
        let fam = find_representation_family(&f.set_to_space, Chirality::Right, b)?;
        let ok = fam.family.is_total()
            && fam.family.functor.same_action(&f.underlying)
            && (0..=2).all(|d| {
                let (_, ws) = &fam.per_base[d];
                f.identity_het(&f.set_to_space, d).ok() == ws.first().map(|w| w.universal)
            });
        Ok((ok, String::new()))
    });
    let f = fv.clone();
    g.expect("the underlying-set functor is a brain functor", true, move |b| {
        let r = verify_brain_functor(&f.underlying, &f.space_to_set, &f.set_to_space, b)?;
        Ok((r.is_ok(), r.err().map(|r| r.to_string()).unwrap_or_default()))
    });
    let f = fv.clone();
    g.expect("the free functor is a brain functor", false, move |b| {
        let h_in = Arc::new(f.set_to_space.restrict_source(&f.small_inclusion)?);
        let h_out = Arc::new(f.space_to_set.restrict_target(&f.small_inclusion)?);
        let r = verify_brain_functor(&f.free, &h_in, &h_out, b)?;
        let detail = match &r {
            Ok(_) => String::new(),
            Err(report) => report.violations.iter().map(|v| v.message.clone()).collect::<Vec<_>>().join("; "),
        };
        Ok((r.is_ok(), detail))
    });
    let f = fv.clone();
    g.expect("the underlying-set functor has a right adjoint in range", false, move |b| {
        let mut at = Vec::new();
        for s in f.sets.category().objects() {
            if !find_representation_at(&f.space_to_set, s, Chirality::Right, b)?.is_empty() {
                at.push(f.sets.size(s).to_string());
            }
        }
        let all = at.len() == f.sets.category().num_objects();
        Ok((all, format!("right representations only at set sizes [{}]", at.join(","))))
    });
    let f = fv.clone();
    g.expect("hand-built Free -| Underlying verifies and matches the function hets", true, move |b| {
        let ok = verify_homset_adjunction(&f.adjunction)?.is_valid();
        let ha = het_from_adjunction(&f.adjunction)?;
        let restricted = f.set_to_space.restrict_source(&f.small_inclusion)?;
        Ok((ok && find_het_isomorphism(&ha.het, &restricted, b)?.is_some(), String::new()))
    });
    let f = fv.clone();
    g.expect("adjunctive square and over-and-back hold for every function het", true, move |b| {
        let l = find_representation_family(&f.set_to_space, Chirality::Left, b)?.family;
        let r = find_representation_family(&f.set_to_space, Chirality::Right, b)?.family;
        square_checks(&HetAdjunction::new(l, r)?)
    });
    Ok(g)
}

fn biproduct_instance(budget: &Budget) -> Result<GalleryInstance> {
    let bp = Arc::new(Biproduct::new(2, 2, 3, budget)?);
    let mut g = empty(
        "biproduct",
        "Cocones from a pair of F_2-spaces and cones into it are represented on both sides by the direct sum.",
    );
    g.categories = vec![bp.small.category().clone(), bp.pairs.clone(), bp.big.category().clone()];
    g.functors = vec![bp.direct_sum.clone(), bp.pairs_inclusion.clone()];
    g.hets = vec![bp.cocones.clone(), bp.cones.clone()];

    let p = bp.clone();
    g.expect("direct sum is a brain functor with injections and projections", true, move |b| {
        match verify_brain_functor(&p.direct_sum, &p.cocones, &p.cones, b)? {
            Ok(w) => {
                let ok = p.pairs.objects().all(|x| {
                    Some(w.alpha(x)) == p.injections(x).ok() && Some(w.epsilon(x)) == p.projections(x).ok()
                });
                Ok((ok, "alpha = injections, epsilon = projections".into()))
            }
            Err(r) => Ok((false, r.to_string())),
        }
    });
    let p = bp.clone();
    g.expect("dims (1,2) give a brain object of dimension 3", true, move |_| {
        let x = p.pair(1, 2).expect("(1,2) is in range");
        let d = p.big.dim(p.direct_sum.ob(x));
        Ok((d == 3, format!("dimension {d}")))
    });
    let p = bp.clone();
    g.expect("all witnesses are unique up to isomorphism", true, move |b| {
        let mut total = 0;
        let mut ok = true;
        for (h, chirality) in [(&p.cocones, Chirality::Left), (&p.cones, Chirality::Right)] {
            let fam = find_representation_family(h, chirality, b)?;
            let (u, n) = uniqueness_holds(h, &fam.per_base);
            ok &= u;
            total += n;
        }
        Ok((ok, format!("{total} witnesses")))
    });
    Ok(g)
}

fn tensor_instance(budget: &Budget) -> Result<GalleryInstance> {
    let tn = Arc::new(Tensor::new(2, 2, budget)?);
    let mut g = empty(
        "tensor",
        "Bilinear maps V_a x V_b -> V_c over F_2, left-represented by the tensor product when its \
         dimension is in range.",
    );
    g.categories = vec![tn.spaces.category().clone(), tn.square.clone()];
    g.hets = vec![tn.bilinear.clone()];

    let t = tn.clone();
    g.expect("left representation at <a,b> sits at dimension a*b", true, move |b| {
        let mut ok = true;
        let mut detail = String::new();
        for x in t.square.objects() {
            let (a, c) = t.dims(x);
            let ws = find_representation_at(&t.bilinear, x, Chirality::Left, b)?;
            ok &= if a * c <= t.spaces.max_dim() {
                let canon = t.canonical(a, c)?;
                !ws.is_empty()
                    && ws.iter().all(|w| t.spaces.dim(w.rep_object) == a * c)
                    && ws.iter().any(|w| w.universal == canon)
            } else {
                ws.is_empty()
            };
            let _ = write!(detail, "({a},{c}):{} ", ws.len());
        }
        Ok((ok, format!("witnesses {}", detail.trim_end())))
    });
    let t = tn.clone();
    g.expect("all witnesses are unique up to isomorphism", true, move |b| {
        let fam = find_representation_family(&t.bilinear, Chirality::Left, b)?;
        let (ok, n) = uniqueness_holds(&t.bilinear, &fam.per_base);
        Ok((ok, format!("{n} witnesses")))
    });
    let t = tn.clone();
    g.expect("A tensor F_2 is isomorphic to A", true, move |b| {
        let ok = (0..=t.spaces.max_dim()).all(|a| {
            let ws = find_representation_at(&t.bilinear, t.pair(a, 1), Chirality::Left, b).unwrap_or_default();
            let target = t.spaces.object(a);
            ws.first()
                .is_some_and(|w| !t.spaces.category().find_isomorphisms(w.rep_object, target).is_empty())
        });
        Ok((ok, String::new()))
    });
    let t = tn.clone();
    g.expect("bounded search finds a right representation at a nonzero space", false, move |b| {
        let mut found = Vec::new();
        let mut nonzero = false;
        for c in t.spaces.category().objects() {
            let n = find_representation_at(&t.bilinear, c, Chirality::Right, b)?.len();
            nonzero |= t.spaces.dim(c) > 0 && n > 0;
            found.push(format!("V{}:{n}", t.spaces.dim(c)));
        }
        Ok((nonzero, format!("bounded search, witnesses {}", found.join(" "))))
    });
    Ok(g)
}
