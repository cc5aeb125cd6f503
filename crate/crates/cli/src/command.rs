//! Command line surface and dispatch to the core library.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hetcat::adjunction::{
    check_adjunctive_square, check_over_and_back, checkable_hets, verify_homset_adjunction, HetAdjunction,
};
use hetcat::brain::{find_brain_functors, verify_brain_functor, BrainWitness};
use hetcat::category::validate_category;
use hetcat::collage::{build_collage, extract_het_from_collage, CollageCategory, CollageSide};
use hetcat::gallery::{gallery_instance, GALLERY};
use hetcat::het::validate_het_bifunctor;
use hetcat::universals::{
    check_uniqueness_up_to_iso, factor_through, find_family_for_functor, find_representation_at,
    find_representation_family, Chirality, FamilyFailure, RepWitness,
};
use hetcat::{Budget, Error, FinCategory, Functor, HetBifunctor, HetId, ObjId};

use crate::diag::Diagnostic;
use crate::dot;
use crate::report::{Status, VerificationReport};
use crate::serialize::{to_dsl, write_category, write_het};
use crate::workspace::Workspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

impl From<Side> for Chirality {
    fn from(s: Side) -> Chirality {
        match s {
            Side::Left => Chirality::Left,
            Side::Right => Chirality::Right,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hetcat", version, about = "Verify finite categories, het bifunctors, adjunctions and brain functors")]
pub struct Cli {
    /// Workspace file in the hetcat DSL (repeatable).
    #[arg(short = 'f', long = "file", global = true)]
    pub files: Vec<PathBuf>,
    /// Load the structures of a gallery instance into the workspace (repeatable).
    #[arg(long = "gallery", global = true)]
    pub galleries: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Budget overrides, e.g. `work=1000000,parallel=off`; applied on top of HETCAT_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the laws of one structure, or of every structure.
    Validate { name: Option<String> },
    /// Search for universal hets at one base object.
    FindRep {
        het: String,
        #[arg(long)]
        at: String,
        #[arg(long, value_enum)]
        side: Side,
        /// Het drawn in the DOT triangle (default: first het at the base).
        #[arg(long)]
        elem: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check that `left` is left adjoint to `right`.
    CheckAdjunction {
        left: String,
        right: String,
        /// Het bifunctor carrying both representations (default: a hom bifunctor).
        #[arg(long)]
        via: Option<String>,
        /// Inclusion of the source of `left` into the target of `right`.
        #[arg(long)]
        left_incl: Option<String>,
        /// Inclusion of the source of `right` into the target of `left`.
        #[arg(long)]
        right_incl: Option<String>,
    },
    /// Adjunctive square and over-and-back for one het, or for all of them.
    CheckSquare {
        het: String,
        #[arg(long)]
        elem: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build the collage category of a het bifunctor.
    Collage {
        het: String,
        /// Write the collage category as DSL.
        #[arg(long)]
        dsl: Option<PathBuf>,
    },
    /// Read a het bifunctor off a category split into two sides.
    ExtractCollage {
        category: String,
        /// Objects on the source side, separated by commas or spaces.
        #[arg(long)]
        split: String,
        #[arg(long)]
        dsl: Option<PathBuf>,
    },
    /// Check that a functor is a brain functor for a pair of het bifunctors.
    CheckBrain {
        functor: String,
        #[arg(long = "in")]
        h_in: String,
        #[arg(long = "out")]
        h_out: String,
        /// Object at which the DOT butterfly is drawn (default: the first).
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        in_elem: Option<String>,
        #[arg(long)]
        out_elem: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Enumerate all brain functors for a pair of het bifunctors.
    FindBrains {
        #[arg(long = "in")]
        h_in: String,
        #[arg(long = "out")]
        h_out: String,
    },
    /// Built-in example instances.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum GalleryAction {
    List,
    Run {
        name: String,
    },
    /// Write the structures of an instance as DSL.
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn word(s: &str) -> String {
    if !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains('"') {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

impl Command {
    /// The command as typed, minus output paths and global options.
    pub fn echo(&self) -> String {
        let mut w: Vec<String> = Vec::new();
        let opt = |w: &mut Vec<String>, flag: &str, v: &Option<String>| {
            if let Some(v) = v {
                w.push(flag.to_string());
                w.push(word(v));
            }
        };
        match self {
            Command::Validate { name } => {
                w.push("validate".into());
                w.extend(name.as_deref().map(word));
            }
            Command::FindRep { het, at, side, elem, .. } => {
                let side = match side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                w.extend(["find-rep".into(), word(het), "--at".into(), word(at), "--side".into(), side.into()]);
                opt(&mut w, "--elem", elem);
            }
            Command::CheckAdjunction { left, right, via, left_incl, right_incl } => {
                w.extend(["check-adjunction".into(), word(left), word(right)]);
                opt(&mut w, "--via", via);
                opt(&mut w, "--left-incl", left_incl);
                opt(&mut w, "--right-incl", right_incl);
            }
            Command::CheckSquare { het, elem, .. } => {
                w.extend(["check-square".into(), word(het)]);
                opt(&mut w, "--elem", elem);
            }
            Command::Collage { het, .. } => w.extend(["collage".into(), word(het)]),
            Command::ExtractCollage { category, split, .. } => {
                w.extend(["extract-collage".into(), word(category), "--split".into(), word(split)])
            }
            Command::CheckBrain { functor, h_in, h_out, at, in_elem, out_elem, .. } => {
                w.extend(["check-brain".into(), word(functor), "--in".into(), word(h_in), "--out".into(), word(h_out)]);
                opt(&mut w, "--at", at);
                opt(&mut w, "--in-elem", in_elem);
                opt(&mut w, "--out-elem", out_elem);
            }
            Command::FindBrains { h_in, h_out } => {
                w.extend(["find-brains".into(), "--in".into(), word(h_in), "--out".into(), word(h_out)])
            }
            Command::Gallery { action } => {
                w.push("gallery".into());
                match action {
                    GalleryAction::List => w.push("list".into()),
                    GalleryAction::Run { name } => w.extend(["run".into(), word(name)]),
                    GalleryAction::Export { name, .. } => w.extend(["export".into(), word(name)]),
                }
            }
        }
        w.join(" ")
    }

    fn needs_valid_workspace(&self) -> bool {
        !matches!(self, Command::Validate { .. } | Command::Gallery { .. })
    }
}

/// Why a command could not produce a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad input: syntax, unknown names, invalid structures, shape mismatches.
    Input(Vec<Diagnostic>),
    /// A budget cap was hit; the message is the library's, verbatim.
    Budget(Diagnostic),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            Failure::Input(ds) => ds,
            Failure::Budget(d) => std::slice::from_ref(d),
        }
    }

    fn core(subject: &str, e: Error) -> Failure {
        let d = Diagnostic::about(subject, e.to_string());
        match e {
            Error::Budget(_) => Failure::Budget(d),
            _ => Failure::Input(vec![d]),
        }
    }
}

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Failure {
        Failure::Input(vec![d])
    }
}

/// A finished command: the report plus files to write and, for commands
/// that print something other than a report, the text to print.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub report: VerificationReport,
    pub files: Vec<(PathBuf, String)>,
    pub raw: Option<String>,
}

impl CommandOutput {
    fn new(report: VerificationReport) -> CommandOutput {
        CommandOutput {
            report,
            files: Vec::new(),
            raw: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.report.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

fn object(cat: &FinCategory, name: &str, owner: &str) -> CmdResult<ObjId> {
    cat.object_by_name(name).ok_or_else(|| {
        Failure::from(Diagnostic::about(
            owner,
            format!("unknown object `{name}` in category `{}`", cat.name()),
        ))
    })
}

fn elem(h: &HetBifunctor, name: &str) -> CmdResult<HetId> {
    h.lookup_elem(name)
        .map_err(|e| Failure::core(&format!("het bifunctor `{}`", h.name()), e))
}

fn base_category(h: &HetBifunctor, chirality: Chirality) -> &Arc<FinCategory> {
    match chirality {
        Chirality::Left => h.source(),
        Chirality::Right => h.target(),
    }
}

fn rep_category(h: &HetBifunctor, chirality: Chirality) -> &Arc<FinCategory> {
    match chirality {
        Chirality::Left => h.target(),
        Chirality::Right => h.source(),
    }
}

/// Hets at `base`, in canonical order, on the side given by `chirality`.
fn hets_at(h: &HetBifunctor, base: ObjId, chirality: Chirality) -> Vec<HetId> {
    let other = rep_category(h, chirality);
    other
        .objects()
        .flat_map(|o| match chirality {
            Chirality::Left => h.het_set(base, o),
            Chirality::Right => h.het_set(o, base),
        })
        .copied()
        .collect()
}

/// The first het in `candidates` other than `universal`, or `universal`.
fn illustrative(candidates: &[HetId], universal: HetId) -> HetId {
    candidates.iter().copied().find(|&e| e != universal).unwrap_or(universal)
}

fn split_objects(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in list.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (c == ',' || c.is_whitespace()) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn family_failure(h: &HetBifunctor, f: &Functor, incl: &Functor, chirality: Chirality, fail: &FamilyFailure) -> String {
    let (bc, rc) = (base_category(h, chirality), rep_category(h, chirality));
    match *fail {
        FamilyFailure::NoUniversal { base, rep_object } => format!(
            "no universal het of `{}` at `{}` lands on `{}`",
            h.name(),
            bc.object_name(incl.ob(base)),
            rc.object_name(rep_object)
        ),
        FamilyFailure::NotInduced => format!(
            "universal hets of `{}` exist but none of their choices induces `{}`",
            h.name(),
            f.name()
        ),
    }
}

fn validate(ws: &Workspace, name: Option<&str>, report: &mut VerificationReport) -> CmdResult<()> {
    let entries: Vec<_> = match name {
        Some(n) => vec![ws.entry(n).ok_or_else(|| {
            let known: Vec<&str> = ws.entries().iter().map(|e| e.name.as_str()).collect();
            Diagnostic::about(format!("`{n}`"), format!("no such structure; known: {}", known.join(", ")))
        })?],
        None => ws.entries().iter().collect(),
    };
    if entries.is_empty() {
        return Err(Diagnostic::about("workspace", "no structures to validate").into());
    }
    for e in entries {
        let detail = if e.is_valid() {
            String::new()
        } else {
            let n = e.report.violations.len() + e.report.omitted;
            format!("{n} violation(s)")
        };
        report.check(format!("{} `{}` satisfies its laws", e.kind, e.name), e.is_valid(), detail);
        for d in e.diagnostics() {
            report.counterexample(d);
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn find_rep(
    ws: &Workspace,
    budget: &Budget,
    het: &str,
    at: &str,
    chirality: Chirality,
    elem_name: Option<&str>,
    dot_path: Option<&PathBuf>,
    out: &mut CommandOutput,
) -> CmdResult<()> {
    let h = ws.het(het)?;
    let subject = format!("het bifunctor `{het}`");
    let (bc, rc) = (base_category(h, chirality), rep_category(h, chirality));
    let base = object(bc, at, &subject)?;
    let found = find_representation_at(h, base, chirality, budget).map_err(|e| Failure::core(&subject, e))?;
    let report = &mut out.report;
    let detail = if found.is_empty() {
        format!("none among the {} objects of `{}` (bounded search)", rc.num_objects(), rc.name())
    } else {
        format!("{} universal het(s)", found.len())
    };
    if !report.check(format!("{} representation at `{at}`", chirality.label()), !found.is_empty(), detail) {
        return Ok(());
    }
    report.check("universals are unique up to isomorphism", check_uniqueness_up_to_iso(h, &found), "");
    let mut participation = true;
    for w in &found {
        let m = factor_through(h, w.universal, w).map_err(|e| Failure::core(&subject, e))?;
        participation &= m == rc.identity(w.rep_object);
        report.witness([
            ("side", chirality.label()),
            ("base", at),
            ("object", rc.object_name(w.rep_object)),
            ("universal", h.elem_name(w.universal)),
            ("factorizations", &w.factors.len().to_string()),
        ]);
    }
    report.check("each universal factors through itself by the identity", participation, "");
    if let Some(path) = dot_path {
        let w = &found[0];
        let f = match elem_name {
            Some(n) => elem(h, n)?,
            None => illustrative(&hets_at(h, base, chirality), w.universal),
        };
        let text = dot::representation_triangle(h, w, f).map_err(|e| Failure::core(&subject, e))?;
        out.files.push((path.clone(), text));
    }
    Ok(())
}

fn check_adjunction(
    ws: &Workspace,
    budget: &Budget,
    left: &str,
    right: &str,
    via: Option<&str>,
    left_incl: Option<&str>,
    right_incl: Option<&str>,
    report: &mut VerificationReport,
) -> CmdResult<()> {
    let (f, g) = (ws.functor(left)?, ws.functor(right)?);
    let subject = format!("adjunction `{left}` -| `{right}`");
    let core = |e| Failure::core(&subject, e);
    let j = match left_incl {
        Some(n) => ws.functor(n)?.clone(),
        None => Functor::identity(f.source()),
    };
    let i = match right_incl {
        Some(n) => ws.functor(n)?.clone(),
        None => Functor::identity(g.source()),
    };
    let het: Arc<HetBifunctor> = match via {
        Some(n) => ws.het(n)?.clone(),
        None if right_incl.is_none() => {
            // Het(x, a) = Hom_X(x, G a)
            let x = g.target();
            let name = format!("Hom(-,{}-)", g.name());
            Arc::new(HetBifunctor::hom(x).pullback(&Functor::identity(x), g, name).map_err(core)?)
        }
        None if left_incl.is_none() => {
            // Het(x, a) = Hom_A(F x, a)
            let a = f.target();
            let name = format!("Hom({}-,-)", f.name());
            Arc::new(HetBifunctor::hom(a).pullback(f, &Functor::identity(a), name).map_err(core)?)
        }
        None => {
            return Err(Diagnostic::about(subject, "with both inclusions given, name the het bifunctor with --via").into())
        }
    };
    let l = find_family_for_functor(&het, f, &j, Chirality::Left, budget).map_err(core)?;
    let r = find_family_for_functor(&het, g, &i, Chirality::Right, budget).map_err(core)?;
    let lok = report.check(
        format!("`{left}` is induced by a left representation of `{}`", het.name()),
        l.is_ok(),
        l.as_ref().err().map(|e| family_failure(&het, f, &j, Chirality::Left, e)).unwrap_or_default(),
    );
    let rok = report.check(
        format!("`{right}` is induced by a right representation of `{}`", het.name()),
        r.is_ok(),
        r.as_ref().err().map(|e| family_failure(&het, g, &i, Chirality::Right, e)).unwrap_or_default(),
    );
    let (Ok(l), Ok(r)) = (l, r) else { return Ok(()) };
    debug_assert!(lok && rok);
    for w in &l.witnesses {
        report.witness([
            ("side", "left"),
            ("object", het.source().object_name(w.base)),
            ("image", het.target().object_name(w.rep_object)),
            ("unit", het.elem_name(w.universal)),
        ]);
    }
    for w in &r.witnesses {
        report.witness([
            ("side", "right"),
            ("object", het.target().object_name(w.base)),
            ("image", het.source().object_name(w.rep_object)),
            ("counit", het.elem_name(w.universal)),
        ]);
    }
    let adj = HetAdjunction::new(l, r).and_then(|ha| ha.to_adjunction()).map_err(core)?;
    let verdict = verify_homset_adjunction(&adj).map_err(core)?;
    report.check(
        "hom-set bijection is natural in both variables",
        verdict.is_valid(),
        if verdict.is_valid() { String::new() } else { format!("{} violation(s)", verdict.violations.len()) },
    );
    for v in &verdict.violations {
        report.counterexample(Diagnostic::about(subject.clone(), v.message.clone()));
    }
    Ok(())
}

fn check_square(
    ws: &Workspace,
    budget: &Budget,
    het: &str,
    elem_name: Option<&str>,
    dot_path: Option<&PathBuf>,
    out: &mut CommandOutput,
) -> CmdResult<()> {
    let h = ws.het(het)?;
    let subject = format!("het bifunctor `{het}`");
    let core = |e| Failure::core(&subject, e);
    let l = find_representation_family(h, Chirality::Left, budget).map_err(core)?;
    let r = find_representation_family(h, Chirality::Right, budget).map_err(core)?;
    let ha = HetAdjunction::new(l.family, r.family).map_err(core)?;
    let checkable = checkable_hets(&ha);
    let (xs, xa) = (h.source(), h.target());
    let report = &mut out.report;
    match elem_name {
        Some(n) => {
            let f = elem(h, n)?;
            let (x, a) = (h.elem_source(f), h.elem_target(f));
            let lw = ha.left.witness_at(x);
            let mut ok = report.check(
                format!("left representation at `{}`", xs.object_name(x)),
                lw.is_some(),
                "",
            );
            ok &= report.check(
                format!("right representation at `{}`", xa.object_name(a)),
                ha.right.witness_at(a).is_some(),
                "",
            );
            if let Some(lw) = lw {
                ok &= report.check(
                    format!("right representation at `{}`", xa.object_name(lw.rep_object)),
                    ha.right.witness_at(lw.rep_object).is_some(),
                    "needed for the unit",
                );
            }
            if !ok {
                return Ok(());
            }
            let sq = check_adjunctive_square(&ha, f).map_err(core)?;
            let ob = check_over_and_back(&ha, f).map_err(core)?;
            report.check("adjunctive square commutes", sq.holds, "");
            report.check("over-and-back: G(f*) after the unit is f**", ob.holds, "");
            let lw = ha.left.witness_at(x).expect("checked above");
            let rw = ha.right.witness_at(a).expect("checked above");
            report.witness([
                ("het", h.elem_name(f)),
                ("eta", h.elem_name(lw.universal)),
                ("epsilon", h.elem_name(rw.universal)),
                ("f*", xa.morphism_name(sq.f_star)),
                ("f**", xs.morphism_name(sq.f_star_star)),
                ("unit", xs.morphism_name(ob.unit)),
                ("over-and-back", xs.morphism_name(ob.composite)),
            ]);
            if let Some(path) = dot_path {
                let text = dot::adjunctive_square(&ha, f, &sq).map_err(core)?;
                out.files.push((path.clone(), text));
            }
        }
        None => {
            if dot_path.is_some() {
                return Err(Diagnostic::about(subject, "--dot needs --elem").into());
            }
            let total = h.num_elems();
            report.check(
                "some het has representations on both sides",
                !checkable.is_empty(),
                format!("{} of {total} hets checkable", checkable.len()),
            );
            let (mut sq_bad, mut ob_bad) = (0, 0);
            for &f in &checkable {
                let sq = check_adjunctive_square(&ha, f).map_err(core)?;
                let ob = check_over_and_back(&ha, f).map_err(core)?;
                if !sq.holds {
                    sq_bad += 1;
                    report.counterexample(Diagnostic::about(
                        subject.clone(),
                        format!("adjunctive square fails at `{}`", h.elem_name(f)),
                    ));
                }
                if !ob.holds {
                    ob_bad += 1;
                    report.counterexample(Diagnostic::about(
                        subject.clone(),
                        format!("over-and-back fails at `{}`", h.elem_name(f)),
                    ));
                }
            }
            let n = checkable.len();
            report.check("adjunctive square commutes", sq_bad == 0, format!("{} of {n} hets", n - sq_bad));
            report.check("over-and-back", ob_bad == 0, format!("{} of {n} hets", n - ob_bad));
        }
    }
    Ok(())
}

fn collage(ws: &Workspace, het: &str, dsl: Option<&PathBuf>, out: &mut CommandOutput) -> CmdResult<()> {
    let h = ws.het(het)?;
    let subject = format!("het bifunctor `{het}`");
    let core = |e| Failure::core(&subject, e);
    let c = build_collage(h).map_err(core)?;
    let laws = validate_category(&c.category.to_raw());
    let report = &mut out.report;
    report.check("collage satisfies the category laws", laws.is_valid(), "");
    for v in &laws.violations {
        report.counterexample(Diagnostic::about(format!("collage of `{het}`"), v.message.clone()));
    }
    let (x, a, back) = extract_het_from_collage(&c).map_err(core)?;
    let round = x.same_up_to_renaming(h.source()) && a.same_up_to_renaming(h.target()) && back.same_up_to_renaming(h);
    report.check("extracting the het bifunctor gives the input back", round, "");
    let cat = &c.category;
    report.witness([
        ("category", cat.name().to_string()),
        ("objects", cat.num_objects().to_string()),
        ("morphisms", cat.num_morphisms().to_string()),
        ("hets", h.num_elems().to_string()),
    ]);
    if let Some(path) = dsl {
        let mut text = String::new();
        write_category(&mut text, cat)?;
        out.files.push((path.clone(), text));
    }
    Ok(())
}

fn extract_collage(
    ws: &Workspace,
    category: &str,
    split: &str,
    dsl: Option<&PathBuf>,
    out: &mut CommandOutput,
) -> CmdResult<()> {
    let cat = ws.category(category)?;
    let subject = format!("category `{category}`");
    let mut sides = vec![CollageSide::A; cat.num_objects()];
    for name in split_objects(split) {
        sides[object(cat, &name, &subject)?.index()] = CollageSide::X;
    }
    let report = &mut out.report;
    let c = match CollageCategory::from_partition(cat.clone(), sides) {
        Ok(c) => c,
        Err(e @ Error::NotACollage(_)) => {
            report.check("no morphism goes from the target side back to the source side", false, "");
            report.counterexample(Diagnostic::about(subject, e.to_string()));
            return Ok(());
        }
        Err(e) => return Err(Failure::core(&subject, e)),
    };
    report.check("no morphism goes from the target side back to the source side", true, "");
    let (x, a, h) = extract_het_from_collage(&c).map_err(|e| Failure::core(&subject, e))?;
    let laws = validate_het_bifunctor(&h.to_raw());
    report.check("extracted het bifunctor satisfies its laws", laws.is_valid(), "");
    for v in &laws.violations {
        report.counterexample(Diagnostic::about(format!("het bifunctor `{}`", h.name()), v.message.clone()));
    }
    report.witness([
        ("source", format!("{} ({} objects)", x.name(), x.num_objects())),
        ("target", format!("{} ({} objects)", a.name(), a.num_objects())),
        ("het", format!("{} ({} elements)", h.name(), h.num_elems())),
    ]);
    if let Some(path) = dsl {
        let mut text = String::new();
        write_category(&mut text, &x)?;
        text.push('\n');
        write_category(&mut text, &a)?;
        text.push('\n');
        write_het(&mut text, &h)?;
        out.files.push((path.clone(), text));
    }
    Ok(())
}

fn brain_rows(w: &BrainWitness, report: &mut VerificationReport) {
    let (x, a) = (w.functor.source(), w.functor.target());
    for o in x.objects() {
        report.witness([
            ("object", x.object_name(o)),
            ("image", a.object_name(w.functor.ob(o))),
            ("alpha", w.h_in.elem_name(w.alpha(o))),
            ("epsilon", w.h_out.elem_name(w.epsilon(o))),
        ]);
    }
}

#[allow(clippy::too_many_arguments)]
fn check_brain(
    ws: &Workspace,
    budget: &Budget,
    functor: &str,
    h_in: &str,
    h_out: &str,
    at: Option<&str>,
    in_elem: Option<&str>,
    out_elem: Option<&str>,
    dot_path: Option<&PathBuf>,
    out: &mut CommandOutput,
) -> CmdResult<()> {
    let b = ws.functor(functor)?;
    let (hi, ho) = (ws.het(h_in)?, ws.het(h_out)?);
    let subject = format!("brain functor `{functor}`");
    let core = |e| Failure::core(&subject, e);
    let verdict = verify_brain_functor(b, hi, ho, budget).map_err(core)?;
    let report = &mut out.report;
    let w = match verdict {
        Ok(w) => w,
        Err(r) => {
            let wing = |side: &str| !r.violations.iter().any(|v| v.message.starts_with(side));
            report.check(format!("left wing: `{functor}` left-represents `{h_in}`"), wing("left"), "");
            report.check(format!("right wing: `{functor}` right-represents `{h_out}`"), wing("right"), "");
            for v in &r.violations {
                report.counterexample(Diagnostic::about(subject.clone(), v.message.clone()));
            }
            return Ok(());
        }
    };
    report.check(format!("left wing: `{functor}` left-represents `{h_in}`"), true, "");
    report.check(format!("right wing: `{functor}` right-represents `{h_out}`"), true, "");
    brain_rows(&w, report);
    if let Some(path) = dot_path {
        let xc = b.source();
        let x = match at {
            Some(n) => object(xc, n, &subject)?,
            None => xc.objects().next().ok_or_else(|| Diagnostic::about(subject.clone(), "source category is empty"))?,
        };
        let f = match in_elem {
            Some(n) => elem(hi, n)?,
            None => illustrative(&hets_at(hi, x, Chirality::Left), w.alpha(x)),
        };
        let g = match out_elem {
            Some(n) => elem(ho, n)?,
            None => illustrative(&hets_at(ho, x, Chirality::Right), w.epsilon(x)),
        };
        let text = dot::butterfly(&w, x, f, g).map_err(core)?;
        out.files.push((path.clone(), text));
    }
    Ok(())
}

fn find_brains(ws: &Workspace, budget: &Budget, h_in: &str, h_out: &str, report: &mut VerificationReport) -> CmdResult<()> {
    let (hi, ho) = (ws.het(h_in)?, ws.het(h_out)?);
    let subject = format!("brain search over `{h_in}` and `{h_out}`");
    let found = find_brain_functors(hi, ho, budget).map_err(|e| Failure::core(&subject, e))?;
    report.check("some brain functor exists", !found.is_empty(), format!("{} found", found.len()));
    let (x, a) = (hi.source(), hi.target());
    for (k, w) in found.iter().enumerate() {
        let objects: Vec<String> = x
            .objects()
            .map(|o| format!("{}->{}", x.object_name(o), a.object_name(w.functor.ob(o))))
            .collect();
        let generators: Vec<String> = x
            .generators()
            .iter()
            .map(|&m| format!("{}->{}", x.morphism_name(m), a.morphism_name(w.functor.mor(m))))
            .collect();
        report.witness([
            ("functor", format!("B{k}")),
            ("objects", objects.join(" ")),
            ("generators", generators.join(" ")),
        ]);
    }
    Ok(())
}

fn gallery(ws_budget: &Budget, action: &GalleryAction, out: &mut CommandOutput) -> CmdResult<()> {
    match action {
        GalleryAction::List => {
            let mut text = String::new();
            for name in GALLERY {
                out.report.witness([("name", *name)]);
                text.push_str(name);
                text.push('\n');
            }
            out.raw = Some(text);
        }
        GalleryAction::Run { name } => {
            let subject = format!("gallery instance `{name}`");
            let core = |e| Failure::core(&subject, e);
            let g = gallery_instance(name, ws_budget).map_err(core)?;
            for o in g.run(ws_budget).map_err(core)? {
                let mut detail = format!("expected {}, observed {}", o.expected, o.observed);
                if !o.detail.is_empty() {
                    detail.push_str("; ");
                    detail.push_str(&o.detail);
                }
                let passed = o.passed();
                out.report.check(o.check, passed, detail);
            }
            for h in &g.hets {
                for chirality in [Chirality::Left, Chirality::Right] {
                    let fam = find_representation_family(h, chirality, ws_budget).map_err(core)?;
                    for w in &fam.family.witnesses {
                        witness_row(&mut out.report, h, w);
                    }
                }
            }
        }
        GalleryAction::Export { name, output } => {
            let subject = format!("gallery instance `{name}`");
            let g = gallery_instance(name, ws_budget).map_err(|e| Failure::core(&subject, e))?;
            let text = to_dsl(&Workspace::from_gallery(&g)?)?;
            out.report.check("structures serialize to the DSL", true, format!("{} bytes", text.len()));
            match output {
                Some(p) => out.files.push((p.clone(), text)),
                None => out.raw = Some(text),
            }
        }
    }
    Ok(())
}

fn witness_row(report: &mut VerificationReport, h: &HetBifunctor, w: &RepWitness) {
    let (bc, rc) = (base_category(h, w.chirality), rep_category(h, w.chirality));
    report.witness([
        ("het", h.name()),
        ("side", w.chirality.label()),
        ("base", bc.object_name(w.base)),
        ("object", rc.object_name(w.rep_object)),
        ("universal", h.elem_name(w.universal)),
    ]);
}

/// Runs one command against a workspace. Commands other than `validate`
/// and `gallery` require every structure in the workspace to be valid.
pub fn run_command(ws: &Workspace, command: &Command, budget: &Budget) -> CmdResult<CommandOutput> {
    if command.needs_valid_workspace() {
        let errors = ws.validation_errors();
        if !errors.is_empty() {
            return Err(Failure::Input(errors));
        }
    }
    let mut out = CommandOutput::new(VerificationReport::new(command.echo(), budget));
    match command {
        Command::Validate { name } => validate(ws, name.as_deref(), &mut out.report)?,
        Command::FindRep { het, at, side, elem, dot } => {
            find_rep(ws, budget, het, at, (*side).into(), elem.as_deref(), dot.as_ref(), &mut out)?
        }
        Command::CheckAdjunction { left, right, via, left_incl, right_incl } => check_adjunction(
            ws,
            budget,
            left,
            right,
            via.as_deref(),
            left_incl.as_deref(),
            right_incl.as_deref(),
            &mut out.report,
        )?,
        Command::CheckSquare { het, elem, dot } => check_square(ws, budget, het, elem.as_deref(), dot.as_ref(), &mut out)?,
        Command::Collage { het, dsl } => collage(ws, het, dsl.as_ref(), &mut out)?,
        Command::ExtractCollage { category, split, dsl } => extract_collage(ws, category, split, dsl.as_ref(), &mut out)?,
        Command::CheckBrain { functor, h_in, h_out, at, in_elem, out_elem, dot } => check_brain(
            ws,
            budget,
            functor,
            h_in,
            h_out,
            at.as_deref(),
            in_elem.as_deref(),
            out_elem.as_deref(),
            dot.as_ref(),
            &mut out,
        )?,
        Command::FindBrains { h_in, h_out } => find_brains(ws, budget, h_in, h_out, &mut out.report)?,
        Command::Gallery { action } => gallery(budget, action, &mut out)?,
    }
    out.report.conclude();
    Ok(out)
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn failure_execution(failure: &Failure, command: &str, budget: &Budget, format: Format) -> Execution {
    let mut stderr = String::new();
    for d in failure.diagnostics() {
        stderr.push_str(&format!("error: {d}\n"));
    }
    let stdout = match format {
        Format::Text => String::new(),
        Format::Json => {
            let mut r = VerificationReport::new(command, budget);
            r.status = Status::Error;
            r.counterexamples = failure.diagnostics().to_vec();
            r.to_json()
        }
    };
    Execution {
        code: failure.exit_code(),
        stdout,
        stderr,
    }
}

fn load(cli: &Cli, budget: &Budget) -> CmdResult<Workspace> {
    let mut texts = Vec::new();
    for p in &cli.files {
        let name = p.display().to_string();
        let text = std::fs::read_to_string(p)
            .map_err(|e| Diagnostic::about(format!("file `{name}`"), format!("cannot read: {e}")))?;
        texts.push((name, text));
    }
    let sources: Vec<(&str, &str)> = texts.iter().map(|(n, t)| (n.as_str(), t.as_str())).collect();
    let mut ws = Workspace::parse(&sources).map_err(Failure::Input)?;
    for name in &cli.galleries {
        let g = gallery_instance(name, budget).map_err(|e| Failure::core(&format!("gallery instance `{name}`"), e))?;
        ws.add_gallery(&g)?;
    }
    Ok(ws)
}

/// Parses nothing itself: runs an already parsed command line, writes any
/// requested files, and returns the output and exit code.
pub fn execute(cli: &Cli) -> Execution {
    let start = Instant::now();
    let echo = cli.command.echo();
    let budget = Budget::from_env().and_then(|b| match &cli.budget {
        Some(spec) => b.with_overrides(spec),
        None => Ok(b),
    });
    let budget = match budget {
        Ok(b) => b,
        Err(e) => {
            let f = Failure::Input(vec![Diagnostic::about("budget", e.to_string())]);
            return failure_execution(&f, &echo, &Budget::default(), cli.format);
        }
    };
    let result = load(cli, &budget).and_then(|ws| run_command(&ws, &cli.command, &budget));
    let mut out = match result {
        Ok(out) => out,
        Err(f) => return failure_execution(&f, &echo, &budget, cli.format),
    };
    for (path, text) in &out.files {
        if let Err(e) = std::fs::write(path, text) {
            let d = Diagnostic::about(format!("file `{}`", path.display()), format!("cannot write: {e}"));
            return failure_execution(&Failure::Input(vec![d]), &echo, &budget, cli.format);
        }
    }
    if cli.timing {
        out.report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let stdout = match (cli.format, &out.raw) {
        (Format::Text, Some(raw)) => raw.clone(),
        (Format::Text, None) => out.report.to_text(),
        (Format::Json, _) => out.report.to_json(),
    };
    Execution {
        code: out.exit_code(),
        stdout,
        stderr: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::is_bare_name;

    #[test]
    fn split_keeps_tuples_whole() {
        assert_eq!(split_objects("a, (1,2) [x,y]"), vec!["a", "(1,2)", "[x,y]"]);
        assert!(is_bare_name("(1,2)"));
    }

    #[test]
    fn echo_quotes_spaced_names() {
        let c = Command::CheckAdjunction {
            left: "Free F".into(),
            right: "U".into(),
            via: None,
            left_incl: None,
            right_incl: None,
        };
        assert_eq!(c.echo(), "check-adjunction \"Free F\" U");
    }
}
