//! Graphviz output for adjunctive squares, brain butterflies and
//! representation triangles.
//!
//! Hets are solid single edges; homs are drawn as double lines
//! (`color="black:invis:black"`). Nodes are labelled with object names and
//! edges with het or morphism names, so equal inputs give equal bytes.

use std::fmt::Write as _;

use hetcat::adjunction::{HetAdjunction, SquareCheck};
use hetcat::brain::BrainWitness;
use hetcat::universals::{Chirality, RepWitness};
use hetcat::{Error, HetBifunctor, HetId, ObjId, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Arrow {
    Het,
    Hom,
}

struct Graph {
    name: &'static str,
    nodes: Vec<String>,
    edges: Vec<(usize, usize, String, Arrow)>,
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl Graph {
    fn new(name: &'static str) -> Graph {
        Graph {
            name,
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn node(&mut self, label: &str) -> usize {
        self.nodes.push(label.to_string());
        self.nodes.len() - 1
    }

    fn het(&mut self, from: usize, to: usize, label: impl Into<String>) {
        self.edges.push((from, to, label.into(), Arrow::Het));
    }

    fn hom(&mut self, from: usize, to: usize, label: impl Into<String>) {
        self.edges.push((from, to, label.into(), Arrow::Hom));
    }

    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", self.name);
        out.push_str("  node [shape=plaintext];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label={}];", quoted(n));
        }
        for (from, to, label, arrow) in &self.edges {
            let style = match arrow {
                Arrow::Het => "style=solid",
                Arrow::Hom => "color=\"black:invis:black\"",
            };
            let _ = writeln!(out, "  n{from} -> n{to} [label={}, {style}];", quoted(label));
        }
        out.push_str("}\n");
        out
    }
}

/// Four-node square for het `f: x → a` with diagonal `f`: `η_x` then `f⋆`
/// across the top, `f⋆⋆` then `ε_a` down the side.
pub fn adjunctive_square(ha: &HetAdjunction, f: HetId, sq: &SquareCheck) -> Result<String> {
    let h = &ha.het;
    let (xs, xa) = (h.source(), h.target());
    let (x, a) = (h.elem_source(f), h.elem_target(f));
    let lw = ha
        .left
        .witness_at(x)
        .ok_or_else(|| Error::Shape(format!("no left representation at `{}`", xs.object_name(x))))?;
    let rw = ha
        .right
        .witness_at(a)
        .ok_or_else(|| Error::Shape(format!("no right representation at `{}`", xa.object_name(a))))?;
    let mut g = Graph::new("square");
    let nx = g.node(xs.object_name(x));
    let nf = g.node(xa.object_name(lw.rep_object));
    let ng = g.node(xs.object_name(rw.rep_object));
    let na = g.node(xa.object_name(a));
    g.het(nx, nf, format!("eta: {}", h.elem_name(lw.universal)));
    g.hom(nf, na, format!("f*: {}", xa.morphism_name(sq.f_star)));
    g.hom(nx, ng, format!("f**: {}", xs.morphism_name(sq.f_star_star)));
    g.het(ng, na, format!("epsilon: {}", h.elem_name(rw.universal)));
    g.het(nx, na, format!("f: {}", h.elem_name(f)));
    Ok(g.render())
}

/// Five-node butterfly at `x`: the left wing factors `f_in: x → a` through
/// `α_x: x → B x`, the right wing factors `g_out: a' → x` through
/// `ε_x: B x → x`. The two copies of `x` stay separate nodes.
pub fn butterfly(w: &BrainWitness, x: ObjId, f_in: HetId, g_out: HetId) -> Result<String> {
    let (hi, ho) = (&w.h_in, &w.h_out);
    let (xc, ac) = (w.functor.source(), w.functor.target());
    if hi.elem_source(f_in) != x || ho.elem_target(g_out) != x {
        return Err(Error::Shape(format!(
            "`{}` must start at and `{}` must end at `{}`",
            hi.elem_name(f_in),
            ho.elem_name(g_out),
            xc.object_name(x)
        )));
    }
    let (lw, rw) = (&w.left.witnesses[x.index()], &w.right.witnesses[x.index()]);
    let missing = |which: &str| Error::Internal(format!("{which} factor missing from brain witness"));
    let f_star = lw.factor_of(f_in).ok_or_else(|| missing("left"))?;
    let g_star = rw.factor_of(g_out).ok_or_else(|| missing("right"))?;
    let bx = w.functor.ob(x);
    let mut g = Graph::new("butterfly");
    let n_in = g.node(xc.object_name(x));
    let na = g.node(ac.object_name(hi.elem_target(f_in)));
    let nb = g.node(ac.object_name(bx));
    let na2 = g.node(ac.object_name(ho.elem_source(g_out)));
    let n_out = g.node(xc.object_name(x));
    g.het(n_in, nb, format!("alpha: {}", hi.elem_name(lw.universal)));
    g.het(n_in, na, format!("f: {}", hi.elem_name(f_in)));
    g.hom(nb, na, format!("f*: {}", ac.morphism_name(f_star)));
    g.het(nb, n_out, format!("epsilon: {}", ho.elem_name(rw.universal)));
    g.het(na2, n_out, format!("g: {}", ho.elem_name(g_out)));
    g.hom(na2, nb, format!("g*: {}", ac.morphism_name(g_star)));
    Ok(g.render())
}

/// Three-node triangle of one representation: `f` factors through the
/// universal het by the unique hom.
pub fn representation_triangle(h: &HetBifunctor, w: &RepWitness, f: HetId) -> Result<String> {
    let (xs, xa) = (h.source(), h.target());
    let factor = w.factor_of(f).ok_or_else(|| {
        Error::Shape(format!(
            "het `{}` is not at the base of the representation",
            h.elem_name(f)
        ))
    })?;
    let mut g = Graph::new("representation");
    match w.chirality {
        Chirality::Left => {
            let nx = g.node(xs.object_name(w.base));
            let nf = g.node(xa.object_name(w.rep_object));
            let na = g.node(xa.object_name(h.elem_target(f)));
            g.het(nx, nf, format!("eta: {}", h.elem_name(w.universal)));
            g.het(nx, na, format!("f: {}", h.elem_name(f)));
            g.hom(nf, na, format!("f*: {}", xa.morphism_name(factor)));
        }
        Chirality::Right => {
            let nx = g.node(xs.object_name(h.elem_source(f)));
            let ng = g.node(xs.object_name(w.rep_object));
            let na = g.node(xa.object_name(w.base));
            g.het(ng, na, format!("epsilon: {}", h.elem_name(w.universal)));
            g.het(nx, na, format!("f: {}", h.elem_name(f)));
            g.hom(nx, ng, format!("f**: {}", xs.morphism_name(factor)));
        }
    }
    Ok(g.render())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_renders_both_edge_styles() {
        let mut g = Graph::new("t");
        let a = g.node("a \"quoted\"");
        let b = g.node("b");
        g.het(a, b, "e");
        g.hom(b, a, "u");
        let text = g.render();
        assert!(text.starts_with("digraph t {\n"));
        assert!(text.contains("n0 [label=\"a \\\"quoted\\\"\"];"));
        assert!(text.contains("n0 -> n1 [label=\"e\", style=solid];"));
        assert!(text.contains("n1 -> n0 [label=\"u\", color=\"black:invis:black\"];"));
        assert!(text.ends_with("}\n"));
    }
}
