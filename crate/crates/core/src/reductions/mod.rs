//! Rules that replace an instance by smaller ones, together with the plan
//! for turning colorings of the smaller instances back into a coloring of
//! the original.

mod cycles;
mod rules;

use std::collections::BTreeSet;
use std::fmt;

pub use cycles::{cycle_sides, uncrossed_quads, uncrossed_triangles, CycleSides};

use crate::drawing::{Edge, PlaneGraph};
use crate::graph::Vertex;
use crate::instance::{Color, ColorList, Coloring, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    LowDegree,
    Cut,
    CrossedTriangleEdge,
    SeparatingTriangle,
    TwoCut,
    SeparatingQuad,
    DoublyCrossedEdge,
    CrossingGadget,
}

impl Rule {
    /// Rules in the order they are tried.
    pub const ALL: [Rule; 8] = [
        Rule::LowDegree,
        Rule::Cut,
        Rule::CrossedTriangleEdge,
        Rule::SeparatingTriangle,
        Rule::TwoCut,
        Rule::SeparatingQuad,
        Rule::DoublyCrossedEdge,
        Rule::CrossingGadget,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::LowDegree => "R1",
            Rule::Cut => "R2",
            Rule::CrossedTriangleEdge => "R3",
            Rule::SeparatingTriangle => "R4",
            Rule::TwoCut => "R5",
            Rule::SeparatingQuad => "R6",
            Rule::DoublyCrossedEdge => "R7",
            Rule::CrossingGadget => "R8",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A smaller instance and where its vertices came from.
#[derive(Debug, Clone)]
pub struct Child {
    pub instance: Instance,
    /// parent id of each child vertex; `None` for vertices the rule added
    pub to_parent: Vec<Option<Vertex>>,
}

impl Child {
    pub fn pull_back(&self, c: &Coloring) -> Coloring {
        c.iter().filter_map(|(&v, &col)| self.to_parent[v].map(|p| (p, col))).collect()
    }

    /// The child's id for parent vertex `p`.
    pub fn local(&self, p: Vertex) -> Option<Vertex> {
        self.to_parent.iter().position(|&q| q == Some(p))
    }
}

#[derive(Debug, Clone)]
pub enum Plan {
    /// Color the only child, then give `v` a color unused by its neighbors.
    Greedy { v: Vertex },
    /// The children are disjoint pieces; their colorings are merged.
    Union,
    /// Color the only child, keep its colors on `s` and extend to the rest.
    Extend { s: BTreeSet<Vertex> },
    /// Color the only child, copy its colors onto the interface of
    /// `template` as singleton lists, color the template and merge.
    Sequential { template: Child, interface: Vec<(Vertex, Vertex)> },
    /// No child: extend `psi` on `s` within `base`, a supergraph of the
    /// parent on the same vertex ids.
    Direct { base: Instance, s: BTreeSet<Vertex>, psi: Coloring },
    /// Color the only child, which carries an extra vertex with the fresh
    /// color; the other colors restrict to the parent.
    Gadget { fresh: Color },
}

#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub rule: Rule,
    pub params: Vec<Vertex>,
    pub children: Vec<Child>,
    pub plan: Plan,
}

impl ReductionStep {
    /// Every child and template is a valid instance strictly below the
    /// parent in the measure.
    pub fn is_admissible(&self, parent: &Instance) -> bool {
        let m = parent.measure();
        let ok = |c: &Child| c.instance.mode().is_ok() && c.instance.measure() < m;
        self.children.iter().all(ok)
            && match &self.plan {
                Plan::Sequential { template, .. } => ok(template),
                _ => true,
            }
    }
}

/// The first rule, in order, with an admissible step on `inst`. Instances
/// that can be colored directly (no crossing, or one crossing and no
/// triangle) get `None`.
pub fn find_applicable_reduction(inst: &Instance) -> Option<ReductionStep> {
    Rule::ALL.into_iter().find_map(|r| find_rule(inst, r))
}

/// The first admissible step of one rule, scanning its parameters in
/// increasing order.
pub fn find_rule(inst: &Instance, rule: Rule) -> Option<ReductionStep> {
    if inst.mode().is_err() || is_base(inst) {
        return None;
    }
    let plane = inst.plane().ok()?;
    let ctx = rules::Ctx { inst, plane: &plane };
    let ok = |s: &ReductionStep| s.is_admissible(inst);
    match rule {
        Rule::LowDegree => ctx.low_degree(&ok),
        Rule::Cut => ctx.cut(&ok),
        Rule::CrossedTriangleEdge => ctx.crossed_triangle_edge(&ok),
        Rule::SeparatingTriangle => ctx.separating_triangle(&ok),
        Rule::TwoCut => ctx.two_cut(&ok),
        Rule::SeparatingQuad => ctx.separating_quad(&ok),
        Rule::DoublyCrossedEdge => ctx.doubly_crossed_edge(&ok),
        Rule::CrossingGadget => ctx.crossing_gadget(&ok),
    }
}

/// Planar, or one crossing and no precolored triangle.
pub fn is_base(inst: &Instance) -> bool {
    inst.crossing_count() == 0 || (inst.crossing_count() == 1 && inst.triangle.is_none())
}

/// The sub-instance left after deleting original vertices and edges of the
/// parent's planarization.
pub fn carve(inst: &Instance, plane: &PlaneGraph, drop_v: &BTreeSet<Vertex>, drop_e: &BTreeSet<Edge>) -> Child {
    let (p, map) = plane.delete(drop_v, drop_e);
    let mut to_parent = vec![None; p.original_count];
    for (old, new) in map.iter().enumerate() {
        if let Some(nv) = new {
            to_parent[*nv] = Some(old);
        }
    }
    let lists = to_parent.iter().map(|o| inst.lists[o.unwrap()].clone()).collect();
    let drawing = p.to_drawing();
    let triangle = inst.triangle.and_then(|t| {
        let m = t.map(|v| map[v]);
        let m = [m[0]?, m[1]?, m[2]?];
        let g = &drawing.graph;
        (g.has_edge(m[0], m[1]) && g.has_edge(m[1], m[2]) && g.has_edge(m[0], m[2])).then_some(m)
    });
    Child { instance: Instance::new(drawing, lists, triangle), to_parent }
}

/// Distinct placeholder singletons above every color in use, for template
/// vertices whose colors are fixed later.
fn placeholders(inst: &Instance, k: usize) -> Vec<ColorList> {
    let base = inst.fresh_color();
    (0..k as Color).map(|i| ColorList::from([base + i])).collect()
}

#[cfg(test)]
mod tests;
