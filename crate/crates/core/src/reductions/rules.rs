use std::cmp::Reverse;
use std::collections::BTreeSet;

use super::{carve, cycle_sides, placeholders, uncrossed_quads, uncrossed_triangles, Child, CycleSides, Plan, ReductionStep, Rule};
use crate::drawing::{Edge, PlaneGraph};
use crate::graph::{Graph, Vertex};
use crate::instance::{ColorList, Coloring, Instance, ListAssignment};
use crate::observation::{check_observation_preconditions, extension_shape};

pub(super) type Accept<'f> = &'f dyn Fn(&ReductionStep) -> bool;

pub(super) struct Ctx<'a> {
    pub inst: &'a Instance,
    pub plane: &'a PlaneGraph,
}

fn none() -> BTreeSet<Edge> {
    BTreeSet::new()
}

impl<'a> Ctx<'a> {
    fn g(&self) -> &'a Graph {
        self.inst.graph()
    }

    fn complement(&self, keep: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        self.g().vertices().filter(|v| !keep.contains(v)).collect()
    }

    fn has_triangle_in(&self, keep: &BTreeSet<Vertex>) -> bool {
        self.inst.triangle.is_some_and(|t| t.iter().all(|v| keep.contains(v)))
    }

    /// Crossings and precolored triangle that survive when only `keep` is left.
    fn configs_within(&self, keep: &BTreeSet<Vertex>) -> usize {
        let crossings = self
            .inst
            .drawing
            .crossings
            .iter()
            .filter(|c| c.endpoints().iter().all(|v| keep.contains(v)))
            .count();
        crossings + self.has_triangle_in(keep) as usize
    }

    fn step(&self, rule: Rule, params: Vec<Vertex>, children: Vec<Child>, plan: Plan) -> ReductionStep {
        ReductionStep { rule, params, children, plan }
    }

    /// The part of the instance on `keep` plus apex vertices that turn the
    /// interface into a triangle. All triangle lists are placeholders.
    fn template(
        &self,
        keep: &BTreeSet<Vertex>,
        drop_e: &BTreeSet<Edge>,
        interface: &[Vertex],
    ) -> Option<(Child, Vec<(Vertex, Vertex)>)> {
        let base = carve(self.inst, self.plane, &self.complement(keep), drop_e);
        let mut p = base.instance.plane().ok()?;
        let local: Vec<Vertex> = interface.iter().map(|&v| base.local(v)).collect::<Option<_>>()?;
        let tri = match local[..] {
            [c] => {
                let f = p.faces().into_iter().find(|f| f.vertex_set().contains(&c))?;
                let a = p.add_vertex_in_face(&f, &[c]);
                let f = p.faces().into_iter().find(|f| f.vertex_set().contains(&a))?;
                let b = p.add_vertex_in_face(&f, &[c, a]);
                [c, a, b]
            }
            [u, v] => {
                let f = p.faces().into_iter().find(|f| f.contains_dart(u, v))?;
                let z = p.add_vertex_in_face(&f, &[u, v]);
                [u, v, z]
            }
            [a, b, c] => [a, b, c],
            _ => return None,
        };
        let mut to_parent = base.to_parent.clone();
        to_parent.resize(p.original_count, None);
        let mut lists: ListAssignment = base.instance.lists.clone();
        lists.resize(p.original_count, ColorList::new());
        for (&t, l) in tri.iter().zip(placeholders(self.inst, 3)) {
            lists[t] = l;
        }
        let instance = Instance::new(p.to_drawing(), lists, Some(tri));
        let pairs = interface.iter().zip(&local).map(|(&pv, &lv)| (lv, pv)).collect();
        Some((Child { instance, to_parent }, pairs))
    }

    /// Extend from `keep` when the rest has nothing dangerous, otherwise
    /// color `keep` first and then the rest with the interface precolored.
    #[allow(clippy::too_many_arguments)]
    fn split(
        &self,
        rule: Rule,
        params: Vec<Vertex>,
        keep: &BTreeSet<Vertex>,
        rest: &BTreeSet<Vertex>,
        drop_e: [&BTreeSet<Edge>; 2],
        interface: &[Vertex],
        ok: Accept,
    ) -> Option<ReductionStep> {
        let first = || carve(self.inst, self.plane, &self.complement(keep), drop_e[0]);
        if self.configs_within(rest) == 0 && extension_shape(self.inst, keep).is_ok() {
            let step = self.step(rule, params.clone(), vec![first()], Plan::Extend { s: keep.clone() });
            if ok(&step) {
                return Some(step);
            }
        }
        let (template, interface) = self.template(rest, drop_e[1], interface)?;
        let step = self.step(rule, params, vec![first()], Plan::Sequential { template, interface });
        ok(&step).then_some(step)
    }

    pub fn low_degree(&self, ok: Accept) -> Option<ReductionStep> {
        let g = self.g();
        g.vertices().filter(|&v| !self.inst.in_triangle(v) && g.degree(v) <= 4).find_map(|v| {
            let child = carve(self.inst, self.plane, &BTreeSet::from([v]), &none());
            let step = self.step(Rule::LowDegree, vec![v], vec![child], Plan::Greedy { v });
            ok(&step).then_some(step)
        })
    }

    pub fn cut(&self, ok: Accept) -> Option<ReductionStep> {
        let g = self.g();
        let comps = g.components();
        if comps.len() > 1 {
            let children = comps
                .iter()
                .map(|c| carve(self.inst, self.plane, &self.complement(&c.iter().copied().collect()), &none()))
                .collect();
            let step = self.step(Rule::Cut, comps.iter().map(|c| c[0]).collect(), children, Plan::Union);
            return ok(&step).then_some(step);
        }
        let mut cuts = g.cut_vertices();
        cuts.sort_unstable();
        cuts.into_iter().find_map(|c| {
            let sides = self.sides_of(&[c]);
            let main = self.main_side(&sides);
            let rest = self.other_sides(&sides, main, &[c]);
            self.split(Rule::Cut, vec![c], &sides[main], &rest, [&none(), &none()], &[c], ok)
        })
    }

    /// Each component of G minus `cut`, with the cut added back.
    fn sides_of(&self, cut: &[Vertex]) -> Vec<BTreeSet<Vertex>> {
        let removed: BTreeSet<Vertex> = cut.iter().copied().collect();
        self.g()
            .components_avoiding(&removed)
            .into_iter()
            .map(|k| k.into_iter().chain(cut.iter().copied()).collect())
            .collect()
    }

    /// The side holding the triangle, else the most crossings, else the most
    /// vertices.
    fn main_side(&self, sides: &[BTreeSet<Vertex>]) -> usize {
        (0..sides.len())
            .max_by_key(|&i| {
                (self.has_triangle_in(&sides[i]), self.configs_within(&sides[i]), sides[i].len(), Reverse(i))
            })
            .unwrap()
    }

    fn other_sides(&self, sides: &[BTreeSet<Vertex>], main: usize, cut: &[Vertex]) -> BTreeSet<Vertex> {
        let mut rest: BTreeSet<Vertex> = cut.iter().copied().collect();
        for (i, s) in sides.iter().enumerate() {
            if i != main {
                rest.extend(s.iter().copied());
            }
        }
        rest
    }

    pub fn crossed_triangle_edge(&self, ok: Accept) -> Option<ReductionStep> {
        let t = self.inst.triangle?;
        for (i, cp) in self.inst.drawing.crossings.iter().enumerate() {
            for (e, other) in [(cp.a, cp.b), (cp.b, cp.a)] {
                if !(t.contains(&e.0) && t.contains(&e.1)) {
                    continue;
                }
                let (u, v) = e;
                let w = *t.iter().find(|&&x| x != u && x != v).unwrap();
                let d = self.plane.original_count + i;
                let Some(cs) = cycle_sides(self.plane, &[u, d, v, w]) else { continue };
                let x = if other.0 != w { other.0 } else { other.1 };
                let near = (0..2).find(|&k| cs.side[k].contains(&x)).unwrap_or(0);
                for k in [near, 1 - near] {
                    let inner = cs.originals(self.plane, k);
                    if inner.is_empty() {
                        continue;
                    }
                    let keep = self.complement(&inner);
                    for gone in [v, u] {
                        let s: BTreeSet<Vertex> = keep.iter().copied().filter(|&z| z != gone && z != w).collect();
                        if extension_shape(self.inst, &s).is_err() {
                            continue;
                        }
                        let child = carve(self.inst, self.plane, &inner, &cs.cycle_edges_in(self.plane, k));
                        let step =
                            self.step(Rule::CrossedTriangleEdge, vec![u, v, w], vec![child], Plan::Extend { s });
                        if ok(&step) {
                            return Some(step);
                        }
                    }
                }
            }
        }
        None
    }

    /// Where the precolored triangle is drawn relative to a cycle:
    /// `Some(None)` if it is the cycle itself.
    fn triangle_region(&self, cs: &CycleSides) -> Option<Option<usize>> {
        let t = self.inst.triangle?;
        let regions: Vec<Option<usize>> =
            [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])].iter().map(|&(a, b)| cs.edge_region(self.plane, a, b)).collect();
        Some(regions.iter().flatten().next().copied())
    }

    fn region_configs(&self, cs: &CycleSides, k: usize) -> usize {
        let tri = match self.triangle_region(cs) {
            Some(Some(r)) => (r == k) as usize,
            _ => 0,
        };
        cs.dummies(self.plane, k).len() + tri
    }

    pub fn separating_triangle(&self, ok: Accept) -> Option<ReductionStep> {
        for tri in uncrossed_triangles(self.plane) {
            let Some(cs) = cycle_sides(self.plane, &tri) else { continue };
            let inner = [cs.originals(self.plane, 0), cs.originals(self.plane, 1)];
            if inner[0].is_empty() || inner[1].is_empty() {
                continue;
            }
            let k = match self.triangle_region(&cs) {
                Some(Some(r)) => r,
                _ => (cs.dummies(self.plane, 1).len() > cs.dummies(self.plane, 0).len()) as usize,
            };
            let keep = self.complement(&inner[1 - k]);
            let rest = self.complement(&inner[k]);
            let child = carve(self.inst, self.plane, &inner[1 - k], &none());
            let Some((template, interface)) = self.template(&rest, &none(), &tri) else { continue };
            debug_assert!(keep.is_superset(&tri.iter().copied().collect()));
            let step = self.step(
                Rule::SeparatingTriangle,
                tri.to_vec(),
                vec![child],
                Plan::Sequential { template, interface },
            );
            if ok(&step) {
                return Some(step);
            }
        }
        None
    }

    pub fn two_cut(&self, ok: Accept) -> Option<ReductionStep> {
        for (u, v) in self.g().edges() {
            if self.inst.drawing.is_crossed(u, v) {
                continue;
            }
            let sides = self.sides_of(&[u, v]);
            if sides.len() < 2 {
                continue;
            }
            let main = self.main_side(&sides);
            let rest = self.other_sides(&sides, main, &[u, v]);
            if let Some(step) =
                self.split(Rule::TwoCut, vec![u, v], &sides[main], &rest, [&none(), &none()], &[u, v], ok)
            {
                return Some(step);
            }
        }
        None
    }

    pub fn separating_quad(&self, ok: Accept) -> Option<ReductionStep> {
        let total = self.inst.crossing_count() + self.inst.triangle.is_some() as usize;
        for q in uncrossed_quads(self.plane) {
            let Some(cs) = cycle_sides(self.plane, &q) else { continue };
            let inner = [cs.originals(self.plane, 0), cs.originals(self.plane, 1)];
            if inner[0].is_empty() || inner[1].is_empty() {
                continue;
            }
            for k in 0..2 {
                if self.region_configs(&cs, k) != total
                    || self.region_configs(&cs, 1 - k) != 0
                    || !cs.chords[1 - k].is_empty()
                {
                    continue;
                }
                let keep = self.complement(&inner[1 - k]);
                for i in 0..4 {
                    let (x1, x2) = (q[i], q[(i + 1) % 4]);
                    let s: BTreeSet<Vertex> = keep.iter().copied().filter(|&z| z != x1 && z != x2).collect();
                    if extension_shape(self.inst, &s).is_err() {
                        continue;
                    }
                    let child = carve(self.inst, self.plane, &inner[1 - k], &none());
                    let step = self.step(Rule::SeparatingQuad, q.to_vec(), vec![child], Plan::Extend { s });
                    if ok(&step) {
                        return Some(step);
                    }
                }
            }
        }
        None
    }

    /// Colors `vs` in order, each with its smallest color unused so far.
    fn distinct_colors(&self, vs: &[Vertex]) -> Coloring {
        let mut psi = Coloring::new();
        for &v in vs {
            let c = self.inst.lists[v].iter().copied().find(|c| !psi.values().any(|x| x == c));
            psi.insert(v, c.expect("list longer than the set"));
        }
        psi
    }

    pub fn doubly_crossed_edge(&self, ok: Accept) -> Option<ReductionStep> {
        let cr = &self.inst.drawing.crossings;
        if self.inst.triangle.is_some() || cr.len() != 2 {
            return None;
        }
        let (c0, c1) = (cr[0], cr[1]);
        let (e, e1, e2) = [(c0.a, c0.b), (c0.b, c0.a)]
            .into_iter()
            .find_map(|(e, o)| {
                if c1.a == e {
                    Some((e, o, c1.b))
                } else if c1.b == e {
                    Some((e, o, c1.a))
                } else {
                    None
                }
            })?;
        let (u, v) = e;
        let shared = [e1.0, e1.1].into_iter().find(|&x| x == e2.0 || x == e2.1);
        if let Some(w) = shared {
            for a in [u, v] {
                let s = BTreeSet::from([a, w]);
                let psi = self.distinct_colors(&[a, w]);
                if check_observation_preconditions(self.inst, &s, &psi).is_ok() {
                    let base = self.inst.clone();
                    let step = self.step(Rule::DoublyCrossedEdge, vec![a, w], vec![], Plan::Direct { base, s, psi });
                    if ok(&step) {
                        return Some(step);
                    }
                }
            }
            return None;
        }
        for (a, b) in [(u, v), (v, u)] {
            for flip in [false, true] {
                if let Some(step) = self.hexagon(a, b, flip) {
                    if ok(&step) {
                        return Some(step);
                    }
                }
            }
        }
        None
    }

    /// The doubly crossed edge `ab` with both crossing edges met from `a`
    /// first: close the hexagon through their endpoints on one side and
    /// color `a` with the two endpoints on that side.
    fn hexagon(&self, a: Vertex, b: Vertex, flip: bool) -> Option<ReductionStep> {
        let p = self.plane;
        let strand = p.strand(a, b)?;
        let [_, d1, d2, _] = strand[..] else { return None };
        let turn = |d: Vertex, from: Vertex| if flip { p.rotation.pred(d, from) } else { p.rotation.succ(d, from) };
        let ends = |d: Vertex, hop: Vertex| {
            let r = p.rotation.around(d);
            let i = r.iter().position(|&x| x == hop).unwrap();
            (*p.trace(d, hop).last().unwrap(), *p.trace(d, r[(i + 2) % 4]).last().unwrap())
        };
        let (w1, z1) = ends(d1, turn(d1, a));
        let (w2, z2) = ends(d2, turn(d2, d1));
        let mut aug = p.clone();
        let sides: [(Vertex, Vertex, Vec<Vertex>); 6] = [
            (a, w1, vec![a, d1, w1]),
            (w1, w2, vec![w1, d1, d2, w2]),
            (w2, b, vec![w2, d2, b]),
            (b, z2, vec![b, d2, z2]),
            (z2, z1, vec![z2, d2, d1, z1]),
            (z1, a, vec![z1, d1, a]),
        ];
        for (x, y, hint) in &sides {
            if aug.graph.has_edge(*x, *y) {
                continue;
            }
            let f = aug.faces().into_iter().find(|f| {
                let vs = f.vertex_set();
                hint.iter().all(|h| vs.contains(h))
            })?;
            aug.add_edge_in_face(&f, *x, *y);
        }
        let cycle = [a, w1, w2, b, z2, z1];
        let cs = cycle_sides(&aug, &cycle)?;
        let k = (0..2).find(|&k| cs.side[k].contains(&d1))?;
        if !cs.originals(&aug, k).is_empty() {
            return None;
        }
        let base = Instance::new(aug.to_drawing(), self.inst.lists.clone(), None);
        let s = BTreeSet::from([a, w1, w2]);
        let psi = self.distinct_colors(&[a, w1, w2]);
        check_observation_preconditions(&base, &s, &psi).ok()?;
        Some(self.step(Rule::DoublyCrossedEdge, cycle.to_vec(), vec![], Plan::Direct { base, s, psi }))
    }

    pub fn crossing_gadget(&self, ok: Accept) -> Option<ReductionStep> {
        let p = self.plane;
        let g = self.g();
        if self.inst.triangle.is_some() || self.inst.crossing_count() != 2 {
            return None;
        }
        let n = p.original_count;
        for d in p.dummy_vertices() {
            let r = p.rotation.around(d).to_vec();
            let ends: Vec<Vertex> = r.iter().map(|&h| *p.trace(d, h).last().unwrap()).collect();
            let mut order: Vec<usize> = (0..4).collect();
            order.sort_by_key(|&i| ends[i]);
            for i in order {
                let (x, y, x2, y2) = (ends[i], ends[(i + 1) % 4], ends[(i + 2) % 4], ends[(i + 3) % 4]);
                let mut aug = p.clone();
                if !g.has_edge(x, y) {
                    let Some(f) = aug.faces().into_iter().find(|f| f.contains_dart(r[i], d)) else { continue };
                    let vs = f.vertex_set();
                    if !vs.contains(&x) || !vs.contains(&y) {
                        continue;
                    }
                    aug.add_edge_in_face(&f, x, y);
                }
                let kind: Vec<Option<bool>> =
                    (0..aug.graph.vertex_count()).map(|z| Some(aug.is_dummy(z) && z != d)).collect();
                let (child_plane, map) = PlaneGraph::from_parts(&aug.rotation.0, &kind);
                let vnew = map[d].unwrap();
                debug_assert_eq!(vnew, n);
                let l = &self.inst.lists;
                let a = *l[x].first().unwrap();
                let Some(&b) = l[y].iter().find(|&&c| c != a) else { continue };
                let c = self.inst.fresh_color();
                let mut lists = l.clone();
                lists[x] = ColorList::from([a]);
                lists[y] = ColorList::from([b]);
                lists[x2] = l[x2].iter().copied().filter(|&q| q != a).chain([c]).collect();
                lists[y2] = l[y2].iter().copied().filter(|&q| q != b).chain([c]).collect();
                lists.push(ColorList::from([c]));
                let instance = Instance::new(child_plane.to_drawing(), lists, Some([x, y, vnew]));
                let to_parent = (0..n).map(Some).chain([None]).collect();
                let step = self.step(
                    Rule::CrossingGadget,
                    vec![x, y, x2, y2],
                    vec![Child { instance, to_parent }],
                    Plan::Gadget { fresh: c },
                );
                if ok(&step) {
                    return Some(step);
                }
            }
        }
        None
    }
}
