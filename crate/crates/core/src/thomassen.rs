//! List-coloring of plane graphs with 5 colors inside, 3 on the outer face and
//! a precolored edge.
//!
//! The recursion works on vertex subsets of one fixed rotation system. At
//! every step it looks for a face carrying the precolored pair and every
//! vertex whose list has fewer than five colors, then either splits at a cut
//! vertex, splits along a chord of that face, or removes the boundary
//! neighbor of `y` after reserving two of its colors.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::instance::{Color, ColorList, Coloring, ListAssignment};
use crate::planarity::{FaceWalk, Rotation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThomassenError {
    #[error("rotation is not a plane embedding of the graph")]
    NotPlane,
    #[error("given face is not a face of the embedding")]
    NotAFace,
    #[error("precolored vertices {0} and {1} are not distinct adjacent vertices")]
    NotAdjacent(Vertex, Vertex),
    #[error("precolored vertex {0} is not on the outer face")]
    NotOnFace(Vertex),
    #[error("vertex {vertex} has an empty list")]
    EmptyList { vertex: Vertex },
    #[error("precolored vertices share the singleton list {{{color}}}")]
    EqualSingletons { color: Color },
    #[error("vertex {vertex} has {size} colors; boundary vertices need 3")]
    BoundaryListTooSmall { vertex: Vertex, size: usize },
    #[error("vertex {vertex} has {size} colors but is not on the outer face; interior vertices need 5")]
    InteriorListTooSmall { vertex: Vertex, size: usize },
    #[error("vertices with short lists in the component of {vertex} share no face")]
    NotCofacial { vertex: Vertex },
    #[error("internal defect: {0}")]
    Defect(String),
}

/// A plane graph with a distinguished face `face`, a precolored pair `x`,
/// `y` on it and lists sized 5 off the face, 3 on it and at least 1 on x, y.
#[derive(Debug, Clone)]
pub struct BoundaryTask {
    pub graph: Graph,
    pub rotation: Rotation,
    pub face: FaceWalk,
    pub x: Vertex,
    pub y: Vertex,
    pub lists: ListAssignment,
}

impl BoundaryTask {
    pub fn validate(&self) -> Result<(), ThomassenError> {
        if !self.rotation.matches(&self.graph) || !self.rotation.is_plane(&self.graph) {
            return Err(ThomassenError::NotPlane);
        }
        let faces = self.rotation.faces();
        let face_darts: BTreeSet<_> = self.face.darts.iter().copied().collect();
        if !faces.iter().any(|f| f.darts.iter().copied().collect::<BTreeSet<_>>() == face_darts) {
            return Err(ThomassenError::NotAFace);
        }
        check_anchor(&self.graph, &self.lists, self.x, self.y)?;
        let on_face = self.face.vertex_set();
        for v in [self.x, self.y] {
            if !on_face.contains(&v) {
                return Err(ThomassenError::NotOnFace(v));
            }
        }
        for v in self.graph.vertices() {
            if v == self.x || v == self.y {
                continue;
            }
            let size = self.lists[v].len();
            if on_face.contains(&v) && size < 3 {
                return Err(ThomassenError::BoundaryListTooSmall { vertex: v, size });
            }
            if !on_face.contains(&v) && size < 5 {
                return Err(ThomassenError::InteriorListTooSmall { vertex: v, size });
            }
        }
        Ok(())
    }
}

fn check_anchor(g: &Graph, lists: &ListAssignment, x: Vertex, y: Vertex) -> Result<(), ThomassenError> {
    if x == y || !g.has_edge(x, y) {
        return Err(ThomassenError::NotAdjacent(x, y));
    }
    for v in [x, y] {
        if lists[v].is_empty() {
            return Err(ThomassenError::EmptyList { vertex: v });
        }
    }
    if lists[x].len() == 1 && lists[x] == lists[y] {
        return Err(ThomassenError::EqualSingletons { color: *lists[x].first().unwrap() });
    }
    Ok(())
}

/// Colors the task's graph from its lists.
pub fn thomassen_color(task: &BoundaryTask) -> Result<Coloring, ThomassenError> {
    task.validate()?;
    run(&task.graph, &task.rotation, &task.lists, Some((task.x, task.y)))
}

/// Checks that `rot` embeds `g` so that some face per component carries all
/// short-list vertices (and the anchor, in its component), that lists are
/// large enough and that every list with fewer than 3 colors belongs to the
/// anchor.
pub fn plane_preconditions(
    g: &Graph,
    rot: &Rotation,
    lists: &ListAssignment,
    anchor: Option<(Vertex, Vertex)>,
) -> Result<(), ThomassenError> {
    if !rot.matches(g) || !rot.is_plane(g) {
        return Err(ThomassenError::NotPlane);
    }
    if let Some(v) = g.vertices().find(|&v| lists[v].is_empty()) {
        return Err(ThomassenError::EmptyList { vertex: v });
    }
    let anchored: BTreeSet<Vertex> = anchor.map(|(x, y)| BTreeSet::from([x, y])).unwrap_or_default();
    if let Some((x, y)) = anchor {
        check_anchor(g, lists, x, y)?;
    }
    if let Some(v) = g.vertices().find(|&v| !anchored.contains(&v) && lists[v].len() < 3) {
        return Err(ThomassenError::BoundaryListTooSmall { vertex: v, size: lists[v].len() });
    }
    for comp in g.components() {
        let keep: BTreeSet<Vertex> = comp.iter().copied().collect();
        let mut need: BTreeSet<Vertex> =
            comp.iter().copied().filter(|&v| lists[v].len() < 5).collect();
        need.extend(anchored.intersection(&keep));
        if need.len() <= 1 || comp.len() <= 2 {
            continue;
        }
        let sub = restrict(rot, &keep);
        if !sub.faces().iter().any(|f| need.is_subset(&f.vertex_set())) {
            return Err(ThomassenError::NotCofacial { vertex: *need.first().unwrap() });
        }
    }
    Ok(())
}

/// Colors a plane graph after checking [`plane_preconditions`].
pub fn color_plane(
    g: &Graph,
    rot: &Rotation,
    lists: &ListAssignment,
    anchor: Option<(Vertex, Vertex)>,
) -> Result<Coloring, ThomassenError> {
    plane_preconditions(g, rot, lists, anchor)?;
    run(g, rot, lists, anchor)
}

fn run(
    g: &Graph,
    rot: &Rotation,
    lists: &ListAssignment,
    anchor: Option<(Vertex, Vertex)>,
) -> Result<Coloring, ThomassenError> {
    let mut r = Recursion { rot, lists: lists.clone(), phi: Coloring::new() };
    let all: BTreeSet<Vertex> = g.vertices().collect();
    let mut rest = all.clone();
    if let Some((x, y)) = anchor {
        r.precolor_pair(x, y)?;
        let comp = component_of(&restrict(rot, &all), &all, x);
        r.step(comp.clone(), x, y)?;
        rest = &rest - &comp;
    }
    let sub = restrict(rot, &rest);
    for comp in components(&sub, &rest) {
        r.other_component(comp)?;
    }
    Ok(r.phi)
}

/// The rotation restricted to `keep`.
pub fn restrict(rot: &Rotation, keep: &BTreeSet<Vertex>) -> Rotation {
    Rotation(
        (0..rot.vertex_count())
            .map(|v| {
                if keep.contains(&v) {
                    rot.around(v).iter().copied().filter(|w| keep.contains(w)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect(),
    )
}

fn graph_of(rot: &Rotation) -> Graph {
    let mut g = Graph::new(rot.vertex_count());
    for v in 0..rot.vertex_count() {
        for &w in rot.around(v) {
            g.add_edge(v, w);
        }
    }
    g
}

fn component_of(rot: &Rotation, active: &BTreeSet<Vertex>, start: Vertex) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in rot.around(v) {
            if active.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

fn components(rot: &Rotation, active: &BTreeSet<Vertex>) -> Vec<BTreeSet<Vertex>> {
    let mut left = active.clone();
    let mut out = Vec::new();
    while let Some(&v) = left.iter().next() {
        let c = component_of(rot, active, v);
        left = &left - &c;
        out.push(c);
    }
    out
}

fn min_avoiding(list: &ColorList, avoid: &[Color]) -> Option<Color> {
    list.iter().copied().find(|c| !avoid.contains(c))
}

struct Recursion<'a> {
    rot: &'a Rotation,
    lists: ListAssignment,
    phi: Coloring,
}

impl Recursion<'_> {
    fn defect(msg: impl Into<String>) -> ThomassenError {
        ThomassenError::Defect(msg.into())
    }

    fn precolor_pair(&mut self, x: Vertex, y: Vertex) -> Result<(), ThomassenError> {
        let (first, second) = if self.lists[y].len() == 1 { (y, x) } else { (x, y) };
        let a = *self.lists[first].first().ok_or(ThomassenError::EmptyList { vertex: first })?;
        let b = min_avoiding(&self.lists[second], &[a])
            .ok_or(ThomassenError::EqualSingletons { color: a })?;
        self.phi.insert(first, a);
        self.phi.insert(second, b);
        Ok(())
    }

    fn is_low(&self, v: Vertex) -> bool {
        !self.phi.contains_key(&v) && self.lists[v].len() < 5
    }

    /// Colors a component that contains no precolored vertex.
    fn other_component(&mut self, comp: BTreeSet<Vertex>) -> Result<(), ThomassenError> {
        if comp.len() == 1 {
            let v = *comp.first().unwrap();
            let c = *self.lists[v].first().ok_or(ThomassenError::EmptyList { vertex: v })?;
            self.phi.insert(v, c);
            return Ok(());
        }
        let rot = restrict(self.rot, &comp);
        let lows: BTreeSet<Vertex> = comp.iter().copied().filter(|&v| self.is_low(v)).collect();
        let face = rot
            .faces()
            .into_iter()
            .find(|f| lows.is_subset(&f.vertex_set()))
            .ok_or_else(|| Self::defect("component without a face carrying its short lists"))?;
        let (a, b) = face.darts[0];
        let ca = *self.lists[a].first().unwrap();
        let cb = min_avoiding(&self.lists[b], &[ca]).ok_or_else(|| Self::defect("list too small"))?;
        self.phi.insert(a, ca);
        self.phi.insert(b, cb);
        self.step(comp, a, b)
    }

    /// Colors `active` given that exactly `x` and `y` (adjacent) are colored.
    fn step(&mut self, active: BTreeSet<Vertex>, x: Vertex, y: Vertex) -> Result<(), ThomassenError> {
        let rot = restrict(self.rot, &active);
        let comps = components(&rot, &active);
        let mut main = None;
        for comp in comps {
            if comp.contains(&x) {
                main = Some(comp);
            } else {
                self.other_component(comp)?;
            }
        }
        let main = main.expect("x is active");
        if main.len() == 2 {
            return Ok(());
        }
        let rot = if main.len() == active.len() { rot } else { restrict(self.rot, &main) };
        if let Some(v) = main.iter().find(|&&v| !self.phi.contains_key(&v) && self.lists[v].len() < 3) {
            return Err(Self::defect(format!("vertex {v} dropped below 3 colors")));
        }
        let g = graph_of(&rot);
        if let Some(&c) = g.cut_vertices().iter().find(|c| main.contains(c)) {
            return self.split_at_cut(&g, &main, c, x, y);
        }
        let lows: BTreeSet<Vertex> = main.iter().copied().filter(|&v| self.is_low(v)).collect();
        let faces = rot.faces();
        let fits = |f: &FaceWalk| {
            let vs = f.vertex_set();
            vs.contains(&x) && vs.contains(&y) && lows.is_subset(&vs)
        };
        let face = faces
            .iter()
            .find(|f| fits(f) && f.contains_edge(x, y))
            .or_else(|| faces.iter().find(|f| fits(f)))
            .ok_or_else(|| Self::defect("no face carries the precolored pair and short lists"))?;
        let cycle = face.vertices();
        let k = cycle.len();
        let pos = |v: Vertex| cycle.iter().position(|&w| w == v).unwrap();
        let (px, py) = (pos(x), pos(y));
        let consecutive = |i: usize, j: usize| (i + 1) % k == j || (j + 1) % k == i;
        if !consecutive(px, py) {
            return self.split_at_chord(&g, &main, &cycle, x, y, x, y);
        }
        // walk the cycle from y away from x
        let dir = if (px + 1) % k == py { 1 } else { k - 1 };
        let walk: Vec<Vertex> = (0..k).map(|i| cycle[(py + i * dir) % k]).collect();
        let on_cycle: BTreeSet<Vertex> = cycle.iter().copied().collect();
        let mut chord = None;
        'outer: for (i, &a) in walk.iter().enumerate() {
            for (j, &b) in walk.iter().enumerate().skip(i + 2) {
                if !(i == 0 && j == k - 1) && g.has_edge(a, b) {
                    chord = Some((a, b));
                    break 'outer;
                }
            }
        }
        if let Some((a, b)) = chord {
            return self.split_at_chord(&g, &main, &cycle, a, b, x, y);
        }
        let v = walk[1];
        let w = walk[2];
        let fy = self.phi[&y];
        let reserved: Vec<Color> = self.lists[v].iter().copied().filter(|&c| c != fy).take(2).collect();
        if reserved.len() < 2 {
            return Err(Self::defect(format!("vertex {v} has fewer than two spare colors")));
        }
        for u in g.neighbors(v) {
            if u != y && u != w {
                if on_cycle.contains(&u) {
                    return Err(Self::defect("unexpected chord at removed vertex"));
                }
                for c in &reserved {
                    self.lists[u].remove(c);
                }
            }
        }
        let mut rest = main.clone();
        rest.remove(&v);
        self.step(rest, x, y)?;
        let fw = self.phi[&w];
        let c = if reserved[0] != fw { reserved[0] } else { reserved[1] };
        self.phi.insert(v, c);
        Ok(())
    }

    fn split_at_cut(
        &mut self,
        g: &Graph,
        main: &BTreeSet<Vertex>,
        c: Vertex,
        x: Vertex,
        y: Vertex,
    ) -> Result<(), ThomassenError> {
        let removed: BTreeSet<Vertex> =
            g.vertices().filter(|v| !main.contains(v) || *v == c).collect();
        let parts = g.components_avoiding(&removed);
        let mut first: BTreeSet<Vertex> = BTreeSet::from([c]);
        let mut later = Vec::new();
        for p in parts {
            if p.contains(&x) || p.contains(&y) {
                first.extend(p);
            } else {
                later.push(p);
            }
        }
        self.step(first, x, y)?;
        let fc = self.phi[&c];
        for p in later {
            let mut side: BTreeSet<Vertex> = p.iter().copied().collect();
            let lows: BTreeSet<Vertex> = side.iter().copied().filter(|&v| self.is_low(v)).collect();
            side.insert(c);
            let rot = restrict(self.rot, &side);
            let face = rot
                .faces()
                .into_iter()
                .find(|f| f.vertex_set().contains(&c) && lows.is_subset(&f.vertex_set()))
                .ok_or_else(|| Self::defect("block without a face through its cut vertex"))?;
            let &(_, w) = face.darts.iter().find(|&&(a, _)| a == c).unwrap();
            let cw = min_avoiding(&self.lists[w], &[fc])
                .ok_or_else(|| Self::defect(format!("vertex {w} has no color besides its cut vertex's")))?;
            self.phi.insert(w, cw);
            self.step(side, c, w)?;
        }
        Ok(())
    }

    /// Splits along chord `ab` of the outer cycle. The side holding the
    /// precolored pair is colored first; the other side then has `a`, `b`
    /// precolored. When `ab` is the pair itself both sides keep it.
    #[allow(clippy::too_many_arguments)]
    fn split_at_chord(
        &mut self,
        g: &Graph,
        main: &BTreeSet<Vertex>,
        cycle: &[Vertex],
        a: Vertex,
        b: Vertex,
        x: Vertex,
        y: Vertex,
    ) -> Result<(), ThomassenError> {
        let k = cycle.len();
        let pa = cycle.iter().position(|&v| v == a).unwrap();
        let pb = cycle.iter().position(|&v| v == b).unwrap();
        let arc_from = |s: usize, t: usize| -> BTreeSet<Vertex> {
            let mut out = BTreeSet::new();
            let mut i = (s + 1) % k;
            while i != t {
                out.insert(cycle[i]);
                i = (i + 1) % k;
            }
            out
        };
        let arc1 = arc_from(pa, pb);
        let anchor_side = [x, y].into_iter().find(|v| *v != a && *v != b);
        let arc = match anchor_side {
            Some(v) if !arc1.contains(&v) => arc_from(pb, pa),
            _ => arc1,
        };
        let removed: BTreeSet<Vertex> =
            g.vertices().filter(|v| !main.contains(v) || *v == a || *v == b).collect();
        let mut side1 = BTreeSet::from([a, b]);
        let mut side2 = BTreeSet::from([a, b]);
        for p in g.components_avoiding(&removed) {
            if p.iter().any(|v| arc.contains(v)) {
                side1.extend(p);
            } else {
                side2.extend(p);
            }
        }
        self.step(side1, x, y)?;
        self.step(side2, a, b)
    }
}
