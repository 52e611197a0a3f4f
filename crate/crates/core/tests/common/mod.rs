#![allow(dead_code)]

pub mod endgame_fixtures;

use std::collections::{BTreeMap, BTreeSet};

use listcolor::drawing::{CrossingPair, Drawing};
use listcolor::generate::{random_lists, random_near_triangulation};
use listcolor::graph::{Graph, Vertex};
use listcolor::instance::{Color, ColorList, Instance, ListAssignment};
use listcolor::planarity::{FaceWalk, Rotation};
use listcolor::thomassen::BoundaryTask;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A straight-line drawing: every proper intersection of two edges becomes a
/// crossing, and the rotation at each vertex and crossing point is the
/// counterclockwise order of its segments.
pub fn straight_line(coords: &[(f64, f64)], edges: &[(Vertex, Vertex)]) -> Drawing {
    let n = coords.len();
    let graph = Graph::from_edges(n, edges).unwrap();
    let edges = graph.edges();
    let mut crossings = Vec::new();
    let mut points: Vec<(f64, f64)> = coords.to_vec();
    // dummies along each edge, keyed by position from the smaller endpoint
    let mut along: BTreeMap<(Vertex, Vertex), Vec<(f64, Vertex)>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                continue;
            }
            if let Some((s, t, p)) = intersect(coords[e.0], coords[e.1], coords[f.0], coords[f.1]) {
                let d = n + crossings.len();
                crossings.push(CrossingPair::new(e, f));
                points.push(p);
                along.entry(e).or_default().push((s, d));
                along.entry(f).or_default().push((t, d));
            }
        }
    }
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); points.len()];
    for &e in &edges {
        let mut chain = vec![e.0];
        if let Some(ds) = along.get_mut(&e) {
            ds.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            chain.extend(ds.iter().map(|&(_, d)| d));
        }
        chain.push(e.1);
        for w in chain.windows(2) {
            adj[w[0]].push(w[1]);
            adj[w[1]].push(w[0]);
        }
    }
    for (v, nbrs) in adj.iter_mut().enumerate() {
        let (x, y) = points[v];
        nbrs.sort_by(|&a, &b| {
            let fa = (points[a].1 - y).atan2(points[a].0 - x);
            let fb = (points[b].1 - y).atan2(points[b].0 - x);
            fa.partial_cmp(&fb).unwrap()
        });
    }
    let d = Drawing { graph, crossings, rotation: Some(Rotation(adj)) };
    d.planarize().expect("straight-line drawing planarizes");
    d
}

fn intersect(
    a: (f64, f64),
    b: (f64, f64),
    c: (f64, f64),
    d: (f64, f64),
) -> Option<(f64, f64, (f64, f64))> {
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let den = r.0 * s.1 - r.1 * s.0;
    if den.abs() < 1e-12 {
        return None;
    }
    let q = (c.0 - a.0, c.1 - a.1);
    let t = (q.0 * s.1 - q.1 * s.0) / den;
    let u = (q.0 * r.1 - q.1 * r.0) / den;
    let eps = 1e-9;
    (t > eps && t < 1.0 - eps && u > eps && u < 1.0 - eps).then_some((t, u, (a.0 + t * r.0, a.1 + t * r.1)))
}

pub fn lists(raw: &[&[Color]]) -> ListAssignment {
    raw.iter().map(|l| l.iter().copied().collect()).collect()
}

pub fn uniform(n: usize, size: Color) -> ListAssignment {
    vec![(1..=size).collect::<ColorList>(); n]
}

/// K3,4 with parts {0,1,2} and {3,4,5,6} drawn with two crossings.
pub fn k34() -> Drawing {
    let mut g = Graph::new(7);
    for a in 0..3 {
        for b in 3..7 {
            g.add_edge(a, b);
        }
    }
    Drawing::new(g, vec![CrossingPair::new((0, 3), (1, 4)), CrossingPair::new((0, 5), (2, 6))]).unwrap()
}

/// Disjoint union of `a` and `b` with `b`'s vertex `pairs[i].0` identified
/// with `a`'s vertex `pairs[i].1`. The embedding is left for planarization
/// to find. Returns the instance and the new id of each vertex of `b`.
pub fn glue(a: &Instance, b: &Instance, pairs: &[(Vertex, Vertex)]) -> (Instance, Vec<Vertex>) {
    let na = a.vertex_count();
    let mut map = vec![usize::MAX; b.vertex_count()];
    for &(vb, va) in pairs {
        map[vb] = va;
    }
    let mut next = na;
    for m in map.iter_mut().filter(|m| **m == usize::MAX) {
        *m = next;
        next += 1;
    }
    let mut g = Graph::new(next);
    for (u, v) in a.graph().edges() {
        g.add_edge(u, v);
    }
    for (u, v) in b.graph().edges() {
        g.add_edge(map[u], map[v]);
    }
    let mut crossings = a.drawing.crossings.clone();
    for c in &b.drawing.crossings {
        crossings.push(CrossingPair::new((map[c.a.0], map[c.a.1]), (map[c.b.0], map[c.b.1])));
    }
    let mut lists = a.lists.clone();
    lists.resize(next, ColorList::new());
    for v in 0..b.vertex_count() {
        if map[v] >= na {
            lists[map[v]] = b.lists[v].clone();
        }
    }
    let d = Drawing::new(g, crossings).unwrap();
    (Instance::new(d, lists, a.triangle), map)
}

/// `inst` with the rotation of its planarization pinned.
pub fn pinned(inst: &Instance) -> Instance {
    let mut out = inst.clone();
    out.drawing.rotation = Some(inst.plane().unwrap().rotation);
    out
}

/// Faces of the planarization made of three original vertices.
pub fn facial_triangles(inst: &Instance) -> Vec<[Vertex; 3]> {
    let p = inst.plane().unwrap();
    p.faces()
        .into_iter()
        .filter(|f| f.len() == 3 && f.vertices().iter().all(|&v| v < p.original_count))
        .map(|f| {
            let v = f.vertices();
            [v[0], v[1], v[2]]
        })
        .collect()
}

/// `inst` without edge `uv`, embedding left free.
pub fn without_edge(inst: &Instance, u: Vertex, v: Vertex) -> Instance {
    let mut g = inst.graph().clone();
    g.remove_edge(u, v);
    let d = Drawing::new(g, inst.drawing.crossings.clone()).unwrap();
    Instance::new(d, inst.lists.clone(), inst.triangle)
}

/// Near-triangulation task with 5-lists inside, 3-lists on the outer face
/// and distinct singletons on one outer edge.
pub fn random_task(n: usize, rng: &mut ChaCha8Rng) -> BoundaryTask {
    let (graph, rotation, outer) = random_near_triangulation(n, rng);
    let face: FaceWalk = rotation
        .faces()
        .into_iter()
        .find(|f| f.vertices() == outer)
        .unwrap();
    let (x, y) = face.darts[rng.gen_range(0..face.darts.len())];
    let palette: Vec<Color> = (1..=8).collect();
    let on_face: BTreeSet<Vertex> = outer.iter().copied().collect();
    let mut lists: ListAssignment = random_lists(n, 8, 5, rng);
    for &v in &on_face {
        lists[v] = palette.choose_multiple(rng, 3).copied().collect();
    }
    let a = *palette.choose(rng).unwrap();
    let b = *palette.iter().filter(|&&c| c != a).collect::<Vec<_>>().choose(rng).unwrap();
    lists[x] = ColorList::from([a]);
    lists[y] = ColorList::from([*b]);
    BoundaryTask { graph, rotation, face, x, y, lists }
}
