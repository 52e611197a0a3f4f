//! Cycles of the planarization and the two regions they bound.

use std::collections::{BTreeSet, VecDeque};

use crate::drawing::{edge, Edge, PlaneGraph};
use crate::graph::Vertex;

/// The two sides of a cycle in a plane graph. Side A is the region entered
/// by turning from the outgoing cycle edge through the rotation towards the
/// incoming one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSides {
    pub cycle: Vec<Vertex>,
    /// planarization vertices strictly inside each region
    pub side: [BTreeSet<Vertex>; 2],
    /// planarization edges joining two non-consecutive cycle vertices
    pub chords: [Vec<Edge>; 2],
}

impl CycleSides {
    /// Original vertices strictly inside region `k`.
    pub fn originals(&self, plane: &PlaneGraph, k: usize) -> BTreeSet<Vertex> {
        self.side[k].iter().copied().filter(|&v| !plane.is_dummy(v)).collect()
    }

    pub fn dummies(&self, plane: &PlaneGraph, k: usize) -> BTreeSet<Vertex> {
        self.side[k].iter().copied().filter(|&v| plane.is_dummy(v)).collect()
    }

    /// Which region an original edge is drawn in, or `None` for cycle edges.
    pub fn edge_region(&self, plane: &PlaneGraph, u: Vertex, v: Vertex) -> Option<usize> {
        let path = plane.strand(u, v).expect("original edge");
        for k in 0..2 {
            if path.iter().any(|x| self.side[k].contains(x)) {
                return Some(k);
            }
        }
        let e = edge(u, v);
        (0..2).find(|&k| self.chords[k].contains(&e))
    }

    /// Original edges with both ends on the cycle but drawn in region `k`.
    pub fn cycle_edges_in(&self, plane: &PlaneGraph, k: usize) -> BTreeSet<Edge> {
        let on: BTreeSet<Vertex> = self.cycle.iter().copied().collect();
        let mut out = BTreeSet::new();
        for &u in &self.cycle {
            if plane.is_dummy(u) {
                continue;
            }
            for &w in plane.rotation.around(u) {
                let path = plane.trace(u, w);
                let v = *path.last().unwrap();
                if u < v && on.contains(&v) && self.edge_region(plane, u, v) == Some(k) {
                    out.insert((u, v));
                }
            }
        }
        out
    }
}

/// Splits the plane graph along `cycle`, whose consecutive vertices must be
/// adjacent. Returns `None` if some consecutive pair is not an edge.
pub fn cycle_sides(plane: &PlaneGraph, cycle: &[Vertex]) -> Option<CycleSides> {
    let m = cycle.len();
    let on: BTreeSet<Vertex> = cycle.iter().copied().collect();
    if m < 3 || on.len() != m {
        return None;
    }
    let mut seeds = [Vec::new(), Vec::new()];
    let mut chords = [Vec::new(), Vec::new()];
    for i in 0..m {
        let c = cycle[i];
        let next = cycle[(i + 1) % m];
        let prev = cycle[(i + m - 1) % m];
        if !plane.graph.has_edge(c, next) {
            return None;
        }
        for (k, (from, to)) in [(next, prev), (prev, next)].into_iter().enumerate() {
            let mut w = plane.rotation.succ(c, from);
            while w != to {
                if on.contains(&w) {
                    let e = edge(c, w);
                    if !chords[k].contains(&e) {
                        chords[k].push(e);
                    }
                } else {
                    seeds[k].push(w);
                }
                w = plane.rotation.succ(c, w);
            }
        }
    }
    let mut side = [BTreeSet::new(), BTreeSet::new()];
    for k in 0..2 {
        let mut queue: VecDeque<Vertex> = seeds[k].iter().copied().collect();
        side[k].extend(seeds[k].iter().copied());
        while let Some(v) = queue.pop_front() {
            for w in plane.graph.neighbors(v) {
                if !on.contains(&w) && side[k].insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    debug_assert!(side[0].is_disjoint(&side[1]));
    for c in &mut chords {
        c.sort();
    }
    Some(CycleSides { cycle: cycle.to_vec(), side, chords })
}

/// Triangles `[a, b, c]` (a < b < c) of originals joined by uncrossed edges.
pub fn uncrossed_triangles(plane: &PlaneGraph) -> Vec<[Vertex; 3]> {
    let n = plane.original_count;
    let adj = |u: Vertex, v: Vertex| plane.graph.has_edge(u, v);
    let mut out = Vec::new();
    for a in 0..n {
        for b in plane.graph.neighbors(a).filter(|&b| b > a && b < n) {
            for c in plane.graph.neighbors(b).filter(|&c| c > b && c < n) {
                if adj(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// 4-cycles of originals joined by uncrossed edges, each listed once as
/// `[a, b, c, d]` with `a` smallest and `b < d`.
pub fn uncrossed_quads(plane: &PlaneGraph) -> Vec<[Vertex; 4]> {
    let n = plane.original_count;
    let mut out = Vec::new();
    for a in 0..n {
        let up: Vec<Vertex> = plane.graph.neighbors(a).filter(|&x| x > a && x < n).collect();
        for &b in &up {
            for &d in up.iter().filter(|&&d| d > b) {
                for c in plane.graph.neighbors(b).filter(|&c| c > a && c < n && c != d) {
                    if plane.graph.has_edge(c, d) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}
