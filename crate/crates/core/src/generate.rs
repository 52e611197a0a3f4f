//! Random instances: plane triangulations with injected crossings and random
//! lists.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{CrossingPair, PlaneGraph};
use crate::graph::{Graph, Vertex};
use crate::instance::{Color, Instance, ListAssignment};
use crate::planarity::Rotation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub crossings: usize,
    pub seed: u64,
    pub palette: usize,
    pub list_size: usize,
}

impl GenSpec {
    pub fn new(n: usize, crossings: usize, seed: u64) -> Self {
        GenSpec { n, crossings, seed, palette: 15, list_size: 5 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("n = {0} is too small; need at least 3 vertices")]
    TooFewVertices(usize),
    #[error("n = {n} is too small to host {crossings} crossings")]
    NoRoomForCrossings { n: usize, crossings: usize },
    #[error("at most 2 crossings can be generated, got {0}")]
    TooManyCrossings(usize),
    #[error("palette of {palette} colors cannot supply lists of size {list_size}")]
    PaletteTooSmall { palette: usize, list_size: usize },
}

/// A random plane triangulation on `n >= 3` vertices: repeated face splits
/// followed by `2n` random edge flips.
pub fn random_triangulation(n: usize, rng: &mut impl Rng) -> Rotation {
    assert!(n >= 3);
    let mut rot = Rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]]);
    for z in 3..n {
        let faces = rot.faces();
        let f = &faces[rng.gen_range(0..faces.len())];
        let [(a, b), (_, c), _] = [f.darts[0], f.darts[1], f.darts[2]];
        rot.0.push(vec![b, a, c]);
        rot.insert_after(b, a, z);
        rot.insert_after(c, b, z);
        rot.insert_after(a, c, z);
    }
    if n >= 5 {
        for _ in 0..2 * n {
            let u = rng.gen_range(0..n);
            let v = *rot.around(u).choose(rng).unwrap();
            flip(&mut rot, u, v);
        }
    }
    rot
}

/// Flips edge `uv` of a triangulation if the result stays simple.
fn flip(rot: &mut Rotation, u: Vertex, v: Vertex) -> bool {
    let w = rot.succ(v, u);
    let z = rot.succ(u, v);
    if w == z || rot.around(w).contains(&z) || rot.around(u).len() <= 3 || rot.around(v).len() <= 3 {
        return false;
    }
    rot.remove(u, v);
    rot.remove(v, u);
    rot.insert_before(w, u, z);
    rot.insert_after(z, u, w);
    true
}

/// Replaces a random uncrossed edge `uv` between two triangular faces `uvw`,
/// `vuz` by a dummy vertex so that the new edge `wz` crosses `uv`.
fn inject_crossing(
    rot: &mut Rotation,
    original: usize,
    edges: &mut BTreeSet<(Vertex, Vertex)>,
    rng: &mut impl Rng,
) -> Option<CrossingPair> {
    let mut candidates = Vec::new();
    for u in 0..original {
        for &v in rot.around(u) {
            if v >= original || u > v {
                continue;
            }
            let w = rot.succ(v, u);
            let z = rot.succ(u, v);
            let tri = |a: Vertex, b: Vertex, c: Vertex| rot.succ(b, a) == c && rot.succ(c, b) == a;
            if w < original
                && z < original
                && w != z
                && tri(u, v, w)
                && tri(v, u, z)
                && !edges.contains(&(w.min(z), w.max(z)))
            {
                candidates.push((u, v, w, z));
            }
        }
    }
    let &(u, v, w, z) = candidates.choose(rng)?;
    let d = rot.vertex_count();
    rot.replace(u, v, d);
    rot.replace(v, u, d);
    rot.insert_before(w, u, d);
    rot.insert_after(z, u, d);
    rot.0.push(vec![u, w, v, z]);
    edges.insert((w.min(z), w.max(z)));
    Some(CrossingPair::new((u, v), (w, z)))
}

/// Flips edges in the links of low-degree vertices until every vertex has
/// degree at least 5 or `rounds` passes make no progress. Plane
/// triangulations with minimum degree 5 exist for n = 12 and n >= 14.
pub fn raise_min_degree(rot: &mut Rotation, rng: &mut impl Rng, rounds: usize) -> bool {
    let n = rot.vertex_count();
    for _ in 0..rounds {
        let mut low: Vec<Vertex> = (0..n).filter(|&v| rot.around(v).len() < 5).collect();
        if low.is_empty() {
            return true;
        }
        low.shuffle(rng);
        let mut moved = false;
        for v in low {
            let link: Vec<Vertex> = rot.around(v).to_vec();
            let mut pairs: Vec<(Vertex, Vertex)> =
                link.iter().map(|&a| (a, rot.succ(v, a))).collect();
            pairs.sort_by_key(|&(a, b)| std::cmp::Reverse(rot.around(a).len().min(rot.around(b).len())));
            for (a, b) in pairs {
                if rot.around(a).len().min(rot.around(b).len()) <= 5 && rng.gen_bool(0.7) {
                    continue;
                }
                if flip(rot, a, b) {
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            // shake the triangulation a little and retry
            for _ in 0..n {
                let u = rng.gen_range(0..n);
                let w = *rot.around(u).choose(rng).unwrap();
                flip(rot, u, w);
            }
        }
    }
    (0..n).all(|v| rot.around(v).len() >= 5)
}

/// Like [`gen_random_instance`] but starting from a triangulation of minimum
/// degree 5, so that deleting low-degree vertices does not apply. Needs
/// `n >= 12`, `n != 13`.
pub fn gen_min_degree5_instance(spec: &GenSpec) -> Result<Instance, GenError> {
    if spec.n < 12 || spec.n == 13 {
        return Err(GenError::TooFewVertices(spec.n));
    }
    if spec.crossings > 2 {
        return Err(GenError::TooManyCrossings(spec.crossings));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rot = random_triangulation(spec.n, &mut rng);
    while !raise_min_degree(&mut rot, &mut rng, 200) {
        rot = random_triangulation(spec.n, &mut rng);
    }
    finish(spec, rot, &mut rng)
}

fn finish(spec: &GenSpec, mut rot: Rotation, rng: &mut ChaCha8Rng) -> Result<Instance, GenError> {
    let mut edges: BTreeSet<(Vertex, Vertex)> = (0..spec.n)
        .flat_map(|u| rot.around(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    for _ in 0..spec.crossings {
        inject_crossing(&mut rot, spec.n, &mut edges, rng)
            .ok_or(GenError::NoRoomForCrossings { n: spec.n, crossings: spec.crossings })?;
    }
    let kind: Vec<Option<bool>> = (0..rot.vertex_count()).map(|v| Some(v >= spec.n)).collect();
    let (plane, _) = PlaneGraph::from_parts(&rot.0, &kind);
    debug_assert!(plane.is_valid());
    let drawing = plane.to_drawing();
    let lists = random_lists(spec.n, spec.palette, spec.list_size, rng);
    Ok(Instance::new(drawing, lists, None))
}

pub fn random_lists(n: usize, palette: usize, size: usize, rng: &mut impl Rng) -> ListAssignment {
    let colors: Vec<Color> = (1..=palette as Color).collect();
    (0..n).map(|_| colors.choose_multiple(rng, size).copied().collect()).collect()
}

/// Generates a drawing with exactly `spec.crossings` crossings and random
/// lists. The drawing carries the rotation it was built with.
pub fn gen_random_instance(spec: &GenSpec) -> Result<Instance, GenError> {
    if spec.n < 3 {
        return Err(GenError::TooFewVertices(spec.n));
    }
    if spec.crossings > 2 {
        return Err(GenError::TooManyCrossings(spec.crossings));
    }
    if spec.palette < spec.list_size {
        return Err(GenError::PaletteTooSmall { palette: spec.palette, list_size: spec.list_size });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let rot = random_triangulation(spec.n, &mut rng);
    finish(spec, rot, &mut rng)
}

/// A triangulation with one vertex removed, so the outer face is the removed
/// vertex's link. Returns the graph, its rotation and the outer face's
/// vertices in walk order.
pub fn random_near_triangulation(n: usize, rng: &mut impl Rng) -> (Graph, Rotation, Vec<Vertex>) {
    let rot = random_triangulation(n + 1, rng);
    let r = rng.gen_range(0..=n);
    let map = |v: Vertex| if v > r { v - 1 } else { v };
    let mut out = Vec::with_capacity(n);
    for v in 0..=n {
        if v != r {
            out.push(rot.around(v).iter().filter(|&&w| w != r).map(|&w| map(w)).collect::<Vec<_>>());
        }
    }
    let rotation = Rotation(out);
    let mut g = Graph::new(n);
    for (v, nb) in rotation.0.iter().enumerate() {
        for &w in nb {
            g.add_edge(v, w);
        }
    }
    let link: BTreeSet<Vertex> = rot.around(r).iter().map(|&w| map(w)).collect();
    let face = rotation
        .faces()
        .into_iter()
        .find(|f| f.vertex_set() == link && f.len() == link.len())
        .expect("link of the removed vertex bounds a face");
    (g, rotation, face.vertices())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{emit_instance, parse_instance, Mode};

    #[test]
    fn triangulations_are_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 3..30 {
            let rot = random_triangulation(n, &mut rng);
            let mut g = Graph::new(n);
            for v in 0..n {
                for &w in rot.around(v) {
                    g.add_edge(v, w);
                }
            }
            assert_eq!(g.edge_count(), 3 * n - 6);
            assert!(rot.is_plane(&g));
            assert!(rot.faces().iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn generated_instances_are_valid() {
        for (n, k, seed) in [(10, 0, 1), (10, 2, 7), (6, 1, 3), (30, 2, 99)] {
            let inst = gen_random_instance(&GenSpec::new(n, k, seed)).unwrap();
            assert_eq!(inst.crossing_count(), k);
            assert_eq!(inst.mode().unwrap(), Mode::TwoCrossings);
            let plane = inst.plane().unwrap();
            assert_eq!(plane.dummy_vertices().len(), k);
            let back = parse_instance(&emit_instance(&inst)).unwrap();
            assert_eq!(back.drawing.graph, inst.drawing.graph);
            assert_eq!(back.lists, inst.lists);
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = gen_random_instance(&GenSpec::new(12, 2, 42)).unwrap();
        let b = gen_random_instance(&GenSpec::new(12, 2, 42)).unwrap();
        assert_eq!(emit_instance(&a), emit_instance(&b));
    }

    #[test]
    fn tiny_requests_fail() {
        assert_eq!(gen_random_instance(&GenSpec::new(2, 0, 0)).unwrap_err(), GenError::TooFewVertices(2));
        assert!(matches!(
            gen_random_instance(&GenSpec::new(4, 1, 0)),
            Err(GenError::NoRoomForCrossings { .. })
        ));
    }

    #[test]
    fn min_degree_five() {
        for (n, seed) in [(12, 1), (14, 2), (20, 3), (35, 4)] {
            let inst = gen_min_degree5_instance(&GenSpec::new(n, 2, seed)).unwrap();
            let g = inst.graph();
            assert!(g.vertices().all(|v| g.degree(v) >= 5), "n = {n}");
            assert_eq!(inst.crossing_count(), 2);
        }
    }

    #[test]
    fn near_triangulation_face() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (g, rot, outer) = random_near_triangulation(15, &mut rng);
        assert!(rot.is_plane(&g));
        assert!(outer.len() >= 3);
    }
}
