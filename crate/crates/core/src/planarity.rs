//! Rotation systems, face tracing, and a quadratic planarity test that
//! returns either an embedding or a Kuratowski subdivision.
//!
//! The embedding is built per biconnected block by path addition: start from a
//! cycle, then repeatedly pick a fragment (bridge) of the part not yet
//! embedded, find a face holding all of its attachment vertices, and route a
//! path of the fragment through that face. A fragment with no admissible face
//! proves the block non-planar. Block embeddings are glued at cut vertices by
//! concatenating their rotations.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

/// Cyclic order of neighbors around each vertex.
///
/// Faces are traced with the rule: the dart after `u -> v` is `v -> w` where
/// `w` follows `u` in the rotation at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Rotation(pub Vec<Vec<Vertex>>);

/// A closed walk bounding one face, as its sequence of darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<(Vertex, Vertex)>,
}

impl FaceWalk {
    /// Vertex sequence of the walk (tail of each dart).
    pub fn vertices(&self) -> Vec<Vertex> {
        self.darts.iter().map(|&(u, _)| u).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.darts.iter().map(|&(u, _)| u).collect()
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn contains_dart(&self, u: Vertex, v: Vertex) -> bool {
        self.darts.contains(&(u, v))
    }

    /// Whether the undirected edge `uv` is traversed by this walk.
    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.darts.iter().any(|&d| d == (u, v) || d == (v, u))
    }
}

impl Rotation {
    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    pub fn around(&self, v: Vertex) -> &[Vertex] {
        &self.0[v]
    }

    fn position(&self, v: Vertex, u: Vertex) -> Option<usize> {
        self.0[v].iter().position(|&w| w == u)
    }

    /// The neighbor after `u` in the rotation at `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = &self.0[v];
        let i = self.position(v, u).unwrap_or_else(|| panic!("{u} not around {v}"));
        rot[(i + 1) % rot.len()]
    }

    /// The neighbor before `u` in the rotation at `v`.
    pub fn pred(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = &self.0[v];
        let i = self.position(v, u).unwrap_or_else(|| panic!("{u} not around {v}"));
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// Inserts `w` into the rotation at `v` immediately before `anchor`.
    pub fn insert_before(&mut self, v: Vertex, anchor: Vertex, w: Vertex) {
        let i = self.position(v, anchor).unwrap_or_else(|| panic!("{anchor} not around {v}"));
        self.0[v].insert(i, w);
    }

    /// Inserts `w` into the rotation at `v` immediately after `anchor`.
    pub fn insert_after(&mut self, v: Vertex, anchor: Vertex, w: Vertex) {
        let i = self.position(v, anchor).unwrap_or_else(|| panic!("{anchor} not around {v}"));
        self.0[v].insert(i + 1, w);
    }

    pub fn remove(&mut self, v: Vertex, w: Vertex) {
        self.0[v].retain(|&x| x != w);
    }

    pub fn replace(&mut self, v: Vertex, old: Vertex, new: Vertex) {
        for x in &mut self.0[v] {
            if *x == old {
                *x = new;
            }
        }
    }

    /// Whether the rotation lists exactly the neighbors of `g`.
    pub fn matches(&self, g: &Graph) -> bool {
        self.0.len() == g.vertex_count()
            && g.vertices().all(|v| {
                let set: BTreeSet<Vertex> = self.0[v].iter().copied().collect();
                set.len() == self.0[v].len() && &set == g.neighbor_set(v)
            })
    }

    /// All face walks. Every dart lies on exactly one walk.
    pub fn faces(&self) -> Vec<FaceWalk> {
        let n = self.0.len();
        let mut visited: Vec<Vec<bool>> = self.0.iter().map(|r| vec![false; r.len()]).collect();
        let mut out = Vec::new();
        for u in 0..n {
            for i in 0..self.0[u].len() {
                if visited[u][i] {
                    continue;
                }
                let mut darts = Vec::new();
                let (mut a, mut b) = (u, self.0[u][i]);
                loop {
                    let ia = self.position(a, b).expect("dart");
                    if visited[a][ia] {
                        break;
                    }
                    visited[a][ia] = true;
                    darts.push((a, b));
                    let c = self.succ(b, a);
                    a = b;
                    b = c;
                }
                out.push(FaceWalk { darts });
            }
        }
        out
    }

    /// Euler's relation `V - E + F = 2` on every connected component with at
    /// least one edge. This certifies that the rotation is a plane embedding.
    pub fn is_plane(&self, g: &Graph) -> bool {
        if !self.matches(g) {
            return false;
        }
        let faces = self.faces();
        let comps = g.components();
        let mut comp_of = vec![0; g.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut face_count = vec![0i64; comps.len()];
        for f in &faces {
            face_count[comp_of[f.darts[0].0]] += 1;
        }
        comps.iter().enumerate().all(|(i, c)| {
            let v = c.len() as i64;
            let e = c.iter().map(|&x| g.degree(x)).sum::<usize>() as i64 / 2;
            e == 0 || v - e + face_count[i] == 2
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subgraph that is a subdivision of K5 or K3,3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonplanarWitness {
    pub kind: KuratowskiKind,
    pub edges: Vec<(Vertex, Vertex)>,
    pub branch_vertices: Vec<Vertex>,
}

impl NonplanarWitness {
    /// Checks that the witness is a subgraph of `g` and a subdivision of its
    /// claimed Kuratowski graph.
    pub fn verify(&self, g: &Graph) -> bool {
        if !self.edges.iter().all(|&(u, v)| g.has_edge(u, v)) {
            return false;
        }
        let mut h = Graph::new(g.vertex_count());
        for &(u, v) in &self.edges {
            if !h.add_edge(u, v) {
                return false;
            }
        }
        let branch: BTreeSet<Vertex> =
            h.vertices().filter(|&v| h.degree(v) >= 3).collect();
        if branch != self.branch_vertices.iter().copied().collect() {
            return false;
        }
        if h.vertices().any(|v| h.degree(v) == 1) {
            return false;
        }
        // Follow every thread from a branch vertex to the next branch vertex.
        let mut links: Vec<(Vertex, Vertex)> = Vec::new();
        for &b in &branch {
            for first in h.neighbors(b) {
                let (mut prev, mut cur) = (b, first);
                while !branch.contains(&cur) {
                    let next = h.neighbors(cur).find(|&w| w != prev);
                    match next {
                        Some(w) => {
                            prev = cur;
                            cur = w;
                        }
                        None => return false,
                    }
                }
                if cur == b {
                    return false;
                }
                links.push((b.min(cur), b.max(cur)));
            }
        }
        links.sort_unstable();
        let before = links.len();
        links.dedup();
        if links.len() * 2 != before {
            return false; // two threads between the same branch pair
        }
        let bv: Vec<Vertex> = branch.iter().copied().collect();
        match self.kind {
            KuratowskiKind::K5 => {
                bv.len() == 5
                    && links.len() == 10
                    && bv.iter().all(|&b| h.degree(b) == 4)
            }
            KuratowskiKind::K33 => {
                if bv.len() != 6 || links.len() != 9 || bv.iter().any(|&b| h.degree(b) != 3) {
                    return false;
                }
                // bipartite with sides of size 3 on the branch graph
                let mut side = vec![None; g.vertex_count()];
                side[bv[0]] = Some(0);
                let mut queue = VecDeque::from([bv[0]]);
                while let Some(u) = queue.pop_front() {
                    for &(a, b) in &links {
                        let other = if a == u { b } else if b == u { a } else { continue };
                        match side[other] {
                            None => {
                                side[other] = Some(1 - side[u].unwrap());
                                queue.push_back(other);
                            }
                            Some(s) if s == side[u].unwrap() => return false,
                            _ => {}
                        }
                    }
                }
                bv.iter().filter(|&&b| side[b] == Some(0)).count() == 3
            }
        }
    }
}

/// Result of a planarity test.
#[derive(Debug, Clone)]
pub enum Embedding {
    Planar(Rotation),
    Nonplanar(NonplanarWitness),
}

pub fn is_planar(g: &Graph) -> bool {
    embed(g).is_ok()
}

/// Computes a plane rotation system for `g`, or a Kuratowski witness.
pub fn compute_embedding(g: &Graph) -> Embedding {
    match embed(g) {
        Ok(rot) => Embedding::Planar(rot),
        Err(block_edges) => Embedding::Nonplanar(kuratowski_witness(g, block_edges)),
    }
}

/// Embeds `g` or returns the edge set of a non-planar block.
fn embed(g: &Graph) -> Result<Rotation, Vec<(Vertex, Vertex)>> {
    let n = g.vertex_count();
    let mut rotation = vec![Vec::new(); n];
    for block in biconnected_blocks(g) {
        let block_rot = if block.len() == 1 {
            let (u, v) = block[0];
            vec![(u, vec![v]), (v, vec![u])]
        } else {
            embed_block(&block).ok_or_else(|| block.clone())?
        };
        for (v, seq) in block_rot {
            rotation[v].extend(seq);
        }
    }
    Ok(Rotation(rotation))
}

/// Edge sets of the biconnected blocks (bridges are single-edge blocks).
pub fn biconnected_blocks(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack: Vec<(Vertex, Vertex, Vec<Vertex>, usize)> =
            vec![(root, usize::MAX, g.neighbors(root).collect(), 0)];
        while let Some(top) = stack.last_mut() {
            let (u, parent) = (top.0, top.1);
            if top.3 < top.2.len() {
                let w = top.2[top.3];
                top.3 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, u, g.neighbors(w).collect(), 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = stack.last() {
                    let p = p.0;
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (p, u) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Path-addition embedding of one biconnected block with at least two edges.
/// Returns the rotation at each block vertex.
fn embed_block(edges: &[(Vertex, Vertex)]) -> Option<Vec<(Vertex, Vec<Vertex>)>> {
    let mut verts: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |v: Vertex| verts.binary_search(&v).unwrap();
    let mut h = Graph::new(verts.len());
    for &(u, v) in edges {
        h.add_edge(local(u), local(v));
    }
    let n = h.vertex_count();

    // initial cycle through edge (0, first neighbor)
    let a = 0;
    let b = h.neighbors(a).next()?;
    let mut h_minus = h.clone();
    h_minus.remove_edge(a, b);
    let cycle = h_minus.shortest_path(b, a, |_| true)?;
    let mut on = vec![false; n];
    let mut used: HashSet<(Vertex, Vertex)> = HashSet::new();
    for i in 0..cycle.len() {
        let (x, y) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        on[x] = true;
        used.insert((x.min(y), x.max(y)));
    }
    let mut faces: Vec<Vec<Vertex>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let total_edges = h.edge_count();

    while used.len() < total_edges {
        let fragments = fragments(&h, &on, &used);
        let face_sets: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut s = vec![false; n];
                for &v in f {
                    s[v] = true;
                }
                s
            })
            .collect();
        let mut chosen: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&k| frag.attachments.iter().all(|&v| face_sets[k][v]))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = chosen?;
        let path = fragments[fi].path(&h, &on);
        let face = faces.swap_remove(face_idx);
        let (s, t) = (path[0], *path.last().unwrap());
        let m = face.len();
        let i = face.iter().position(|&v| v == s)?;
        let j = face.iter().position(|&v| v == t)?;
        let mut f1: Vec<Vertex> = Vec::new();
        let mut k = i;
        loop {
            f1.push(face[k]);
            if k == j {
                break;
            }
            k = (k + 1) % m;
        }
        f1.extend(path[1..path.len() - 1].iter().rev());
        let mut f2: Vec<Vertex> = Vec::new();
        let mut k = j;
        loop {
            f2.push(face[k]);
            if k == i {
                break;
            }
            k = (k + 1) % m;
        }
        f2.extend(path[1..path.len() - 1].iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            on[v] = true;
        }
    }

    // faces -> rotation
    let mut succ: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n];
    for f in &faces {
        let m = f.len();
        for k in 0..m {
            let (u, v, w) = (f[k], f[(k + 1) % m], f[(k + 2) % m]);
            succ[v].push((u, w));
        }
    }
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let start = h.neighbors(v).next()?;
        let mut seq = vec![start];
        let mut cur = start;
        loop {
            let next = succ[v].iter().find(|&&(u, _)| u == cur)?.1;
            if next == start {
                break;
            }
            seq.push(next);
            cur = next;
            if seq.len() > h.degree(v) {
                return None;
            }
        }
        if seq.len() != h.degree(v) {
            return None;
        }
        out.push((verts[v], seq.into_iter().map(|w| verts[w]).collect()));
    }
    Some(out)
}

struct Fragment {
    attachments: Vec<Vertex>,
    /// Non-embedded vertices of the fragment; empty for a single chord.
    inner: Vec<Vertex>,
}

impl Fragment {
    fn path(&self, h: &Graph, on: &[bool]) -> Vec<Vertex> {
        if self.inner.is_empty() {
            return vec![self.attachments[0], self.attachments[1]];
        }
        let s = self.attachments[0];
        let t = self.attachments[1];
        let inner: HashSet<Vertex> = self.inner.iter().copied().collect();
        // BFS from s whose first hop enters the fragment.
        let mut prev = vec![usize::MAX; h.vertex_count()];
        let mut queue = VecDeque::new();
        for w in h.neighbors(s) {
            if inner.contains(&w) {
                prev[w] = s;
                queue.push_back(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            if h.has_edge(u, t) {
                let mut path = vec![t, u];
                let mut cur = u;
                while prev[cur] != s {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.push(s);
                path.reverse();
                return path;
            }
            for w in h.neighbors(u) {
                if !on[w] && prev[w] == usize::MAX && inner.contains(&w) {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("fragment is connected to both attachments")
    }
}

fn fragments(h: &Graph, on: &[bool], used: &HashSet<(Vertex, Vertex)>) -> Vec<Fragment> {
    let n = h.vertex_count();
    let mut out = Vec::new();
    for (u, v) in h.edges() {
        if on[u] && on[v] && !used.contains(&(u, v)) {
            out.push(Fragment { attachments: vec![u, v], inner: Vec::new() });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if on[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut attach = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in h.neighbors(u) {
                if on[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { attachments: attach.into_iter().collect(), inner });
    }
    out
}

/// Shrinks a non-planar block to an edge-minimal non-planar subgraph, which
/// is a Kuratowski subdivision.
fn kuratowski_witness(g: &Graph, block: Vec<(Vertex, Vertex)>) -> NonplanarWitness {
    let n = g.vertex_count();
    let mut edges = block;
    let mut i = 0;
    while i < edges.len() {
        let mut trial = Graph::new(n);
        for (k, &(u, v)) in edges.iter().enumerate() {
            if k != i {
                trial.add_edge(u, v);
            }
        }
        if is_planar(&trial) {
            i += 1;
        } else {
            edges.remove(i);
        }
    }
    let mut h = Graph::new(n);
    for &(u, v) in &edges {
        h.add_edge(u, v);
    }
    let branch_vertices: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) >= 3).collect();
    let kind = if branch_vertices.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    NonplanarWitness { kind, edges, branch_vertices }
}
