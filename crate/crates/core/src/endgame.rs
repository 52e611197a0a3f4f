//! One crossing and a precolored triangle, with no reduction left: color a
//! short path from the triangle to the crossing so that deleting it leaves
//! a plane graph whose reduced lists can be colored.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::drawing::PlaneGraph;
use crate::graph::{Graph, Vertex};
use crate::instance::{Color, ColorList, Coloring, Instance, ListAssignment};
use crate::observation::{observation_extend, ObservationViolation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndgameError {
    #[error("endgame needs exactly one crossing and a precolored triangle")]
    WrongShape,
    #[error("no path from the triangle to the crossing")]
    NoPath,
    #[error("path coloring blocked at vertex {0}")]
    Blocked(Vertex),
    #[error("structural assumption failed: {0}")]
    Assumption(String),
    #[error("extension failed: {0}")]
    Extend(#[from] ObservationViolation),
}

/// The four endpoints of the crossing edges in rotation order around the
/// crossing, so that consecutive entries belong to different edges.
pub fn crossing_ends(plane: &PlaneGraph) -> Option<[Vertex; 4]> {
    let d = plane.dummy_vertices().next()?;
    let r = plane.rotation.around(d);
    let end = |i: usize| *plane.trace(d, r[i]).last().unwrap();
    Some([end(0), end(1), end(2), end(3)])
}

/// Adds every missing edge between consecutive crossing endpoints, drawn
/// alongside the crossing.
pub fn saturate(inst: &Instance) -> Result<Instance, EndgameError> {
    let mut plane = inst.plane().map_err(|e| EndgameError::Assumption(e.to_string()))?;
    let d = plane.dummy_vertices().next().ok_or(EndgameError::WrongShape)?;
    let x = crossing_ends(&plane).unwrap();
    for i in 0..4 {
        let (a, b) = (x[i], x[(i + 1) % 4]);
        if plane.graph.has_edge(a, b) {
            continue;
        }
        let r = plane.rotation.around(d).to_vec();
        let f = plane.faces().into_iter().find(|f| f.contains_dart(r[i], d)).unwrap();
        let vs = f.vertex_set();
        if !vs.contains(&a) || !vs.contains(&b) {
            return Err(EndgameError::Assumption(format!("cannot draw {a}-{b} beside the crossing")));
        }
        plane.add_edge_in_face(&f, a, b);
    }
    Ok(Instance::new(plane.to_drawing(), inst.lists.clone(), inst.triangle))
}

/// Minimum of `2k - b` over paths `p1 .. pk` of uncrossed edges with `p1` in
/// `t`, `p(k-1)` and `pk` in `x`, where `b` is 1 when `p(k-2)` is adjacent to
/// `pk`. Ties go to the lexicographically smallest vertex sequence.
pub fn find_min_score_path(g: &Graph, crossed: &[(Vertex, Vertex)], t: &[Vertex], x: &[Vertex]) -> Option<Vec<Vertex>> {
    let uncrossed = |u: Vertex, v: Vertex| {
        g.has_edge(u, v) && !crossed.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    };
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    let mut offer = |path: Vec<Vertex>| {
        let s = score(g, &path);
        if best.as_ref().is_none_or(|(bs, bp)| (s, &path) < (*bs, bp)) {
            best = Some((s, path));
        }
    };
    for &a in x {
        for &b in x {
            if a == b || !uncrossed(a, b) {
                continue;
            }
            if t.contains(&a) {
                offer(vec![a, b]);
                continue;
            }
            let avoid = [a, b];
            let near: Vec<Vertex> = g.neighbors(a).filter(|&q| !avoid.contains(&q) && uncrossed(q, a)).collect();
            let tight: Vec<Vertex> = near.iter().copied().filter(|&q| g.has_edge(q, b)).collect();
            for targets in [tight, near] {
                if let Some(mut p) = lex_shortest(g, &uncrossed, t, &targets, &avoid) {
                    p.extend([a, b]);
                    offer(p);
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

fn score(g: &Graph, path: &[Vertex]) -> usize {
    let k = path.len();
    let b = k >= 3 && g.has_edge(path[k - 3], path[k - 1]);
    2 * k - b as usize
}

/// Lexicographically smallest shortest path from `sources` to `targets`
/// using `edge` and avoiding `avoid`.
fn lex_shortest(
    g: &Graph,
    edge: &dyn Fn(Vertex, Vertex) -> bool,
    sources: &[Vertex],
    targets: &[Vertex],
    avoid: &[Vertex],
) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &q in targets {
        dist[q] = 0;
        queue.push_back(q);
    }
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX && !avoid.contains(&w) && edge(v, w) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let start = sources.iter().copied().filter(|&s| !avoid.contains(&s) && dist[s] != usize::MAX).min_by_key(|&s| (dist[s], s))?;
    let mut path = vec![start];
    let mut cur = start;
    while dist[cur] > 0 {
        cur = g.neighbors(cur).filter(|&w| edge(cur, w) && dist[w] == dist[cur] - 1).min().unwrap();
        path.push(cur);
    }
    Some(path)
}

/// For every vertex off the path with exactly three neighbors on it, the
/// last of those neighbors. Fails if the path minus its last vertex is not
/// induced, a vertex sees more than three path vertices, the three spread
/// too far, such a vertex lies in `t` or `x`, or two share an image.
pub fn compute_g(g: &Graph, path: &[Vertex], t: &[Vertex], x: &[Vertex]) -> Result<BTreeMap<Vertex, Vertex>, String> {
    let k = path.len();
    let pos: BTreeMap<Vertex, usize> = path.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for i in 0..k - 1 {
        for j in i + 2..k - 1 {
            if g.has_edge(path[i], path[j]) {
                return Err(format!("path is not induced: {}-{}", path[i], path[j]));
            }
        }
    }
    let mut out = BTreeMap::new();
    let mut seen: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for v in g.vertices().filter(|v| !pos.contains_key(v)) {
        let idx: Vec<usize> = g.neighbors(v).filter_map(|u| pos.get(&u).copied()).collect();
        if idx.len() > 3 {
            return Err(format!("vertex {v} has {} neighbors on the path", idx.len()));
        }
        if idx.len() < 3 {
            continue;
        }
        let inner: Vec<usize> = idx.iter().copied().filter(|&i| i < k - 1).collect();
        if inner.iter().max().unwrap() - inner.iter().min().unwrap() > 2 {
            return Err(format!("neighbors of {v} on the path are too far apart"));
        }
        if t.contains(&v) || x.contains(&v) {
            return Err(format!("vertex {v} with three path neighbors is special"));
        }
        let image = path[*idx.iter().max().unwrap()];
        if let Some(other) = seen.insert(image, v) {
            return Err(format!("vertices {other} and {v} share image {image}"));
        }
        out.insert(v, image);
    }
    Ok(out)
}

/// Colors a path vertex by vertex, keeping for every uncolored vertex the
/// colors of its list not used on a colored neighbor.
#[derive(Debug, Clone)]
pub struct PathColoringState<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    excluded: BTreeSet<Vertex>,
    pub path: Vec<Vertex>,
    pub psi: Coloring,
    /// available colors of every vertex still to be considered
    pub b: BTreeMap<Vertex, ColorList>,
}

impl<'a> PathColoringState<'a> {
    pub fn new(g: &'a Graph, lists: &'a ListAssignment, path: Vec<Vertex>, excluded: BTreeSet<Vertex>) -> Self {
        let b = g.vertices().filter(|v| !excluded.contains(v)).map(|v| (v, lists[v].clone())).collect();
        PathColoringState { g, lists, excluded, path, psi: Coloring::new(), b }
    }

    pub fn colored(&self) -> usize {
        self.psi.len()
    }

    pub fn next(&self) -> Option<Vertex> {
        self.path.get(self.colored()).copied()
    }

    pub fn color(&mut self, c: Color) {
        let p = self.next().expect("path fully colored");
        debug_assert!(self.b[&p].contains(&c));
        self.psi.insert(p, c);
        self.b.remove(&p);
        for u in self.g.neighbors(p) {
            if let Some(l) = self.b.get_mut(&u) {
                l.remove(&c);
            }
        }
    }

    /// The available colors computed from scratch.
    pub fn recompute(&self) -> BTreeMap<Vertex, ColorList> {
        self.g
            .vertices()
            .filter(|v| !self.excluded.contains(v) && !self.psi.contains_key(v))
            .map(|v| {
                let used: ColorList = self.g.neighbors(v).filter_map(|u| self.psi.get(&u).copied()).collect();
                (v, self.lists[v].difference(&used).copied().collect())
            })
            .collect()
    }

    pub fn avail(&self, v: Vertex) -> ColorList {
        self.b.get(&v).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocked {
    /// index of the path vertex that could not be colored
    pub at: usize,
    pub guard: Vertex,
}

/// Colors the first `upto` path vertices: the first gets its triangle
/// color, the second avoids every triangle list, and each later vertex
/// avoids the available colors of the vertex mapped to it whenever that
/// vertex is down to three.
pub fn color_along_path<'a>(
    g: &'a Graph,
    lists: &'a ListAssignment,
    path: &[Vertex],
    gmap: &BTreeMap<Vertex, Vertex>,
    t: [Vertex; 3],
    upto: usize,
) -> Result<PathColoringState<'a>, Result<Blocked, String>> {
    let others: BTreeSet<Vertex> = t.iter().copied().filter(|&v| v != path[0]).collect();
    let mut st = PathColoringState::new(g, lists, path.to_vec(), others);
    advance(&mut st, gmap, t, upto)?;
    Ok(st)
}

/// Continues coloring along `st.path` until `upto` vertices are colored.
fn advance(
    st: &mut PathColoringState<'_>,
    gmap: &BTreeMap<Vertex, Vertex>,
    t: [Vertex; 3],
    upto: usize,
) -> Result<(), Result<Blocked, String>> {
    let guard_of: BTreeMap<Vertex, Vertex> = gmap.iter().map(|(&y, &p)| (p, y)).collect();
    let tri_colors: ColorList = t.iter().flat_map(|&v| st.lists[v].iter().copied()).collect();
    while st.colored() < upto.min(st.path.len()) {
        let j = st.colored();
        let p = st.path[j];
        let avail = st.avail(p);
        let c = match j {
            0 => avail.first().copied(),
            1 => avail.difference(&tri_colors).next().copied(),
            _ => match guard_of.get(&p) {
                Some(&y) if st.avail(y).len() <= 3 => match avail.difference(&st.avail(y)).next() {
                    Some(&c) => Some(c),
                    None => return Err(Ok(Blocked { at: j, guard: y })),
                },
                _ => avail.first().copied(),
            },
        };
        let Some(c) = c else { return Err(Err(format!("no color left for path vertex {p}"))) };
        st.color(c);
        if let Some((v, _)) = st.b.iter().find(|(_, l)| l.len() < 3) {
            return Err(Err(format!("vertex {v} is down to fewer than three colors")));
        }
    }
    Ok(())
}

/// Runs the endgame, counting the branch that succeeded in `branches`.
pub fn solve_endgame(inst: &Instance, branches: &mut BTreeMap<String, u64>) -> Result<Coloring, EndgameError> {
    let t = inst.triangle.ok_or(EndgameError::WrongShape)?;
    if inst.crossing_count() != 1 {
        return Err(EndgameError::WrongShape);
    }
    let sat = saturate(inst)?;
    let plane = sat.plane().map_err(|e| EndgameError::Assumption(e.to_string()))?;
    let x = crossing_ends(&plane).unwrap();
    let mut hit = |name: &str, c: Coloring| {
        *branches.entry(name.to_string()).or_default() += 1;
        let n = inst.vertex_count();
        Ok(c.into_iter().filter(|&(v, _)| v < n).collect())
    };
    let mut last = None;
    match triangle_on_crossing(&sat, t, x) {
        Some(Ok(c)) => return hit("triangle_on_crossing", c),
        Some(Err(e)) => last = Some(e),
        None => {}
    }
    match triangle_next_to_crossing(&sat, t, x) {
        Some(Ok(c)) => return hit("triangle_next_to_crossing", c),
        Some(Err(e)) => last = Some(e),
        None => {}
    }
    if let Some(e) = last {
        return Err(e);
    }
    let g = sat.graph();
    let c = sat.drawing.crossings[0];
    let path = find_min_score_path(g, &[c.a, c.b], &t, &x).ok_or(EndgameError::NoPath)?;
    if path.len() < 4 {
        return Err(EndgameError::Assumption(format!("path of length {} should have been handled", path.len())));
    }
    let gmap = compute_g(g, &path, &t, &x).map_err(EndgameError::Assumption)?;
    match color_along_path(g, &sat.lists, &path, &gmap, t, path.len()) {
        Ok(st) => {
            let s = path.iter().copied().collect();
            hit("path", observation_extend(&sat, &s, &st.psi)?)
        }
        Err(Err(msg)) => Err(EndgameError::Assumption(msg)),
        Err(Ok(bl)) if bl.at + 1 != path.len() => {
            Err(EndgameError::Assumption(format!("blocked early at path index {}", bl.at)))
        }
        Err(Ok(bl)) => {
            let (name, c) = resolve_blocked_endgame(&sat, &path, &gmap, t, x, bl.guard)?;
            hit(name, c)
        }
    }
}

fn psi_extend(sat: &Instance, psi: &Coloring) -> Result<Coloring, ObservationViolation> {
    observation_extend(sat, &psi.keys().copied().collect(), psi)
}

/// A triangle vertex is an endpoint of a crossing edge: delete it together
/// with a neighbor on the crossing.
fn triangle_on_crossing(sat: &Instance, t: [Vertex; 3], x: [Vertex; 4]) -> Option<Result<Coloring, EndgameError>> {
    let g = sat.graph();
    let l = &sat.lists;
    let mut last = None;
    for i in 0..4 {
        let u = x[i];
        if !t.contains(&u) {
            continue;
        }
        for v in [x[(i + 1) % 4], x[(i + 3) % 4]] {
            let cu = *l[u].first().unwrap();
            let cv = if t.contains(&v) {
                l[v].first().copied()
            } else {
                let used: ColorList =
                    t.iter().filter(|&&w| g.has_edge(v, w)).flat_map(|&w| l[w].iter().copied()).collect();
                l[v].iter().copied().find(|c| *c != cu && !used.contains(c))
            };
            let Some(cv) = cv else { continue };
            match psi_extend(sat, &Coloring::from([(u, cu), (v, cv)])) {
                Ok(c) => return Some(Ok(c)),
                Err(e) => last = Some(Err(e.into())),
            }
        }
    }
    last
}

/// A triangle vertex `t1` is adjacent to a crossing endpoint `v1`: delete
/// both and a neighbor `v2` of `v1` on the crossing, colored so that no
/// common neighbor of the three runs short.
fn triangle_next_to_crossing(
    sat: &Instance,
    t: [Vertex; 3],
    x: [Vertex; 4],
) -> Option<Result<Coloring, EndgameError>> {
    let g = sat.graph();
    let l = &sat.lists;
    let mut last = None;
    for &t1 in &t {
        let rest: Vec<Vertex> = t.iter().copied().filter(|&w| w != t1).collect();
        let tri_colors: ColorList = t.iter().flat_map(|&w| l[w].iter().copied()).collect();
        let far: ColorList = rest.iter().flat_map(|&w| l[w].iter().copied()).collect();
        for i in 0..4 {
            let v1 = x[i];
            if !g.has_edge(t1, v1) {
                continue;
            }
            let (n1, n3) = (x[(i + 1) % 4], x[(i + 3) % 4]);
            let mut orders = [(n1, n3), (n3, n1)];
            orders.sort_by_key(|&(_, v4)| g.has_edge(t1, v4));
            for (v2, _) in orders {
                let c_t = *l[t1].first().unwrap();
                let Some(&c1) = l[v1].difference(&tri_colors).next() else { continue };
                let trouble = g.vertices().find(|&y| {
                    !t.contains(&y)
                        && y != v1
                        && y != v2
                        && g.has_edge(y, t1)
                        && g.has_edge(y, v1)
                        && g.has_edge(y, v2)
                        && l[y].contains(&c_t)
                        && l[y].contains(&c1)
                });
                let banned: ColorList = match trouble {
                    Some(y) => l[y].iter().copied().filter(|&c| c != c_t).collect(),
                    None => far.iter().copied().chain([c1, c_t]).collect(),
                };
                let c2 = l[v2]
                    .iter()
                    .copied()
                    .find(|&c| !banned.contains(&c) && c != c1 && !(c == c_t && g.has_edge(t1, v2)));
                let Some(c2) = c2 else { continue };
                match psi_extend(sat, &Coloring::from([(t1, c_t), (v1, c1), (v2, c2)])) {
                    Ok(c) => return Some(Ok(c)),
                    Err(e) => last = Some(Err(e.into())),
                }
            }
        }
    }
    last
}

/// The last path vertex could not avoid its guard `y`. Tries, in order:
/// recoloring the third-to-last vertex to relieve `y` (or, on the path with
/// its last two vertices swapped, the guard `y2` of the new last vertex),
/// giving the last two vertices different colors from outside the third-to-
/// last vertex's available set, and ending the path at one of the other two
/// crossing endpoints instead. Every choice is the smallest color allowed.
pub fn resolve_blocked_endgame(
    sat: &Instance,
    path: &[Vertex],
    gmap: &BTreeMap<Vertex, Vertex>,
    t: [Vertex; 3],
    x: [Vertex; 4],
    y: Vertex,
) -> Result<(&'static str, Coloring), EndgameError> {
    let g = sat.graph();
    let l = &sat.lists;
    let k = path.len();
    let (pa, pb, pc) = (path[k - 3], path[k - 2], path[k - 1]);
    let mut last: EndgameError = EndgameError::Blocked(y);
    let mut attempt = |psi: &Coloring| match psi_extend(sat, psi) {
        Ok(c) => Some(c),
        Err(e) => {
            last = e.into();
            None
        }
    };
    let prefix = color_along_path(g, l, path, gmap, t, k - 3).map_err(|_| EndgameError::Blocked(y))?;
    let b0 = prefix.avail(pa);

    let mut swapped = path.to_vec();
    swapped.swap(k - 2, k - 1);
    let gmap2 = compute_g(g, &swapped, &t, &x).ok();
    let y2 = gmap2.as_ref().and_then(|m| m.iter().find(|&(_, &p)| p == pb).map(|(&v, _)| v));
    let escapes = [
        ("escape_full", "escape_diff", path, Some(gmap), Some(y)),
        ("escape_full_swapped", "escape_diff_swapped", &swapped[..], gmap2.as_ref(), y2),
    ];
    for (full, diff, p, gm, guard) in escapes {
        let (Some(gm), Some(gv)) = (gm, guard) else { continue };
        let by = prefix.avail(gv);
        let name = if by.len() >= 5 {
            full
        } else if !b0.is_subset(&by) {
            diff
        } else {
            continue;
        };
        let Some(&c) = b0.difference(&by).next().or(b0.first()) else { continue };
        let mut st = prefix.clone();
        st.path = p.to_vec();
        st.color(c);
        if advance(&mut st, gm, t, k).is_ok() {
            if let Some(col) = attempt(&st.psi) {
                return Ok((name, col));
            }
        }
    }

    let Some(&c0) = b0.first() else { return Err(last) };
    let out_b: ColorList = l[pb].difference(&b0).copied().collect();
    let out_c: ColorList = l[pc].difference(&b0).copied().collect();
    let split = out_b.iter().flat_map(|&c1| out_c.iter().map(move |&c2| (c1, c2))).find(|(c1, c2)| c1 != c2);
    if let Some((c1, c2)) = split {
        let mut st = prefix.clone();
        st.color(c0);
        if st.avail(pb).contains(&c1) {
            st.color(c1);
            if st.avail(pc).contains(&c2) {
                st.color(c2);
                if let Some(col) = attempt(&st.psi) {
                    return Ok(("split_colors", col));
                }
            }
        }
        return Err(last);
    }

    // both last vertices have the one color c outside b0: end the path at
    // the other crossing endpoints instead
    let Some(&c) = out_b.intersection(&out_c).next() else { return Err(last) };
    let ix = |v: Vertex| x.iter().position(|&w| w == v).unwrap();
    let other_nb = |v: Vertex, not: Vertex| {
        let i = ix(v);
        [x[(i + 1) % 4], x[(i + 3) % 4]].into_iter().find(|&w| w != not).unwrap()
    };
    let z = other_nb(pc, pb);
    let z2 = other_nb(pb, pc);
    let avail = |psi: &Coloring, v: Vertex| -> ColorList {
        let used: ColorList = g.neighbors(v).filter_map(|u| psi.get(&u).copied()).collect();
        l[v].difference(&used).copied().collect()
    };
    for (name, keep, end, guard) in [("reroute", pb, z2, y2), ("reroute_swapped", pc, z, Some(y))] {
        let mut st = prefix.clone();
        st.color(c0);
        if !st.avail(keep).contains(&c) {
            continue;
        }
        let mut psi = st.psi.clone();
        psi.insert(keep, c);
        let free = avail(&psi, end);
        let avoid = guard.map(|gv| avail(&psi, gv)).unwrap_or_default();
        let Some(&ce) = free.difference(&avoid).next().or(free.first()) else { continue };
        psi.insert(end, ce);
        if let Some(col) = attempt(&psi) {
            return Ok((name, col));
        }
    }
    Err(last)
}
