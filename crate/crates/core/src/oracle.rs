//! Exhaustive list-coloring search, choosability testing and coloring
//! validation.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::instance::{Color, ColorList, Coloring, ListAssignment};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("search budget of {0} nodes exceeded")]
pub struct BudgetExceeded(pub u64);

/// Counts search nodes against a fixed limit.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.used += 1;
        if self.used > self.limit {
            Err(BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// Finds an L-coloring by backtracking with forward checking. Variables are
/// picked by fewest remaining colors, then highest degree, then lowest id.
pub fn exact_list_color(
    g: &Graph,
    lists: &ListAssignment,
    budget: &mut Budget,
) -> Result<Option<Coloring>, BudgetExceeded> {
    let n = g.vertex_count();
    let mut search = Search {
        g,
        domains: lists.iter().map(|l| l.iter().copied().collect()).collect(),
        color: vec![None; n],
        budget,
    };
    if search.domains.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    if search.run()? {
        Ok(Some(
            search.color.iter().enumerate().map(|(v, c)| (v, c.unwrap())).collect(),
        ))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    g: &'a Graph,
    domains: Vec<Vec<Color>>,
    color: Vec<Option<Color>>,
    budget: &'a mut Budget,
}

impl Search<'_> {
    fn pick(&self) -> Option<Vertex> {
        (0..self.color.len())
            .filter(|&v| self.color[v].is_none())
            .min_by_key(|&v| (self.domains[v].len(), std::cmp::Reverse(self.g.degree(v)), v))
    }

    fn run(&mut self) -> Result<bool, BudgetExceeded> {
        let Some(v) = self.pick() else { return Ok(true) };
        let options = self.domains[v].clone();
        for c in options {
            self.budget.tick()?;
            self.color[v] = Some(c);
            let mut pruned = Vec::new();
            let mut dead = false;
            for u in self.g.neighbors(v) {
                if self.color[u].is_none() {
                    if let Some(i) = self.domains[u].iter().position(|&x| x == c) {
                        self.domains[u].remove(i);
                        pruned.push(u);
                        if self.domains[u].is_empty() {
                            dead = true;
                            break;
                        }
                    }
                }
            }
            if !dead && self.run()? {
                return Ok(true);
            }
            for u in pruned {
                let d = &mut self.domains[u];
                let pos = d.partition_point(|&x| x < c);
                d.insert(pos, c);
            }
            self.color[v] = None;
        }
        Ok(false)
    }
}

/// Decides whether every assignment of `k`-subsets of `1..=palette` admits a
/// coloring. Assignments are enumerated up to permutation of colors. Returns
/// a bad assignment when one exists.
pub fn is_k_choosable(
    g: &Graph,
    k: usize,
    palette: usize,
    budget: &mut Budget,
) -> Result<(bool, Option<ListAssignment>), BudgetExceeded> {
    let n = g.vertex_count();
    if n == 0 || k == 0 {
        return Ok((n == 0, if n == 0 { None } else { Some(vec![ColorList::new(); n]) }));
    }
    let mut lists: ListAssignment = Vec::with_capacity(n);
    let found = choose_rec(g, k, palette, 0, &mut lists, budget)?;
    Ok(match found {
        Some(bad) => (false, Some(bad)),
        None => (true, None),
    })
}

fn choose_rec(
    g: &Graph,
    k: usize,
    palette: usize,
    used: usize,
    lists: &mut ListAssignment,
    budget: &mut Budget,
) -> Result<Option<ListAssignment>, BudgetExceeded> {
    let n = g.vertex_count();
    let i = lists.len();
    if i > 0 {
        // the prefix must be colorable, else any completion is a witness
        let (sub, _) = g.induced_subgraph(&(0..i).collect::<Vec<_>>());
        if exact_list_color(&sub, lists, budget)?.is_none() {
            let mut bad = lists.clone();
            while bad.len() < n {
                bad.push((1..=k as Color).collect());
            }
            return Ok(Some(bad));
        }
    }
    if i == n {
        return Ok(None);
    }
    for fresh in 0..=k {
        if used + fresh > palette {
            break;
        }
        let new: Vec<Color> = (used + 1..=used + fresh).map(|c| c as Color).collect();
        for old in subsets(used, k - fresh) {
            budget.tick()?;
            let list: ColorList = old.into_iter().chain(new.iter().copied()).collect();
            lists.push(list);
            let r = choose_rec(g, k, palette, used + fresh, lists, budget)?;
            lists.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
    }
    Ok(None)
}

/// All `size`-subsets of `1..=m`, ascending.
fn subsets(m: usize, size: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, m: usize, size: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for c in start..=m {
            if m - c + 1 < size - cur.len() {
                break;
            }
            cur.push(c as Color);
            go(c + 1, m, size, cur, out);
            cur.pop();
        }
    }
    go(1, m, size, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Uncolored { vertex: Vertex },
    OffList { vertex: Vertex, color: Color },
    Monochromatic { u: Vertex, v: Vertex, color: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uncolored { vertex } => write!(f, "vertex {vertex} is uncolored"),
            Violation::OffList { vertex, color } => {
                write!(f, "vertex {vertex} has color {color} outside its list")
            }
            Violation::Monochromatic { u, v, color } => {
                write!(f, "edge {u}-{v} is monochromatic in color {color}")
            }
        }
    }
}

/// Lists every uncolored vertex, off-list color and monochromatic edge.
pub fn validate_coloring(g: &Graph, lists: &ListAssignment, coloring: &Coloring) -> Vec<Violation> {
    let mut out = Vec::new();
    for v in g.vertices() {
        match coloring.get(&v) {
            None => out.push(Violation::Uncolored { vertex: v }),
            Some(&c) if !lists[v].contains(&c) => out.push(Violation::OffList { vertex: v, color: c }),
            _ => {}
        }
    }
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (coloring.get(&u), coloring.get(&v)) {
            if a == b {
                out.push(Violation::Monochromatic { u, v, color: *a });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn uniform(n: usize, colors: &[Color]) -> ListAssignment {
        vec![colors.iter().copied().collect(); n]
    }

    #[test]
    fn exact_small_cases() {
        let mut b = Budget::default();
        assert_eq!(exact_list_color(&complete(3), &uniform(3, &[1, 2]), &mut b).unwrap(), None);
        assert_eq!(exact_list_color(&complete(4), &uniform(4, &[1, 2, 3]), &mut b).unwrap(), None);
        let c = exact_list_color(&cycle(4), &uniform(4, &[1, 2]), &mut b).unwrap().unwrap();
        assert_eq!(c, Coloring::from([(0, 1), (1, 2), (2, 1), (3, 2)]));
    }

    #[test]
    fn budget_is_reported() {
        let mut b = Budget::new(3);
        assert_eq!(
            exact_list_color(&complete(6), &uniform(6, &[1, 2, 3, 4, 5]), &mut b),
            Err(BudgetExceeded(3))
        );
    }

    #[test]
    fn subsets_enumerate() {
        assert_eq!(subsets(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(2, 0), vec![Vec::<Color>::new()]);
    }

    #[test]
    fn choosability_small() {
        let mut b = Budget::default();
        assert!(is_k_choosable(&cycle(4), 2, 4, &mut b).unwrap().0);
        let (ok, w) = is_k_choosable(&cycle(5), 2, 2, &mut b).unwrap();
        assert!(!ok);
        assert_eq!(w.unwrap(), uniform(5, &[1, 2]));
        assert!(!is_k_choosable(&complete(3), 2, 4, &mut b).unwrap().0);
    }

    #[test]
    fn validation_reports_each_problem() {
        let g = cycle(3);
        let lists = uniform(3, &[1, 2, 3]);
        assert!(validate_coloring(&g, &lists, &Coloring::from([(0, 1), (1, 2), (2, 3)])).is_empty());
        assert_eq!(
            validate_coloring(&g, &lists, &Coloring::from([(0, 1), (1, 1), (2, 3)])),
            vec![Violation::Monochromatic { u: 0, v: 1, color: 1 }]
        );
        assert_eq!(
            validate_coloring(&g, &lists, &Coloring::from([(0, 1), (1, 2), (2, 9)])),
            vec![Violation::OffList { vertex: 2, color: 9 }]
        );
    }
}
