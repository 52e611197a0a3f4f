//! List-coloring instances: a drawing, a list per vertex, and an optional
//! precolored triangle.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{CrossingPair, Drawing, DrawingError, PlaneGraph};
use crate::graph::{Graph, GraphError, Vertex};

pub type Color = u32;
pub type ColorList = BTreeSet<Color>;
pub type ListAssignment = Vec<ColorList>;
/// A (possibly partial) coloring.
pub type Coloring = BTreeMap<Vertex, Color>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("malformed instance JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error("missing list for vertex {0}")]
    MissingList(Vertex),
    #[error("list key {0:?} is not a vertex")]
    BadListKey(String),
    #[error("too many crossings: {0} (at most 2, or 1 with a precolored triangle)")]
    TooManyCrossings(usize),
    #[error("list too small: vertex {vertex} has {size} colors")]
    ListTooSmall { vertex: Vertex, size: usize },
    #[error("bad precolored triangle: {0}")]
    BadTriangle(String),
}

/// Which clause of the mode invariant an instance satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// At most two crossings, no triangle, all lists of size at least 5.
    TwoCrossings,
    /// At most one crossing and a precolored triangle.
    PrecoloredTriangle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub drawing: Drawing,
    pub lists: ListAssignment,
    pub triangle: Option<[Vertex; 3]>,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    edges: Vec<[Vertex; 2]>,
    #[serde(default)]
    crossings: Vec<CrossingJson>,
    lists: BTreeMap<String, Vec<Color>>,
    #[serde(default)]
    triangle: Option<[Vertex; 3]>,
}

#[derive(Serialize, Deserialize)]
struct CrossingJson {
    a: [Vertex; 2],
    b: [Vertex; 2],
}

impl Instance {
    pub fn new(drawing: Drawing, lists: ListAssignment, triangle: Option<[Vertex; 3]>) -> Self {
        Instance { drawing, lists, triangle }
    }

    pub fn graph(&self) -> &Graph {
        &self.drawing.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.drawing.graph.vertex_count()
    }

    pub fn crossing_count(&self) -> usize {
        self.drawing.crossings.len()
    }

    /// The well-founded measure (crossings, vertices, -edges) that every
    /// reduction must decrease.
    pub fn measure(&self) -> (usize, usize, i64) {
        (self.crossing_count(), self.vertex_count(), -(self.graph().edge_count() as i64))
    }

    pub fn plane(&self) -> Result<PlaneGraph, DrawingError> {
        self.drawing.planarize()
    }

    pub fn in_triangle(&self, v: Vertex) -> bool {
        self.triangle.is_some_and(|t| t.contains(&v))
    }

    /// Largest color in any list plus one.
    pub fn fresh_color(&self) -> Color {
        self.lists.iter().flat_map(|l| l.iter().copied()).max().map_or(0, |c| c + 1)
    }

    /// Checks the mode invariant.
    pub fn mode(&self) -> Result<Mode, InstanceError> {
        let n = self.vertex_count();
        if self.lists.len() != n {
            return Err(InstanceError::MissingList(self.lists.len().min(n)));
        }
        match self.triangle {
            None => {
                if self.crossing_count() > 2 {
                    return Err(InstanceError::TooManyCrossings(self.crossing_count()));
                }
                if let Some(v) = (0..n).find(|&v| self.lists[v].len() < 5) {
                    return Err(InstanceError::ListTooSmall { vertex: v, size: self.lists[v].len() });
                }
                Ok(Mode::TwoCrossings)
            }
            Some(t) => {
                self.check_triangle(t)?;
                if self.crossing_count() > 1 {
                    return Err(InstanceError::TooManyCrossings(self.crossing_count()));
                }
                if let Some(v) = (0..n).find(|&v| !t.contains(&v) && self.lists[v].len() < 5) {
                    return Err(InstanceError::ListTooSmall { vertex: v, size: self.lists[v].len() });
                }
                Ok(Mode::PrecoloredTriangle)
            }
        }
    }

    fn check_triangle(&self, t: [Vertex; 3]) -> Result<(), InstanceError> {
        let n = self.vertex_count();
        if t.iter().any(|&v| v >= n) {
            return Err(InstanceError::BadTriangle("vertex out of range".into()));
        }
        let g = self.graph();
        if !(g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[0], t[2])) {
            return Err(InstanceError::BadTriangle("not a triangle of the graph".into()));
        }
        let singles: BTreeSet<Color> = t
            .iter()
            .filter(|&&v| self.lists[v].len() == 1)
            .map(|&v| *self.lists[v].first().unwrap())
            .collect();
        if singles.len() != 3 {
            return Err(InstanceError::BadTriangle("lists are not distinct singletons".into()));
        }
        Ok(())
    }
}

fn from_json(text: &str) -> Result<Instance, InstanceError> {
    let raw: InstanceJson = serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))?;
    let pairs: Vec<(Vertex, Vertex)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
    let graph = Graph::from_edges(raw.n, &pairs)?;
    let crossings: Vec<CrossingPair> = raw
        .crossings
        .iter()
        .map(|c| CrossingPair::new((c.a[0], c.a[1]), (c.b[0], c.b[1])))
        .collect();
    let mut lists = vec![None; raw.n];
    for (key, colors) in &raw.lists {
        let v: Vertex = key.parse().map_err(|_| InstanceError::BadListKey(key.clone()))?;
        if v >= raw.n {
            return Err(InstanceError::BadListKey(key.clone()));
        }
        lists[v] = Some(colors.iter().copied().collect::<ColorList>());
    }
    let lists: ListAssignment = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or(InstanceError::MissingList(v)))
        .collect::<Result<_, _>>()?;
    let drawing = Drawing::new(graph, crossings)?;
    let inst = Instance { drawing, lists, triangle: raw.triangle };
    if let Some(t) = inst.triangle {
        inst.check_triangle(t)?;
    }
    inst.plane()?;
    Ok(inst)
}

/// Parses an instance and checks the mode invariant.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let inst = from_json(text)?;
    inst.mode()?;
    Ok(inst)
}

/// Parses an instance with arbitrary list sizes and crossing counts. The
/// drawing must still be realizable and a given triangle must be well formed.
pub fn parse_instance_relaxed(text: &str) -> Result<Instance, InstanceError> {
    from_json(text)
}

pub fn emit_instance(inst: &Instance) -> String {
    let raw = InstanceJson {
        n: inst.vertex_count(),
        edges: inst.graph().edges().into_iter().map(|(u, v)| [u, v]).collect(),
        crossings: inst
            .drawing
            .crossings
            .iter()
            .map(|c| CrossingJson { a: [c.a.0, c.a.1], b: [c.b.0, c.b.1] })
            .collect(),
        lists: inst
            .lists
            .iter()
            .enumerate()
            .map(|(v, l)| (v.to_string(), l.iter().copied().collect()))
            .collect(),
        triangle: inst.triangle,
    };
    serde_json::to_string(&raw).expect("instance serializes")
}

/// Coloring as a JSON object keyed by vertex id strings.
pub fn coloring_to_json(c: &Coloring) -> serde_json::Value {
    serde_json::Value::Object(c.iter().map(|(v, col)| (v.to_string(), (*col).into())).collect())
}

pub fn coloring_from_json(text: &str) -> Result<Coloring, InstanceError> {
    #[derive(Deserialize)]
    struct Wrapped {
        colors: BTreeMap<String, Color>,
    }
    let map: BTreeMap<String, Color> = match serde_json::from_str::<Wrapped>(text) {
        Ok(w) => w.colors,
        Err(_) => serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))?,
    };
    map.into_iter()
        .map(|(k, c)| k.parse::<Vertex>().map(|v| (v, c)).map_err(|_| InstanceError::BadListKey(k)))
        .collect()
}
