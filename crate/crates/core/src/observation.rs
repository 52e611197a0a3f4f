//! Extending a coloring of a vertex set S to the whole graph when G - S is
//! plane and the colors taken from neighbors of S still leave a
//! boundary-task shaped problem.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::drawing::PlaneGraph;
use crate::graph::Vertex;
use crate::instance::{Color, ColorList, Coloring, Instance, ListAssignment};
use crate::thomassen::{color_plane, plane_preconditions, ThomassenError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    PsiIncomplete,
    PsiOffList,
    PsiNotProper,
    RemainderNotPlane,
    EmptyList,
    TooManySmallLists,
    SmallListsNotAdjacent,
    EqualSingletons,
    NotCofacial,
    Defect,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::PsiIncomplete => "psi does not color exactly S",
            Clause::PsiOffList => "psi uses a color outside a list",
            Clause::PsiNotProper => "psi is not proper on S",
            Clause::RemainderNotPlane => "remainder not plane",
            Clause::EmptyList => "a remaining list is empty",
            Clause::TooManySmallLists => "more than two remaining lists have fewer than 3 colors",
            Clause::SmallListsNotAdjacent => "the two short-list vertices are not adjacent",
            Clause::EqualSingletons => "the precolored pair has equal singleton lists",
            Clause::NotCofacial => "neighbors not co-facial",
            Clause::Defect => "internal defect",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("preconditions unsatisfiable: {clause} (vertex {vertex:?})")]
pub struct ObservationViolation {
    pub clause: Clause,
    pub vertex: Option<Vertex>,
}

fn violation(clause: Clause, vertex: Option<Vertex>) -> ObservationViolation {
    ObservationViolation { clause, vertex }
}

/// The plane remainder G - S with reduced lists, ready to be colored.
#[derive(Debug, Clone)]
pub struct Remainder {
    pub plane: PlaneGraph,
    /// old vertex id for each remainder vertex
    pub origin: Vec<Vertex>,
    pub lists: ListAssignment,
    pub anchor: Option<(Vertex, Vertex)>,
}

/// Checks every condition under which a coloring `psi` of `s` extends.
pub fn check_observation_preconditions(
    inst: &Instance,
    s: &BTreeSet<Vertex>,
    psi: &Coloring,
) -> Result<Remainder, ObservationViolation> {
    let g = inst.graph();
    if psi.keys().copied().collect::<BTreeSet<_>>() != *s {
        return Err(violation(Clause::PsiIncomplete, None));
    }
    for (&v, c) in psi {
        if !inst.lists[v].contains(c) {
            return Err(violation(Clause::PsiOffList, Some(v)));
        }
        if g.neighbors(v).any(|u| psi.get(&u) == Some(c)) {
            return Err(violation(Clause::PsiNotProper, Some(v)));
        }
    }
    remainder(inst, s, |v| {
        let used: ColorList = g.neighbors(v).filter_map(|u| psi.get(&u).copied()).collect();
        inst.lists[v].difference(&used).copied().collect()
    })
}

/// Checks whether removing `s` could leave an extendable remainder for any
/// coloring of `s` taken from a proper coloring of the graph: every list
/// loses one color per neighbor in `s` but keeps at least the color the
/// proper coloring gives its vertex, which is stood in for by a color of its
/// own.
pub fn extension_shape(inst: &Instance, s: &BTreeSet<Vertex>) -> Result<(), ObservationViolation> {
    let g = inst.graph();
    let fresh = inst.fresh_color();
    remainder(inst, s, |v| {
        let l = &inst.lists[v];
        if l.len() == 1 {
            return l.clone();
        }
        let lost = g.neighbors(v).filter(|u| s.contains(u)).count();
        if lost + 1 >= l.len() {
            return ColorList::from([fresh + v as Color]);
        }
        l.iter().copied().take(l.len() - lost).collect()
    })
    .map(|_| ())
}

fn remainder(
    inst: &Instance,
    s: &BTreeSet<Vertex>,
    reduced: impl Fn(Vertex) -> ColorList,
) -> Result<Remainder, ObservationViolation> {
    let plane = inst.plane().map_err(|_| violation(Clause::Defect, None))?;
    let (rest, map) = plane.delete(s, &BTreeSet::new());
    if !rest.dummy_origin.is_empty() {
        let d = rest.dummy_origin[0];
        return Err(violation(Clause::RemainderNotPlane, Some(d.a.0)));
    }
    let mut origin = vec![0; rest.original_count];
    for (old, new) in map.iter().enumerate() {
        if let Some(nv) = new {
            origin[*nv] = old;
        }
    }
    let lists: ListAssignment = origin.iter().map(|&v| reduced(v)).collect();
    let rg = &rest.graph;
    if let Some(v) = rg.vertices().find(|&v| lists[v].is_empty()) {
        return Err(violation(Clause::EmptyList, Some(origin[v])));
    }
    let small: Vec<Vertex> = rg.vertices().filter(|&v| lists[v].len() < 3).collect();
    let anchor = match small[..] {
        [] => None,
        [x] => {
            let found = rg
                .neighbors(x)
                .find(|&y| plane_preconditions(rg, &rest.rotation, &lists, Some((x, y))).is_ok());
            match found {
                Some(y) => Some((x, y)),
                None if rg.degree(x) == 0 => None,
                None => {
                    let y = rg.neighbors(x).next().unwrap();
                    return Err(translate(
                        plane_preconditions(rg, &rest.rotation, &lists, Some((x, y))).unwrap_err(),
                        &origin,
                    ));
                }
            }
        }
        [x, y] => {
            if !rg.has_edge(x, y) {
                return Err(violation(Clause::SmallListsNotAdjacent, Some(origin[x])));
            }
            Some((x, y))
        }
        _ => return Err(violation(Clause::TooManySmallLists, Some(origin[small[2]]))),
    };
    plane_preconditions(rg, &rest.rotation, &lists, anchor).map_err(|e| translate(e, &origin))?;
    Ok(Remainder { plane: rest, origin, lists, anchor })
}

fn translate(e: ThomassenError, origin: &[Vertex]) -> ObservationViolation {
    match e {
        ThomassenError::NotPlane => violation(Clause::RemainderNotPlane, None),
        ThomassenError::EmptyList { vertex } => violation(Clause::EmptyList, Some(origin[vertex])),
        ThomassenError::EqualSingletons { .. } => violation(Clause::EqualSingletons, None),
        ThomassenError::NotAdjacent(x, _) => violation(Clause::SmallListsNotAdjacent, Some(origin[x])),
        ThomassenError::BoundaryListTooSmall { vertex, .. } => {
            violation(Clause::TooManySmallLists, Some(origin[vertex]))
        }
        ThomassenError::NotCofacial { vertex } | ThomassenError::InteriorListTooSmall { vertex, .. } => {
            violation(Clause::NotCofacial, Some(origin[vertex]))
        }
        ThomassenError::NotOnFace(v) => violation(Clause::NotCofacial, Some(origin[v])),
        ThomassenError::NotAFace | ThomassenError::Defect(_) => violation(Clause::Defect, None),
    }
}

/// Extends `psi` on `s` to a coloring of the whole instance graph.
pub fn observation_extend(
    inst: &Instance,
    s: &BTreeSet<Vertex>,
    psi: &Coloring,
) -> Result<Coloring, ObservationViolation> {
    let rem = check_observation_preconditions(inst, s, psi)?;
    let phi = color_plane(&rem.plane.graph, &rem.plane.rotation, &rem.lists, rem.anchor)
        .map_err(|e| translate(e, &rem.origin))?;
    let mut out = psi.clone();
    for (v, c) in phi {
        out.insert(rem.origin[v], c);
    }
    Ok(out)
}
