//! The solver: direct coloring of base cases, reductions, the one-crossing
//! endgame, and exact search when none of those applies.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::endgame::{crossing_ends, solve_endgame};
use crate::graph::Vertex;
use crate::instance::{ColorList, Coloring, Instance, InstanceError};
use crate::observation::observation_extend;
use crate::oracle::{exact_list_color, validate_coloring, Budget, BudgetExceeded, DEFAULT_BUDGET};
use crate::reductions::{find_applicable_reduction, Plan, ReductionStep};

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// node limit for exact search
    pub budget: u64,
    /// whether exact search may stand in when the constructive pipeline
    /// cannot finish
    pub fallback: bool,
    pub trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, fallback: true, trace: false }
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct SolveStats {
    pub rules: BTreeMap<String, u64>,
    pub base_cases: BTreeMap<String, u64>,
    pub endgame: BTreeMap<String, u64>,
    pub fallback_calls: u64,
    /// recombined colorings that failed validation (each then fell back)
    pub invalid_recombinations: u64,
    pub measure_violations: u64,
    pub max_depth: usize,
    pub oracle_nodes: u64,
    pub wall_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid instance: {0}")]
    Invalid(#[from] InstanceError),
    #[error("no coloring exists")]
    Unsatisfiable,
    #[error("an instance meeting the theorem's hypotheses has no coloring")]
    TheoremViolation,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("constructive pipeline incomplete: {0}")]
    PipelineIncomplete(String),
}

/// Colors `inst`. Instances outside the supported mode go straight to exact
/// search, where no coloring means `Unsatisfiable`.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<(Coloring, SolveStats), SolveError> {
    let start = Instant::now();
    let plane = inst.plane().map_err(InstanceError::from)?;
    let mut root = inst.clone();
    root.drawing.rotation = Some(plane.rotation);
    let mut s = Solver { opts, stats: SolveStats::default(), budget: Budget::new(opts.budget) };
    let result = if root.mode().is_ok() {
        s.rec(&root, 0)
    } else {
        s.stats.fallback_calls += 1;
        match exact_list_color(root.graph(), &root.lists, &mut s.budget)? {
            Some(c) => Ok(c),
            None => Err(SolveError::Unsatisfiable),
        }
    };
    s.stats.oracle_nodes = s.budget.used();
    s.stats.wall_ms = start.elapsed().as_millis() as u64;
    result.map(|c| (c, s.stats))
}

/// Solves the children of one step and recombines, without falling back at
/// the top level. Children are solved with `opts`.
pub fn apply_step(
    inst: &Instance,
    step: &ReductionStep,
    opts: &SolveOptions,
) -> Result<(Coloring, SolveStats), SolveError> {
    let mut s = Solver { opts, stats: SolveStats::default(), budget: Budget::new(opts.budget) };
    match s.recombine(inst, step, 1)? {
        Ok(c) if validate_coloring(inst.graph(), &inst.lists, &c).is_empty() => Ok((c, s.stats)),
        Ok(_) => Err(SolveError::PipelineIncomplete("recombined coloring is invalid".into())),
        Err(reason) => Err(SolveError::PipelineIncomplete(reason)),
    }
}

struct Solver<'o> {
    opts: &'o SolveOptions,
    stats: SolveStats,
    budget: Budget,
}

impl Solver<'_> {
    fn note(&mut self, depth: usize, msg: impl FnOnce() -> String) {
        if self.opts.trace {
            self.stats.trace.push(format!("{depth}: {}", msg()));
        }
    }

    fn rec(&mut self, inst: &Instance, depth: usize) -> Result<Coloring, SolveError> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let attempt = self.constructive(inst, depth)?;
        let reason = match attempt {
            Ok(c) => {
                let bad = validate_coloring(inst.graph(), &inst.lists, &c);
                if bad.is_empty() {
                    return Ok(c);
                }
                self.stats.invalid_recombinations += 1;
                format!("recombined coloring is invalid: {}", bad[0])
            }
            Err(reason) => reason,
        };
        self.note(depth, || format!("fallback: {reason}"));
        self.stats.fallback_calls += 1;
        if !self.opts.fallback {
            return Err(SolveError::PipelineIncomplete(reason));
        }
        match exact_list_color(inst.graph(), &inst.lists, &mut self.budget)? {
            Some(c) => Ok(c),
            None => Err(SolveError::TheoremViolation),
        }
    }

    /// The coloring built without search, or why none was built.
    fn constructive(&mut self, inst: &Instance, depth: usize) -> Result<Result<Coloring, String>, SolveError> {
        if inst.vertex_count() == 0 {
            return Ok(Ok(Coloring::new()));
        }
        let cr = inst.crossing_count();
        if cr == 0 {
            self.count_base("planar");
            let (s, psi) = match inst.triangle {
                Some(t) => (BTreeSet::from([t[0]]), Coloring::from([(t[0], *inst.lists[t[0]].first().unwrap())])),
                None => (BTreeSet::new(), Coloring::new()),
            };
            return Ok(observation_extend(inst, &s, &psi).map_err(|e| e.to_string()));
        }
        if cr == 1 && inst.triangle.is_none() {
            self.count_base("one_crossing");
            return Ok(one_crossing(inst));
        }
        if let Some(step) = find_applicable_reduction(inst) {
            *self.stats.rules.entry(step.rule.id().to_string()).or_default() += 1;
            self.note(depth, || format!("{} {:?}", step.rule, step.params));
            let m = inst.measure();
            let shrinks = |c: &Instance| c.measure() < m;
            if !step.children.iter().all(|c| shrinks(&c.instance)) {
                self.stats.measure_violations += 1;
            }
            return self.recombine(inst, &step, depth);
        }
        if cr == 1 {
            let r = solve_endgame(inst, &mut self.stats.endgame);
            self.note(depth, || format!("endgame: {r:?}"));
            return Ok(r.map_err(|e| e.to_string()));
        }
        Ok(Err("no reduction applies".into()))
    }

    fn count_base(&mut self, name: &str) {
        *self.stats.base_cases.entry(name.to_string()).or_default() += 1;
    }

    fn recombine(
        &mut self,
        inst: &Instance,
        step: &ReductionStep,
        depth: usize,
    ) -> Result<Result<Coloring, String>, SolveError> {
        let mut pulled = Vec::with_capacity(step.children.len());
        for child in &step.children {
            let c = self.rec(&child.instance, depth + 1)?;
            pulled.push(child.pull_back(&c));
        }
        Ok(match &step.plan {
            Plan::Greedy { v } => {
                let mut c = pulled.pop().unwrap();
                let used: ColorList = inst.graph().neighbors(*v).filter_map(|u| c.get(&u).copied()).collect();
                match inst.lists[*v].difference(&used).next() {
                    Some(&col) => {
                        c.insert(*v, col);
                        Ok(c)
                    }
                    None => Err(format!("no color left for vertex {v}")),
                }
            }
            Plan::Union | Plan::Gadget { .. } => Ok(pulled.into_iter().flatten().collect()),
            Plan::Extend { s } => {
                let c = pulled.pop().unwrap();
                let psi: Coloring = s.iter().map(|v| (*v, c[v])).collect();
                observation_extend(inst, s, &psi).map_err(|e| e.to_string())
            }
            Plan::Sequential { template, interface } => {
                let first = pulled.pop().unwrap();
                let mut t = template.instance.clone();
                for &(local, parent) in interface {
                    t.lists[local] = ColorList::from([first[&parent]]);
                }
                let second = self.rec(&t, depth + 1)?;
                let mut c = template.pull_back(&second);
                c.extend(first);
                Ok(c)
            }
            Plan::Direct { base, s, psi } => {
                let n = inst.vertex_count();
                observation_extend(base, s, psi)
                    .map(|c| c.into_iter().filter(|&(v, _)| v < n).collect())
                    .map_err(|e| e.to_string())
            }
        })
    }
}

/// One crossing, no triangle: color two endpoints of different crossing
/// edges that are consecutive around the crossing, then extend.
fn one_crossing(inst: &Instance) -> Result<Coloring, String> {
    let plane = inst.plane().map_err(|e| e.to_string())?;
    let x = crossing_ends(&plane).ok_or("no crossing")?;
    let mut last = String::new();
    for i in 0..4 {
        let (a, c) = (x[i], x[(i + 1) % 4]);
        let ca = *inst.lists[a].first().unwrap();
        let Some(&cc) = inst.lists[c].iter().find(|&&k| k != ca) else { continue };
        let s: BTreeSet<Vertex> = BTreeSet::from([a, c]);
        match observation_extend(inst, &s, &Coloring::from([(a, ca), (c, cc)])) {
            Ok(col) => return Ok(col),
            Err(e) => last = e.to_string(),
        }
    }
    Err(last)
}
