mod common;

use std::collections::BTreeSet;

use common::{k34, lists, uniform};
use listcolor::drawing::{CrossingPair, Drawing};
use listcolor::generate::{gen_random_instance, GenSpec};
use listcolor::graph::Graph;
use listcolor::instance::{parse_instance_relaxed, Instance};
use listcolor::oracle::{exact_list_color, validate_coloring, Budget};
use listcolor::solver::{solve, SolveError, SolveOptions};
use proptest::prelude::*;

fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

#[test]
fn planar_k4_needs_no_rule() {
    let inst = Instance::new(Drawing::planar(complete(4)), uniform(4, 5), None);
    let (c, stats) = solve(&inst, &SolveOptions::default()).unwrap();
    assert!(validate_coloring(inst.graph(), &inst.lists, &c).is_empty());
    assert!(stats.rules.values().all(|&k| k == 0));
    assert_eq!(stats.fallback_calls, 0);
}

#[test]
fn k5_with_one_crossing_uses_every_color() {
    let d = Drawing::new(complete(5), vec![CrossingPair::new((0, 3), (1, 4))]).unwrap();
    let inst = Instance::new(d, uniform(5, 5), None);
    let (c, _) = solve(&inst, &SolveOptions::default()).unwrap();
    assert!(validate_coloring(inst.graph(), &inst.lists, &c).is_empty());
    assert_eq!(c.values().collect::<BTreeSet<_>>().len(), 5);
}

#[test]
fn k34_with_distinct_lists() {
    let l = lists(&[
        &[1, 2, 3, 4, 5],
        &[1, 2, 3, 4, 6],
        &[1, 2, 3, 5, 6],
        &[1, 2, 4, 5, 6],
        &[1, 3, 4, 5, 6],
        &[2, 3, 4, 5, 6],
        &[1, 2, 3, 4, 7],
    ]);
    let inst = Instance::new(k34(), l, None);
    assert!(exact_list_color(inst.graph(), &inst.lists, &mut Budget::default()).unwrap().is_some());
    let opts = SolveOptions { fallback: false, ..Default::default() };
    let (c, stats) = solve(&inst, &opts).unwrap();
    assert!(validate_coloring(inst.graph(), &inst.lists, &c).is_empty());
    // the degree-3 side goes first, so no gadget is needed
    assert_eq!(stats.rules.get("R1"), Some(&1));
    assert_eq!(stats.fallback_calls, 0);
}

#[test]
fn unsatisfiable_relaxed_instance() {
    let text = r#"{"n":3,"edges":[[0,1],[1,2],[0,2]],"crossings":[],"lists":{"0":[1,2],"1":[1,2],"2":[1,2]}}"#;
    let inst = parse_instance_relaxed(text).unwrap();
    assert!(matches!(solve(&inst, &SolveOptions::default()), Err(SolveError::Unsatisfiable)));
}

#[test]
fn budget_is_reported() {
    let text = r#"{"n":4,"edges":[[0,1],[1,2],[0,2],[0,3],[1,3],[2,3]],"crossings":[],"lists":{"0":[1,2,3],"1":[1,2,3],"2":[1,2,3],"3":[1,2,3]}}"#;
    let inst = parse_instance_relaxed(text).unwrap();
    let opts = SolveOptions { budget: 2, ..Default::default() };
    assert!(matches!(solve(&inst, &opts), Err(SolveError::Budget(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn solving_twice_gives_the_same_answer(n in 5usize..25, k in 0usize..=2, seed in any::<u64>()) {
        let Ok(inst) = gen_random_instance(&GenSpec::new(n, k, seed)) else { return Ok(()) };
        let opts = SolveOptions { trace: true, ..Default::default() };
        let (c1, mut s1) = solve(&inst, &opts).unwrap();
        let (c2, mut s2) = solve(&inst, &opts).unwrap();
        s1.wall_ms = 0;
        s2.wall_ms = 0;
        prop_assert_eq!(c1, c2);
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn solutions_validate(n in 5usize..30, k in 0usize..=2, seed in any::<u64>()) {
        let Ok(inst) = gen_random_instance(&GenSpec::new(n, k, seed)) else { return Ok(()) };
        let (c, stats) = solve(&inst, &SolveOptions::default()).unwrap();
        prop_assert!(validate_coloring(inst.graph(), &inst.lists, &c).is_empty());
        prop_assert_eq!(stats.invalid_recombinations, 0);
        prop_assert_eq!(stats.measure_violations, 0);
    }
}
