use std::collections::BTreeMap;

use listcolor::endgame::{solve_endgame, EndgameError};
use listcolor::graph::Vertex;
use listcolor::instance::{Color, Instance};
use listcolor::oracle::validate_coloring;

use super::{lists, straight_line};

// triangle 0 1 2, path vertex A, crossing endpoints 4 5 6 7 around the
// crossing with 4-6 and 5-7 crossed, guards Y (sees 0, A, 5) and YP (sees
// 0, A, 4 and 7), outer frame 10..=13
pub const A: Vertex = 3;
pub const Y: Vertex = 8;
pub const YP: Vertex = 9;
pub const WP: Vertex = 14;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// the base layout
    Plain,
    /// a vertex 14 sees 0, 4 and 7, so ending the path at 7 fails
    Blocker,
    /// Y sits inside the triangle A 4 5 and sees exactly those
    InnerGuard,
    /// YP sees only 0, 1, A and 4, and the ids of A and YP are exchanged
    Relabeled,
}

pub fn fixture(shape: Shape, raw: &[&[Color]]) -> Instance {
    let mut coords = vec![
        (0.0, 0.0),
        (-1.0, 1.2),
        (-1.0, -1.2),
        (2.0, 0.0),
        (4.0, 1.0),
        (4.0, -1.0),
        (6.0, -1.0),
        (6.0, 1.0),
        (2.0, -1.5),
        (2.0, 1.5),
        (3.0, 4.0),
        (3.0, -4.0),
        (10.0, 0.0),
        (-5.0, 0.0),
    ];
    let mut edges = vec![
        (0, 1), (0, 2), (1, 2), (0, A), (A, 4), (A, 5),
        (4, 5), (5, 6), (6, 7), (7, 4), (4, 6), (5, 7),
        (YP, 0), (YP, A), (YP, 4),
        (10, 1), (10, 7), (11, 2), (11, 6),
        (12, 7), (12, 6), (12, 10), (12, 11), (13, 1), (13, 2), (13, 10), (13, 11),
    ];
    let outer_y = [(Y, 0), (Y, A), (Y, 5), (2, Y), (Y, 6), (11, Y)];
    match shape {
        Shape::InnerGuard => {
            coords[Y] = (3.3, 0.0);
            edges.extend([(Y, A), (Y, 4), (Y, 5), (11, 5)]);
        }
        _ => edges.extend(outer_y),
    }
    match shape {
        Shape::Blocker => {
            coords.push((3.0, 2.6));
            edges.extend([(WP, 0), (WP, 4), (WP, 7), (WP, 10), (WP, 1)]);
        }
        Shape::Relabeled => edges.push((1, YP)),
        _ => edges.extend([(1, YP), (YP, 7), (10, YP)]),
    }
    if shape == Shape::Relabeled {
        let swap = |v: Vertex| match v {
            A => YP,
            YP => A,
            _ => v,
        };
        coords.swap(A, YP);
        for e in &mut edges {
            *e = (swap(e.0), swap(e.1));
        }
    }
    let d = straight_line(&coords, &edges);
    assert_eq!(d.crossing_count(), 1);
    let mut l = lists(raw);
    l.resize(coords.len(), (20..25).collect());
    Instance::new(d, l, Some([0, 1, 2]))
}

pub fn run(inst: &Instance) -> (Result<(), EndgameError>, BTreeMap<String, u64>) {
    let mut branches = BTreeMap::new();
    let r = solve_endgame(inst, &mut branches).map(|c| {
        assert!(validate_coloring(inst.graph(), &inst.lists, &c).is_empty());
    });
    (r, branches)
}

pub fn single_branch(inst: &Instance) -> String {
    let (r, branches) = run(inst);
    r.unwrap();
    assert_eq!(branches.len(), 1);
    branches.into_keys().next().unwrap()
}

pub const T1: &[Color] = &[1];
pub const T2: &[Color] = &[2];
pub const T3: &[Color] = &[3];

// a and both guards share the four colors 4..=7 beyond the triangle color,
// and both ends of the path have exactly one more color, 8
pub const RIGID: [&[Color]; 10] = [
    T1, T2, T3, &[1, 4, 5, 6, 7], &[4, 5, 6, 7, 8], &[4, 5, 6, 7, 8], &[5, 6, 7, 11, 12],
    &[5, 6, 7, 9, 10], &[1, 4, 5, 6, 7], &[1, 4, 5, 6, 7],
];

/// Branch names the endgame reports, each with a fixture that takes it.
pub const BRANCHES: [&str; 6] = ["path", "escape_full", "escape_diff", "split_colors", "reroute", "reroute_swapped"];

pub fn branch_case(branch: &str) -> Instance {
    match branch {
        "path" => fixture(Shape::Plain, &[T1, T2, T3]),
        "escape_full" => fixture(
            Shape::InnerGuard,
            &[
                T1, T2, T3, &[4, 9, 10, 11, 12], &[4, 5, 13, 14, 15], &[4, 5, 6, 7, 8], &[5, 6, 7, 11, 12],
                &[5, 6, 7, 9, 10], &[4, 5, 6, 7, 8], &[20, 21, 22, 23, 24],
            ],
        ),
        "escape_diff" => fixture(
            Shape::Plain,
            &[
                T1, T2, T3, &[4, 5, 6, 7, 8], &[4, 5, 6, 9, 13], &[4, 5, 6, 7, 8], &[5, 6, 7, 11, 12],
                &[5, 6, 7, 9, 10], &[1, 4, 6, 7, 8], &[1, 4, 10, 11, 12],
            ],
        ),
        "split_colors" => {
            let mut raw = RIGID.to_vec();
            raw[4] = &[5, 6, 7, 8, 9];
            fixture(Shape::Plain, &raw)
        }
        "reroute" => fixture(Shape::Plain, &RIGID),
        "reroute_swapped" => {
            let mut raw = RIGID.to_vec();
            raw.extend([&[20, 21, 22, 23, 24][..]; 4]);
            raw.push(&[1, 8, 9, 13, 14]);
            fixture(Shape::Blocker, &raw)
        }
        _ => panic!("no fixture for branch {branch}"),
    }
}
