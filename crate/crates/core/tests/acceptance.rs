//! Acceptance suite: one test per criterion, each printing a pass line.
//! Everything here is exact; there are no tolerances to tune.

use std::collections::BTreeSet;

use corteges::bridge::{enumerate_upper_classes, Bridge};
use corteges::colorset::ColorSet;
use corteges::corpus::default_corpus;
use corteges::cortege::{CortegeId, PathSystem};
use corteges::cubillage::{
    cubillage_flip_graph, validate_cubes, ziegler_count, Cubillage, ExpandSide, Filling, Side,
};
use corteges::digraph::{branching_example, path_graph, Digraph};
use corteges::orders::{ConvexOrder, OrderSpace};
use corteges::zonotope::CyclicConfig;
use corteges::Caps;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn caps() -> Caps {
    Caps::default()
}

fn system(g: Digraph, max_level: usize) -> PathSystem {
    PathSystem::new(g, max_level, &caps()).unwrap()
}

fn id_of(sys: &PathSystem, level: usize, parts: &[&[&str]]) -> CortegeId {
    let parts: Vec<Vec<String>> = parts
        .iter()
        .map(|seq| seq.iter().map(|s| s.to_string()).collect())
        .collect();
    let (k, id) = sys.cortege_from_names(&parts).unwrap();
    assert_eq!(k, level);
    id
}

/// Criterion 1: the worked example, end to end.
#[test]
fn criterion_1_worked_example() {
    let sys = system(branching_example(), 2);
    let space = OrderSpace::new(&sys, 2);

    // A linear order satisfying the published constraints:
    // p2 < p1*p2 < p2*r < R' < p1 < R < p2*q < q < r.
    let ranking: Vec<CortegeId> = [
        vec!["2", "3"],
        vec!["1", "2", "3"],
        vec!["2", "3", "4'"],
        vec!["1", "2", "3", "4'"],
        vec!["1", "2"],
        vec!["1", "2", "3", "4"],
        vec!["2", "3", "4"],
        vec!["3", "4"],
        vec!["3", "4'"],
    ]
    .iter()
    .map(|seq| {
        let path: Vec<&str> = seq.to_vec();
        id_of(&sys, 1, &[&path])
    })
    .collect();
    let order = ConvexOrder { d: 2, ranking };
    let assignment = space.check_convex(&order).unwrap();

    let p1p2 = id_of(&sys, 2, &[&["1", "2"], &["2", "3"]]);
    let p1p2r = id_of(&sys, 2, &[&["1", "2"], &["2", "3", "4'"]]);
    let expected: BTreeSet<CortegeId> = [p1p2, p1p2r].into_iter().collect();
    assert_eq!(assignment.anti, expected, "anti-standard set");

    // (p1,p2) is not dense, separated by the route 1234'.
    let dag = space.forced_dag(&assignment).unwrap();
    let (_, separator) = space.separator(&dag, &assignment, p1p2).unwrap();
    assert_eq!(space.element_name(separator), "(1234')");
    assert!(!space.is_dense(&assignment, p1p2).unwrap());
    // (p1, p2*r) is dense; lower it.
    assert!(space.is_dense(&assignment, p1p2r).unwrap());
    let after_first = space.apply_flip(&assignment, p1p2r).unwrap();
    // Now (p1,p2) is dense; lower it too and reach the minimum.
    assert!(space.is_dense(&after_first, p1p2).unwrap());
    let after_second = space.apply_flip(&after_first, p1p2).unwrap();
    assert!(after_second.anti.is_empty());

    println!("criterion 1 (worked example end to end): PASS");
}

/// Criterion 2: poset structure over the corpus for d in {2,3}.
#[test]
fn criterion_2_poset_corpus() {
    let mut checked = 0;
    for g in default_corpus() {
        for d in [2usize, 3] {
            let sys = system(g.clone(), d);
            let space = OrderSpace::new(&sys, d);
            let graph = space.flip_graph(&caps()).unwrap();
            let report = space.verify_poset(&graph).unwrap();
            assert!(
                report.acyclic
                    && report.unique_source_all_standard
                    && report.unique_sink_all_anti
                    && report.arcs_raise_rank_by_one
                    && report.every_nonminimal_has_lowering
                    && report.every_nonmaximal_has_raising
                    && report.chains_graded,
                "violations on {:?} d={d}: {:?}",
                g.to_doc(),
                report.violations
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 82);
    println!("criterion 2 (poset checks on {checked} corpus instances): PASS");
}

/// Criterion 3: brute-force classes equal flip-graph classes wherever the
/// brute force runs (at most 8 ordered corteges).
#[test]
fn criterion_3_oracle_equivalence() {
    let mut compared = 0;
    for g in default_corpus() {
        for d in [2usize, 3] {
            let sys = system(g.clone(), d);
            let space = OrderSpace::new(&sys, d);
            if space.element_count() > 8 {
                continue;
            }
            let brute = space.brute_force_orders(8).unwrap();
            let graph = space.flip_graph(&caps()).unwrap();
            let from_graph: BTreeSet<Vec<CortegeId>> = graph.nodes.iter().cloned().collect();
            assert_eq!(brute, from_graph, "{:?} d={d}", g.to_doc());
            compared += 1;
        }
    }
    assert!(compared >= 70, "only {compared} instances compared");
    println!("criterion 3 (order-class oracle equivalence on {compared} instances): PASS");
}

/// Criterion 4: the counts of order classes on path graphs, cubillages, and
/// prefix/suffix-consistent packet sets all coincide. Frozen values from the
/// first oracle run.
#[test]
fn criterion_4_bijection_counts() {
    let frozen = [
        ((3usize, 2usize), 2usize),
        ((4, 2), 8),
        ((5, 2), 62),
        ((3, 3), 1),
        ((4, 3), 2),
        ((5, 3), 10),
    ];
    for ((n, d), expected) in frozen {
        let sys = system(path_graph(n), d);
        let space = OrderSpace::new(&sys, d);
        let order_classes = space.flip_graph(&caps()).unwrap().nodes.len();
        let cubillages = cubillage_flip_graph(n, d, caps().max_nodes).unwrap().nodes.len();
        let consistent_sets = ziegler_count(n, d).unwrap();
        assert_eq!(order_classes, cubillages, "({n},{d})");
        assert_eq!(cubillages, consistent_sets, "({n},{d})");
        assert_eq!(order_classes, expected, "({n},{d}) regression");
    }

    // Independent brute-force tiling oracle behind the frozen (4,2) value:
    // try all bottom assignments per type and count the valid tilings.
    let cfg = CyclicConfig::standard(4, 2).unwrap();
    let types = ColorSet::subsets_of_size(4, 2);
    let choices: Vec<Vec<ColorSet>> = types
        .iter()
        .map(|&t| {
            let free: Vec<u8> = ColorSet::full(4).minus(t).colors();
            (0..(1u16 << free.len()))
                .map(|mask| {
                    let mut x = ColorSet::EMPTY;
                    for (i, &c) in free.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            x = x.insert(c);
                        }
                    }
                    x
                })
                .collect()
        })
        .collect();
    let mut valid = 0;
    let mut pick = vec![0usize; types.len()];
    loop {
        let list: Vec<(ColorSet, ColorSet)> = types
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, choices[i][pick[i]]))
            .collect();
        if validate_cubes(&cfg, &list).is_valid() {
            valid += 1;
        }
        let mut i = 0;
        loop {
            if i == types.len() {
                break;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == types.len() {
            break;
        }
    }
    assert_eq!(valid, 8, "brute-force tiling count for (4,2)");

    println!("criterion 4 (class/cubillage/criterion counts coincide on 6 instances): PASS");
}

/// Criterion 5: cubillage engine soundness.
#[test]
fn criterion_5_cubillage_soundness() {
    // Extremes validate for d in {2,3}, n <= 7.
    for d in [2usize, 3] {
        for n in d..=7 {
            let cfg = CyclicConfig::standard(n, d).unwrap();
            for side in [Side::Front, Side::Rear] {
                let q = Cubillage::extreme(&cfg, side).unwrap();
                let report = q.validate();
                assert!(report.is_valid(), "({n},{d}) {side:?}: {:?}", report.failures);
                // Tunnel chains have length n-d+1 for every (d-1)-type.
                for s in ColorSet::subsets_of_size(n, d - 1) {
                    assert_eq!(q.tunnel(s).unwrap().len(), n - d + 1);
                }
            }
        }
    }

    // Flips preserve validity and change inversions by exactly one packet.
    for (n, d) in [(4usize, 2usize), (5, 2), (4, 3), (5, 3)] {
        let graph = cubillage_flip_graph(n, d, caps().max_nodes).unwrap();
        for (inv, q) in &graph.nodes {
            let report = q.validate();
            assert!(report.is_valid(), "({n},{d}) {inv:?}: {:?}", report.failures);
            assert_eq!(q.inversions().unwrap(), *inv);
        }
        for &(a, b, p) in &graph.arcs {
            let diff: Vec<ColorSet> = graph.nodes[b]
                .0
                .symmetric_difference(&graph.nodes[a].0)
                .copied()
                .collect();
            assert_eq!(diff, vec![p]);
        }
    }

    // contract(expand(Q, M, side), new color) is the identity on 50
    // randomized (cubillage, membrane, side) cases.
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_809);
    let dims = [(4usize, 2usize), (5, 2), (6, 2), (4, 3), (5, 3)];
    for case in 0..50 {
        let (n, d) = dims[case % dims.len()];
        let cfg = CyclicConfig::standard(n, d).unwrap();
        let mut q = Cubillage::extreme(&cfg, Side::Front).unwrap();
        // Wander a few raising flips up the flip poset.
        for _ in 0..rng.gen_range(0..=3) {
            let flippable: Vec<ColorSet> = ColorSet::subsets_of_size(n, d + 1)
                .into_iter()
                .filter(|&p| {
                    let c = q.capsid(p).unwrap();
                    c.filling == Filling::Standard && c.is_dense()
                })
                .collect();
            if let Some(&p) = flippable.choose(&mut rng) {
                q = q.capsid_flip(p).unwrap();
            }
        }
        let lattice = q.membranes(caps().max_ideals).unwrap();
        let m = &lattice.all()[rng.gen_range(0..lattice.len())];
        let side = if rng.gen_bool(0.5) {
            ExpandSide::High
        } else {
            ExpandSide::Low
        };
        let grown = q.expand(m, side).unwrap();
        assert!(grown.validate().is_valid(), "case {case}");
        let back = match side {
            ExpandSide::High => grown.contract(n as u8 + 1).unwrap(),
            ExpandSide::Low => grown.contract(1).unwrap(),
        };
        assert_eq!(back, q, "case {case} ({n},{d}) {side:?}");
    }

    println!("criterion 5 (cubillage engine soundness): PASS");
}

/// Criterion 6: descend then lift recovers every class, on the branching
/// example and all path graphs up to five vertices, at degree 2.
#[test]
fn criterion_6_round_trip() {
    let mut classes_checked = 0;
    let graphs = vec![
        branching_example(),
        path_graph(3),
        path_graph(4),
        path_graph(5),
    ];
    for g in graphs {
        let sys = system(g, 3);
        let bridge = Bridge::new(&sys, 2, caps());
        let n = bridge.order_space().cortege_count();
        for target in enumerate_upper_classes(&bridge, &caps()).unwrap() {
            let chain = bridge.descend(&target).unwrap();
            // A valid maximal chain: checked by the lift below, which
            // replays it from the all-standard class.
            assert_eq!(chain.flips.len(), n);
            let lift = bridge.lift_chain(&chain).unwrap();
            assert_eq!(lift.assignment, target);
            classes_checked += 1;
        }
    }
    assert!(classes_checked >= 16, "only {classes_checked} classes");
    println!("criterion 6 (descend/lift round trip on {classes_checked} classes): PASS");
}

/// Criterion 7: complementing inversion sets (reversing the labeling and
/// with it every order) is an arc-reversing isomorphism of the flip graph,
/// exchanging source and sink.
#[test]
fn criterion_7_mirror_symmetry() {
    for g in default_corpus() {
        for d in [2usize, 3] {
            let sys = system(g.clone(), d);
            let space = OrderSpace::new(&sys, d);
            let graph = space.flip_graph(&caps()).unwrap();
            let n = space.cortege_count();
            let complement = |inv: &[CortegeId]| -> Vec<CortegeId> {
                (0..n).filter(|p| !inv.contains(p)).collect()
            };
            for node in &graph.nodes {
                assert!(
                    graph.node_index(&complement(node)).is_some(),
                    "missing complement of {node:?} on {:?} d={d}",
                    g.to_doc()
                );
            }
            let arcs: BTreeSet<(usize, usize, CortegeId)> = graph.arcs.iter().copied().collect();
            for &(a, b, p) in &graph.arcs {
                let ca = graph.node_index(&complement(&graph.nodes[a])).unwrap();
                let cb = graph.node_index(&complement(&graph.nodes[b])).unwrap();
                assert!(
                    arcs.contains(&(cb, ca, p)),
                    "arc not reversed on {:?} d={d}",
                    g.to_doc()
                );
            }
            // Source and sink exchange.
            let source = graph.node_index(&[]).unwrap();
            let sink = graph.node_index(&(0..n).collect::<Vec<_>>()).unwrap();
            assert_eq!(graph.node_index(&complement(&graph.nodes[source])), Some(sink));
        }
    }
    println!("criterion 7 (mirror symmetry of the flip graph): PASS");
}
