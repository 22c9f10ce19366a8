//! Property tests over randomized small instances.

use std::collections::BTreeSet;

use proptest::prelude::*;

use corteges::colorset::ColorSet;
use corteges::cortege::PathSystem;
use corteges::cubillage::{ziegler_check, Cubillage, Filling, Side};
use corteges::digraph::Digraph;
use corteges::orders::{Extreme, OrderSpace};
use corteges::zonotope::CyclicConfig;
use corteges::Caps;

/// A random DAG on `n <= 4` vertices: an edge subset of the increasing
/// complete graph (every DAG is isomorphic to one of these).
fn dag_strategy() -> impl Strategy<Value = Digraph> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let pair_count = n * (n - 1) / 2;
            (Just(n), 0u32..(1 << pair_count))
        })
        .prop_map(|(n, mask)| {
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let mut edges = Vec::new();
            let mut bit = 0;
            for i in 1..=n {
                for j in (i + 1)..=n {
                    if mask >> bit & 1 == 1 {
                        edges.push((i.to_string(), j.to_string()));
                    }
                    bit += 1;
                }
            }
            Digraph::new(names, &edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The lexicographic extremes are convex with all corteges standard
    /// (min) or anti-standard (max).
    #[test]
    fn extreme_orders_are_extreme(g in dag_strategy()) {
        let sys = PathSystem::new(g, 2, &Caps::default()).unwrap();
        let space = OrderSpace::new(&sys, 2);
        let min = space.check_convex(&space.extreme_order(Extreme::Min)).unwrap();
        prop_assert!(min.anti.is_empty());
        let max = space.check_convex(&space.extreme_order(Extreme::Max)).unwrap();
        prop_assert_eq!(max.anti.len(), space.cortege_count());
    }

    /// Greedy raising (always flip the first dense standard cortege) climbs
    /// from the bottom class to the top in exactly one step per cortege.
    #[test]
    fn greedy_raising_reaches_the_top(g in dag_strategy()) {
        let sys = PathSystem::new(g, 2, &Caps::default()).unwrap();
        let space = OrderSpace::new(&sys, 2);
        let mut sigma = corteges::orders::TypeAssignment::all_standard(2);
        let total = space.cortege_count();
        for _ in 0..total {
            let dense = space.dense_corteges(&sigma, false).unwrap();
            prop_assert!(!dense.is_empty());
            sigma = space.apply_flip(&sigma, dense[0]).unwrap();
        }
        prop_assert_eq!(sigma.anti.len(), total);
        prop_assert!(space.dense_corteges(&sigma, false).unwrap().is_empty());
    }

    /// Random capsid-flip walks keep the inversion set realizable in the
    /// prefix/suffix sense and the cube set geometrically valid.
    #[test]
    fn random_flip_walks_stay_realizable(
        n in 3usize..=5,
        steps in prop::collection::vec(0usize..32, 0..6),
    ) {
        let cfg = CyclicConfig::standard(n, 2).unwrap();
        let mut q = Cubillage::extreme(&cfg, Side::Front).unwrap();
        for pick in steps {
            let packets: Vec<ColorSet> = ColorSet::subsets_of_size(n, 3)
                .into_iter()
                .filter(|&p| {
                    let c = q.capsid(p).unwrap();
                    c.filling == Filling::Standard && c.is_dense()
                })
                .collect();
            if packets.is_empty() {
                break;
            }
            q = q.capsid_flip(packets[pick % packets.len()]).unwrap();
            let inv: BTreeSet<ColorSet> = q.inversions().unwrap();
            prop_assert!(ziegler_check(&inv, n, 2));
            prop_assert!(q.validate().is_valid());
        }
    }
}
