//! The lexicographic extreme orders: ranking corteges by their endpoint
//! labels under a forward topological labeling makes every cortege standard;
//! the reverse labeling makes every cortege anti-standard.
//!
//! Run with `cargo run --example extreme_orders`.

use corteges::cortege::PathSystem;
use corteges::digraph::Digraph;
use corteges::orders::{Extreme, OrderSpace};
use corteges::Caps;

fn main() {
    // A diamond with a tail: 1 -> {2,3} -> 4 -> 5.
    let g = Digraph::new(
        ["1", "2", "3", "4", "5"].iter().map(|s| s.to_string()).collect(),
        &[
            ("1".into(), "2".into()),
            ("1".into(), "3".into()),
            ("2".into(), "4".into()),
            ("3".into(), "4".into()),
            ("4".into(), "5".into()),
        ],
    )
    .unwrap();
    let caps = Caps::default();
    let sys = PathSystem::new(g, 2, &caps).unwrap();
    let space = OrderSpace::new(&sys, 2);

    for (side, name) in [(Extreme::Min, "minimal"), (Extreme::Max, "maximal")] {
        let order = space.extreme_order(side);
        let assignment = space.check_convex(&order).unwrap();
        println!(
            "{name} order ({} of {} corteges anti-standard):",
            assignment.rank(),
            space.cortege_count()
        );
        for &e in &order.ranking {
            println!("  {}", space.element_name(e));
        }
        println!();
    }
}
