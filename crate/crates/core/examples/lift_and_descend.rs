//! Between neighboring degrees: a maximal chain of raising flips at degree d
//! lifts to a convex order on the d-corteges, and every convex-order class
//! on the d-corteges descends back to a maximal chain representing it.
//!
//! Run with `cargo run --example lift_and_descend`.

use corteges::bridge::{enumerate_upper_classes, Bridge};
use corteges::cortege::PathSystem;
use corteges::digraph::path_graph;
use corteges::Caps;

fn main() {
    let caps = Caps::default();
    let sys = PathSystem::new(path_graph(5), 3, &caps).unwrap();
    let bridge = Bridge::new(&sys, 2, caps);
    let space = bridge.order_space();

    // A random maximal chain and its lift.
    let chain = bridge.random_chain(42).unwrap();
    println!("random maximal chain ({} flips):", chain.flips.len());
    for &p in &chain.flips {
        println!("  raise {}", space.cortege_name(p));
    }
    let lift = bridge.lift_chain(&chain).unwrap();
    println!(
        "lifts to a convex order on the 2-corteges with {} anti-standard 3-corteges",
        lift.assignment.rank()
    );

    // Descend it again; the chain differs in general but lifts to the same
    // class.
    let back = bridge.descend(&lift.assignment).unwrap();
    let lift2 = bridge.lift_chain(&back).unwrap();
    println!("descended chain lifts to the same class: {}", lift.assignment == lift2.assignment);

    // Sweep every class on the 2-corteges.
    let classes = enumerate_upper_classes(&bridge, &caps).unwrap();
    println!("\nround trip over all {} classes:", classes.len());
    let mut ok = 0;
    for target in &classes {
        let chain = bridge.descend(target).unwrap();
        if bridge.lift_chain(&chain).unwrap().assignment == *target {
            ok += 1;
        }
    }
    println!("{ok}/{} classes recovered exactly", classes.len());

    // Ideal compatibility: the all-standard class is compatible with the
    // empty ideal of any class and extends to a chain representing it.
    let sigma = corteges::orders::TypeAssignment::all_standard(2);
    let report = bridge
        .compatibility_check(&sigma, &Default::default(), &classes[0])
        .unwrap();
    println!(
        "\nempty ideal: ideal {}, compatible {}, containing chain found {:?}",
        report.is_ideal, report.compatible, report.chain_found
    );
}
