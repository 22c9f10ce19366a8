//! Builds the flip graph of convex-order classes for a digraph, checks the
//! poset structure (unique bottom and top, unit rank steps, flips always
//! available in between, graded chains), and prints the graph as DOT.
//!
//! Run with `cargo run --example flip_poset`.

use corteges::cortege::PathSystem;
use corteges::digraph::branching_example;
use corteges::emit::flip_graph_dot;
use corteges::orders::OrderSpace;
use corteges::Caps;

fn main() {
    let caps = Caps::default();
    let sys = PathSystem::new(branching_example(), 2, &caps).unwrap();
    let space = OrderSpace::new(&sys, 2);

    let graph = space.flip_graph(&caps).unwrap();
    println!(
        "{} classes, {} raising flips, top rank {}",
        graph.nodes.len(),
        graph.arcs.len(),
        space.cortege_count()
    );

    let report = space.verify_poset(&graph).unwrap();
    println!("acyclic: {}", report.acyclic);
    println!("unique all-standard source: {}", report.unique_source_all_standard);
    println!("unique all-anti-standard sink: {}", report.unique_sink_all_anti);
    println!("arcs raise rank by one: {}", report.arcs_raise_rank_by_one);
    println!("lowering flip at every non-minimum: {}", report.every_nonminimal_has_lowering);
    println!("raising flip at every non-maximum: {}", report.every_nonmaximal_has_raising);
    println!("all maximal chains have length {}: {}", report.expected_chain_length, report.chains_graded);
    println!("inversion-complement is an arc-reversing involution: {}", report.mirror_involution);

    println!("\n{}", flip_graph_dot(&sys, &graph));
}
