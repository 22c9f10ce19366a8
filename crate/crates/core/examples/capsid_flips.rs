//! Capsid flips on cubillages: the flip graph over all cubillages of
//! `Z(n,d)`, graded by inversion sets, cross-checked against the
//! prefix/suffix realizability criterion.
//!
//! Run with `cargo run --example capsid_flips`.

use corteges::colorset::ColorSet;
use corteges::cubillage::{
    cubillage_flip_graph, ziegler_count, Cubillage, Filling, Side,
};
use corteges::zonotope::CyclicConfig;

fn main() {
    let cfg = CyclicConfig::standard(4, 2).unwrap();
    let q = Cubillage::extreme(&cfg, Side::Front).unwrap();

    println!("capsids of the standard cubillage of Z(4,2):");
    for packet in ColorSet::subsets_of_size(4, 3) {
        let c = q.capsid(packet).unwrap();
        println!(
            "  packet {packet}: {:?} filling, {}",
            c.filling,
            if c.is_dense() { "dense" } else { "loose" }
        );
    }

    let first = ColorSet::subsets_of_size(4, 3)
        .into_iter()
        .find(|&p| {
            let c = q.capsid(p).unwrap();
            c.filling == Filling::Standard && c.is_dense()
        })
        .unwrap();
    let flipped = q.capsid_flip(first).unwrap();
    println!(
        "\nraising flip on {first}: inversions {:?} -> {:?}",
        q.inversions().unwrap(),
        flipped.inversions().unwrap()
    );

    for (n, d) in [(4usize, 2usize), (5, 2), (5, 3)] {
        let graph = cubillage_flip_graph(n, d, 50_000).unwrap();
        let consistent = ziegler_count(n, d).unwrap();
        println!(
            "Z({n},{d}): {} cubillages, {} flips; prefix/suffix-consistent packet sets: {consistent}",
            graph.nodes.len(),
            graph.arcs.len()
        );
        assert_eq!(graph.nodes.len(), consistent);
    }
}
