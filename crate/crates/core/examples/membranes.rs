//! Membranes of a cubillage: enumerating them as a distributive lattice and
//! using one for an expansion/contraction round trip.
//!
//! Run with `cargo run --example membranes`.

use corteges::cubillage::{Cubillage, ExpandSide, Side};
use corteges::zonotope::CyclicConfig;
use corteges::Caps;

fn main() {
    let caps = Caps::default();
    let cfg = CyclicConfig::standard(4, 2).unwrap();
    let q = Cubillage::extreme(&cfg, Side::Front).unwrap();

    let lattice = q.membranes(caps.max_ideals).unwrap();
    println!("membranes of the standard cubillage of Z(4,2): {}", lattice.len());
    for m in lattice.all() {
        let ideal: Vec<String> = m.ideal_types.iter().map(|t| t.to_string()).collect();
        println!("  ideal {{{}}}, {} facets", ideal.join(", "), m.facets.len());
    }
    println!(
        "minimum = front side (empty ideal): {}",
        lattice.front().ideal_types.is_empty()
    );
    println!(
        "maximum = rear side (all {} cubes): {}",
        q.cube_count(),
        lattice.rear().ideal_types.len() == q.cube_count()
    );

    // Meet and join act on ideals by intersection and union.
    let a = 1.min(lattice.len() - 1);
    let b = lattice.len() - 2;
    let meet = lattice.meet(a, b).unwrap();
    let join = lattice.join(a, b).unwrap();
    println!(
        "meet of membranes {a} and {b} has {} cubes before it, join {}",
        lattice.all()[meet].ideal_types.len(),
        lattice.all()[join].ideal_types.len()
    );

    // Expand along a middle membrane and contract the new color again.
    let m = &lattice.all()[lattice.len() / 2];
    for (side, new_color) in [(ExpandSide::High, 5u8), (ExpandSide::Low, 1u8)] {
        let grown = q.expand(m, side).unwrap();
        println!(
            "\nexpanded {side:?}: {} cubes on {} colors, valid: {}",
            grown.cube_count(),
            grown.n(),
            grown.validate().is_valid()
        );
        let back = grown.contract(new_color).unwrap();
        println!("contracting color {new_color} restores the original: {}", back == q);
    }
}
