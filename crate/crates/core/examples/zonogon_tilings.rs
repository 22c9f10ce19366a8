//! Standard and anti-standard cubillages of `Z(n,d)`, the validity report,
//! the natural order on cubes, and tunnels.
//!
//! Run with `cargo run --example zonogon_tilings`.

use corteges::colorset::ColorSet;
use corteges::cubillage::{Cubillage, Side};
use corteges::zonotope::CyclicConfig;

fn main() {
    let cfg = CyclicConfig::standard(5, 2).unwrap();
    println!("configuration parameters: {:?}", cfg.params());

    for (side, name) in [(Side::Front, "standard"), (Side::Rear, "anti-standard")] {
        let q = Cubillage::extreme(&cfg, side).unwrap();
        println!("\n{name} cubillage of Z(5,2): {} rhombi", q.cube_count());
        for (t, x) in q.cubes() {
            println!("  ({x}|{t})");
        }
        let report = q.validate();
        println!("valid: {}", report.is_valid());
        println!("inversions: {:?}", q.inversions().unwrap());
    }

    let q = Cubillage::extreme(&cfg, Side::Front).unwrap();
    let order = q.natural_order().unwrap();
    println!("\nnatural order arcs (shared rear/front facets):");
    for &(a, b) in &order.arcs {
        println!("  {} -> {}", order.types[a], order.types[b]);
    }

    println!("\ntunnels (cube chains of a fixed (d-1)-type):");
    for s in [ColorSet::singleton(1), ColorSet::singleton(3)] {
        let chain = q.tunnel(s).unwrap();
        let names: Vec<String> = chain.iter().map(|t| t.to_string()).collect();
        println!("  {s}: {}", names.join(" -> "));
    }

    // A three-dimensional instance.
    let cfg = CyclicConfig::standard(5, 3).unwrap();
    let q = Cubillage::extreme(&cfg, Side::Front).unwrap();
    println!(
        "\nstandard cubillage of Z(5,3): {} cubes, valid: {}",
        q.cube_count(),
        q.validate().is_valid()
    );
}
