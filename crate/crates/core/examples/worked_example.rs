//! End-to-end tour on a five-vertex branching graph with two routes,
//! 1-2-3-4 and 1-2-3-4'.
//!
//! Builds a convex order on its nine paths, classifies the seven 2-corteges,
//! inspects density, and walks the two lowering flips down to the minimal
//! class. Run with `cargo run --example worked_example`.

use corteges::cortege::PathSystem;
use corteges::digraph::branching_example;
use corteges::orders::{ConvexOrder, OrderSpace};
use corteges::Caps;

fn main() {
    let caps = Caps::default();
    let sys = PathSystem::new(branching_example(), 2, &caps).unwrap();
    let space = OrderSpace::new(&sys, 2);

    println!("paths:");
    for p in sys.paths() {
        println!("  {}", sys.graph().path_name(p));
    }
    println!("2-corteges:");
    for c in &sys.level(2).corteges {
        println!("  {}", sys.cortege_name(c));
    }

    // A convex order given by an explicit ranking of the paths:
    // p2 < p1*p2 < p2*r < R' < p1 < R < p2*q < q < r.
    let ranked = [
        vec!["2", "3"],
        vec!["1", "2", "3"],
        vec!["2", "3", "4'"],
        vec!["1", "2", "3", "4'"],
        vec!["1", "2"],
        vec!["1", "2", "3", "4"],
        vec!["2", "3", "4"],
        vec!["3", "4"],
        vec!["3", "4'"],
    ];
    let ranking = ranked
        .iter()
        .map(|seq| {
            let parts = vec![seq.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
            sys.cortege_from_names(&parts).unwrap().1
        })
        .collect();
    let order = ConvexOrder { d: 2, ranking };
    let mut sigma = space.check_convex(&order).unwrap();
    println!("\nthe order is convex; anti-standard corteges:");
    for &p in &sigma.anti {
        println!("  {}", space.cortege_name(p));
    }

    // Lower the dense anti-standard corteges one by one.
    while !sigma.anti.is_empty() {
        let dag = space.forced_dag(&sigma).unwrap();
        for &p in sigma.anti.clone().iter() {
            match space.separator(&dag, &sigma, p) {
                Some((gap, r)) => println!(
                    "  {} is loose: {} stably separates gap {}",
                    space.cortege_name(p),
                    space.element_name(r),
                    gap + 1
                ),
                None => println!("  {} is dense", space.cortege_name(p)),
            }
        }
        let dense = space.dense_corteges(&sigma, true).unwrap();
        let p = dense[0];
        println!("lowering flip on {}", space.cortege_name(p));
        sigma = space.apply_flip(&sigma, p).unwrap();
    }
    println!("reached the all-standard (minimal) class");
}
