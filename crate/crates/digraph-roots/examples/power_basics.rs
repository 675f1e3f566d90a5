//! Powers of a digraph and what they mean.
//!
//! The k-th power connects `u` to `v` exactly when some directed walk of
//! length `k` runs from `u` to `v`. Walks may repeat vertices, so powers of
//! sparse digraphs can be dense, and the power map is far from injective.
//!
//! Run with `cargo run --example power_basics`.

use digraph_roots::power::{power, verify_root, walk_power_oracle};
use digraph_roots::Digraph;

fn main() {
    // A directed 6-cycle. Its k-th power shifts every vertex k steps around.
    let cycle = Digraph::from_arcs(6, (0..6).map(|v| (v, (v + 1) % 6))).unwrap();
    for k in 1..=6 {
        let p = power(&cycle, k).unwrap();
        let images: Vec<usize> = (0..6).map(|v| p.out_neighbors(v)[0]).collect();
        println!("cycle^{k}: vertex v steps to {images:?}");
    }

    // The 6th power is the identity relation, so the cycle is a 6th root of
    // the loops-everywhere digraph.
    let loops = Digraph::from_arcs(6, (0..6).map(|v| (v, v))).unwrap();
    println!(
        "cycle is a 6th root of six loops: {}",
        verify_root(&cycle, 6, &loops).unwrap()
    );

    // Squaring twice is the same as taking the 4th power.
    let twice = power(&power(&cycle, 2).unwrap(), 2).unwrap();
    assert_eq!(twice, power(&cycle, 4).unwrap());
    println!("(cycle^2)^2 == cycle^4 holds");

    // A branching digraph: walks multiply, so the square gains arcs fast.
    let tree = Digraph::from_arcs(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 0)])
        .unwrap();
    let square = power(&tree, 2).unwrap();
    println!(
        "branching digraph: {} arcs, square has {} arcs",
        tree.arc_count(),
        square.arc_count()
    );

    // The repeated-squaring computation agrees with counting walks one step
    // at a time.
    assert_eq!(square, walk_power_oracle(&tree, 2).unwrap());
    println!("repeated squaring agrees with the step-by-step walk oracle");
}
