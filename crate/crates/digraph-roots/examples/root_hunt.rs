//! Exhaustive root enumeration on very small digraphs.
//!
//! On n vertices there are 2^(n^2) digraphs, so up to n = 5 we can simply
//! try them all. This is the ground truth the cleverer searches are checked
//! against.
//!
//! Run with `cargo run --example root_hunt`.

use digraph_roots::rootsearch::exhaustive_roots;
use digraph_roots::Digraph;

fn main() {
    // Two loops have exactly two square roots: the loops themselves and the
    // 2-cycle (going around twice lands you back home).
    let loops = Digraph::from_arcs(2, [(0, 0), (1, 1)]).unwrap();
    let roots = exhaustive_roots(&loops, 2).unwrap();
    println!("square roots of two loops:");
    for r in &roots {
        println!("  {:?}", r.arcs().collect::<Vec<_>>());
    }

    // A single arc has no square root at all: any root arc u -> v forces a
    // length-2 walk, but the single arc admits no midpoint.
    let arc = Digraph::from_arcs(2, [(0, 1)]).unwrap();
    println!(
        "square roots of a single arc: {}",
        exhaustive_roots(&arc, 2).unwrap().len()
    );

    // Roots are not unique in general. Count square roots of all sixteen
    // 2-vertex digraphs.
    println!("square root counts over every 2-vertex digraph:");
    for mask in 0u32..16 {
        let arcs = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .enumerate()
            .filter_map(|(i, a)| (mask >> i & 1 == 1).then_some(a));
        let d = Digraph::from_arcs(2, arcs).unwrap();
        let count = exhaustive_roots(&d, 2).unwrap().len();
        println!("  {:?}: {count}", d.arcs().collect::<Vec<_>>());
    }

    // Higher orders thin the root supply: complete digraphs keep roots at
    // every order, most digraphs lose them.
    let complete = Digraph::from_arcs(3, (0..3).flat_map(|u| (0..3).map(move |v| (u, v)))).unwrap();
    for k in [2, 3, 5, 8] {
        let count = exhaustive_roots(&complete, k).unwrap().len();
        println!("roots of order {k} of the complete 3-vertex digraph: {count}");
    }
}
