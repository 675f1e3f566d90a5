//! Complete subdivisions and recovering their cores.
//!
//! Subdividing a digraph replaces every arc `a -> b` by a fresh vertex `x`
//! and the two arcs `a -> x`, `x -> b`. The result looks anonymous, but the
//! original is not lost: vertices that branch must be core, and in-core /
//! out-of-core status alternates along arcs, so a breadth-first sweep pins
//! every vertex down. This recovery is what lets the class root decision
//! see the components of an instance as the digraphs they encode.
//!
//! Run with `cargo run --example core_recovery`.

use digraph_roots::reduction::subdivide;
use digraph_roots::subdivision::find_core;
use digraph_roots::Digraph;

fn main() {
    let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)]).unwrap();
    let (s, built) = subdivide(&d);
    println!(
        "subdivided {} vertices / {} arcs into {} vertices / {} arcs",
        d.vertex_count(),
        d.arc_count(),
        s.vertex_count(),
        s.arc_count()
    );

    // Recovery from the subdivided digraph alone.
    let found = find_core(&s).unwrap();
    assert_eq!(found.core(), built.core());
    assert_eq!(found.parent(), &d);
    println!("recovered core {:?} and the exact original digraph", found.core());

    // The core is not always unique: an even cycle of thin vertices can be
    // read in two phases. The recovery commits to the one whose core
    // contains the smallest vertex, which keeps round trips exact.
    let two_cycle = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
    let found = find_core(&two_cycle).unwrap();
    println!(
        "2-cycle: core {:?}, parent has {} vertex with a loop",
        found.core(),
        found.parent().vertex_count()
    );

    // Digraphs that are not complete subdivisions are refused with the
    // reason.
    for (name, bad) in [
        ("a loop", Digraph::from_arcs(1, [(0, 0)]).unwrap()),
        ("an odd cycle", Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()),
        ("a single arc", Digraph::from_arcs(2, [(0, 1)]).unwrap()),
    ] {
        let err = find_core(&bad).unwrap_err();
        println!("{name}: {err}");
    }
}
