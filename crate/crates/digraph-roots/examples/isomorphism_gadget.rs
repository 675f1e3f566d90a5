//! Root existence encodes isomorphism, and back again.
//!
//! `reduce(d1, d2, k)` builds a k-component digraph that has a k-th root
//! exactly when `d1` and `d2` are isomorphic. One direction is
//! constructive: given component isomorphisms, `union_root` writes a root
//! down. The other direction is the punchline: any root of such an
//! instance, however it was found, can be decompiled back into explicit
//! isomorphisms between the components.
//!
//! Run with `cargo run --example isomorphism_gadget`.

use digraph_roots::power::verify_root;
use digraph_roots::reduction::reduce;
use digraph_roots::subdivision::{decide_root_in_class, extract_isomorphisms, ClassRootDecision};
use digraph_roots::Digraph;

fn main() {
    // Two labelings of the same digraph: a 4-cycle with one chord.
    let d1 = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
    let d2 = Digraph::from_arcs(4, [(2, 0), (0, 3), (3, 1), (1, 2), (2, 3)]).unwrap();

    let instance = reduce(&d1, &d2, 2).unwrap();
    instance.verify().unwrap();
    println!(
        "instance: {} vertices, {} arcs, {} components",
        instance.graph.vertex_count(),
        instance.graph.arc_count(),
        instance.k
    );

    // Deciding root existence here costs one isomorphism test per extra
    // component; no root search happens at all.
    match decide_root_in_class(&instance.graph, 2).unwrap() {
        ClassRootDecision::Root(root) => {
            assert!(verify_root(&root, 2, &instance.graph).unwrap());
            println!("root found, {} arcs, verified by squaring", root.arc_count());

            // Read the isomorphism back off the root.
            let maps = extract_isomorphisms(&instance.graph, &root, 2).unwrap();
            println!(
                "extracted component isomorphism: {:?}",
                maps[0].as_slice()
            );
        }
        ClassRootDecision::NoRoot { .. } => unreachable!("the components are isomorphic"),
    }

    // Perturb d2 by one arc and the root disappears: turning the chord
    // around makes a 2-cycle, and d1 has none.
    let d3 = Digraph::from_arcs(4, [(2, 0), (0, 3), (3, 1), (1, 2), (2, 1)]).unwrap();
    let instance = reduce(&d1, &d3, 2).unwrap();
    match decide_root_in_class(&instance.graph, 2).unwrap() {
        ClassRootDecision::Root(_) => unreachable!("the components differ"),
        ClassRootDecision::NoRoot { components } => {
            println!(
                "after one arc change: no square root, components {} and {} differ",
                components.0, components.1
            );
        }
    }

    // The same game at higher order: five components, fifth root.
    let instance = reduce(&d1, &d2, 5).unwrap();
    match decide_root_in_class(&instance.graph, 5).unwrap() {
        ClassRootDecision::Root(root) => {
            assert!(verify_root(&root, 5, &instance.graph).unwrap());
            println!(
                "order 5: instance on {} vertices has a verified 5th root",
                instance.graph.vertex_count()
            );
        }
        ClassRootDecision::NoRoot { .. } => unreachable!(),
    }
}
