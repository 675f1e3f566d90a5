//! Free paths: the structure that makes roots readable.
//!
//! A free path in a root is a directed path on k distinct vertices that its
//! power cannot tell apart from a single arc pattern: inside the power,
//! every vertex of the path is forced to play a fixed position. Starting
//! from one such path, cover propagation tiles the whole root with disjoint
//! free paths, each visiting every component exactly once and in the same
//! order. Those crossings are exactly where component isomorphisms come
//! from.
//!
//! Run with `cargo run --example free_path_cover`.

use digraph_roots::reduction::reduce;
use digraph_roots::subdivision::{
    decide_root_in_class, find_core, propagate_cover, seed_free_path, ClassRootDecision,
};
use digraph_roots::Digraph;

fn main() {
    let d1 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0), (0, 0)]).unwrap();
    let d2 = Digraph::from_arcs(3, [(1, 2), (2, 0), (0, 1), (1, 1)]).unwrap();
    let k = 3;

    let instance = reduce(&d1, &d2, k).unwrap();
    let root = match decide_root_in_class(&instance.graph, k).unwrap() {
        ClassRootDecision::Root(root) => root,
        ClassRootDecision::NoRoot { .. } => unreachable!("inputs are isomorphic"),
    };
    println!(
        "instance on {} vertices, root with {} arcs",
        instance.graph.vertex_count(),
        root.arc_count()
    );

    // The seed: sources of the instance (in-degree zero vertices) must form
    // a free path in any root. No search involved, pure forcing.
    let seed = seed_free_path(&instance.graph, &root, k).unwrap();
    println!("seed path through the sources: {:?}", seed.vertices());

    // Propagation grows the seed into a partition of all vertices. It
    // leans on the core structure of the instance, so that comes first.
    let witness = find_core(&instance.graph).unwrap();
    let cover = propagate_cover(&instance.graph, &root, k, &witness, &seed).unwrap();
    println!(
        "cover: {} disjoint paths of {} vertices each",
        cover.paths().len(),
        k
    );
    println!("component visiting order: {:?}", cover.component_order());
    for path in cover.paths().iter().take(6) {
        println!("  {:?}", path.vertices());
    }
    if cover.paths().len() > 6 {
        println!("  ... and {} more", cover.paths().len() - 6);
    }

    let covered: usize = cover.paths().len() * k as usize;
    assert_eq!(covered, instance.graph.vertex_count());
    println!("every vertex lies on exactly one path");
}
