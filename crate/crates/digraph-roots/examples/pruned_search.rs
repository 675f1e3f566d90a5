//! Backtracking root search with constraint propagation.
//!
//! Exhaustive enumeration dies at 6 vertices (2^36 candidates). The pruned
//! search instead keeps a three-valued arc matrix and squeezes it between
//! two bounds after every decision: arcs already committed must not create
//! walks the target lacks, and arcs still possible must cover every walk
//! the target has. The search is complete, so within budget its answers are
//! definitive in both directions.
//!
//! Run with `cargo run --release --example pruned_search`.

use digraph_roots::power::power;
use digraph_roots::reduction::reduce;
use digraph_roots::rootsearch::{backtracking_root_search, SearchStatus};
use digraph_roots::Digraph;

fn main() {
    // Square a 9-vertex digraph and ask for the square back. The search
    // need not return the original root, any root will do.
    let d = Digraph::from_arcs(
        9,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6), (6, 7), (7, 8), (8, 3)],
    )
    .unwrap();
    let squared = power(&d, 2).unwrap();
    let outcome = backtracking_root_search(&squared, 2, 1_000_000).unwrap();
    assert_eq!(outcome.status, SearchStatus::RootFound);
    let witness = outcome.witness.unwrap();
    assert_eq!(power(&witness, 2).unwrap(), squared);
    println!(
        "found a square root of a 9-vertex square after {} search node(s)",
        outcome.stats.nodes
    );

    // A no instance: `reduce` builds a digraph with a square root exactly
    // when its two inputs are isomorphic, and a loop vertex is not
    // isomorphic to a plain one. The search has to prove the negative.
    let with_loop = Digraph::from_arcs(1, [(0, 0)]).unwrap();
    let without = Digraph::empty(1);
    let instance = reduce(&with_loop, &without, 2).unwrap();
    println!(
        "built a 2-component instance on {} vertices from a loop and a plain vertex",
        instance.graph.vertex_count()
    );
    let outcome = backtracking_root_search(&instance.graph, 2, 100_000_000).unwrap();
    assert_eq!(outcome.status, SearchStatus::NoRoot);
    println!(
        "proved it has no square root after {} search node(s)",
        outcome.stats.nodes
    );

    // Budgets make the search safe to run on anything: it reports
    // exhaustion instead of hanging.
    let outcome = backtracking_root_search(&instance.graph, 2, 3).unwrap();
    assert_eq!(outcome.status, SearchStatus::BudgetExhausted);
    println!("with a budget of 3 nodes the same question comes back undecided");
}
