//! The text graph format and DOT export.
//!
//! Graphs travel as plain text: a `vertices N` header, then one `u v` line
//! per arc, with optional comments, an optional name, and optional vertex
//! labels. Serialization is normalized (sorted arcs, single spaces), so
//! parse and serialize are mutually inverse on normalized files and graphs
//! can be compared as strings.
//!
//! Run with `cargo run --example graph_files`.

use digraph_roots::io::{serialize_graph, to_dot, GraphFile};
use digraph_roots::power::power;

fn main() {
    let text = "\
# a 4-cycle with a chord, hand-labeled
name chorded
vertices 4
label 0 start
label 2 exit
2 3
0 1
1 2
3 0
0 2
";
    let file = GraphFile::parse(text).unwrap();
    println!(
        "parsed '{}': {} vertices, {} arcs, {} labels",
        file.name.as_deref().unwrap_or("?"),
        file.graph.vertex_count(),
        file.graph.arc_count(),
        file.labels.len()
    );

    // Serialization drops comments and sorts arcs; a second round trip is
    // then a fixed point.
    let normalized = file.serialize();
    print!("normalized form:\n{normalized}");
    assert_eq!(GraphFile::parse(&normalized).unwrap().serialize(), normalized);

    // Bad input fails with the offending line number.
    for bad in ["vertices 2\n0 5\n", "vertices 2\n0 1\n0 1\n", "0 1\n"] {
        let err = GraphFile::parse(bad).unwrap_err();
        println!("rejected: {err}");
    }

    // DOT output for rendering with graphviz.
    let square = power(&file.graph, 2).unwrap();
    print!("{}", to_dot(&square, Some("chorded_squared"), None));
    println!("# pipe the block above through `dot -Tsvg` to draw it");

    println!("square as text:\n{}", serialize_graph(&square));
}
