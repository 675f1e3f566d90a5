//! Directed graphs under the k-th power map.
//!
//! The k-th power of a digraph connects `u` to `v` exactly when a directed
//! walk of length `k` runs from `u` to `v`; a k-th root of `D` is any
//! digraph whose k-th power is `D`. This crate computes powers, verifies
//! and searches for roots, and implements the constructions that make root
//! existence and digraph isomorphism interreducible: from two digraphs it
//! builds a k-component instance that has a k-th root precisely when the
//! two are isomorphic, and for instances of that shape it decides root
//! existence via isomorphism tests and reads component isomorphisms back
//! off any given root.
//!
//! Modules:
//! - [`digraph`]: the adjacency representation and vertex bijections.
//! - [`power`]: powers by repeated squaring, a slow independent oracle,
//!   and root verification.
//! - [`rootsearch`]: complete root search, exhaustive and pruned.
//! - [`isomorphism`]: color refinement, a complete isomorphism search, and
//!   a brute-force oracle.
//! - [`reduction`]: suspensions, complete subdivisions, the two-digraph
//!   instance builder, the explicit root of a union of isomorphic parts,
//!   and the reverse component split.
//! - [`subdivision`]: core recovery, free paths, cover propagation,
//!   isomorphism extraction from a root, and the class root decision.
//! - [`io`]: the text graph file format and DOT export.
//! - [`gen`]: seeded random digraphs and relabelings.
//! - [`experiment`]: seeded end-to-end trials comparing root existence of
//!   built instances against isomorphism of the sampled pairs.
//! - [`cli`]: the command-line front end over all of the above.

pub mod cli;
pub mod digraph;
pub mod error;
pub mod experiment;
pub mod gen;
pub mod io;
pub mod isomorphism;
pub mod power;
pub mod reduction;
pub mod rootsearch;
pub mod subdivision;

pub use digraph::{disjoint_union, Digraph, VertexBijection};
pub use error::{Error, Result};
