//! Constructions that tie k-th roots to isomorphism testing: suspensions,
//! complete subdivisions, the k-component instance built from two input
//! digraphs, the explicit root of a disjoint union of isomorphic parts, and
//! the reverse split that turns a class instance into a single isomorphism
//! question between two digraphs.

use std::fmt;

use crate::digraph::{disjoint_union, Digraph, VertexBijection};
use crate::error::{Error, Result};
use crate::subdivision::{find_core, CoreWitness};

/// A digraph extended by a source and a hub.
///
/// The source sends an arc to every input vertex and receives none; the hub
/// exchanges arcs with every input vertex in both directions. Input vertices
/// keep their indices, the source is `n`, the hub is `n + 1`.
#[derive(Debug, Clone)]
pub struct Suspension {
    pub graph: Digraph,
    pub source: usize,
    pub hub: usize,
}

/// Extends `d` by a source and a hub as described on [`Suspension`].
///
/// The result has `n + 2` vertices and `m + 3n` arcs and is weakly
/// connected. The empty digraph is rejected: without input vertices the
/// source would have no outgoing arcs, which downstream constructions
/// forbid.
pub fn suspend(d: &Digraph) -> Result<Suspension> {
    let n = d.vertex_count();
    if n == 0 {
        return Err(Error::EmptyDigraph { context: "suspend" });
    }
    let source = n;
    let hub = n + 1;
    let mut arcs: Vec<(usize, usize)> = d.arcs().collect();
    for a in 0..n {
        arcs.push((source, a));
        arcs.push((hub, a));
        arcs.push((a, hub));
    }
    Ok(Suspension {
        graph: Digraph::from_arcs(n + 2, arcs)?,
        source,
        hub,
    })
}

/// Replaces every arc `u -> v` by a fresh vertex `x` and the two arcs
/// `u -> x -> v`.
///
/// Original vertices keep their indices and form the core of the result;
/// the fresh vertices are appended in ascending order of the arcs they
/// replace. The returned witness records that correspondence exactly.
pub fn subdivide(d: &Digraph) -> (Digraph, CoreWitness) {
    let n = d.vertex_count();
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    let mut new_arcs = Vec::with_capacity(2 * arcs.len());
    for (i, &(u, v)) in arcs.iter().enumerate() {
        new_arcs.push((u, n + i));
        new_arcs.push((n + i, v));
    }
    let graph = Digraph::from_arcs(n + arcs.len(), new_arcs)
        .expect("subdivision arcs stay in range");
    let witness = CoreWitness::new(
        (0..n).collect(),
        (n..n + arcs.len()).collect(),
        d.clone(),
        arcs,
    );
    (graph, witness)
}

/// Where a vertex of a [`ReductionInstance`] came from.
///
/// Subdivision arcs are given in component-local indices (the suspension's
/// numbering, which its subdivision preserves on core vertices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexRole {
    /// Vertex `a` of the input digraph this copy was built from.
    Original(usize),
    /// The added vertex with in-degree zero.
    Source,
    /// The added vertex exchanging arcs with every original in both
    /// directions.
    Hub,
    /// The vertex subdividing the recorded suspension arc.
    Subdivision(usize, usize),
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::Original(a) => write!(f, "original {a}"),
            VertexRole::Source => write!(f, "source"),
            VertexRole::Hub => write!(f, "hub"),
            VertexRole::Subdivision(a, b) => write!(f, "subdivision {a}->{b}"),
        }
    }
}

/// Provenance of one vertex of a [`ReductionInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexProvenance {
    /// 1-based copy index; copy 1 stems from the first input digraph, all
    /// later copies from the second.
    pub copy: usize,
    pub role: VertexRole,
}

impl fmt::Display for VertexProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "copy {}: {}", self.copy, self.role)
    }
}

/// The instance produced by [`reduce`]: a digraph whose k-th-root existence
/// encodes whether the two inputs are isomorphic, with per-vertex
/// provenance.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub graph: Digraph,
    pub k: u32,
    pub provenance: Vec<VertexProvenance>,
}

impl ReductionInstance {
    /// Checks the structural invariants of a well-formed instance: one
    /// weakly connected component per copy index, source roles matching the
    /// zero-in-degree vertices exactly (one per component), positive
    /// out-degrees, and each component a complete subdivision whose core
    /// complement is exactly its subdivision-role vertices.
    pub fn verify(&self) -> Result<()> {
        let n = self.graph.vertex_count();
        if self.provenance.len() != n {
            return Err(Error::VertexCountMismatch {
                left: n,
                right: self.provenance.len(),
            });
        }
        for v in 0..n {
            if self.graph.out_degree(v) == 0 {
                return Err(Error::ZeroOutDegree { vertex: v });
            }
            let source_role = self.provenance[v].role == VertexRole::Source;
            if source_role != (self.graph.in_degree(v) == 0) {
                return Err(Error::HypothesisViolation {
                    check: "source roles must coincide with the zero-in-degree vertices",
                    witness: Some(v),
                });
            }
        }
        let comps = self.graph.weak_components();
        if comps.len() != self.k as usize {
            return Err(Error::ComponentCount {
                expected: self.k as usize,
                found: comps.len(),
            });
        }
        let mut copy_seen = vec![false; comps.len()];
        for (ci, comp) in comps.iter().enumerate() {
            let copy = self.provenance[comp[0]].copy;
            if copy == 0 || copy > comps.len() || copy_seen[copy - 1] {
                return Err(Error::HypothesisViolation {
                    check: "each copy index in 1..=k must label exactly one component",
                    witness: Some(comp[0]),
                });
            }
            copy_seen[copy - 1] = true;
            for &v in comp {
                if self.provenance[v].copy != copy {
                    return Err(Error::HypothesisViolation {
                        check: "a component must carry a single copy index",
                        witness: Some(v),
                    });
                }
            }
            let sources = comp.iter().filter(|&&v| self.graph.in_degree(v) == 0).count();
            if sources != 1 {
                return Err(Error::SourceCountPerComponent {
                    component: ci,
                    count: sources,
                });
            }
            let (sub, _) = self.graph.induced(comp)?;
            let witness = find_core(&sub)?;
            let expected: Vec<usize> = (0..comp.len())
                .filter(|&i| {
                    matches!(self.provenance[comp[i]].role, VertexRole::Subdivision(..))
                })
                .collect();
            if witness.complement() != expected {
                return Err(Error::HypothesisViolation {
                    check: "subdivision-role vertices must form the core complement",
                    witness: expected.first().map(|&i| comp[i]),
                });
            }
        }
        Ok(())
    }
}

/// Builds the k-component instance whose k-th-root existence is equivalent
/// to `d1 ≅ d2`.
///
/// Copy 1 is the subdivided suspension of `d1`; copies `2..=k` are
/// subdivided suspensions of `d2`. Components are concatenated in copy
/// order, so component `i` occupies one contiguous index block of
/// `4n_i + m_i + 2` vertices with `2(m_i + 3n_i)` arcs.
pub fn reduce(d1: &Digraph, d2: &Digraph, k: u32) -> Result<ReductionInstance> {
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    if d1.vertex_count() == 0 || d2.vertex_count() == 0 {
        return Err(Error::EmptyDigraph { context: "reduce" });
    }
    let mut parts = Vec::with_capacity(k as usize);
    let mut provenance = Vec::new();
    for copy in 1..=k as usize {
        let base = if copy == 1 { d1 } else { d2 };
        let suspension = suspend(base)?;
        let (part, witness) = subdivide(&suspension.graph);
        for v in 0..part.vertex_count() {
            let role = if v < suspension.source {
                VertexRole::Original(v)
            } else if v == suspension.source {
                VertexRole::Source
            } else if v == suspension.hub {
                VertexRole::Hub
            } else {
                let (a, b) = witness.thin_arcs()[v - suspension.hub - 1];
                VertexRole::Subdivision(a, b)
            };
            provenance.push(VertexProvenance { copy, role });
        }
        parts.push(part);
    }
    let (graph, _) = disjoint_union(&parts)?;
    Ok(ReductionInstance { graph, k, provenance })
}

/// Builds a k-th root of the disjoint union of `parts` from isomorphisms
/// `isos[i]` mapping `reference` onto `parts[i]`.
///
/// For every reference vertex `a` the root contains the path
/// `isos[0](a) -> isos[1](a) -> ... -> isos[k-1](a)` (in disjoint-union
/// numbering), and for every reference arc `a -> b` the wrap arc from
/// `isos[k-1](a)` to `isos[0](b)`. Taking the k-th power walks each path
/// once and wraps once, landing exactly on the image of `a`'s
/// out-neighborhood, so the result is a root by construction; callers can
/// confirm with `verify_root`.
pub fn union_root(
    reference: &Digraph,
    parts: &[Digraph],
    isos: &[VertexBijection],
) -> Result<Digraph> {
    if parts.len() != isos.len() {
        return Err(Error::PartCountMismatch {
            parts: parts.len(),
            isos: isos.len(),
        });
    }
    if parts.is_empty() {
        return Err(Error::EmptyUnion);
    }
    let n = reference.vertex_count();
    for (i, (part, iso)) in parts.iter().zip(isos).enumerate() {
        if iso.len() != n || part.vertex_count() != n {
            return Err(Error::NotAnIsomorphism {
                index: i,
                reason: format!(
                    "vertex counts differ: reference {n}, part {}, map {}",
                    part.vertex_count(),
                    iso.len()
                ),
            });
        }
        if part.arc_count() != reference.arc_count() {
            return Err(Error::NotAnIsomorphism {
                index: i,
                reason: format!(
                    "arc counts differ: reference {}, part {}",
                    reference.arc_count(),
                    part.arc_count()
                ),
            });
        }
        for (u, v) in reference.arcs() {
            if !part.has_arc(iso.apply(u), iso.apply(v)) {
                return Err(Error::NotAnIsomorphism {
                    index: i,
                    reason: format!("reference arc {u} -> {v} is not preserved"),
                });
            }
        }
    }

    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0;
    for part in parts {
        offsets.push(total);
        total += part.vertex_count();
    }
    let k = parts.len();
    let mut arcs = Vec::new();
    for a in 0..n {
        for i in 0..k - 1 {
            arcs.push((
                offsets[i] + isos[i].apply(a),
                offsets[i + 1] + isos[i + 1].apply(a),
            ));
        }
        for &b in reference.out_neighbors(a) {
            arcs.push((offsets[k - 1] + isos[k - 1].apply(a), isos[0].apply(b)));
        }
    }
    Digraph::from_arcs(total, arcs)
}

/// Splits a digraph with exactly `k` weakly connected components into the
/// pair whose isomorphism is equivalent to all components being pairwise
/// isomorphic: `k - 1` copies of the first component versus the union of
/// the rest.
///
/// Components are ordered by smallest contained vertex and reindexed as by
/// `induced`.
pub fn split_components(d: &Digraph, k: u32) -> Result<(Digraph, Digraph)> {
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    let comps = d.weak_components();
    if comps.len() != k as usize {
        return Err(Error::ComponentCount {
            expected: k as usize,
            found: comps.len(),
        });
    }
    let (first, _) = d.induced(&comps[0])?;
    let copies = vec![first; k as usize - 1];
    let (left, _) = disjoint_union(&copies)?;
    let mut rest = Vec::with_capacity(comps.len() - 1);
    for comp in &comps[1..] {
        rest.push(d.induced(comp)?.0);
    }
    let (right, _) = disjoint_union(&rest)?;
    Ok((left, right))
}
