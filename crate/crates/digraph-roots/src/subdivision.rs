//! Structure theory of complete subdivisions: recovering the core of a
//! subdivided digraph, free paths inside root candidates, and the
//! propagation argument that turns one free path into a cover of the whole
//! vertex set. On top of that sit the two headline operations: extracting
//! component isomorphisms from a known root, and deciding root existence for
//! digraphs in the subdivision class.

use std::collections::BTreeMap;

use crate::digraph::{Digraph, VertexBijection};
use crate::error::{Error, Result, SubdivisionDefect};
use crate::isomorphism::find_isomorphism;
use crate::power::{power, verify_root};
use crate::reduction::union_root;

/// Certificate that a digraph is a complete subdivision.
///
/// The core is the unique (up to the documented tie-break) vertex set `C`
/// such that every arc joins `C` and its complement, every complement vertex
/// has in- and out-degree one, and contracting each complement vertex to an
/// arc yields the parent digraph. Complement entry `i` realizes parent arc
/// `thin_arcs()[i]`, with endpoints in parent indices; parent index `j`
/// corresponds to vertex `core()[j]` of the subdivided graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreWitness {
    core: Vec<usize>,
    complement: Vec<usize>,
    parent: Digraph,
    thin_arcs: Vec<(usize, usize)>,
}

impl CoreWitness {
    pub(crate) fn new(
        core: Vec<usize>,
        complement: Vec<usize>,
        parent: Digraph,
        thin_arcs: Vec<(usize, usize)>,
    ) -> Self {
        debug_assert_eq!(complement.len(), thin_arcs.len());
        debug_assert_eq!(parent.vertex_count(), core.len());
        CoreWitness {
            core,
            complement,
            parent,
            thin_arcs,
        }
    }

    /// Core vertices, ascending.
    pub fn core(&self) -> &[usize] {
        &self.core
    }

    /// Subdivision (non-core) vertices, ascending.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// The contracted digraph on the core, indexed by position in `core()`.
    pub fn parent(&self) -> &Digraph {
        &self.parent
    }

    /// Parent arc realized by each complement vertex, parallel to
    /// `complement()`.
    pub fn thin_arcs(&self) -> &[(usize, usize)] {
        &self.thin_arcs
    }

    pub fn in_core(&self, v: usize) -> bool {
        self.core.binary_search(&v).is_ok()
    }

    fn total(&self) -> usize {
        self.core.len() + self.complement.len()
    }
}

/// Recovers the core of a complete subdivision, or reports why none exists.
///
/// Vertices whose degrees disqualify them from being subdivision vertices
/// are forced into the core; alternation along arcs propagates the rest.
/// A weakly connected component with no forced vertex is a directed cycle:
/// odd cycles fail, and for even cycles the coloring placing the smallest
/// vertex index in the core is chosen.
pub fn find_core(s: &Digraph) -> Result<CoreWitness> {
    let n = s.vertex_count();
    for v in 0..n {
        if s.has_arc(v, v) {
            return Err(Error::NotASubdivision(SubdivisionDefect::Loop { vertex: v }));
        }
    }
    let thin = |v: usize| s.out_degree(v) == 1 && s.in_degree(v) == 1;

    let mut side: Vec<Option<bool>> = vec![None; n]; // Some(true) = core
    let mut queue = std::collections::VecDeque::new();
    for comp in s.weak_components() {
        queue.clear();
        for &v in &comp {
            if !thin(v) {
                side[v] = Some(true);
                queue.push_back(v);
            }
        }
        if queue.is_empty() {
            // All-thin component: a directed cycle. The smallest vertex
            // breaks the tie between the two alternating colorings.
            side[comp[0]] = Some(true);
            queue.push_back(comp[0]);
        }
        while let Some(u) = queue.pop_front() {
            let mine = side[u].expect("queued vertices are colored");
            for &v in s.out_neighbors(u).iter().chain(s.in_neighbors(u)) {
                match side[v] {
                    None => {
                        side[v] = Some(!mine);
                        queue.push_back(v);
                    }
                    Some(theirs) if theirs != mine => {}
                    Some(_) => {
                        let defect = if mine && !thin(v) {
                            SubdivisionDefect::NonThinOutsideCore { vertex: v }
                        } else {
                            SubdivisionDefect::AlternationConflict { vertex: v }
                        };
                        return Err(Error::NotASubdivision(defect));
                    }
                }
            }
        }
    }

    let core: Vec<usize> = (0..n).filter(|&v| side[v] == Some(true)).collect();
    let complement: Vec<usize> = (0..n).filter(|&v| side[v] == Some(false)).collect();
    let mut core_index = vec![usize::MAX; n];
    for (i, &v) in core.iter().enumerate() {
        core_index[v] = i;
    }

    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut thin_arcs = Vec::with_capacity(complement.len());
    for &x in &complement {
        debug_assert!(thin(x), "only thin vertices leave the core");
        let a = core_index[s.in_neighbors(x)[0]];
        let b = core_index[s.out_neighbors(x)[0]];
        if let Some(&first) = seen.get(&(a, b)) {
            return Err(Error::NotASubdivision(SubdivisionDefect::DuplicatedArc {
                first,
                second: x,
            }));
        }
        seen.insert((a, b), x);
        thin_arcs.push((a, b));
    }
    let parent = Digraph::from_arcs(core.len(), thin_arcs.iter().copied())?;
    Ok(CoreWitness::new(core, complement, parent, thin_arcs))
}

/// A path `v_0 -> v_1 -> ... -> v_last` inside a root candidate `R` where
/// every step is forced: `v_{i+1}` is the only `R`-successor of `v_i`, and
/// `v_i` is the only `R`-predecessor of `v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreePath {
    vertices: Vec<usize>,
}

impl FreePath {
    /// Validates freeness of `vertices` relative to `r`.
    pub fn new(r: &Digraph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::RootInconsistency {
                claim: "a free path has at least one vertex",
                witness: None,
            });
        }
        let mut seen = vec![false; r.vertex_count()];
        for &v in &vertices {
            if v >= r.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: r.vertex_count(),
                });
            }
            if seen[v] {
                return Err(Error::RootInconsistency {
                    claim: "free path vertices must be distinct",
                    witness: Some(v),
                });
            }
            seen[v] = true;
        }
        for pair in vertices.windows(2) {
            if r.out_neighbors(pair[0]) != [pair[1]] || r.in_neighbors(pair[1]) != [pair[0]] {
                return Err(Error::RootInconsistency {
                    claim: "each free-path step must be the unique successor of its \
                            predecessor and vice versa",
                    witness: Some(pair[0]),
                });
            }
        }
        Ok(FreePath { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A partition of the vertex set into free paths of equal length, each
/// visiting every weakly connected component exactly once and all in the
/// same order.
#[derive(Debug, Clone)]
pub struct FreePathCover {
    paths: Vec<FreePath>,
    component_order: Vec<usize>,
}

impl FreePathCover {
    /// Paths ordered by their smallest contained vertex.
    pub fn paths(&self) -> &[FreePath] {
        &self.paths
    }

    /// The component id sequence every path follows (ids index
    /// `weak_components` of the covered digraph).
    pub fn component_order(&self) -> &[usize] {
        &self.component_order
    }
}

/// Finds the free path through the zero-in-degree vertices of a rooted
/// digraph.
///
/// For `power(r, k) == d` with every out-degree of `d` positive, `d` a
/// complete subdivision, and exactly `k` vertices of in-degree zero, those
/// `k` vertices carry no incoming `r`-arcs from elsewhere and line up into
/// a single free path in `r`, which is returned. Any violation along the
/// way signals that `r` is not actually a root of this shape and is
/// reported as an inconsistency rather than silently absorbed.
pub fn seed_free_path(d: &Digraph, r: &Digraph, k: u32) -> Result<FreePath> {
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    if !verify_root(r, k, d)? {
        return Err(Error::NotARoot { k });
    }
    for v in 0..d.vertex_count() {
        if d.out_degree(v) == 0 {
            return Err(Error::ZeroOutDegree { vertex: v });
        }
    }
    let sources: Vec<usize> = (0..d.vertex_count()).filter(|&v| d.in_degree(v) == 0).collect();
    if sources.len() != k as usize {
        return Err(Error::SourceSetSize {
            expected: k as usize,
            found: sources.len(),
        });
    }
    find_core(d)?;

    // No r-arc may enter the set from outside it.
    for &q in &sources {
        for &p in r.in_neighbors(q) {
            if sources.binary_search(&p).is_err() {
                return Err(Error::RootInconsistency {
                    claim: "no root arc may enter the zero-in-degree set from outside",
                    witness: Some(q),
                });
            }
        }
    }

    // The induced root arcs on the set must form one path; walk it.
    let order = trace_path(r, &sources).ok_or(Error::RootInconsistency {
        claim: "the zero-in-degree set must line up into a single free path",
        witness: sources.first().copied(),
    })?;
    FreePath::new(r, order)
}

/// Orders `set` into the unique directed path its induced `r`-arcs form,
/// if they form one.
fn trace_path(r: &Digraph, set: &[usize]) -> Option<Vec<usize>> {
    let inside = |v: usize| set.binary_search(&v).is_ok();
    let mut starts = set.iter().filter(|&&q| {
        r.in_neighbors(q).iter().all(|&p| !inside(p))
    });
    let first = *starts.next()?;
    if starts.next().is_some() {
        return None;
    }
    let mut order = vec![first];
    while order.len() < set.len() {
        let mut succs = r
            .out_neighbors(*order.last().expect("nonempty"))
            .iter()
            .filter(|&&w| inside(w));
        let next = *succs.next()?;
        if succs.next().is_some() || order.contains(&next) {
            return None;
        }
        order.push(next);
    }
    Some(order)
}

/// Grows a seed free path into a free-path cover of the whole vertex set.
///
/// Expansion alternates between two moves, each asserted at runtime instead
/// of trusted: a free path of core vertices spreads to its out-neighbor and
/// in-neighbor layers (which must have uniform size and be linked by unique
/// successors/predecessors), and a free path of subdivision vertices lifts
/// back to the core along unique out- or in-neighbors in `d`. In-neighbor
/// lifts that would land on a zero-in-degree vertex are skipped; those
/// vertices are exactly the seed path. The worklist is processed smallest
/// first, so the result is deterministic.
pub fn propagate_cover(
    d: &Digraph,
    r: &Digraph,
    k: u32,
    witness: &CoreWitness,
    seed: &FreePath,
) -> Result<FreePathCover> {
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    let n = d.vertex_count();
    if r.vertex_count() != n || witness.total() != n {
        return Err(Error::VertexCountMismatch {
            left: n,
            right: if r.vertex_count() != n {
                r.vertex_count()
            } else {
                witness.total()
            },
        });
    }
    for v in 0..n {
        if d.out_degree(v) == 0 {
            return Err(Error::ZeroOutDegree { vertex: v });
        }
    }
    if seed.len() != k as usize {
        return Err(Error::HypothesisViolation {
            check: "the seed must be a free path of exactly k vertices",
            witness: seed.vertices().first().copied(),
        });
    }
    for &v in seed.vertices() {
        if !witness.in_core(v) {
            return Err(Error::HypothesisViolation {
                check: "the seed path must consist of core vertices",
                witness: Some(v),
            });
        }
    }
    FreePath::new(r, seed.vertices().to_vec())?;

    // Both layer expansions lean on walk-count facts about r: a vertex with
    // no incoming walk of length k-1 can only feed the seed path, and every
    // vertex must start such a walk. Check both once, up front.
    let shifted = power(r, k - 1)?;
    for x in 0..n {
        if shifted.in_degree(x) == 0 {
            for &y in r.out_neighbors(x) {
                if !witness.in_core(y) {
                    return Err(Error::HypothesisViolation {
                        check: "vertices with no incoming walk of length k-1 must send \
                                every root arc into the core",
                        witness: Some(x),
                    });
                }
            }
        }
        if shifted.out_degree(x) == 0 {
            return Err(Error::HypothesisViolation {
                check: "every vertex must start a root walk of length k-1",
                witness: Some(x),
            });
        }
    }

    let comps = d.weak_components();
    let mut comp_id = vec![usize::MAX; n];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_id[v] = i;
        }
    }

    let mut pending: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut done: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; n];

    submit(seed.vertices().to_vec(), &mut pending, &done, &mut owner)?;
    while let Some((key, path)) = pending.pop_first() {
        done.insert(key, path.clone());
        let core_path = witness.in_core(path[0]);
        for (i, &v) in path.iter().enumerate() {
            if witness.in_core(v) != core_path {
                return Err(Error::RootInconsistency {
                    claim: "a free path may not mix core and subdivision vertices",
                    witness: Some(path[i]),
                });
            }
        }
        if core_path {
            expand_layers(d, r, &path, Side::Out, &mut pending, &done, &mut owner)?;
            expand_layers(d, r, &path, Side::In, &mut pending, &done, &mut owner)?;
        } else {
            lift(d, r, &path, Side::Out, &mut pending, &done, &mut owner)?;
            lift(d, r, &path, Side::In, &mut pending, &done, &mut owner)?;
        }
    }

    let residue: Vec<usize> = (0..n).filter(|&v| owner[v].is_none()).collect();
    if !residue.is_empty() {
        return Err(Error::IncompleteCover { residue });
    }

    let mut paths = Vec::with_capacity(done.len());
    let mut component_order: Option<Vec<usize>> = None;
    for path in done.values() {
        let sig: Vec<usize> = path.iter().map(|&v| comp_id[v]).collect();
        let mut sorted = sig.clone();
        sorted.sort_unstable();
        if comps.len() != k as usize || sorted != (0..k as usize).collect::<Vec<_>>() {
            return Err(Error::RootInconsistency {
                claim: "each free path must visit every weakly connected component \
                        exactly once",
                witness: Some(path[0]),
            });
        }
        match &component_order {
            None => component_order = Some(sig),
            Some(reference) if *reference == sig => {}
            Some(_) => {
                return Err(Error::RootInconsistency {
                    claim: "all free paths must visit the components in one shared order",
                    witness: Some(path[0]),
                });
            }
        }
        paths.push(FreePath::new(r, path.clone())?);
    }
    Ok(FreePathCover {
        paths,
        component_order: component_order.expect("the seed path is always present"),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Out,
    In,
}

/// Registers a discovered path, enforcing pairwise disjointness. Resubmitting
/// an identical path is a no-op.
fn submit(
    path: Vec<usize>,
    pending: &mut BTreeMap<usize, Vec<usize>>,
    done: &BTreeMap<usize, Vec<usize>>,
    owner: &mut [Option<(usize, usize)>],
) -> Result<()> {
    let key = *path.iter().min().expect("paths are nonempty");
    if let Some(existing) = done.get(&key).or_else(|| pending.get(&key)) {
        if *existing == path {
            return Ok(());
        }
        return Err(Error::RootInconsistency {
            claim: "free paths must be pairwise disjoint",
            witness: Some(key),
        });
    }
    for (pos, &v) in path.iter().enumerate() {
        if owner[v].is_some() && owner[v] != Some((key, pos)) {
            return Err(Error::RootInconsistency {
                claim: "free paths must be pairwise disjoint",
                witness: Some(v),
            });
        }
        owner[v] = Some((key, pos));
    }
    pending.insert(key, path);
    Ok(())
}

/// From a core free path, builds the free paths through its out-neighbor
/// layers (`Side::Out`) or in-neighbor layers (`Side::In`), asserting every
/// uniqueness claim the construction rests on.
fn expand_layers(
    d: &Digraph,
    r: &Digraph,
    path: &[usize],
    side: Side,
    pending: &mut BTreeMap<usize, Vec<usize>>,
    done: &BTreeMap<usize, Vec<usize>>,
    owner: &mut [Option<(usize, usize)>],
) -> Result<()> {
    let k = path.len();
    let layers: Vec<&[usize]> = path
        .iter()
        .map(|&a| match side {
            Side::Out => d.out_neighbors(a),
            Side::In => d.in_neighbors(a),
        })
        .collect();
    let m = layers[0].len();
    for (i, layer) in layers.iter().enumerate() {
        if layer.len() != m {
            return Err(Error::RootInconsistency {
                claim: "neighbor layers of a core free path must share one size",
                witness: Some(path[i]),
            });
        }
    }
    if m == 0 {
        return Ok(());
    }
    // Every layer vertex continues uniquely into the next layer (and back):
    // forward along r for i < k-1, backward for i > 0.
    for (i, layer) in layers.iter().enumerate() {
        for &x in *layer {
            if i + 1 < k {
                let succs = r.out_neighbors(x);
                if succs.len() != 1 || layers[i + 1].binary_search(&succs[0]).is_err() {
                    return Err(Error::RootInconsistency {
                        claim: "a layer vertex must have exactly one root successor, \
                                inside the next layer",
                        witness: Some(x),
                    });
                }
            }
            if i > 0 {
                let preds = r.in_neighbors(x);
                if preds.len() != 1 || layers[i - 1].binary_search(&preds[0]).is_err() {
                    return Err(Error::RootInconsistency {
                        claim: "a layer vertex must have exactly one root predecessor, \
                                inside the previous layer",
                        witness: Some(x),
                    });
                }
            }
        }
    }
    for &x in layers[0] {
        let mut built = vec![x];
        for _ in 1..k {
            let last = *built.last().expect("nonempty");
            built.push(r.out_neighbors(last)[0]);
        }
        submit(built, pending, done, owner)?;
    }
    Ok(())
}

/// Lifts a free path of subdivision vertices back to the core along their
/// unique `d`-out-neighbors (`Side::Out`) or `d`-in-neighbors (`Side::In`).
/// An in-side lift touching a zero-in-degree vertex is skipped; such
/// vertices lie on the seed path, which is already covered.
fn lift(
    d: &Digraph,
    r: &Digraph,
    path: &[usize],
    side: Side,
    pending: &mut BTreeMap<usize, Vec<usize>>,
    done: &BTreeMap<usize, Vec<usize>>,
    owner: &mut [Option<(usize, usize)>],
) -> Result<()> {
    let mut lifted = Vec::with_capacity(path.len());
    for &u in path {
        let unique = match side {
            Side::Out => d.out_neighbors(u),
            Side::In => d.in_neighbors(u),
        };
        debug_assert_eq!(unique.len(), 1, "subdivision vertices are thin");
        let a = unique[0];
        if side == Side::In && d.in_degree(a) == 0 {
            return Ok(());
        }
        lifted.push(a);
    }
    for pair in lifted.windows(2) {
        if r.out_neighbors(pair[0]) != [pair[1]] || r.in_neighbors(pair[1]) != [pair[0]] {
            return Err(Error::RootInconsistency {
                claim: "unique neighbors of a subdivision free path must again form \
                        a free path",
                witness: Some(pair[0]),
            });
        }
    }
    submit(lifted, pending, done, owner)
}

/// Validates the shared hypotheses of the subdivision-class operations and
/// returns the weakly connected components.
fn validate_class(d: &Digraph, k: u32) -> Result<Vec<Vec<usize>>> {
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
    for v in 0..d.vertex_count() {
        if d.out_degree(v) == 0 {
            return Err(Error::ZeroOutDegree { vertex: v });
        }
    }
    for (i, comp) in comps.iter().enumerate() {
        let sources = comp.iter().filter(|&&v| d.in_degree(v) == 0).count();
        if sources != 1 {
            return Err(Error::SourceCountPerComponent {
                component: i,
                count: sources,
            });
        }
    }
    find_core(d)?;
    Ok(comps)
}

/// Reads the component isomorphisms off a known root.
///
/// For a k-component subdivision-class digraph `d` with `power(r, k) == d`,
/// returns `k - 1` validated isomorphisms from component `0` onto components
/// `1..k` (components ordered by smallest vertex, each reindexed as by
/// `induced`). The maps are assembled from a free-path cover of `r`: each
/// path hits every component once, so its component-0 vertex maps to its
/// component-`j` vertex.
pub fn extract_isomorphisms(d: &Digraph, r: &Digraph, k: u32) -> Result<Vec<VertexBijection>> {
    let comps = validate_class(d, k)?;
    if !verify_root(r, k, d)? {
        return Err(Error::NotARoot { k });
    }
    let witness = find_core(d)?;
    let seed = seed_free_path(d, r, k)?;
    let cover = propagate_cover(d, r, k, &witness, &seed)?;

    let n = d.vertex_count();
    let mut comp_id = vec![usize::MAX; n];
    let mut local = vec![usize::MAX; n];
    for (i, comp) in comps.iter().enumerate() {
        for (pos, &v) in comp.iter().enumerate() {
            comp_id[v] = i;
            local[v] = pos;
        }
    }

    let mut graphs = Vec::with_capacity(comps.len());
    for comp in &comps {
        graphs.push(d.induced(comp)?.0);
    }

    let mut maps = Vec::with_capacity(k as usize - 1);
    for j in 1..k as usize {
        let mut forward = vec![usize::MAX; comps[0].len()];
        for path in cover.paths() {
            let mut from = usize::MAX;
            let mut to = usize::MAX;
            for &v in path.vertices() {
                if comp_id[v] == 0 {
                    from = local[v];
                } else if comp_id[v] == j {
                    to = local[v];
                }
            }
            forward[from] = to;
        }
        let map = VertexBijection::new(forward)?;
        for (u, v) in graphs[0].arcs() {
            if !graphs[j].has_arc(map.apply(u), map.apply(v)) {
                return Err(Error::RootInconsistency {
                    claim: "extracted component maps must preserve arcs",
                    witness: Some(comps[0][u]),
                });
            }
        }
        for (u, v) in graphs[j].arcs() {
            if !graphs[0].has_arc(map.preimage(u), map.preimage(v)) {
                return Err(Error::RootInconsistency {
                    claim: "extracted component maps must preserve arcs",
                    witness: Some(comps[j][u]),
                });
            }
        }
        maps.push(map);
    }
    Ok(maps)
}

/// Outcome of [`decide_root_in_class`].
#[derive(Debug, Clone)]
pub enum ClassRootDecision {
    /// A verified k-th root on the input's own vertex numbering.
    Root(Digraph),
    /// No root exists; the named pair of components is not isomorphic.
    NoRoot { components: (usize, usize) },
}

/// Decides k-th root existence for a digraph in the subdivision class.
///
/// The class hypotheses (exactly `k` weakly connected components, positive
/// out-degrees, exactly one zero-in-degree vertex per component, a complete
/// subdivision) are validated first; violating them is an error, not a
/// no-root answer. Inside the class, a root exists precisely when all
/// components are isomorphic: the decision reduces to `k - 1` isomorphism
/// tests, and on success the root built from the found isomorphisms is
/// verified and returned.
pub fn decide_root_in_class(d: &Digraph, k: u32) -> Result<ClassRootDecision> {
    let comps = validate_class(d, k)?;
    let mut graphs = Vec::with_capacity(comps.len());
    for comp in &comps {
        graphs.push(d.induced(comp)?.0);
    }
    let mut maps = vec![VertexBijection::identity(graphs[0].vertex_count())];
    for j in 1..comps.len() {
        match find_isomorphism(&graphs[0], &graphs[j]) {
            Some(map) => maps.push(map),
            None => return Ok(ClassRootDecision::NoRoot { components: (0, j) }),
        }
    }

    let reference = graphs[0].clone();
    let union = union_root(&reference, &graphs, &maps)?;
    // Route the union numbering back onto d's own numbering.
    let mut forward = vec![usize::MAX; d.vertex_count()];
    let mut offset = 0;
    for comp in &comps {
        for (pos, &v) in comp.iter().enumerate() {
            forward[offset + pos] = v;
        }
        offset += comp.len();
    }
    let root = union.relabel(&VertexBijection::new(forward)?)?;
    if !verify_root(&root, k, d)? {
        return Err(Error::RootInconsistency {
            claim: "the assembled root must verify against the input",
            witness: None,
        });
    }
    Ok(ClassRootDecision::Root(root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::disjoint_union;
    use crate::reduction::{reduce, subdivide};

    fn cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    #[test]
    fn core_of_a_subdivided_triangle_is_the_triangle() {
        let (s, built) = subdivide(&cycle(3));
        let found = find_core(&s).unwrap();
        assert_eq!(found, built);
        assert_eq!(found.core(), &[0, 1, 2]);
        assert_eq!(found.parent(), &cycle(3));
    }

    #[test]
    fn even_cycle_tie_break_prefers_small_indices() {
        let found = find_core(&cycle(6)).unwrap();
        assert_eq!(found.core(), &[0, 2, 4]);
        assert_eq!(found.parent(), &cycle(3));
        assert_eq!(found.thin_arcs(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn odd_cycle_is_not_a_subdivision() {
        let err = find_core(&cycle(5)).unwrap_err();
        assert!(matches!(
            err,
            Error::NotASubdivision(SubdivisionDefect::AlternationConflict { .. })
        ));
    }

    #[test]
    fn single_arc_is_not_a_subdivision() {
        let s = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let err = find_core(&s).unwrap_err();
        assert!(matches!(
            err,
            Error::NotASubdivision(SubdivisionDefect::NonThinOutsideCore { vertex: 1 })
        ));
    }

    #[test]
    fn loops_are_rejected_outright() {
        let s = Digraph::from_arcs(3, [(0, 1), (1, 1)]).unwrap();
        assert!(matches!(
            find_core(&s),
            Err(Error::NotASubdivision(SubdivisionDefect::Loop { vertex: 1 }))
        ));
    }

    #[test]
    fn parallel_contractions_are_rejected() {
        // Vertices 2 and 3 both realize an arc from 0 to 1.
        let s = Digraph::from_arcs(4, [(0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
        assert!(matches!(
            find_core(&s),
            Err(Error::NotASubdivision(SubdivisionDefect::DuplicatedArc {
                first: 2,
                second: 3
            }))
        ));
    }

    #[test]
    fn empty_graph_has_an_empty_core() {
        let found = find_core(&Digraph::empty(0)).unwrap();
        assert!(found.core().is_empty());
        assert_eq!(found.parent().vertex_count(), 0);
    }

    #[test]
    fn isolated_vertices_sit_in_the_core() {
        let found = find_core(&Digraph::empty(2)).unwrap();
        assert_eq!(found.core(), &[0, 1]);
        assert_eq!(found.parent(), &Digraph::empty(2));
    }

    #[test]
    fn free_path_constructor_rejects_branches() {
        let r = Digraph::from_arcs(3, [(0, 1), (0, 2)]).unwrap();
        assert!(FreePath::new(&r, vec![0, 1]).is_err());
        let r = Digraph::from_arcs(3, [(0, 1), (2, 1)]).unwrap();
        assert!(FreePath::new(&r, vec![0, 1]).is_err());
        let r = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let p = FreePath::new(&r, vec![0, 1]).unwrap();
        assert_eq!(p.vertices(), &[0, 1]);
    }

    /// The smallest class instance: two copies of the subdivision of
    /// `{r -> a, a -> a}`, rooted by the shift-and-wrap construction.
    fn smallest_instance() -> (Digraph, Digraph) {
        let comp = Digraph::from_arcs(4, [(0, 2), (2, 1), (1, 3), (3, 1)]).unwrap();
        let parts = [comp.clone(), comp.clone()];
        let (d, _) = disjoint_union(&parts).unwrap();
        let maps = vec![VertexBijection::identity(4), VertexBijection::identity(4)];
        let r = union_root(&comp, &parts, &maps).unwrap();
        (d, r)
    }

    #[test]
    fn seed_path_runs_through_the_sources() {
        let (d, r) = smallest_instance();
        let seed = seed_free_path(&d, &r, 2).unwrap();
        assert_eq!(seed.vertices(), &[0, 4]);
    }

    #[test]
    fn seed_rejects_non_roots() {
        let (d, _) = smallest_instance();
        let bogus = Digraph::empty(8);
        assert!(matches!(seed_free_path(&d, &bogus, 2), Err(Error::NotARoot { k: 2 })));
    }

    #[test]
    fn seed_requires_k_at_least_two() {
        let (d, r) = smallest_instance();
        assert!(matches!(
            seed_free_path(&d, &r, 1),
            Err(Error::KTooSmall { k: 1, min: 2 })
        ));
    }

    #[test]
    fn cover_of_the_smallest_instance() {
        let (d, r) = smallest_instance();
        let witness = find_core(&d).unwrap();
        let seed = seed_free_path(&d, &r, 2).unwrap();
        let cover = propagate_cover(&d, &r, 2, &witness, &seed).unwrap();
        let got: Vec<&[usize]> = cover.paths().iter().map(|p| p.vertices()).collect();
        assert_eq!(got, vec![&[0, 4], &[1, 5], &[2, 6], &[3, 7]]);
        assert_eq!(cover.component_order(), &[0, 1]);
    }

    #[test]
    fn extraction_recovers_the_shift() {
        let (d, r) = smallest_instance();
        let maps = extract_isomorphisms(&d, &r, 2).unwrap();
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn decision_finds_a_root_for_twin_components() {
        let (d, _) = smallest_instance();
        match decide_root_in_class(&d, 2).unwrap() {
            ClassRootDecision::Root(root) => {
                assert!(verify_root(&root, 2, &d).unwrap());
            }
            other => panic!("expected a root, got {other:?}"),
        }
    }

    #[test]
    fn decision_reports_the_clashing_components() {
        let loops = Digraph::from_arcs(1, [(0, 0)]).unwrap();
        let plain = Digraph::empty(1);
        let inst = reduce(&loops, &plain, 2).unwrap();
        match decide_root_in_class(&inst.graph, 2).unwrap() {
            ClassRootDecision::NoRoot { components } => assert_eq!(components, (0, 1)),
            other => panic!("expected no root, got {other:?}"),
        }
    }

    #[test]
    fn class_violations_are_errors_not_answers() {
        // Two sources in one component: add an extra zero-in-degree vertex
        // feeding the same hub.
        let (d, _) = smallest_instance();
        let mut arcs: Vec<_> = d.arcs().collect();
        arcs.push((8, 2));
        let bad = Digraph::from_arcs(9, arcs).unwrap();
        assert!(matches!(
            decide_root_in_class(&bad, 2),
            Err(Error::SourceCountPerComponent { component: 0, count: 2 })
        ));

        let (d, _) = smallest_instance();
        assert!(matches!(
            decide_root_in_class(&d, 3),
            Err(Error::ComponentCount { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn cover_reports_invalid_roots_with_the_violated_claim() {
        let (d, r) = smallest_instance();
        let witness = find_core(&d).unwrap();
        let seed = seed_free_path(&d, &r, 2).unwrap();
        // Remove one wrap arc and add a stray one: still the right arc
        // count, no longer a root.
        let mut arcs: Vec<_> = r.arcs().filter(|&a| a != (4, 2)).collect();
        arcs.push((4, 0));
        let bogus = Digraph::from_arcs(8, arcs).unwrap();
        let err = propagate_cover(&d, &bogus, 2, &witness, &seed).unwrap_err();
        assert!(matches!(
            err,
            Error::RootInconsistency { .. } | Error::HypothesisViolation { .. }
        ));
    }
}
