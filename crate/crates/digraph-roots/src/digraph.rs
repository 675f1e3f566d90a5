//! Core digraph type and the vertex-set operations everything else builds on.

use crate::error::{Error, Result};

/// Selects which adjacency an operation walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

/// A finite digraph on vertex set `0..n` with set semantics for arcs.
///
/// Loops are allowed, parallel arcs are not; constructing the same arc twice
/// is idempotent. Adjacency is held twice: sorted neighbor lists for
/// deterministic scans, and packed bit-rows for Boolean matrix arithmetic.
/// Both views are built once at construction and never drift apart because
/// the type is immutable.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    words: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    rows: Vec<u64>,
}

impl Digraph {
    /// Builds a digraph from an arc list. Arcs may repeat; duplicates collapse.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for (u, v) in arcs {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            rows[u * words + v / 64] |= 1u64 << (v % 64);
        }
        Ok(Self::from_rows(n, rows))
    }

    /// A digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Self {
        Self::from_arcs(n, []).expect("no arcs to validate")
    }

    /// Rebuilds the adjacency lists from packed bit-rows (row-major, one row
    /// of `n.div_ceil(64)` words per vertex).
    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        let words = n.div_ceil(64);
        debug_assert_eq!(rows.len(), n * words);
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for u in 0..n {
            for (w, &word) in rows[u * words..(u + 1) * words].iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let v = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    out[u].push(v);
                    inn[v].push(u);
                }
            }
        }
        // `inn[v]` is ascending because `u` ascends in the outer loop.
        Digraph {
            n,
            words,
            out,
            inn,
            rows,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// All arcs in ascending lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Out-neighbors of `u`, ascending.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    /// In-neighbors of `u`, ascending.
    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.inn[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.inn[u].len()
    }

    pub fn neighbors(&self, u: usize, dir: Direction) -> &[usize] {
        match dir {
            Direction::Out => &self.out[u],
            Direction::In => &self.inn[u],
        }
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    pub(crate) fn bit_rows(&self) -> &[u64] {
        &self.rows
    }

    /// The set reached from `start` by exactly `t` steps along `dir` arcs.
    ///
    /// Zero steps return `start` itself (deduplicated, ascending). The walk
    /// count is exact, not "at most": a vertex only appears if some walk of
    /// length precisely `t` ends there.
    pub fn iterated_neighborhood(
        &self,
        start: &[usize],
        dir: Direction,
        t: u32,
    ) -> Result<Vec<usize>> {
        let mut frontier = vec![false; self.n];
        for &v in start {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            frontier[v] = true;
        }
        for _ in 0..t {
            let mut next = vec![false; self.n];
            let mut any = false;
            for (u, &live) in frontier.iter().enumerate() {
                if live {
                    for &v in self.neighbors(u, dir) {
                        next[v] = true;
                        any = true;
                    }
                }
            }
            frontier = next;
            if !any {
                break; // an empty frontier stays empty
            }
        }
        Ok(collect_set(&frontier))
    }

    /// Weakly connected components, each sorted ascending, ordered by their
    /// smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut blocks = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for &v in self.out[u].iter().chain(self.inn[u].iter()) {
                    if !seen[v] {
                        seen[v] = true;
                        block.push(v);
                        queue.push(v);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// The subgraph induced by `vertices`, reindexed to `0..vertices.len()`.
    ///
    /// Returns the digraph together with the reindexing table: entry `i`
    /// holds the original index of new vertex `i`. `vertices` is treated as a
    /// set; duplicates collapse and order does not matter.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Digraph, Vec<usize>)> {
        let mut mask = vec![false; self.n];
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            mask[v] = true;
        }
        let table = collect_set(&mask);
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in table.iter().enumerate() {
            local[v] = i;
        }
        let arcs = self
            .arcs()
            .filter(|&(u, v)| mask[u] && mask[v])
            .map(|(u, v)| (local[u], local[v]));
        let graph = Digraph::from_arcs(table.len(), arcs)?;
        Ok((graph, table))
    }

    /// The image of this digraph under a total vertex bijection.
    pub fn relabel(&self, map: &VertexBijection) -> Result<Digraph> {
        if map.len() != self.n {
            return Err(Error::VertexCountMismatch {
                left: self.n,
                right: map.len(),
            });
        }
        Digraph::from_arcs(self.n, self.arcs().map(|(u, v)| (map.apply(u), map.apply(v))))
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

/// Concatenates digraphs onto one vertex set, shifting part `i` by the
/// returned offset `i`. The part list must be nonempty.
pub fn disjoint_union(parts: &[Digraph]) -> Result<(Digraph, Vec<usize>)> {
    if parts.is_empty() {
        return Err(Error::EmptyUnion);
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0usize;
    for part in parts {
        offsets.push(total);
        total += part.vertex_count();
    }
    let arcs = parts.iter().zip(&offsets).flat_map(|(part, &off)| {
        part.arcs().map(move |(u, v)| (off + u, off + v))
    });
    let graph = Digraph::from_arcs(total, arcs)?;
    Ok((graph, offsets))
}

fn collect_set(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(v, &hit)| hit.then_some(v))
        .collect()
}

/// A bijection between two vertex sets of equal size, stored with its
/// inverse so both directions apply in constant time.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexBijection {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl VertexBijection {
    /// Wraps a forward table after checking it is a bijection onto
    /// `0..forward.len()`.
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let n = forward.len();
        let mut inverse = vec![usize::MAX; n];
        for (u, &v) in forward.iter().enumerate() {
            if v >= n {
                return Err(Error::NotABijection {
                    reason: format!("image {v} of {u} exceeds the target range {n}"),
                });
            }
            if inverse[v] != usize::MAX {
                return Err(Error::NotABijection {
                    reason: format!("vertices {} and {u} share the image {v}", inverse[v]),
                });
            }
            inverse[v] = u;
        }
        Ok(VertexBijection { forward, inverse })
    }

    pub fn identity(n: usize) -> Self {
        VertexBijection {
            forward: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, u: usize) -> usize {
        self.forward[u]
    }

    pub fn preimage(&self, v: usize) -> usize {
        self.inverse[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.forward
    }

    /// `self` then `next`: the composite maps `u` to `next.apply(self.apply(u))`.
    pub fn compose(&self, next: &VertexBijection) -> Result<VertexBijection> {
        if self.len() != next.len() {
            return Err(Error::NotABijection {
                reason: format!("cannot compose sizes {} and {}", self.len(), next.len()),
            });
        }
        VertexBijection::new(self.forward.iter().map(|&v| next.apply(v)).collect())
    }

    pub fn inverted(&self) -> VertexBijection {
        VertexBijection {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

impl std::fmt::Debug for VertexBijection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VertexBijection({:?})", self.forward)
    }
}
