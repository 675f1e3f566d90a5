//! Complete root-existence oracles. `exhaustive_roots` enumerates every
//! candidate on up to five vertices; `backtracking_root_search` runs a
//! pruned depth-first search over arc assignments that stays complete, so a
//! no-root answer is a proof, not a heuristic. The two share no code and
//! validate each other.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::power::{bool_power, power};

/// Largest vertex count `exhaustive_roots` accepts; the enumeration walks
/// all 2^(n^2) candidates.
pub const EXHAUSTIVE_MAX_VERTICES: usize = 5;

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    RootFound,
    /// The candidate space was exhausted; no root exists.
    NoRoot,
    /// The node budget ran out before the space was exhausted. Says nothing
    /// about root existence.
    BudgetExhausted,
}

/// Work accounting for a search. One node is one visited search-tree state,
/// which is also the budget unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Result of [`backtracking_root_search`]: a status, a verified witness when
/// one was found, and work statistics.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Digraph>,
    pub stats: SearchStats,
}

/// Lists every digraph `r` on the vertex set of `d` with `power(r, k) == d`,
/// in ascending order of the arc bitmask (arc `u -> v` is bit `u*n + v`).
///
/// An empty list is a proof that no k-th root exists. Refuses vertex counts
/// above [`EXHAUSTIVE_MAX_VERTICES`]; use [`backtracking_root_search`] for
/// larger instances.
pub fn exhaustive_roots(d: &Digraph, k: u32) -> Result<Vec<Digraph>> {
    if k == 0 {
        return Err(Error::KTooSmall { k, min: 1 });
    }
    let n = d.vertex_count();
    if n > EXHAUSTIVE_MAX_VERTICES {
        return Err(Error::ExhaustiveGuard {
            n,
            max: EXHAUSTIVE_MAX_VERTICES,
        });
    }
    let mut target = [0u8; EXHAUSTIVE_MAX_VERTICES];
    for (u, v) in d.arcs() {
        target[u] |= 1 << v;
    }
    let mut roots = Vec::new();
    for mask in 0u32..1 << (n * n) {
        let mut rows = [0u8; EXHAUSTIVE_MAX_VERTICES];
        for (u, row) in rows.iter_mut().enumerate().take(n) {
            *row = ((mask >> (u * n)) & ((1 << n) - 1)) as u8;
        }
        if pow_rows(n, rows, k) == target {
            let arcs = (0..n).flat_map(|u| {
                (0..n).filter_map(move |v| ((mask >> (u * n + v)) & 1 == 1).then_some((u, v)))
            });
            roots.push(Digraph::from_arcs(n, arcs)?);
        }
    }
    Ok(roots)
}

/// Boolean matrix power on byte rows, by repeated squaring.
fn pow_rows(
    n: usize,
    rows: [u8; EXHAUSTIVE_MAX_VERTICES],
    k: u32,
) -> [u8; EXHAUSTIVE_MAX_VERTICES] {
    let mul = |a: [u8; EXHAUSTIVE_MAX_VERTICES], b: [u8; EXHAUSTIVE_MAX_VERTICES]| {
        let mut out = [0u8; EXHAUSTIVE_MAX_VERTICES];
        for i in 0..n {
            let mut bits = a[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out[i] |= b[j];
            }
        }
        out
    };
    let mut result: Option<[u8; EXHAUSTIVE_MAX_VERTICES]> = None;
    let mut base = rows;
    let mut exp = k;
    loop {
        if exp & 1 == 1 {
            result = Some(match result {
                None => base,
                Some(r) => mul(r, base),
            });
        }
        exp >>= 1;
        if exp == 0 {
            break;
        }
        base = mul(base, base);
    }
    result.expect("k >= 1")
}

/// Complete depth-first search for a k-th root of `d` within a node budget.
///
/// Candidate arcs are three-valued (absent, present, undecided), kept as a
/// low/high bit-matrix pair. Propagation squeezes the pair until stable:
/// the k-th power of the low matrix must stay inside `d`, the k-th power of
/// the high matrix must still cover `d`, and for `k == 2` arc-level rules
/// fire (a present arc `v -> u` caps row `u` at `d`'s row `v`; a target arc
/// with a single remaining midpoint forces both halves). Branching always
/// picks the smallest undecided arc index and tries absent before present,
/// so outcome, witness, and node count are deterministic. Exhausting the
/// budget is reported as a status, never as a no-root claim.
pub fn backtracking_root_search(d: &Digraph, k: u32, budget: u64) -> Result<SearchOutcome> {
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    let n = d.vertex_count();
    let words = d.words_per_row();
    let mut high = vec![0u64; n * words];
    for u in 0..n {
        for w in 0..words {
            high[u * words + w] = if (w + 1) * 64 <= n {
                !0
            } else {
                (!0u64) >> (64 - (n - w * 64))
            };
        }
    }
    let mut search = Search {
        n,
        words,
        k,
        d_rows: d.bit_rows().to_vec(),
        arcs: d.arcs().collect(),
        budget,
        nodes: 0,
    };
    let low = vec![0u64; n * words];
    let outcome = match search.step(low, high) {
        Step::Found(rows) => {
            let witness = Digraph::from_rows(n, rows);
            debug_assert!(power(&witness, k)? == *d);
            SearchOutcome {
                status: SearchStatus::RootFound,
                witness: Some(witness),
                stats: SearchStats { nodes: search.nodes },
            }
        }
        Step::Exhausted => SearchOutcome {
            status: SearchStatus::NoRoot,
            witness: None,
            stats: SearchStats { nodes: search.nodes },
        },
        Step::Budget => SearchOutcome {
            status: SearchStatus::BudgetExhausted,
            witness: None,
            stats: SearchStats { nodes: search.nodes },
        },
    };
    Ok(outcome)
}

enum Step {
    Found(Vec<u64>),
    Exhausted,
    Budget,
}

struct Search {
    n: usize,
    words: usize,
    k: u32,
    d_rows: Vec<u64>,
    arcs: Vec<(usize, usize)>,
    budget: u64,
    nodes: u64,
}

impl Search {
    fn bit(rows: &[u64], words: usize, u: usize, v: usize) -> bool {
        rows[u * words + v / 64] >> (v % 64) & 1 == 1
    }

    fn set(rows: &mut [u64], words: usize, u: usize, v: usize) {
        rows[u * words + v / 64] |= 1 << (v % 64);
    }

    fn clear(rows: &mut [u64], words: usize, u: usize, v: usize) {
        rows[u * words + v / 64] &= !(1 << (v % 64));
    }

    fn step(&mut self, mut low: Vec<u64>, mut high: Vec<u64>) -> Step {
        if self.nodes >= self.budget {
            return Step::Budget;
        }
        self.nodes += 1;
        if !self.propagate(&mut low, &mut high) {
            return Step::Exhausted;
        }
        match self.first_undecided(&low, &high) {
            None => Step::Found(low),
            Some((u, v)) => {
                let mut narrowed = high.clone();
                Self::clear(&mut narrowed, self.words, u, v);
                match self.step(low.clone(), narrowed) {
                    Step::Exhausted => {}
                    other => return other,
                }
                Self::set(&mut low, self.words, u, v);
                self.step(low, high)
            }
        }
    }

    fn first_undecided(&self, low: &[u64], high: &[u64]) -> Option<(usize, usize)> {
        for i in 0..low.len() {
            let undecided = high[i] & !low[i];
            if undecided != 0 {
                let b = undecided.trailing_zeros() as usize;
                return Some((i / self.words, (i % self.words) * 64 + b));
            }
        }
        None
    }

    /// Shrinks the undecided window until stable. Returns false on conflict.
    fn propagate(&self, low: &mut [u64], high: &mut [u64]) -> bool {
        loop {
            // The committed arcs must not already overshoot d, and the
            // remaining freedom must still be able to cover it.
            let p_low = bool_power(self.n, self.words, low, self.k);
            let p_high = bool_power(self.n, self.words, high, self.k);
            for i in 0..low.len() {
                if p_low[i] & !self.d_rows[i] != 0 || self.d_rows[i] & !p_high[i] != 0 {
                    return false;
                }
            }
            if self.k != 2 {
                return true;
            }
            let mut changed = false;
            let words = self.words;
            for v in 0..self.n {
                let d_row = &self.d_rows[v * words..(v + 1) * words];
                for wi in 0..words {
                    // Present v -> u: row u may only reach what d's row v allows.
                    let mut bits = low[v * words + wi];
                    while bits != 0 {
                        let u = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        for w in 0..words {
                            if low[u * words + w] & !d_row[w] != 0 {
                                return false;
                            }
                            let kept = high[u * words + w] & d_row[w];
                            if kept != high[u * words + w] {
                                high[u * words + w] = kept;
                                changed = true;
                            }
                        }
                    }
                    // Undecided v -> u: impossible once row u commits an arc
                    // d's row v forbids.
                    let mut bits = high[v * words + wi] & !low[v * words + wi];
                    while bits != 0 {
                        let u = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let escapes = (0..words)
                            .any(|w| low[u * words + w] & !d_row[w] != 0);
                        if escapes {
                            high[v * words + wi] &= !(1 << (u % 64));
                            changed = true;
                        }
                    }
                }
            }
            // Each target arc needs a midpoint; a unique one is forced.
            for &(v, w) in &self.arcs {
                let mut found = None;
                let mut count = 0;
                for u in 0..self.n {
                    if Self::bit(high, words, v, u) && Self::bit(high, words, u, w) {
                        count += 1;
                        if count > 1 {
                            break;
                        }
                        found = Some(u);
                    }
                }
                match (count, found) {
                    (0, _) => return false,
                    (1, Some(u)) => {
                        if !Self::bit(low, words, v, u) {
                            Self::set(low, words, v, u);
                            changed = true;
                        }
                        if !Self::bit(low, words, u, w) {
                            Self::set(low, words, u, w);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }
}
