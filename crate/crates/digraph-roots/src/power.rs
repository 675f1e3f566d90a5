//! Digraph powers: `power(D, k)` has an arc `a -> b` exactly when `D` has a
//! walk of length `k` from `a` to `b`.

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Boolean matrix product over packed bit-rows: `out[i] = OR of b[j] for j in a[i]`.
pub(crate) fn bool_mul(n: usize, words: usize, a: &[u64], b: &[u64], out: &mut [u64]) {
    out.fill(0);
    for i in 0..n {
        let acc = &mut out[i * words..(i + 1) * words];
        for (w, &word) in a[i * words..(i + 1) * words].iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let j = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let row = &b[j * words..(j + 1) * words];
                for (dst, &src) in acc.iter_mut().zip(row) {
                    *dst |= src;
                }
            }
        }
    }
}

/// Raises a packed bit-matrix to the `k`-th Boolean power, `k >= 1`, by
/// repeated squaring.
pub(crate) fn bool_power(n: usize, words: usize, rows: &[u64], k: u32) -> Vec<u64> {
    debug_assert!(k >= 1);
    let mut result: Option<Vec<u64>> = None;
    let mut base = rows.to_vec();
    let mut scratch = vec![0u64; rows.len()];
    let mut e = k;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => {
                    bool_mul(n, words, &r, &base, &mut scratch);
                    std::mem::replace(&mut scratch, r)
                }
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        bool_mul(n, words, &base, &base, &mut scratch);
        std::mem::swap(&mut base, &mut scratch);
    }
    result.expect("k >= 1 sets the result at least once")
}

/// The `k`-th power of `D`. Rejects `k = 0`: the identity relation is not a
/// digraph power in this setting.
pub fn power(d: &Digraph, k: u32) -> Result<Digraph> {
    if k == 0 {
        return Err(Error::KTooSmall { k, min: 1 });
    }
    let n = d.vertex_count();
    let rows = bool_power(n, d.words_per_row(), d.bit_rows(), k);
    Ok(Digraph::from_rows(n, rows))
}

/// Reference implementation of `power` for cross-checking.
///
/// Walks the adjacency lists `k` single steps per source vertex and never
/// touches the bit-matrix path, so the two implementations share no code
/// beyond the digraph accessors. Correct for any `k`, intended for small `k`.
pub fn walk_power_oracle(d: &Digraph, k: u32) -> Result<Digraph> {
    if k == 0 {
        return Err(Error::KTooSmall { k, min: 1 });
    }
    let n = d.vertex_count();
    let mut arcs = Vec::new();
    for source in 0..n {
        let mut frontier = vec![false; n];
        frontier[source] = true;
        for _ in 0..k {
            let mut next = vec![false; n];
            for (u, hit) in frontier.iter().enumerate() {
                if *hit {
                    for &v in d.out_neighbors(u) {
                        next[v] = true;
                    }
                }
            }
            frontier = next;
            if !frontier.iter().any(|&hit| hit) {
                break;
            }
        }
        for (target, hit) in frontier.iter().enumerate() {
            if *hit {
                arcs.push((source, target));
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}

/// Checks whether `power(r, k) == d`. The vertex sets must already agree.
pub fn verify_root(r: &Digraph, k: u32, d: &Digraph) -> Result<bool> {
    if r.vertex_count() != d.vertex_count() {
        return Err(Error::VertexCountMismatch {
            left: r.vertex_count(),
            right: d.vertex_count(),
        });
    }
    Ok(power(r, k)? == *d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    #[test]
    fn first_power_is_the_digraph_itself() {
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (3, 3)]).unwrap();
        assert_eq!(power(&d, 1).unwrap(), d);
    }

    #[test]
    fn cube_of_the_triangle_is_three_loops() {
        let d = cycle(3);
        let cubed = power(&d, 3).unwrap();
        let loops = Digraph::from_arcs(3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(cubed, loops);
    }

    #[test]
    fn powers_may_lose_arcs() {
        // A path stops contributing walks once k exceeds its length.
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let squared = power(&d, 2).unwrap();
        assert_eq!(squared.arcs().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(power(&d, 3).unwrap().arc_count(), 0);
    }

    #[test]
    fn zeroth_power_rejected() {
        let d = cycle(3);
        assert!(matches!(power(&d, 0), Err(Error::KTooSmall { k: 0, min: 1 })));
        assert!(matches!(
            walk_power_oracle(&d, 0),
            Err(Error::KTooSmall { k: 0, min: 1 })
        ));
    }

    #[test]
    fn large_exponent_on_a_cycle_wraps_around() {
        // On the 6-cycle, the k-th power is rotation by k mod 6.
        let d = cycle(6);
        let k = (1u32 << 31) - 2; // 2147483646 = 6 * 357913941, so rotation by 0
        let p = power(&d, k).unwrap();
        let expected = Digraph::from_arcs(6, (0..6).map(|v| (v, v))).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn oracle_agrees_on_a_handful_of_fixed_graphs() {
        let samples = [
            Digraph::empty(1),
            Digraph::from_arcs(1, [(0, 0)]).unwrap(),
            cycle(5),
            Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 0)]).unwrap(),
            Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 2)]).unwrap(),
        ];
        for d in &samples {
            for k in 1..=6 {
                assert_eq!(power(d, k).unwrap(), walk_power_oracle(d, k).unwrap());
            }
        }
    }

    #[test]
    fn power_composes_multiplicatively() {
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 0)]).unwrap();
        for (s, t) in [(2, 3), (1, 4), (3, 2)] {
            let lhs = power(&d, s * t).unwrap();
            let rhs = power(&power(&d, s).unwrap(), t).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn verify_root_checks_sizes_first() {
        let r = cycle(3);
        let d = cycle(4);
        assert!(matches!(
            verify_root(&r, 2, &d),
            Err(Error::VertexCountMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn square_root_of_two_loops() {
        let two_loops = Digraph::from_arcs(2, [(0, 0), (1, 1)]).unwrap();
        let swap = cycle(2);
        assert!(verify_root(&swap, 2, &two_loops).unwrap());
        assert!(!verify_root(&swap, 3, &two_loops).unwrap());
    }

    #[test]
    fn wide_matrix_rows_cross_word_boundaries() {
        // 70 vertices forces two words per row.
        let n = 70;
        let d = Digraph::from_arcs(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap();
        let p = power(&d, 65).unwrap();
        let expected = Digraph::from_arcs(n, (0..n).map(|v| (v, (v + 65) % n))).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p, walk_power_oracle(&d, 65).unwrap());
    }
}
