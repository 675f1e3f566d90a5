//! Random generation of test inputs: digraphs by arc density, vertex
//! permutations, and degree-preserving arc swaps. All functions draw only
//! from the passed generator, so a seeded generator reproduces the exact
//! same objects.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::{Digraph, VertexBijection};

/// Samples a digraph on `n` vertices where each of the n^2 ordered pairs
/// (loops included) becomes an arc independently with probability
/// `density`. `density` must lie in `[0, 1]`.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.random_bool(density) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("generated arcs are in range")
}

/// Samples a uniformly random bijection on `n` vertices.
pub fn random_bijection<R: Rng + ?Sized>(rng: &mut R, n: usize) -> VertexBijection {
    let mut forward: Vec<usize> = (0..n).collect();
    forward.shuffle(rng);
    VertexBijection::new(forward).expect("a shuffled identity is a bijection")
}

/// Tries to produce a digraph with the same per-vertex in- and out-degrees
/// as `d` but a different arc set, by swapping the heads of two arcs.
///
/// Picks arc pairs `(a, b), (c, d)` at random and rewires them to
/// `(a, d), (c, b)` when that neither duplicates an existing arc nor
/// degenerates. Returns `None` when no valid swap is found within
/// `attempts` tries; the result may or may not be isomorphic to `d`, so
/// callers needing a non-isomorphic partner must test for that themselves.
pub fn degree_preserving_swap<R: Rng + ?Sized>(
    rng: &mut R,
    d: &Digraph,
    attempts: usize,
) -> Option<Digraph> {
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    if arcs.len() < 2 {
        return None;
    }
    for _ in 0..attempts {
        let i = rng.random_range(0..arcs.len());
        let j = rng.random_range(0..arcs.len());
        let (a, b) = arcs[i];
        let (c, e) = arcs[j];
        if a == c || b == e || d.has_arc(a, e) || d.has_arc(c, b) {
            continue;
        }
        let swapped = arcs
            .iter()
            .enumerate()
            .map(|(idx, &arc)| {
                if idx == i {
                    (a, e)
                } else if idx == j {
                    (c, b)
                } else {
                    arc
                }
            })
            .collect::<Vec<_>>();
        return Some(Digraph::from_arcs(d.vertex_count(), swapped).expect("swap stays in range"));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn degrees(d: &Digraph) -> (Vec<usize>, Vec<usize>) {
        let outs = (0..d.vertex_count()).map(|v| d.out_degree(v)).collect();
        let ins = (0..d.vertex_count()).map(|v| d.in_degree(v)).collect();
        (outs, ins)
    }

    #[test]
    fn fixed_seed_reproduces_the_graph() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(random_digraph(&mut a, 6, 0.5), random_digraph(&mut b, 6, 0.5));
    }

    #[test]
    fn extreme_densities() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_digraph(&mut rng, 4, 0.0).arc_count(), 0);
        assert_eq!(random_digraph(&mut rng, 4, 1.0).arc_count(), 16);
    }

    #[test]
    fn random_bijection_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pi = random_bijection(&mut rng, 10);
        let mut seen = [false; 10];
        for v in 0..10 {
            seen[pi.apply(v)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn swap_preserves_degree_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = random_digraph(&mut rng, 6, 0.4);
        if let Some(swapped) = degree_preserving_swap(&mut rng, &d, 200) {
            assert_eq!(degrees(&d), degrees(&swapped));
            assert_ne!(d, swapped);
        }
    }

    #[test]
    fn swap_on_tiny_graphs_returns_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert!(degree_preserving_swap(&mut rng, &d, 50).is_none());
    }
}
