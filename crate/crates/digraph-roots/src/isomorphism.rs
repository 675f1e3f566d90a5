//! Digraph isomorphism: signature-based color refinement, an
//! individualization backtracking search on top of it, and a permutation
//! brute force kept around as an independent oracle.

use std::collections::BTreeMap;

use crate::digraph::{Digraph, VertexBijection};
use crate::error::{Error, Result};

/// A vertex coloring, together with whether one more refinement round would
/// change it. Color ids are canonical: class `0` is the class of the first
/// vertex in scan order, and ids grow by first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    classes: usize,
    stable: bool,
}

impl Coloring {
    /// The trivial coloring placing every vertex in one class.
    pub fn uniform(n: usize) -> Self {
        Coloring {
            colors: vec![0; n],
            classes: usize::from(n > 0),
            stable: false,
        }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }

    /// Class sizes indexed by color id.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.classes];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }
}

/// One refinement round over several graphs sharing a color space.
///
/// The signature of a vertex is its current color plus the sorted colors of
/// its out- and in-neighbors. New ids are handed out in order of first
/// appearance, scanning graph 0's vertices ascending, then graph 1's, and so
/// on, which keeps ids comparable across the graphs being refined together.
fn refine_round(graphs: &[&Digraph], colors: &mut [Vec<usize>]) -> usize {
    let mut ids: BTreeMap<(usize, Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
    let mut next: Vec<Vec<usize>> = Vec::with_capacity(graphs.len());
    for (g, d) in graphs.iter().enumerate() {
        let mine = &colors[g];
        let mut fresh = Vec::with_capacity(d.vertex_count());
        for v in 0..d.vertex_count() {
            let mut outs: Vec<usize> = d.out_neighbors(v).iter().map(|&w| mine[w]).collect();
            let mut ins: Vec<usize> = d.in_neighbors(v).iter().map(|&w| mine[w]).collect();
            outs.sort_unstable();
            ins.sort_unstable();
            let count = ids.len();
            let id = *ids.entry((mine[v], outs, ins)).or_insert(count);
            fresh.push(id);
        }
        next.push(fresh);
    }
    colors.clone_from_slice(&next);
    ids.len()
}

/// Refines until stable. Splitting is monotone, so stability is reached in
/// at most `n` rounds.
fn refine_to_stable(graphs: &[&Digraph], colors: &mut [Vec<usize>], mut classes: usize) -> usize {
    loop {
        let refined = refine_round(graphs, colors);
        if refined == classes {
            return classes;
        }
        classes = refined;
    }
}

/// Iterated signature refinement of a single digraph, starting from
/// `initial` (or the uniform coloring). The result is stable: one more
/// round would reproduce it.
pub fn refine_colors(d: &Digraph, initial: Option<&Coloring>) -> Result<Coloring> {
    let n = d.vertex_count();
    let mut colors = match initial {
        Some(c) => {
            if c.colors.len() != n {
                return Err(Error::VertexCountMismatch {
                    left: c.colors.len(),
                    right: n,
                });
            }
            c.colors.clone()
        }
        None => vec![0; n],
    };
    let mut work = [std::mem::take(&mut colors)];
    // Seed with one round so foreign initial ids become canonical.
    let classes = refine_round(&[d], &mut work);
    let classes = refine_to_stable(&[d], &mut work, classes);
    let [colors] = work;
    Ok(Coloring {
        colors,
        classes,
        stable: true,
    })
}

fn arc_preserving(d1: &Digraph, d2: &Digraph, map: &VertexBijection) -> bool {
    d1.arc_count() == d2.arc_count()
        && d1.arcs().all(|(u, v)| d2.has_arc(map.apply(u), map.apply(v)))
        && d2.arcs().all(|(u, v)| d1.has_arc(map.preimage(u), map.preimage(v)))
}

/// Finds an isomorphism from `d1` onto `d2`, or `None` when the graphs are
/// not isomorphic.
///
/// The search refines both graphs in a shared color space, prunes on any
/// class whose two sides differ in size, and otherwise individualizes the
/// smallest `d1`-vertex of the largest ambiguous class, trying its possible
/// images in ascending order. Tie-breaks are fixed, so the returned map is
/// deterministic. The search is complete: `None` means no isomorphism exists.
pub fn find_isomorphism(d1: &Digraph, d2: &Digraph) -> Option<VertexBijection> {
    if d1.vertex_count() != d2.vertex_count() || d1.arc_count() != d2.arc_count() {
        return None;
    }
    let n = d1.vertex_count();
    if n == 0 {
        return Some(VertexBijection::identity(0));
    }
    let colors = [vec![0; n], vec![0; n]];
    search(d1, d2, colors, 1)
}

fn search(
    d1: &Digraph,
    d2: &Digraph,
    mut colors: [Vec<usize>; 2],
    classes: usize,
) -> Option<VertexBijection> {
    let n = d1.vertex_count();
    let classes = refine_to_stable(&[d1, d2], &mut colors, classes);

    let mut size1 = vec![0usize; classes];
    let mut size2 = vec![0usize; classes];
    for &c in &colors[0] {
        size1[c] += 1;
    }
    for &c in &colors[1] {
        size2[c] += 1;
    }
    if size1 != size2 {
        return None;
    }

    // Largest ambiguous class; ties go to the smallest color id.
    let target = (0..classes)
        .filter(|&c| size1[c] > 1)
        .max_by_key(|&c| (size1[c], std::cmp::Reverse(c)));

    match target {
        None => {
            // Discrete coloring: read the map off matching colors.
            let mut by_color = vec![usize::MAX; classes];
            for (w, &c) in colors[1].iter().enumerate() {
                by_color[c] = w;
            }
            let forward: Vec<usize> = colors[0].iter().map(|&c| by_color[c]).collect();
            let map = VertexBijection::new(forward).ok()?;
            arc_preserving(d1, d2, &map).then_some(map)
        }
        Some(c) => {
            let u = (0..n).find(|&v| colors[0][v] == c).expect("class is nonempty");
            for w in 0..n {
                if colors[1][w] != c {
                    continue;
                }
                let mut branch = colors.clone();
                branch[0][u] = classes;
                branch[1][w] = classes;
                if let Some(map) = search(d1, d2, branch, classes + 1) {
                    return Some(map);
                }
            }
            None
        }
    }
}

pub fn is_isomorphic(d1: &Digraph, d2: &Digraph) -> bool {
    find_isomorphism(d1, d2).is_some()
}

/// Hard cap for [`brute_force_isomorphism`]; `9!` permutations would no
/// longer be a reasonable oracle.
pub const PERMUTATION_GUARD: usize = 8;

/// Permutation brute force: tries every bijection in lexicographic order and
/// returns the first that preserves arcs both ways.
///
/// Deliberately shares nothing with the refinement search; it exists to
/// cross-check it. Rejects graphs above [`PERMUTATION_GUARD`] vertices.
pub fn brute_force_isomorphism(d1: &Digraph, d2: &Digraph) -> Result<Option<VertexBijection>> {
    let n = d1.vertex_count();
    if n > PERMUTATION_GUARD || d2.vertex_count() > PERMUTATION_GUARD {
        return Err(Error::PermutationGuard {
            n: n.max(d2.vertex_count()),
            max: PERMUTATION_GUARD,
        });
    }
    if n != d2.vertex_count() {
        return Ok(None);
    }
    let mut image = vec![0usize; n];
    let mut used = vec![false; n];
    fn descend(
        d1: &Digraph,
        d2: &Digraph,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> Option<VertexBijection> {
        let n = image.len();
        if depth == n {
            let map = VertexBijection::new(image.clone()).expect("image is a permutation");
            return arc_preserving(d1, d2, &map).then_some(map);
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            used[w] = true;
            image[depth] = w;
            if let Some(map) = descend(d1, d2, image, used, depth + 1) {
                return Some(map);
            }
            used[w] = false;
        }
        None
    }
    Ok(descend(d1, d2, &mut image, &mut used, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    #[test]
    fn refinement_separates_degrees() {
        // A star: center 0 points at 1, 2, 3.
        let d = Digraph::from_arcs(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = refine_colors(&d, None).unwrap();
        assert!(c.is_stable());
        assert_eq!(c.class_count(), 2);
        assert_eq!(c.colors()[0], 0);
        assert_eq!(c.colors()[1], c.colors()[2]);
        assert_eq!(c.colors()[2], c.colors()[3]);
    }

    #[test]
    fn refining_a_stable_coloring_changes_nothing() {
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let once = refine_colors(&d, None).unwrap();
        let twice = refine_colors(&d, Some(&once)).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn vertex_transitive_graphs_stay_monochrome() {
        let c = refine_colors(&cycle(5), None).unwrap();
        assert_eq!(c.class_count(), 1);
    }

    #[test]
    fn initial_coloring_is_respected() {
        let d = cycle(4);
        let mut seed = Coloring::uniform(4);
        seed.colors[1] = 1;
        seed.classes = 2;
        let c = refine_colors(&d, Some(&seed)).unwrap();
        // Individualizing one vertex of a 4-cycle makes everything rigid.
        assert_eq!(c.class_count(), 4);
    }

    #[test]
    fn relabeled_graphs_share_class_size_multisets() {
        let d = Digraph::from_arcs(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
            .unwrap();
        let map = VertexBijection::new(vec![3, 5, 0, 1, 4, 2]).unwrap();
        let e = d.relabel(&map).unwrap();
        let mut a = refine_colors(&d, None).unwrap().class_sizes();
        let mut b = refine_colors(&e, None).unwrap().class_sizes();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn finds_the_rotation_between_relabeled_cycles() {
        let d = cycle(6);
        let map = VertexBijection::new(vec![2, 4, 0, 5, 1, 3]).unwrap();
        let e = d.relabel(&map).unwrap();
        let found = find_isomorphism(&d, &e).expect("relabelings are isomorphic");
        assert!(arc_preserving(&d, &e, &found));
    }

    #[test]
    fn distinguishes_cycle_orientations_from_unions() {
        // A 6-cycle versus two 3-cycles: same degrees everywhere.
        let six = cycle(6);
        let two_threes =
            Digraph::from_arcs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&six, &two_threes));
    }

    #[test]
    fn arc_direction_matters() {
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let fork = Digraph::from_arcs(3, [(1, 0), (1, 2)]).unwrap();
        assert!(!is_isomorphic(&path, &fork));
        assert!(brute_force_isomorphism(&path, &fork).unwrap().is_none());
    }

    #[test]
    fn empty_graphs_are_isomorphic() {
        assert!(is_isomorphic(&Digraph::empty(0), &Digraph::empty(0)));
        let map = find_isomorphism(&Digraph::empty(3), &Digraph::empty(3)).unwrap();
        assert_eq!(map.len(), 3);
    }

    #[test]
    fn brute_force_agrees_on_all_two_vertex_digraphs() {
        // All 16 digraphs on two vertices, both orders of every pair.
        let all: Vec<Digraph> = (0u32..16)
            .map(|mask| {
                let arcs = [(0, 0), (0, 1), (1, 0), (1, 1)];
                Digraph::from_arcs(
                    2,
                    arcs.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &a)| a),
                )
                .unwrap()
            })
            .collect();
        for a in &all {
            for b in &all {
                let fast = find_isomorphism(a, b);
                let slow = brute_force_isomorphism(a, b).unwrap();
                assert_eq!(fast.is_some(), slow.is_some(), "{a:?} vs {b:?}");
                if let Some(map) = fast {
                    assert!(arc_preserving(a, b, &map));
                }
            }
        }
    }

    #[test]
    fn brute_force_guard_trips() {
        let big = Digraph::empty(9);
        assert!(matches!(
            brute_force_isomorphism(&big, &big),
            Err(Error::PermutationGuard { n: 9, max: 8 })
        ));
    }
}
