//! Randomized invariants tying the fast paths to the slow oracles and the
//! constructions to their inverses.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use digraph_roots::gen::random_bijection;
use digraph_roots::io::GraphFile;
use digraph_roots::isomorphism::{brute_force_isomorphism, is_isomorphic};
use digraph_roots::power::{power, verify_root, walk_power_oracle};
use digraph_roots::reduction::{reduce, subdivide, union_root};
use digraph_roots::rootsearch::{backtracking_root_search, exhaustive_roots, SearchStatus};
use digraph_roots::subdivision::{decide_root_in_class, find_core, ClassRootDecision};
use digraph_roots::{disjoint_union, Digraph, VertexBijection};

fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * n)
            .prop_map(move |arcs| Digraph::from_arcs(n, arcs).unwrap())
    })
}

fn relabeled(d: &Digraph, seed: u64) -> (Digraph, VertexBijection) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pi = random_bijection(&mut rng, d.vertex_count());
    (d.relabel(&pi).unwrap(), pi)
}

proptest! {
    #[test]
    fn squaring_agrees_with_the_walk_oracle(d in arb_digraph(8), k in 1u32..6) {
        prop_assert_eq!(power(&d, k).unwrap(), walk_power_oracle(&d, k).unwrap());
    }

    #[test]
    fn power_composes_multiplicatively(d in arb_digraph(7), a in 1u32..4, b in 1u32..4) {
        let direct = power(&d, a * b).unwrap();
        let staged = power(&power(&d, a).unwrap(), b).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn power_commutes_with_relabeling(d in arb_digraph(7), k in 1u32..5, seed in any::<u64>()) {
        let (scrambled, pi) = relabeled(&d, seed);
        let a = power(&scrambled, k).unwrap();
        let b = power(&d, k).unwrap().relabel(&pi).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn serialization_round_trips(d in arb_digraph(9)) {
        let text = GraphFile::bare(d.clone()).serialize();
        let parsed = GraphFile::parse(&text).unwrap();
        prop_assert_eq!(&parsed.graph, &d);
        prop_assert_eq!(parsed.serialize(), text);
    }

    #[test]
    fn assembled_union_roots_always_verify(d0 in arb_digraph(6), k in 2u32..5, seed in any::<u64>()) {
        let mut parts = Vec::new();
        let mut isos = Vec::new();
        for j in 0..k {
            let (part, pi) = relabeled(&d0, seed.wrapping_add(j as u64));
            parts.push(part);
            isos.push(pi);
        }
        let (d, _) = disjoint_union(&parts).unwrap();
        let r = union_root(&d0, &parts, &isos).unwrap();
        prop_assert!(verify_root(&r, k, &d).unwrap());
    }

    #[test]
    fn subdivision_cores_recover_the_original(d in arb_digraph(8)) {
        let (s, _) = subdivide(&d);
        let witness = find_core(&s).unwrap();
        prop_assert_eq!(witness.parent(), &d);
    }

    #[test]
    fn instances_from_twins_have_roots(d in arb_digraph(4), k in 2u32..4, seed in any::<u64>()) {
        let (twin, _) = relabeled(&d, seed);
        let instance = reduce(&d, &twin, k).unwrap();
        instance.verify().unwrap();
        match decide_root_in_class(&instance.graph, k).unwrap() {
            ClassRootDecision::Root(r) => prop_assert!(verify_root(&r, k, &instance.graph).unwrap()),
            ClassRootDecision::NoRoot { .. } => prop_assert!(false, "twin instance lost its root"),
        }
    }

    #[test]
    fn class_decision_matches_isomorphism(d1 in arb_digraph(3), d2 in arb_digraph(3), k in 2u32..4) {
        prop_assume!(d1.vertex_count() == d2.vertex_count());
        let instance = reduce(&d1, &d2, k).unwrap();
        let has_root = matches!(
            decide_root_in_class(&instance.graph, k).unwrap(),
            ClassRootDecision::Root(_)
        );
        prop_assert_eq!(has_root, is_isomorphic(&d1, &d2));
    }

    #[test]
    fn refined_isomorphism_matches_brute_force(d1 in arb_digraph(4), d2 in arb_digraph(4)) {
        let fast = is_isomorphic(&d1, &d2);
        let slow = brute_force_isomorphism(&d1, &d2).unwrap().is_some();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn isomorphism_accepts_every_relabeling(d in arb_digraph(6), seed in any::<u64>()) {
        let (twin, _) = relabeled(&d, seed);
        prop_assert!(is_isomorphic(&d, &twin));
    }

    #[test]
    fn pruned_search_agrees_with_enumeration(d in arb_digraph(3), k in 2u32..4) {
        let all = exhaustive_roots(&d, k).unwrap();
        let outcome = backtracking_root_search(&d, k, 1_000_000).unwrap();
        match outcome.status {
            SearchStatus::RootFound => {
                prop_assert!(!all.is_empty());
                prop_assert!(verify_root(&outcome.witness.unwrap(), k, &d).unwrap());
            }
            SearchStatus::NoRoot => prop_assert!(all.is_empty()),
            SearchStatus::BudgetExhausted => prop_assert!(false, "tiny search ran out of budget"),
        }
    }
}
