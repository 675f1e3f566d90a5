//! Acceptance gate: one test per shipped guarantee, each printing a
//! pass/fail line (visible with `--nocapture`) and holding a pinned
//! wall-clock bound. Run with `cargo test --test acceptance`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use digraph_roots::gen::{degree_preserving_swap, random_bijection, random_digraph};
use digraph_roots::isomorphism::{brute_force_isomorphism, find_isomorphism, is_isomorphic};
use digraph_roots::power::{power, verify_root, walk_power_oracle};
use digraph_roots::reduction::{reduce, subdivide, suspend, union_root};
use digraph_roots::rootsearch::{backtracking_root_search, exhaustive_roots, SearchStatus};
use digraph_roots::subdivision::{
    decide_root_in_class, extract_isomorphisms, find_core, seed_free_path, ClassRootDecision,
};
use digraph_roots::{disjoint_union, Digraph};

fn report(number: u32, title: &str, start: Instant, bound: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < bound,
        "criterion {number} ({title}): FAIL, took {elapsed:.2?}, bound {bound:.2?}"
    );
    println!("criterion {number} ({title}): PASS in {elapsed:.2?}");
}

fn densities(i: usize) -> f64 {
    0.1 + 0.1 * (i % 9) as f64
}

#[test]
fn criterion_01_power_oracle_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for i in 0..500 {
        let n = rng.random_range(1..=12);
        let d = random_digraph(&mut rng, n, densities(i));
        let k = 1 + (i % 6) as u32;
        assert_eq!(
            power(&d, k).unwrap(),
            walk_power_oracle(&d, k).unwrap(),
            "trial {i}: n = {n}, k = {k}"
        );
    }
    report(1, "power oracle agreement", start, Duration::from_secs(5));
}

#[test]
fn criterion_02_power_composition_law() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for i in 0..200 {
        let n = rng.random_range(1..=10);
        let d = random_digraph(&mut rng, n, densities(i));
        for a in [2u32, 3] {
            for b in [2u32, 3] {
                let staged = power(&power(&d, a).unwrap(), b).unwrap();
                assert_eq!(power(&d, a * b).unwrap(), staged, "trial {i}: a = {a}, b = {b}");
            }
        }
    }
    report(2, "power composition law", start, Duration::from_secs(5));
}

#[test]
fn criterion_03_constructive_union_roots_verify() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for i in 0..200 {
        let n = rng.random_range(1..=8);
        let d0 = random_digraph(&mut rng, n, densities(i));
        let k = [2u32, 3, 5][i % 3];
        let mut parts = Vec::new();
        let mut isos = Vec::new();
        for _ in 0..k {
            let pi = random_bijection(&mut rng, n);
            parts.push(d0.relabel(&pi).unwrap());
            isos.push(pi);
        }
        let (d, _) = disjoint_union(&parts).unwrap();
        let r = union_root(&d0, &parts, &isos).unwrap();
        assert!(verify_root(&r, k, &d).unwrap(), "trial {i}: n = {n}, k = {k}");
    }
    report(3, "constructive union roots verify", start, Duration::from_secs(10));
}

#[test]
fn criterion_04_exhaustive_census_vs_pruned_search() {
    let start = Instant::now();
    for mask in 0u32..512 {
        let arcs = (0..3).flat_map(|u| {
            (0..3).filter_map(move |v| (mask >> (u * 3 + v) & 1 == 1).then_some((u, v)))
        });
        let d = Digraph::from_arcs(3, arcs).unwrap();
        for k in [2u32, 3] {
            let census = exhaustive_roots(&d, k).unwrap();
            for root in &census {
                assert!(verify_root(root, k, &d).unwrap(), "mask {mask}: bad census root");
            }
            let outcome = backtracking_root_search(&d, k, 10_000_000).unwrap();
            match outcome.status {
                SearchStatus::RootFound => {
                    assert!(!census.is_empty(), "mask {mask}, k = {k}: search invented a root");
                    let witness = outcome.witness.expect("found roots carry a witness");
                    assert!(verify_root(&witness, k, &d).unwrap(), "mask {mask}: bad witness");
                }
                SearchStatus::NoRoot => {
                    assert!(census.is_empty(), "mask {mask}, k = {k}: search missed a root");
                }
                SearchStatus::BudgetExhausted => {
                    panic!("mask {mask}, k = {k}: search ran out of budget")
                }
            }
        }
    }
    report(4, "exhaustive census vs pruned search", start, Duration::from_secs(60));
}

#[test]
fn criterion_05_pinned_root_enumerations() {
    let start = Instant::now();
    let arc = Digraph::from_arcs(2, [(0, 1)]).unwrap();
    assert!(exhaustive_roots(&arc, 2).unwrap().is_empty());

    let loops = Digraph::from_arcs(2, [(0, 0), (1, 1)]).unwrap();
    let roots = exhaustive_roots(&loops, 2).unwrap();
    let two_cycle = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
    assert_eq!(roots.len(), 2);
    assert!(roots.contains(&loops));
    assert!(roots.contains(&two_cycle));
    report(5, "pinned root enumerations", start, Duration::from_secs(1));
}

#[test]
fn criterion_06_twin_instances_have_verified_roots() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for i in 0..100 {
        let n = rng.random_range(1..=5);
        let d1 = random_digraph(&mut rng, n, densities(i));
        let pi = random_bijection(&mut rng, n);
        let d2 = d1.relabel(&pi).unwrap();
        let k = 2 + (i % 2) as u32;
        let instance = reduce(&d1, &d2, k).unwrap();
        match decide_root_in_class(&instance.graph, k).unwrap() {
            ClassRootDecision::Root(r) => {
                assert!(verify_root(&r, k, &instance.graph).unwrap(), "trial {i}: bad root");
            }
            ClassRootDecision::NoRoot { .. } => panic!("trial {i}: twin instance lost its root"),
        }
    }
    report(6, "twin instances have verified roots", start, Duration::from_secs(60));
}

#[test]
fn criterion_07_non_isomorphic_instances_have_no_roots() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut found = 0usize;
    while found < 100 {
        let n = rng.random_range(1..=4);
        let density1 = rng.random_range(0.2..0.8);
        let density2 = rng.random_range(0.2..0.8);
        let d1 = random_digraph(&mut rng, n, density1);
        let d2 = random_digraph(&mut rng, n, density2);
        let fast = find_isomorphism(&d1, &d2);
        let slow = brute_force_isomorphism(&d1, &d2).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "checkers disagree on a sampled pair");
        if fast.is_some() {
            continue;
        }
        let k = 2 + (found % 2) as u32;
        let instance = reduce(&d1, &d2, k).unwrap();
        match decide_root_in_class(&instance.graph, k).unwrap() {
            ClassRootDecision::Root(_) => panic!("pair {found}: root for non-isomorphic inputs"),
            ClassRootDecision::NoRoot { .. } => {}
        }
        found += 1;
    }

    // Independent confirmation on the smallest hard no instance: the
    // pruned search must prove the absence of a square root outright.
    let with_loop = Digraph::from_arcs(1, [(0, 0)]).unwrap();
    let without = Digraph::empty(1);
    let instance = reduce(&with_loop, &without, 2).unwrap();
    assert_eq!(instance.graph.vertex_count(), 13);
    let outcome = backtracking_root_search(&instance.graph, 2, 100_000_000).unwrap();
    match outcome.status {
        SearchStatus::NoRoot => {}
        SearchStatus::RootFound => panic!("13-vertex no instance produced a root"),
        SearchStatus::BudgetExhausted => {
            panic!("13-vertex no instance exhausted the 10^8 node budget")
        }
    }
    report(7, "non-isomorphic instances have no roots", start, Duration::from_secs(600));
}

/// 100 scrambled (graph, root, k) triples whose components are of the
/// constructed class, parents up to 6 vertices, k in {2, 3}.
fn scrambled_class_instances() -> Vec<(Digraph, Digraph, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut instances = Vec::new();
    for i in 0..100 {
        let n = rng.random_range(1..=6);
        let d1 = random_digraph(&mut rng, n, densities(i));
        let pi = random_bijection(&mut rng, n);
        let d2 = d1.relabel(&pi).unwrap();
        let k = 2 + (i % 2) as u32;
        let instance = reduce(&d1, &d2, k).unwrap();
        let root = match decide_root_in_class(&instance.graph, k).unwrap() {
            ClassRootDecision::Root(r) => r,
            ClassRootDecision::NoRoot { .. } => unreachable!("twin instances have roots"),
        };
        let sigma = random_bijection(&mut rng, instance.graph.vertex_count());
        let d = instance.graph.relabel(&sigma).unwrap();
        let r = root.relabel(&sigma).unwrap();
        debug_assert!(verify_root(&r, k, &d).unwrap());
        instances.push((d, r, k));
    }
    instances
}

#[test]
fn criterion_08_isomorphism_extraction_round_trip() {
    let start = Instant::now();
    for (i, (d, r, k)) in scrambled_class_instances().into_iter().enumerate() {
        let maps = extract_isomorphisms(&d, &r, k).unwrap();
        assert_eq!(maps.len(), k as usize - 1, "instance {i}: wrong map count");

        // Validate every map independently, arc by arc in both directions.
        let components = d.weak_components();
        let (reference, _) = d.induced(&components[0]).unwrap();
        for (j, map) in maps.iter().enumerate() {
            let (other, _) = d.induced(&components[j + 1]).unwrap();
            assert_eq!(reference.vertex_count(), other.vertex_count());
            for u in 0..reference.vertex_count() {
                for v in 0..reference.vertex_count() {
                    assert_eq!(
                        reference.has_arc(u, v),
                        other.has_arc(map.apply(u), map.apply(v)),
                        "instance {i}, map {j}: arc mismatch at ({u}, {v})"
                    );
                }
            }
        }
    }
    report(8, "isomorphism extraction round trip", start, Duration::from_secs(60));
}

#[test]
fn criterion_09_source_path_structure_in_roots() {
    let start = Instant::now();
    for (i, (d, r, k)) in scrambled_class_instances().into_iter().enumerate() {
        let sources: Vec<usize> =
            (0..d.vertex_count()).filter(|&v| d.in_degree(v) == 0).collect();
        assert_eq!(sources.len(), k as usize, "instance {i}: wrong source count");

        let seed = seed_free_path(&d, &r, k).unwrap();
        let mut path_set = seed.vertices().to_vec();
        path_set.sort_unstable();
        assert_eq!(path_set, sources, "instance {i}: seed path is not the source set");

        // Freeness inside the root: unique successors and predecessors
        // along the path.
        for pair in seed.vertices().windows(2) {
            assert_eq!(r.out_neighbors(pair[0]), [pair[1]], "instance {i}: branching source");
            assert_eq!(r.in_neighbors(pair[1]), [pair[0]], "instance {i}: merging source");
        }

        // The source set absorbs its own root in-neighborhood.
        for &q in &sources {
            for &p in r.in_neighbors(q) {
                assert!(sources.contains(&p), "instance {i}: outside arc into the sources");
            }
        }
    }
    report(9, "source path structure in roots", start, Duration::from_secs(60));
}

/// Every vertex outside the core is thin, and every arc joins a core vertex
/// with a non-core vertex.
fn assert_subdivision_shape(s: &Digraph, core: &[usize]) {
    let in_core = |v: usize| core.binary_search(&v).is_ok();
    for v in 0..s.vertex_count() {
        if !in_core(v) {
            assert_eq!(s.in_degree(v), 1, "non-core vertex {v} is not thin");
            assert_eq!(s.out_degree(v), 1, "non-core vertex {v} is not thin");
        }
    }
    for (u, v) in s.arcs() {
        assert_ne!(in_core(u), in_core(v), "arc ({u}, {v}) does not alternate");
    }
}

/// No two distinct vertices share both a common in-neighbor and a common
/// out-neighbor.
fn assert_no_shared_neighbor_pairs(s: &Digraph) {
    for a in 0..s.vertex_count() {
        for b in a + 1..s.vertex_count() {
            let shared_in = s.in_neighbors(a).iter().any(|x| s.in_neighbors(b).contains(x));
            let shared_out = s.out_neighbors(a).iter().any(|x| s.out_neighbors(b).contains(x));
            assert!(
                !(shared_in && shared_out),
                "vertices {a} and {b} share an in-neighbor and an out-neighbor"
            );
        }
    }
}

#[test]
fn criterion_10_structural_invariants_of_the_constructions() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for i in 0..200 {
        let n = rng.random_range(1..=8);
        let d = random_digraph(&mut rng, n, densities(i));

        let (s, witness) = subdivide(&d);
        assert_subdivision_shape(&s, witness.core());
        assert_no_shared_neighbor_pairs(&s);

        let recovered = find_core(&s).unwrap();
        assert!(
            is_isomorphic(recovered.parent(), &d),
            "trial {i}: recovered parent differs"
        );

        // The two-input instance checks its own component, source, and
        // subdivision structure.
        let d2 = random_digraph(&mut rng, n, densities(i + 4));
        let k = 2 + (i % 2) as u32;
        let instance = reduce(&d, &d2, k).unwrap();
        instance.verify().unwrap();
    }
    report(10, "structural invariants of the constructions", start, Duration::from_secs(30));
}

#[test]
fn criterion_11_subdivided_suspension_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let mut pairs: Vec<(Digraph, Digraph)> = Vec::new();

    // At least ten non-isomorphic pairs with identical in- and out-degree
    // sequences: rewire two arcs without touching any degree, keep the
    // result when it is genuinely non-isomorphic.
    while pairs.len() < 10 {
        let d = random_digraph(&mut rng, 5, 0.5);
        if let Some(swapped) = degree_preserving_swap(&mut rng, &d, 40) {
            if brute_force_isomorphism(&d, &swapped).unwrap().is_none() {
                pairs.push((d, swapped));
            }
        }
    }
    for i in 0..45 {
        let n = rng.random_range(1..=5);
        let d1 = random_digraph(&mut rng, n, densities(i));
        let pi = random_bijection(&mut rng, n);
        pairs.push((d1.relabel(&pi).unwrap(), d1));
    }
    while pairs.len() < 100 {
        let n = rng.random_range(1..=5);
        let density1 = rng.random_range(0.1..0.9);
        let density2 = rng.random_range(0.1..0.9);
        let d1 = random_digraph(&mut rng, n, density1);
        let d2 = random_digraph(&mut rng, n, density2);
        pairs.push((d1, d2));
    }

    let gadget = |d: &Digraph| subdivide(&suspend(d).unwrap().graph).0;
    for (i, (d1, d2)) in pairs.iter().enumerate() {
        let plain = is_isomorphic(d1, d2);
        let suspended = is_isomorphic(&gadget(d1), &gadget(d2));
        assert_eq!(plain, suspended, "pair {i}: the construction broke equivalence");
    }
    report(11, "subdivided suspension equivalence", start, Duration::from_secs(60));
}

#[test]
fn criterion_12_isomorphism_checker_vs_permutation_brute_force() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    for i in 0..200 {
        let n = rng.random_range(1..=6);
        let d1 = random_digraph(&mut rng, n, densities(i));
        let d2 = if i % 2 == 0 {
            let pi = random_bijection(&mut rng, n);
            d1.relabel(&pi).unwrap()
        } else {
            random_digraph(&mut rng, n, densities(i + 3))
        };
        let fast = find_isomorphism(&d1, &d2);
        let slow = brute_force_isomorphism(&d1, &d2).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "trial {i}: checkers disagree");
        if let Some(map) = fast {
            let relabeled = d1.relabel(&map).unwrap();
            assert_eq!(relabeled, d2, "trial {i}: returned map is not an isomorphism");
        }
    }
    report(12, "isomorphism checker vs permutation brute force", start, Duration::from_secs(60));
}

#[test]
fn criterion_13_seeded_experiment_determinism() {
    let start = Instant::now();
    let args = [
        "experiment", "--trials", "100", "--max-n", "4", "--k-set", "2,3", "--seed", "42",
        "--json",
    ];
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_digraph-roots"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0), "experiment reported disagreement");
    assert_eq!(second.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "machine output differs between runs");
    report(13, "seeded experiment determinism", start, Duration::from_secs(60));
}
