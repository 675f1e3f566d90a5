//! A seeded end-to-end experiment: sample digraph pairs, push each pair
//! through the instance builder and the class root decision, independently
//! test the pair for isomorphism, and tabulate how the two answers line up.
//! Root existence and isomorphism are equivalent by construction, so the
//! agreement matrix must be diagonal; anything off-diagonal exposes a bug.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gen::{random_bijection, random_digraph};
use crate::isomorphism::{brute_force_isomorphism, is_isomorphic, PERMUTATION_GUARD};
use crate::reduction::reduce;
use crate::subdivision::{decide_root_in_class, ClassRootDecision};

/// Parameters of one experiment run. The same config always produces the
/// same report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub trials: u32,
    /// Inclusive upper bound on sampled vertex counts (lower bound 1).
    pub max_n: usize,
    /// Cycled through per trial; every entry must be at least 2.
    pub ks: Vec<u32>,
    pub seed: u64,
    /// Additionally confirm each isomorphism answer against permutation
    /// brute force; caps `max_n` at the enumeration guard.
    pub cross_check: bool,
}

/// One trial's inputs and the two independently computed answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub index: u32,
    pub k: u32,
    /// Whether the second digraph was forced to be a relabeled copy of the
    /// first (every even trial).
    pub twin: bool,
    pub has_root: bool,
    pub isomorphic: bool,
}

/// Tabulated results of [`run_experiment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentReport {
    pub outcomes: Vec<TrialOutcome>,
    /// `matrix[has_root as usize][isomorphic as usize]` counts trials.
    pub matrix: [[u32; 2]; 2],
    /// Trial indices where root existence and isomorphism disagreed.
    pub mismatches: Vec<u32>,
    /// Trial indices where the brute-force cross-check contradicted the
    /// isomorphism checker (only populated with `cross_check`).
    pub cross_check_failures: Vec<u32>,
}

impl ExperimentReport {
    /// True when every trial landed on the diagonal and no cross-check
    /// failed.
    pub fn agreement(&self) -> bool {
        self.mismatches.is_empty() && self.cross_check_failures.is_empty()
    }

    pub fn trials(&self) -> u32 {
        self.outcomes.len() as u32
    }
}

/// Runs the experiment described by `config`.
///
/// Per trial: sample `D1` (size in `1..=max_n`, density in `0.1..=0.9`,
/// loops allowed); on even trials set `D2` to a randomly relabeled copy of
/// `D1`, on odd trials sample `D2` independently; build the k-component
/// instance from the pair and decide root existence inside the class; and
/// separately test `is_isomorphic(D1, D2)`. Infeasible bounds are refused
/// up front.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if config.max_n == 0 {
        return Err(Error::InfeasibleBounds {
            reason: "max-n must be at least 1".into(),
        });
    }
    if config.ks.is_empty() {
        return Err(Error::InfeasibleBounds {
            reason: "the k set must be nonempty".into(),
        });
    }
    if let Some(&k) = config.ks.iter().find(|&&k| k < 2) {
        return Err(Error::InfeasibleBounds {
            reason: format!("every k must be at least 2, got {k}"),
        });
    }
    if config.cross_check && config.max_n > PERMUTATION_GUARD {
        return Err(Error::InfeasibleBounds {
            reason: format!(
                "cross-check enumerates all permutations and is capped at {PERMUTATION_GUARD} \
                 vertices, got max-n {}",
                config.max_n
            ),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = ExperimentReport {
        outcomes: Vec::with_capacity(config.trials as usize),
        matrix: [[0; 2]; 2],
        mismatches: Vec::new(),
        cross_check_failures: Vec::new(),
    };
    for index in 0..config.trials {
        let k = config.ks[index as usize % config.ks.len()];
        let n1 = rng.random_range(1..=config.max_n);
        let density1 = rng.random_range(0.1..=0.9);
        let d1 = random_digraph(&mut rng, n1, density1);
        let twin = index % 2 == 0;
        let d2 = if twin {
            let pi = random_bijection(&mut rng, n1);
            d1.relabel(&pi)?
        } else {
            let n2 = rng.random_range(1..=config.max_n);
            let density2 = rng.random_range(0.1..=0.9);
            random_digraph(&mut rng, n2, density2)
        };

        let instance = reduce(&d1, &d2, k)?;
        let has_root = matches!(
            decide_root_in_class(&instance.graph, k)?,
            ClassRootDecision::Root(_)
        );
        let isomorphic = is_isomorphic(&d1, &d2);
        if config.cross_check && brute_force_isomorphism(&d1, &d2)?.is_some() != isomorphic {
            report.cross_check_failures.push(index);
        }
        if has_root != isomorphic {
            report.mismatches.push(index);
        }
        report.matrix[has_root as usize][isomorphic as usize] += 1;
        report.outcomes.push(TrialOutcome {
            index,
            k,
            twin,
            has_root,
            isomorphic,
        });
    }
    Ok(report)
}
