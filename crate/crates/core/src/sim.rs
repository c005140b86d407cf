//! Seeded erasure simulation.
//!
//! Randomness comes from SplitMix64 (64-bit state). The master generator
//! draws one seed per trial in trial order, so a report depends only on the
//! seed, never on the number of worker threads.

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, DecodeFailure, DecodeOutcome, ErasurePattern, LinearCode, Locality};
use crate::exec::{map_indices, OracleConfig};
use crate::galois::Symbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("cannot erase {erasures} of {n} symbols")]
    TooManyErasures { erasures: usize, n: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Repair statistics for the erased symbols of one locality class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairClass {
    /// `None` for coordinates with no repair group.
    pub locality: Option<usize>,
    pub erased: usize,
    /// Repaired from an intact repair group.
    pub local: usize,
    /// Repair group hit, but the message was still decodable.
    pub global: usize,
    /// Neither.
    pub lost: usize,
    /// Number of symbols read per repair -> count.
    pub reads: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimReport {
    pub seed: u64,
    pub trials: usize,
    pub erasures: usize,
    /// Erasure pattern size -> number of trials.
    pub erasure_sizes: BTreeMap<usize, usize>,
    pub successes: usize,
    pub insufficient_rank: usize,
    pub inconsistent: usize,
    pub repair: Vec<RepairClass>,
}

impl SimReport {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.successes as f64 / self.trials as f64
    }
}

struct Trial {
    outcome: Result<(), DecodeFailure>,
    /// (class index, repair kind) per erased symbol.
    repairs: Vec<(usize, RepairKind)>,
}

enum RepairKind {
    Local(usize),
    Global(usize),
    Lost,
}

/// Uniform `size`-subset of `0..n` by a partial Fisher-Yates shuffle.
pub fn random_pattern<R: Rng + ?Sized>(n: usize, size: usize, rng: &mut R) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for t in 0..size {
        let j = rng.random_range(t..n);
        idx.swap(t, j);
    }
    let mut out = idx[..size].to_vec();
    out.sort_unstable();
    out
}

/// Runs `trials` rounds of: random message, `erasures` uniformly random
/// erased symbols, global erasure decoding, and a local repair attempt for
/// every erased symbol.
pub fn simulate(
    code: &LinearCode,
    trials: usize,
    erasures: usize,
    seed: u64,
    cfg: &OracleConfig,
) -> Result<SimReport, SimError> {
    let n = code.n();
    if erasures > n {
        return Err(SimError::TooManyErasures { erasures, n });
    }
    let localities = code.localities(cfg)?;
    simulate_with(code, &localities, trials, erasures, seed, cfg)
}

/// [`simulate`] with precomputed localities.
pub fn simulate_with(
    code: &LinearCode,
    localities: &[Locality],
    trials: usize,
    erasures: usize,
    seed: u64,
    cfg: &OracleConfig,
) -> Result<SimReport, SimError> {
    let n = code.n();
    let k = code.k();
    if erasures > n {
        return Err(SimError::TooManyErasures { erasures, n });
    }
    let mut classes: Vec<Option<usize>> = localities.iter().map(Locality::value).collect();
    classes.sort_unstable();
    classes.dedup();
    let class_of: Vec<usize> = localities
        .iter()
        .map(|l| classes.binary_search(&l.value()).expect("class listed"))
        .collect();

    let mut master = SplitMix64::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.next_u64()).collect();
    let order = code.field().order();

    let results: Vec<Result<Trial, CodeError>> = map_indices(cfg.execution, trials, |t| {
        let mut rng = SplitMix64::seed_from_u64(seeds[t]);
        let message: Vec<Symbol> = (0..k).map(|_| rng.random_range(0..order) as Symbol).collect();
        let word = code.encode(&message)?;
        let erased = random_pattern(n, erasures, &mut rng);
        let pattern = ErasurePattern::new(n, erased.iter().copied())?;
        let mut received = word;
        for &e in &erased {
            received[e] = 0;
        }
        let decoded = code.erasure_decode(&received, &pattern)?;
        let outcome = match decoded {
            DecodeOutcome::Recovered(m) if m == message => Ok(()),
            DecodeOutcome::Recovered(_) => Err(DecodeFailure::Inconsistent),
            DecodeOutcome::Failed(f) => Err(f),
        };
        let repairs = erased
            .iter()
            .map(|&e| {
                let kind = match localities[e].repair_group() {
                    Some(g) if g.iter().all(|c| !pattern.contains(*c)) => RepairKind::Local(g.len()),
                    _ if outcome.is_ok() => RepairKind::Global(k),
                    _ => RepairKind::Lost,
                };
                (class_of[e], kind)
            })
            .collect();
        Ok(Trial { outcome, repairs })
    });

    let mut report = SimReport {
        seed,
        trials,
        erasures,
        erasure_sizes: BTreeMap::from([(erasures, trials)]),
        successes: 0,
        insufficient_rank: 0,
        inconsistent: 0,
        repair: classes
            .iter()
            .map(|&locality| RepairClass {
                locality,
                ..RepairClass::default()
            })
            .collect(),
    };
    for r in results {
        let trial = r?;
        match trial.outcome {
            Ok(()) => report.successes += 1,
            Err(DecodeFailure::InsufficientRank) => report.insufficient_rank += 1,
            Err(DecodeFailure::Inconsistent) => report.inconsistent += 1,
        }
        for (class, kind) in trial.repairs {
            let stats = &mut report.repair[class];
            stats.erased += 1;
            let reads = match kind {
                RepairKind::Local(c) => {
                    stats.local += 1;
                    Some(c)
                }
                RepairKind::Global(c) => {
                    stats.global += 1;
                    Some(c)
                }
                RepairKind::Lost => {
                    stats.lost += 1;
                    None
                }
            };
            if let Some(c) = reads {
                *stats.reads.entry(c).or_default() += 1;
            }
        }
    }
    report.repair.retain(|c| c.erased > 0 || c.locality.is_some());
    Ok(report)
}
