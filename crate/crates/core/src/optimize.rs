//! Choosing an information locality profile for a locality requirement.
//!
//! A requirement `{k~_1, ..., k~_r}` asks for at least `sum_(j<=i) k~_j`
//! information symbols of locality at most `i`, for every `i`. Among profiles
//! meeting it, the one minimizing `sum_j ceil(k_j / j)` has the largest
//! distance bound.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profile::{parse_counts, write_counts, InfoLocalityProfile, ProfileError};

/// Largest requirement total and length accepted by the exhaustive search.
pub const EXHAUSTIVE_MAX_TOTAL: usize = 14;
pub const EXHAUSTIVE_MAX_LOCALITY: usize = 6;

const CANONICALIZE_STEP_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OptimizeError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("a requirement needs at least one class and a positive total")]
    EmptyRequirement,
    #[error("profile {profile} does not respect requirement {requirement}")]
    NotRespecting { profile: String, requirement: String },
    #[error("profile has objective {objective} but the optimum is {optimum}")]
    NotOptimal { objective: usize, optimum: usize },
    #[error("transform made no progress after {steps} steps")]
    Stalled { steps: usize },
    #[error("exhaustive search limited to total <= {max_total} and r <= {max_r}; got total {total}, r {r}")]
    BudgetExceeded {
        total: usize,
        r: usize,
        max_total: usize,
        max_r: usize,
    },
}

/// Requirement `{k~_1, ..., k~_r}`. The length `r` is kept as given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LocalityRequirement {
    counts: Vec<usize>,
}

impl LocalityRequirement {
    pub fn new(counts: Vec<usize>) -> Result<Self, OptimizeError> {
        if counts.iter().sum::<usize>() == 0 {
            return Err(OptimizeError::EmptyRequirement);
        }
        Ok(LocalityRequirement { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn r(&self) -> usize {
        self.counts.len()
    }

    /// `k`, the number of information symbols.
    pub fn k(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl TryFrom<Vec<usize>> for LocalityRequirement {
    type Error = OptimizeError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<LocalityRequirement> for Vec<usize> {
    fn from(r: LocalityRequirement) -> Vec<usize> {
        r.counts
    }
}

impl FromStr for LocalityRequirement {
    type Err = OptimizeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_counts(s)?)
    }
}

impl fmt::Display for LocalityRequirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_counts(f, &self.counts)
    }
}

/// Whether raw profile counts meet the requirement: every prefix sum is at
/// least the requirement's, and the totals are equal.
pub fn respects_counts(counts: &[usize], req: &LocalityRequirement) -> bool {
    let len = counts.len().max(req.r());
    let (mut a, mut b) = (0, 0);
    for j in 0..len {
        a += counts.get(j).copied().unwrap_or(0);
        b += req.counts.get(j).copied().unwrap_or(0);
        if a < b {
            return false;
        }
    }
    a == b
}

pub fn respects(profile: &InfoLocalityProfile, req: &LocalityRequirement) -> bool {
    respects_counts(profile.counts(), req)
}

/// `sum_j ceil(k_j / j)`, where `counts[j - 1] = k_j`.
pub fn objective(counts: &[usize]) -> usize {
    counts.iter().enumerate().map(|(i, &c)| c.div_ceil(i + 1)).sum()
}

/// One step of the greedy algorithm: `k~_j + g_(j+1) = j * b_j + g_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub j: usize,
    pub b: usize,
    pub g: usize,
    pub k_star: usize,
}

/// Steps in the order they run, from `j = r` down to `j = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
}

impl GreedyTrace {
    /// `k*_1..k*_r` before trailing zeros are trimmed.
    pub fn k_star(&self) -> Vec<usize> {
        let mut v = vec![0; self.steps.len()];
        for s in &self.steps {
            v[s.j - 1] = s.k_star;
        }
        v
    }

    /// Residue `g_j` carried out of class `j`.
    pub fn g(&self, j: usize) -> usize {
        self.steps.iter().find(|s| s.j == j).map_or(0, |s| s.g)
    }
}

/// From the largest locality down, keep the largest multiple of `j` and push
/// the remainder to locality `j - 1`.
pub fn greedy_optimal_profile(req: &LocalityRequirement) -> (InfoLocalityProfile, GreedyTrace) {
    let mut carry = 0;
    let mut steps = Vec::with_capacity(req.r());
    for j in (1..=req.r()).rev() {
        let total = req.counts[j - 1] + carry;
        let (b, g) = (total / j, total % j);
        steps.push(GreedyStep { j, b, g, k_star: j * b });
        carry = g;
    }
    let trace = GreedyTrace { steps };
    let profile = InfoLocalityProfile::new(trace.k_star()).expect("requirement total is positive");
    (profile, trace)
}

fn check_exhaustive_budget(req: &LocalityRequirement) -> Result<(), OptimizeError> {
    if req.k() > EXHAUSTIVE_MAX_TOTAL || req.r() > EXHAUSTIVE_MAX_LOCALITY {
        return Err(OptimizeError::BudgetExceeded {
            total: req.k(),
            r: req.r(),
            max_total: EXHAUSTIVE_MAX_TOTAL,
            max_r: EXHAUSTIVE_MAX_LOCALITY,
        });
    }
    Ok(())
}

/// Visits every length-`r` vector meeting the requirement, in lexicographic
/// order, pruning prefixes whose sum already falls short.
fn for_each_feasible(req: &LocalityRequirement, mut visit: impl FnMut(&[usize])) {
    fn rec(
        req: &[usize],
        cur: &mut Vec<usize>,
        have: usize,
        need: usize,
        total: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let j = cur.len();
        if j + 1 == req.len() {
            let last = total - have;
            cur.push(last);
            visit(cur);
            cur.pop();
            return;
        }
        let need = need + req[j];
        for v in 0..=total - have {
            if have + v < need {
                continue;
            }
            cur.push(v);
            rec(req, cur, have + v, need, total, visit);
            cur.pop();
        }
    }
    rec(&req.counts, &mut Vec::with_capacity(req.r()), 0, 0, req.k(), &mut visit);
}

/// Minimum objective over all profiles meeting the requirement, by
/// enumeration. Independent of the greedy algorithm.
pub fn exhaustive_optimal_objective(req: &LocalityRequirement) -> Result<usize, OptimizeError> {
    Ok(exhaustive_optimal_profiles(req)?.0)
}

/// The optimum and every length-`r` profile attaining it.
pub fn exhaustive_optimal_profiles(req: &LocalityRequirement) -> Result<(usize, Vec<Vec<usize>>), OptimizeError> {
    check_exhaustive_budget(req)?;
    let mut best = usize::MAX;
    let mut found = Vec::new();
    for_each_feasible(req, |v| {
        debug_assert!(respects_counts(v, req));
        let obj = objective(v);
        if obj < best {
            best = obj;
            found.clear();
        }
        if obj == best {
            found.push(v.to_vec());
        }
    });
    Ok((best, found))
}

/// Moves `delta` symbols from locality `i` to locality `j` (`counts` is
/// 0-based by locality minus one).
pub fn move_to_right(counts: &mut [usize], i: usize, j: usize, delta: usize) {
    counts[i - 1] -= delta;
    counts[j - 1] += delta;
}

/// If `j` does not divide `k_j`, moves the remainder `g` to locality `g`.
/// Returns the amount moved.
pub fn residue_shift(counts: &mut [usize], j: usize) -> usize {
    let g = counts[j - 1] % j;
    if g > 0 {
        counts[j - 1] -= g;
        counts[g - 1] += g;
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CanonStepKind {
    /// Remainder of a non-divisible class moved to the locality equal to it.
    ResidueShift,
    /// Symbols moved from a smaller locality to a larger one.
    MoveRight,
    /// Remainder left after a move to the right, moved to the locality equal to it.
    MoveLeft,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonStep {
    pub kind: CanonStepKind,
    pub from: usize,
    pub to: usize,
    pub amount: usize,
    pub profile: Vec<usize>,
    pub objective: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Canonicalization {
    pub result: InfoLocalityProfile,
    pub initial_objective: usize,
    pub steps: Vec<CanonStep>,
}

/// Transforms an optimal profile into the greedy one while logging every
/// move: first each non-divisible class (largest first) sheds its remainder,
/// then symbols are moved from the largest over-full class to the largest
/// differing class until the profiles agree.
///
/// Input must respect `req` and be optimal; otherwise the objective gap is
/// reported instead.
pub fn canonicalize(
    profile: &InfoLocalityProfile,
    req: &LocalityRequirement,
) -> Result<Canonicalization, OptimizeError> {
    if !respects(profile, req) {
        return Err(OptimizeError::NotRespecting {
            profile: profile.to_string(),
            requirement: req.to_string(),
        });
    }
    let (target, trace) = greedy_optimal_profile(req);
    let optimum = objective(target.counts());
    let initial_objective = objective(profile.counts());
    if initial_objective != optimum {
        return Err(OptimizeError::NotOptimal {
            objective: initial_objective,
            optimum,
        });
    }
    let r = req.r();
    let k_star = trace.k_star();
    let mut cur = profile.padded(r);
    let mut steps = Vec::new();
    let log = |steps: &mut Vec<CanonStep>, kind, from, to, amount, cur: &[usize]| {
        steps.push(CanonStep {
            kind,
            from,
            to,
            amount,
            profile: cur.to_vec(),
            objective: objective(cur),
        });
    };

    while let Some(j) = (1..=r).rev().find(|&j| !cur[j - 1].is_multiple_of(j)) {
        let g = residue_shift(&mut cur, j);
        log(&mut steps, CanonStepKind::ResidueShift, j, g, g, &cur);
    }

    let stalled = |steps: &Vec<CanonStep>| OptimizeError::Stalled { steps: steps.len() };
    while let Some(jm) = (1..=r).rev().find(|&j| cur[j - 1] != k_star[j - 1]) {
        if cur[jm - 1] > k_star[jm - 1] {
            return Err(stalled(&steps));
        }
        while cur[jm - 1] < k_star[jm - 1] {
            if steps.len() >= CANONICALIZE_STEP_CAP {
                return Err(stalled(&steps));
            }
            let jp = (1..=r)
                .rev()
                .find(|&j| cur[j - 1] > k_star[j - 1])
                .ok_or_else(|| stalled(&steps))?;
            let dm = k_star[jm - 1] - cur[jm - 1];
            let dp = cur[jp - 1] - k_star[jp - 1];
            let delta = dm.min(dp);
            move_to_right(&mut cur, jp, jm, delta);
            log(&mut steps, CanonStepKind::MoveRight, jp, jm, delta, &cur);
            if dm < dp {
                let g = residue_shift(&mut cur, jp);
                if g > 0 {
                    log(&mut steps, CanonStepKind::MoveLeft, jp, g, g, &cur);
                }
            }
        }
    }
    Ok(Canonicalization {
        result: InfoLocalityProfile::new(cur)?,
        initial_objective,
        steps,
    })
}
