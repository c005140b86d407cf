//! Execution strategy and budgets for the brute-force oracles.
//!
//! Every oracle splits its search into independent pieces and merges the
//! results in a fixed order, so sequential and parallel runs return the same
//! value. Without the `parallel` feature, [`Execution::Parallel`] runs
//! sequentially.

use std::env;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// How per-coordinate locality is computed. Both methods are exact and
/// choose the same witness repair group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LocalityMethod {
    /// Whichever of the two is cheaper for the code at hand, judged by the
    /// dual code size against a worst-case count of candidate subsets.
    #[default]
    Auto,
    DualEnumeration,
    SubsetSpan,
}

pub const DEFAULT_SUBSET_BUDGET: u64 = 100_000_000;
pub const DEFAULT_DUAL_BUDGET: u64 = 1 << 24;

pub const SUBSET_BUDGET_ENV: &str = "ULRC_SUBSET_BUDGET";
pub const DUAL_BUDGET_ENV: &str = "ULRC_DUAL_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of rank computations in a subset search.
    pub subset_budget: u64,
    /// Maximum number of vectors in a dual-code or message enumeration.
    pub dual_budget: u64,
    pub locality_method: LocalityMethod,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            subset_budget: DEFAULT_SUBSET_BUDGET,
            dual_budget: DEFAULT_DUAL_BUDGET,
            locality_method: LocalityMethod::Auto,
            execution: Execution::Parallel,
        }
    }
}

impl OracleConfig {
    pub fn sequential() -> Self {
        OracleConfig {
            execution: Execution::Sequential,
            ..Self::default()
        }
    }

    /// Defaults overridden by `ULRC_SUBSET_BUDGET` / `ULRC_DUAL_BUDGET`.
    /// Unparseable values are ignored.
    pub fn from_env() -> Self {
        let read = |name: &str| env::var(name).ok().and_then(|v| v.trim().parse::<u64>().ok());
        let mut cfg = Self::default();
        if let Some(v) = read(SUBSET_BUDGET_ENV) {
            cfg.subset_budget = v;
        }
        if let Some(v) = read(DUAL_BUDGET_ENV) {
            cfg.dual_budget = v;
        }
        cfg
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_locality_method(mut self, method: LocalityMethod) -> Self {
        self.locality_method = method;
        self
    }
}

/// `f(0), ..., f(len - 1)` in index order.
pub(crate) fn map_indices<R, F>(exec: Execution, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..len).into_par_iter().map(f).collect(),
        _ => (0..len).map(f).collect(),
    }
}

/// Whether `pred` holds for some index.
pub(crate) fn any_index<F>(exec: Execution, len: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..len).into_par_iter().any(pred),
        _ => (0..len).any(pred),
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic
/// order. Returns false after the last one.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let t = idx.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if idx[i] < n - t + i {
            idx[i] += 1;
            for j in i + 1..t {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(15, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn sequential_and_parallel_maps_agree() {
        let a = map_indices(Execution::Sequential, 100, |i| i * i);
        let b = map_indices(Execution::Parallel, 100, |i| i * i);
        assert_eq!(a, b);
        assert!(any_index(Execution::Parallel, 100, |i| i == 99));
        assert!(!any_index(Execution::Sequential, 100, |i| i == 100));
    }
}
