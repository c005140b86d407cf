//! Linear codes given by their coordinate vectors, with exact brute-force
//! oracles for minimum distance, per-coordinate locality and erasure decoding.
//!
//! A code of length `n` and dimension `k` is stored as `n` column vectors of
//! length `k`; symbol `i` of the codeword for message `x` is `x . c_i`.

use thiserror::Error;

use crate::exec::{any_index, binomial, map_indices, next_combination, LocalityMethod, OracleConfig};
use crate::galois::{Field, GaloisError, Symbol};
use crate::linalg::{self, Echelon};
use crate::profile::{AllSymbolLocalityProfile, InfoLocalityProfile, ProfileError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("invalid code dimensions n = {n}, k = {k}")]
    InvalidDimensions { n: usize, k: usize },
    #[error("column {index} has length {got}, expected {expected}")]
    ColumnLength { index: usize, expected: usize, got: usize },
    #[error("symbol {value} is outside the field")]
    SymbolOutOfRange { value: u64 },
    #[error("columns have rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("systematic positions are invalid: {0}")]
    NotSystematic(String),
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinate {index} is out of range for length {n}")]
    CoordinateOutOfRange { index: usize, n: usize },
    #[error("coordinate {0} is listed twice")]
    DuplicateCoordinate(usize),
    #[error("{oracle} needs {required} steps, over the budget of {budget}")]
    BudgetExceeded {
        oracle: &'static str,
        required: u64,
        budget: u64,
    },
    #[error("coordinate {0} cannot be recovered from the other coordinates")]
    Unrecoverable(usize),
    #[error("coordinate {0} is identically zero and has no locality class")]
    ZeroCoordinate(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    k: usize,
    columns: Vec<Vec<Symbol>>,
    systematic_positions: Option<Vec<usize>>,
}

/// Locality of one coordinate together with a minimal repair group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locality {
    /// The coordinate is a linear combination of exactly `repair_group`,
    /// and of no smaller set.
    Local { repair_group: Vec<usize> },
    /// No other coordinates determine this one.
    Unrecoverable,
}

impl Locality {
    pub fn value(&self) -> Option<usize> {
        match self {
            Locality::Local { repair_group } => Some(repair_group.len()),
            Locality::Unrecoverable => None,
        }
    }

    pub fn repair_group(&self) -> Option<&[usize]> {
        match self {
            Locality::Local { repair_group } => Some(repair_group),
            Locality::Unrecoverable => None,
        }
    }
}

/// A set of erased coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ErasurePattern {
    erased: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(n: usize, erased: impl IntoIterator<Item = usize>) -> Result<Self, CodeError> {
        let mut v: Vec<usize> = erased.into_iter().collect();
        if let Some(&index) = v.iter().find(|&&i| i >= n) {
            return Err(CodeError::CoordinateOutOfRange { index, n });
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(CodeError::DuplicateCoordinate(w[0]));
        }
        Ok(ErasurePattern { erased: v })
    }

    pub fn none() -> Self {
        Self::default()
    }

    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    pub fn contains(&self, i: usize) -> bool {
        self.erased.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.erased.len()
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeFailure {
    /// The surviving coordinates span less than the full message space.
    InsufficientRank,
    /// No message reproduces every surviving symbol.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Recovered(Vec<Symbol>),
    Failed(DecodeFailure),
}

impl DecodeOutcome {
    pub fn is_recovered(&self) -> bool {
        matches!(self, DecodeOutcome::Recovered(_))
    }

    pub fn message(&self) -> Option<&[Symbol]> {
        match self {
            DecodeOutcome::Recovered(m) => Some(m),
            DecodeOutcome::Failed(_) => None,
        }
    }
}

/// Result of repairing one symbol from its repair group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub value: Symbol,
    pub repair_group: Vec<usize>,
}

/// Number of nonzero vectors of length `len` over a field of `order`
/// elements whose first nonzero entry is one.
fn projective_count(order: u64, len: usize) -> u64 {
    if len == 0 {
        return 0;
    }
    let total = (order as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    let count = (total - 1) / (order as u128 - 1);
    count.min(u64::MAX as u128) as u64
}

/// The `idx`-th normalized vector: vectors with leading one at position 0
/// come first, then position 1, and so on.
fn projective_vector(order: u64, len: usize, mut idx: u64) -> Vec<Symbol> {
    let mut v = vec![0; len];
    for lead in 0..len {
        let block = order.pow((len - 1 - lead) as u32);
        if idx < block {
            v[lead] = 1;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = (idx % order) as Symbol;
                idx /= order;
            }
            return v;
        }
        idx -= block;
    }
    unreachable!("index beyond the projective range")
}

/// Splits `0..count` into contiguous chunks for the worker pool.
fn chunk_bounds(count: u64) -> Vec<(u64, u64)> {
    let chunks = count.clamp(1, 1024);
    let size = count.div_ceil(chunks).max(1);
    (0..chunks)
        .map(|c| (c * size, ((c + 1) * size).min(count)))
        .filter(|(a, b)| a < b)
        .collect()
}

type Witness = Option<(usize, Vec<usize>)>;

fn better(candidate: &(usize, Vec<usize>), current: &Witness) -> bool {
    match current {
        None => true,
        Some((w, g)) => (candidate.0, &candidate.1) < (*w, g),
    }
}

impl LinearCode {
    /// A code from its `n` coordinate vectors of length `k`.
    pub fn new(
        field: &Field,
        k: usize,
        columns: Vec<Vec<Symbol>>,
        systematic_positions: Option<Vec<usize>>,
    ) -> Result<Self, CodeError> {
        let n = columns.len();
        if n == 0 || k == 0 || k > n {
            return Err(CodeError::InvalidDimensions { n, k });
        }
        for (index, col) in columns.iter().enumerate() {
            if col.len() != k {
                return Err(CodeError::ColumnLength {
                    index,
                    expected: k,
                    got: col.len(),
                });
            }
            if let Some(&v) = col.iter().find(|&&v| !field.contains(v as u64)) {
                return Err(CodeError::SymbolOutOfRange { value: v as u64 });
            }
        }
        let rank = linalg::rank(field, &columns);
        if rank != k {
            return Err(CodeError::RankDeficient { rank, k });
        }
        if let Some(pos) = &systematic_positions {
            if pos.len() != k {
                return Err(CodeError::NotSystematic(format!(
                    "expected {k} positions, got {}",
                    pos.len()
                )));
            }
            for (j, &p) in pos.iter().enumerate() {
                if p >= n {
                    return Err(CodeError::CoordinateOutOfRange { index: p, n });
                }
                let unit = columns[p].iter().enumerate().all(|(t, &v)| v == u32::from(t == j));
                if !unit {
                    return Err(CodeError::NotSystematic(format!(
                        "column {p} is not unit vector e_{}",
                        j + 1
                    )));
                }
            }
        }
        Ok(LinearCode {
            field: field.clone(),
            k,
            columns,
            systematic_positions,
        })
    }

    /// A code from a `k x n` generator matrix given by rows.
    pub fn from_generator_rows(
        field: &Field,
        rows: &[Vec<Symbol>],
        systematic_positions: Option<Vec<usize>>,
    ) -> Result<Self, CodeError> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some((index, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(CodeError::ColumnLength {
                index,
                expected: n,
                got: r.len(),
            });
        }
        let columns = (0..n).map(|i| rows.iter().map(|r| r[i]).collect()).collect();
        Self::new(field, k, columns, systematic_positions)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn columns(&self) -> &[Vec<Symbol>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[Symbol] {
        &self.columns[i]
    }

    pub fn systematic_positions(&self) -> Option<&[usize]> {
        self.systematic_positions.as_deref()
    }

    /// Generator matrix rows (`k x n`).
    pub fn generator_rows(&self) -> Vec<Vec<Symbol>> {
        (0..self.k)
            .map(|t| self.columns.iter().map(|c| c[t]).collect())
            .collect()
    }

    fn dot(&self, x: &[Symbol], col: &[Symbol]) -> Symbol {
        let f = &self.field;
        x.iter().zip(col).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    fn encode_unchecked(&self, message: &[Symbol]) -> Vec<Symbol> {
        self.columns.iter().map(|c| self.dot(message, c)).collect()
    }

    pub fn encode(&self, message: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        if message.len() != self.k {
            return Err(CodeError::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        if let Some(&v) = message.iter().find(|&&v| !self.field.contains(v as u64)) {
            return Err(CodeError::SymbolOutOfRange { value: v as u64 });
        }
        Ok(self.encode_unchecked(message))
    }

    /// Rank of the coordinate vectors indexed by `coords`.
    pub fn rank_of(&self, coords: &[usize]) -> usize {
        let mut e = Echelon::new(&self.field, self.k);
        for &i in coords {
            if e.insert(&self.columns[i]) && e.rank() == self.k {
                break;
            }
        }
        e.rank()
    }

    /// Whether erasing `erased` (a membership mask) leaves rank below k.
    fn erasure_breaks_rank(&self, erased: &[bool], echelon: &mut Echelon<'_>) -> bool {
        echelon.clear();
        for (i, col) in self.columns.iter().enumerate() {
            if !erased[i] && echelon.insert(col) && echelon.rank() == self.k {
                return false;
            }
        }
        true
    }

    /// Minimum Hamming distance by the support-rank method: the smallest
    /// `t` such that erasing some `t` coordinates drops the rank below `k`.
    /// Equivalently `n - max{|S| : rank(S) <= k - 1}`.
    pub fn min_distance(&self, cfg: &OracleConfig) -> Result<usize, CodeError> {
        let (n, k) = (self.n(), self.k);
        let mut spent: u64 = 0;
        for t in 1..=n - k + 1 {
            spent = spent.saturating_add(binomial(n, t));
            if spent > cfg.subset_budget {
                return Err(CodeError::BudgetExceeded {
                    oracle: "minimum distance",
                    required: spent,
                    budget: cfg.subset_budget,
                });
            }
            let found = any_index(cfg.execution, n, |first| {
                let rest_len = n - first - 1;
                if t - 1 > rest_len {
                    return false;
                }
                let mut echelon = Echelon::new(&self.field, k);
                let mut mask = vec![false; n];
                let mut rest: Vec<usize> = (0..t - 1).collect();
                loop {
                    mask.iter_mut().for_each(|m| *m = false);
                    mask[first] = true;
                    for &r in &rest {
                        mask[first + 1 + r] = true;
                    }
                    if self.erasure_breaks_rank(&mask, &mut echelon) {
                        return true;
                    }
                    if !next_combination(&mut rest, rest_len) {
                        return false;
                    }
                }
            });
            if found {
                return Ok(t);
            }
        }
        unreachable!("erasing n - k + 1 coordinates always leaves rank below k")
    }

    /// Minimum distance by enumerating every nonzero message up to scaling.
    /// Cost grows with the field size; used to cross-check
    /// [`min_distance`](Self::min_distance).
    pub fn min_distance_by_enumeration(&self, cfg: &OracleConfig) -> Result<usize, CodeError> {
        let order = self.field.order();
        let count = projective_count(order, self.k);
        if count > cfg.dual_budget {
            return Err(CodeError::BudgetExceeded {
                oracle: "message enumeration",
                required: count,
                budget: cfg.dual_budget,
            });
        }
        let chunks = chunk_bounds(count);
        let mins = map_indices(cfg.execution, chunks.len(), |c| {
            let (lo, hi) = chunks[c];
            (lo..hi)
                .map(|idx| {
                    let msg = projective_vector(order, self.k, idx);
                    self.columns.iter().filter(|col| self.dot(&msg, col) != 0).count()
                })
                .min()
                .unwrap_or(usize::MAX)
        });
        Ok(mins.into_iter().min().unwrap_or(usize::MAX))
    }

    /// Basis of the dual code `{h : sum_i h_i c_i = 0}`.
    pub fn dual_basis(&self) -> Vec<Vec<Symbol>> {
        linalg::null_space(&self.field, &self.generator_rows())
    }

    fn check_coordinate(&self, i: usize) -> Result<(), CodeError> {
        if i >= self.n() {
            return Err(CodeError::CoordinateOutOfRange { index: i, n: self.n() });
        }
        Ok(())
    }

    /// Locality of coordinate `i` and its witness repair group.
    pub fn coordinate_locality(&self, i: usize, cfg: &OracleConfig) -> Result<Locality, CodeError> {
        self.check_coordinate(i)?;
        match self.resolve_method(cfg) {
            LocalityMethod::DualEnumeration => Ok(self.localities_by_dual(cfg)?.swap_remove(i)),
            _ => {
                let (loc, spent) = self.locality_by_subsets(i, cfg.subset_budget);
                if spent > cfg.subset_budget {
                    return Err(CodeError::BudgetExceeded {
                        oracle: "subset locality search",
                        required: spent,
                        budget: cfg.subset_budget,
                    });
                }
                Ok(loc)
            }
        }
    }

    /// Localities of every coordinate.
    ///
    /// The witness repair group is the lexicographically smallest minimal
    /// set, so both methods return identical results.
    pub fn localities(&self, cfg: &OracleConfig) -> Result<Vec<Locality>, CodeError> {
        match self.resolve_method(cfg) {
            LocalityMethod::DualEnumeration => self.localities_by_dual(cfg),
            _ => self.localities_by_subsets(cfg),
        }
    }

    fn resolve_method(&self, cfg: &OracleConfig) -> LocalityMethod {
        match cfg.locality_method {
            LocalityMethod::Auto => {
                let words = projective_count(self.field.order(), self.n() - self.k);
                let (n, k) = (self.n(), self.k);
                let subsets = (1..=k.min(n - 1))
                    .fold(0u64, |acc, r| acc.saturating_add(binomial(n - 1, r)))
                    .saturating_mul(n as u64);
                if words <= cfg.dual_budget && words <= subsets {
                    LocalityMethod::DualEnumeration
                } else {
                    LocalityMethod::SubsetSpan
                }
            }
            m => m,
        }
    }

    /// Enumerates the dual code once (up to scaling): a dual word `h` with
    /// `h_i != 0` expresses `c_i` through the other coordinates of its
    /// support, and minimal-weight such words give minimal repair groups.
    fn localities_by_dual(&self, cfg: &OracleConfig) -> Result<Vec<Locality>, CodeError> {
        let n = self.n();
        let basis = self.dual_basis();
        let order = self.field.order();
        let count = projective_count(order, basis.len());
        if count > cfg.dual_budget {
            return Err(CodeError::BudgetExceeded {
                oracle: "dual enumeration",
                required: count,
                budget: cfg.dual_budget,
            });
        }
        let f = &self.field;
        let chunks = chunk_bounds(count);
        let partial = map_indices(cfg.execution, chunks.len(), |c| {
            let (lo, hi) = chunks[c];
            let mut best: Vec<Witness> = vec![None; n];
            let mut word = vec![0 as Symbol; n];
            let mut support = Vec::with_capacity(n);
            for idx in lo..hi {
                let coeffs = projective_vector(order, basis.len(), idx);
                word.iter_mut().for_each(|x| *x = 0);
                for (&a, b) in coeffs.iter().zip(&basis) {
                    if a != 0 {
                        for (x, &y) in word.iter_mut().zip(b) {
                            *x = f.add(*x, f.mul(a, y));
                        }
                    }
                }
                support.clear();
                support.extend((0..n).filter(|&j| word[j] != 0));
                let weight = support.len() - 1;
                for &i in &support {
                    if matches!(&best[i], Some((w, _)) if *w < weight) {
                        continue;
                    }
                    let cand = (weight, support.iter().copied().filter(|&j| j != i).collect());
                    if better(&cand, &best[i]) {
                        best[i] = Some(cand);
                    }
                }
            }
            best
        });
        let mut merged: Vec<Witness> = vec![None; n];
        for chunk in partial {
            for (slot, cand) in merged.iter_mut().zip(chunk) {
                if let Some(c) = cand {
                    if better(&c, slot) {
                        *slot = Some(c);
                    }
                }
            }
        }
        Ok(merged
            .into_iter()
            .map(|w| match w {
                Some((_, repair_group)) => Locality::Local { repair_group },
                None => Locality::Unrecoverable,
            })
            .collect())
    }

    /// Smallest set `R` (lexicographically first among the smallest) with
    /// `c_i` in the span of `R`. Returns the locality and the number of
    /// rank tests spent; the search stops once `budget` is passed.
    fn locality_by_subsets(&self, i: usize, budget: u64) -> (Locality, u64) {
        let n = self.n();
        let target = &self.columns[i];
        if target.iter().all(|&x| x == 0) {
            return (Locality::Local { repair_group: vec![] }, 0);
        }
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mut echelon = Echelon::new(&self.field, self.k);
        for &j in &others {
            echelon.insert(&self.columns[j]);
        }
        let mut spent = 1u64;
        if !echelon.contains(target) {
            return (Locality::Unrecoverable, spent);
        }
        let max_r = echelon.rank();
        for r in 1..=max_r {
            spent = spent.saturating_add(binomial(others.len(), r));
            if spent > budget {
                return (Locality::Unrecoverable, spent);
            }
            let mut idx: Vec<usize> = (0..r).collect();
            loop {
                echelon.clear();
                for &t in &idx {
                    echelon.insert(&self.columns[others[t]]);
                }
                if echelon.contains(target) {
                    let repair_group = idx.iter().map(|&t| others[t]).collect();
                    return (Locality::Local { repair_group }, spent);
                }
                if !next_combination(&mut idx, others.len()) {
                    break;
                }
            }
        }
        unreachable!("target lies in the span of all other coordinates")
    }

    fn localities_by_subsets(&self, cfg: &OracleConfig) -> Result<Vec<Locality>, CodeError> {
        let results = map_indices(cfg.execution, self.n(), |i| {
            self.locality_by_subsets(i, cfg.subset_budget)
        });
        let spent = results.iter().fold(0u64, |acc, (_, s)| acc.saturating_add(*s));
        if spent > cfg.subset_budget {
            return Err(CodeError::BudgetExceeded {
                oracle: "subset locality search",
                required: spent,
                budget: cfg.subset_budget,
            });
        }
        Ok(results.into_iter().map(|(l, _)| l).collect())
    }

    fn locality_values(localities: &[Locality]) -> Result<Vec<usize>, CodeError> {
        localities
            .iter()
            .enumerate()
            .map(|(i, l)| match l.value() {
                None => Err(CodeError::Unrecoverable(i)),
                Some(0) => Err(CodeError::ZeroCoordinate(i)),
                Some(v) => Ok(v),
            })
            .collect()
    }

    /// `n_j` = number of coordinates of locality `j`.
    pub fn all_symbol_profile(&self, cfg: &OracleConfig) -> Result<AllSymbolLocalityProfile, CodeError> {
        self.all_symbol_profile_from(&self.localities(cfg)?)
    }

    pub fn all_symbol_profile_from(&self, localities: &[Locality]) -> Result<AllSymbolLocalityProfile, CodeError> {
        let values = Self::locality_values(localities)?;
        let max = values.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; max];
        for v in values {
            counts[v - 1] += 1;
        }
        Ok(AllSymbolLocalityProfile::new(counts)?)
    }

    /// Information locality profile: `k_j` is the rank gained by adding the
    /// coordinates of locality `j` to those of smaller locality, so that the
    /// information set is drawn from the most local coordinates first.
    pub fn info_profile(&self, cfg: &OracleConfig) -> Result<InfoLocalityProfile, CodeError> {
        self.info_profile_from(&self.localities(cfg)?)
    }

    pub fn info_profile_from(&self, localities: &[Locality]) -> Result<InfoLocalityProfile, CodeError> {
        let values = Self::locality_values(localities)?;
        let max = values.iter().copied().max().unwrap_or(0);
        let mut echelon = Echelon::new(&self.field, self.k);
        let mut counts = Vec::with_capacity(max);
        for j in 1..=max {
            let before = echelon.rank();
            for (i, _) in values.iter().enumerate().filter(|(_, &v)| v == j) {
                echelon.insert(&self.columns[i]);
            }
            counts.push(echelon.rank() - before);
        }
        Ok(InfoLocalityProfile::new(counts)?)
    }

    /// Recovers the message from the symbols outside `pattern`, or reports
    /// why it cannot.
    pub fn erasure_decode(&self, received: &[Symbol], pattern: &ErasurePattern) -> Result<DecodeOutcome, CodeError> {
        let n = self.n();
        if received.len() != n {
            return Err(CodeError::LengthMismatch {
                expected: n,
                got: received.len(),
            });
        }
        if let Some(&index) = pattern.erased().iter().find(|&&i| i >= n) {
            return Err(CodeError::CoordinateOutOfRange { index, n });
        }
        let survivors: Vec<usize> = (0..n).filter(|&i| !pattern.contains(i)).collect();
        let mut echelon = Echelon::new(&self.field, self.k);
        let mut chosen = Vec::with_capacity(self.k);
        for &i in &survivors {
            if echelon.insert(&self.columns[i]) {
                chosen.push(i);
                if chosen.len() == self.k {
                    break;
                }
            }
        }
        if chosen.len() < self.k {
            return Ok(DecodeOutcome::Failed(DecodeFailure::InsufficientRank));
        }
        let a: Vec<Vec<Symbol>> = chosen.iter().map(|&i| self.columns[i].clone()).collect();
        let b: Vec<Symbol> = chosen.iter().map(|&i| received[i]).collect();
        let message = linalg::solve_square(&self.field, a, b).expect("chosen columns are independent");
        let consistent = survivors
            .iter()
            .all(|&i| self.dot(&message, &self.columns[i]) == received[i]);
        if !consistent {
            return Ok(DecodeOutcome::Failed(DecodeFailure::Inconsistent));
        }
        Ok(DecodeOutcome::Recovered(message))
    }

    /// Recomputes symbol `i` of an intact codeword from its witness repair
    /// group only.
    pub fn local_repair(&self, codeword: &[Symbol], i: usize, cfg: &OracleConfig) -> Result<Repair, CodeError> {
        if codeword.len() != self.n() {
            return Err(CodeError::LengthMismatch {
                expected: self.n(),
                got: codeword.len(),
            });
        }
        let group = match self.coordinate_locality(i, cfg)? {
            Locality::Local { repair_group } => repair_group,
            Locality::Unrecoverable => return Err(CodeError::Unrecoverable(i)),
        };
        Ok(self.repair_with_group(codeword, i, group))
    }

    /// Repairs symbol `i` from a group known to span its coordinate vector.
    pub(crate) fn repair_with_group(&self, codeword: &[Symbol], i: usize, group: Vec<usize>) -> Repair {
        let f = &self.field;
        let cols: Vec<&[Symbol]> = group.iter().map(|&j| self.columns[j].as_slice()).collect();
        let lambda = linalg::express_in_span(f, &cols, &self.columns[i]).expect("repair group spans the coordinate");
        let value = lambda
            .iter()
            .zip(&group)
            .fold(0, |acc, (&l, &j)| f.add(acc, f.mul(l, codeword[j])));
        Repair {
            value,
            repair_group: group,
        }
    }
}
