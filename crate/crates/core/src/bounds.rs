//! Upper bounds on the minimum distance of codes with (unequal) locality,
//! and the witness-set construction that certifies them on concrete codes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, LinearCode, Locality};
use crate::exec::OracleConfig;
use crate::linalg::Echelon;
use crate::profile::{AllSymbolLocalityProfile, InfoLocalityProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("need 1 <= k <= n, got n = {n}, k = {k}")]
    BadDimensions { n: usize, k: usize },
    #[error("need 1 <= r <= k, got r = {r}, k = {k}")]
    BadLocality { r: usize, k: usize },
    #[error("profile counts sum to {sum}, expected {expected}")]
    ProfileSum { sum: usize, expected: usize },
    #[error("maximum locality {ra} exceeds k = {k}")]
    LocalityExceedsDimension { ra: usize, k: usize },
    #[error("r' is undefined: k'_1 = {k_prime_1} already reaches k = {k}")]
    RPrimeUndefined { k_prime_1: usize, k: usize },
    #[error("r is undefined: no locality j with {from} <= j <= {to} has n_j >= 2")]
    RUndefined { from: usize, to: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Gopalan,
    UnequalInfo,
    UnequalAllSymbol,
}

/// A bound value with every intermediate used to assemble it.
///
/// In all cases `bound = n - k + 2 - sum(per_locality_terms)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub n: usize,
    pub k: usize,
    /// The profile the bound was evaluated on; `[r]` for the single-locality bound.
    pub profile: Vec<usize>,
    pub bound: i64,
    pub per_locality_terms: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_prime: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

impl BoundReport {
    /// Human-readable derivation, one line per step.
    pub fn trace(&self) -> Vec<String> {
        let (n, k) = (self.n, self.k);
        let mut out = Vec::new();
        let sum: usize = self.per_locality_terms.iter().sum();
        match self.kind {
            BoundKind::Gopalan => {
                let r = self.profile[0];
                out.push(format!("ceil(k/r) = ceil({k}/{r}) = {}", self.per_locality_terms[0]));
            }
            BoundKind::UnequalInfo => {
                for (j, (&kj, &t)) in self.profile.iter().zip(&self.per_locality_terms).enumerate() {
                    out.push(format!("j = {}: ceil(k_j/j) = ceil({kj}/{}) = {t}", j + 1, j + 1));
                }
            }
            BoundKind::UnequalAllSymbol => {
                let kp = self.k_prime.as_deref().unwrap_or(&[]);
                let kp_text: Vec<String> = kp.iter().map(ToString::to_string).collect();
                out.push(format!("k'_j = n_j - ceil(n_j/(j+1)) = ({})", kp_text.join(",")));
                let (rp, r) = (self.r_prime.unwrap_or(0), self.r.unwrap_or(0));
                out.push(format!("r' = {rp}, r = {r}"));
                for j in 1..r {
                    out.push(format!(
                        "j = {j}: ceil(n_j/(j+1)) = ceil({}/{}) = {}",
                        self.profile[j - 1],
                        j + 1,
                        self.per_locality_terms[j - 1]
                    ));
                }
                let used: usize = kp.iter().take(r.saturating_sub(1)).sum();
                out.push(format!(
                    "ceil((k - sum_(j<r) k'_j)/r) = ceil({}/{r}) = {}",
                    k - used,
                    self.per_locality_terms.last().copied().unwrap_or(0)
                ));
            }
        }
        out.push(format!(
            "d <= n - k + 2 - {sum} = {n} - {k} + 2 - {sum} = {}",
            self.bound
        ));
        out
    }
}

fn check_nk(n: usize, k: usize) -> Result<(), BoundError> {
    if k == 0 || k > n {
        return Err(BoundError::BadDimensions { n, k });
    }
    Ok(())
}

fn assemble(n: usize, k: usize, terms: &[usize]) -> i64 {
    n as i64 - k as i64 + 2 - terms.iter().sum::<usize>() as i64
}

/// `d <= n - k - ceil(k/r) + 2` for codes whose information symbols all
/// have locality at most `r`.
pub fn gopalan_bound(n: usize, k: usize, r: usize) -> Result<i64, BoundError> {
    Ok(gopalan_report(n, k, r)?.bound)
}

pub fn gopalan_report(n: usize, k: usize, r: usize) -> Result<BoundReport, BoundError> {
    check_nk(n, k)?;
    if r == 0 || r > k {
        return Err(BoundError::BadLocality { r, k });
    }
    let terms = vec![k.div_ceil(r)];
    Ok(BoundReport {
        kind: BoundKind::Gopalan,
        n,
        k,
        profile: vec![r],
        bound: assemble(n, k, &terms),
        per_locality_terms: terms,
        k_prime: None,
        r_prime: None,
        r: None,
    })
}

/// `d <= n - k + 2 - sum_j ceil(k_j/j)` for an information locality profile.
pub fn unequal_info_bound(n: usize, k: usize, profile: &InfoLocalityProfile) -> Result<BoundReport, BoundError> {
    check_nk(n, k)?;
    if profile.total() != k {
        return Err(BoundError::ProfileSum {
            sum: profile.total(),
            expected: k,
        });
    }
    let terms: Vec<usize> = profile
        .counts()
        .iter()
        .enumerate()
        .map(|(j, &kj)| kj.div_ceil(j + 1))
        .collect();
    Ok(BoundReport {
        kind: BoundKind::UnequalInfo,
        n,
        k,
        profile: profile.counts().to_vec(),
        bound: assemble(n, k, &terms),
        per_locality_terms: terms,
        k_prime: None,
        r_prime: None,
        r: None,
    })
}

/// Bound for an all-symbol locality profile `{n_1, ..., n_ra}`.
///
/// With `k'_j = n_j - ceil(n_j/(j+1))`, `r' = max{i : sum_(j<=i) k'_j < k}`
/// and `r = min{j > r' : n_j >= 2}`:
/// `d <= n - k + 2 - sum_(j<r) ceil(n_j/(j+1)) - ceil((k - sum_(j<r) k'_j)/r)`.
/// An undefined `r'` or `r` is an error.
pub fn unequal_all_symbol_bound(
    n: usize,
    k: usize,
    profile: &AllSymbolLocalityProfile,
) -> Result<BoundReport, BoundError> {
    check_nk(n, k)?;
    if profile.total() != n {
        return Err(BoundError::ProfileSum {
            sum: profile.total(),
            expected: n,
        });
    }
    let ra = profile.max_locality();
    if ra > k {
        return Err(BoundError::LocalityExceedsDimension { ra, k });
    }
    let counts = profile.counts();
    let k_prime: Vec<usize> = counts
        .iter()
        .enumerate()
        .map(|(j, &nj)| nj - nj.div_ceil(j + 2))
        .collect();
    let mut prefix = 0;
    let mut r_prime = None;
    for (i, &kp) in k_prime.iter().enumerate() {
        prefix += kp;
        if prefix < k {
            r_prime = Some(i + 1);
        }
    }
    let r_prime = r_prime.ok_or(BoundError::RPrimeUndefined {
        k_prime_1: k_prime[0],
        k,
    })?;
    let r = (r_prime + 1..=ra)
        .find(|&j| counts[j - 1] >= 2)
        .ok_or(BoundError::RUndefined {
            from: r_prime + 1,
            to: ra,
        })?;
    let mut terms: Vec<usize> = (1..r).map(|j| counts[j - 1].div_ceil(j + 1)).collect();
    let used: usize = k_prime[..r - 1].iter().sum();
    terms.push((k - used).div_ceil(r));
    Ok(BoundReport {
        kind: BoundKind::UnequalAllSymbol,
        n,
        k,
        profile: counts.to_vec(),
        bound: assemble(n, k, &terms),
        per_locality_terms: terms,
        k_prime: Some(k_prime),
        r_prime: Some(r_prime),
        r: Some(r),
    })
}

/// One iteration of the witness-set construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    /// Coordinate picked as the smallest-locality unused coordinate.
    pub picked: usize,
    pub locality: usize,
    /// Coordinates that entered the set in this step.
    pub added: Vec<usize>,
    /// Growth in size of the set.
    pub s: usize,
    /// Growth in rank of the set.
    pub t: usize,
    /// Whether the whole group {picked} plus its repair group was added.
    pub full: bool,
}

/// A coordinate set of rank k - 1. Any such set has size at most `n - d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub coordinates: Vec<usize>,
    pub rank: usize,
    pub steps: Vec<WitnessStep>,
}

impl WitnessSet {
    pub fn len(&self) -> usize {
        self.coordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coordinates.is_empty()
    }
}

pub fn witness_set(code: &LinearCode, cfg: &OracleConfig) -> Result<WitnessSet, BoundError> {
    witness_set_from(code, &code.localities(cfg)?)
}

/// Greedy construction of a large set of rank `k - 1`.
///
/// While the rank is at most `k - 2`, the unused coordinate of smallest
/// locality (lowest index on ties) is taken together with its repair group.
/// When the whole group would reach rank `k`, its members are added in index
/// order only until the rank is `k - 1`.
pub fn witness_set_from(code: &LinearCode, localities: &[Locality]) -> Result<WitnessSet, BoundError> {
    let n = code.n();
    let k = code.k();
    let groups: Vec<&[usize]> = localities
        .iter()
        .enumerate()
        .map(|(i, l)| l.repair_group().ok_or(CodeError::Unrecoverable(i)))
        .collect::<Result<_, _>>()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (groups[i].len(), i));

    let mut in_set = vec![false; n];
    let mut echelon = Echelon::new(code.field(), k);
    let mut steps = Vec::new();
    let mut cursor = 0;
    while echelon.rank() + 2 <= k {
        while in_set[order[cursor]] {
            cursor += 1;
        }
        let picked = order[cursor];
        let mut gamma: Vec<usize> = groups[picked]
            .iter()
            .copied()
            .chain([picked])
            .filter(|&c| !in_set[c])
            .collect();
        gamma.sort_unstable();
        let before = echelon.rank();
        let mut trial = echelon.clone();
        for &c in &gamma {
            trial.insert(code.column(c));
        }
        let (added, full) = if trial.rank() < k {
            echelon = trial;
            (gamma, true)
        } else {
            let mut added = Vec::new();
            for &c in &gamma {
                if echelon.rank() == k - 1 {
                    break;
                }
                echelon.insert(code.column(c));
                added.push(c);
            }
            (added, false)
        };
        for &c in &added {
            in_set[c] = true;
        }
        steps.push(WitnessStep {
            picked,
            locality: groups[picked].len(),
            s: added.len(),
            t: echelon.rank() - before,
            added,
            full,
        });
    }
    Ok(WitnessSet {
        coordinates: (0..n).filter(|&i| in_set[i]).collect(),
        rank: echelon.rank(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;

    fn info(v: &[usize]) -> InfoLocalityProfile {
        InfoLocalityProfile::new(v.to_vec()).unwrap()
    }

    fn all(v: &[usize]) -> AllSymbolLocalityProfile {
        AllSymbolLocalityProfile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gopalan_values() {
        assert_eq!(gopalan_bound(8, 4, 2).unwrap(), 4);
        assert_eq!(gopalan_bound(15, 11, 4).unwrap(), 3);
        assert_eq!(gopalan_bound(10, 5, 5).unwrap(), 6);
        assert!(matches!(gopalan_bound(8, 4, 5), Err(BoundError::BadLocality { .. })));
        assert!(matches!(gopalan_bound(3, 4, 1), Err(BoundError::BadDimensions { .. })));
    }

    #[test]
    fn unequal_info_example() {
        let rep = unequal_info_bound(15, 11, &info(&[0, 4, 3, 4])).unwrap();
        assert_eq!(rep.bound, 2);
        assert_eq!(rep.per_locality_terms, vec![0, 2, 1, 1]);
        let rep = unequal_info_bound(10, 4, &info(&[4])).unwrap();
        assert_eq!(rep.bound, 10 - 8 + 2);
        assert!(matches!(
            unequal_info_bound(15, 10, &info(&[0, 4, 3, 4])),
            Err(BoundError::ProfileSum { sum: 11, expected: 10 })
        ));
    }

    #[test]
    fn unequal_all_symbol_examples() {
        let rep = unequal_all_symbol_bound(15, 11, &all(&[0, 6, 4, 5])).unwrap();
        assert_eq!(rep.k_prime.as_deref(), Some(&[0, 4, 3, 4][..]));
        assert_eq!((rep.r_prime, rep.r, rep.bound), (Some(3), Some(4), 2));
        let rep = unequal_all_symbol_bound(6, 3, &all(&[0, 6])).unwrap();
        assert_eq!(rep.k_prime.as_deref(), Some(&[0, 4][..]));
        assert_eq!((rep.r_prime, rep.r, rep.bound), (Some(1), Some(2), 3));
        assert_eq!(rep.per_locality_terms, vec![0, 2]);
    }

    #[test]
    fn undefined_r_is_an_error() {
        // k'_1 = 4 >= k
        assert_eq!(
            unequal_all_symbol_bound(6, 3, &all(&[6])),
            Err(BoundError::RPrimeUndefined { k_prime_1: 3, k: 3 })
        );
        // r' = ra: every k'_j above the first class is zero
        assert_eq!(
            unequal_all_symbol_bound(3, 3, &all(&[2, 1])),
            Err(BoundError::RUndefined { from: 3, to: 2 })
        );
        assert_eq!(
            unequal_all_symbol_bound(5, 3, &all(&[2, 2, 1])),
            Err(BoundError::RUndefined { from: 4, to: 3 })
        );
    }

    #[test]
    fn trace_ends_with_the_value() {
        let rep = unequal_all_symbol_bound(15, 11, &all(&[0, 6, 4, 5])).unwrap();
        let t = rep.trace();
        assert!(t.last().unwrap().ends_with("= 2"));
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["kind"], "unequal-all-symbol");
        assert_eq!(json["r_prime"], 3);
    }

    #[test]
    fn witness_set_on_small_codes() {
        let f = Field::with_order(2).unwrap();
        let cfg = OracleConfig::default();
        let rep = LinearCode::new(&f, 1, vec![vec![1]; 3], None).unwrap();
        let w = witness_set(&rep, &cfg).unwrap();
        assert!(w.is_empty() && w.steps.is_empty());

        // two local groups {0,1,4} and {2,3,5}: d = 2, witness covers one group + one symbol
        let cols = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
        ];
        let c = LinearCode::new(&f, 4, cols, Some(vec![0, 1, 2, 3])).unwrap();
        let w = witness_set(&c, &cfg).unwrap();
        assert_eq!(w.rank, 3);
        assert_eq!(w.coordinates.len(), 6 - c.min_distance(&cfg).unwrap());
        assert!(w.steps[0].full && w.steps[0].t + 1 == w.steps[0].s);
    }
}
