//! Explicit codes: systematic Reed-Solomon codes, Pyramid codes with an
//! unequal information locality profile, and Gabidulin-precoded codes with an
//! unequal all-symbol locality profile.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, DecodeFailure, DecodeOutcome, ErasurePattern, LinearCode};
use crate::galois::{prime_power, Field, GaloisError, LinearizedPolynomial, Symbol};
use crate::linalg::{self, Echelon};
use crate::profile::{AllSymbolLocalityProfile, InfoLocalityProfile, ProfileError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("dimension k must be at least 1")]
    ZeroDimension,
    #[error("design distance must be at least {min}, got {d}")]
    BadDistance { d: usize, min: usize },
    #[error("field of order {order} is too small: need at least {required} elements")]
    FieldTooSmall { order: u64, required: u64 },
    #[error("(j+1) must divide n_j: j = {j}, n_j = {n_j}")]
    Divisibility { j: usize, n_j: usize },
    #[error("precode length N = {n_precode} is smaller than k = {k}")]
    PrecodeTooShort { k: usize, n_precode: usize },
    #[error("extension degree m = {m} is smaller than the precode length N = {n_precode}")]
    ExtensionTooSmall { m: usize, n_precode: usize },
    #[error("base field size q = {q} must be at least ra + 1 = {}", ra + 1)]
    BaseFieldTooSmall { q: u64, ra: usize },
    #[error("coordinate {0} has no designed repair group")]
    NoDesignedGroup(usize),
    #[error("coordinate {index} is out of range for length {n}")]
    CoordinateOutOfRange { index: usize, n: usize },
}

/// A local group: `data` coordinates protected by one parity coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalGroup {
    /// Designed locality class of the group.
    pub locality: usize,
    pub data: Vec<usize>,
    pub parity: usize,
}

impl LocalGroup {
    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.data.iter().copied().chain([self.parity])
    }

    fn others(&self, i: usize) -> Vec<usize> {
        let mut g: Vec<usize> = self.members().filter(|&c| c != i).collect();
        g.sort_unstable();
        g
    }
}

/// The designed repair group of a coordinate, without running an oracle.
pub trait DesignedRepair {
    fn code(&self) -> &LinearCode;

    fn local_groups(&self) -> &[LocalGroup];

    /// Returns the designed group of coordinate `i` minus `i` itself.
    fn repair_group_of(&self, i: usize) -> Result<Vec<usize>, ConstructionError> {
        let n = self.code().n();
        if i >= n {
            return Err(ConstructionError::CoordinateOutOfRange { index: i, n });
        }
        self.local_groups()
            .iter()
            .find(|g| g.members().any(|c| c == i))
            .map(|g| g.others(i))
            .ok_or(ConstructionError::NoDesignedGroup(i))
    }
}

/// Systematic `(k + d - 1, k, d)` Reed-Solomon code.
///
/// Evaluates at the first `k + d - 1` field elements in index order and
/// row-reduces to the identity on the first `k` coordinates.
pub fn systematic_mds(k: usize, d: usize, field: &Field) -> Result<LinearCode, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroDimension);
    }
    if d == 0 {
        return Err(ConstructionError::BadDistance { d, min: 1 });
    }
    let n = k + d - 1;
    if (n as u64) > field.order() {
        return Err(ConstructionError::FieldTooSmall {
            order: field.order(),
            required: n as u64,
        });
    }
    let mut rows: Vec<Vec<Symbol>> = (0..k)
        .map(|t| (0..n).map(|x| field.pow(x as Symbol, t as u64)).collect())
        .collect();
    // 0^0 = 1 keeps the first column a proper Vandermonde column
    let pivots = linalg::rref(field, &mut rows);
    debug_assert_eq!(pivots, (0..k).collect::<Vec<_>>());
    Ok(LinearCode::from_generator_rows(field, &rows, Some((0..k).collect()))?)
}

/// Pyramid code built by splitting the first parity of a systematic MDS code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyramidCode {
    pub code: LinearCode,
    /// One group per split parity, in coordinate order.
    pub groups: Vec<LocalGroup>,
    /// The `d - 2` unsplit parities.
    pub tail_parities: Vec<usize>,
    pub intended_profile: InfoLocalityProfile,
    pub d_design: usize,
}

impl PyramidCode {
    /// Information locality profile implied by the group sizes. A class whose
    /// count is not a multiple of `j` ends with a smaller group, whose members
    /// have locality equal to that group's size.
    pub fn designed_profile(&self) -> InfoLocalityProfile {
        let max = self.groups.iter().map(|g| g.data.len()).max().unwrap_or(0);
        let mut counts = vec![0; max];
        for g in &self.groups {
            counts[g.data.len() - 1] += g.data.len();
        }
        InfoLocalityProfile::new(counts).expect("a pyramid code has at least one group")
    }
}

impl DesignedRepair for PyramidCode {
    fn code(&self) -> &LinearCode {
        &self.code
    }

    fn local_groups(&self) -> &[LocalGroup] {
        &self.groups
    }
}

/// Pyramid code with information locality profile `profile` and distance `d`.
///
/// Information coordinates are assigned to classes in increasing locality and
/// index order, and class `j` is cut into groups of `j` (the last one may be
/// shorter). Coordinates are laid out as the `k` information symbols, the split
/// parities group by group, then the `d - 2` remaining MDS parities. The length
/// is `k + d - 2 + sum_j ceil(k_j / j)`.
pub fn pyramid_unequal(
    profile: &InfoLocalityProfile,
    d: usize,
    field: &Field,
) -> Result<PyramidCode, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::BadDistance { d, min: 2 });
    }
    let k = profile.total();
    let mds = systematic_mds(k, d, field)?;
    let p0 = mds.column(k);
    let mut columns: Vec<Vec<Symbol>> = mds.columns()[..k].to_vec();
    let mut groups = Vec::new();
    let mut next_info = 0;
    for (idx, &kj) in profile.counts().iter().enumerate() {
        let j = idx + 1;
        let class: Vec<usize> = (next_info..next_info + kj).collect();
        next_info += kj;
        for chunk in class.chunks(j) {
            let mut col = vec![0; k];
            for &c in chunk {
                col[c] = p0[c];
            }
            groups.push(LocalGroup {
                locality: j,
                data: chunk.to_vec(),
                parity: columns.len(),
            });
            columns.push(col);
        }
    }
    let mut tail_parities = Vec::new();
    for p in &mds.columns()[k + 1..] {
        tail_parities.push(columns.len());
        columns.push(p.clone());
    }
    let code = LinearCode::new(field, k, columns, Some((0..k).collect()))?;
    Ok(PyramidCode {
        code,
        groups,
        tail_parities,
        intended_profile: profile.clone(),
        d_design: d,
    })
}

/// Code of Construction 1: a Gabidulin precode over GF(q^m) whose symbols are
/// cut into local groups, each closed by a single-parity symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabidulinLrc {
    pub code: LinearCode,
    pub groups: Vec<LocalGroup>,
    /// Precode length `N = sum_j n_j * j / (j + 1)`.
    pub n_precode: usize,
    /// Precode evaluation points `g_i = alpha^i`.
    pub evaluation_points: Vec<Symbol>,
    /// Per coordinate, the point at which the message polynomial is evaluated;
    /// for a parity this is the sum of its group's points.
    pub effective_points: Vec<Symbol>,
    pub intended_profile: AllSymbolLocalityProfile,
    pub q: u64,
    pub m: usize,
}

impl DesignedRepair for GabidulinLrc {
    fn code(&self) -> &LinearCode {
        &self.code
    }

    fn local_groups(&self) -> &[LocalGroup] {
        &self.groups
    }
}

/// Builds Construction 1 for dimension `k` and all-symbol profile `nprofile`
/// over GF(q^m). Requires `(j+1) | n_j`, `k <= N <= m` and `q >= ra + 1`.
pub fn gabidulin_lrc(
    k: usize,
    nprofile: &AllSymbolLocalityProfile,
    q: u64,
    m: usize,
) -> Result<GabidulinLrc, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroDimension);
    }
    for (idx, &nj) in nprofile.counts().iter().enumerate() {
        if nj % (idx + 2) != 0 {
            return Err(ConstructionError::Divisibility { j: idx + 1, n_j: nj });
        }
    }
    let n_precode: usize = nprofile
        .counts()
        .iter()
        .enumerate()
        .map(|(idx, &nj)| nj / (idx + 2) * (idx + 1))
        .sum();
    if k > n_precode {
        return Err(ConstructionError::PrecodeTooShort { k, n_precode });
    }
    if m < n_precode {
        return Err(ConstructionError::ExtensionTooSmall { m, n_precode });
    }
    let ra = nprofile.max_locality();
    if q < ra as u64 + 1 {
        return Err(ConstructionError::BaseFieldTooSmall { q, ra });
    }
    let (p, w) = prime_power(q)?;
    let field = Field::new(p, w, m as u32)?;
    let evaluation_points: Vec<Symbol> = (0..n_precode).map(|i| field.basis_element(i)).collect();

    let column_for = |g: Symbol| -> Vec<Symbol> { (0..k).map(|t| field.frobenius(g, t)).collect() };
    let mut columns = Vec::new();
    let mut effective_points = Vec::new();
    let mut groups = Vec::new();
    let mut next_point = 0;
    for (idx, &nj) in nprofile.counts().iter().enumerate() {
        let j = idx + 1;
        for _ in 0..nj / (j + 1) {
            let mut data = Vec::with_capacity(j);
            let mut parity_point = 0;
            for _ in 0..j {
                let g = evaluation_points[next_point];
                next_point += 1;
                parity_point = field.add(parity_point, g);
                data.push(columns.len());
                columns.push(column_for(g));
                effective_points.push(g);
            }
            groups.push(LocalGroup {
                locality: j,
                data,
                parity: columns.len(),
            });
            columns.push(column_for(parity_point));
            effective_points.push(parity_point);
        }
    }
    let code = LinearCode::new(&field, k, columns, None)?;
    Ok(GabidulinLrc {
        code,
        groups,
        n_precode,
        evaluation_points,
        effective_points,
        intended_profile: nprofile.clone(),
        q,
        m,
    })
}

impl GabidulinLrc {
    /// Two-stage erasure decoding: every surviving symbol is an evaluation of
    /// the message polynomial at a known point, so any `k` surviving points
    /// that are independent over GF(q) determine the message through the
    /// Moore system.
    pub fn erasure_decode(
        &self,
        received: &[Symbol],
        pattern: &ErasurePattern,
    ) -> Result<DecodeOutcome, ConstructionError> {
        let code = &self.code;
        let field = code.field();
        let n = code.n();
        let k = code.k();
        if received.len() != n {
            return Err(CodeError::LengthMismatch {
                expected: n,
                got: received.len(),
            }
            .into());
        }
        if let Some(&index) = pattern.erased().iter().find(|&&i| i >= n) {
            return Err(ConstructionError::CoordinateOutOfRange { index, n });
        }
        let survivors: Vec<usize> = (0..n).filter(|&i| !pattern.contains(i)).collect();
        let mut span = Echelon::new(field.base_field(), field.ext_degree());
        let mut chosen = Vec::with_capacity(k);
        for &i in &survivors {
            if span.insert(&field.to_vector(self.effective_points[i])) {
                chosen.push(i);
                if chosen.len() == k {
                    break;
                }
            }
        }
        if chosen.len() < k {
            return Ok(DecodeOutcome::Failed(DecodeFailure::InsufficientRank));
        }
        let points: Vec<Symbol> = chosen.iter().map(|&i| self.effective_points[i]).collect();
        let values: Vec<Symbol> = chosen.iter().map(|&i| received[i]).collect();
        let f = LinearizedPolynomial::moore_solve(field, &points, &values)?;
        if survivors
            .iter()
            .any(|&i| f.eval(self.effective_points[i]) != received[i])
        {
            return Ok(DecodeOutcome::Failed(DecodeFailure::Inconsistent));
        }
        Ok(DecodeOutcome::Recovered(f.coefficients().to_vec()))
    }
}

/// Free-function form of [`GabidulinLrc::erasure_decode`].
pub fn lrc_erasure_decode(
    lrc: &GabidulinLrc,
    received: &[Symbol],
    pattern: &ErasurePattern,
) -> Result<DecodeOutcome, ConstructionError> {
    lrc.erasure_decode(received, pattern)
}

/// Random systematic code with planted local parities, for exercising the
/// bounds on codes that were not built to meet them.
///
/// The `k` information symbols are cut into groups of random size at most
/// `max_group`; each group gets one parity with random nonzero coefficients.
/// Up to `max_global` further parities are dense random combinations. No
/// column is zero and the length is at most `max_n` (at least `k` plus one
/// parity per group).
pub fn planted_random_code<R: Rng + ?Sized>(
    field: &Field,
    k: usize,
    max_group: usize,
    max_global: usize,
    max_n: usize,
    rng: &mut R,
) -> Result<LinearCode, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroDimension);
    }
    let order = field.order();
    let nonzero = |rng: &mut R| rng.random_range(1..order) as Symbol;
    let mut columns: Vec<Vec<Symbol>> = (0..k).map(|j| (0..k).map(|t| u32::from(t == j)).collect()).collect();
    let mut start = 0;
    while start < k {
        let size = rng.random_range(1..=max_group.max(1)).min(k - start);
        let mut col = vec![0; k];
        for c in col.iter_mut().skip(start).take(size) {
            *c = nonzero(rng);
        }
        columns.push(col);
        start += size;
    }
    let room = max_n.saturating_sub(columns.len()).min(max_global);
    let globals = if room == 0 { 0 } else { rng.random_range(0..=room) };
    for _ in 0..globals {
        let mut col: Vec<Symbol> = (0..k).map(|_| rng.random_range(0..order) as Symbol).collect();
        if col.iter().all(|&x| x == 0) {
            col[rng.random_range(0..k)] = nonzero(rng);
        }
        columns.push(col);
    }
    Ok(LinearCode::new(field, k, columns, Some((0..k).collect()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::OracleConfig;
    use rand::SeedableRng;
    use rand_xoshiro::SplitMix64;

    fn info(v: &[usize]) -> InfoLocalityProfile {
        InfoLocalityProfile::new(v.to_vec()).unwrap()
    }

    fn all(v: &[usize]) -> AllSymbolLocalityProfile {
        AllSymbolLocalityProfile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn mds_code_shapes() {
        let f = Field::with_order(8).unwrap();
        let id = systematic_mds(3, 1, &f).unwrap();
        assert_eq!(id.n(), 3);
        let c = systematic_mds(3, 3, &f).unwrap();
        assert_eq!((c.n(), c.k()), (5, 3));
        assert_eq!(c.systematic_positions(), Some(&[0, 1, 2][..]));
        for p in &c.columns()[3..] {
            assert!(p.iter().all(|&x| x != 0));
        }
        let cfg = OracleConfig::default();
        assert_eq!(c.min_distance(&cfg).unwrap(), 3);
        assert_eq!(c.min_distance_by_enumeration(&cfg).unwrap(), 3);
        assert!(matches!(
            systematic_mds(6, 4, &f),
            Err(ConstructionError::FieldTooSmall { order: 8, required: 9 })
        ));
    }

    #[test]
    fn pyramid_15_11_shape() {
        let f = Field::with_order(16).unwrap();
        let p = pyramid_unequal(&info(&[0, 4, 3, 4]), 2, &f).unwrap();
        assert_eq!((p.code.n(), p.code.k()), (15, 11));
        assert_eq!(p.groups.len(), 4);
        assert!(p.tail_parities.is_empty());
        assert_eq!(p.groups[0].data, vec![0, 1]);
        assert_eq!(p.groups[2].data, vec![4, 5, 6]);
        assert_eq!(p.repair_group_of(4).unwrap(), vec![5, 6, 13]);
        assert_eq!(p.repair_group_of(11).unwrap(), vec![0, 1]);
        assert_eq!(p.designed_profile(), info(&[0, 4, 3, 4]));
    }

    #[test]
    fn pyramid_short_group_and_tail() {
        let f = Field::with_order(16).unwrap();
        let p = pyramid_unequal(&info(&[0, 3]), 4, &f).unwrap();
        assert_eq!(p.code.n(), 3 + 2 + 2);
        assert_eq!(p.tail_parities, vec![5, 6]);
        assert_eq!(p.designed_profile(), info(&[1, 2]));
        assert!(matches!(
            p.repair_group_of(6),
            Err(ConstructionError::NoDesignedGroup(6))
        ));
        assert_eq!(p.code.min_distance(&OracleConfig::default()).unwrap(), 4);
    }

    #[test]
    fn gabidulin_small_instance() {
        let lrc = gabidulin_lrc(3, &all(&[0, 6]), 4, 4).unwrap();
        assert_eq!((lrc.code.n(), lrc.code.k(), lrc.n_precode), (6, 3, 4));
        assert_eq!(lrc.evaluation_points, vec![1, 4, 16, 64]);
        assert_eq!(lrc.effective_points[2], 1 ^ 4);
        assert_eq!(lrc.repair_group_of(0).unwrap(), vec![1, 2]);
        let cfg = OracleConfig::default();
        assert_eq!(lrc.code.min_distance(&cfg).unwrap(), 3);
    }

    #[test]
    fn gabidulin_preconditions() {
        assert_eq!(
            gabidulin_lrc(3, &all(&[0, 5]), 4, 4).unwrap_err(),
            ConstructionError::Divisibility { j: 2, n_j: 5 }
        );
        assert!(matches!(
            gabidulin_lrc(5, &all(&[0, 6]), 4, 4),
            Err(ConstructionError::PrecodeTooShort { .. })
        ));
        assert!(matches!(
            gabidulin_lrc(3, &all(&[0, 6]), 4, 3),
            Err(ConstructionError::ExtensionTooSmall { .. })
        ));
        assert!(matches!(
            gabidulin_lrc(3, &all(&[0, 0, 4]), 3, 3),
            Err(ConstructionError::BaseFieldTooSmall { q: 3, ra: 3 })
        ));
    }

    #[test]
    fn gabidulin_decoder_round_trip() {
        let lrc = gabidulin_lrc(3, &all(&[0, 6]), 4, 4).unwrap();
        let msg = vec![7, 200, 33];
        let word = lrc.code.encode(&msg).unwrap();
        let out = lrc.erasure_decode(&word, &ErasurePattern::none()).unwrap();
        assert_eq!(out.message(), Some(msg.as_slice()));
        let p = ErasurePattern::new(6, [0, 4]).unwrap();
        let out = lrc.erasure_decode(&word, &p).unwrap();
        assert_eq!(out.message(), Some(msg.as_slice()));
        // a whole local group plus one more symbol is beyond the distance
        let p = ErasurePattern::new(6, [0, 1, 2]).unwrap();
        assert_eq!(
            lrc.erasure_decode(&word, &p).unwrap(),
            DecodeOutcome::Failed(DecodeFailure::InsufficientRank)
        );
    }

    #[test]
    fn planted_codes_are_well_formed() {
        let f = Field::with_order(4).unwrap();
        let mut rng = SplitMix64::seed_from_u64(5);
        for _ in 0..20 {
            let k = rng.random_range(1..=6);
            let c = planted_random_code(&f, k, 3, 3, 12, &mut rng).unwrap();
            assert!(c.n() <= 12.max(2 * k));
            assert!(c.columns().iter().all(|col| col.iter().any(|&x| x != 0)));
            let locs = c.localities(&OracleConfig::default()).unwrap();
            assert!(locs.iter().all(|l| l.value().is_some()));
        }
    }
}
