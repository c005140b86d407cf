//! Linear codes with unequal locality.
//!
//! The crate provides finite-field arithmetic, exact oracles for minimum
//! distance and per-coordinate locality, distance bounds for codes with an
//! unequal information or all-symbol locality profile, two explicit
//! constructions that meet those bounds, and a profile optimizer.
//!
//! Brute-force oracles run on a rayon pool by default. Building without the
//! `parallel` feature, or passing [`Execution::Sequential`], runs them on the
//! calling thread with identical results.

pub mod bounds;
pub mod code;
pub mod constructions;
pub mod exec;
pub mod galois;
pub mod io;
pub mod linalg;
pub mod optimize;
pub mod profile;
pub mod sim;

pub use bounds::{
    gopalan_bound, gopalan_report, unequal_all_symbol_bound, unequal_info_bound, witness_set, witness_set_from,
    BoundError, BoundKind, BoundReport, WitnessSet, WitnessStep,
};
pub use code::{CodeError, DecodeFailure, DecodeOutcome, ErasurePattern, LinearCode, Locality, Repair};
pub use constructions::{
    gabidulin_lrc, lrc_erasure_decode, planted_random_code, pyramid_unequal, systematic_mds, ConstructionError,
    DesignedRepair, GabidulinLrc, LocalGroup, PyramidCode,
};
pub use exec::{Execution, LocalityMethod, OracleConfig};
pub use galois::{Field, FieldElement, FieldSpec, GaloisError, LinearizedPolynomial, Symbol};
pub use io::{CodeFile, ConstructionDescriptor, IoError};
pub use optimize::{
    canonicalize, exhaustive_optimal_objective, exhaustive_optimal_profiles, greedy_optimal_profile, objective,
    respects, CanonStep, CanonStepKind, Canonicalization, GreedyStep, GreedyTrace, LocalityRequirement, OptimizeError,
};
pub use profile::{AllSymbolLocalityProfile, InfoLocalityProfile, ProfileError};
pub use sim::{simulate, simulate_with, RepairClass, SimError, SimReport};
