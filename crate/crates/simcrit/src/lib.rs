//! simcrit: exact-arithmetic dimensional analysis and similarity criteria.
//!
//! The engine takes a set of physical quantities with dimension rows over
//! a user-definable base-dimension system, validates a chosen basis by
//! exact rational determinant, and derives the dimensionless π-groups
//! (similarity criteria) of the remaining quantities. Every exponent and
//! determinant is an arbitrary-precision rational; floating point appears
//! only when criteria are evaluated against concrete parameter values.
//!
//! # Modules
//!
//! - [`dims`]: dimension systems, dimension vectors, quantities
//! - [`units`]: unit-expression parsing (`кДж/(кг·°C)` and friends)
//! - [`pi`]: basis checking and π-group derivation by two independent routes
//! - [`similarity`]: numeric evaluation, similarity checks, unknown solving
//! - [`slm`]: the built-in selective-laser-melting problem and the
//!   print-planning arithmetic that comes with it
//!
//! # Quick start
//!
//! ```rust
//! use simcrit::{check_basis, derive_pi_groups, format_pi_group, slm_preset};
//!
//! let (matrix, basis) = slm_preset();
//! let check = check_basis(&matrix, &basis).unwrap();
//! assert_eq!(check.determinant.to_string(), "3");
//!
//! let groups = derive_pi_groups(&matrix, &basis).unwrap();
//! assert_eq!(format_pi_group(&groups[0], &matrix), "ρ·t_c^2·V^(1/3)·T·z");
//! ```

pub mod dims;
mod linalg;
pub mod pi;
pub mod rational;
pub mod similarity;
pub mod slm;
pub mod units;

pub use dims::{DimensionSystem, DimensionVector, DimsError, Quantity};
pub use pi::{
    check_basis, cramer_derivation, derive_exponents_cramer, derive_exponents_nullspace,
    derive_pi_groups, format_pi_group, BasisCheck, BasisSelection, CramerDerivation,
    DimensionalMatrix, PiError, PiGroup,
};
pub use rational::Rational;
pub use similarity::{
    check_similarity, eval_pi, solve_unknown, CaseAssignment, GroupComparison, SimilarityError,
    SimilarityReport, DEFAULT_TOLERANCE,
};
pub use slm::{
    audit_preset, compare_materials, estimate_print_time, format_sig_figs, implied_rate,
    reference_print_times, slm_preset, AccuracyClass, ComparisonResult, PrintTimeEstimate,
    PrintTimeRow, PrintTimeTable, SlmError, RATE_MAX_CM3_PER_H, RATE_MIN_CM3_PER_H,
};
pub use units::{
    audit_quantities, default_registry, parse_unit, AuditRecord, ParsedUnit, UnitError,
    UnitRegistry,
};
