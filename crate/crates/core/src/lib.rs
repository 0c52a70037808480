//! Bound states of a non-relativistic particle in a finite-range triangular
//! (linearly rising) potential well.
//!
//! The well depth and all energies are carried in units of hbar^2/(2 m a^2)
//! with positions in units of the half-width a. Two geometric readings of the
//! well are supported ([`model::Convention`]); eigenvalues come from the
//! Airy-function matching determinants ([`eigen`]) and are cross-checked by an
//! independent finite-difference eigensolver ([`oracle`]).

pub mod airy;
pub mod eigen;
pub mod error;
pub mod model;
pub mod oracle;
pub mod report;
pub mod wavefn;

mod roots;

pub use airy::{airy_eval, airy_eval_scaled, AiryQuad, ScaledAiryQuad};
pub use eigen::{
    critical_depth, eq26_diagnostics, residual_eq26, residual_even, residual_odd, solve_spectrum,
    EigenState, Parity, Spectrum,
};
pub use error::{Error, Result};
pub use model::{
    match_points, potential_value, to_dimensionless, Convention, DimensionlessWell, MatchPoints,
    PhysicalWell,
};
pub use oracle::{oracle_spectrum, sturm_count, OracleConfig, OracleSpectrum};
pub use wavefn::{build_state, matching_determinant, overlap, PiecewiseState};
