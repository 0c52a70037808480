//! Error type shared by all solver modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument is not finite")]
    NonFinite,

    /// Unscaled Bi/Bi' would exceed the f64 range; the scaled evaluation
    /// stays finite there.
    #[error("unscaled Airy values overflow for x = {x}; use the scaled evaluation")]
    AiryOverflow { x: f64 },

    #[error("|x| = {x} exceeds the supported range {max}")]
    OutOfRange { x: f64, max: f64 },

    #[error("invalid well: {0}")]
    InvalidWell(String),

    #[error("energy {ebar} outside the open bound-state window ({lo}, 0)")]
    OutsideWindow { ebar: f64, lo: f64 },

    #[error("tolerance {0} outside the supported range [1e-14, 1e-6]")]
    BadTolerance(f64),

    #[error("state index {n} out of range: {count} state(s) available")]
    NoSuchState { n: usize, count: usize },

    /// Bracket refinement gave up; the bracket travels with the error so the
    /// caller can report or retry it.
    #[error("refinement did not converge after {iterations} iterations on [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },

    /// A denominator of the coupled-ratio residual vanished. Poles are
    /// reported distinctly so they are never mistaken for roots.
    #[error("coupled-ratio residual has a pole at ebar = {ebar}")]
    RatioPole { ebar: f64 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "oracle failed to stabilize after {doublings} domain doublings \
         (last change {last_change:.3e} at half-domain {half_domain})"
    )]
    OracleUnstable {
        doublings: usize,
        half_domain: f64,
        last_change: f64,
    },

    /// The requested energy is not a root of the matching determinant, so no
    /// piecewise eigenfunction exists for it.
    #[error("ebar = {ebar} is not an eigenvalue (edge derivative mismatch {mismatch:.3e})")]
    NotARoot { ebar: f64, mismatch: f64 },

    #[error("embedded reference table failed its integrity check")]
    TableTampered,
}
