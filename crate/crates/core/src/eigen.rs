//! Transcendental eigenvalue residuals, spectrum solving and critical depths.
//!
//! The authoritative residuals are the parity-split matching determinants of
//! the even well: an interior Airy combination satisfying the parity condition
//! at the origin, matched to the decaying exponential at the edge. Both are
//! assembled from exponent-scaled Airy values with the shared exponential
//! factor cancelled analytically, then normalized by the root-sum-square of
//! their two terms, so the returned value is O(1), scale-invariant, and free
//! of spurious poles.
//!
//! The coupled-ratio form that eliminates the interior constants P and Q is
//! kept verbatim as a diagnostic ([`residual_eq26`]); its agreement or
//! disagreement with the determinant roots is reported, never reconciled
//! silently.

use crate::airy::{airy_eval, airy_eval_scaled, exponent, AI_PRIME_ZERO, BI_PRIME_ZERO};
use crate::error::{Error, Result};
use crate::model::{match_points, Convention, DimensionlessWell};
use crate::roots;
use serde::{Deserialize, Serialize};

/// Symmetry class of an eigenfunction of the even well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn label(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One bound state: index (ordered by energy), dimensionless energy, parity,
/// and the residual magnitude left at the accepted root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenState {
    pub n: usize,
    pub ebar: f64,
    pub parity: Parity,
    pub residual_abs: f64,
}

/// The full bound spectrum of one well, with solver metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub well: DimensionlessWell,
    pub states: Vec<EigenState>,
    pub bracket_grid_size: usize,
    pub tolerance: f64,
}

/// The interior constant ratios P = C2/C3 and Q = C4/C5; infinite when the
/// defining denominator vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPQ {
    pub p: f64,
    pub q: f64,
}

/// Even-parity matching determinant, normalized; zero exactly at the
/// even-parity eigenvalues.
///
/// D_even = beta [Bi'(w0) Ai(w2) - Ai'(w0) Bi(w2)]
///        + A^(1/3) [Bi'(w0) Ai'(w2) - Ai'(w0) Bi'(w2)]
pub fn residual_even(well: &DimensionlessWell, ebar: f64) -> Result<f64> {
    residual_parity(well, ebar, Parity::Even)
}

/// Odd-parity matching determinant (interior condition psi(0) = 0), same
/// normalization and root property as [`residual_even`].
pub fn residual_odd(well: &DimensionlessWell, ebar: f64) -> Result<f64> {
    residual_parity(well, ebar, Parity::Odd)
}

pub fn residual_parity(well: &DimensionlessWell, ebar: f64, parity: Parity) -> Result<f64> {
    let m = match_points(well, ebar)?;
    let q0 = airy_eval(m.w0)?;
    let s2 = airy_eval_scaled(m.w2)?;
    // Ai(w2) = ai_s e^-z, Bi(w2) = bi_s e^+z; the common e^+z is dropped
    // (it cannot change the sign or the roots, and the normalization below
    // removes any positive overall factor exactly).
    let damp = (-2.0 * exponent(m.w2)).exp();
    let (x0, y0) = match parity {
        Parity::Even => (q0.bi_prime, q0.ai_prime),
        Parity::Odd => (q0.bi, q0.ai),
    };
    let t1 = m.beta * (x0 * s2.ai_s * damp - y0 * s2.bi_s);
    let t2 = m.cbrt_a * (x0 * s2.ai_prime_s * damp - y0 * s2.bi_prime_s);
    let rss = t1.hypot(t2);
    Ok(if rss > 0.0 { (t1 + t2) / rss } else { t1 + t2 })
}

/// Normalized residual in the threshold limit ebar -> 0^-: beta vanishes,
/// w2 -> 0, and only the derivative bracket survives. Used as the top
/// endpoint of the bracketing scan and by the critical-depth search.
fn residual_parity_at_threshold(well: &DimensionlessWell, parity: Parity) -> Result<f64> {
    let cbrt_a = well.slope().cbrt();
    let w0 = -well.edge() * cbrt_a;
    let q0 = airy_eval(w0)?;
    let (x0, y0) = match parity {
        Parity::Even => (q0.bi_prime, q0.ai_prime),
        Parity::Odd => (q0.bi, q0.ai),
    };
    let t2 = cbrt_a * (x0 * AI_PRIME_ZERO - y0 * BI_PRIME_ZERO);
    Ok(if t2 == 0.0 { 0.0 } else { t2.signum() })
}

/// The ratios P (from the left-edge matching) and Q (from the right-edge
/// matching) of the coupled-ratio formulation.
pub fn ratio_pq(well: &DimensionlessWell, ebar: f64) -> Result<RatioPQ> {
    let m = match_points(well, ebar)?;
    let q1 = airy_eval(m.w1)?;
    let qm2 = airy_eval(-m.w2)?;
    let p = (m.beta * q1.bi - m.cbrt_a * q1.bi_prime)
        / (m.cbrt_a * q1.ai_prime - m.beta * q1.ai);
    let q = -(m.beta * qm2.bi + m.cbrt_a * qm2.bi_prime)
        / (m.beta * qm2.ai + m.cbrt_a * qm2.ai_prime);
    Ok(RatioPQ { p, q })
}

/// The coupled-ratio eigenvalue residual exactly as printed: left-hand side
/// minus right-hand side, with w-arguments taken verbatim. Diagnostic only —
/// the parity determinants are authoritative.
///
/// A denominator smaller than 1e-300 in magnitude is a pole, reported as
/// [`Error::RatioPole`], never as a root.
pub fn residual_eq26(well: &DimensionlessWell, ebar: f64) -> Result<f64> {
    let m = match_points(well, ebar)?;
    let q1 = airy_eval(m.w1)?;
    let q0 = airy_eval(m.w0)?;
    let qm0 = airy_eval(-m.w0)?;
    let qm2 = airy_eval(-m.w2)?;

    let p_num = m.beta * q1.bi - m.cbrt_a * q1.bi_prime;
    let p_den = m.cbrt_a * q1.ai_prime - m.beta * q1.ai;
    let lhs_num = p_num * q0.ai_prime + p_den * q0.bi_prime;
    let lhs_den = p_num * q0.ai + p_den * q0.bi;

    let q_num = m.beta * qm2.bi + m.cbrt_a * qm2.bi_prime;
    let q_den = m.cbrt_a * qm2.ai_prime + m.beta * qm2.ai;
    let rhs_num = q_num * qm0.ai_prime - q_den * qm0.bi_prime;
    let rhs_den = q_num * qm0.ai - q_den * qm0.bi;

    if lhs_den.abs() < 1e-300 || rhs_den.abs() < 1e-300 {
        return Err(Error::RatioPole { ebar });
    }
    Ok(lhs_num / lhs_den - rhs_num / rhs_den)
}

/// Outcome of evaluating the coupled-ratio residual at an accepted root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Eq26Outcome {
    /// |residual| <= 1e-6: the printed form agrees at this root.
    Consistent(f64),
    /// Finite but larger residual: structured discrepancy entry.
    Discrepant(f64),
    /// A denominator vanished at the root.
    Pole,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eq26Report {
    pub n: usize,
    pub ebar: f64,
    pub parity: Parity,
    pub outcome: Eq26Outcome,
}

/// Evaluate the coupled-ratio residual at every accepted root of a spectrum
/// and classify each outcome. Poles and overflow are absorbed into the
/// report; this never fails.
pub fn eq26_diagnostics(spectrum: &Spectrum) -> Vec<Eq26Report> {
    spectrum
        .states
        .iter()
        .map(|s| {
            let outcome = match residual_eq26(&spectrum.well, s.ebar) {
                Ok(r) if r.abs() <= 1e-6 => Eq26Outcome::Consistent(r),
                Ok(r) => Eq26Outcome::Discrepant(r),
                Err(_) => Eq26Outcome::Pole,
            };
            Eq26Report {
                n: s.n,
                ebar: s.ebar,
                parity: s.parity,
                outcome,
            }
        })
        .collect()
}

pub const TOL_MIN: f64 = 1e-14;
pub const TOL_MAX: f64 = 1e-6;
const MAX_REFINE_ITER: usize = 200;

/// Find every bound state of the well.
///
/// The open window (-V̄₀, 0) is scanned on a grid of
/// max(64, ceil(8 sqrt(V̄₀))) points per parity (level spacing near the well
/// bottom scales as A^(2/3), hence the sqrt). Each sign-change bracket is
/// refined by bisection-safeguarded inverse quadratic interpolation to
/// |dE| <= tol; the threshold limit provides the top endpoint sample, so
/// states arbitrarily close to detachment are still bracketed.
pub fn solve_spectrum(well: &DimensionlessWell, tol: f64) -> Result<Spectrum> {
    if !(TOL_MIN..=TOL_MAX).contains(&tol) {
        return Err(Error::BadTolerance(tol));
    }
    let grid = (64usize).max((8.0 * well.vbar0.sqrt()).ceil() as usize);

    let mut found: Vec<(f64, Parity, f64)> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        scan_parity(well, parity, grid, tol, &mut found)?;
    }
    if found.is_empty() {
        // a symmetric 1D well always binds at least one state; rescan harder
        for parity in [Parity::Even, Parity::Odd] {
            scan_parity(well, parity, grid * 8, tol, &mut found)?;
        }
    }
    if found.is_empty() {
        return Err(Error::NoConvergence {
            lo: -well.vbar0,
            hi: 0.0,
            iterations: MAX_REFINE_ITER,
        });
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let states = found
        .into_iter()
        .enumerate()
        .map(|(n, (ebar, parity, residual_abs))| EigenState {
            n,
            ebar,
            parity,
            residual_abs,
        })
        .collect();
    Ok(Spectrum {
        well: *well,
        states,
        bracket_grid_size: grid,
        tolerance: tol,
    })
}

fn scan_parity(
    well: &DimensionlessWell,
    parity: Parity,
    grid: usize,
    tol: f64,
    found: &mut Vec<(f64, Parity, f64)>,
) -> Result<()> {
    let v0 = well.vbar0;
    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(grid + 2);
    let bottom = -v0 * (1.0 - 1e-9);
    samples.push((bottom, residual_parity(well, bottom, parity)?));
    for i in 1..=grid {
        let e = -v0 + v0 * (i as f64) / ((grid + 1) as f64);
        samples.push((e, residual_parity(well, e, parity)?));
    }
    samples.push((0.0, residual_parity_at_threshold(well, parity)?));

    // refine tighter than requested so the leftover residual magnitude is
    // negligible against the 1e-10 acceptance bound
    let xtol = (tol * 1e-3).max(1e-15);
    for pair in samples.windows(2) {
        let (lo, f_lo) = pair[0];
        let (hi, f_hi) = pair[1];
        if f_lo == 0.0 {
            continue; // exact grid hit is handled as its own root below
        }
        if f_lo.signum() * f_hi.signum() < 0.0 {
            let r = roots::refine(
                |e| residual_parity(well, e, parity).unwrap_or(f64::NAN),
                lo,
                hi,
                f_lo,
                f_hi,
                xtol,
                MAX_REFINE_ITER,
            )?;
            // deep roots make the normalized residual steep enough that one
            // ulp of ebar matters; settle on the best representable float
            let (root, fr) = ulp_polish(well, parity, r.root, r.f_at_root);
            found.push((root, parity, fr.abs()));
        }
    }
    for pair in samples.iter().take(grid + 1).skip(1) {
        if pair.1 == 0.0 {
            found.push((pair.0, parity, 0.0));
        }
    }
    Ok(())
}

fn ulp_polish(
    well: &DimensionlessWell,
    parity: Parity,
    root: f64,
    f_at_root: f64,
) -> (f64, f64) {
    let mut best = (root, f_at_root);
    for step in [-4i32, -3, -2, -1, 1, 2, 3, 4] {
        let mut x = root;
        for _ in 0..step.unsigned_abs() {
            x = if step < 0 { x.next_down() } else { x.next_up() };
        }
        if let Ok(f) = residual_parity(well, x, parity) {
            if f.abs() < best.1.abs() {
                best = (x, f);
            }
        }
    }
    best
}

pub const CRITICAL_N_MAX: usize = 8;

/// Depth at which the n-th excited state first detaches from the continuum:
/// the threshold determinant (beta = 0, w2 = 0) is solved for V̄₀ by
/// bisection to |dV̄₀| <= tol. Odd n resolves against the odd-parity
/// threshold family, even n against the even one.
pub fn critical_depth(convention: Convention, n: usize, tol: f64) -> Result<f64> {
    if n == 0 || n > CRITICAL_N_MAX {
        return Err(Error::InvalidConfig(format!(
            "critical depth index must lie in 1..={CRITICAL_N_MAX}, got {n}"
        )));
    }
    if !(TOL_MIN..=TOL_MAX).contains(&tol) {
        return Err(Error::BadTolerance(tol));
    }
    let parity = if n % 2 == 1 { Parity::Odd } else { Parity::Even };
    let k = if n % 2 == 1 { n.div_ceil(2) } else { n / 2 };

    // threshold determinant as a function of depth, via u = edge * A^(1/3)
    let edge = convention.edge();
    let vbar0_of_u = |u: f64| {
        let a = (u / edge).powi(3);
        match convention {
            Convention::Eq1 => a,
            Convention::Halfwidth2 => 2.0 * a,
        }
    };
    let g = |vbar0: f64| -> Result<f64> {
        let well = DimensionlessWell::new(vbar0, convention)?;
        let cbrt_a = well.slope().cbrt();
        let q0 = airy_eval(-edge * cbrt_a)?;
        Ok(match parity {
            Parity::Even => q0.bi_prime * AI_PRIME_ZERO - q0.ai_prime * BI_PRIME_ZERO,
            Parity::Odd => q0.bi * AI_PRIME_ZERO - q0.ai * BI_PRIME_ZERO,
        })
    };

    // onsets are spaced like Airy zeros in u, ~1 apart: a 0.02 grid cannot
    // skip one
    let mut hits = 0usize;
    let mut u = 0.02;
    let mut f_prev = g(vbar0_of_u(u))?;
    while u < 16.0 {
        let u_next = u + 0.02;
        let f_next = g(vbar0_of_u(u_next))?;
        if f_prev.signum() != f_next.signum() {
            hits += 1;
            if hits == k {
                let (mut lo, mut hi) = (vbar0_of_u(u), vbar0_of_u(u_next));
                let mut f_lo = f_prev;
                while hi - lo > tol {
                    let mid = 0.5 * (lo + hi);
                    let f_mid = g(mid)?;
                    if f_mid == 0.0 {
                        return Ok(mid);
                    }
                    if f_mid.signum() == f_lo.signum() {
                        lo = mid;
                        f_lo = f_mid;
                    } else {
                        hi = mid;
                    }
                }
                return Ok(0.5 * (lo + hi));
            }
        }
        u = u_next;
        f_prev = f_next;
    }
    Err(Error::NoConvergence {
        lo: 0.0,
        hi: 16.0,
        iterations: 800,
    })
}
