//! Piecewise eigenfunction reconstruction, normalization and evaluation.
//!
//! The interior solution on [0, edge] is the Airy combination fixed by the
//! parity condition at the origin; the left half is its mirror image; the
//! exterior is the decaying exponential fixed by value continuity at the
//! edge. Derivative continuity at the edge is then automatic at a true root
//! and is asserted, which is what rejects stale or wrong energies.

use crate::airy::airy_eval;
use crate::eigen::{EigenState, Parity};
use crate::error::{Error, Result};
use crate::model::{match_points, DimensionlessWell, MatchPoints};

/// Relative edge-derivative mismatch beyond which the energy is rejected.
const ROOT_GATE: f64 = 1e-6;
/// Interior quadrature tolerance.
const QUAD_TOL: f64 = 1e-10;

/// One normalized bound state in piecewise form.
///
/// `coeffs` holds C1..C6: C1, C6 scale the exterior exponentials
/// e^(+beta y) (left) and e^(-beta y) (right); C4, C5 scale Ai(w(y)), Bi(w(y))
/// on [0, edge]; C2, C3 scale the mirrored interior basis Ai(w(-y)), Bi(w(-y))
/// on [-edge, 0].
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseState {
    pub coeffs: [f64; 6],
    pub ebar: f64,
    pub parity: Parity,
    /// L2 norm of the raw construction, before unit scaling.
    pub norm: f64,
    well: DimensionlessWell,
    mp: MatchPoints,
}

/// Build the normalized eigenfunction for an accepted root.
///
/// Sign convention: psi(0) > 0 for even states, psi'(0) > 0 for odd states.
pub fn build_state(well: &DimensionlessWell, state: &EigenState) -> Result<PiecewiseState> {
    let mp = match_points(well, state.ebar)?;
    let q0 = airy_eval(mp.w0)?;
    let (c4_raw, c5_raw) = match state.parity {
        Parity::Even => (q0.bi_prime, -q0.ai_prime),
        Parity::Odd => (q0.bi, -q0.ai),
    };

    let q2 = airy_eval(mp.w2)?;
    let psi_edge = c4_raw * q2.ai + c5_raw * q2.bi;
    let dpsi_edge = mp.cbrt_a * (c4_raw * q2.ai_prime + c5_raw * q2.bi_prime);

    // at a root the interior log-derivative equals the exterior -beta
    let mismatch = (dpsi_edge + mp.beta * psi_edge).abs();
    let scale = dpsi_edge
        .abs()
        .max(mp.beta * psi_edge.abs())
        .max(mp.cbrt_a * (c4_raw * q2.ai_prime).abs().max((c5_raw * q2.bi_prime).abs()));
    if mismatch > ROOT_GATE * scale.max(1e-300) {
        return Err(Error::NotARoot {
            ebar: state.ebar,
            mismatch: mismatch / scale.max(1e-300),
        });
    }

    let edge = well.edge();
    let c6_raw = psi_edge * (mp.beta * edge).exp();

    let interior = |y: f64| {
        let q = airy_eval(mp.w0 + mp.cbrt_a * y).expect("interior Airy argument in range");
        let v = c4_raw * q.ai + c5_raw * q.bi;
        v * v
    };
    let interior_sq = adaptive_simpson(&interior, 0.0, edge, QUAD_TOL);
    let tail_sq = c6_raw * c6_raw * (-2.0 * mp.beta * edge).exp() / (2.0 * mp.beta);
    let norm = (2.0 * interior_sq + 2.0 * tail_sq).sqrt();

    // psi_raw(0) = +1/pi for even states and psi_raw'(0) = -A^(1/3)/pi for
    // odd ones (Wronskian), so the gauge flip is deterministic.
    let s = match state.parity {
        Parity::Even => 1.0 / norm,
        Parity::Odd => -1.0 / norm,
    };
    let (c4, c5, c6) = (s * c4_raw, s * c5_raw, s * c6_raw);
    let (c2, c3, c1) = match state.parity {
        Parity::Even => (c4, c5, c6),
        Parity::Odd => (-c4, -c5, -c6),
    };

    Ok(PiecewiseState {
        coeffs: [c1, c2, c3, c4, c5, c6],
        ebar: state.ebar,
        parity: state.parity,
        norm,
        well: *well,
        mp,
    })
}

impl PiecewiseState {
    pub fn well(&self) -> &DimensionlessWell {
        &self.well
    }

    /// Exterior decay rate sqrt(-ebar).
    pub fn beta(&self) -> f64 {
        self.mp.beta
    }

    /// Half-range edge + 5/beta used for sampling and node counting.
    pub fn sampling_half_range(&self) -> f64 {
        self.well.edge() + 5.0 / self.mp.beta
    }

    /// Region-dispatched value: Airy combination inside, exponential tails
    /// outside, with both branches agreeing at the edges by construction.
    /// Returns NaN only if the interior Airy argument leaves the plain
    /// evaluation range (wells far beyond the tested depths).
    pub fn evaluate(&self, y: f64) -> f64 {
        let [c1, c2, c3, c4, c5, c6] = self.coeffs;
        let edge = self.well.edge();
        if y > edge {
            return c6 * (-self.mp.beta * y).exp();
        }
        if y < -edge {
            return c1 * (self.mp.beta * y).exp();
        }
        let t = self.mp.w0 + self.mp.cbrt_a * y.abs();
        match airy_eval(t) {
            Ok(q) => {
                if y >= 0.0 {
                    c4 * q.ai + c5 * q.bi
                } else {
                    c2 * q.ai + c3 * q.bi
                }
            }
            Err(_) => f64::NAN,
        }
    }

    /// Strict sign changes of psi over a uniform grid spanning the sampling
    /// range, ignoring values below 1e-12.
    pub fn count_nodes(&self, grid_points: usize) -> Result<usize> {
        if grid_points < 1001 {
            return Err(Error::InvalidConfig(format!(
                "node counting needs at least 1001 grid points, got {grid_points}"
            )));
        }
        let r = self.sampling_half_range();
        let mut nodes = 0;
        let mut last_sign = 0.0;
        for i in 0..grid_points {
            let y = -r + 2.0 * r * (i as f64) / ((grid_points - 1) as f64);
            let v = self.evaluate(y);
            if v.abs() < 1e-12 {
                continue;
            }
            let s = v.signum();
            if last_sign != 0.0 && s != last_sign {
                nodes += 1;
            }
            last_sign = s;
        }
        Ok(nodes)
    }
}

/// L2 inner product of two states of the same well: adaptive quadrature over
/// the interior, closed-form exponential tails.
pub fn overlap(a: &PiecewiseState, b: &PiecewiseState) -> Result<f64> {
    if a.well != b.well {
        return Err(Error::InvalidConfig(
            "overlap requires states of the same well".into(),
        ));
    }
    let edge = a.well.edge();
    let f = |y: f64| a.evaluate(y) * b.evaluate(y);
    let interior = adaptive_simpson(&f, -edge, edge, QUAD_TOL);
    let bsum = a.mp.beta + b.mp.beta;
    let right = a.coeffs[5] * b.coeffs[5] * (-bsum * edge).exp() / bsum;
    let left = a.coeffs[0] * b.coeffs[0] * (-bsum * edge).exp() / bsum;
    Ok(interior + right + left)
}

/// Determinant of the full six-coefficient continuity system (value and
/// derivative at y = -edge, 0, +edge), rows L2-normalized, exterior columns
/// conditioned by e^(-beta edge). Vanishes exactly at the union of the
/// parity-determinant roots, tying the parity construction back to the
/// six-constant formulation.
pub fn matching_determinant(well: &DimensionlessWell, ebar: f64) -> Result<f64> {
    let mp = match_points(well, ebar)?;
    let q0 = airy_eval(mp.w0)?;
    let q2 = airy_eval(mp.w2)?;
    let a13 = mp.cbrt_a;
    let b = mp.beta;

    let mut m = [
        [1.0, -q2.ai, -q2.bi, 0.0, 0.0, 0.0],
        [b, a13 * q2.ai_prime, a13 * q2.bi_prime, 0.0, 0.0, 0.0],
        [0.0, q0.ai, q0.bi, -q0.ai, -q0.bi, 0.0],
        [0.0, -q0.ai_prime, -q0.bi_prime, -q0.ai_prime, -q0.bi_prime, 0.0],
        [0.0, 0.0, 0.0, q2.ai, q2.bi, -1.0],
        [0.0, 0.0, 0.0, a13 * q2.ai_prime, a13 * q2.bi_prime, b],
    ];
    for row in &mut m {
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in row.iter_mut() {
            *v /= norm;
        }
    }
    Ok(det6(&mut m))
}

fn det6(m: &mut [[f64; 6]; 6]) -> f64 {
    let mut det = 1.0;
    for col in 0..6 {
        let pivot = (col..6)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let pivot_row = m[col];
        for row in m.iter_mut().skip(col + 1) {
            let f = row[col] / pivot_row[col];
            for (cell, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *cell -= f * pv;
            }
        }
    }
    det
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 30)
}
