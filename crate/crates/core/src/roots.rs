//! Bracketed root refinement: inverse quadratic / secant steps guarded by
//! bisection (Brent's method). Endpoint values are supplied by the caller and
//! never re-evaluated, so brackets may touch points where `f` itself is only
//! defined as a limit.

use crate::error::{Error, Result};

pub struct Refined {
    pub root: f64,
    pub f_at_root: f64,
}

pub fn refine<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<Refined> {
    if f_lo == 0.0 {
        return Ok(Refined {
            root: lo,
            f_at_root: 0.0,
        });
    }
    if f_hi == 0.0 {
        return Ok(Refined {
            root: hi,
            f_at_root: 0.0,
        });
    }
    assert!(
        f_lo.signum() != f_hi.signum(),
        "refine requires a sign-change bracket"
    );

    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f_lo, f_hi);
    // keep |f(b)| <= |f(a)|: b is the current best iterate
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    // smallest |f| seen; interpolation steps usually land far closer to the
    // root than the final bracket width when the residual is steep
    let (mut x_best, mut f_best) = (b, fb);

    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(if f_best.abs() < fb.abs() && (x_best - b).abs() <= 4.0 * tol1 + xtol {
                Refined {
                    root: x_best,
                    f_at_root: f_best,
                }
            } else {
                Refined {
                    root: b,
                    f_at_root: fb,
                }
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // attempt inverse quadratic interpolation (secant when a == c)
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(xm)
        };
        fb = f(b);
        if fb.abs() < f_best.abs() {
            x_best = b;
            f_best = fb;
        }
    }
    Err(Error::NoConvergence {
        lo: lo.min(hi),
        hi: lo.max(hi),
        iterations: max_iter,
    })
}
