//! Well descriptions in physical and dimensionless form, the potential
//! itself, and the matching quantities entering the eigenvalue equation.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Geometric reading of the dimensionless well.
///
/// `Eq1` is the triangle of half-width 1 (in units of a) with slope V̄₀ —
/// the default. `Halfwidth2` is the alternative triangle of half-width 2
/// with slope V̄₀/2, kept so the reference-table comparison can test both
/// readings side by side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Eq1,
    Halfwidth2,
}

impl Convention {
    /// Half-width of the triangle in units of a.
    pub fn edge(self) -> f64 {
        match self {
            Convention::Eq1 => 1.0,
            Convention::Halfwidth2 => 2.0,
        }
    }

    /// Slope constant A of the interior equation psi'' - A y psi + B psi = 0.
    pub fn slope(self, vbar0: f64) -> f64 {
        match self {
            Convention::Eq1 => vbar0,
            Convention::Halfwidth2 => vbar0 / 2.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Convention::Eq1 => "eq1",
            Convention::Halfwidth2 => "halfwidth2",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq1" => Ok(Convention::Eq1),
            "halfwidth2" => Ok(Convention::Halfwidth2),
            other => Err(Error::InvalidWell(format!("unknown convention {other:?}"))),
        }
    }
}

/// A well in physical units: particle mass, hbar, depth V0 > 0 and
/// half-width a > 0, all in one consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalWell {
    pub mass: f64,
    pub hbar: f64,
    pub depth: f64,
    pub half_width: f64,
}

impl PhysicalWell {
    pub fn new(mass: f64, hbar: f64, depth: f64, half_width: f64) -> Result<Self> {
        let w = PhysicalWell {
            mass,
            hbar,
            depth,
            half_width,
        };
        for (v, name) in [
            (mass, "mass"),
            (hbar, "hbar"),
            (depth, "depth"),
            (half_width, "half_width"),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidWell(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(w)
    }

    /// The energy unit hbar^2 / (2 m a^2).
    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass * self.half_width * self.half_width)
    }
}

/// The well in units of hbar^2/(2 m a^2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessWell {
    pub vbar0: f64,
    pub convention: Convention,
}

impl DimensionlessWell {
    pub fn new(vbar0: f64, convention: Convention) -> Result<Self> {
        if !(vbar0.is_finite() && vbar0 > 0.0) {
            return Err(Error::InvalidWell(format!(
                "vbar0 must be strictly positive and finite, got {vbar0}"
            )));
        }
        Ok(DimensionlessWell { vbar0, convention })
    }

    pub fn edge(&self) -> f64 {
        self.convention.edge()
    }

    pub fn slope(&self) -> f64 {
        self.convention.slope(self.vbar0)
    }
}

/// Reduce a physical well to dimensionless form (Eq1 geometry).
pub fn to_dimensionless(w: &PhysicalWell) -> Result<DimensionlessWell> {
    let vbar0 = w.depth / w.energy_unit();
    if !vbar0.is_finite() {
        return Err(Error::InvalidWell(format!(
            "dimensionless depth is not finite (depth {}, unit {})",
            w.depth,
            w.energy_unit()
        )));
    }
    DimensionlessWell::new(vbar0, Convention::Eq1)
}

/// Map a dimensionless energy back to physical units: E = ebar * hbar^2/(2 m a^2).
pub fn to_physical_energy(w: &PhysicalWell, ebar: f64) -> f64 {
    ebar * w.energy_unit()
}

/// V̄(y) at position y = x/a: piecewise linear, even, with minimum -V̄₀ at
/// the origin and zero outside the edges.
pub fn potential_value(well: &DimensionlessWell, y: f64) -> f64 {
    let edge = well.edge();
    let a = y.abs();
    if a <= edge {
        -well.vbar0 * (1.0 - a / edge)
    } else {
        0.0
    }
}

/// Derived matching quantities at a candidate energy: the Airy arguments at
/// the origin (w0) and at the two edges (w1, w2), the slope cube root, and
/// the exterior decay rate beta = sqrt(-ebar).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchPoints {
    pub cbrt_a: f64,
    pub w0: f64,
    pub w1: f64,
    pub w2: f64,
    pub beta: f64,
}

/// Compute the matching quantities for `ebar` strictly inside the bound
/// window (-V̄₀, 0).
///
/// w1 and w2 are formed as w0 -/+ edge·A^(1/3) so that the midpoint identity
/// w0 = (w1+w2)/2 holds to rounding.
pub fn match_points(well: &DimensionlessWell, ebar: f64) -> Result<MatchPoints> {
    if !ebar.is_finite() || ebar <= -well.vbar0 || ebar >= 0.0 {
        return Err(Error::OutsideWindow {
            ebar,
            lo: -well.vbar0,
        });
    }
    let a = well.slope();
    let b = ebar + well.vbar0;
    let cbrt_a = a.cbrt();
    let w0 = -b / (cbrt_a * cbrt_a);
    let half_span = well.edge() * cbrt_a;
    Ok(MatchPoints {
        cbrt_a,
        w0,
        w1: w0 - half_span,
        w2: w0 + half_span,
        beta: (-ebar).sqrt(),
    })
}
