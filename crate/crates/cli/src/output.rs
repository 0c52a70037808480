//! Document rendering (CSV and the structured-object format) and atomic
//! file output.
//!
//! Tabular numbers use shortest round-trip decimals; diagnostic documents
//! (airy, oracle) use 17 significant digits. All renderings are
//! deterministic byte-for-byte for fixed inputs.

use serde::Serialize;
use std::io::Write;
use std::path::Path;
use triwell::airy::{AiryQuad, ScaledAiryQuad};
use triwell::eigen::Spectrum;
use triwell::oracle::OracleSpectrum;
use triwell::report::{ComparisonReport, Table1Row};
use triwell::report::{render_report_csv, REFERENCE_ONSETS};
use triwell::wavefn::PiecewiseState;

/// A command result rendered in both supported formats.
pub struct Document {
    pub csv: String,
    pub json: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SpectrumJson<'a> {
    vbar0: f64,
    convention: &'a str,
    tolerance: f64,
    bracket_grid_size: usize,
    states: Vec<StateJson>,
}

#[derive(Serialize)]
struct StateJson {
    n: usize,
    parity: &'static str,
    ebar: f64,
    residual: f64,
}

pub fn spectrum_document(spectrum: &Spectrum) -> Document {
    let mut csv = String::from("n,parity,ebar,residual\n");
    for s in &spectrum.states {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            s.n, s.parity, s.ebar, s.residual_abs
        ));
    }
    let json = to_json(&SpectrumJson {
        vbar0: spectrum.well.vbar0,
        convention: spectrum.well.convention.label(),
        tolerance: spectrum.tolerance,
        bracket_grid_size: spectrum.bracket_grid_size,
        states: spectrum
            .states
            .iter()
            .map(|s| StateJson {
                n: s.n,
                parity: s.parity.label(),
                ebar: s.ebar,
                residual: s.residual_abs,
            })
            .collect(),
    });
    Document { csv, json }
}

// ---------------------------------------------------------------------------
// table1
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Table1RowJson {
    vbar0: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    e0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    e1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    e2: Option<f64>,
}

pub fn table1_document(rows: &[Table1Row]) -> Document {
    // verbatim passthrough of the embedded data
    let csv = triwell::report::TABLE1_CSV.to_string();
    let json = to_json(
        &rows
            .iter()
            .map(|r| Table1RowJson {
                vbar0: r.vbar0,
                e0: r.e0,
                e1: r.e1,
                e2: r.e2,
            })
            .collect::<Vec<_>>(),
    );
    Document { csv, json }
}

#[derive(Serialize)]
struct ReportJson {
    rms_rel_dev_eq1: f64,
    rms_rel_dev_halfwidth2: f64,
    adjudicated: &'static str,
    flagged_rows: usize,
    onsets: Vec<OnsetJson>,
    rows: Vec<ReportRowJson>,
}

#[derive(Serialize)]
struct OnsetJson {
    convention: &'static str,
    measured: [f64; 2],
    reference: [f64; 2],
    deviation: [f64; 2],
}

#[derive(Serialize)]
struct ReportRowJson {
    vbar0: f64,
    reference: Vec<f64>,
    eq1: Vec<f64>,
    halfwidth2: Vec<f64>,
    oracle_eq1: Vec<f64>,
    oracle_halfwidth2: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_dev_eq1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_dev_halfwidth2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver_oracle_eq1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver_oracle_halfwidth2: Option<f64>,
    flags: Vec<String>,
}

pub fn report_document(report: &ComparisonReport) -> Document {
    let json = to_json(&ReportJson {
        rms_rel_dev_eq1: report.rms_rel_dev_eq1,
        rms_rel_dev_halfwidth2: report.rms_rel_dev_halfwidth2,
        adjudicated: report.adjudicated.label(),
        flagged_rows: report.flagged_rows,
        onsets: report
            .onsets
            .iter()
            .map(|o| OnsetJson {
                convention: o.convention.label(),
                measured: o.measured,
                reference: REFERENCE_ONSETS,
                deviation: o.deviation_from_reference,
            })
            .collect(),
        rows: report
            .rows
            .iter()
            .map(|r| ReportRowJson {
                vbar0: r.reference.vbar0,
                reference: r.reference.energies(),
                eq1: r.eq1.energies.clone(),
                halfwidth2: r.halfwidth2.energies.clone(),
                oracle_eq1: r.eq1.oracle.clone(),
                oracle_halfwidth2: r.halfwidth2.oracle.clone(),
                rel_dev_eq1: r.eq1.rel_dev,
                rel_dev_halfwidth2: r.halfwidth2.rel_dev,
                solver_oracle_eq1: r.eq1.solver_oracle_dev,
                solver_oracle_halfwidth2: r.halfwidth2.solver_oracle_dev,
                flags: r.flags.clone(),
            })
            .collect(),
    });
    Document {
        csv: render_report_csv(report),
        json,
    }
}

// ---------------------------------------------------------------------------
// wavefunction
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct WavefunctionJson {
    vbar0: f64,
    convention: &'static str,
    ebar: f64,
    parity: &'static str,
    y: Vec<f64>,
    psi: Vec<f64>,
}

pub fn wavefunction_document(state: &PiecewiseState, grid: usize) -> Document {
    let r = state.sampling_half_range();
    let mut ys = Vec::with_capacity(grid);
    let mut psis = Vec::with_capacity(grid);
    for i in 0..grid {
        let y = if grid == 1 {
            0.0
        } else {
            -r + 2.0 * r * (i as f64) / ((grid - 1) as f64)
        };
        ys.push(y);
        psis.push(state.evaluate(y));
    }
    let mut csv = String::from("y,psi\n");
    for (y, p) in ys.iter().zip(&psis) {
        csv.push_str(&format!("{y},{p}\n"));
    }
    let json = to_json(&WavefunctionJson {
        vbar0: state.well().vbar0,
        convention: state.well().convention.label(),
        ebar: state.ebar,
        parity: state.parity.label(),
        y: ys,
        psi: psis,
    });
    Document { csv, json }
}

// ---------------------------------------------------------------------------
// critical
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct CriticalRow {
    pub n: usize,
    pub eq1: f64,
    pub halfwidth2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_onset: Option<f64>,
}

pub fn critical_document(rows: &[CriticalRow]) -> Document {
    let mut csv = String::from("n,eq1,halfwidth2,reference_onset\n");
    for r in rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.eq1,
            r.halfwidth2,
            r.reference_onset.map(|v| v.to_string()).unwrap_or_default()
        ));
    }
    Document {
        csv,
        json: to_json(&rows),
    }
}

// ---------------------------------------------------------------------------
// diagnostics: airy, oracle (labeled key-value lines, 17 significant digits)
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AiryJson {
    x: f64,
    ai: f64,
    bi: f64,
    ai_prime: f64,
    bi_prime: f64,
    ai_scaled: f64,
    bi_scaled: f64,
    ai_prime_scaled: f64,
    bi_prime_scaled: f64,
    exponent: f64,
}

pub fn airy_document(plain: &AiryQuad, scaled: &ScaledAiryQuad) -> Document {
    let mut csv = String::new();
    for (k, v) in [
        ("x", plain.x),
        ("ai", plain.ai),
        ("bi", plain.bi),
        ("ai_prime", plain.ai_prime),
        ("bi_prime", plain.bi_prime),
        ("ai_scaled", scaled.ai_s),
        ("bi_scaled", scaled.bi_s),
        ("ai_prime_scaled", scaled.ai_prime_s),
        ("bi_prime_scaled", scaled.bi_prime_s),
        ("exponent", triwell::airy::exponent(plain.x)),
    ] {
        csv.push_str(&format!("{k} = {v:.16e}\n"));
    }
    let json = to_json(&AiryJson {
        x: plain.x,
        ai: plain.ai,
        bi: plain.bi,
        ai_prime: plain.ai_prime,
        bi_prime: plain.bi_prime,
        ai_scaled: scaled.ai_s,
        bi_scaled: scaled.bi_s,
        ai_prime_scaled: scaled.ai_prime_s,
        bi_prime_scaled: scaled.bi_prime_s,
        exponent: triwell::airy::exponent(plain.x),
    });
    Document { csv, json }
}

#[derive(Serialize)]
struct OracleJson {
    eigenvalues: Vec<f64>,
    achieved_error_estimate: f64,
    half_domain_used: f64,
    base_grid_points: usize,
}

pub fn oracle_document(spectrum: &OracleSpectrum) -> Document {
    let mut csv = String::new();
    for (i, e) in spectrum.eigenvalues.iter().enumerate() {
        csv.push_str(&format!("eigenvalue_{i:02} = {e:.16e}\n"));
    }
    csv.push_str(&format!(
        "achieved_error_estimate = {:.16e}\n",
        spectrum.achieved_error_estimate
    ));
    csv.push_str(&format!(
        "half_domain_used = {:.16e}\n",
        spectrum.half_domain_used
    ));
    csv.push_str(&format!("base_grid_points = {}\n", spectrum.base_grid_points));
    let json = to_json(&OracleJson {
        eigenvalues: spectrum.eigenvalues.clone(),
        achieved_error_estimate: spectrum.achieved_error_estimate,
        half_domain_used: spectrum.half_domain_used,
        base_grid_points: spectrum.base_grid_points,
    });
    Document { csv, json }
}

// ---------------------------------------------------------------------------
// atomic output
// ---------------------------------------------------------------------------

/// Print to stdout, or write to a sibling temp file and rename into place so
/// a failed run never leaves a partial file.
pub fn write_document(path: Option<&Path>, content: &str) -> triwell::Result<()> {
    let Some(path) = path else {
        print!("{content}");
        return Ok(());
    };
    let io_err = |e: std::io::Error| {
        triwell::Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))
    };
    let mut tmp = path.to_path_buf();
    let mut name = tmp.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    tmp.set_file_name(name);
    {
        let mut f = std::fs::File::create(&tmp).map_err(io_err)?;
        f.write_all(content.as_bytes()).map_err(io_err)?;
        f.sync_all().map_err(io_err)?;
    }
    std::fs::rename(&tmp, path).map_err(io_err)
}
