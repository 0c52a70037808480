//! The embedded reference eigenvalue table and the full comparison report:
//! both geometric conventions recomputed per row, the finite-difference
//! oracle run on each, deviations quantified and anomalies flagged.
//!
//! The reference values are shipped as data (data/table1.csv), never edited,
//! and integrity-checked against a pinned digest before use. Comparison is
//! reporting, not assertion: rows that no convention reproduces are flagged,
//! not "corrected".

use crate::eigen::{critical_depth, solve_spectrum};
use crate::error::{Error, Result};
use crate::model::{Convention, DimensionlessWell};
use crate::oracle::{oracle_spectrum, OracleConfig};
use sha2::{Digest, Sha256};

pub const TABLE1_CSV: &str = include_str!("../../../data/table1.csv");
const TABLE1_SHA256: &str = "27a441b99c1983178978c795659e68f4cb317869e3c3bfd41a12814e8686180c";

/// Reference onsets quoted in the table: depths where its second and third
/// columns first become populated.
pub const REFERENCE_ONSETS: [f64; 2] = [4.28, 20.62];

/// Relative deviation beyond which a row is flagged.
pub const FLAG_THRESHOLD: f64 = 0.01;
/// Required solver-vs-oracle agreement per row.
pub const INTERNAL_AGREEMENT: f64 = 1e-6;

/// One row of the embedded table: depth plus up to three reference energies,
/// absent where the table leaves the cell blank.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub vbar0: f64,
    pub e0: Option<f64>,
    pub e1: Option<f64>,
    pub e2: Option<f64>,
}

impl Table1Row {
    pub fn energies(&self) -> Vec<f64> {
        [self.e0, self.e1, self.e2].into_iter().flatten().collect()
    }
}

/// Parse the embedded table after verifying its digest.
pub fn table1_rows() -> Result<Vec<Table1Row>> {
    let digest = hex_digest(TABLE1_CSV.as_bytes());
    if digest != TABLE1_SHA256 {
        return Err(Error::TableTampered);
    }
    let mut rows = Vec::new();
    for (i, line) in TABLE1_CSV.lines().enumerate() {
        if i == 0 {
            continue; // header
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 4 {
            return Err(Error::TableTampered);
        }
        let parse = |s: &str| -> Result<Option<f64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse::<f64>().map(Some).map_err(|_| Error::TableTampered)
            }
        };
        rows.push(Table1Row {
            vbar0: cells[0].parse().map_err(|_| Error::TableTampered)?,
            e0: parse(cells[1])?,
            e1: parse(cells[2])?,
            e2: parse(cells[3])?,
        });
    }
    if rows.len() != 24 {
        return Err(Error::TableTampered);
    }
    Ok(rows)
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Solver and oracle results for one convention on one row.
#[derive(Debug, Clone, PartialEq)]
pub struct ConventionColumn {
    pub energies: Vec<f64>,
    pub oracle: Vec<f64>,
    /// max |solver - reference| / |reference| over shared indices
    pub rel_dev: Option<f64>,
    /// max |solver - reference| over shared indices
    pub abs_dev: Option<f64>,
    /// max |solver - oracle| over shared indices
    pub solver_oracle_dev: Option<f64>,
    pub oracle_failed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowComparison {
    pub reference: Table1Row,
    pub eq1: ConventionColumn,
    pub halfwidth2: ConventionColumn,
    pub flags: Vec<String>,
}

/// Measured detachment depths for the first two excited states under one
/// convention, with deviations from the reference onsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnsetComparison {
    pub convention: Convention,
    pub measured: [f64; 2],
    pub deviation_from_reference: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<RowComparison>,
    pub rms_rel_dev_eq1: f64,
    pub rms_rel_dev_halfwidth2: f64,
    /// Convention with the lower RMS relative deviation.
    pub adjudicated: Convention,
    pub onsets: [OnsetComparison; 2],
    pub flagged_rows: usize,
}

/// Recompute every row of the embedded table under both conventions, run the
/// oracle on each, and quantify all deviations. Oracle failures flag the row
/// and the run continues.
pub fn compare_table1(tol: f64) -> Result<ComparisonReport> {
    let reference_rows = table1_rows()?;
    let mut rows = Vec::with_capacity(reference_rows.len());

    for row in &reference_rows {
        let eq1 = convention_column(row, Convention::Eq1, tol)?;
        let hw2 = convention_column(row, Convention::Halfwidth2, tol)?;
        let mut flags = row_flags(row, &eq1, &hw2);
        flags.extend(reference_jump_flags(&reference_rows, row));
        rows.push(RowComparison {
            reference: *row,
            eq1,
            halfwidth2: hw2,
            flags,
        });
    }

    let rms = |pick: fn(&RowComparison) -> &ConventionColumn| -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for r in &rows {
            let refs = r.reference.energies();
            let col = pick(r);
            for (i, &rv) in refs.iter().enumerate() {
                if let Some(&sv) = col.energies.get(i) {
                    let d = (sv - rv) / rv.abs();
                    sum += d * d;
                    count += 1;
                }
            }
        }
        (sum / count.max(1) as f64).sqrt()
    };
    let rms_eq1 = rms(|r| &r.eq1);
    let rms_hw2 = rms(|r| &r.halfwidth2);

    let onsets = [
        onset_comparison(Convention::Eq1, tol)?,
        onset_comparison(Convention::Halfwidth2, tol)?,
    ];
    let flagged_rows = rows.iter().filter(|r| !r.flags.is_empty()).count();

    Ok(ComparisonReport {
        rows,
        rms_rel_dev_eq1: rms_eq1,
        rms_rel_dev_halfwidth2: rms_hw2,
        adjudicated: if rms_eq1 <= rms_hw2 {
            Convention::Eq1
        } else {
            Convention::Halfwidth2
        },
        onsets,
        flagged_rows,
    })
}

fn convention_column(row: &Table1Row, conv: Convention, tol: f64) -> Result<ConventionColumn> {
    let well = DimensionlessWell::new(row.vbar0, conv)?;
    let spectrum = solve_spectrum(&well, tol)?;
    let energies: Vec<f64> = spectrum.states.iter().map(|s| s.ebar).collect();

    let (oracle, oracle_failed) = match oracle_spectrum(&well, &OracleConfig::for_well(&well)) {
        Ok(o) => (o.eigenvalues, false),
        Err(_) => (Vec::new(), true),
    };

    let refs = row.energies();
    let mut rel_dev: Option<f64> = None;
    let mut abs_dev: Option<f64> = None;
    for (i, &rv) in refs.iter().enumerate() {
        if let Some(&sv) = energies.get(i) {
            let a = (sv - rv).abs();
            abs_dev = Some(abs_dev.unwrap_or(0.0).max(a));
            rel_dev = Some(rel_dev.unwrap_or(0.0).max(a / rv.abs()));
        }
    }
    let mut solver_oracle_dev: Option<f64> = None;
    if !oracle_failed {
        for (s, o) in energies.iter().zip(&oracle) {
            let d = (s - o).abs();
            solver_oracle_dev = Some(solver_oracle_dev.unwrap_or(0.0).max(d));
        }
    }

    Ok(ConventionColumn {
        energies,
        oracle,
        rel_dev,
        abs_dev,
        solver_oracle_dev,
        oracle_failed,
    })
}

fn row_flags(row: &Table1Row, eq1: &ConventionColumn, hw2: &ConventionColumn) -> Vec<String> {
    let mut flags = Vec::new();
    let refs = row.energies();
    // reference cells must be strictly increasing within the row
    for pair in refs.windows(2) {
        if pair[0] >= pair[1] {
            flags.push("reference_ordering_violation".into());
            break;
        }
    }
    for (name, col) in [("eq1", eq1), ("halfwidth2", hw2)] {
        if col.energies.len() < refs.len() {
            flags.push(format!("missing_states_{name}"));
        }
        if col.energies.len() > refs.len() {
            flags.push(format!("extra_states_{name}"));
        }
        if col.oracle_failed {
            flags.push(format!("oracle_unstable_{name}"));
        } else {
            if col.energies.len() != col.oracle.len() {
                flags.push(format!("count_mismatch_oracle_{name}"));
            }
            if col.solver_oracle_dev.unwrap_or(0.0) > INTERNAL_AGREEMENT {
                flags.push(format!("internally_inconsistent_{name}"));
            }
        }
    }
    let best = match (eq1.rel_dev, hw2.rel_dev) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    if best.is_none_or(|d| d > FLAG_THRESHOLD) {
        flags.push("deviation_gt_1pct_best_convention".into());
    }
    flags
}

/// Flag rows where a reference column's per-unit-depth increment jumps by
/// more than a factor of three against the previous increment (the second
/// excited column does this between depths 25 and 30).
fn reference_jump_flags(all: &[Table1Row], row: &Table1Row) -> Vec<String> {
    let idx = all
        .iter()
        .position(|r| r.vbar0 == row.vbar0)
        .expect("row from this table");
    if idx < 2 {
        return Vec::new();
    }
    let mut flags = Vec::new();
    for (col, get) in [
        ("e0", (|r: &Table1Row| r.e0) as fn(&Table1Row) -> Option<f64>),
        ("e1", |r: &Table1Row| r.e1),
        ("e2", |r: &Table1Row| r.e2),
    ] {
        let (Some(a), Some(b), Some(c)) = (get(&all[idx - 2]), get(&all[idx - 1]), get(row))
        else {
            continue;
        };
        let rate_prev = (b - a) / (all[idx - 1].vbar0 - all[idx - 2].vbar0);
        let rate_cur = (c - b) / (row.vbar0 - all[idx - 1].vbar0);
        if rate_prev != 0.0 && (rate_cur / rate_prev).abs() > 3.5 {
            flags.push(format!("reference_jump_{col}"));
        }
    }
    flags
}

fn onset_comparison(conv: Convention, tol: f64) -> Result<OnsetComparison> {
    let measured = [
        critical_depth(conv, 1, tol.max(1e-12))?,
        critical_depth(conv, 2, tol.max(1e-12))?,
    ];
    Ok(OnsetComparison {
        convention: conv,
        measured,
        deviation_from_reference: [
            measured[0] - REFERENCE_ONSETS[0],
            measured[1] - REFERENCE_ONSETS[1],
        ],
    })
}

// ---------------------------------------------------------------------------
// deterministic rendering
// ---------------------------------------------------------------------------

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn nth(v: &[f64], i: usize) -> String {
    v.get(i).map(|x| x.to_string()).unwrap_or_default()
}

/// Render the comparison as CSV, one line per row of the embedded table.
pub fn render_report_csv(report: &ComparisonReport) -> String {
    let mut out = String::from(
        "vbar0,ref_e0,ref_e1,ref_e2,\
         eq1_count,eq1_e0,eq1_e1,eq1_e2,\
         hw2_count,hw2_e0,hw2_e1,hw2_e2,\
         oracle_eq1_e0,oracle_eq1_e1,oracle_eq1_e2,\
         oracle_hw2_e0,oracle_hw2_e1,oracle_hw2_e2,\
         abs_dev_eq1,rel_dev_eq1,abs_dev_hw2,rel_dev_hw2,\
         solver_oracle_eq1,solver_oracle_hw2,flags\n",
    );
    for r in &report.rows {
        let t = &r.reference;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            t.vbar0,
            opt(t.e0),
            opt(t.e1),
            opt(t.e2),
            r.eq1.energies.len(),
            nth(&r.eq1.energies, 0),
            nth(&r.eq1.energies, 1),
            nth(&r.eq1.energies, 2),
            r.halfwidth2.energies.len(),
            nth(&r.halfwidth2.energies, 0),
            nth(&r.halfwidth2.energies, 1),
            nth(&r.halfwidth2.energies, 2),
            nth(&r.eq1.oracle, 0),
            nth(&r.eq1.oracle, 1),
            nth(&r.eq1.oracle, 2),
            nth(&r.halfwidth2.oracle, 0),
            nth(&r.halfwidth2.oracle, 1),
            nth(&r.halfwidth2.oracle, 2),
            opt(r.eq1.abs_dev),
            opt(r.eq1.rel_dev),
            opt(r.halfwidth2.abs_dev),
            opt(r.halfwidth2.rel_dev),
            opt(r.eq1.solver_oracle_dev),
            opt(r.halfwidth2.solver_oracle_dev),
            r.flags.join(";"),
        ));
    }
    out
}

/// Human-readable summary naming the adjudicated convention and documenting
/// the measured onsets under both conventions.
pub fn render_report_summary(report: &ComparisonReport) -> String {
    let mut s = String::new();
    s.push_str("reference-table comparison summary\n");
    s.push_str("==================================\n");
    s.push_str(&format!(
        "rms relative deviation, eq1:        {:.6}\n",
        report.rms_rel_dev_eq1
    ));
    s.push_str(&format!(
        "rms relative deviation, halfwidth2: {:.6}\n",
        report.rms_rel_dev_halfwidth2
    ));
    s.push_str(&format!(
        "adjudicated convention (lower rms): {}\n",
        report.adjudicated.label()
    ));
    s.push_str(&format!(
        "rows flagged: {} of {}\n",
        report.flagged_rows,
        report.rows.len()
    ));
    s.push_str("\nmeasured detachment depths vs reference onsets (4.28, 20.62):\n");
    for o in &report.onsets {
        s.push_str(&format!(
            "  {:>10}: n=1 at {:.6} (dev {:+.6}), n=2 at {:.6} (dev {:+.6})\n",
            o.convention.label(),
            o.measured[0],
            o.deviation_from_reference[0],
            o.measured[1],
            o.deviation_from_reference[1],
        ));
    }
    let internal_ok = report.rows.iter().all(|r| {
        [&r.eq1, &r.halfwidth2].into_iter().all(|c| {
            !c.oracle_failed && c.solver_oracle_dev.unwrap_or(0.0) <= INTERNAL_AGREEMENT
        })
    });
    s.push_str(&format!(
        "\nsolver-vs-oracle internal agreement <= {INTERNAL_AGREEMENT:.0e} on every row: {}\n",
        if internal_ok { "yes" } else { "NO" }
    ));
    if report.rms_rel_dev_eq1 > FLAG_THRESHOLD && report.rms_rel_dev_halfwidth2 > FLAG_THRESHOLD {
        s.push_str(
            "\nnote: neither geometric reading reproduces the reference values to 1%;\n\
             deviations per row are quantified in the CSV. The two solver routes\n\
             (Airy matching and finite differences) agree with each other far more\n\
             tightly than either agrees with the reference column.\n",
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parses_and_is_intact() {
        let rows = table1_rows().unwrap();
        assert_eq!(rows.len(), 24);
        assert_eq!(rows[0].vbar0, 0.01);
        assert_eq!(rows[0].e0, Some(-0.0000976));
        assert_eq!(rows[0].e1, None);
        // the 1.0 row value is placed verbatim
        let r1 = rows.iter().find(|r| r.vbar0 == 1.0).unwrap();
        assert_eq!(r1.e0, Some(-0.2828516));
        // last row has all three columns
        let r40 = rows.last().unwrap();
        assert_eq!(r40.vbar0, 40.0);
        assert_eq!(r40.energies().len(), 3);
    }

    #[test]
    fn digest_guard_detects_tampering() {
        let mut bytes = TABLE1_CSV.as_bytes().to_vec();
        let pos = bytes.len() - 5;
        bytes[pos] ^= 1;
        assert_ne!(hex_digest(&bytes), TABLE1_SHA256);
        assert_eq!(hex_digest(TABLE1_CSV.as_bytes()), TABLE1_SHA256);
    }

    #[test]
    fn reference_jump_flag_hits_exactly_the_known_anomaly() {
        let rows = table1_rows().unwrap();
        let mut hits = Vec::new();
        for r in &rows {
            for f in reference_jump_flags(&rows, r) {
                hits.push((r.vbar0, f));
            }
        }
        assert_eq!(hits, vec![(30.0, "reference_jump_e1".to_string())]);
    }

    #[test]
    fn onset_comparisons_match_frozen_critical_depths() {
        let o = onset_comparison(Convention::Eq1, 1e-10).unwrap();
        assert!((o.measured[0] - 7.837347438943438).abs() < 1e-7);
        assert!((o.measured[1] - 25.638181376801974).abs() < 1e-7);
        assert!((o.deviation_from_reference[0] - (7.837347438943438 - 4.28)).abs() < 1e-7);
    }

    #[test]
    fn row_flags_catch_internal_inconsistency() {
        let row = Table1Row {
            vbar0: 1.0,
            e0: Some(-0.28),
            e1: None,
            e2: None,
        };
        let good = ConventionColumn {
            energies: vec![-0.17],
            oracle: vec![-0.17],
            rel_dev: Some(0.39),
            abs_dev: Some(0.11),
            solver_oracle_dev: Some(1e-9),
            oracle_failed: false,
        };
        let bad = ConventionColumn {
            energies: vec![-0.38],
            oracle: vec![-0.39],
            rel_dev: Some(0.36),
            abs_dev: Some(0.1),
            solver_oracle_dev: Some(1e-2),
            oracle_failed: false,
        };
        let flags = row_flags(&row, &good, &bad);
        assert!(flags.contains(&"internally_inconsistent_halfwidth2".to_string()));
        assert!(flags.contains(&"deviation_gt_1pct_best_convention".to_string()));
        assert!(!flags.contains(&"internally_inconsistent_eq1".to_string()));
    }
}
