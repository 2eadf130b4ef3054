//! The bundled design table and the calibration harness that checks its
//! `g_c ∝ sqrt(p_m)` and `C ∝ g_c^2 Q0` scaling laws.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::spin::Calibration;

/// Operating frequency shared by every row of the table, Hz.
pub const TABLE_FREQUENCY_HZ: f64 = 2.87e9;
pub const DEFAULT_REFERENCE: &str = "double-split-TE";
const HEADER: &str = "mode_label,p_m_e3,p_e_e3,q0,g_c_mhz,volume_cm3,c_factor";

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub mode_label: String,
    pub p_m_e3: f64,
    pub p_e_e3: f64,
    pub q0: f64,
    pub g_c_mhz: f64,
    pub volume_cm3: f64,
    pub c_factor: f64,
}

impl TableRow {
    pub fn p_m(&self) -> f64 {
        self.p_m_e3 * 1e-3
    }

    pub fn p_e(&self) -> f64 {
        self.p_e_e3 * 1e-3
    }
}

/// Parses the table CSV. `#` lines are comments; the header is mandatory.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if !header_seen {
            if content != HEADER {
                return Err(Error::Parse {
                    line,
                    key: "header".into(),
                    message: format!("expected `{HEADER}`"),
                });
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if fields.len() != 7 {
            return Err(Error::Parse {
                line,
                key: "row".into(),
                message: format!("expected 7 fields, found {}", fields.len()),
            });
        }
        let names = ["p_m_e3", "p_e_e3", "q0", "g_c_mhz", "volume_cm3", "c_factor"];
        let mut values = [0.0; 6];
        for (slot, (name, field)) in values.iter_mut().zip(names.iter().zip(&fields[1..])) {
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                line,
                key: (*name).into(),
                message: format!("`{field}` is not a number"),
            })?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parse {
                    line,
                    key: (*name).into(),
                    message: format!("must be > 0, got {v}"),
                });
            }
            *slot = v;
        }
        if rows.iter().any(|r: &TableRow| r.mode_label == fields[0]) {
            return Err(Error::Parse {
                line,
                key: "mode_label".into(),
                message: format!("duplicate row `{}`", fields[0]),
            });
        }
        rows.push(TableRow {
            mode_label: fields[0].to_string(),
            p_m_e3: values[0],
            p_e_e3: values[1],
            q0: values[2],
            g_c_mhz: values[3],
            volume_cm3: values[4],
            c_factor: values[5],
        });
    }
    if !header_seen {
        return Err(Error::Parse {
            line: 1,
            key: "header".into(),
            message: "empty dataset".into(),
        });
    }
    Ok(rows)
}

pub fn builtin_table() -> Vec<TableRow> {
    parse_table(include_str!("../data/table1.csv")).expect("bundled table parses")
}

/// `k_g = g_ref / sqrt(p_m_ref)` (MHz), `k_c = C_ref / (g_ref^2 Q0_ref)` (MHz^-2).
pub fn calibrate_table_constants(rows: &[TableRow], reference: &str) -> Result<Calibration> {
    let row = find(rows, reference)?;
    if !(row.p_m_e3 > 0.0) || !(row.q0 > 0.0) || !(row.g_c_mhz > 0.0) {
        return Err(Error::domain(format!("reference row `{reference}` needs p_m, Q0 and g_c > 0")));
    }
    Ok(Calibration {
        k_g: row.g_c_mhz / row.p_m().sqrt(),
        k_c: row.c_factor / (row.g_c_mhz * row.g_c_mhz * row.q0),
    })
}

/// Calibration on the bundled table's default reference row.
pub fn default_calibration() -> Calibration {
    calibrate_table_constants(&builtin_table(), DEFAULT_REFERENCE).expect("bundled reference row")
}

fn find<'a>(rows: &'a [TableRow], label: &str) -> Result<&'a TableRow> {
    rows.iter().find(|r| r.mode_label == label).ok_or_else(|| {
        let known: Vec<&str> = rows.iter().map(|r| r.mode_label.as_str()).collect();
        Error::domain(format!("no row `{label}` (rows: {})", known.join(", ")))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute, MHz.
    pub g_mhz: f64,
    /// Relative.
    pub c_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            g_mhz: 1.0,
            c_rel: 0.025,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowComparison {
    pub mode_label: String,
    pub is_reference: bool,
    pub g_pred_mhz: f64,
    pub g_table_mhz: f64,
    pub g_abs_err: f64,
    pub c_pred: f64,
    pub c_table: f64,
    pub c_rel_err: f64,
    /// Spin half-width implied by the row's own g_c, Q0 and C, as `gamma/2pi` in Hz.
    pub gamma_eff_hz: f64,
    pub g_pass: bool,
    pub c_pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub reference: String,
    pub calibration: Calibration,
    pub tolerances: Tolerances,
    pub rows: Vec<RowComparison>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.g_pass && r.c_pass)
    }

    pub fn others(&self) -> impl Iterator<Item = &RowComparison> {
        self.rows.iter().filter(|r| !r.is_reference)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "pathway: calibrated (table scaling laws)");
        let _ = writeln!(s, "reference row: {}", self.reference);
        let _ = writeln!(s, "k_g = {:.4} MHz", self.calibration.k_g);
        let _ = writeln!(s, "k_c = {:.6e} MHz^-2", self.calibration.k_c);
        let _ = writeln!(
            s,
            "tolerances: |dg| <= {} MHz, |dC|/C <= {}",
            self.tolerances.g_mhz, self.tolerances.c_rel
        );
        let _ = writeln!(
            s,
            "{:<24} {:>8} {:>8} {:>7} {:>10} {:>10} {:>8} {:>12}  result",
            "mode", "g_pred", "g_table", "dg", "C_pred", "C_table", "dC/C", "gamma_eff/2pi"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<24} {:>8.2} {:>8.2} {:>7.3} {:>10.3} {:>10.3} {:>8.4} {:>9.3} MHz  {}{}",
                r.mode_label,
                r.g_pred_mhz,
                r.g_table_mhz,
                r.g_abs_err,
                r.c_pred,
                r.c_table,
                r.c_rel_err,
                r.gamma_eff_hz / 1e6,
                if r.g_pass && r.c_pass { "pass" } else { "FAIL" },
                if r.is_reference { " (reference)" } else { "" }
            );
        }
        let _ = writeln!(s, "overall: {}", if self.passed() { "pass" } else { "FAIL" });
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "mode_label,is_reference,g_pred_mhz,g_table_mhz,g_abs_err_mhz,c_pred,c_table,c_rel_err,gamma_eff_hz,g_pass,c_pass\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.mode_label,
                r.is_reference,
                r.g_pred_mhz,
                r.g_table_mhz,
                r.g_abs_err,
                r.c_pred,
                r.c_table,
                r.c_rel_err,
                r.gamma_eff_hz,
                r.g_pass,
                r.c_pass
            );
        }
        s
    }
}

/// Calibrates on `reference` and predicts `g_c` and `C` for every row.
/// `C` is predicted from the row's tabulated `g_c` and `Q0`, so the two
/// checks are independent of each other.
pub fn cmd_table1(rows: &[TableRow], reference: &str, tolerances: Tolerances) -> Result<ComparisonReport> {
    let cal = calibrate_table_constants(rows, reference)?;
    let rows = rows
        .iter()
        .map(|row| {
            let is_reference = row.mode_label == reference;
            // the reference row reproduces its own values by construction
            let (g_pred, c_pred) = if is_reference {
                (row.g_c_mhz, row.c_factor)
            } else {
                let g = cal.k_g * row.p_m().sqrt();
                (g, cal.k_c * row.g_c_mhz * row.g_c_mhz * row.q0)
            };
            let g_abs_err = (g_pred - row.g_c_mhz).abs();
            let c_rel_err = (c_pred - row.c_factor).abs() / row.c_factor;
            let g = 2.0 * PI * row.g_c_mhz * 1e6;
            let kappa = 2.0 * PI * TABLE_FREQUENCY_HZ / row.q0;
            let gamma = g * g / (2.0 * kappa * row.c_factor);
            RowComparison {
                mode_label: row.mode_label.clone(),
                is_reference,
                g_pred_mhz: g_pred,
                g_table_mhz: row.g_c_mhz,
                g_abs_err,
                c_pred,
                c_table: row.c_factor,
                c_rel_err,
                gamma_eff_hz: gamma / (2.0 * PI),
                g_pass: g_abs_err <= tolerances.g_mhz,
                c_pass: c_rel_err <= tolerances.c_rel,
            }
        })
        .collect();
    Ok(ComparisonReport {
        reference: reference.to_string(),
        calibration: cal,
        tolerances,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_rows() {
        let rows = builtin_table();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0].mode_label, DEFAULT_REFERENCE);
        assert_eq!(rows[0].p_m(), 0.084);
        assert_eq!(rows[7].c_factor, 7.4);
    }

    #[test]
    fn calibration_constants() {
        let cal = default_calibration();
        assert!((cal.k_g - 43.0 / 0.084f64.sqrt()).abs() < 1e-12);
        assert!((cal.k_g - 148.364).abs() < 1e-3);
        assert!((cal.k_c - 1.48197e-6).abs() < 1e-10);
    }

    #[test]
    fn spot_predictions() {
        let r = cmd_table1(&builtin_table(), DEFAULT_REFERENCE, Tolerances::default()).unwrap();
        let get = |l: &str| r.rows.iter().find(|x| x.mode_label == l).unwrap().clone();
        assert!((get("double-split-TE*").c_pred - 2056.0).abs() < 1.0);
        assert!((get("reentrant-TM").c_pred - 3.27).abs() < 0.01);
        assert!((get("coplanar").c_pred - 7.34).abs() < 0.01);
        assert!((get("hybrid-Nb").g_pred_mhz - 101.6).abs() < 0.05);
    }

    #[test]
    fn reference_row_is_exact() {
        for row in builtin_table() {
            let r = cmd_table1(&builtin_table(), &row.mode_label, Tolerances::default()).unwrap();
            let me = r.rows.iter().find(|x| x.is_reference).unwrap();
            assert_eq!(me.g_abs_err, 0.0);
            assert_eq!(me.c_rel_err, 0.0);
        }
    }

    #[test]
    fn zero_tolerance_passes_only_reference() {
        let r = cmd_table1(&builtin_table(), DEFAULT_REFERENCE, Tolerances { g_mhz: 0.0, c_rel: 0.0 }).unwrap();
        let passing: Vec<_> = r.rows.iter().filter(|x| x.g_pass && x.c_pass).collect();
        assert_eq!(passing.len(), 1);
        assert!(passing[0].is_reference);
        assert!(!r.passed());
    }

    #[test]
    fn single_row_dataset_is_vacuous() {
        let rows = vec![builtin_table().remove(0)];
        let r = cmd_table1(&rows, DEFAULT_REFERENCE, Tolerances::default()).unwrap();
        assert_eq!(r.others().count(), 0);
        assert!(r.passed());
    }

    #[test]
    fn malformed_datasets() {
        assert!(parse_table("").is_err());
        assert!(parse_table("a,b\n").is_err());
        let bad = format!("{HEADER}\nx,1,2,3,4,5\n");
        assert!(matches!(parse_table(&bad), Err(Error::Parse { line: 2, .. })));
        let neg = format!("{HEADER}\nx,1,2,-3,4,5,6\n");
        assert!(parse_table(&neg).is_err());
        assert!(calibrate_table_constants(&builtin_table(), "nope").is_err());
    }
}
