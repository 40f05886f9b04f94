//! Derivation reports and machine-readable data exports.
//!
//! Reports are exact end-to-end: every fraction-valued field is text like
//! `-1/3`, never a float. The JSON rendering is byte-stable for a given
//! input (struct field order, no maps), and each report carries the
//! engine version plus a SHA-256 of the problem file it was derived from
//! so published derivations can be reproduced.

use crate::problem::LoadedProblem;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use simcrit::{
    format_pi_group, reference_print_times, AccuracyClass, PiGroup, Rational,
    RATE_MAX_CM3_PER_H, RATE_MIN_CM3_PER_H,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationReport {
    pub engine_version: String,
    /// SHA-256 (hex) of the problem file bytes the report was derived from.
    pub problem_sha256: String,
    pub system: Vec<String>,
    pub quantities: Vec<QuantityReport>,
    pub basis: Vec<String>,
    /// Exact fraction text; absent for rank-deficient (non-square) bases,
    /// which have no determinant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_determinant: Option<String>,
    pub groups: Vec<GroupReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantityReport {
    pub symbol: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    /// Resolved dimension row as fraction text.
    pub dims: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub si_scale: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupReport {
    pub target: String,
    /// `k` of `π = target / ∏ basisᵢ^{kᵢ}`, in basis order, fraction text.
    pub exponents: Vec<BasisExponent>,
    pub formula: String,
    /// Always true for emitted groups: the engine verifies every monomial
    /// before it leaves the derivation.
    pub dimensionless: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisExponent {
    pub basis: String,
    pub k: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn build_derivation_report(
    problem: &LoadedProblem,
    groups: &[PiGroup],
    determinant: Option<&Rational>,
) -> DerivationReport {
    let matrix = &problem.matrix;
    let quantities = matrix
        .quantities()
        .iter()
        .map(|q| QuantityReport {
            symbol: q.symbol.clone(),
            name: (!q.name.is_empty()).then(|| q.name.clone()),
            unit: q.unit_text.clone(),
            dims: q.dims.exponents().iter().map(|e| e.to_string()).collect(),
            si_scale: q.si_scale.as_ref().map(|s| s.to_string()),
        })
        .collect();
    let basis = problem
        .basis
        .indices()
        .iter()
        .map(|&i| matrix.quantity(i).symbol.clone())
        .collect();
    let group_reports = groups
        .iter()
        .map(|g| GroupReport {
            target: matrix.quantity(g.target_index()).symbol.clone(),
            exponents: g
                .basis_indices()
                .iter()
                .zip(g.basis_exponents())
                .map(|(&i, k)| BasisExponent {
                    basis: matrix.quantity(i).symbol.clone(),
                    k: k.to_string(),
                })
                .collect(),
            formula: format_pi_group(g, matrix),
            dimensionless: matrix
                .net_dimensions(g.monomial())
                .map(|net| net.is_dimensionless())
                .unwrap_or(false),
        })
        .collect();
    DerivationReport {
        engine_version: ENGINE_VERSION.to_string(),
        problem_sha256: sha256_hex(&problem.raw),
        system: matrix.system().base_symbols().to_vec(),
        quantities,
        basis,
        basis_determinant: determinant.map(|d| d.to_string()),
        groups: group_reports,
    }
}

/// Pretty JSON with a trailing newline; the byte-stable wire format for
/// every `--json`/`--emit` output.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

pub fn render_human(report: &DerivationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("system: {}\n", report.system.join(", ")));
    out.push_str(&format!("quantities ({}):\n", report.quantities.len()));
    for q in &report.quantities {
        let mut line = format!("  {}", q.symbol);
        if let Some(name) = &q.name {
            line.push_str(&format!(" ({name})"));
        }
        if let Some(unit) = &q.unit {
            line.push_str(&format!(" [{unit}]"));
        }
        line.push_str(&format!("  dims = [{}]", q.dims.join(", ")));
        if let Some(scale) = &q.si_scale {
            if scale != "1" {
                line.push_str(&format!("  scale = {scale}"));
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("basis: {}\n", report.basis.join(", ")));
    match &report.basis_determinant {
        Some(det) => out.push_str(&format!("basis determinant: {det}\n")),
        None => out.push_str("basis determinant: n/a (rank-deficient basis)\n"),
    }
    out.push_str(&format!("criteria ({}):\n", report.groups.len()));
    for (i, group) in report.groups.iter().enumerate() {
        out.push_str(&format!("  π{} = {}\n", i + 1, group.formula));
        let exponents: Vec<String> = group
            .exponents
            .iter()
            .map(|e| format!("{}: {}", e.basis, e.k))
            .collect();
        out.push_str(&format!(
            "       exponents over basis: {}\n",
            exponents.join(", ")
        ));
    }
    out
}

/// Machine-readable export of the reference print-time table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrintTimeExport {
    pub deposition_rate_cm3_per_h: RateRange,
    pub classes: Vec<ClassExport>,
    pub rows: Vec<RowExport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateRange {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassExport {
    pub class: String,
    pub tolerance_mm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowExport {
    pub part: String,
    pub volume_cm3: f64,
    pub hours_a: f64,
    pub hours_b: f64,
    pub hours_c: f64,
}

pub fn print_time_export() -> PrintTimeExport {
    let table = reference_print_times();
    PrintTimeExport {
        deposition_rate_cm3_per_h: RateRange {
            min: RATE_MIN_CM3_PER_H,
            max: RATE_MAX_CM3_PER_H,
        },
        classes: AccuracyClass::ALL
            .iter()
            .map(|c| ClassExport {
                class: c.label().to_string(),
                tolerance_mm: c.tolerance_mm(),
            })
            .collect(),
        rows: table
            .rows()
            .iter()
            .map(|r| RowExport {
                part: r.part_name.clone(),
                volume_cm3: r.volume_cm3,
                hours_a: r.hours_a,
                hours_b: r.hours_b,
                hours_c: r.hours_c,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::problem_from_slice;
    use simcrit::{check_basis, default_registry, derive_pi_groups};

    #[test]
    fn report_round_trips_through_json() {
        let registry = default_registry();
        let problem = problem_from_slice(
            br#"{
  "system": { "dimensions": ["L", "T"] },
  "quantities": [
    { "symbol": "x", "name": "length", "dims": ["1", "0"] },
    { "symbol": "t", "dims": ["0", "1"] },
    { "symbol": "v", "dims": ["1", "-1"] }
  ],
  "basis": ["x", "t"]
}"#,
            &registry,
            false,
        )
        .unwrap();
        let check = check_basis(&problem.matrix, &problem.basis).unwrap();
        let groups = derive_pi_groups(&problem.matrix, &problem.basis).unwrap();
        let report = build_derivation_report(&problem, &groups, Some(&check.determinant));
        let json = to_canonical_json(&report);
        let parsed: DerivationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
        assert_eq!(parsed.basis_determinant.as_deref(), Some("1"));
        assert_eq!(parsed.groups.len(), 1);
        assert_eq!(parsed.groups[0].formula, "v·t/x");
        assert!(parsed.groups[0].dimensionless);
        // fraction fields are text, never floats
        assert_eq!(parsed.groups[0].exponents[0].k, "1");
    }

    #[test]
    fn checksum_is_stable_hex() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn table_export_carries_all_rows_and_classes() {
        let export = print_time_export();
        assert_eq!(export.rows.len(), 4);
        assert_eq!(export.classes.len(), 3);
        assert_eq!(export.deposition_rate_cm3_per_h.min, 10.0);
        assert_eq!(export.deposition_rate_cm3_per_h.max, 100.0);
    }
}
