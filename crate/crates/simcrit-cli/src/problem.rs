//! Problem- and case-file ingestion.
//!
//! Problem files are JSON, UTF-8, fail-closed: unknown fields are
//! rejected so typos surface immediately. Every quantity needs `unit` or
//! `dims`; when both are present they must agree (the unit text is parsed
//! and compared against the declared row) unless `--no-audit` is given,
//! in which case the declared row wins and the unit contributes only its
//! scale factor.
//!
//! Case files are flat JSON objects mapping quantity symbols to positive
//! numbers, expressed in the units the problem declares; values are
//! converted to coherent SI magnitudes via the parsed unit scale before
//! any evaluation.

use crate::error::CliError;
use serde::{Deserialize, Serialize};
use simcrit::rational::{parse_rational, to_f64};
use simcrit::{
    parse_unit, BasisSelection, CaseAssignment, DimensionSystem, DimensionVector,
    DimensionalMatrix, Quantity, UnitRegistry,
};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub system: SystemSpec,
    pub quantities: Vec<QuantitySpec>,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub dimensions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantitySpec {
    pub symbol: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    /// Exponents as fraction text, e.g. `["-1/3", "0", "1", "0"]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<String>>,
}

/// A parsed problem: the raw bytes (for checksums), the echoed file, and
/// the resolved engine inputs.
#[derive(Debug)]
pub struct LoadedProblem {
    pub raw: Vec<u8>,
    pub file: ProblemFile,
    pub matrix: DimensionalMatrix,
    pub basis: BasisSelection,
}

pub fn load_problem(
    path: &Path,
    registry: &UnitRegistry,
    no_audit: bool,
) -> Result<LoadedProblem, CliError> {
    let raw = std::fs::read(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    problem_from_slice(&raw, registry, no_audit)
}

pub fn problem_from_slice(
    raw: &[u8],
    registry: &UnitRegistry,
    no_audit: bool,
) -> Result<LoadedProblem, CliError> {
    let file: ProblemFile = serde_json::from_slice(raw)
        .map_err(|e| CliError::schema(format!("problem file: {e}")))?;
    let system = DimensionSystem::new(file.system.dimensions.clone())
        .map_err(|e| CliError::schema(format!("problem file `system.dimensions`: {e}")))?;
    // Unit texts are only interpretable when the problem uses the same
    // dimension system as the registry; otherwise they stay annotations
    // and `dims` is required.
    let registry_usable = registry.system().as_ref() == system.as_ref();

    let mut quantities = Vec::with_capacity(file.quantities.len());
    for spec in &file.quantities {
        let declared = spec
            .dims
            .as_ref()
            .map(|texts| {
                if texts.len() != system.arity() {
                    return Err(CliError::schema(format!(
                        "quantity `{}`: expected {} exponents in `dims`, got {}",
                        spec.symbol,
                        system.arity(),
                        texts.len()
                    )));
                }
                let exponents = texts
                    .iter()
                    .map(|t| {
                        parse_rational(t).map_err(|e| {
                            CliError::schema(format!("quantity `{}` dims: {e}", spec.symbol))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                DimensionVector::new(&system, exponents)
                    .map_err(|e| CliError::schema(format!("quantity `{}`: {e}", spec.symbol)))
            })
            .transpose()?;

        let name = spec.name.clone().unwrap_or_default();
        let quantity = match (&declared, &spec.unit) {
            (None, None) => {
                return Err(CliError::schema(format!(
                    "quantity `{}`: provide `unit` or `dims`",
                    spec.symbol
                )))
            }
            (Some(dims), None) => Quantity::new(&spec.symbol, name, dims.clone()),
            (None, Some(unit)) => {
                if !registry_usable {
                    return Err(CliError::schema(format!(
                        "quantity `{}`: unit `{unit}` cannot be interpreted for the \
                         custom dimension system {}; declare `dims`",
                        spec.symbol,
                        system.as_ref()
                    )));
                }
                let parsed = parse_unit(unit, registry).map_err(|e| {
                    CliError::schema(format!("quantity `{}`: unit `{unit}`: {e}", spec.symbol))
                })?;
                Quantity::new(&spec.symbol, name, parsed.dims).with_unit(unit, parsed.si_scale)
            }
            (Some(dims), Some(unit)) => {
                if !registry_usable {
                    let mut q = Quantity::new(&spec.symbol, name, dims.clone());
                    q.unit_text = Some(unit.clone());
                    q
                } else {
                    match parse_unit(unit, registry) {
                        Ok(parsed) if parsed.dims == *dims => {
                            Quantity::new(&spec.symbol, name, dims.clone())
                                .with_unit(unit, parsed.si_scale)
                        }
                        Ok(parsed) if no_audit => {
                            // declared row wins; the unit still supplies the scale
                            Quantity::new(&spec.symbol, name, dims.clone())
                                .with_unit(unit, parsed.si_scale)
                        }
                        Ok(parsed) => {
                            return Err(CliError::schema(format!(
                                "quantity `{}`: declared dims {} conflict with unit \
                                 `{unit}` which parses to {} (use --no-audit to keep \
                                 the declared dims)",
                                spec.symbol, dims, parsed.dims
                            )))
                        }
                        Err(_) if no_audit => {
                            // keep the unit as an annotation; no scale is known
                            let mut q = Quantity::new(&spec.symbol, name, dims.clone());
                            q.unit_text = Some(unit.clone());
                            q
                        }
                        Err(e) => {
                            return Err(CliError::schema(format!(
                                "quantity `{}`: unit `{unit}`: {e} (use --no-audit to \
                                 keep the declared dims)",
                                spec.symbol
                            )))
                        }
                    }
                }
            }
        };
        quantities.push(quantity);
    }

    let matrix = DimensionalMatrix::new(system, quantities).map_err(CliError::from)?;
    let basis_symbols: Vec<&str> = file.basis.iter().map(String::as_str).collect();
    let basis = BasisSelection::from_symbols(&basis_symbols, &matrix).map_err(CliError::from)?;
    Ok(LoadedProblem {
        raw: raw.to_vec(),
        file,
        matrix,
        basis,
    })
}

/// The built-in laser-melting problem as a problem file.
///
/// Dimension rows are emitted for all seven quantities; unit texts are
/// included only where they agree with the declared row, so the emitted
/// file derives cleanly without `--no-audit`. The two unit strings whose
/// rows disagree with what they parse to (`E`, `z`) stay visible through
/// `slm audit`.
pub fn preset_problem_file(registry: &UnitRegistry) -> ProblemFile {
    let (matrix, basis) = simcrit::slm_preset();
    let audit = simcrit::audit_preset(&matrix, registry);
    let quantities = matrix
        .quantities()
        .iter()
        .map(|q| {
            let unit_agrees = audit
                .iter()
                .find(|r| r.symbol == q.symbol)
                .is_some_and(|r| r.matches);
            QuantitySpec {
                symbol: q.symbol.clone(),
                name: (!q.name.is_empty()).then(|| q.name.clone()),
                unit: if unit_agrees { q.unit_text.clone() } else { None },
                dims: Some(q.dims.exponents().iter().map(|e| e.to_string()).collect()),
            }
        })
        .collect();
    ProblemFile {
        system: SystemSpec {
            dimensions: matrix.system().base_symbols().to_vec(),
        },
        quantities,
        basis: basis
            .indices()
            .iter()
            .map(|&i| matrix.quantity(i).symbol.clone())
            .collect(),
    }
}

/// Loads a case file and converts its values to SI magnitudes using each
/// quantity's declared unit scale. The case label is the file stem.
pub fn load_case(path: &Path, matrix: &DimensionalMatrix) -> Result<CaseAssignment, CliError> {
    let raw = std::fs::read(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    case_from_slice(&raw, &label, matrix)
}

pub fn case_from_slice(
    raw: &[u8],
    label: &str,
    matrix: &DimensionalMatrix,
) -> Result<CaseAssignment, CliError> {
    let values: BTreeMap<String, f64> = serde_json::from_slice(raw)
        .map_err(|e| CliError::schema(format!("case `{label}`: {e}")))?;
    let mut case = CaseAssignment::new(label);
    for (symbol, value) in values {
        let index = matrix.index_of(&symbol).ok_or_else(|| {
            CliError::schema(format!(
                "case `{label}`: `{symbol}` is not a quantity of this problem"
            ))
        })?;
        let scale = to_f64(&matrix.quantity(index).si_scale_or_one());
        case.set(&symbol, value * scale)
            .map_err(|e| CliError::schema(format!("case `{label}`: {e}")))?;
    }
    Ok(case)
}
