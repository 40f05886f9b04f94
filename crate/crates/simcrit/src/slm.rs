//! The built-in selective-laser-melting problem, reference print-time
//! data, and the material-comparison arithmetic.
//!
//! The preset stores its dimension rows verbatim from the source
//! derivation, including two rows that disagree with what their own unit
//! strings parse to (laser power declared without the mass dimension,
//! specific heat declared with an extra reciprocal mass). That is
//! deliberate: the preset reproduces the published derivation exactly,
//! and [`audit_preset`] is the tool that surfaces the discrepancies
//! against the physically correct unit registry. See the README for the
//! full reconciliation.

use crate::dims::{DimensionSystem, DimensionVector, Quantity};
use crate::pi::{BasisSelection, DimensionalMatrix};
use crate::rational::{int, ratio};
use crate::similarity::is_positive;
use crate::units::{audit_quantities, AuditRecord, UnitRegistry};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SlmError {
    #[error("volume must be non-negative, got {0}")]
    NegativeVolume(f64),
    #[error("volume must be positive, got {0}")]
    NonPositiveVolume(f64),
    #[error("deposition rate must be positive, got {0}")]
    NonPositiveRate(f64),
    #[error("build time must be positive, got {0}")]
    NonPositiveHours(f64),
    #[error("{metric} for `{label}` must be positive, got {value}")]
    NonPositiveMetric {
        metric: String,
        label: String,
        value: f64,
    },
    #[error("significant figures must be at least 1")]
    ZeroSigFigs,
    #[error("invalid print-time table: {0}")]
    InvalidTable(String),
}

/// Deposition-rate envelope of the printer, cm³/h.
pub const RATE_MIN_CM3_PER_H: f64 = 10.0;
pub const RATE_MAX_CM3_PER_H: f64 = 100.0;

/// The seven SLM process quantities with their published dimension rows,
/// and the four-quantity basis `{t_c, V, T, z}`.
///
/// Rows, in order: sintering time `(0,0,1,0)`, melt volume `(3,0,0,0)`,
/// temperature `(0,0,0,1)`, specific heat `(2,-1,-2,-1)`, powder density
/// `(-3,1,0,0)`, laser power `(2,0,-3,0)`, melt mass `(0,1,0,0)`.
pub fn slm_preset() -> (DimensionalMatrix, BasisSelection) {
    let system = DimensionSystem::lmt_theta();
    let quantity = |symbol: &str, name: &str, row: [i64; 4], unit: &str, scale| {
        Quantity::new(
            symbol,
            name,
            DimensionVector::from_i64(&system, &row).expect("rows match the system"),
        )
        .with_unit(unit, scale)
    };
    let quantities = vec![
        quantity("t_c", "sintering time", [0, 0, 1, 0], "с", int(1)),
        quantity(
            "V",
            "melt volume",
            [3, 0, 0, 0],
            "мкм^3",
            ratio(1, 1_000_000_000_000_000_000),
        ),
        quantity("T", "process temperature", [0, 0, 0, 1], "К", int(1)),
        quantity("z", "specific heat", [2, -1, -2, -1], "кДж/(кг·°C)", int(1000)),
        quantity("ρ", "powder density", [-3, 1, 0, 0], "кг/м^3", int(1)),
        quantity("E", "laser power", [2, 0, -3, 0], "Вт", int(1)),
        quantity("M", "melt mass", [0, 1, 0, 0], "кг", int(1)),
    ];
    let matrix =
        DimensionalMatrix::new(system, quantities).expect("preset quantities are well formed");
    let basis = BasisSelection::from_symbols(&["t_c", "V", "T", "z"], &matrix)
        .expect("preset basis symbols exist");
    (matrix, basis)
}

/// Reconciles each preset quantity's unit string against its declared
/// dimension row using the given registry. With [`slm_preset`] and the
/// default registry this reports mismatches for exactly `E` and `z`.
pub fn audit_preset(matrix: &DimensionalMatrix, registry: &UnitRegistry) -> Vec<AuditRecord> {
    audit_quantities(matrix.quantities(), registry)
}

/// Accuracy classes of the reference print-time table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccuracyClass {
    A,
    B,
    C,
}

impl AccuracyClass {
    pub const ALL: [AccuracyClass; 3] = [AccuracyClass::A, AccuracyClass::B, AccuracyClass::C];

    /// Surface tolerance the class guarantees, in millimetres.
    pub fn tolerance_mm(self) -> f64 {
        match self {
            AccuracyClass::A => 0.02,
            AccuracyClass::B => 0.05,
            AccuracyClass::C => 0.1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AccuracyClass::A => "A",
            AccuracyClass::B => "B",
            AccuracyClass::C => "C",
        }
    }
}

/// One part of the reference table: volume and build hours per class.
#[derive(Debug, Clone, PartialEq)]
pub struct PrintTimeRow {
    pub part_name: String,
    pub volume_cm3: f64,
    pub hours_a: f64,
    pub hours_b: f64,
    pub hours_c: f64,
}

impl PrintTimeRow {
    pub fn hours(&self, class: AccuracyClass) -> f64 {
        match class {
            AccuracyClass::A => self.hours_a,
            AccuracyClass::B => self.hours_b,
            AccuracyClass::C => self.hours_c,
        }
    }
}

/// Reference build times by part and accuracy class.
///
/// This is shipped as data, not a fitted model: the implied class-A rates
/// span 5.47–10.125 cm³/h, so no single per-class rate reproduces the
/// table and [`estimate_print_time`] takes the rate explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct PrintTimeTable {
    rows: Vec<PrintTimeRow>,
}

impl PrintTimeTable {
    /// Validates positivity and the slower-when-finer ordering
    /// (`hours_a ≥ hours_b ≥ hours_c`).
    pub fn new(rows: Vec<PrintTimeRow>) -> Result<Self, SlmError> {
        for row in &rows {
            if !is_positive(row.volume_cm3) {
                return Err(SlmError::InvalidTable(format!(
                    "`{}`: volume must be positive",
                    row.part_name
                )));
            }
            if ![row.hours_a, row.hours_b, row.hours_c]
                .iter()
                .all(|&h| is_positive(h))
            {
                return Err(SlmError::InvalidTable(format!(
                    "`{}`: hours must be positive",
                    row.part_name
                )));
            }
            if row.hours_a < row.hours_b || row.hours_b < row.hours_c {
                return Err(SlmError::InvalidTable(format!(
                    "`{}`: finer classes cannot be faster",
                    row.part_name
                )));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[PrintTimeRow] {
        &self.rows
    }
}

/// The embedded reference table (volumes in cm³, times in hours).
pub fn reference_print_times() -> PrintTimeTable {
    let row = |part_name: &str, volume_cm3, hours_a, hours_b, hours_c| PrintTimeRow {
        part_name: part_name.to_string(),
        volume_cm3,
        hours_a,
        hours_b,
        hours_c,
    };
    PrintTimeTable::new(vec![
        row("Подшипник скольжения", 2.9, 0.4, 0.3, 0.2),
        row("Центробежное колесо", 81.0, 8.0, 4.3, 3.2),
        row("Ротор турбоагрегата", 195.0, 21.0, 13.1, 9.6),
        row("Втулка резьбовая", 8.2, 1.5, 0.9, 0.6),
    ])
    .expect("reference data satisfies the table invariants")
}

/// Build-time estimate, with a warning when the requested rate falls
/// outside the printer's stated envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct PrintTimeEstimate {
    pub hours: f64,
    pub rate_warning: Option<String>,
}

/// `hours = volume / rate`. Rates outside
/// [`RATE_MIN_CM3_PER_H`, `RATE_MAX_CM3_PER_H`] warn but do not fail.
pub fn estimate_print_time(
    volume_cm3: f64,
    rate_cm3_per_h: f64,
) -> Result<PrintTimeEstimate, SlmError> {
    if !is_positive(rate_cm3_per_h) {
        return Err(SlmError::NonPositiveRate(rate_cm3_per_h));
    }
    if !(volume_cm3.is_finite() && volume_cm3 >= 0.0) {
        return Err(SlmError::NegativeVolume(volume_cm3));
    }
    let rate_warning = if !(RATE_MIN_CM3_PER_H..=RATE_MAX_CM3_PER_H).contains(&rate_cm3_per_h) {
        Some(format!(
            "rate {rate_cm3_per_h} cm³/h is outside the supported range \
             [{RATE_MIN_CM3_PER_H}, {RATE_MAX_CM3_PER_H}] cm³/h"
        ))
    } else {
        None
    };
    Ok(PrintTimeEstimate {
        hours: volume_cm3 / rate_cm3_per_h,
        rate_warning,
    })
}

/// The deposition rate a (volume, hours) pair implies.
pub fn implied_rate(volume_cm3: f64, hours: f64) -> Result<f64, SlmError> {
    if !is_positive(volume_cm3) {
        return Err(SlmError::NonPositiveVolume(volume_cm3));
    }
    if !is_positive(hours) {
        return Err(SlmError::NonPositiveHours(hours));
    }
    Ok(volume_cm3 / hours)
}

/// A winner-over-loser metric ratio, with a display rendering rounded to
/// significant figures while the raw ratio is retained.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonResult {
    pub metric_name: String,
    pub better: String,
    /// Raw ratio, always ≥ 1 (winner over loser).
    pub ratio: f64,
    /// Ratio rounded to the requested significant figures.
    pub display_ratio: String,
}

/// Compares a metric across two cases. `higher_is_better` selects the
/// orientation; the ratio is always the better value over the worse one.
pub fn compare_materials(
    value_a: f64,
    value_b: f64,
    label_a: &str,
    label_b: &str,
    metric_name: &str,
    higher_is_better: bool,
    sig_figs: u32,
) -> Result<ComparisonResult, SlmError> {
    if sig_figs == 0 {
        return Err(SlmError::ZeroSigFigs);
    }
    for (label, value) in [(label_a, value_a), (label_b, value_b)] {
        if !is_positive(value) {
            return Err(SlmError::NonPositiveMetric {
                metric: metric_name.to_string(),
                label: label.to_string(),
                value,
            });
        }
    }
    let a_wins = if higher_is_better {
        value_a >= value_b
    } else {
        value_a <= value_b
    };
    let better = if a_wins { label_a } else { label_b };
    let ratio = value_a.max(value_b) / value_a.min(value_b);
    Ok(ComparisonResult {
        metric_name: metric_name.to_string(),
        better: better.to_string(),
        ratio,
        display_ratio: format_sig_figs(ratio, sig_figs),
    })
}

/// Rounds to `sig` significant figures and renders without trailing
/// zeros beyond them, e.g. `(4.2268, 2) → "4.2"` and `(1.6674, 3) → "1.67"`.
pub fn format_sig_figs(value: f64, sig: u32) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let rounded = round_sig_figs(value, sig);
    // recompute after rounding: 9.96 at 2 figures crosses into the tens
    let magnitude = rounded.abs().log10().floor() as i32;
    let decimals = sig as i32 - 1 - magnitude;
    if decimals <= 0 {
        format!("{rounded:.0}")
    } else {
        format!("{rounded:.*}", decimals as usize)
    }
}

fn round_sig_figs(value: f64, sig: u32) -> f64 {
    let magnitude = value.abs().log10().floor() as i32;
    let step = 10f64.powi(magnitude - (sig as i32 - 1));
    (value / step).round() * step
}
