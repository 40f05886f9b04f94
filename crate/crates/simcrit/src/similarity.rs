//! Numeric application of derived π-groups: evaluate criteria for
//! concrete cases, compare model against prototype, and solve for a
//! single unknown parameter.
//!
//! Exactness lives in the derivation; evaluation is floating point over
//! strictly positive values (fractional exponents need positivity), with
//! the rational exponents converted at the last moment.

use crate::pi::{format_pi_group, DimensionalMatrix, PiGroup};
use crate::rational::to_f64;
use num::traits::Zero;
use std::collections::BTreeMap;

/// Default relative tolerance for similarity: well above double-precision
/// noise for the supported exponent range, far below engineering signal.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Finite and strictly positive; rejects NaN and infinities.
pub(crate) fn is_positive(value: f64) -> bool {
    value.is_finite() && value > 0.0
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimilarityError {
    #[error("case `{label}` has no value for `{symbol}`")]
    MissingParameter { label: String, symbol: String },
    #[error("value for `{symbol}` must be strictly positive, got {value}")]
    NonPositiveValue { symbol: String, value: f64 },
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("target π value must be strictly positive, got {0}")]
    NonPositiveTarget(f64),
    #[error("every quantity referenced by the group already has a value")]
    NoUnknown,
    #[error("more than one referenced quantity is unvalued: {0:?}")]
    MultipleUnknowns(Vec<String>),
    #[error("`{0}` has exponent zero in this group and cannot be solved for")]
    ZeroExponentUnknown(String),
}

/// Positive parameter values for one concrete case, keyed by quantity
/// symbol. Values are coherent SI magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseAssignment {
    label: String,
    values: BTreeMap<String, f64>,
}

impl CaseAssignment {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I, S>(label: impl Into<String>, pairs: I) -> Result<Self, SimilarityError>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut case = Self::new(label);
        for (symbol, value) in pairs {
            case.set(symbol, value)?;
        }
        Ok(case)
    }

    /// Inserts a value; rejects non-positive values outright so every
    /// stored assignment satisfies the positivity invariant.
    pub fn set(&mut self, symbol: impl Into<String>, value: f64) -> Result<(), SimilarityError> {
        let symbol = symbol.into();
        if !is_positive(value) {
            return Err(SimilarityError::NonPositiveValue { symbol, value });
        }
        self.values.insert(symbol, value);
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn get(&self, symbol: &str) -> Option<f64> {
        self.values.get(symbol).copied()
    }

    pub fn values(&self) -> &BTreeMap<String, f64> {
        &self.values
    }
}

/// Per-group comparison inside a [`SimilarityReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct GroupComparison {
    pub rendering: String,
    pub value_a: f64,
    pub value_b: f64,
    /// `|a − b| / max(|a|, |b|)`.
    pub relative_deviation: f64,
}

/// Outcome of comparing two cases across all groups.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport {
    pub groups: Vec<GroupComparison>,
    pub similar: bool,
    pub tolerance: f64,
    pub label_a: String,
    pub label_b: String,
}

/// Evaluates `∏ valueᵢ^{exponentᵢ}` over the group's monomial, in
/// quantity order.
pub fn eval_pi(
    group: &PiGroup,
    matrix: &DimensionalMatrix,
    case: &CaseAssignment,
) -> Result<f64, SimilarityError> {
    let mut product = 1.0;
    for (quantity, exponent) in matrix.quantities().iter().zip(group.monomial()) {
        if exponent.is_zero() {
            continue;
        }
        let value = case
            .get(&quantity.symbol)
            .ok_or_else(|| SimilarityError::MissingParameter {
                label: case.label().to_string(),
                symbol: quantity.symbol.clone(),
            })?;
        if !is_positive(value) {
            return Err(SimilarityError::NonPositiveValue {
                symbol: quantity.symbol.clone(),
                value,
            });
        }
        product *= value.powf(to_f64(exponent));
    }
    Ok(product)
}

/// Compares two cases group-by-group; `similar` iff every relative
/// deviation is within the tolerance.
pub fn check_similarity(
    groups: &[PiGroup],
    matrix: &DimensionalMatrix,
    case_a: &CaseAssignment,
    case_b: &CaseAssignment,
    tolerance: f64,
) -> Result<SimilarityReport, SimilarityError> {
    if !is_positive(tolerance) {
        return Err(SimilarityError::NonPositiveTolerance(tolerance));
    }
    let mut comparisons = Vec::with_capacity(groups.len());
    for group in groups {
        let value_a = eval_pi(group, matrix, case_a)?;
        let value_b = eval_pi(group, matrix, case_b)?;
        let scale = value_a.abs().max(value_b.abs());
        let relative_deviation = if scale == 0.0 {
            0.0
        } else {
            (value_a - value_b).abs() / scale
        };
        comparisons.push(GroupComparison {
            rendering: format_pi_group(group, matrix),
            value_a,
            value_b,
            relative_deviation,
        });
    }
    let similar = comparisons
        .iter()
        .all(|c| c.relative_deviation <= tolerance);
    Ok(SimilarityReport {
        groups: comparisons,
        similar,
        tolerance,
        label_a: case_a.label().to_string(),
        label_b: case_b.label().to_string(),
    })
}

/// Solves `π = target_pi` for the one referenced quantity the partial
/// case leaves unvalued: `x = (target_pi / ∏ othersᵢ^{kᵢ})^{1/k_x}`.
pub fn solve_unknown(
    group: &PiGroup,
    matrix: &DimensionalMatrix,
    partial: &CaseAssignment,
    target_pi: f64,
) -> Result<f64, SimilarityError> {
    if !is_positive(target_pi) {
        return Err(SimilarityError::NonPositiveTarget(target_pi));
    }
    let mut missing_referenced = Vec::new();
    let mut missing_unreferenced = Vec::new();
    for (quantity, exponent) in matrix.quantities().iter().zip(group.monomial()) {
        if partial.get(&quantity.symbol).is_some() {
            continue;
        }
        if exponent.is_zero() {
            missing_unreferenced.push(quantity.symbol.clone());
        } else {
            missing_referenced.push(quantity.symbol.clone());
        }
    }
    let unknown_symbol = match missing_referenced.len() {
        1 => missing_referenced.into_iter().next().expect("one unknown"),
        0 => {
            // The only absent quantities carry exponent zero, so the
            // group cannot pin them down.
            return match missing_unreferenced.into_iter().next() {
                Some(symbol) => Err(SimilarityError::ZeroExponentUnknown(symbol)),
                None => Err(SimilarityError::NoUnknown),
            };
        }
        _ => return Err(SimilarityError::MultipleUnknowns(missing_referenced)),
    };

    let mut known_product = 1.0;
    let mut unknown_exponent = 0.0;
    for (quantity, exponent) in matrix.quantities().iter().zip(group.monomial()) {
        if exponent.is_zero() {
            continue;
        }
        if quantity.symbol == unknown_symbol {
            unknown_exponent = to_f64(exponent);
            continue;
        }
        let value = partial.get(&quantity.symbol).expect("checked above");
        if !is_positive(value) {
            return Err(SimilarityError::NonPositiveValue {
                symbol: quantity.symbol.clone(),
                value,
            });
        }
        known_product *= value.powf(to_f64(exponent));
    }
    Ok((target_pi / known_product).powf(1.0 / unknown_exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::derive_pi_groups;
    use crate::slm::slm_preset;
    use proptest::prelude::*;

    fn preset_with_groups() -> (DimensionalMatrix, Vec<PiGroup>) {
        let (matrix, basis) = slm_preset();
        let groups = derive_pi_groups(&matrix, &basis).unwrap();
        (matrix, groups)
    }

    fn unit_case(matrix: &DimensionalMatrix) -> CaseAssignment {
        CaseAssignment::from_pairs(
            "ones",
            matrix.quantities().iter().map(|q| (q.symbol.clone(), 1.0)),
        )
        .unwrap()
    }

    #[test]
    fn all_ones_evaluate_to_one() {
        let (matrix, groups) = preset_with_groups();
        let case = unit_case(&matrix);
        for group in &groups {
            assert_eq!(eval_pi(group, &matrix, &case).unwrap(), 1.0);
        }
    }

    #[test]
    fn power_group_with_trivial_values() {
        let (matrix, groups) = preset_with_groups();
        let case = CaseAssignment::from_pairs(
            "trivial",
            [("E", 8.0), ("t_c", 1.0), ("V", 1.0)],
        )
        .unwrap();
        assert_eq!(eval_pi(&groups[1], &matrix, &case).unwrap(), 8.0);
    }

    #[test]
    fn density_group_hand_evaluation() {
        // ρ·t_c²·V^(1/3)·T·z with (2, 3, 8, 5, 7) = 2·9·2·5·7 = 1260
        let (matrix, groups) = preset_with_groups();
        let case = CaseAssignment::from_pairs(
            "hand",
            [("ρ", 2.0), ("t_c", 3.0), ("V", 8.0), ("T", 5.0), ("z", 7.0)],
        )
        .unwrap();
        let value = eval_pi(&groups[0], &matrix, &case).unwrap();
        assert!((value - 1260.0).abs() < 1e-9 * 1260.0);
    }

    #[test]
    fn missing_value_names_the_symbol() {
        let (matrix, groups) = preset_with_groups();
        let case = CaseAssignment::from_pairs("partial", [("E", 8.0), ("t_c", 1.0)]).unwrap();
        assert_eq!(
            eval_pi(&groups[1], &matrix, &case).unwrap_err(),
            SimilarityError::MissingParameter {
                label: "partial".into(),
                symbol: "V".into()
            }
        );
    }

    #[test]
    fn non_positive_values_are_rejected_at_insertion() {
        let mut case = CaseAssignment::new("bad");
        assert!(matches!(
            case.set("x", 0.0),
            Err(SimilarityError::NonPositiveValue { .. })
        ));
        assert!(matches!(
            case.set("x", -1.0),
            Err(SimilarityError::NonPositiveValue { .. })
        ));
    }

    #[test]
    fn identical_cases_are_similar_with_zero_deviation() {
        let (matrix, groups) = preset_with_groups();
        let case = unit_case(&matrix);
        let report = check_similarity(&groups, &matrix, &case, &case, DEFAULT_TOLERANCE).unwrap();
        assert!(report.similar);
        assert!(report.groups.iter().all(|g| g.relative_deviation == 0.0));
    }

    #[test]
    fn doubling_a_referenced_value_breaks_similarity() {
        let (matrix, groups) = preset_with_groups();
        let case_a = unit_case(&matrix);
        let mut case_b = case_a.clone();
        case_b.set("E", 2.0).unwrap();
        let report =
            check_similarity(&groups, &matrix, &case_a, &case_b, DEFAULT_TOLERANCE).unwrap();
        assert!(!report.similar);
    }

    #[test]
    fn tolerance_must_be_positive() {
        let (matrix, groups) = preset_with_groups();
        let case = unit_case(&matrix);
        assert!(matches!(
            check_similarity(&groups, &matrix, &case, &case, 0.0),
            Err(SimilarityError::NonPositiveTolerance(_))
        ));
    }

    #[test]
    fn solve_recovers_the_power_directly() {
        let (matrix, groups) = preset_with_groups();
        let partial =
            CaseAssignment::from_pairs("solve", [("t_c", 1.0), ("V", 1.0)]).unwrap();
        let e = solve_unknown(&groups[1], &matrix, &partial, 8.0).unwrap();
        assert_eq!(e, 8.0);
    }

    #[test]
    fn solve_inverts_fractional_exponents() {
        // π(E) with unknown V: V^(-2/3) = 4 → V = 4^(-3/2) = 0.125
        let (matrix, groups) = preset_with_groups();
        let partial =
            CaseAssignment::from_pairs("solve", [("E", 1.0), ("t_c", 1.0)]).unwrap();
        let v = solve_unknown(&groups[1], &matrix, &partial, 4.0).unwrap();
        assert!((v - 0.125).abs() < 1e-12);
    }

    #[test]
    fn solve_argument_errors() {
        let (matrix, groups) = preset_with_groups();
        let complete = unit_case(&matrix);
        assert_eq!(
            solve_unknown(&groups[1], &matrix, &complete, 2.0).unwrap_err(),
            SimilarityError::NoUnknown
        );
        let two_missing = CaseAssignment::from_pairs("two", [("t_c", 1.0)]).unwrap();
        assert!(matches!(
            solve_unknown(&groups[1], &matrix, &two_missing, 2.0).unwrap_err(),
            SimilarityError::MultipleUnknowns(_)
        ));
        // T has exponent zero in π(E): leaving only T unvalued is unsolvable
        let zero_exp = CaseAssignment::from_pairs(
            "zero",
            [("E", 1.0), ("t_c", 1.0), ("V", 1.0), ("z", 1.0), ("ρ", 1.0), ("M", 1.0)],
        )
        .unwrap();
        assert_eq!(
            solve_unknown(&groups[1], &matrix, &zero_exp, 2.0).unwrap_err(),
            SimilarityError::ZeroExponentUnknown("T".into())
        );
        assert!(matches!(
            solve_unknown(&groups[1], &matrix, &zero_exp, -1.0).unwrap_err(),
            SimilarityError::NonPositiveTarget(_)
        ));
    }

    #[test]
    fn similarity_report_is_symmetric() {
        let (matrix, groups) = preset_with_groups();
        let case_a = unit_case(&matrix);
        let mut case_b = case_a.clone();
        case_b.set("E", 3.0).unwrap();
        let ab = check_similarity(&groups, &matrix, &case_a, &case_b, 1e-3).unwrap();
        let ba = check_similarity(&groups, &matrix, &case_b, &case_a, 1e-3).unwrap();
        assert_eq!(ab.similar, ba.similar);
        for (x, y) in ab.groups.iter().zip(&ba.groups) {
            assert_eq!(x.relative_deviation, y.relative_deviation);
        }
    }

    fn positive_value() -> impl Strategy<Value = f64> {
        // log-uniform over [1e-3, 1e3]
        (-3.0f64..=3.0).prop_map(|e| 10f64.powf(e))
    }

    proptest! {
        // Scaling every quantity by ∏ λ_d^{dimension exponent} leaves all
        // π values unchanged: the operational meaning of dimensionlessness.
        #[test]
        fn dimension_scaling_leaves_pi_invariant(
            values in prop::collection::vec(positive_value(), 7),
            lambdas in prop::collection::vec(0.1f64..=10.0, 4),
        ) {
            let (matrix, groups) = preset_with_groups();
            let base = CaseAssignment::from_pairs(
                "base",
                matrix
                    .quantities()
                    .iter()
                    .zip(&values)
                    .map(|(q, &v)| (q.symbol.clone(), v)),
            )
            .unwrap();
            let scaled = CaseAssignment::from_pairs(
                "scaled",
                matrix.quantities().iter().zip(&values).map(|(q, &v)| {
                    let factor: f64 = q
                        .dims
                        .exponents()
                        .iter()
                        .zip(&lambdas)
                        .map(|(e, l)| l.powf(to_f64(e)))
                        .product();
                    (q.symbol.clone(), v * factor)
                }),
            )
            .unwrap();
            let report =
                check_similarity(&groups, &matrix, &base, &scaled, DEFAULT_TOLERANCE).unwrap();
            prop_assert!(report.similar, "deviations: {:?}", report.groups);
        }

        // solve_unknown then eval_pi reproduces the target within 1e-12.
        #[test]
        fn solve_then_eval_round_trips(
            values in prop::collection::vec(positive_value(), 7),
            target in positive_value(),
            group_index in 0usize..3,
            unknown_pick in 0usize..4,
        ) {
            let (matrix, groups) = preset_with_groups();
            let group = &groups[group_index];
            // choose a referenced quantity to blank out
            let referenced: Vec<&str> = matrix
                .quantities()
                .iter()
                .zip(group.monomial())
                .filter(|(_, e)| !e.is_zero())
                .map(|(q, _)| q.symbol.as_str())
                .collect();
            let unknown = referenced[unknown_pick % referenced.len()];
            let partial = CaseAssignment::from_pairs(
                "partial",
                matrix
                    .quantities()
                    .iter()
                    .zip(&values)
                    .filter(|(q, _)| q.symbol != unknown)
                    .map(|(q, &v)| (q.symbol.clone(), v)),
            )
            .unwrap();
            let solved = solve_unknown(group, &matrix, &partial, target).unwrap();
            let mut complete = partial.clone();
            complete.set(unknown, solved).unwrap();
            let evaluated = eval_pi(group, &matrix, &complete).unwrap();
            prop_assert!(
                (evaluated - target).abs() <= 1e-12 * target.abs(),
                "target {target}, got {evaluated}"
            );
        }
    }
}
