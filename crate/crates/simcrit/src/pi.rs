//! Basis validation and π-group derivation.
//!
//! Given a dimensional matrix (one dimension row per quantity) and a
//! chosen basis, this module checks basis independence by exact
//! determinant, derives the exponents that make each remaining quantity
//! dimensionless against the basis, and assembles the resulting π-groups.
//!
//! Two independent derivation routes are provided on purpose:
//!
//! * [`derive_exponents_cramer`] uses row-replacement determinants: `kᵢ` is
//!   the determinant of the basis matrix with row `i` replaced by the
//!   target row, divided by the basis determinant.
//! * [`derive_exponents_nullspace`] solves
//!   `Σᵢ kᵢ·dims(basisᵢ) = dims(target)` in reduced row-echelon form,
//!   which also covers rank-deficient (non-square) bases.
//!
//! Where both are defined they must agree exactly; the test suites hold
//! them to that.

use crate::dims::{DimensionSystem, DimensionVector, Quantity};
use crate::linalg;
use crate::rational::Rational;
use num::traits::{One, Signed, Zero};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PiError {
    #[error("duplicate quantity symbol `{0}`")]
    DuplicateQuantity(String),
    #[error("quantity `{0}` does not belong to the matrix's dimension system")]
    SystemMismatch(String),
    #[error("index {index} is out of range for {len} quantities")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("quantity index {0} appears twice in the basis")]
    DuplicateBasisIndex(usize),
    #[error("unknown quantity symbol `{0}`")]
    UnknownSymbol(String),
    #[error(
        "basis has {basis} quantities but the system has {dims} dimensions; \
         the determinant test needs a square selection; use the nullspace \
         derivation for rank-deficient bases"
    )]
    NonSquareBasis { basis: usize, dims: usize },
    #[error("basis is dimensionally dependent (determinant is zero)")]
    SingularBasis,
    #[error("target `{0}` is itself a basis quantity")]
    TargetInBasis(String),
    #[error(
        "target `{0}` lies outside the span of the basis rows; \
         the basis does not generate the system"
    )]
    InconsistentSystem(String),
    #[error("expected {expected} exponents, got {got}")]
    ExponentArityMismatch { expected: usize, got: usize },
    #[error("monomial for `{target}` is not dimensionless (net dimensions {net})")]
    NotDimensionless { target: String, net: String },
}

/// Quantities and their dimension rows over one system.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionalMatrix {
    system: Arc<DimensionSystem>,
    quantities: Vec<Quantity>,
}

impl DimensionalMatrix {
    /// Validates that all quantities share the system and have unique symbols.
    pub fn new(
        system: Arc<DimensionSystem>,
        quantities: Vec<Quantity>,
    ) -> Result<Self, PiError> {
        for (i, q) in quantities.iter().enumerate() {
            if q.dims.system() != &system {
                return Err(PiError::SystemMismatch(q.symbol.clone()));
            }
            if quantities[..i].iter().any(|p| p.symbol == q.symbol) {
                return Err(PiError::DuplicateQuantity(q.symbol.clone()));
            }
        }
        Ok(Self { system, quantities })
    }

    pub fn system(&self) -> &Arc<DimensionSystem> {
        &self.system
    }

    pub fn quantities(&self) -> &[Quantity] {
        &self.quantities
    }

    pub fn len(&self) -> usize {
        self.quantities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quantities.is_empty()
    }

    pub fn quantity(&self, index: usize) -> &Quantity {
        &self.quantities[index]
    }

    /// The dimension row of quantity `index`.
    pub fn row(&self, index: usize) -> &DimensionVector {
        &self.quantities[index].dims
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.quantities.iter().position(|q| q.symbol == symbol)
    }

    /// Exact rank of the full matrix.
    pub fn rank(&self) -> usize {
        linalg::rank(
            self.quantities
                .iter()
                .map(|q| q.dims.exponents().to_vec())
                .collect(),
        )
    }

    /// Net dimension vector of the monomial `∏ quantityᵢ^{exponentᵢ}`.
    ///
    /// This is the raw dimensionless check: feed it any exponent vector
    /// (including one copied from a published derivation) and inspect the
    /// result.
    pub fn net_dimensions(&self, exponents: &[Rational]) -> Result<DimensionVector, PiError> {
        if exponents.len() != self.quantities.len() {
            return Err(PiError::ExponentArityMismatch {
                expected: self.quantities.len(),
                got: exponents.len(),
            });
        }
        let mut net = DimensionVector::zero(&self.system);
        for (q, weight) in self.quantities.iter().zip(exponents) {
            net = net
                .combine(&q.dims, weight)
                .expect("matrix quantities share one system");
        }
        Ok(net)
    }

    fn rows_for(&self, indices: &[usize]) -> Vec<Vec<Rational>> {
        indices
            .iter()
            .map(|&i| self.quantities[i].dims.exponents().to_vec())
            .collect()
    }
}

/// Ordered choice of quantity indices to serve as the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSelection {
    indices: Vec<usize>,
}

impl BasisSelection {
    /// Indices must be distinct and in range for the matrix.
    pub fn new(indices: Vec<usize>, matrix: &DimensionalMatrix) -> Result<Self, PiError> {
        for (i, &idx) in indices.iter().enumerate() {
            if idx >= matrix.len() {
                return Err(PiError::IndexOutOfRange {
                    index: idx,
                    len: matrix.len(),
                });
            }
            if indices[..i].contains(&idx) {
                return Err(PiError::DuplicateBasisIndex(idx));
            }
        }
        Ok(Self { indices })
    }

    pub fn from_symbols(symbols: &[&str], matrix: &DimensionalMatrix) -> Result<Self, PiError> {
        let indices = symbols
            .iter()
            .map(|sym| {
                matrix
                    .index_of(sym)
                    .ok_or_else(|| PiError::UnknownSymbol((*sym).to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(indices, matrix)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }
}

/// Outcome of the determinant test on a square basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCheck {
    pub determinant: Rational,
    pub independent: bool,
}

/// Exact determinant of the basis rows; `independent` iff it is nonzero.
///
/// Only defined for the square case (basis count equals dimension count);
/// rank-deficient bases go through [`derive_exponents_nullspace`].
pub fn check_basis(
    matrix: &DimensionalMatrix,
    basis: &BasisSelection,
) -> Result<BasisCheck, PiError> {
    ensure_in_range(matrix, basis)?;
    let dims = matrix.system().arity();
    if basis.len() != dims {
        return Err(PiError::NonSquareBasis {
            basis: basis.len(),
            dims,
        });
    }
    let determinant = linalg::determinant(matrix.rows_for(basis.indices()));
    let independent = !determinant.is_zero();
    Ok(BasisCheck {
        determinant,
        independent,
    })
}

/// Full Cramer breakdown: the basis determinant, the row-replacement
/// determinants, and the exponents `kᵢ = detᵢ / det`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CramerDerivation {
    pub basis_determinant: Rational,
    pub replacement_determinants: Vec<Rational>,
    pub exponents: Vec<Rational>,
}

/// Row-replacement derivation of the basis exponents of `target`:
/// replace basis row `i` with the target's dimension row, take the
/// determinant, divide by the basis determinant.
pub fn cramer_derivation(
    matrix: &DimensionalMatrix,
    basis: &BasisSelection,
    target: usize,
) -> Result<CramerDerivation, PiError> {
    ensure_target(matrix, basis, target)?;
    let check = check_basis(matrix, basis)?;
    if !check.independent {
        return Err(PiError::SingularBasis);
    }
    let base_rows = matrix.rows_for(basis.indices());
    let target_row = matrix.row(target).exponents().to_vec();
    let replacement_determinants: Vec<Rational> = (0..basis.len())
        .map(|i| {
            let mut rows = base_rows.clone();
            rows[i] = target_row.clone();
            linalg::determinant(rows)
        })
        .collect();
    let exponents = replacement_determinants
        .iter()
        .map(|d| d / &check.determinant)
        .collect();
    Ok(CramerDerivation {
        basis_determinant: check.determinant,
        replacement_determinants,
        exponents,
    })
}

/// The exponents `k` with `Σᵢ kᵢ·dims(basisᵢ) = dims(target)`, via the
/// determinant route. Square independent bases only.
pub fn derive_exponents_cramer(
    matrix: &DimensionalMatrix,
    basis: &BasisSelection,
    target: usize,
) -> Result<Vec<Rational>, PiError> {
    Ok(cramer_derivation(matrix, basis, target)?.exponents)
}

/// The same exponents via exact reduced row-echelon elimination.
///
/// Also defined for rank-deficient bases (fewer basis quantities than
/// dimensions) as long as the target lies in the span of the basis rows.
pub fn derive_exponents_nullspace(
    matrix: &DimensionalMatrix,
    basis: &BasisSelection,
    target: usize,
) -> Result<Vec<Rational>, PiError> {
    ensure_target(matrix, basis, target)?;
    let rows = matrix.rows_for(basis.indices());
    let target_row = matrix.row(target).exponents();
    linalg::solve_combination(&rows, target_row)
        .ok_or_else(|| PiError::InconsistentSystem(matrix.quantity(target).symbol.clone()))
}

/// A dimensionless monomial: one target quantity over the basis,
/// `π = target / ∏ basisᵢ^{kᵢ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiGroup {
    target_index: usize,
    basis_indices: Vec<usize>,
    basis_exponents: Vec<Rational>,
    monomial: Vec<Rational>,
}

impl PiGroup {
    /// Assembles and validates a group from basis exponents. The monomial
    /// gets `+1` on the target and `-kᵢ` on basis quantity `i`; it must
    /// come out exactly dimensionless or the group is rejected. This is
    /// the check a published exponent set has to survive.
    pub fn from_exponents(
        matrix: &DimensionalMatrix,
        basis: &BasisSelection,
        target: usize,
        exponents: Vec<Rational>,
    ) -> Result<Self, PiError> {
        ensure_target(matrix, basis, target)?;
        if exponents.len() != basis.len() {
            return Err(PiError::ExponentArityMismatch {
                expected: basis.len(),
                got: exponents.len(),
            });
        }
        let mut monomial = vec![Rational::zero(); matrix.len()];
        monomial[target] = Rational::one();
        for (&basis_index, k) in basis.indices().iter().zip(&exponents) {
            monomial[basis_index] = -k.clone();
        }
        let net = matrix.net_dimensions(&monomial)?;
        if !net.is_dimensionless() {
            return Err(PiError::NotDimensionless {
                target: matrix.quantity(target).symbol.clone(),
                net: net.to_string(),
            });
        }
        Ok(Self {
            target_index: target,
            basis_indices: basis.indices().to_vec(),
            basis_exponents: exponents,
            monomial,
        })
    }

    pub fn target_index(&self) -> usize {
        self.target_index
    }

    pub fn basis_indices(&self) -> &[usize] {
        &self.basis_indices
    }

    /// The `kᵢ` of `π = target / ∏ basisᵢ^{kᵢ}`, in basis order.
    pub fn basis_exponents(&self) -> &[Rational] {
        &self.basis_exponents
    }

    /// Exponents over all quantities in declaration order (target `+1`,
    /// basis `i` gets `-kᵢ`, everything else `0`).
    pub fn monomial(&self) -> &[Rational] {
        &self.monomial
    }
}

/// Derives one π-group per non-basis quantity, in quantity order.
///
/// Square independent bases go through the row-replacement route;
/// rank-deficient bases (basis count below the dimension count) through
/// the nullspace route. Every returned group has been verified exactly
/// dimensionless.
pub fn derive_pi_groups(
    matrix: &DimensionalMatrix,
    basis: &BasisSelection,
) -> Result<Vec<PiGroup>, PiError> {
    ensure_in_range(matrix, basis)?;
    let square = basis.len() == matrix.system().arity();
    if square {
        let check = check_basis(matrix, basis)?;
        if !check.independent {
            return Err(PiError::SingularBasis);
        }
    } else {
        let basis_rank = linalg::rank(matrix.rows_for(basis.indices()));
        if basis_rank != basis.len() {
            return Err(PiError::SingularBasis);
        }
    }
    let mut groups = Vec::new();
    for target in 0..matrix.len() {
        if basis.contains(target) {
            continue;
        }
        let exponents = if square {
            derive_exponents_cramer(matrix, basis, target)?
        } else {
            derive_exponents_nullspace(matrix, basis, target)?
        };
        let group = PiGroup::from_exponents(matrix, basis, target, exponents)?;
        assert!(
            matrix
                .net_dimensions(group.monomial())
                .expect("monomial covers all quantities")
                .is_dimensionless(),
            "derived group must be dimensionless"
        );
        groups.push(group);
    }
    Ok(groups)
}

/// Deterministic rendering of a group: target symbol first, then basis
/// symbols in basis order; exponent 1 omitted; rational exponents as
/// `^(p/q)`; negative exponents collected after a single `/`, with a
/// parenthesized denominator when it has more than one factor.
pub fn format_pi_group(group: &PiGroup, matrix: &DimensionalMatrix) -> String {
    let mut numerator = vec![matrix.quantity(group.target_index()).symbol.clone()];
    let mut denominator = Vec::new();
    for (&basis_index, k) in group.basis_indices().iter().zip(group.basis_exponents()) {
        let exponent = -k.clone();
        if exponent.is_zero() {
            continue;
        }
        let symbol = &matrix.quantity(basis_index).symbol;
        if exponent.is_positive() {
            numerator.push(format!("{symbol}{}", exponent_suffix(&exponent)));
        } else {
            let magnitude = -exponent;
            denominator.push(format!("{symbol}{}", exponent_suffix(&magnitude)));
        }
    }
    let head = numerator.join("·");
    match denominator.len() {
        0 => head,
        1 => format!("{head}/{}", denominator[0]),
        _ => format!("{head}/({})", denominator.join("·")),
    }
}

fn exponent_suffix(exponent: &Rational) -> String {
    if exponent.is_one() {
        String::new()
    } else if exponent.is_integer() {
        format!("^{exponent}")
    } else {
        format!("^({exponent})")
    }
}

fn ensure_in_range(matrix: &DimensionalMatrix, basis: &BasisSelection) -> Result<(), PiError> {
    for &idx in basis.indices() {
        if idx >= matrix.len() {
            return Err(PiError::IndexOutOfRange {
                index: idx,
                len: matrix.len(),
            });
        }
    }
    Ok(())
}

fn ensure_target(
    matrix: &DimensionalMatrix,
    basis: &BasisSelection,
    target: usize,
) -> Result<(), PiError> {
    ensure_in_range(matrix, basis)?;
    if target >= matrix.len() {
        return Err(PiError::IndexOutOfRange {
            index: target,
            len: matrix.len(),
        });
    }
    if basis.contains(target) {
        return Err(PiError::TargetInBasis(
            matrix.quantity(target).symbol.clone(),
        ));
    }
    Ok(())
}
