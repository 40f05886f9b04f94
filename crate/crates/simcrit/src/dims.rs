//! Dimension systems, dimension vectors, and physical quantities.
//!
//! A [`DimensionSystem`] fixes an ordered list of base dimensions (the
//! default is `L M T Θ`). A [`DimensionVector`] stores one exact rational
//! exponent per base dimension and is the currency every other module
//! trades in: unit parsing produces them, the pi engine eliminates over
//! them, similarity evaluation reads them.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so they can be shared freely across threads.

use crate::rational::Rational;
use num::traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimsError {
    #[error("a dimension system needs at least one base symbol")]
    EmptySystem,
    #[error("base symbols must be non-empty")]
    BlankSymbol,
    #[error("duplicate base symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("expected {expected} exponents for system {system}, got {got}")]
    ArityMismatch {
        system: String,
        expected: usize,
        got: usize,
    },
    #[error("dimension vectors belong to different systems ({left} vs {right})")]
    SystemMismatch { left: String, right: String },
}

/// An ordered list of base-dimension symbols, e.g. `L M T Θ`.
///
/// Systems are user-definable; nothing in the engine assumes four
/// dimensions. Temperature is an ordinary base dimension here: `°C` and
/// `K` are dimensionally identical and affine offsets are out of scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSystem {
    base_symbols: Vec<String>,
}

impl DimensionSystem {
    /// Builds a system from unique, non-empty symbols.
    pub fn new<I, S>(symbols: I) -> Result<Arc<Self>, DimsError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let base_symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if base_symbols.is_empty() {
            return Err(DimsError::EmptySystem);
        }
        for (i, sym) in base_symbols.iter().enumerate() {
            if sym.trim().is_empty() {
                return Err(DimsError::BlankSymbol);
            }
            if base_symbols[..i].contains(sym) {
                return Err(DimsError::DuplicateSymbol(sym.clone()));
            }
        }
        Ok(Arc::new(Self { base_symbols }))
    }

    /// The default length–mass–time–temperature system.
    pub fn lmt_theta() -> Arc<Self> {
        Self::new(["L", "M", "T", "Θ"]).expect("default system is valid")
    }

    pub fn base_symbols(&self) -> &[String] {
        &self.base_symbols
    }

    /// Number of base dimensions.
    pub fn arity(&self) -> usize {
        self.base_symbols.len()
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.base_symbols.iter().position(|s| s == symbol)
    }

    fn describe(&self) -> String {
        self.base_symbols.join("·")
    }
}

impl fmt::Display for DimensionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Exact rational exponents over the base dimensions of one system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionVector {
    system: Arc<DimensionSystem>,
    exponents: Vec<Rational>,
}

impl DimensionVector {
    /// One exponent per base symbol; rejects length mismatches.
    ///
    /// Exponents are stored reduced with positive denominators (the
    /// rational type normalizes on construction).
    pub fn new(
        system: &Arc<DimensionSystem>,
        exponents: Vec<Rational>,
    ) -> Result<Self, DimsError> {
        if exponents.len() != system.arity() {
            return Err(DimsError::ArityMismatch {
                system: system.describe(),
                expected: system.arity(),
                got: exponents.len(),
            });
        }
        Ok(Self {
            system: Arc::clone(system),
            exponents,
        })
    }

    /// Convenience constructor for integer exponent rows.
    pub fn from_i64(system: &Arc<DimensionSystem>, exponents: &[i64]) -> Result<Self, DimsError> {
        Self::new(
            system,
            exponents.iter().map(|&n| crate::rational::int(n)).collect(),
        )
    }

    /// The dimensionless vector of a system.
    pub fn zero(system: &Arc<DimensionSystem>) -> Self {
        Self {
            system: Arc::clone(system),
            exponents: vec![Rational::zero(); system.arity()],
        }
    }

    pub fn system(&self) -> &Arc<DimensionSystem> {
        &self.system
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    /// Componentwise `self + weight·other`, exactly.
    ///
    /// With `weight = 1` this is dimensional multiplication, with
    /// `weight = -1` division; powers come from combining onto the zero
    /// vector.
    pub fn combine(&self, other: &Self, weight: &Rational) -> Result<Self, DimsError> {
        if self.system != other.system {
            return Err(DimsError::SystemMismatch {
                left: self.system.describe(),
                right: other.system.describe(),
            });
        }
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + weight * b)
            .collect();
        Ok(Self {
            system: Arc::clone(&self.system),
            exponents,
        })
    }

    /// `weight·self`, exactly.
    pub fn scaled(&self, weight: &Rational) -> Self {
        Self {
            system: Arc::clone(&self.system),
            exponents: self.exponents.iter().map(|e| e * weight).collect(),
        }
    }

    /// True iff every exponent is exactly zero.
    pub fn is_dimensionless(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for DimensionVector {
    /// Renders like `L^2·T^-2·Θ^-1`; the dimensionless vector prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .system
            .base_symbols()
            .iter()
            .zip(&self.exponents)
            .filter(|(_, e)| !e.is_zero())
            .map(|(sym, e)| {
                if e.is_one() {
                    sym.clone()
                } else if e.is_integer() {
                    format!("{sym}^{e}")
                } else {
                    format!("{sym}^({e})")
                }
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A named physical parameter: a symbol, a dimension row, and optionally
/// the unit text its numeric values are expressed in.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    pub symbol: String,
    pub name: String,
    pub dims: DimensionVector,
    pub unit_text: Option<String>,
    /// Factor converting a value in `unit_text` to coherent base units.
    /// Present whenever `unit_text` is present and parseable.
    pub si_scale: Option<Rational>,
}

impl Quantity {
    pub fn new(
        symbol: impl Into<String>,
        name: impl Into<String>,
        dims: DimensionVector,
    ) -> Self {
        Self {
            symbol: symbol.into(),
            name: name.into(),
            dims,
            unit_text: None,
            si_scale: None,
        }
    }

    pub fn with_unit(mut self, unit_text: impl Into<String>, si_scale: Rational) -> Self {
        self.unit_text = Some(unit_text.into());
        self.si_scale = Some(si_scale);
        self
    }

    /// The conversion factor to coherent base units, defaulting to 1 for
    /// quantities declared without a unit.
    pub fn si_scale_or_one(&self) -> Rational {
        self.si_scale
            .clone()
            .unwrap_or_else(|| crate::rational::int(1))
    }
}
