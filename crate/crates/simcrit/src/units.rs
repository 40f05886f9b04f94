//! Unit-expression parsing: text like `кДж/(кг·°C)` into a dimension
//! vector plus an exact SI scale factor.
//!
//! Grammar (left-associative, `^` binds tighter than `·` and `/`):
//!
//! ```text
//! expression := term (('*' | '·' | '/') term)*
//! term       := unit ['^' exponent] | '(' expression ')' ['^' exponent]
//! unit       := [prefix] symbol | '1'
//! exponent   := ['+'|'-'] digits ['/' digits]   (parens allowed: ^(p/q))
//! ```
//!
//! Each `/` divides only the single following term, so `a/b/c` means
//! `a·b⁻¹·c⁻¹`. The literal `1` is the dimensionless unit with scale 1.
//! Both Latin and Cyrillic symbols are registered; when a token could be
//! read either as a standalone unit or as prefix+unit, the standalone
//! unit wins (`м` is the metre, not milli-something).

use crate::dims::{DimensionSystem, DimensionVector, Quantity};
use crate::rational::{self, int, ratio, Rational};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnitError {
    #[error("unknown unit symbol `{symbol}` at byte {offset}")]
    UnknownUnit { symbol: String, offset: usize },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent denominator is zero at byte {offset}")]
    ZeroDenominatorExponent { offset: usize },
    #[error("the term at byte {offset} has no exact rational scale under that exponent")]
    IrrationalScale { offset: usize },
    #[error("unit `{symbol}` does not belong to the registry's dimension system")]
    SystemMismatch { symbol: String },
    #[error("unit `{symbol}` must have a positive scale")]
    NonPositiveScale { symbol: String },
    #[error("unit symbol `{symbol}` is already registered")]
    DuplicateUnit { symbol: String },
    #[error("prefix `{prefix}` is already registered")]
    DuplicatePrefix { prefix: String },
}

/// Parse result: net dimensions and the exact factor to coherent base units.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedUnit {
    pub dims: DimensionVector,
    pub si_scale: Rational,
}

/// An immutable table of unit symbols and prefixes over one dimension system.
#[derive(Debug, Clone)]
pub struct UnitRegistry {
    system: Arc<DimensionSystem>,
    units: HashMap<String, (DimensionVector, Rational)>,
    /// Kept sorted longest-first so prefix resolution is deterministic.
    prefixes: Vec<(String, Rational)>,
}

impl UnitRegistry {
    pub fn new(system: Arc<DimensionSystem>) -> Self {
        Self {
            system,
            units: HashMap::new(),
            prefixes: Vec::new(),
        }
    }

    pub fn system(&self) -> &Arc<DimensionSystem> {
        &self.system
    }

    pub fn register_unit(
        &mut self,
        symbol: &str,
        dims: DimensionVector,
        si_scale: Rational,
    ) -> Result<(), UnitError> {
        if dims.system() != &self.system {
            return Err(UnitError::SystemMismatch {
                symbol: symbol.to_string(),
            });
        }
        if !si_scale.is_positive() {
            return Err(UnitError::NonPositiveScale {
                symbol: symbol.to_string(),
            });
        }
        if self.units.contains_key(symbol) {
            return Err(UnitError::DuplicateUnit {
                symbol: symbol.to_string(),
            });
        }
        self.units.insert(symbol.to_string(), (dims, si_scale));
        Ok(())
    }

    pub fn register_prefix(&mut self, prefix: &str, factor: Rational) -> Result<(), UnitError> {
        if self.prefixes.iter().any(|(p, _)| p == prefix) {
            return Err(UnitError::DuplicatePrefix {
                prefix: prefix.to_string(),
            });
        }
        if !factor.is_positive() {
            return Err(UnitError::NonPositiveScale {
                symbol: prefix.to_string(),
            });
        }
        self.prefixes.push((prefix.to_string(), factor));
        self.prefixes
            .sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        Ok(())
    }

    /// Exact symbol lookup, no prefix handling.
    pub fn lookup(&self, symbol: &str) -> Option<(&DimensionVector, &Rational)> {
        self.units.get(symbol).map(|(d, s)| (d, s))
    }

    /// Resolves a token to dimensions and scale: standalone unit first,
    /// then longest matching prefix followed by a registered unit.
    pub fn resolve(&self, token: &str) -> Option<(DimensionVector, Rational)> {
        if let Some((dims, scale)) = self.units.get(token) {
            return Some((dims.clone(), scale.clone()));
        }
        for (prefix, factor) in &self.prefixes {
            if token.len() > prefix.len() && token.starts_with(prefix.as_str()) {
                if let Some((dims, scale)) = self.units.get(&token[prefix.len()..]) {
                    return Some((dims.clone(), factor * scale));
                }
            }
        }
        None
    }
}

/// The built-in registry over `L M T Θ`: SI base units plus the joule,
/// watt, hour, and centimetre, each under Latin and Cyrillic symbols, and
/// the k/c/m/µ/M prefixes.
///
/// The centi prefix is Latin-only (`c`); Cyrillic `с` is the second, and
/// the centimetre is carried as the standalone symbol `см` instead.
pub fn default_registry() -> UnitRegistry {
    let system = DimensionSystem::lmt_theta();
    let mut registry = UnitRegistry::new(Arc::clone(&system));
    let dv = |row: [i64; 4]| DimensionVector::from_i64(&system, &row).expect("arity matches");

    let units: [(&[&str], [i64; 4], Rational); 10] = [
        (&["m", "м"], [1, 0, 0, 0], int(1)),
        (&["kg", "кг"], [0, 1, 0, 0], int(1)),
        (&["g", "г"], [0, 1, 0, 0], ratio(1, 1000)),
        (&["s", "с"], [0, 0, 1, 0], int(1)),
        (&["K", "К"], [0, 0, 0, 1], int(1)),
        // degree Celsius with Latin and Cyrillic trailing letter; affine
        // offsets are out of scope, so it is dimensionally a kelvin
        (&["°C", "°С"], [0, 0, 0, 1], int(1)),
        (&["J", "Дж"], [2, 1, -2, 0], int(1)),
        (&["W", "Вт"], [2, 1, -3, 0], int(1)),
        (&["h", "ч"], [0, 0, 1, 0], int(3600)),
        (&["cm", "см"], [1, 0, 0, 0], ratio(1, 100)),
    ];
    for (symbols, row, scale) in units {
        for symbol in symbols {
            registry
                .register_unit(symbol, dv(row), scale.clone())
                .expect("built-in units are consistent");
        }
    }

    let prefixes: [(&[&str], Rational); 5] = [
        (&["k", "к"], int(1000)),
        (&["c"], ratio(1, 100)),
        (&["m", "м"], ratio(1, 1000)),
        (&["µ", "μ", "мк"], ratio(1, 1_000_000)),
        (&["M", "М"], int(1_000_000)),
    ];
    for (symbols, factor) in prefixes {
        for symbol in symbols {
            registry
                .register_prefix(symbol, factor.clone())
                .expect("built-in prefixes are consistent");
        }
    }
    registry
}

/// Parses a unit expression against a registry.
pub fn parse_unit(text: &str, registry: &UnitRegistry) -> Result<ParsedUnit, UnitError> {
    let mut parser = Parser {
        text,
        pos: 0,
        registry,
    };
    parser.skip_ws();
    if parser.at_end() {
        return Err(UnitError::Syntax {
            offset: 0,
            message: "empty unit expression".into(),
        });
    }
    let (dims, si_scale) = parser.expression()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(UnitError::Syntax {
            offset: parser.pos,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(ParsedUnit { dims, si_scale })
}

fn is_symbol_char(c: char) -> bool {
    c.is_alphabetic() || c == '°'
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    registry: &'a UnitRegistry,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn read_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if pred(c)) {
            self.bump();
        }
        &self.text[start..self.pos]
    }

    fn expression(&mut self) -> Result<(DimensionVector, Rational), UnitError> {
        let (mut dims, mut scale) = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') | Some('·') => {
                    self.bump();
                    let (d, s) = self.term()?;
                    dims = combine(&dims, &d, 1);
                    scale *= s;
                }
                Some('/') => {
                    self.bump();
                    let (d, s) = self.term()?;
                    dims = combine(&dims, &d, -1);
                    scale /= s;
                }
                _ => break,
            }
        }
        Ok((dims, scale))
    }

    fn term(&mut self) -> Result<(DimensionVector, Rational), UnitError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expression()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(UnitError::Syntax {
                        offset: self.pos,
                        message: "expected `)`".into(),
                    });
                }
                self.apply_exponent(inner, start)
            }
            Some(c) if is_symbol_char(c) => {
                let symbol = self.read_while(is_symbol_char);
                let resolved =
                    self.registry
                        .resolve(symbol)
                        .ok_or_else(|| UnitError::UnknownUnit {
                            symbol: symbol.to_string(),
                            offset: start,
                        })?;
                self.apply_exponent(resolved, start)
            }
            Some(c) if c.is_ascii_digit() => {
                let literal = self.read_while(|c| c.is_ascii_digit());
                if literal == "1" {
                    let unit = (DimensionVector::zero(self.registry.system()), int(1));
                    self.apply_exponent(unit, start)
                } else {
                    Err(UnitError::Syntax {
                        offset: start,
                        message: format!("numeric literal `{literal}` is not a unit (only `1` is)"),
                    })
                }
            }
            Some(c) => Err(UnitError::Syntax {
                offset: start,
                message: format!("unexpected character `{c}`"),
            }),
            None => Err(UnitError::Syntax {
                offset: start,
                message: "expected a unit, `(`, or `1`".into(),
            }),
        }
    }

    fn apply_exponent(
        &mut self,
        (dims, scale): (DimensionVector, Rational),
        term_start: usize,
    ) -> Result<(DimensionVector, Rational), UnitError> {
        let before = self.pos;
        self.skip_ws();
        if !self.eat('^') {
            self.pos = before;
            return Ok((dims, scale));
        }
        let exponent = self.exponent()?;
        let scaled = rational::pow(&scale, &exponent)
            .ok_or(UnitError::IrrationalScale { offset: term_start })?;
        Ok((dims.scaled(&exponent), scaled))
    }

    /// Signed rational after `^`. The bare form consumes `/q` only when a
    /// digit follows the slash, so `м^2/с` stays a division; parenthesized
    /// exponents like `^(2/3)` are also accepted.
    fn exponent(&mut self) -> Result<Rational, UnitError> {
        self.skip_ws();
        let parenthesized = self.eat('(');
        if parenthesized {
            self.skip_ws();
        }
        let start = self.pos;
        let negative = match self.peek() {
            Some('-') | Some('−') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let numer_digits = self.read_while(|c| c.is_ascii_digit());
        if numer_digits.is_empty() {
            return Err(UnitError::Syntax {
                offset: self.pos,
                message: "expected exponent digits".into(),
            });
        }
        let mut numer: BigInt = numer_digits.parse().expect("digits parse");
        if negative {
            numer = -numer;
        }
        let denom_digits = if parenthesized {
            self.skip_ws();
            if self.eat('/') {
                self.skip_ws();
                let d = self.read_while(|c| c.is_ascii_digit());
                if d.is_empty() {
                    return Err(UnitError::Syntax {
                        offset: self.pos,
                        message: "expected denominator digits".into(),
                    });
                }
                Some(d)
            } else {
                None
            }
        } else if self.peek() == Some('/')
            && matches!(self.rest().chars().nth(1), Some(c) if c.is_ascii_digit())
        {
            self.bump();
            Some(self.read_while(|c| c.is_ascii_digit()))
        } else {
            None
        };
        let denom: BigInt = match denom_digits {
            Some(d) => d.parse().expect("digits parse"),
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(UnitError::ZeroDenominatorExponent { offset: start });
        }
        if parenthesized {
            self.skip_ws();
            if !self.eat(')') {
                return Err(UnitError::Syntax {
                    offset: self.pos,
                    message: "expected `)` closing the exponent".into(),
                });
            }
        }
        Ok(Rational::new(numer, denom))
    }
}

fn combine(a: &DimensionVector, b: &DimensionVector, weight: i64) -> DimensionVector {
    a.combine(b, &int(weight))
        .expect("registry vectors share one system")
}

/// One line of a unit-vs-dimensions reconciliation.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRecord {
    pub symbol: String,
    pub unit_text: String,
    pub declared: DimensionVector,
    /// `None` when the unit text does not parse.
    pub parsed: Option<ParsedUnit>,
    pub parse_error: Option<String>,
    pub matches: bool,
}

/// Parses each quantity's unit text and compares it against the declared
/// dimension row. Quantities without unit text are skipped; unparseable
/// unit text is recorded, not fatal.
pub fn audit_quantities(quantities: &[Quantity], registry: &UnitRegistry) -> Vec<AuditRecord> {
    quantities
        .iter()
        .filter_map(|q| {
            let unit_text = q.unit_text.as_ref()?;
            let record = match parse_unit(unit_text, registry) {
                Ok(parsed) => AuditRecord {
                    symbol: q.symbol.clone(),
                    unit_text: unit_text.clone(),
                    declared: q.dims.clone(),
                    matches: parsed.dims == q.dims,
                    parsed: Some(parsed),
                    parse_error: None,
                },
                Err(err) => AuditRecord {
                    symbol: q.symbol.clone(),
                    unit_text: unit_text.clone(),
                    declared: q.dims.clone(),
                    parsed: None,
                    parse_error: Some(err.to_string()),
                    matches: false,
                },
            };
            Some(record)
        })
        .collect()
}
