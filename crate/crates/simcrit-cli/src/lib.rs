//! Support library for the `simcrit` binary: problem/case ingestion,
//! report construction, and the exit-code contract. Split out so
//! integration tests can drive the same code paths the binary uses.

pub mod error;
pub mod problem;
pub mod report;

/// Parses a CLI number, accepting both decimal point and decimal comma
/// (`2,9` and `2.9` are the same value).
pub fn parse_cli_number(text: &str) -> Result<f64, String> {
    let normalized = text.trim().replace(',', ".");
    normalized
        .parse::<f64>()
        .map_err(|_| format!("`{text}` is not a number"))
}
