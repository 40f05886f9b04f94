//! Exact rational Gaussian elimination.
//!
//! Two deliberately separate routes live here. [`determinant`] does plain
//! forward elimination with a running pivot product and backs the
//! row-replacement (Cramer) derivation. [`solve_combination`] reduces an
//! augmented matrix to reduced row-echelon form and backs the nullspace
//! derivation. Keeping the routes separate is what makes their agreement
//! a meaningful cross-check.

use crate::rational::Rational;
use num::traits::Zero;

/// Exact determinant of a square matrix, by fraction elimination.
///
/// Panics if the matrix is not square (callers validate shape first).
pub(crate) fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot_vals = m[col].clone();
        det *= &pivot_vals[col];
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_vals[col];
            for (entry, pivot_entry) in row.iter_mut().zip(&pivot_vals).skip(col) {
                *entry -= &factor * pivot_entry;
            }
        }
    }
    det
}

/// Reduced row-echelon form over the first `pivot_cols` columns.
/// Returns the reduced matrix and the pivot column indices.
fn rref(mut m: Vec<Vec<Rational>>, pivot_cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, r);
        let pivot = m[r][c].clone();
        for entry in &mut m[r] {
            *entry /= &pivot;
        }
        let pivot_vals = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (entry, pivot_entry) in row.iter_mut().zip(&pivot_vals) {
                *entry -= &factor * pivot_entry;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Exact rank of a rectangular matrix.
pub(crate) fn rank(m: Vec<Vec<Rational>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    rref(m, cols).1.len()
}

/// Solves `Σᵢ kᵢ·rowsᵢ = target` exactly.
///
/// Returns `None` when `target` is outside the row span. When the rows are
/// dependent the solution is not unique; free coefficients are set to zero,
/// which keeps the output deterministic.
pub(crate) fn solve_combination(
    rows: &[Vec<Rational>],
    target: &[Rational],
) -> Option<Vec<Rational>> {
    let unknowns = rows.len();
    let dims = target.len();
    debug_assert!(rows.iter().all(|row| row.len() == dims));
    // Augmented system: column i holds rowsᵢ transposed, last column the target.
    let augmented: Vec<Vec<Rational>> = (0..dims)
        .map(|d| {
            let mut row: Vec<Rational> = rows.iter().map(|r| r[d].clone()).collect();
            row.push(target[d].clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(augmented, unknowns);
    // A leftover nonzero right-hand side below the pivot rows means the
    // target is unreachable.
    for row in reduced.iter().skip(pivots.len()) {
        if !row[unknowns].is_zero() {
            return None;
        }
    }
    let mut solution = vec![Rational::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        solution[c] = reduced[r][unknowns].clone();
    }
    Some(solution)
}
