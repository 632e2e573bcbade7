//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::coeff::Coeff;

/// Outcome of an exact linear solve `M x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<Coeff>),
    /// No solution exists.
    Inconsistent,
    /// Solutions exist but are not unique.
    Underdetermined,
}

/// Solves `M x = rhs` exactly; `rows x cols` rectangular systems allowed.
pub fn solve(matrix: &[Vec<Coeff>], rhs: &[Coeff]) -> SolveOutcome {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len());
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Coeff>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(sel) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, sel);
        let inv = aug[pivot_row][col].recip();
        for v in aug[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = aug[pivot_row].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (c, pv) in pivot.iter().enumerate().skip(col) {
                    let delta = &factor * pv;
                    row[c] = &row[c] - &delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    for row in aug.iter().skip(pivot_row) {
        if row[..cols].iter().all(Coeff::is_zero) && !row[cols].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if pivot_cols.len() < cols {
        return SolveOutcome::Underdetermined;
    }
    let mut x = vec![Coeff::zero(); cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug[r][cols].clone();
    }
    SolveOutcome::Unique(x)
}
