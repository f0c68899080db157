//! Binary rows, matrices and set families, plus their text formats.

mod family;
mod format;
mod matrix;
mod row;

pub use family::{family_to_matrix, matrix_to_family, SetFamily};
pub use format::{parse_bm, parse_fam};
pub(crate) use matrix::check_permutation;
pub use matrix::BinaryMatrix;
pub(crate) use row::width_mask;
pub use row::{BitRow, MAX_WIDTH};

/// Builds a matrix from rows; see [`BinaryMatrix::new`].
pub fn make_matrix(rows: Vec<BitRow>) -> crate::Result<BinaryMatrix> {
    BinaryMatrix::new(rows)
}

/// Number of ones in column `j` (0-based) of `m`.
pub fn column_sum(m: &BinaryMatrix, j: usize) -> crate::Result<usize> {
    m.column_sum(j)
}
