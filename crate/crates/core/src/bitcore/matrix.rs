use std::collections::HashMap;
use std::fmt;

use super::row::{check_width, BitRow};
use crate::error::{Error, Result};

/// An `n × m` binary matrix with distinct rows, `n ≥ 1`. Row order is kept
/// exactly as given.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    width: usize,
    rows: Vec<BitRow>,
    // Row codes in ascending order, for membership tests.
    sorted_codes: Vec<u64>,
}

impl BinaryMatrix {
    /// Builds a matrix from rows, rejecting empty input, ragged widths and
    /// repeated rows.
    pub fn new(rows: Vec<BitRow>) -> Result<Self> {
        let first = rows.first().ok_or(Error::Empty)?;
        let width = first.width();
        check_width(width)?;
        let mut seen: HashMap<u64, usize> = HashMap::with_capacity(rows.len());
        for (index, row) in rows.iter().enumerate() {
            if row.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: row.width(),
                });
            }
            if let Some(&first) = seen.get(&row.code()) {
                return Err(Error::DuplicateRow { index, first });
            }
            seen.insert(row.code(), index);
        }
        let mut sorted_codes: Vec<u64> = rows.iter().map(BitRow::code).collect();
        sorted_codes.sort_unstable();
        Ok(BinaryMatrix {
            width,
            rows,
            sorted_codes,
        })
    }

    /// Builds a matrix from row codes of a common width.
    pub fn from_codes(width: usize, codes: &[u64]) -> Result<Self> {
        let rows = codes
            .iter()
            .map(|&c| BitRow::new(width, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<BitRow>>>()?;
        Self::new(rows)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|j| BitRow::unit(n, j))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Result<BitRow> {
        self.rows.get(i).copied().ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.rows.len(),
        })
    }

    pub fn into_rows(self) -> Vec<BitRow> {
        self.rows
    }

    #[inline]
    pub fn contains(&self, row: &BitRow) -> bool {
        row.width() == self.width && self.contains_code(row.code())
    }

    #[inline]
    pub(crate) fn contains_code(&self, code: u64) -> bool {
        self.sorted_codes.binary_search(&code).is_ok()
    }

    /// At least one entry of the matrix is 1.
    pub fn is_nonzero(&self) -> bool {
        self.rows.iter().any(|r| !r.is_zero())
    }

    /// Number of ones in column `j` (0-based).
    pub fn column_sum(&self, j: usize) -> Result<usize> {
        if j >= self.width {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.width,
            });
        }
        Ok(self.column_sum_unchecked(j))
    }

    pub(crate) fn column_sum_unchecked(&self, j: usize) -> usize {
        self.rows.iter().filter(|r| r.bit(j)).count()
    }

    /// All column sums, left to right.
    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.width)
            .map(|j| self.column_sum_unchecked(j))
            .collect()
    }

    /// Column `j` read top to bottom.
    pub fn column(&self, j: usize) -> Result<Vec<bool>> {
        if j >= self.width {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.width,
            });
        }
        Ok(self.rows.iter().map(|r| r.bit(j)).collect())
    }

    /// Every row negated; the tilde matrix.
    pub fn negate(&self) -> BinaryMatrix {
        let rows = self.rows.iter().map(BitRow::negate).collect();
        // Negation is a bijection, so distinctness carries over.
        Self::new(rows).expect("negation preserves distinct rows")
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<BinaryMatrix> {
        check_permutation(perm, self.n_rows())?;
        Self::new(perm.iter().map(|&i| self.rows[i]).collect())
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<BinaryMatrix> {
        check_permutation(perm, self.width)?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.permute_columns(perm))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// Same rows sorted by ascending code.
    pub fn sorted(&self) -> BinaryMatrix {
        let mut rows = self.rows.clone();
        rows.sort_unstable();
        BinaryMatrix {
            width: self.width,
            rows,
            sorted_codes: self.sorted_codes.clone(),
        }
    }

    /// Equality of the row sets, ignoring order.
    pub fn same_row_set(&self, other: &BinaryMatrix) -> bool {
        self.width == other.width && self.sorted_codes == other.sorted_codes
    }

    /// Text in the `.bm` format, one row per line.
    pub fn to_bm(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * (self.width + 1));
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

pub(crate) fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(Error::ParameterOutOfRange(format!(
            "permutation has length {}, expected {len}",
            perm.len()
        )));
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::ParameterOutOfRange(format!(
                "not a permutation of 0..{len}"
            )));
        }
    }
    Ok(())
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bm())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        write!(f, "BinaryMatrix[{}]", rows.join(", "))
    }
}
