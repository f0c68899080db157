use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported row width. Rows are packed into a single `u64`.
pub const MAX_WIDTH: usize = 64;

/// One row of a binary matrix, or equivalently the characteristic vector of a
/// subset of `[width]`.
///
/// Column `j` (0-based, left to right) is stored at bit `width - 1 - j`, so
/// [`BitRow::code`] reads the row as a binary number with column 0 as the
/// most significant digit. `"110"` has code 6.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitRow {
    width: u8,
    bits: u64,
}

#[inline]
pub(crate) fn width_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

pub(crate) fn check_width(width: usize) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        return Err(Error::WidthCapExceeded {
            width,
            cap: MAX_WIDTH,
        });
    }
    Ok(())
}

impl BitRow {
    /// Builds a row from its binary code. Bits above `width` must be clear.
    pub fn new(width: usize, code: u64) -> Result<Self> {
        check_width(width)?;
        if code & !width_mask(width) != 0 {
            return Err(Error::ParameterOutOfRange(format!(
                "code {code:#x} does not fit in width {width}"
            )));
        }
        Ok(Self::from_code_unchecked(width, code))
    }

    #[inline]
    pub(crate) fn from_code_unchecked(width: usize, code: u64) -> Self {
        debug_assert!((1..=MAX_WIDTH).contains(&width));
        debug_assert_eq!(code & !width_mask(width), 0);
        BitRow {
            width: width as u8,
            bits: code,
        }
    }

    pub fn zeros(width: usize) -> Result<Self> {
        Self::new(width, 0)
    }

    pub fn ones(width: usize) -> Result<Self> {
        check_width(width)?;
        Ok(Self::from_code_unchecked(width, width_mask(width)))
    }

    /// Row with a single one in column `j`.
    pub fn unit(width: usize, j: usize) -> Result<Self> {
        check_width(width)?;
        if j >= width {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: width,
            });
        }
        Ok(Self::from_code_unchecked(width, 1u64 << (width - 1 - j)))
    }

    /// Builds a row from the given column values, left to right.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        check_width(bits.len())?;
        let code = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Ok(Self::from_code_unchecked(bits.len(), code))
    }

    /// Characteristic vector of `elements` (1-based) within `[width]`.
    pub fn from_elements(width: usize, elements: &[usize]) -> Result<Self> {
        check_width(width)?;
        let mut code = 0u64;
        for &e in elements {
            if e == 0 || e > width {
                return Err(Error::IndexOutOfRange {
                    index: e,
                    len: width,
                });
            }
            code |= 1u64 << (width - e);
        }
        Ok(Self::from_code_unchecked(width, code))
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn code(&self) -> u64 {
        self.bits
    }

    /// Value of column `j` (0-based).
    pub fn get(&self, j: usize) -> Result<bool> {
        if j >= self.width() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.width(),
            });
        }
        Ok(self.bit(j))
    }

    #[inline]
    pub(crate) fn bit(&self, j: usize) -> bool {
        (self.bits >> (self.width() - 1 - j)) & 1 == 1
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Columns holding a one, ascending, 0-based.
    pub fn ones_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width()).filter(move |&j| self.bit(j))
    }

    /// Elements of the subset this row encodes, 1-based and ascending.
    pub fn elements(&self) -> Vec<usize> {
        self.ones_columns().map(|j| j + 1).collect()
    }

    fn same_width(&self, other: &BitRow) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                found: other.width(),
            });
        }
        Ok(())
    }

    pub fn negate(&self) -> BitRow {
        Self::from_code_unchecked(self.width(), !self.bits & width_mask(self.width()))
    }

    pub fn and(&self, other: &BitRow) -> Result<BitRow> {
        self.same_width(other)?;
        Ok(Self::from_code_unchecked(
            self.width(),
            self.bits & other.bits,
        ))
    }

    pub fn or(&self, other: &BitRow) -> Result<BitRow> {
        self.same_width(other)?;
        Ok(Self::from_code_unchecked(
            self.width(),
            self.bits | other.bits,
        ))
    }

    /// `self ∧ ¬other`, i.e. set difference.
    pub fn and_not(&self, other: &BitRow) -> Result<BitRow> {
        self.same_width(other)?;
        Ok(Self::from_code_unchecked(
            self.width(),
            self.bits & !other.bits,
        ))
    }

    /// True when every one of `self` is also a one of `other`.
    pub fn is_subset_of(&self, other: &BitRow) -> bool {
        self.width == other.width && self.bits & !other.bits == 0
    }

    /// True when the elementwise AND is the zero row.
    pub fn is_orthogonal_to(&self, other: &BitRow) -> bool {
        self.width == other.width && self.bits & other.bits == 0
    }

    /// Reorders columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<BitRow> {
        if perm.len() != self.width() {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                found: perm.len(),
            });
        }
        let mut code = 0u64;
        for &src in perm {
            if src >= self.width() {
                return Err(Error::IndexOutOfRange {
                    index: src,
                    len: self.width(),
                });
            }
            code = (code << 1) | self.bit(src) as u64;
        }
        Ok(Self::from_code_unchecked(self.width(), code))
    }
}

impl fmt::Display for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.width() {
            f.write_str(if self.bit(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow({self})")
    }
}

impl FromStr for BitRow {
    type Err = Error;

    /// Parses a string of `0`/`1` characters.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    line: 1,
                    message: format!("unexpected character {other:?} at column {}", i + 1),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        BitRow::from_bits(&bits)
    }
}
