use std::fmt;

use super::matrix::BinaryMatrix;
use super::row::{check_width, BitRow};
use crate::error::{Error, Result};

/// A nonempty family of distinct subsets of `[ground_size]`, in a fixed order.
///
/// Each member is stored as its characteristic vector, so a family and the
/// matrix whose rows are those vectors carry the same data.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground_size: usize,
    sets: Vec<BitRow>,
}

impl SetFamily {
    pub fn new(ground_size: usize, sets: Vec<BitRow>) -> Result<Self> {
        check_width(ground_size)?;
        // Reuse the matrix checks for emptiness, widths and distinctness.
        let matrix = BinaryMatrix::new(sets)?;
        if matrix.width() != ground_size {
            return Err(Error::WidthMismatch {
                expected: ground_size,
                found: matrix.width(),
            });
        }
        Ok(SetFamily {
            ground_size,
            sets: matrix.into_rows(),
        })
    }

    /// Builds a family from sets given as lists of 1-based elements.
    pub fn from_element_lists<S: AsRef<[usize]>>(ground_size: usize, sets: &[S]) -> Result<Self> {
        let rows = sets
            .iter()
            .map(|s| BitRow::from_elements(ground_size, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground_size, rows)
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[BitRow] {
        &self.sets
    }

    /// Members as sorted lists of 1-based elements.
    pub fn element_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(BitRow::elements).collect()
    }

    /// Text in the `.fam` format.
    pub fn to_fam(&self) -> String {
        let mut out = format!("ground {}\n", self.ground_size);
        for set in &self.sets {
            let elements = set.elements();
            if elements.is_empty() {
                out.push('-');
            } else {
                let parts: Vec<String> = elements.iter().map(ToString::to_string).collect();
                out.push_str(&parts.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

/// Row `i` is the characteristic vector of the `i`-th member.
pub fn family_to_matrix(family: &SetFamily) -> BinaryMatrix {
    BinaryMatrix::new(family.sets.clone()).expect("a valid family is a valid matrix")
}

/// Inverse of [`family_to_matrix`].
pub fn matrix_to_family(matrix: &BinaryMatrix) -> SetFamily {
    SetFamily {
        ground_size: matrix.width(),
        sets: matrix.rows().to_vec(),
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(ground {}) ", self.ground_size)?;
        f.debug_set()
            .entries(self.sets.iter().map(|s| DisplaySet(s.elements())))
            .finish()
    }
}

struct DisplaySet(Vec<usize>);

impl fmt::Debug for DisplaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}
