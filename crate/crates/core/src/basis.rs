//! Orthogonal bases of row sets closed under conjunction and abjunction.
//!
//! A basis is a set of pairwise orthogonal nonzero rows such that every row of
//! the matrix is the OR of exactly one subset of them. The zero row is the OR
//! of the empty subset and is never itself a basis vector.

use crate::bitcore::{family_to_matrix, BinaryMatrix, BitRow, SetFamily};
use crate::error::{Error, Result};
use crate::operators::BoolOp;
use crate::spaces::{closed_under_all, is_closed};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    width: usize,
    vectors: Vec<BitRow>,
}

impl Basis {
    /// Validates pairwise orthogonality and that no vector is zero.
    pub fn new(width: usize, vectors: Vec<BitRow>) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            if v.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: v.width(),
                });
            }
            if v.is_zero() {
                return Err(Error::BasisVerificationFailed(format!(
                    "vector {i} is zero"
                )));
            }
            if let Some(j) = vectors[..i].iter().position(|u| !u.is_orthogonal_to(v)) {
                return Err(Error::BasisVerificationFailed(format!(
                    "vectors {j} and {i} are not orthogonal"
                )));
            }
        }
        Ok(Basis { width, vectors })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn vectors(&self) -> &[BitRow] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Basis vectors sorted by code, for order-insensitive comparison.
    pub fn sorted_vectors(&self) -> Vec<BitRow> {
        let mut v = self.vectors.clone();
        v.sort_unstable();
        v
    }
}

/// The index set `α` with `row = ⋁_{i∈α} v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub indices: Vec<usize>,
}

impl Decomposition {
    pub fn reconstruct(&self, basis: &Basis) -> Result<BitRow> {
        let mut acc = BitRow::zeros(basis.width)?;
        for &i in &self.indices {
            let v = basis.vectors.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                len: basis.len(),
            })?;
            acc = acc.or(v)?;
        }
        Ok(acc)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }
}

/// Order in which rows are offered for removal while building a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RemovalOrder {
    /// Ascending by row code.
    Ascending,
    /// Descending by row code.
    Descending,
    /// Explicit permutation of row indices.
    Given(Vec<usize>),
}

/// Rows closed under both `A ∧ B` and `A ∧ ¬B`.
pub fn check_basis_preconditions(m: &BinaryMatrix) -> bool {
    closed_under_all(m, &[BoolOp::AND, BoolOp::ABJ])
}

pub fn compute_basis(m: &BinaryMatrix) -> Result<Basis> {
    compute_basis_with_order(m, &RemovalOrder::Ascending)
}

/// Removes, one at a time, any remaining row equal to the OR of the other
/// remaining rows it dominates, until no such row is left. The survivors form
/// the basis, listed in input row order.
pub fn compute_basis_with_order(m: &BinaryMatrix, order: &RemovalOrder) -> Result<Basis> {
    if !check_basis_preconditions(m) {
        return Err(Error::PreconditionViolated(
            "rows are not closed under conjunction and abjunction".into(),
        ));
    }
    let rows = m.rows();
    let order: Vec<usize> = match order {
        RemovalOrder::Ascending | RemovalOrder::Descending => {
            let mut idx: Vec<usize> = (0..rows.len()).collect();
            idx.sort_by_key(|&i| rows[i].code());
            if *order == RemovalOrder::Descending {
                idx.reverse();
            }
            idx
        }
        RemovalOrder::Given(perm) => {
            crate::bitcore::check_permutation(perm, rows.len())?;
            perm.clone()
        }
    };

    let mut remaining = vec![true; rows.len()];
    loop {
        let mut removed = false;
        for &i in &order {
            if remaining[i] && is_union_of_others(rows, &remaining, i) {
                remaining[i] = false;
                removed = true;
            }
        }
        if !removed {
            break;
        }
    }

    let vectors: Vec<BitRow> = rows
        .iter()
        .zip(&remaining)
        .filter(|(_, &keep)| keep)
        .map(|(r, _)| *r)
        .collect();
    let basis = Basis::new(m.width(), vectors)?;
    for (i, row) in rows.iter().enumerate() {
        decompose(row, &basis).map_err(|_| {
            Error::BasisVerificationFailed(format!("row {i} ({row}) does not decompose"))
        })?;
    }
    Ok(basis)
}

// OR of the remaining rows strictly below `rows[i]` equals `rows[i]`. The
// zero row is the empty union and always qualifies.
fn is_union_of_others(rows: &[BitRow], remaining: &[bool], i: usize) -> bool {
    let target = rows[i];
    let mut acc = 0u64;
    for (j, r) in rows.iter().enumerate() {
        if j != i && remaining[j] && r.is_subset_of(&target) {
            acc |= r.code();
        }
    }
    acc == target.code()
}

/// Selects the basis vectors contained in `row` and checks their OR is `row`.
pub fn decompose(row: &BitRow, basis: &Basis) -> Result<Decomposition> {
    if row.width() != basis.width {
        return Err(Error::WidthMismatch {
            expected: basis.width,
            found: row.width(),
        });
    }
    let indices: Vec<usize> = basis
        .vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_subset_of(row))
        .map(|(i, _)| i)
        .collect();
    let d = Decomposition { indices };
    if d.reconstruct(basis)? != *row {
        return Err(Error::NotDecomposable);
    }
    Ok(d)
}

/// Basis of a family closed under intersection and set difference.
pub fn compute_family_basis(family: &SetFamily) -> Result<Vec<BitRow>> {
    compute_basis(&family_to_matrix(family)).map(|b| b.vectors)
}

/// For an IMP-closed matrix, whether its negation is closed under both
/// conjunction and abjunction.
pub fn tilde_closure_properties(m: &BinaryMatrix) -> Result<bool> {
    if !is_closed(m, BoolOp::IMP.into()) {
        return Err(Error::PreconditionViolated(
            "rows are not closed under imp".into(),
        ));
    }
    Ok(check_basis_preconditions(&m.negate()))
}
