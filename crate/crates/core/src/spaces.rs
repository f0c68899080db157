//! Row sets closed under an operator, the column-sum statistic ψ, and the
//! conjunction/abjunction counterexample families.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::bitcore::{BinaryMatrix, BitRow};
use crate::error::{Error, Result};
use crate::operators::{BoolOp, Operator};

/// True when applying `op` to any ordered pair of rows (including a row with
/// itself) yields a row of `m`. For negation, when every negated row is a row.
pub fn is_closed(m: &BinaryMatrix, op: Operator) -> bool {
    let rows = m.rows();
    match op {
        Operator::Not => rows.iter().all(|r| m.contains(&r.negate())),
        Operator::Binary(op) => {
            let mask = crate::bitcore::width_mask(m.width());
            rows.iter().all(|a| {
                rows.iter()
                    .all(|b| m.contains_code(op.apply_word(a.code(), b.code()) & mask))
            })
        }
    }
}

/// Smallest superset of `generators` closed under `op`. Generator rows come
/// first in their given order; derived rows follow in discovery order.
pub fn closure(generators: &BinaryMatrix, op: Operator) -> BinaryMatrix {
    closure_multi(generators, &[op], None).expect("closure without a row limit cannot fail")
}

/// Smallest superset of `generators` closed under every operator in `ops`.
///
/// With `limit = Some(k)`, fails with [`Error::ClosureLimitExceeded`] as soon
/// as the row count would exceed `k`.
pub fn closure_multi(
    generators: &BinaryMatrix,
    ops: &[Operator],
    limit: Option<usize>,
) -> Result<BinaryMatrix> {
    let width = generators.width();
    let mask = crate::bitcore::width_mask(width);
    let mut rows: Vec<u64> = generators.rows().iter().map(BitRow::code).collect();
    let mut seen: HashSet<u64> = rows.iter().copied().collect();
    if let Some(limit) = limit {
        if rows.len() > limit {
            return Err(Error::ClosureLimitExceeded { limit });
        }
    }

    let mut push = |code: u64, rows: &mut Vec<u64>| -> Result<()> {
        if seen.insert(code) {
            rows.push(code);
            if let Some(limit) = limit {
                if rows.len() > limit {
                    return Err(Error::ClosureLimitExceeded { limit });
                }
            }
        }
        Ok(())
    };

    // Each row is combined with every row at or before it, in both orders,
    // when it is reached; rows appended later are reached in turn.
    let mut i = 0;
    while i < rows.len() {
        let a = rows[i];
        for &op in ops {
            match op {
                Operator::Not => push(!a & mask, &mut rows)?,
                Operator::Binary(op) => {
                    for j in 0..=i {
                        let b = rows[j];
                        push(op.apply_word(a, b) & mask, &mut rows)?;
                        push(op.apply_word(b, a) & mask, &mut rows)?;
                    }
                }
            }
        }
        i += 1;
    }
    BinaryMatrix::from_codes(width, &rows)
}

/// Column-sum statistics of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiStats {
    /// Distinct column sums.
    pub psi_set: BTreeSet<usize>,
    pub max_psi: usize,
    /// Smallest column index (0-based) attaining `max_psi`.
    pub witness_column: usize,
    /// `2 · max_psi ≥ n`.
    pub frankl_holds: bool,
    pub n_rows: usize,
}

pub fn psi(m: &BinaryMatrix) -> PsiStats {
    let sums = m.column_sums();
    let max_psi = *sums.iter().max().expect("width is at least 1");
    let witness_column = sums.iter().position(|&s| s == max_psi).unwrap_or(0);
    PsiStats {
        psi_set: sums.into_iter().collect(),
        max_psi,
        witness_column,
        frankl_holds: 2 * max_psi >= m.n_rows(),
        n_rows: m.n_rows(),
    }
}

/// A matrix together with an operator its rows are closed under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    matrix: BinaryMatrix,
    op: Operator,
}

impl Space {
    pub fn new(matrix: BinaryMatrix, op: Operator) -> Result<Self> {
        if !is_closed(&matrix, op) {
            return Err(Error::PreconditionViolated(format!(
                "rows are not closed under {op}"
            )));
        }
        Ok(Space { matrix, op })
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.matrix
    }

    pub fn op(&self) -> Operator {
        self.op
    }

    /// The all-zero matrix is accepted but falls outside the non-zero
    /// hypothesis every theorem assumes.
    pub fn is_degenerate(&self) -> bool {
        !self.matrix.is_nonzero()
    }

    pub fn psi(&self) -> PsiStats {
        psi(&self.matrix)
    }
}

/// `(n+1) × n`: the identity above a zero row. Closed under AND and ABJ with
/// every column sum equal to 1.
pub fn counterexample_identity(n: usize) -> Result<BinaryMatrix> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("n must be at least 1".into()));
    }
    let mut rows = BinaryMatrix::identity(n)?.into_rows();
    rows.push(BitRow::zeros(n)?);
    BinaryMatrix::new(rows)
}

/// `(n+2) × (n+1)`: rows `(1, e_i)` for `i ≤ k`, `(0, e_i)` for `k < i ≤ n`,
/// then `(1, 0…0)` and the zero row. Closed under AND; the first column sums
/// to `k + 1` and every other column to 1.
pub fn counterexample_block(n: usize, k: usize) -> Result<BinaryMatrix> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::ParameterOutOfRange(format!(
            "need 1 ≤ k ≤ n, got n = {n}, k = {k}"
        )));
    }
    let width = n + 1;
    let head = BitRow::unit(width, 0)?;
    let mut rows = Vec::with_capacity(n + 2);
    for i in 1..=n {
        let unit = BitRow::unit(width, i)?;
        rows.push(if i <= k { unit.or(&head)? } else { unit });
    }
    rows.push(head);
    rows.push(BitRow::zeros(width)?);
    BinaryMatrix::new(rows)
}

/// True when the rows are closed under every operator in `ops`.
pub(crate) fn closed_under_all(m: &BinaryMatrix, ops: &[BoolOp]) -> bool {
    ops.iter().all(|&op| is_closed(m, op.into()))
}
