//! Certified Frankl witnesses.
//!
//! Each function takes a row set satisfying one closure hypothesis, rebuilds
//! the counting argument that shows some column is at least half ones (the
//! pairing or injection between the rows with a one and the rows with a zero
//! in a chosen column), checks every step, and returns the column. Before
//! returning, the count is redone from the raw matrix.

use std::collections::HashSet;

use serde::Serialize;

use crate::basis::{compute_basis, decompose, Decomposition};
use crate::bitcore::{family_to_matrix, BinaryMatrix, BitRow, SetFamily};
use crate::error::{Error, Result};
use crate::operators::{BoolOp, Operator};
use crate::spaces::is_closed;

/// A column (0-based) whose count of ones is at least half the row count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FranklWitness {
    pub column: usize,
    pub ones: usize,
    pub total_rows: usize,
}

impl FranklWitness {
    /// Recounts column `column` of `m` and checks `2 · ones ≥ n`.
    pub fn certify(m: &BinaryMatrix, column: usize) -> Result<Self> {
        let ones = m.column(column)?.into_iter().filter(|&b| b).count();
        let total_rows = m.n_rows();
        if 2 * ones < total_rows {
            return Err(Error::WitnessFailed(format!(
                "column {column} has {ones} ones out of {total_rows} rows"
            )));
        }
        Ok(FranklWitness {
            column,
            ones,
            total_rows,
        })
    }
}

fn precondition(m: &BinaryMatrix, op: Operator) -> Result<()> {
    if !is_closed(m, op) {
        return Err(Error::PreconditionViolated(format!(
            "rows are not closed under {op}"
        )));
    }
    Ok(())
}

fn fail(msg: impl Into<String>) -> Error {
    Error::WitnessFailed(msg.into())
}

/// Rows closed under negation pair off through negation inside every column,
/// so `n` is even and every column holds exactly `n/2` ones.
pub fn negation_witness(m: &BinaryMatrix) -> Result<FranklWitness> {
    precondition(m, Operator::Not)?;
    let n = m.n_rows();

    let (k, l): (Vec<&BitRow>, Vec<&BitRow>) = m.rows().iter().partition(|r| r.bit(0));
    // Negation maps K into L and L into K; being an involution, it is a
    // bijection between them.
    for r in &k {
        let neg = r.negate();
        if neg.bit(0) || !m.contains(&neg) {
            return Err(fail(format!("negation of {r} is not a zero-led row")));
        }
    }
    for r in &l {
        let neg = r.negate();
        if !neg.bit(0) || !m.contains(&neg) {
            return Err(fail(format!("negation of {r} is not a one-led row")));
        }
    }
    if k.len() != l.len() || !n.is_multiple_of(2) {
        return Err(fail(format!(
            "unbalanced split |K| = {}, |L| = {}",
            k.len(),
            l.len()
        )));
    }
    for (j, sum) in m.column_sums().into_iter().enumerate() {
        if 2 * sum != n {
            return Err(fail(format!(
                "column {j} has {sum} ones, expected {}",
                n / 2
            )));
        }
    }
    FranklWitness::certify(m, 0)
}

/// NAND or NOR closure gives negation closure through `A op A = ¬A`.
pub fn sheffer_reduction(m: &BinaryMatrix, op: BoolOp) -> Result<FranklWitness> {
    if op != BoolOp::NAND && op != BoolOp::NOR {
        return Err(Error::ParameterOutOfRange(format!(
            "expected nand or nor, got {op}"
        )));
    }
    precondition(m, op.into())?;
    for r in m.rows() {
        let diag = op.apply(r, r)?;
        if diag != r.negate() || !m.contains(&diag) {
            return Err(fail(format!("{r} {op} {r} is not the negation of {r}")));
        }
    }
    negation_witness(m)
}

/// XOR or XNOR closure makes the rows a group in which every element is its
/// own inverse. Translating by a fixed row injects the zero-side of a column
/// into its one-side.
pub fn group_witness(m: &BinaryMatrix, op: BoolOp) -> Result<FranklWitness> {
    if op != BoolOp::XOR && op != BoolOp::XNOR {
        return Err(Error::ParameterOutOfRange(format!(
            "expected xor or xnor, got {op}"
        )));
    }
    precondition(m, op.into())?;
    if !m.is_nonzero() {
        return Err(Error::PreconditionViolated("matrix is all zero".into()));
    }

    let rows = m.rows();
    let identity = op.apply(&rows[0], &rows[0])?;
    let expected = if op == BoolOp::XOR {
        BitRow::zeros(m.width())?
    } else {
        BitRow::ones(m.width())?
    };
    if identity != expected || !m.contains(&identity) {
        return Err(Error::GroupAxiomFailed(format!(
            "identity {identity} is not {expected}"
        )));
    }
    for a in rows {
        if op.apply(a, a)? != identity {
            return Err(Error::GroupAxiomFailed(format!("{a} is not self-inverse")));
        }
        if op.apply(&identity, a)? != *a {
            return Err(Error::GroupAxiomFailed(format!(
                "{identity} does not fix {a}"
            )));
        }
    }

    // Under XNOR any column works; under XOR any column that is not all zero.
    let column = match op {
        BoolOp::XNOR => 0,
        _ => (0..m.width())
            .find(|&j| rows.iter().any(|r| r.bit(j)))
            .expect("non-zero matrix has a non-zero column"),
    };
    let (k, l): (Vec<&BitRow>, Vec<&BitRow>) = rows.iter().partition(|r| r.bit(column));
    if let Some(&first_l) = l.first() {
        let pivot = if op == BoolOp::XNOR {
            *first_l
        } else {
            **k.first().ok_or_else(|| fail("empty one-side under xor"))?
        };
        let mut image = HashSet::with_capacity(l.len());
        for x in &l {
            let y = op.apply(&pivot, x)?;
            if !y.bit(column) || !m.contains(&y) {
                return Err(fail(format!("translate of {x} left the one-side")));
            }
            image.insert(y);
        }
        if image.len() != l.len() || l.len() > k.len() {
            return Err(fail("translation is not injective"));
        }
    }
    FranklWitness::certify(m, column)
}

/// For a family closed under union and intersection, the smallest nonempty
/// member `B` (fewest elements, then lexicographically least) is either
/// contained in or disjoint from every member, and `A ↦ A ∪ B` injects the
/// members missing `B` into those containing it. Returns the least element of
/// `B` as a 0-based column.
pub fn topology_witness(family: &SetFamily) -> Result<FranklWitness> {
    let m = family_to_matrix(family);
    if !is_closed(&m, BoolOp::OR.into()) || !is_closed(&m, BoolOp::AND.into()) {
        return Err(Error::PreconditionViolated(
            "family is not closed under union and intersection".into(),
        ));
    }
    let b = m
        .rows()
        .iter()
        .filter(|r| !r.is_zero())
        .min_by(|x, y| {
            x.count_ones()
                .cmp(&y.count_ones())
                .then(x.elements().cmp(&y.elements()))
        })
        .copied()
        .ok_or(Error::AllEmpty)?;

    let mut k = Vec::new();
    let mut l = Vec::new();
    for a in m.rows() {
        if b.is_subset_of(a) {
            k.push(*a);
        } else if b.is_orthogonal_to(a) {
            l.push(*a);
        } else {
            return Err(fail(format!("{a} neither contains nor avoids {b}")));
        }
    }
    let mut image = HashSet::with_capacity(l.len());
    for a in &l {
        let joined = a.or(&b)?;
        if !m.contains(&joined) || !b.is_subset_of(&joined) {
            return Err(fail(format!("{a} ∪ {b} is not a member containing {b}")));
        }
        image.insert(joined);
    }
    if image.len() != l.len() || l.len() > k.len() {
        return Err(fail("union map is not injective"));
    }

    let element = b.ones_columns().next().expect("b is nonzero");
    let w = FranklWitness::certify(&m, element)?;
    if w.ones != k.len() {
        return Err(fail(format!(
            "element count {} differs from |K| = {}",
            w.ones,
            k.len()
        )));
    }
    Ok(w)
}

/// Witness for a matrix closed under material implication.
///
/// The negated matrix is closed under conjunction and abjunction, so it has a
/// basis. Rows of the negated matrix whose decomposition uses the first basis
/// vector `v` inject, via `x ↦ x ∧ ¬v`, into the rows that do not. Hence `v`'s
/// first column is at most half ones in the negated matrix and at least half
/// ones in the original.
pub fn conditional_witness(m: &BinaryMatrix) -> Result<FranklWitness> {
    precondition(m, BoolOp::IMP.into())?;
    if !m.is_nonzero() {
        return Err(Error::PreconditionViolated("matrix is all zero".into()));
    }
    let n = m.n_rows();
    let tilde = m.negate();
    let basis = compute_basis(&tilde).map_err(|e| match e {
        Error::PreconditionViolated(msg) => fail(format!("negated rows: {msg}")),
        other => other,
    })?;

    // Only the zero row is left in the negated matrix, so the original is the
    // single all-ones row.
    let Some(&v1) = basis.vectors().first() else {
        if n != 1 {
            return Err(fail("empty basis for more than one row"));
        }
        return FranklWitness::certify(m, 0);
    };

    let decomps: Vec<(BitRow, Decomposition)> = tilde
        .rows()
        .iter()
        .map(|r| decompose(r, &basis).map(|d| (*r, d)))
        .collect::<Result<_>>()?;
    let (k, l): (Vec<_>, Vec<_>) = decomps.iter().partition(|(_, d)| d.contains(0));

    let l_rows: HashSet<BitRow> = l.iter().map(|(r, _)| *r).collect();
    let mut image = HashSet::with_capacity(k.len());
    for (x, _) in &k {
        let y = x.and_not(&v1)?;
        if !l_rows.contains(&y) {
            return Err(fail(format!(
                "{x} ∧ ¬{v1} = {y} is not a row avoiding {v1}"
            )));
        }
        image.insert(y);
    }
    if image.len() != k.len() || 2 * k.len() > n {
        return Err(fail("removal of the first basis vector is not injective"));
    }

    let column = v1.ones_columns().next().expect("basis vectors are nonzero");
    let tilde_ones = tilde.column_sum(column)?;
    if tilde_ones != k.len() {
        return Err(fail(format!(
            "column {column} of the negation has {tilde_ones} ones, |K| = {}",
            k.len()
        )));
    }
    // A column is at most half ones in the negation exactly when it is at
    // least half ones in the original.
    let ones = n - tilde_ones;
    if 2 * tilde_ones > n || 2 * ones < n {
        return Err(fail("complement count does not flip"));
    }
    let w = FranklWitness::certify(m, column)?;
    if w.ones != ones {
        return Err(fail(format!(
            "recount {} differs from n − |K| = {ones}",
            w.ones
        )));
    }
    Ok(w)
}

/// Checks that IMP closure forces OR closure. Also checks the intermediate
/// fact that `¬A ∧ ¬B` is a row of the negated matrix for all rows `A, B`.
pub fn imp_implies_or_closed(m: &BinaryMatrix) -> Result<bool> {
    precondition(m, BoolOp::IMP.into())?;
    let tilde = m.negate();
    let intermediate = m.rows().iter().all(|a| {
        m.rows()
            .iter()
            .all(|b| tilde.contains(&a.negate().and(&b.negate()).expect("same width")))
    });
    let or_closed = is_closed(m, BoolOp::OR.into());
    if intermediate != or_closed {
        return Err(fail(
            "negated-conjunction membership disagrees with OR closure",
        ));
    }
    Ok(or_closed)
}

/// For every column, `2·ones ≥ n` in `m` exactly when `2·ones ≤ n` in `¬m`.
pub fn complement_count_consistent(m: &BinaryMatrix) -> bool {
    let n = m.n_rows();
    let tilde = m.negate();
    m.column_sums()
        .into_iter()
        .zip(tilde.column_sums())
        .all(|(s, t)| (2 * s >= n) == (2 * t <= n))
}
