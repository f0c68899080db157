//! Equivalence of matrices up to row and column permutations.
//!
//! The canonical representative of a matrix is the lexicographically smallest
//! row-sorted matrix reachable by permuting columns, comparing rows as binary
//! numbers from the top down. It is found by a depth-first search that fixes
//! one output column at a time and prunes any branch whose lower bound is not
//! below the best complete matrix seen so far.

use crate::bitcore::{BinaryMatrix, BitRow};
use crate::error::{Error, Result};

/// Widths above this are rejected by [`canonicalize`].
pub const CANON_WIDTH_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub matrix: BinaryMatrix,
    /// Canonical row `i` is input row `row_perm[i]` (after column permutation).
    pub row_perm: Vec<usize>,
    /// Canonical column `j` is input column `col_perm[j]`.
    pub col_perm: Vec<usize>,
}

impl CanonicalForm {
    /// Reapplies the recorded permutations to `input`.
    pub fn reproduce(&self, input: &BinaryMatrix) -> Result<BinaryMatrix> {
        input
            .permute_columns(&self.col_perm)?
            .permute_rows(&self.row_perm)
    }
}

struct Search<'a> {
    width: usize,
    // columns[c] is bit i set when row i has a one in column c
    columns: Vec<Vec<bool>>,
    rows: &'a [BitRow],
    // swappable[c][d]: exchanging columns c and d maps the row set to itself
    swappable: Vec<Vec<bool>>,
    best: Option<Vec<u64>>,
    best_perm: Vec<usize>,
}

impl Search<'_> {
    /// Lower bound on every completion of a prefix. Rows sharing a prefix have
    /// pairwise distinct suffixes, so the r-th row of a group has suffix ≥ r.
    fn lower_bound(&self, prefixes: &[u64], depth: usize) -> Vec<u64> {
        let shift = self.width - depth;
        let mut sorted = prefixes.to_vec();
        sorted.sort_unstable();
        let mut out = Vec::with_capacity(sorted.len());
        let mut rank = 0u64;
        for (i, &p) in sorted.iter().enumerate() {
            rank = if i > 0 && sorted[i - 1] == p {
                rank + 1
            } else {
                0
            };
            let base = if shift >= 64 { 0 } else { p << shift };
            out.push(base | rank);
        }
        out
    }

    fn descend(&mut self, prefixes: &[u64], perm: &mut Vec<usize>, used: &mut [bool]) {
        let depth = perm.len();
        if depth == self.width {
            let mut full = prefixes.to_vec();
            full.sort_unstable();
            if self.best.as_ref().is_none_or(|b| full < *b) {
                self.best = Some(full);
                self.best_perm = perm.clone();
            }
            return;
        }

        let mut children: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
        for c in 0..self.width {
            if used[c] {
                continue;
            }
            // A row-set automorphism that only moves unused columns makes the
            // two subtrees identical.
            if (0..c).any(|d| !used[d] && self.swappable[d][c]) {
                continue;
            }
            let next: Vec<u64> = prefixes
                .iter()
                .zip(&self.columns[c])
                .map(|(&p, &b)| (p << 1) | b as u64)
                .collect();
            let bound = self.lower_bound(&next, depth + 1);
            children.push((bound, c, next));
        }
        children.sort();

        for (bound, c, next) in children {
            if let Some(best) = &self.best {
                if bound >= *best {
                    break;
                }
            }
            used[c] = true;
            perm.push(c);
            self.descend(&next, perm, used);
            perm.pop();
            used[c] = false;
        }
    }
}

fn finish(m: &BinaryMatrix, col_perm: Vec<usize>) -> Result<CanonicalForm> {
    let permuted = m.permute_columns(&col_perm)?;
    let mut row_perm: Vec<usize> = (0..m.n_rows()).collect();
    row_perm.sort_by_key(|&i| permuted.rows()[i].code());
    let matrix = permuted.permute_rows(&row_perm)?;
    Ok(CanonicalForm {
        matrix,
        row_perm,
        col_perm,
    })
}

pub fn canonicalize(m: &BinaryMatrix) -> Result<CanonicalForm> {
    let width = m.width();
    if width > CANON_WIDTH_CAP {
        return Err(Error::WidthCapExceeded {
            width,
            cap: CANON_WIDTH_CAP,
        });
    }
    let columns = (0..width)
        .map(|j| m.column(j))
        .collect::<Result<Vec<_>>>()?;
    let mut swappable = vec![vec![false; width]; width];
    for c in 0..width {
        for d in c + 1..width {
            let mut perm: Vec<usize> = (0..width).collect();
            perm.swap(c, d);
            let ok = columns[c] == columns[d]
                || m.rows()
                    .iter()
                    .all(|r| r.permute_columns(&perm).is_ok_and(|p| m.contains(&p)));
            swappable[c][d] = ok;
            swappable[d][c] = ok;
        }
    }
    let mut search = Search {
        width,
        columns,
        rows: m.rows(),
        swappable,
        best: None,
        best_perm: Vec::new(),
    };
    let zero_prefixes = vec![0u64; search.rows.len()];
    let mut used = vec![false; width];
    search.descend(&zero_prefixes, &mut Vec::with_capacity(width), &mut used);
    finish(m, search.best_perm)
}

/// Same result as [`canonicalize`] by trying every column permutation.
/// Limited to width 8.
pub fn canonicalize_exhaustive(m: &BinaryMatrix) -> Result<CanonicalForm> {
    const CAP: usize = 8;
    let width = m.width();
    if width > CAP {
        return Err(Error::WidthCapExceeded { width, cap: CAP });
    }
    let mut perm: Vec<usize> = (0..width).collect();
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    loop {
        let mut codes: Vec<u64> = m
            .rows()
            .iter()
            .map(|r| r.permute_columns(&perm).map(|r| r.code()))
            .collect::<Result<_>>()?;
        codes.sort_unstable();
        if best.as_ref().is_none_or(|(b, _)| codes < *b) {
            best = Some((codes, perm.clone()));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (_, col_perm) = best.expect("at least one permutation");
    finish(m, col_perm)
}

/// Advances `perm` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm
        .iter()
        .rposition(|&x| x > perm[i])
        .expect("pivot has a successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// `a ∼ b`: equal up to row and column permutations. Matrices of different
/// shape are never equivalent.
pub fn are_equivalent(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<bool> {
    if a.width() != b.width() || a.n_rows() != b.n_rows() {
        return Ok(false);
    }
    Ok(canonicalize(a)?.matrix == canonicalize(b)?.matrix)
}

/// Applies a row permutation and then a column permutation.
pub fn permute(m: &BinaryMatrix, row_perm: &[usize], col_perm: &[usize]) -> Result<BinaryMatrix> {
    m.permute_rows(row_perm)?.permute_columns(col_perm)
}
