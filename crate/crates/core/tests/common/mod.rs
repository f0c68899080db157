#![allow(dead_code)]

use std::collections::BTreeSet;

use closurelab::bitcore::BinaryMatrix;
use proptest::prelude::*;

/// Distinct rows of width `1..=max_width`, between 1 and `max_rows` of them,
/// in random order.
pub fn matrix(max_width: usize, max_rows: usize) -> impl Strategy<Value = BinaryMatrix> {
    (1..=max_width).prop_flat_map(move |w| {
        let universe = 1u64 << w;
        let cap = max_rows.min(universe as usize);
        proptest::collection::btree_set(0..universe, 1..=cap)
            .prop_map(|set| set.into_iter().collect::<Vec<u64>>())
            .prop_shuffle()
            .prop_map(move |codes| BinaryMatrix::from_codes(w, &codes).unwrap())
    })
}

/// A uniformly random permutation of `0..len`.
pub fn permutation(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<usize>>()).prop_shuffle()
}

/// Rows as `0`/`1` strings.
pub fn strings(m: &BinaryMatrix) -> Vec<String> {
    m.rows().iter().map(|r| r.to_string()).collect()
}

/// Elementwise application of a truth function to two row strings.
pub fn apply_str(f: impl Fn(bool, bool) -> bool, a: &str, b: &str) -> String {
    a.chars()
        .zip(b.chars())
        .map(|(x, y)| if f(x == '1', y == '1') { '1' } else { '0' })
        .collect()
}

pub fn negate_str(a: &str) -> String {
    a.chars()
        .map(|c| if c == '1' { '0' } else { '1' })
        .collect()
}

/// Closure by definition on row strings.
pub fn closed_str(rows: &[String], f: impl Fn(bool, bool) -> bool) -> bool {
    let set: BTreeSet<&str> = rows.iter().map(String::as_str).collect();
    rows.iter().all(|a| {
        rows.iter()
            .all(|b| set.contains(apply_str(&f, a, b).as_str()))
    })
}

pub fn negation_closed_str(rows: &[String]) -> bool {
    let set: BTreeSet<&String> = rows.iter().collect();
    rows.iter().all(|a| set.contains(&negate_str(a)))
}

/// Ones in column `j`, counted from the row strings.
pub fn count_column(m: &BinaryMatrix, j: usize) -> usize {
    strings(m)
        .iter()
        .filter(|r| r.as_bytes()[j] == b'1')
        .count()
}

/// Every nonempty set of distinct rows of width `w`, as row strings.
pub fn all_families(w: usize) -> impl Iterator<Item = Vec<String>> {
    let words: Vec<String> = (0..1u32 << w).map(|c| format!("{c:0w$b}")).collect();
    (1u64..1u64 << (1u64 << w)).map(move |s| {
        words
            .iter()
            .enumerate()
            .filter(|(i, _)| s >> i & 1 == 1)
            .map(|(_, r)| r.clone())
            .collect()
    })
}

pub fn from_strings(rows: &[String]) -> BinaryMatrix {
    BinaryMatrix::from_strs(rows).unwrap()
}
