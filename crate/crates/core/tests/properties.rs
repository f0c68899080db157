mod common;

use std::collections::BTreeSet;

use closurelab::basis::{
    check_basis_preconditions, compute_basis_with_order, decompose, RemovalOrder,
};
use closurelab::bitcore::{
    family_to_matrix, matrix_to_family, parse_bm, parse_fam, BinaryMatrix, BitRow,
};
use closurelab::equivalence::{are_equivalent, canonicalize, canonicalize_exhaustive, permute};
use closurelab::operators::{BoolOp, Operator};
use closurelab::spaces::{closure, closure_multi, is_closed, psi};
use closurelab::witnesses::{
    conditional_witness, group_witness, imp_implies_or_closed, negation_witness, sheffer_reduction,
    topology_witness, FranklWitness,
};
use closurelab::Error;
use common::*;
use proptest::prelude::*;

fn op_strategy() -> impl Strategy<Value = BoolOp> {
    (0u8..16).prop_map(|t| BoolOp::from_table(t).unwrap())
}

fn closed_space(
    ops: &'static [Operator],
    max_width: usize,
    max_gens: usize,
) -> impl Strategy<Value = BinaryMatrix> {
    matrix(max_width, max_gens).prop_map(move |g| closure_multi(&g, ops, None).unwrap())
}

fn assert_recount(m: &BinaryMatrix, w: &FranklWitness) {
    let ones = count_column(m, w.column);
    assert_eq!(ones, w.ones);
    assert_eq!(w.total_rows, m.n_rows());
    assert!(
        2 * ones >= m.n_rows(),
        "column {} has {ones} of {}",
        w.column,
        m.n_rows()
    );
}

const NOT: &[Operator] = &[Operator::Not];
const NAND: &[Operator] = &[Operator::Binary(BoolOp::NAND)];
const NOR: &[Operator] = &[Operator::Binary(BoolOp::NOR)];
const XOR: &[Operator] = &[Operator::Binary(BoolOp::XOR)];
const XNOR: &[Operator] = &[Operator::Binary(BoolOp::XNOR)];
const IMP: &[Operator] = &[Operator::Binary(BoolOp::IMP)];
const AND_ABJ: &[Operator] = &[Operator::Binary(BoolOp::AND), Operator::Binary(BoolOp::ABJ)];
const OR_AND: &[Operator] = &[Operator::Binary(BoolOp::OR), Operator::Binary(BoolOp::AND)];

proptest! {
    #[test]
    fn family_and_matrix_are_inverse(m in matrix(10, 24)) {
        let f = matrix_to_family(&m);
        prop_assert_eq!(family_to_matrix(&f), m.clone());
        prop_assert_eq!(matrix_to_family(&family_to_matrix(&f)), f.clone());
        prop_assert_eq!(parse_fam(&f.to_fam()).unwrap(), f);
        prop_assert_eq!(parse_bm(&m.to_bm()).unwrap(), m);
    }

    #[test]
    fn ones_and_zeros_fill_each_column(m in matrix(12, 30)) {
        for j in 0..m.width() {
            let zeros = strings(&m).iter().filter(|r| r.as_bytes()[j] == b'0').count();
            prop_assert_eq!(m.column_sum(j).unwrap() + zeros, m.n_rows());
        }
    }

    #[test]
    fn repeated_rows_are_rejected(
        codes in proptest::collection::vec(0u64..16, 1..12),
        pick in any::<prop::sample::Index>(),
    ) {
        let mut rows: Vec<BitRow> = codes.iter().map(|&c| BitRow::new(4, c).unwrap()).collect();
        rows.push(rows[pick.index(rows.len())]);
        let rejected = matches!(BinaryMatrix::new(rows), Err(Error::DuplicateRow { .. }));
        prop_assert!(rejected);
    }

    #[test]
    fn apply_is_pointwise(op in op_strategy(), w in 1usize..=64, a in any::<u64>(), b in any::<u64>()) {
        let mask = if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
        let (ra, rb) = (BitRow::new(w, a & mask).unwrap(), BitRow::new(w, b & mask).unwrap());
        let got = op.apply(&ra, &rb).unwrap().to_string();
        let expected = apply_str(|x, y| op.eval(x, y), &ra.to_string(), &rb.to_string());
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn tilde_op_acts_on_negated_rows(op in op_strategy(), w in 1usize..=16, a in 0u64..1 << 16, b in 0u64..1 << 16) {
        let mask = (1u64 << w) - 1;
        let (ra, rb) = (BitRow::new(w, a & mask).unwrap(), BitRow::new(w, b & mask).unwrap());
        let lhs = op.tilde().apply(&ra.negate(), &rb.negate()).unwrap();
        prop_assert_eq!(lhs, op.apply(&ra, &rb).unwrap().negate());
    }

    #[test]
    fn closure_is_closed_and_idempotent(g in matrix(6, 4), op in op_strategy()) {
        let c = closure(&g, op.into());
        prop_assert!(closed_str(&strings(&c), |x, y| op.eval(x, y)));
        prop_assert!(is_closed(&c, op.into()));
        prop_assert!(closure(&c, op.into()).same_row_set(&c));
        prop_assert_eq!(&c.rows()[..g.n_rows()], g.rows());
    }

    #[test]
    fn psi_ignores_permutations(
        (m, rp, cp) in matrix(8, 20).prop_flat_map(|m| {
            let (n, w) = (m.n_rows(), m.width());
            (Just(m), permutation(n), permutation(w))
        })
    ) {
        let p = permute(&m, &rp, &cp).unwrap();
        prop_assert_eq!(psi(&p).psi_set, psi(&m).psi_set);
        prop_assert_eq!(psi(&p).max_psi, psi(&m).max_psi);
        for op in Operator::all() {
            prop_assert_eq!(is_closed(&p, op), is_closed(&m, op));
            prop_assert_eq!(is_closed(&m.permute_rows(&rp).unwrap(), op), is_closed(&m, op));
        }
    }

    #[test]
    fn canonical_form_absorbs_permutations(
        (m, perms) in matrix(7, 14).prop_flat_map(|m| {
            let (n, w) = (m.n_rows(), m.width());
            (Just(m), proptest::collection::vec((permutation(n), permutation(w)), 100))
        })
    ) {
        let form = canonicalize(&m).unwrap();
        prop_assert_eq!(form.reproduce(&m).unwrap(), form.matrix.clone());
        for (rp, cp) in perms {
            let p = permute(&m, &rp, &cp).unwrap();
            prop_assert_eq!(&canonicalize(&p).unwrap().matrix, &form.matrix);
            prop_assert!(are_equivalent(&m, &p).unwrap());
        }
    }

    #[test]
    fn branch_and_bound_matches_exhaustive(m in matrix(7, 20)) {
        prop_assert_eq!(canonicalize(&m).unwrap().matrix, canonicalize_exhaustive(&m).unwrap().matrix);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn basis_is_unique_orthogonal_and_decomposes(g in matrix(8, 4), probes in proptest::collection::vec(0u64..256, 8)) {
        let m = closure_multi(&g, AND_ABJ, None).unwrap();
        prop_assert!(check_basis_preconditions(&m));
        let asc = compute_basis_with_order(&m, &RemovalOrder::Ascending).unwrap();
        let desc = compute_basis_with_order(&m, &RemovalOrder::Descending).unwrap();
        prop_assert_eq!(asc.sorted_vectors(), desc.sorted_vectors());

        // Oracle: the nonzero rows with no other nonzero row below them.
        let rows = strings(&m);
        let minimal: BTreeSet<String> = rows
            .iter()
            .filter(|r| r.contains('1'))
            .filter(|r| {
                !rows.iter().any(|s| {
                    s != *r && s.contains('1') && apply_str(|x, y| x && y, s, r) == **s
                })
            })
            .cloned()
            .collect();
        let got: BTreeSet<String> = asc.vectors().iter().map(|v| v.to_string()).collect();
        prop_assert_eq!(got, minimal);

        for (i, u) in asc.vectors().iter().enumerate() {
            for v in &asc.vectors()[i + 1..] {
                prop_assert!(u.and(v).unwrap().is_zero());
            }
        }
        for r in m.rows() {
            let d = decompose(r, &asc).unwrap();
            prop_assert_eq!(d.reconstruct(&asc).unwrap(), *r);
        }
        let mask = (1u64 << m.width()) - 1;
        for p in probes {
            let probe = BitRow::new(m.width(), p & mask).unwrap();
            match decompose(&probe, &asc) {
                Ok(d) => prop_assert_eq!(d.reconstruct(&asc).unwrap(), probe),
                Err(e) => prop_assert_eq!(e, Error::NotDecomposable),
            }
        }
    }
}

proptest! {
    #[test]
    fn negation_closed_columns_are_exactly_half(m in closed_space(NOT, 8, 4)) {
        let n = m.n_rows();
        prop_assert_eq!(n % 2, 0);
        for j in 0..m.width() {
            prop_assert_eq!(2 * count_column(&m, j), n);
        }
        assert_recount(&m, &negation_witness(&m).unwrap());
    }

    #[test]
    fn sheffer_closure_gives_negation_closure(m in closed_space(NAND, 6, 3), k in closed_space(NOR, 6, 3)) {
        for (space, op) in [(&m, BoolOp::NAND), (&k, BoolOp::NOR)] {
            prop_assert!(negation_closed_str(&strings(space)));
            assert_recount(space, &sheffer_reduction(space, op).unwrap());
        }
    }

    #[test]
    fn group_closures(x in closed_space(XOR, 8, 3), y in closed_space(XNOR, 8, 3)) {
        let w = x.width();
        prop_assert!(strings(&x).contains(&"0".repeat(w)));
        if x.is_nonzero() {
            assert_recount(&x, &group_witness(&x, BoolOp::XOR).unwrap());
        }
        let w = y.width();
        prop_assert!(strings(&y).contains(&"1".repeat(w)));
        prop_assert!(closed_str(&strings(&y.negate()), |a, b| a != b));
        assert_recount(&y, &group_witness(&y, BoolOp::XNOR).unwrap());
    }

    #[test]
    fn implication_closure_consequences(m in closed_space(IMP, 8, 4)) {
        let w = m.width();
        prop_assert!(strings(&m).contains(&"1".repeat(w)));
        prop_assert!(closed_str(&strings(&m), |a, b| a || b));
        prop_assert!(imp_implies_or_closed(&m).unwrap());
        let t = strings(&m.negate());
        prop_assert!(closed_str(&t, |a, b| a && b));
        prop_assert!(closed_str(&t, |a, b| a && !b));
        assert_recount(&m, &conditional_witness(&m).unwrap());
    }

    #[test]
    fn topology_element_is_in_half_the_members(m in closed_space(OR_AND, 7, 4)) {
        let f = matrix_to_family(&m);
        match topology_witness(&f) {
            Ok(w) => {
                let members = f.element_lists();
                let hits = members.iter().filter(|s| s.contains(&(w.column + 1))).count();
                prop_assert!(2 * hits >= members.len());
                assert_recount(&m, &w);
            }
            Err(e) => {
                prop_assert_eq!(e, Error::AllEmpty);
                prop_assert!(!m.is_nonzero());
            }
        }
    }
}
