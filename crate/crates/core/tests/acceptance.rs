//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! status 1 if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use closurelab::basis::{
    compute_basis_with_order, decompose, tilde_closure_properties, RemovalOrder,
};
use closurelab::bitcore::{parse_bm, BinaryMatrix};
use closurelab::enumeration::{
    random_space, run_campaign, CampaignConfig, CampaignSummary, Theorem,
};
use closurelab::operators::{tilde_op, BoolOp, Operator};
use closurelab::spaces::{counterexample_block, counterexample_identity, is_closed, psi};
use closurelab::witnesses::conditional_witness;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

/// Column sums counted from the printed rows.
fn recount(m: &BinaryMatrix) -> Vec<usize> {
    let mut sums = vec![0; m.width()];
    for line in m.to_bm().lines() {
        for (j, c) in line.chars().enumerate() {
            sums[j] += (c == '1') as usize;
        }
    }
    sums
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let m = parse_bm("0000\n1000\n1100\n0111\n1111\n").map_err(|e| e.to_string())?;
    let p = psi(&m);
    let elapsed = start.elapsed();

    ensure(p.psi_set == BTreeSet::from([2, 3]), || {
        format!("psi = {:?}", p.psi_set)
    })?;
    ensure(p.max_psi == 3 && p.frankl_holds, || {
        format!("max {} frankl {}", p.max_psi, p.frankl_holds)
    })?;
    ensure(2 * p.max_psi >= m.n_rows(), || "2 * max < n".into())?;
    ensure(recount(&m) == vec![3, 3, 2, 2], || {
        format!("recount {:?}", recount(&m))
    })?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("psi = {{2, 3}}, 2*3 >= 5 ({elapsed:?})"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut identity = Vec::new();
    for n in 2..=10 {
        let m = counterexample_identity(n).map_err(|e| e.to_string())?;
        let closed = is_closed(&m, BoolOp::ABJ.into()) && is_closed(&m, BoolOp::AND.into());
        identity.push((n, m.clone(), closed, psi(&m)));
    }
    let mut blocks = Vec::new();
    for n in 1..=8 {
        for k in 1..=n {
            let m = counterexample_block(n, k).map_err(|e| e.to_string())?;
            let closed = is_closed(&m, BoolOp::AND.into());
            blocks.push((n, k, m.clone(), closed, psi(&m)));
        }
    }
    let shown = counterexample_block(5, 2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    for (n, m, closed, p) in &identity {
        ensure(*closed, || {
            format!("identity n = {n} not closed under abj and and")
        })?;
        ensure(p.max_psi == 1 && 2 * p.max_psi < n + 1, || {
            format!("identity n = {n}: max {}", p.max_psi)
        })?;
        ensure(!p.frankl_holds, || {
            format!("identity n = {n}: frankl holds")
        })?;
        ensure(recount(m).iter().all(|&s| s == 1), || {
            format!("identity n = {n}: recount")
        })?;
    }
    for (n, k, m, closed, p) in &blocks {
        ensure(*closed, || format!("block ({n}, {k}) not closed under and"))?;
        ensure(p.max_psi == k + 1, || {
            format!("block ({n}, {k}): max {}", p.max_psi)
        })?;
        ensure(recount(m).into_iter().max() == Some(k + 1), || {
            format!("block ({n}, {k}): recount")
        })?;
    }
    let displayed = [
        "110000", "101000", "000100", "000010", "000001", "100000", "000000",
    ];
    let rows: Vec<String> = shown.rows().iter().map(|r| r.to_string()).collect();
    ensure(rows == displayed, || format!("(5, 2) rows {rows:?}"))?;
    let p = psi(&shown);
    ensure(p.max_psi == 3 && 2 * 3 < 7, || {
        format!("(5, 2) max {}", p.max_psi)
    })?;
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!(
        "9 identity and 36 block matrices, (5, 2) matches row for row ({elapsed:?})"
    ))
}

const SWEPT: [Theorem; 10] = Theorem::ALL;

fn check_sweep(s: &CampaignSummary, expected_families: usize) -> Result<(), String> {
    ensure(s.families == expected_families, || {
        format!("{} families", s.families)
    })?;
    ensure(s.theorem_failures == 0, || {
        format!("{} theorem failures", s.theorem_failures)
    })?;
    for t in SWEPT {
        let c = s.theorem(t);
        ensure(c.failed == 0 && c.passed == c.applicable, || {
            format!("{t}: {c:?}")
        })?;
        ensure(c.applicable > 0 || s.width < 2, || {
            format!("{t} never applicable at width {}", s.width)
        })?;
    }
    Ok(())
}

fn criterion_3_and_4() -> (Check, Check) {
    let m3 = run_campaign(&CampaignConfig::exhaustive(3));
    let start = Instant::now();
    let m4 = run_campaign(&CampaignConfig::exhaustive(4));
    let elapsed = start.elapsed();
    let small: Vec<_> = (1..=2)
        .map(|w| run_campaign(&CampaignConfig::exhaustive(w)))
        .collect();

    let sweep = (|| {
        let m3 = m3.as_ref().map_err(|e| e.to_string())?;
        let m4 = m4.as_ref().map_err(|e| e.to_string())?;
        check_sweep(m3, 255)?;
        check_sweep(m4, 65535)?;
        within(elapsed, Duration::from_secs(60))?;
        let applicable: usize = SWEPT.iter().map(|&t| m4.theorem(t).applicable).sum();
        Ok(format!("255 + 65535 families, {applicable} checks at width 4, 0 failures (width 4 in {elapsed:?})"))
    })();

    let conjecture = (|| {
        let mut checked = 0;
        for s in small.iter().chain([&m3, &m4]) {
            let s = s.as_ref().map_err(|e| e.to_string())?;
            ensure(s.conjecture.failures == 0, || {
                format!("width {}: {:?}", s.width, s.conjecture)
            })?;
            checked += s.conjecture.or_closed_non_zero;
        }
        Ok(format!("{checked} union-closed non-zero families at widths 1..=4, every one has a column with 2*ones >= n"))
    })();
    (sweep, conjecture)
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let imp = [Operator::from(BoolOp::IMP)];
    for trial in 0..1000 {
        let width = 1 + trial % 8;
        let gens = rng.random_range(1..=4);
        let m = random_space(&mut rng, width, gens, &imp, 1 << width).map_err(|e| e.to_string())?;
        let ctx = || format!("trial {trial}:\n{}", m.to_bm());

        ensure(tilde_closure_properties(&m) == Ok(true), || {
            format!("tilde preconditions, {}", ctx())
        })?;
        let tilde = m.negate();
        let asc = compute_basis_with_order(&tilde, &RemovalOrder::Ascending)
            .map_err(|e| format!("{e}, {}", ctx()))?;
        let desc = compute_basis_with_order(&tilde, &RemovalOrder::Descending)
            .map_err(|e| format!("{e}, {}", ctx()))?;
        ensure(asc.sorted_vectors() == desc.sorted_vectors(), || {
            format!("basis sets differ, {}", ctx())
        })?;

        // How many subsets of the basis OR to each value.
        let v = asc.vectors();
        let mut ors: HashMap<u64, usize> = HashMap::new();
        for subset in 0u64..1 << v.len() {
            let or = (0..v.len())
                .filter(|i| subset >> i & 1 == 1)
                .fold(0, |acc, i| acc | v[i].code());
            *ors.entry(or).or_default() += 1;
        }
        for r in tilde.rows() {
            ensure(ors.get(&r.code()) == Some(&1), || {
                format!("row {r} not uniquely decomposable, {}", ctx())
            })?;
            let d = decompose(r, &asc).map_err(|e| format!("{e}, {}", ctx()))?;
            ensure(d.reconstruct(&asc).ok() == Some(*r), || {
                format!("row {r} misdecomposed, {}", ctx())
            })?;
        }

        let w = conditional_witness(&m).map_err(|e| format!("{e}, {}", ctx()))?;
        let ones = recount(&m)[w.column];
        ensure(ones == w.ones && 2 * ones >= m.n_rows(), || {
            format!("witness recount {ones}, {}", ctx())
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "1000 seeded implication-closed spaces of width 1..=8 ({elapsed:?})"
    ))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    for op in BoolOp::all() {
        let t = tilde_op(op);
        for a in [false, true] {
            for b in [false, true] {
                ensure(t.eval(!a, !b) == !op.eval(a, b), || {
                    format!("{op} at ({a}, {b})")
                })?;
            }
        }
        ensure(tilde_op(t) == op, || {
            format!("tilde of {op} is not an involution")
        })?;
    }
    // Over tilde rows the dual of implication is the converse abjunction.
    let dual = tilde_op(BoolOp::IMP);
    for a in [false, true] {
        for b in [false, true] {
            ensure(dual.eval(a, b) == (!a && b), || {
                format!("dual of imp at ({a}, {b})")
            })?;
        }
    }
    let m = parse_bm("0110\n1011\n1111\n0010\n").map_err(|e| e.to_string())?;
    for a in m.rows() {
        for b in m.rows() {
            let lhs = dual
                .apply(&a.negate(), &b.negate())
                .map_err(|e| e.to_string())?;
            let rhs = a
                .negate()
                .negate()
                .and(&b.negate())
                .map_err(|e| e.to_string())?;
            let direct = BoolOp::IMP.apply(a, b).map_err(|e| e.to_string())?.negate();
            ensure(lhs == rhs && lhs == direct, || format!("rows {a}, {b}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!(
        "16 operators x 4 bit pairs, involution, dual of imp is cabj ({elapsed:?})"
    ))
}

fn criterion_7() -> Check {
    let one = run_campaign(&CampaignConfig::exhaustive(3))
        .map_err(|e| e.to_string())?
        .to_json();
    let eight = run_campaign(&CampaignConfig::exhaustive(3).with_parallelism(8))
        .map_err(|e| e.to_string())?
        .to_json();
    ensure(one.as_bytes() == eight.as_bytes(), || {
        "summaries differ".into()
    })?;
    Ok(format!(
        "1 and 8 workers give identical {}-byte summaries",
        one.len()
    ))
}

fn main() -> ExitCode {
    let (c3, c4) = criterion_3_and_4();
    let results = [
        (
            "1",
            "column sums of the five-row union-closed example",
            criterion_1(),
        ),
        (
            "2",
            "conjunction and abjunction counterexamples",
            criterion_2(),
        ),
        ("3", "exhaustive theorem sweep at widths 3 and 4", c3),
        (
            "4",
            "half-column property of union-closed families up to width 4",
            c4,
        ),
        (
            "5",
            "basis suite on random implication-closed spaces",
            criterion_5(),
        ),
        ("6", "tilde operator algebra", criterion_6()),
        (
            "7",
            "campaign determinism across worker counts",
            criterion_7(),
        ),
    ];
    let mut failed = 0;
    for (id, name, result) in &results {
        match result {
            Ok(detail) => println!("PASS [{id}] {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{id}] {name}: {reason}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
