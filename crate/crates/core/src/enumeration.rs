//! Verification campaigns over many row sets.
//!
//! Exhaustive mode walks every nonempty subset of `{0,1}^m` for `m ≤ 4`:
//! subset `s` (a `2^m`-bit integer) is the matrix whose rows are the codes of
//! the set bits of `s`, ascending. Random mode closes seeded random generator
//! rows under a hypothesis operator. Every family is classified by closure
//! under all seventeen operators, and each theorem whose hypothesis holds is
//! run through its witness routine.
//!
//! Work is split into a fixed number of contiguous chunks and merged in chunk
//! order, so the summary does not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::tilde_closure_properties;
use crate::bitcore::{matrix_to_family, BinaryMatrix};
use crate::equivalence::{canonicalize, CANON_WIDTH_CAP};
use crate::error::{Error, Result};
use crate::operators::{BoolOp, Operator};
use crate::spaces::{closure_multi, is_closed, psi, PsiStats};
use crate::witnesses::{
    complement_count_consistent, conditional_witness, group_witness, imp_implies_or_closed,
    negation_witness, sheffer_reduction, topology_witness,
};

pub const EXHAUSTIVE_WIDTH_CAP: usize = 4;
pub const RANDOM_WIDTH_CAP: usize = CANON_WIDTH_CAP;
const CHUNKS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub width: usize,
    pub mode: Mode,
    pub sample_count: usize,
    pub generator_count: usize,
    pub seed: Option<u64>,
    pub parallelism: usize,
    /// Random mode: closures growing past this many rows are rejected.
    pub max_rows: usize,
    /// Random mode: close every sample under these operators instead of
    /// cycling through the theorem hypotheses.
    pub ops: Option<Vec<Operator>>,
    /// Where reproducers are written when a theorem check fails.
    pub dump_dir: Option<PathBuf>,
}

impl CampaignConfig {
    pub fn exhaustive(width: usize) -> Self {
        CampaignConfig {
            width,
            mode: Mode::Exhaustive,
            sample_count: 0,
            generator_count: 0,
            seed: None,
            parallelism: 1,
            max_rows: usize::MAX,
            ops: None,
            dump_dir: None,
        }
    }

    pub fn random(width: usize, samples: usize, generators: usize, seed: u64) -> Self {
        CampaignConfig {
            width,
            mode: Mode::Random,
            sample_count: samples,
            generator_count: generators,
            seed: Some(seed),
            parallelism: 1,
            max_rows: 256,
            ops: None,
            dump_dir: None,
        }
    }

    pub fn with_parallelism(mut self, jobs: usize) -> Self {
        self.parallelism = jobs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 {
            return Err(Error::WidthCapExceeded {
                width: 0,
                cap: EXHAUSTIVE_WIDTH_CAP,
            });
        }
        if self.parallelism == 0 {
            return Err(Error::ParameterOutOfRange(
                "parallelism must be at least 1".into(),
            ));
        }
        match self.mode {
            Mode::Exhaustive if self.width > EXHAUSTIVE_WIDTH_CAP => Err(Error::WidthCapExceeded {
                width: self.width,
                cap: EXHAUSTIVE_WIDTH_CAP,
            }),
            Mode::Random if self.width > RANDOM_WIDTH_CAP => Err(Error::WidthCapExceeded {
                width: self.width,
                cap: RANDOM_WIDTH_CAP,
            }),
            Mode::Random if self.seed.is_none() => Err(Error::ParameterOutOfRange(
                "random mode needs a seed".into(),
            )),
            Mode::Random if self.generator_count == 0 => Err(Error::ParameterOutOfRange(
                "random mode needs at least one generator".into(),
            )),
            _ => Ok(()),
        }
    }

    fn unit_count(&self) -> u64 {
        match self.mode {
            Mode::Exhaustive => (1u64 << (1u64 << self.width)) - 1,
            Mode::Random => self.sample_count as u64,
        }
    }
}

/// The statements checked on each family, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    NegationLemma,
    NandReduction,
    NorReduction,
    XnorProposition,
    XorProposition,
    TopologyTheorem,
    TildePreconditions,
    ComplementCount,
    ConditionalTheorem,
    ImpImpliesOr,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::NegationLemma,
        Theorem::NandReduction,
        Theorem::NorReduction,
        Theorem::XnorProposition,
        Theorem::XorProposition,
        Theorem::TopologyTheorem,
        Theorem::TildePreconditions,
        Theorem::ComplementCount,
        Theorem::ConditionalTheorem,
        Theorem::ImpImpliesOr,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        f.write_str(v.as_str().unwrap_or("theorem"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail(String),
}

/// Classification of one family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    /// Hash of the canonical form; equal for equivalent matrices.
    pub matrix_id: u64,
    pub n: usize,
    pub m: usize,
    /// Bit `op.index()` is set when the rows are closed under `op`.
    pub closed_under: u32,
    pub psi: PsiStats,
    /// Only theorems whose hypothesis holds appear.
    pub theorem_checks: BTreeMap<Theorem, CheckOutcome>,
    /// For OR-closed non-zero families, whether some column is at least half
    /// ones.
    pub conjecture: Option<bool>,
}

impl ClosureReport {
    pub fn is_closed_under(&self, op: Operator) -> bool {
        self.closed_under >> op.index() & 1 == 1
    }
}

/// Closure mask computed with [`is_closed`].
pub fn closure_mask(m: &BinaryMatrix) -> u32 {
    Operator::all()
        .filter(|&op| is_closed(m, op))
        .fold(0, |acc, op| acc | 1 << op.index())
}

pub fn classify(m: &BinaryMatrix) -> Result<ClosureReport> {
    classify_with_mask(m, closure_mask(m))
}

fn outcome<T>(r: Result<T>, ok: impl FnOnce(T) -> bool, what: &str) -> CheckOutcome {
    match r.map(ok) {
        Ok(true) => CheckOutcome::Pass,
        Ok(false) => CheckOutcome::Fail(format!("{what} returned false")),
        Err(e) => CheckOutcome::Fail(e.to_string()),
    }
}

fn classify_with_mask(m: &BinaryMatrix, closed_under: u32) -> Result<ClosureReport> {
    let closed = |op: Operator| closed_under >> op.index() & 1 == 1;
    let bin = |op: BoolOp| closed(op.into());
    let nonzero = m.is_nonzero();
    let mut checks = BTreeMap::new();

    if nonzero {
        if closed(Operator::Not) {
            checks.insert(
                Theorem::NegationLemma,
                outcome(negation_witness(m), |_| true, ""),
            );
        }
        if bin(BoolOp::NAND) {
            let r = sheffer_reduction(m, BoolOp::NAND);
            checks.insert(Theorem::NandReduction, outcome(r, |_| true, ""));
        }
        if bin(BoolOp::NOR) {
            let r = sheffer_reduction(m, BoolOp::NOR);
            checks.insert(Theorem::NorReduction, outcome(r, |_| true, ""));
        }
        if bin(BoolOp::XNOR) {
            let r = group_witness(m, BoolOp::XNOR);
            checks.insert(Theorem::XnorProposition, outcome(r, |_| true, ""));
        }
        if bin(BoolOp::XOR) {
            let r = group_witness(m, BoolOp::XOR);
            checks.insert(Theorem::XorProposition, outcome(r, |_| true, ""));
        }
        if bin(BoolOp::OR) && bin(BoolOp::AND) {
            let r = topology_witness(&matrix_to_family(m));
            checks.insert(Theorem::TopologyTheorem, outcome(r, |_| true, ""));
        }
        if bin(BoolOp::IMP) {
            let r = tilde_closure_properties(m);
            checks.insert(
                Theorem::TildePreconditions,
                outcome(r, |v| v, "tilde closure"),
            );
            let r = conditional_witness(m);
            checks.insert(Theorem::ConditionalTheorem, outcome(r, |_| true, ""));
            let r = imp_implies_or_closed(m);
            checks.insert(Theorem::ImpImpliesOr, outcome(r, |v| v, "or closure"));
        }
        let consistent = complement_count_consistent(m);
        checks.insert(
            Theorem::ComplementCount,
            outcome(Ok(consistent), |v| v, "complement count"),
        );
    }

    let stats = psi(m);
    let conjecture = (nonzero && bin(BoolOp::OR)).then_some(stats.frankl_holds);
    Ok(ClosureReport {
        matrix_id: matrix_id(m)?,
        n: m.n_rows(),
        m: m.width(),
        closed_under,
        psi: stats,
        theorem_checks: checks,
        conjecture,
    })
}

/// FNV-1a over the canonical form.
pub fn matrix_id(m: &BinaryMatrix) -> Result<u64> {
    let canon = canonicalize(m)?.matrix;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    feed(canon.width() as u64);
    feed(canon.n_rows() as u64);
    for r in canon.rows() {
        feed(r.code());
    }
    Ok(h)
}

/// Operator lookup tables over the codes of one small width.
struct OpTables {
    width: usize,
    binary: Vec<[u8; 256]>,
    not: [u8; 16],
}

impl OpTables {
    fn new(width: usize) -> Self {
        debug_assert!(width <= EXHAUSTIVE_WIDTH_CAP);
        let size = 1usize << width;
        let mask = (size - 1) as u64;
        let binary = BoolOp::all()
            .map(|op| {
                let mut t = [0u8; 256];
                for a in 0..size {
                    for b in 0..size {
                        t[a * 16 + b] = (op.apply_word(a as u64, b as u64) & mask) as u8;
                    }
                }
                t
            })
            .collect();
        let mut not = [0u8; 16];
        for (a, slot) in not.iter_mut().enumerate().take(size) {
            *slot = (!(a as u64) & mask) as u8;
        }
        OpTables { width, binary, not }
    }

    fn closed_mask(&self, family: u64) -> u32 {
        let codes: Vec<usize> = (0..1usize << self.width)
            .filter(|&c| family >> c & 1 == 1)
            .collect();
        let has = |c: u8| family >> c & 1 == 1;
        let mut mask = 0u32;
        for (op, table) in self.binary.iter().enumerate() {
            let closed = codes
                .iter()
                .all(|&a| codes.iter().all(|&b| has(table[a * 16 + b])));
            if closed {
                mask |= 1 << op;
            }
        }
        if codes.iter().all(|&a| has(self.not[a])) {
            mask |= 1 << Operator::Not.index();
        }
        mask
    }
}

/// The family encoded by subset index `index` of `{0,1}^width`.
pub fn family_from_index(width: usize, index: u64) -> Result<BinaryMatrix> {
    let codes: Vec<u64> = (0..1u64 << width)
        .filter(|&c| index >> c & 1 == 1)
        .collect();
    BinaryMatrix::from_codes(width, &codes)
}

/// Hypotheses random mode cycles through when no operator set is given.
pub fn default_hypotheses() -> Vec<Vec<Operator>> {
    use Operator::Binary as B;
    vec![
        vec![Operator::Not],
        vec![B(BoolOp::NAND)],
        vec![B(BoolOp::NOR)],
        vec![B(BoolOp::XOR)],
        vec![B(BoolOp::XNOR)],
        vec![B(BoolOp::IMP)],
        vec![B(BoolOp::OR), B(BoolOp::AND)],
        vec![B(BoolOp::OR)],
        vec![B(BoolOp::AND)],
    ]
}

/// Closure under `ops` of `generators` distinct rows drawn uniformly from
/// `{0,1}^width`.
pub fn random_space<R: Rng>(
    rng: &mut R,
    width: usize,
    generators: usize,
    ops: &[Operator],
    max_rows: usize,
) -> Result<BinaryMatrix> {
    if width == 0 || width > RANDOM_WIDTH_CAP {
        return Err(Error::WidthCapExceeded {
            width,
            cap: RANDOM_WIDTH_CAP,
        });
    }
    let universe = 1u64 << width;
    let g = (generators as u64).clamp(1, universe) as usize;
    let mut seen = HashSet::with_capacity(g);
    let mut codes = Vec::with_capacity(g);
    while codes.len() < g {
        let c = rng.random_range(0..universe);
        if seen.insert(c) {
            codes.push(c);
        }
    }
    let gens = BinaryMatrix::from_codes(width, &codes)?;
    closure_multi(&gens, ops, Some(max_rows))
}

fn sample(
    cfg: &CampaignConfig,
    hypotheses: &[Vec<Operator>],
    index: u64,
) -> Result<Option<BinaryMatrix>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or_default());
    rng.set_stream(index);
    let ops = &hypotheses[(index % hypotheses.len() as u64) as usize];
    match random_space(&mut rng, cfg.width, cfg.generator_count, ops, cfg.max_rows) {
        Ok(m) => Ok(Some(m)),
        Err(Error::ClosureLimitExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn hypotheses_for(cfg: &CampaignConfig) -> Vec<Vec<Operator>> {
    match &cfg.ops {
        Some(ops) => vec![ops.clone()],
        None => default_hypotheses(),
    }
}

/// Every family of the campaign, in order. Random mode skips rejected samples.
pub fn enumerate_families(
    cfg: &CampaignConfig,
) -> Result<Box<dyn Iterator<Item = BinaryMatrix> + Send>> {
    cfg.validate()?;
    let width = cfg.width;
    match cfg.mode {
        Mode::Exhaustive => {
            Ok(Box::new((1..=cfg.unit_count()).map(move |s| {
                family_from_index(width, s).expect("valid index")
            })))
        }
        Mode::Random => {
            let cfg = cfg.clone();
            let hypotheses = hypotheses_for(&cfg);
            Ok(Box::new((0..cfg.unit_count()).filter_map(move |i| {
                sample(&cfg, &hypotheses, i).expect("validated config")
            })))
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OperatorCount {
    pub operator: Option<Operator>,
    pub closed: usize,
    /// Families closed under the operator whose largest column sum is below
    /// half the rows. The all-zero family counts here.
    pub frankl_failures: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremCount {
    pub theorem: Theorem,
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ConjectureCount {
    pub or_closed_non_zero: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub width: usize,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub generators: Option<usize>,
    pub families: usize,
    pub rejected: usize,
    pub non_zero_families: usize,
    pub equivalence_classes: usize,
    pub operators: Vec<OperatorCount>,
    pub theorems: Vec<TheoremCount>,
    pub theorem_failures: usize,
    pub conjecture: ConjectureCount,
}

impl CampaignSummary {
    pub fn theorem(&self, t: Theorem) -> &TheoremCount {
        &self.theorems[t.index()]
    }

    pub fn operator(&self, op: Operator) -> &OperatorCount {
        &self.operators[op.index()]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

struct Failure {
    theorem: String,
    message: String,
    matrix: BinaryMatrix,
    matrix_id: u64,
}

#[derive(Default)]
struct Partial {
    families: usize,
    rejected: usize,
    non_zero: usize,
    closed: [usize; Operator::COUNT],
    frankl_failures: [usize; Operator::COUNT],
    applicable: [usize; Theorem::ALL.len()],
    passed: [usize; Theorem::ALL.len()],
    conjecture: ConjectureCount,
    ids: BTreeSet<u64>,
    failure: Option<Failure>,
}

impl Partial {
    fn absorb(&mut self, m: &BinaryMatrix, report: &ClosureReport) {
        self.families += 1;
        self.non_zero += m.is_nonzero() as usize;
        self.ids.insert(report.matrix_id);
        for op in Operator::all() {
            if report.is_closed_under(op) {
                self.closed[op.index()] += 1;
                self.frankl_failures[op.index()] += !report.psi.frankl_holds as usize;
            }
        }
        for (t, result) in &report.theorem_checks {
            self.applicable[t.index()] += 1;
            match result {
                CheckOutcome::Pass => self.passed[t.index()] += 1,
                CheckOutcome::Fail(message) => {
                    if self.failure.is_none() {
                        self.failure = Some(Failure {
                            theorem: t.to_string(),
                            message: message.clone(),
                            matrix: m.clone(),
                            matrix_id: report.matrix_id,
                        });
                    }
                }
            }
        }
        if let Some(holds) = report.conjecture {
            self.conjecture.or_closed_non_zero += 1;
            self.conjecture.failures += !holds as usize;
        }
    }

    fn merge(&mut self, other: Partial) {
        self.families += other.families;
        self.rejected += other.rejected;
        self.non_zero += other.non_zero;
        for i in 0..Operator::COUNT {
            self.closed[i] += other.closed[i];
            self.frankl_failures[i] += other.frankl_failures[i];
        }
        for i in 0..Theorem::ALL.len() {
            self.applicable[i] += other.applicable[i];
            self.passed[i] += other.passed[i];
        }
        self.conjecture.or_closed_non_zero += other.conjecture.or_closed_non_zero;
        self.conjecture.failures += other.conjecture.failures;
        self.ids.extend(other.ids);
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }
}

fn run_chunk(
    cfg: &CampaignConfig,
    hypotheses: &[Vec<Operator>],
    range: std::ops::Range<u64>,
) -> Result<Partial> {
    let mut part = Partial::default();
    let tables = (cfg.mode == Mode::Exhaustive).then(|| OpTables::new(cfg.width));
    for unit in range {
        let (m, report) = match &tables {
            Some(tables) => {
                let index = unit + 1;
                let m = family_from_index(cfg.width, index)?;
                let report = classify_with_mask(&m, tables.closed_mask(index))?;
                (m, report)
            }
            None => match sample(cfg, hypotheses, unit)? {
                Some(m) => {
                    let report = classify(&m)?;
                    (m, report)
                }
                None => {
                    part.rejected += 1;
                    continue;
                }
            },
        };
        part.absorb(&m, &report);
        if part.failure.is_some() {
            break;
        }
    }
    Ok(part)
}

/// Writes `matrix` as a `.bm` file annotated with the failing check.
pub fn dump_reproducer(
    dir: &Path,
    theorem: &str,
    message: &str,
    matrix: &BinaryMatrix,
    id: u64,
) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{theorem}-{id:016x}.bm"));
    let mut text = format!("# {theorem} failed\n");
    for line in message.lines() {
        text.push_str(&format!("# {line}\n"));
    }
    text.push_str(&matrix.to_bm());
    std::fs::write(&path, text)?;
    Ok(path)
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignSummary> {
    cfg.validate()?;
    let total = cfg.unit_count();
    let chunk_len = total.div_ceil(CHUNKS).max(1);
    let ranges: Vec<std::ops::Range<u64>> = (0..total)
        .step_by(chunk_len as usize)
        .map(|start| start..(start + chunk_len).min(total))
        .collect();
    let hypotheses = hypotheses_for(cfg);

    let parts: Vec<Result<Partial>> = if cfg.parallelism == 1 {
        ranges
            .into_iter()
            .map(|r| run_chunk(cfg, &hypotheses, r))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .map_err(|e| Error::ParameterOutOfRange(e.to_string()))?;
        pool.install(|| {
            ranges
                .into_par_iter()
                .map(|r| run_chunk(cfg, &hypotheses, r))
                .collect()
        })
    };

    let mut total_part = Partial::default();
    for part in parts {
        total_part.merge(part?);
        if total_part.failure.is_some() {
            break;
        }
    }

    if let Some(f) = total_part.failure {
        let dump = match &cfg.dump_dir {
            Some(dir) => Some(dump_reproducer(
                dir,
                &f.theorem,
                &f.message,
                &f.matrix,
                f.matrix_id,
            )?),
            None => None,
        };
        return Err(Error::TheoremFailed {
            theorem: f.theorem,
            reproducer: format!("# {}\n{}", f.message, f.matrix.to_bm()),
            dump,
        });
    }

    let p = total_part;
    let operators = Operator::all()
        .map(|op| OperatorCount {
            operator: Some(op),
            closed: p.closed[op.index()],
            frankl_failures: p.frankl_failures[op.index()],
        })
        .collect();
    let theorems = Theorem::ALL
        .iter()
        .map(|&t| TheoremCount {
            theorem: t,
            applicable: p.applicable[t.index()],
            passed: p.passed[t.index()],
            failed: p.applicable[t.index()] - p.passed[t.index()],
            not_applicable: p.families - p.applicable[t.index()],
        })
        .collect::<Vec<_>>();
    let random = cfg.mode == Mode::Random;
    Ok(CampaignSummary {
        width: cfg.width,
        mode: cfg.mode,
        seed: cfg.seed.filter(|_| random),
        samples: random.then_some(cfg.sample_count),
        generators: random.then_some(cfg.generator_count),
        families: p.families,
        rejected: p.rejected,
        non_zero_families: p.non_zero,
        equivalence_classes: p.ids.len(),
        theorem_failures: theorems.iter().map(|t| t.failed).sum(),
        operators,
        theorems,
        conjecture: p.conjecture,
    })
}
