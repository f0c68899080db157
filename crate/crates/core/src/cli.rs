//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a precondition or verification fails
//! (including `check-closure` on a row set that is not closed), 2 on usage,
//! I/O or parse errors. Columns and elements are printed 1-based.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::basis::{compute_basis, decompose};
use crate::bitcore::{
    family_to_matrix, matrix_to_family, parse_bm, parse_fam, BinaryMatrix, SetFamily,
};
use crate::enumeration::{run_campaign, CampaignConfig, CampaignSummary};
use crate::equivalence::canonicalize;
use crate::error::{Error, Result};
use crate::operators::{BoolOp, Operator};
use crate::spaces::{closure_multi, counterexample_block, counterexample_identity, is_closed, psi};
use crate::witnesses::{
    conditional_witness, group_witness, negation_witness, sheffer_reduction, topology_witness,
    FranklWitness,
};

pub const DUMP_DIR_ENV: &str = "CLOSURELAB_DUMP_DIR";
pub const DEFAULT_DUMP_DIR: &str = "closurelab-reproducers";

#[derive(Debug, Parser)]
#[command(
    name = "closurelab",
    version,
    about = "Row sets closed under boolean operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format. `campaign` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileKind {
    Bm,
    Fam,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CounterexampleKind {
    Identity,
    Block,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CampaignMode {
    Exhaustive,
    Random,
}

/// Targets of the `witness` verb.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessTarget {
    Op(Operator),
    Topology,
}

fn parse_witness_target(s: &str) -> std::result::Result<WitnessTarget, String> {
    if s.eq_ignore_ascii_case("topology") {
        return Ok(WitnessTarget::Topology);
    }
    let op: Operator = s.parse().map_err(|e: Error| e.to_string())?;
    let supported = [
        BoolOp::NAND,
        BoolOp::NOR,
        BoolOp::XOR,
        BoolOp::XNOR,
        BoolOp::IMP,
    ]
    .map(Operator::from)
    .contains(&op)
        || op == Operator::Not;
    if supported {
        Ok(WitnessTarget::Op(op))
    } else {
        Err(format!(
            "no witness for `{s}`; expected not, nand, nor, xor, xnor, imp or topology"
        ))
    }
}

fn parse_operator(s: &str) -> std::result::Result<Operator, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct Input {
    /// `.bm` or `.fam` file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether the rows are closed under an operator.
    CheckClosure {
        #[arg(long, value_parser = parse_operator)]
        op: Operator,
        #[command(flatten)]
        input: Input,
    },
    /// Close the rows under one or more operators.
    Close {
        #[arg(long, value_parser = parse_operator, value_delimiter = ',', required = true)]
        op: Vec<Operator>,
        /// Fail once the closure exceeds this many rows.
        #[arg(long)]
        max_rows: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Column sums and the half-rows test.
    Psi {
        #[command(flatten)]
        input: Input,
    },
    /// Canonical representative up to row and column permutations.
    Canon {
        #[command(flatten)]
        input: Input,
    },
    /// Orthogonal basis of rows closed under AND and ABJ.
    Basis {
        #[command(flatten)]
        input: Input,
    },
    /// Certified column with at least half ones.
    Witness {
        /// not, nand, nor, xor, xnor, imp or topology.
        #[arg(value_parser = parse_witness_target)]
        target: WitnessTarget,
        #[command(flatten)]
        input: Input,
    },
    /// Families closed under AND whose columns are all below half.
    Counterexample {
        #[arg(value_enum)]
        kind: CounterexampleKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check every applicable theorem over many families.
    Campaign {
        #[arg(long)]
        width: usize,
        #[arg(long, value_enum, default_value_t = CampaignMode::Exhaustive)]
        mode: CampaignMode,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        generators: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Random mode: close every sample under these operators.
        #[arg(long, value_parser = parse_operator, value_delimiter = ',')]
        op: Vec<Operator>,
        #[arg(long)]
        max_rows: Option<usize>,
    },
    /// Convert between `.bm` and `.fam`.
    Convert {
        /// Target format; defaults to the other one.
        #[arg(long, value_enum)]
        to: Option<FileKind>,
        #[command(flatten)]
        input: Input,
    },
}

enum Loaded {
    Matrix(BinaryMatrix),
    Family(SetFamily),
}

impl Loaded {
    fn matrix(&self) -> BinaryMatrix {
        match self {
            Loaded::Matrix(m) => m.clone(),
            Loaded::Family(f) => family_to_matrix(f),
        }
    }

    fn family(&self) -> SetFamily {
        match self {
            Loaded::Matrix(m) => matrix_to_family(m),
            Loaded::Family(f) => f.clone(),
        }
    }
}

fn detect_kind(path: Option<&Path>, text: &str) -> FileKind {
    match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("fam") => FileKind::Fam,
        Some("bm") => FileKind::Bm,
        _ => {
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'));
            if first.is_some_and(|l| l.starts_with("ground")) {
                FileKind::Fam
            } else {
                FileKind::Bm
            }
        }
    }
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<Loaded> {
    let path = input.input.as_deref().filter(|p| p.as_os_str() != "-");
    let text = match path {
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
        }
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    match detect_kind(path, &text) {
        FileKind::Fam => parse_fam(&text).map(Loaded::Family),
        FileKind::Bm => parse_bm(&text).map(Loaded::Matrix),
    }
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Io(_) | Error::UnknownOperator(_) => 2,
        _ => 1,
    }
}

struct Outcome {
    text: String,
    status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn witness_output(label: &str, w: &FranklWitness, format: Format) -> String {
    let column = w.column + 1;
    match format {
        Format::Json => to_json(&json!({
            "operator": label,
            "column_or_element": column,
            "ones": w.ones,
            "n": w.total_rows,
            "verified": true,
        })),
        Format::Text => format!(
            "{label}: column {column} has {} ones in {} rows (verified)\n",
            w.ones, w.total_rows
        ),
    }
}

fn matrix_output(m: &BinaryMatrix, format: Format) -> String {
    match format {
        Format::Text => m.to_bm(),
        Format::Json => {
            let rows: Vec<String> = m.rows().iter().map(|r| r.to_string()).collect();
            to_json(&json!({ "n": m.n_rows(), "m": m.width(), "rows": rows }))
        }
    }
}

fn campaign_text(s: &CampaignSummary) -> String {
    let mut out = format!(
        "width {} ({}): {} families, {} rejected, {} equivalence classes\n",
        s.width,
        format!("{:?}", s.mode).to_lowercase(),
        s.families,
        s.rejected,
        s.equivalence_classes
    );
    for t in &s.theorems {
        out.push_str(&format!(
            "{:<20} applicable {:>6}  passed {:>6}  failed {}\n",
            t.theorem.to_string(),
            t.applicable,
            t.passed,
            t.failed
        ));
    }
    out.push_str(&format!(
        "or-closed non-zero families {}, below half in every column {}\n",
        s.conjecture.or_closed_non_zero, s.conjecture.failures
    ));
    out
}

fn dump_dir() -> PathBuf {
    std::env::var_os(DUMP_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DUMP_DIR))
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    let format = cli.format.unwrap_or(Format::Text);
    match &cli.command {
        Command::CheckClosure { op, input } => {
            let m = load(input, stdin)?.matrix();
            let closed = is_closed(&m, *op);
            let text = match format {
                Format::Json => to_json(&json!({
                    "operator": op.to_string(),
                    "closed": closed,
                    "n": m.n_rows(),
                    "m": m.width(),
                })),
                Format::Text => {
                    format!("closed under {op}: {}\n", if closed { "yes" } else { "no" })
                }
            };
            Ok(Outcome {
                text,
                status: if closed { 0 } else { 1 },
            })
        }
        Command::Close {
            op,
            max_rows,
            input,
        } => {
            let m = load(input, stdin)?.matrix();
            let closed = closure_multi(&m, op, *max_rows)?;
            Ok(Outcome::ok(matrix_output(&closed, format)))
        }
        Command::Psi { input } => {
            let m = load(input, stdin)?.matrix();
            let p = psi(&m);
            let text = match format {
                Format::Json => to_json(&json!({
                    "psi": p.psi_set,
                    "max": p.max_psi,
                    "frankl": p.frankl_holds,
                    "witness_column": p.witness_column + 1,
                    "n": p.n_rows,
                    "m": m.width(),
                })),
                Format::Text => {
                    let set: Vec<String> = p.psi_set.iter().map(|v| v.to_string()).collect();
                    format!(
                        "psi = {{{}}}\nmax = {} (column {})\nn = {}\n2 * max >= n: {}\n",
                        set.join(", "),
                        p.max_psi,
                        p.witness_column + 1,
                        p.n_rows,
                        p.frankl_holds
                    )
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Canon { input } => {
            let m = load(input, stdin)?.matrix();
            let form = canonicalize(&m)?;
            let text = match format {
                Format::Text => form.matrix.to_bm(),
                Format::Json => {
                    let rows: Vec<String> =
                        form.matrix.rows().iter().map(|r| r.to_string()).collect();
                    let one_based = |p: &[usize]| p.iter().map(|i| i + 1).collect::<Vec<_>>();
                    to_json(&json!({
                        "rows": rows,
                        "row_perm": one_based(&form.row_perm),
                        "col_perm": one_based(&form.col_perm),
                    }))
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Basis { input } => {
            let m = load(input, stdin)?.matrix();
            let basis = compute_basis(&m)?;
            let text = match format {
                Format::Text => basis.vectors().iter().map(|v| format!("{v}\n")).collect(),
                Format::Json => {
                    let vectors: Vec<String> =
                        basis.vectors().iter().map(|v| v.to_string()).collect();
                    let decompositions = m
                        .rows()
                        .iter()
                        .map(|r| {
                            decompose(r, &basis).map(|d| d.indices.iter().map(|i| i + 1).collect())
                        })
                        .collect::<Result<Vec<Vec<usize>>>>()?;
                    to_json(&json!({ "basis": vectors, "decompositions": decompositions }))
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Witness { target, input } => {
            let loaded = load(input, stdin)?;
            let (label, w) = match *target {
                WitnessTarget::Topology => {
                    ("topology".to_string(), topology_witness(&loaded.family())?)
                }
                WitnessTarget::Op(op) => {
                    let m = loaded.matrix();
                    let w = match op {
                        Operator::Not => negation_witness(&m)?,
                        Operator::Binary(b) if b == BoolOp::NAND || b == BoolOp::NOR => {
                            sheffer_reduction(&m, b)?
                        }
                        Operator::Binary(b) if b == BoolOp::XOR || b == BoolOp::XNOR => {
                            group_witness(&m, b)?
                        }
                        Operator::Binary(_) => conditional_witness(&m)?,
                    };
                    (op.to_string(), w)
                }
            };
            Ok(Outcome::ok(witness_output(&label, &w, format)))
        }
        Command::Counterexample { kind, n, k } => {
            let m = match kind {
                CounterexampleKind::Identity => counterexample_identity(*n)?,
                CounterexampleKind::Block => {
                    let k =
                        k.ok_or_else(|| Error::ParameterOutOfRange("block needs --k".into()))?;
                    counterexample_block(*n, k)?
                }
            };
            Ok(Outcome::ok(matrix_output(&m, format)))
        }
        Command::Campaign {
            width,
            mode,
            samples,
            generators,
            seed,
            jobs,
            op,
            max_rows,
        } => {
            let mut cfg = match mode {
                CampaignMode::Exhaustive => CampaignConfig::exhaustive(*width),
                CampaignMode::Random => {
                    let seed = seed.ok_or_else(|| {
                        Error::ParameterOutOfRange("random mode needs --seed".into())
                    })?;
                    let mut cfg = CampaignConfig::random(*width, *samples, *generators, seed);
                    if !op.is_empty() {
                        cfg.ops = Some(op.clone());
                    }
                    cfg
                }
            };
            if let Some(limit) = max_rows {
                cfg.max_rows = *limit;
            }
            cfg.parallelism = *jobs;
            cfg.dump_dir = Some(dump_dir());
            let summary = run_campaign(&cfg)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => summary.to_json() + "\n",
                Format::Text => campaign_text(&summary),
            };
            let status = if summary.conjecture.failures > 0 {
                1
            } else {
                0
            };
            Ok(Outcome { text, status })
        }
        Command::Convert { to, input } => {
            let loaded = load(input, stdin)?;
            let target = to.unwrap_or(match loaded {
                Loaded::Matrix(_) => FileKind::Fam,
                Loaded::Family(_) => FileKind::Bm,
            });
            let text = match target {
                FileKind::Bm => loaded.matrix().to_bm(),
                FileKind::Fam => loaded.family().to_fam(),
            };
            Ok(Outcome::ok(text))
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return status;
        }
    };

    let outcome = match execute(&cli, stdin) {
        Ok(outcome) => outcome,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let Error::TheoremFailed {
                dump: Some(path), ..
            } = &e
            {
                let _ = writeln!(stderr, "reproducer written to {}", path.display());
            }
            return exit_code(&e);
        }
    };

    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(outcome.text.as_bytes())
            .map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    outcome.status
}
