//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a check ran and found a violation
//! (or a search found nothing within budget), 2 on bad invocations.

use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{self, DEFAULT_BUDGET};
use crate::code::{self, CodeSpec};
use crate::dts::{self, DifferenceTriangleSet, DtsFile, Mode};
use crate::formats::{self, CodeFile, FieldSpec, ZeroStyle};
use crate::gf::GaloisField;

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "NBLDPC_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "nbldpc",
    version,
    about = "Non-binary LDPC convolutional codes from difference triangle sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the base matrix or a sliding parity-check matrix.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        /// Truncation horizon j of the sliding matrix H_j^c; base matrix if omitted.
        #[arg(long)]
        j: Option<usize>,
        /// Untruncated sliding matrix with this many block columns.
        #[arg(long, conflicts_with = "j")]
        full: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
        out: OutputFormat,
        /// Leave zero entries blank in pretty output.
        #[arg(long)]
        blank_zeros: bool,
    },
    /// Check minors and short cycles of H_j^c.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Minor sizes to check.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        minors: Vec<usize>,
        /// Cycle lengths to check.
        #[arg(long, value_delimiter = ',', default_value = "4,6")]
        cycles: Vec<usize>,
        /// Horizon j; defaults to the memory.
        #[arg(long)]
        j: Option<usize>,
        /// Validity mode the DTS must satisfy for the run to pass.
        #[arg(long, default_value = "relaxed")]
        mode: Mode,
        #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Column distances, free distance and the distance assumption check.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        /// Horizon r; defaults to the memory.
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Minimum-scope difference triangle set search.
    Search {
        /// Number of sets N.
        #[arg(long)]
        sets: usize,
        /// Set size M.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "relaxed")]
        mode: Mode,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=1))]
        min_element: u32,
        /// Largest scope to try.
        #[arg(long, default_value_t = 64)]
        budget: u32,
    },
    /// Density of the sliding matrix for messages of total length N.
    Density {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        mu: u64,
        /// Maximal message length N (a multiple of n).
        #[arg(long)]
        length: u64,
    },
    /// Field sizes guaranteeing nonzero 2x2 and 3x3 minors.
    SuggestField {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        scope: u64,
        #[arg(long)]
        w: u64,
    },
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Code description file (JSON with "n", "field" and "sets").
    #[arg(long, conflicts_with_all = ["dts", "field"])]
    pub spec: Option<String>,
    /// DTS file (JSON) or inline sets such as "1,2,6;1,2,4".
    #[arg(long, required_unless_present = "spec")]
    pub dts: Option<String>,
    /// Code length n; defaults to the number of sets plus one.
    #[arg(long)]
    pub n: Option<usize>,
    /// Field as p^N.
    #[arg(long, required_unless_present = "spec")]
    pub field: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Alist,
    Pretty,
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome {
            status: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered, true)
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn load_dts(src: &str) -> Result<DifferenceTriangleSet, String> {
    if Path::new(src).is_file() {
        let text = std::fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))?;
        let file: DtsFile = serde_json::from_str(&text).map_err(|e| format!("{src}: {e}"))?;
        Ok(file.sets)
    } else {
        DifferenceTriangleSet::parse_inline(src).map_err(|e| e.to_string())
    }
}

fn load_code(args: &CodeArgs) -> Result<CodeSpec, String> {
    let (dts, field, n) = match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let file: CodeFile = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
            (file.sets, file.field, args.n.or(file.n))
        }
        None => (
            load_dts(args.dts.as_deref().unwrap_or_default())?,
            args.field.clone().unwrap_or_default(),
            args.n,
        ),
    };
    let fs: FieldSpec = field.parse().map_err(|e: formats::FormatError| e.to_string())?;
    let field = GaloisField::new(fs.p, fs.degree).map_err(|e| e.to_string())?;
    let n = n.unwrap_or(dts.num_sets() + 1);
    CodeSpec::new(dts, Arc::new(field), n).map_err(|e| e.to_string())
}

fn execute(cmd: Command) -> Outcome {
    match execute_inner(cmd) {
        Ok(o) => o,
        Err(msg) => Outcome::usage(msg),
    }
}

fn execute_inner(cmd: Command) -> Result<Outcome, String> {
    match cmd {
        Command::Construct {
            code,
            j,
            full,
            out,
            blank_zeros,
        } => {
            let spec = load_code(&code)?;
            let m = match (j, full) {
                (Some(j), _) => spec.sliding_matrix(j),
                (None, Some(b)) => spec.full_sliding_matrix(b),
                (None, None) => spec.base_matrix().clone(),
            };
            let text = match out {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string(&m.to_json()).expect("matrix serializes");
                    s.push('\n');
                    s
                }
                OutputFormat::Alist => formats::to_alist(&m),
                OutputFormat::Pretty => {
                    let style = if blank_zeros { ZeroStyle::Blank } else { ZeroStyle::Zero };
                    let mut s = formats::render_pretty(&m, style);
                    s.push('\n');
                    s
                }
            };
            Ok(Outcome::ok(text, true))
        }
        Command::Verify {
            code,
            minors,
            cycles,
            j,
            mode,
            budget,
        } => {
            let spec = load_code(&code)?;
            let horizon = j.unwrap_or(spec.memory());
            let validation = spec.dts().validate(mode);
            let mut passed = validation.valid;
            let mut minor_reports = Vec::new();
            for size in minors {
                let r = analysis::check_minors(&spec, size, horizon, budget).map_err(|e| e.to_string())?;
                passed &= r.passed();
                minor_reports.push(r);
            }
            let mut cycle_reports = Vec::new();
            for len in cycles {
                let r = analysis::enumerate_cycles(&spec, len, horizon, budget).map_err(|e| e.to_string())?;
                passed &= r.passed();
                cycle_reports.push(r);
            }
            let params = code::min_field_params(spec.n() as u64, spec.scope() as u64, spec.weight() as u64);
            let q = spec.field().order() as u64;
            let report = json!({
                "schema": "nbldpc.verify/1",
                "n": spec.n(),
                "field": format!("{}^{}", spec.field().characteristic(), spec.field().degree()),
                "sets": spec.dts(),
                "degree": spec.degree(),
                "horizon": horizon,
                "dts": validation,
                "field_bounds": {
                    "q_2x2": params.q_2x2,
                    "n_3x3": params.n_3x3,
                    "meets_2x2": q >= params.q_2x2,
                    "meets_3x3": params.three_by_three_applies && spec.field().degree() >= params.n_3x3 && q > 2,
                },
                "minors": minor_reports,
                "cycles": cycle_reports,
                "passed": passed,
            });
            Ok(Outcome::ok(to_json(&report), passed))
        }
        Command::Distance { code, horizon, budget } => {
            let spec = load_code(&code)?;
            let horizon = horizon.unwrap_or(spec.memory());
            let profile = analysis::distance_profile(&spec, horizon, budget).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(to_json(&profile), true))
        }
        Command::Search {
            sets,
            size,
            mode,
            min_element,
            budget,
        } => match dts::search_min_scope(sets, size, mode, min_element, budget) {
            Ok(r) => {
                let report = json!({
                    "schema": "nbldpc.search/1",
                    "sets": r.dts,
                    "mode": r.mode,
                    "scope": r.scope,
                    "certificate": r.certificate,
                });
                Ok(Outcome::ok(to_json(&report), true))
            }
            Err(e @ dts::DtsError::BudgetExhausted { .. }) => Ok(Outcome {
                status: 1,
                stdout: String::new(),
                stderr: format!("{e}\n"),
            }),
            Err(e) => Err(e.to_string()),
        },
        Command::Density { n, w, mu, length } => {
            let d = code::density(n, w, mu, length).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(format!("{}/{}\n", d.numer(), d.denom()), true))
        }
        Command::SuggestField { n, scope, w } => {
            let p = code::min_field_params(n, scope, w);
            let suggested = p
                .suggested
                .map_or("none".to_string(), |(p, d)| FieldSpec { p, degree: d }.to_string());
            let mut text = format!("q_2x2={}\n", p.q_2x2);
            if p.three_by_three_applies {
                text.push_str(&format!("N_3x3={}\n", p.n_3x3));
            } else {
                text.push_str(&format!("N_3x3={} (not claimed for w < 3)\n", p.n_3x3));
            }
            text.push_str(&format!("suggested={suggested}\n"));
            Ok(Outcome::ok(text, true))
        }
    }
}
