mod input;
mod output;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use seifert_core::batch::{verify_batch, BatchConfig, BatchRow};
use seifert_core::invariants::{
    casson_walker, compute_report_with, conjecture_gap, poincare_coefficients, verify_identity_with,
};
use seifert_core::plumbing::{to_plumbing, PlumbingGraph};
use seifert_core::torsion::{torsion_at_one_with, torsion_table, SpincStructure};
use seifert_core::{build_group, ExecMode, GroupElement, Rational, SeifertData};

use input::{parse_input, InputError};
use output::{Doc, Format, Table};

#[derive(Parser)]
#[command(name = "seifert", version, about = "Exact invariants of Seifert rational homology spheres with e < 0")]
struct Cli {
    /// Output format; defaults to csv for batch-verify and json otherwise.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Keep all work on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// JSON input file; stdin when absent or "-".
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Echo the normalized Seifert invariants and derived scalars.
    Normalize(InputArg),
    /// Full invariant report.
    Invariants(InputArg),
    /// Torsion at t = 1 for one spin^c structure, or for all of them.
    Torsion {
        #[command(flatten)]
        input: InputArg,
        /// Exponents a0,a1,...,a_nu of h_sigma = g0^a0 ... g_nu^a_nu.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "all")]
        spinc: Option<Vec<BigInt>>,
        /// One row per element of H, plus the sum.
        #[arg(long)]
        all: bool,
    },
    /// Plumbing graph (DOT unless --format is given).
    Plumbing(InputArg),
    /// Poincare series coefficients of the graded ring.
    Poincare {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 20)]
        terms: u64,
    },
    /// Check the identity; exits 1 when the two sides differ.
    Verify(InputArg),
    /// sw^0(sigma_can) - (K^2 + #V)/8 - p_g for a given geometric genus.
    Conjecture {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, allow_negative_numbers = true)]
        pg: BigInt,
    },
    /// Run every check on random manifolds; exits 1 on any failure.
    BatchVerify {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_alpha: u64,
        #[arg(long, default_value_t = 5)]
        max_arms: usize,
        #[arg(long, default_value_t = 5000)]
        h_cap: u64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Math(#[from] seifert_core::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(InputError::Math(e)) | CliError::Math(e) if !e.is_input_error() => 3,
            _ => 2,
        }
    }
}

fn read_input(arg: &InputArg) -> Result<SeifertData, CliError> {
    let text = match arg.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(parse_input(&text)?)
}

fn q(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn z(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn pairs_json(s: &SeifertData) -> Value {
    s.pairs().iter().map(|(a, w)| json!([z(a), z(w)])).collect()
}

fn pairs_text(s: &SeifertData) -> String {
    s.pairs().iter().map(|(a, w)| format!("({a},{w})")).collect::<Vec<_>>().join(" ")
}

fn data_doc(s: &SeifertData) -> Doc {
    Doc::default()
        .field("b", z(s.b()))
        .field("pairs", pairs_json(s))
        .field("e", q(s.e()))
        .field("chi", q(s.chi_m()))
        .field("alpha", z(s.alpha_lcm()))
        .field("o", z(s.o()))
        .field("h_order", z(s.h_order()))
}

fn word_text(h: &GroupElement) -> String {
    let parts: Vec<String> = h
        .word()
        .iter()
        .enumerate()
        .filter(|(_, a)| a != &&BigInt::from(0))
        .map(|(i, a)| if a == &BigInt::from(1) { format!("g{i}") } else { format!("g{i}^{a}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn coords_text(h: &GroupElement) -> String {
    let c: Vec<String> = h.coords().iter().map(u64::to_string).collect();
    format!("({})", c.join(","))
}

fn plumbing_doc(p: &PlumbingGraph, format: Option<Format>) -> Option<Doc> {
    let neighbors = |v: usize| -> String {
        let mut n: Vec<String> = p
            .edges()
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .map(|x| x.to_string())
            .collect();
        n.sort();
        n.join(" ")
    };
    match format {
        None => None,
        Some(Format::Json) => Some(
            Doc::default()
                .field("weights", p.weights().iter().map(z).collect::<Value>())
                .field("edges", p.edges().iter().map(|&(a, b)| json!([a, b])).collect::<Value>())
                .field("dot", p.to_dot()),
        ),
        Some(_) => {
            Some(
                Doc::default().with_table(Table {
                    key: "vertices",
                    headers: vec!["vertex", "weight", "neighbors"],
                    rows: (0..p.num_vertices())
                        .map(|v| vec![v.to_string(), p.weights()[v].to_string(), neighbors(v)])
                        .collect(),
                }),
            )
        }
    }
}

fn batch_row(r: &BatchRow) -> Vec<String> {
    vec![
        r.index.to_string(),
        r.data.b().to_string(),
        pairs_text(&r.data),
        r.data.h_order().to_string(),
        r.identity.lhs.to_string(),
        r.identity.rhs.to_string(),
        r.identity.verdict.to_string(),
        r.torsion_paths_agree().to_string(),
        r.k2_paths_agree().to_string(),
        r.det_matches().to_string(),
        r.gap.to_string(),
        r.passed().to_string(),
    ]
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let mode = if cli.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let format = cli.format;
    let mut status = ExitCode::SUCCESS;
    let doc = match &cli.command {
        Command::Normalize(arg) => data_doc(&read_input(arg)?),
        Command::Invariants(arg) => {
            let s = read_input(arg)?;
            let r = compute_report_with(&s, mode)?;
            let g = build_group(&s)?;
            data_doc(&s)
                .field("group", g.divisors().iter().map(|d| Value::String(d.to_string())).collect::<Value>())
                .field("lambda", q(&r.lambda))
                .field("k2_plus_v", q(&r.k2_plus_v_formula))
                .field("k2_plus_v_graph", q(&r.k2_plus_v_graph))
                .field("dp", z(&r.dp))
                .field("torsion_can", q(&r.torsion_can))
                .field("torsion_closed_form", q(&r.torsion_closed_form))
                .field("sw0_can", q(&r.sw0_can))
                .field("theta", q(&r.theta))
                .field("constant_e", q(&r.constant_e))
                .field("identity", json!({"lhs": q(&r.identity.lhs), "rhs": q(&r.identity.rhs), "verdict": verdict(r.identity.verdict)}))
        }
        Command::Torsion { input, spinc, all } => {
            let s = read_input(input)?;
            let g = build_group(&s)?;
            if *all {
                let table = torsion_table(&s, &g, mode)?;
                let sum: Rational = table.iter().map(|(_, v)| v).sum();
                if sum != Rational::from_integer(BigInt::from(0)) {
                    return Err(seifert_core::Error::Internal(format!("torsion values sum to {sum}")).into());
                }
                let mut rows: Vec<Vec<String>> =
                    table.iter().map(|(h, v)| vec![word_text(h), coords_text(h), v.to_string()]).collect();
                rows.push(vec!["sum".into(), String::new(), sum.to_string()]);
                Doc::default()
                    .field("h_order", z(s.h_order()))
                    .field("group", g.divisors().iter().map(|d| Value::String(d.to_string())).collect::<Value>())
                    .with_table(Table { key: "rows", headers: vec!["element", "coords", "torsion"], rows })
            } else {
                let sigma = match spinc {
                    Some(w) => SpincStructure::from_word(&s, &g, w)?,
                    None => SpincStructure::canonical(&s, &g),
                };
                let t = torsion_at_one_with(&s, &g, &sigma, mode)?;
                let sw = casson_walker(&s) / Rational::from_integer(s.h_order().clone()) + &t;
                Doc::default()
                    .field("spinc", sigma.word().iter().map(z).collect::<Value>())
                    .field("element", word_text(sigma.element()))
                    .field("coords", coords_text(sigma.element()))
                    .field("torsion", q(&t))
                    .field("sw0", q(&sw))
            }
        }
        Command::Plumbing(arg) => {
            let p = to_plumbing(&read_input(arg)?)?;
            match plumbing_doc(&p, format) {
                Some(doc) => doc,
                None => {
                    io::stdout().write_all(p.to_dot().as_bytes())?;
                    return Ok(status);
                }
            }
        }
        Command::Poincare { input, terms } => {
            let s = read_input(input)?;
            let rows = poincare_coefficients(&s, *terms)
                .into_iter()
                .enumerate()
                .map(|(l, c)| vec![l.to_string(), c.to_string()])
                .collect();
            Doc::default().field("terms", terms.to_string()).with_table(Table {
                key: "coefficients",
                headers: vec!["l", "coefficient"],
                rows,
            })
        }
        Command::Verify(arg) => {
            let s = read_input(arg)?;
            let g = build_group(&s)?;
            let check = verify_identity_with(&s, &g, mode)?;
            if !check.verdict {
                status = ExitCode::from(1);
            }
            Doc::default()
                .field("verdict", verdict(check.verdict))
                .field("lhs", q(&check.lhs))
                .field("rhs", q(&check.rhs))
        }
        Command::Conjecture { input, pg } => {
            if pg < &BigInt::from(0) {
                return Err(CliError::Invalid(format!("--pg must be non-negative, got {pg}")));
            }
            let s = read_input(input)?;
            Doc::default().field("pg", z(pg)).field("gap", q(&conjecture_gap(&s, pg)?))
        }
        Command::BatchVerify { count, seed, max_alpha, max_arms, h_cap } => {
            let cfg =
                BatchConfig { count: *count, seed: *seed, max_alpha: *max_alpha, max_arms: *max_arms, h_cap: *h_cap };
            let summary = verify_batch(&cfg, mode)?;
            let failures = summary.failures().count();
            if failures > 0 {
                status = ExitCode::from(1);
            }
            eprintln!("{} manifolds, {failures} failures, max |H| {}", summary.rows.len(), summary.max_h_order());
            let doc = Doc::default()
                .field("count", summary.rows.len().to_string())
                .field("seed", seed.to_string())
                .field("failures", failures.to_string())
                .field("max_h_order", summary.max_h_order().to_string())
                .with_table(Table {
                    key: "rows",
                    headers: vec![
                        "index",
                        "b",
                        "pairs",
                        "h_order",
                        "lhs",
                        "rhs",
                        "identity",
                        "torsion_paths",
                        "k2_paths",
                        "det",
                        "gap",
                        "passed",
                    ],
                    rows: summary.rows.iter().map(batch_row).collect(),
                });
            let mut out = io::stdout().lock();
            doc.write(format.unwrap_or(Format::Csv), &mut out)?;
            return Ok(status);
        }
    };
    let mut out = io::stdout().lock();
    doc.write(format.unwrap_or(Format::Json), &mut out)?;
    Ok(status)
}

fn verdict(equal: bool) -> &'static str {
    if equal {
        "equal"
    } else {
        "unequal"
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
