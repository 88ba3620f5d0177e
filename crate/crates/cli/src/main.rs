//! `shalika`: list, count, classify and factor `(S, P_{r,2n-r})` double
//! cosets, and check the classification by brute force.
//!
//! Exit codes: 0 success, 2 bad arguments or size limits, 3 singular input
//! or other domain errors, 4 internal verification failure, 5 a check that
//! did not pass.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use shalika::cosets::{self, CosetLabel};
use shalika::oracle::{self, CertificationReport};
use shalika::symgrp;
use shalika::{Error, Matrix, PrimeField};

const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_INTERNAL: u8 = 4;
const EXIT_FAILED_CHECK: u8 = 5;

#[derive(Parser)]
#[command(
    name = "shalika",
    version,
    about = "Shalika and parabolic double cosets of GL(2n, F_p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a representative for every double coset.
    Reps {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Prime for the printed matrices.
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the number of double cosets.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Print the label (k, l) of the double coset of a matrix.
    Classify {
        /// JSON matrix file: {"p": .., "rows": .., "cols": .., "entries": [[..], ..]}.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Expected prime; must agree with the file if given.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Factor a matrix as s * w * p.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Check the classification against an exhaustive enumeration.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Omit to check every 1 <= r < 2n.
        #[arg(long)]
        r: Option<usize>,
        /// Allow groups with more than 2^20 matrices (minutes of work).
        #[arg(long)]
        expensive: bool,
    },
    /// Print double coset representatives in the symmetric group.
    SymCosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Also enumerate S_2n and compare (n <= 4).
        #[arg(long)]
        brute: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

struct Failure {
    code: u8,
    message: String,
    output: Option<String>,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
            output: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Singular | Error::DivisionByZero | Error::Dependent | Error::NotContained => {
                EXIT_DOMAIN
            }
            Error::Verification(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn field(p: u64) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(p)?)
}

fn read_matrix(path: &Path, expected_p: Option<u64>) -> Result<Matrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    let g: Matrix = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("bad matrix in {}: {e}", path.display())))?;
    if let Some(p) = expected_p {
        if p != g.field().modulus() as u64 {
            return Err(Failure::new(
                EXIT_USAGE,
                format!(
                    "--p {p} disagrees with p = {} in {}",
                    g.field().modulus(),
                    path.display()
                ),
            ));
        }
    }
    Ok(g)
}

fn label_json(label: &CosetLabel) -> serde_json::Value {
    json!({ "k": label.k(), "l": label.l() })
}

fn cmd_reps(n: usize, r: usize, p: u64, format: Format) -> CmdResult {
    let f = field(p)?;
    let labels = cosets::kl_bounds(n, r)?;
    match format {
        Format::Json => {
            let reps: Vec<_> = labels
                .iter()
                .map(|l| json!({ "label": label_json(l), "matrix": cosets::representative(f, l) }))
                .collect();
            Ok(to_json(
                &json!({ "n": n, "r": r, "p": p, "representatives": reps }),
            ))
        }
        Format::Pretty => {
            let mut out = String::new();
            for (i, l) in labels.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                writeln!(out, "{l}").unwrap();
                write!(out, "{}", cosets::representative(f, l)).unwrap();
            }
            Ok(out.trim_end().to_string())
        }
    }
}

fn cmd_classify(path: &Path, n: usize, r: usize, p: Option<u64>) -> CmdResult {
    let g = read_matrix(path, p)?;
    let label = cosets::classify(&g, n, r)?;
    Ok(label_json(&label).to_string())
}

fn cmd_decompose(path: &Path, n: usize, r: usize, p: Option<u64>) -> CmdResult {
    let g = read_matrix(path, p)?;
    let d = cosets::decompose(&g, n, r)?;
    let product = d.s.mul(&d.w).and_then(|sw| sw.mul(&d.p))?;
    if product != g {
        return Err(Failure::new(
            EXIT_INTERNAL,
            "s * w * p does not reproduce the input",
        ));
    }
    Ok(to_json(&json!({
        "label": label_json(&d.label),
        "s": d.s,
        "w": d.w,
        "p": d.p,
    })))
}

fn cmd_verify(n: usize, p: u64, r: Option<usize>, expensive: bool) -> CmdResult {
    let p32 = field(p)?.modulus();
    let rs: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (1..2 * n).collect(),
    };
    // Fail fast on the size gate before doing any work.
    for &r in &rs {
        cosets::check_params(n, r)?;
    }
    oracle::space_size(2 * n, p32)?;
    let reports = rs
        .iter()
        .map(|&r| oracle::certify(n, p32, r, expensive))
        .collect::<Result<Vec<CertificationReport>, Error>>()?;
    let passed = reports.iter().all(|rep| rep.passed);
    let text = if r.is_some() {
        to_json(&reports[0])
    } else {
        to_json(&reports)
    };
    if passed {
        Ok(text)
    } else {
        let failed: Vec<String> = reports
            .iter()
            .flat_map(|rep| {
                rep.assertions
                    .iter()
                    .filter(|a| !a.passed)
                    .map(move |a| (rep.r, a))
            })
            .map(|(r, a)| format!("r = {r}: {} ({})", a.name, a.detail))
            .collect();
        Err(Failure {
            code: EXIT_FAILED_CHECK,
            message: format!("verification failed: {}", failed.join("; ")),
            output: Some(text),
        })
    }
}

fn cmd_sym_cosets(n: usize, r: usize, brute: bool) -> CmdResult {
    let transversal = symgrp::delta_orbit_transversal(n, r)?;
    let cosets_json: Vec<_> = transversal
        .iter()
        .map(|(l, w)| json!({ "label": l, "w_prime": w }))
        .collect();
    let mut doc = json!({ "n": n, "r": r, "cosets": cosets_json });
    if !brute {
        return Ok(to_json(&doc));
    }
    let part = symgrp::brute_force_sym_cosets(n, r)?;
    let mut problems = Vec::new();
    if part.classes.len() != transversal.len() {
        problems.push(format!(
            "{} classes by brute force, {} representatives",
            part.classes.len(),
            transversal.len()
        ));
    }
    for (i, class) in part.classes.iter().enumerate() {
        let hits = transversal
            .iter()
            .filter(|(_, w)| class.contains(w))
            .count();
        if hits != 1 {
            problems.push(format!("class {i} contains {hits} representatives"));
        }
    }
    doc["brute_force"] = json!({
        "classes": part.classes.len(),
        "class_sizes": part.classes.iter().map(Vec::len).collect::<Vec<_>>(),
        "agrees": problems.is_empty(),
    });
    if problems.is_empty() {
        Ok(to_json(&doc))
    } else {
        Err(Failure {
            code: EXIT_FAILED_CHECK,
            message: format!("brute force disagrees: {}", problems.join("; ")),
            output: Some(to_json(&doc)),
        })
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Reps { n, r, p, format } => cmd_reps(n, r, p, format),
        Command::Count { n, r } => Ok(cosets::count(n, r)?.to_string()),
        Command::Classify { matrix, n, r, p } => cmd_classify(&matrix, n, r, p),
        Command::Decompose { matrix, n, r, p } => cmd_decompose(&matrix, n, r, p),
        Command::Verify { n, p, r, expensive } => cmd_verify(n, p, r, expensive),
        Command::SymCosets { n, r, brute } => cmd_sym_cosets(n, r, brute),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Some(out) = failure.output {
                println!("{out}");
            }
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
