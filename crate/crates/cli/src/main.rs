use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use drazin_core::additive::check_pair;
use drazin_core::block::check_case;
use drazin_core::generate::{generate_bundle, PairInstance};
use drazin_core::perturbation::check_pert_with_d;
use drazin_core::suite::{selftest_with, verify_case, Fixtures, RunReport};
use drazin_core::{drazin, BlockSpec, Case, ConditionReport, Error, Family, GenRecipe, Matrix, SchurSpec};

/// Exact Drazin inverses and hypothesis checks for block-matrix formulas.
#[derive(Parser)]
#[command(name = "gdrazin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Drazin inverse, index and spectral idempotent of a matrix.
    Drazin { file: PathBuf },
    /// Evaluate the hypotheses of a case on an instance file.
    Check {
        #[arg(value_parser = parse_case)]
        case: Case,
        file: PathBuf,
        /// Print the report as JSON instead of one line per condition.
        #[arg(long)]
        json: bool,
    },
    /// Compare a case's formula with the oracle on generated instances.
    Verify {
        #[arg(value_parser = parse_case)]
        case: Case,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a generated instance bundle.
    Gen {
        #[arg(value_parser = parse_case)]
        case: Case,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size of a, A or s (rows of x).
        #[arg(long)]
        n: Option<usize>,
        /// Size of D (columns of x).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Run the worked examples, algebra checks and a short verify per case.
    Selftest {
        /// Replace a worked example, as `example-3.5=FILE` or `example-4.3=FILE`.
        #[arg(long = "fixture", value_name = "NAME=FILE")]
        fixtures: Vec<String>,
    },
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse::<Case>().map_err(|e| e.to_string())
}

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTEGRITY: u8 = 3;

/// A command failure with its exit status.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn input(message: impl Into<String>) -> Self {
        Fail { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OracleIntegrity(_) | Error::ProofObligation { .. } => EXIT_INTEGRITY,
            Error::Exhausted { .. } => EXIT_FAILED,
            _ => EXIT_INPUT,
        };
        Fail { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
}

fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, Fail> {
    serde_json::from_str(text)
        .map_err(|e| Fail::input(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Bundle<T> {
    #[allow(dead_code)]
    case: String,
    #[allow(dead_code)]
    seed: u64,
    instance: T,
}

/// Reads either a bare instance or a `{"case", "seed", "instance"}` bundle.
fn parse_instance<T: DeserializeOwned>(path: &Path) -> Result<T, Fail> {
    let text = read(path)?;
    let value: serde_json::Value = parse(path, &text)?;
    if value.get("instance").is_some() {
        Ok(parse::<Bundle<T>>(path, &text)?.instance)
    } else {
        parse(path, &text)
    }
}

/// `A`, `B`, `C` and optionally a `D` to test against `CA^dB`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchurInput {
    #[serde(rename = "A")]
    a: Matrix,
    #[serde(rename = "B")]
    b: Matrix,
    #[serde(rename = "C")]
    c: Matrix,
    #[serde(rename = "D", default)]
    d: Option<Matrix>,
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialise"));
}

fn cmd_drazin(file: &Path) -> Result<u8, Fail> {
    let a: Matrix = parse(file, &read(file)?)?;
    if !a.is_square() {
        return Err(Fail::input(format!("{}: matrix is {}x{}, expected square", file.display(), a.rows(), a.cols())));
    }
    print_json(&drazin(&a)?);
    Ok(0)
}

fn cmd_check(case: Case, file: &Path, json: bool) -> Result<u8, Fail> {
    let report = match case.family() {
        Family::Pair => {
            let p: PairInstance = parse_instance(file)?;
            check_pair(case, &p.a, &p.b)?
        }
        Family::Block => check_case(case, &parse_instance::<BlockSpec>(file)?)?,
        Family::Schur => {
            let input: SchurInput = parse_instance(file)?;
            let spec = SchurSpec::new(input.a, input.b, input.c)?;
            check_pert_with_d(case, &spec, input.d.as_ref())?
        }
        // Cline's formula and the square reduction have no hypotheses.
        Family::Factors | Family::Square => ConditionReport::new(case.id()),
    };
    if json {
        print_json(&report);
    } else {
        for c in &report.conditions {
            println!("{:<44} {}", c.name, c.holds);
            if !c.holds {
                println!("  residual {}", serde_json::to_string(&c.residual).expect("matrices serialise"));
            }
        }
        println!("{}: {}", report.case, if report.all_hold() { "all hold" } else { "FAILED" });
    }
    Ok(if report.all_hold() { 0 } else { EXIT_FAILED })
}

fn report_exit(report: &RunReport) -> u8 {
    print_json(report);
    if report.passed {
        0
    } else {
        EXIT_FAILED
    }
}

fn cmd_verify(case: Case, count: u64, seed: u64) -> Result<u8, Fail> {
    let started = std::time::Instant::now();
    let result = verify_case(case, count as usize, seed);
    let command = format!("verify {case} --count {count} --seed {seed}");
    Ok(report_exit(&RunReport::new(command, Vec::new(), vec![result], started)))
}

fn cmd_gen(case: Case, seed: u64, n: Option<usize>, m: Option<usize>) -> Result<u8, Fail> {
    let mut recipe = GenRecipe::new(case, seed);
    recipe.n = n;
    recipe.m = m;
    print_json(&generate_bundle(&recipe)?);
    Ok(0)
}

fn cmd_selftest(overrides: &[String]) -> Result<u8, Fail> {
    let mut fixtures = Fixtures::default();
    for item in overrides {
        let (name, file) = item.split_once('=').ok_or_else(|| Fail::input(format!("expected NAME=FILE, got {item:?}")))?;
        let path = Path::new(file);
        match name {
            "example-3.5" => fixtures.example_3_5 = parse_instance(path)?,
            "example-4.3" => fixtures.example_4_3 = parse_instance(path)?,
            other => return Err(Fail::input(format!("unknown fixture {other:?}; expected example-3.5 or example-4.3"))),
        }
    }
    Ok(report_exit(&selftest_with(&fixtures)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Drazin { file } => cmd_drazin(file),
        Command::Check { case, file, json } => cmd_check(*case, file, *json),
        Command::Verify { case, count, seed } => cmd_verify(*case, *count, *seed),
        Command::Gen { case, seed, n, m } => cmd_gen(*case, *seed, *n, *m),
        Command::Selftest { fixtures } => cmd_selftest(fixtures),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
