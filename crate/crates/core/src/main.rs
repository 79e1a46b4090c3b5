use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use pentadet::cli::{self, ComputeError, Method, PolySelection, ScalarMode, VerifyConfig};

#[derive(Parser)]
#[command(name = "pentadet", version, about = "Determinants of k,2k-pentadiagonal matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one determinant from a JSON spec.
    Compute {
        #[arg(long, required_unless_present = "bench")]
        input: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        method: Method,
        #[arg(long, default_value = "rational")]
        scalar: ScalarMode,
        /// Include per-method wall times in the output.
        #[arg(long)]
        timings: bool,
        /// Time structured float routes against the dense one instead.
        #[arg(long, conflicts_with = "input")]
        bench: bool,
    },
    /// Cross-check every applicable route on random specs.
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        cases: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, env = cli::THREADS_ENV)]
        threads: Option<usize>,
        #[arg(long, hide = true)]
        inject_bug: bool,
    },
    /// Regenerate the Toeplitz block polynomials and compare with the tables.
    Poly {
        #[arg(long)]
        n: PolySelection,
        #[arg(long)]
        emit: bool,
    },
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn fail(code: u8, body: serde_json::Value) -> ExitCode {
    eprintln!("error: {}", body["message"].as_str().unwrap_or_default());
    print_json(&body);
    ExitCode::from(code)
}

fn compute(input: Option<PathBuf>, method: Method, scalar: ScalarMode, timings: bool) -> ExitCode {
    let path = input.expect("clap enforces --input");
    let spec = std::fs::read_to_string(&path)
        .map_err(|e| cli::InputError(format!("{}: {e}", path.display())))
        .and_then(|text| cli::parse_spec(&text));
    let spec = match spec {
        Ok(s) => s,
        Err(e) => return fail(2, json!({"error": "input", "message": e.to_string()})),
    };
    match cli::run_compute(&spec, method, scalar, timings) {
        Ok(res) => {
            print_json(&res);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code() as u8;
            let body = match &e {
                ComputeError::PivotZero { method, j, s } => {
                    json!({"error": "pivot_zero", "method": method, "j": j, "s": s, "message": e.to_string()})
                }
                ComputeError::Hypothesis { method, .. } => {
                    json!({"error": "hypothesis", "method": method, "message": e.to_string()})
                }
                ComputeError::Input(_) => json!({"error": "input", "message": e.to_string()}),
            };
            fail(code, body)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Compute { bench: true, .. } => match cli::run_bench() {
            Ok(report) => {
                print_json(&report);
                ExitCode::SUCCESS
            }
            Err(e) => fail(1, json!({"error": "bench", "message": e.to_string()})),
        },
        Command::Compute { input, method, scalar, timings, .. } => compute(input, method, scalar, timings),
        Command::Verify { n_max, cases, seed, threads, inject_bug } => {
            let config = VerifyConfig { n_max, cases, seed, threads, inject_bug };
            match cli::run_verify(&config) {
                Ok(report) => {
                    print_json(&report);
                    if report.all_agree() {
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("error: {} of {} cases disagree", report.failed, report.cases);
                        ExitCode::from(1)
                    }
                }
                Err(msg) => fail(2, json!({"error": "input", "message": msg})),
            }
        }
        Command::Poly { n, emit } => match cli::run_poly(n, emit) {
            Ok(report) => {
                print_json(&report);
                if report.all_equal {
                    ExitCode::SUCCESS
                } else {
                    eprintln!("error: polynomial mismatch");
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(3, json!({"error": "range", "message": e.to_string()})),
        },
    }
}
