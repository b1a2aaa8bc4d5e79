//! Command-line front end: evaluate measures, integrate functions, run the
//! verification suites, and search for subadditivity counterexamples.
//!
//! JSON on stdout is the machine interface; human-readable lines go to
//! stderr. Exit codes: 0 success, 1 verification failures, 2 resolution or
//! usage failures, 3 invariant violations during evaluation.

mod scene;
mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use qmlab::{find_nonsubadditive_witness, integrate, Error as QmError, Status};

#[derive(Parser)]
#[command(name = "qmlab", version, about = "Quasi-measure laboratory")]
struct Cli {
    /// Scene file (JSON); omit for the built-in default scene
    #[arg(long, global = true)]
    scene: Option<PathBuf>,

    /// Grid side override (odd integer >= 3)
    #[arg(long, global = true)]
    n: Option<u16>,

    /// Seed for all randomized searches and sampled families
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Candidate budget for counterexample searches
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: u64,

    /// Also write the JSON output to this path
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a measure on a named image
    Eval { measure: String, image: String },
    /// Integrate a named or builtin function against a measure
    Integrate { measure: String, function: String },
    /// Run a verification suite
    Verify {
        /// measure-axioms | integral-props | transform-axioms | riesz |
        /// factorization | all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Search for a non-subadditivity witness pair
    Counterexample { measure: String },
}

const DEFAULT_N: u16 = 65;

fn emit(cli: &Cli, value: &serde_json::Value) -> ExitCode {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    println!("{text}");
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::SUCCESS
}

/// Round to 12 significant digits for the human-readable lines.
fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("roundtrip");
    format!("{rounded}")
}

fn eval_exit(e: &QmError) -> ExitCode {
    match e {
        QmError::SpaceMismatch(_) | QmError::PreconditionViolation(_) => ExitCode::from(2),
        _ => ExitCode::from(3),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let scene = match scene::load(cli.scene.as_deref(), cli.n, DEFAULT_N) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };

    match &cli.command {
        Command::Eval { measure, image } => {
            let m = match scene.measure(measure) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let img = match scene.image(image) {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let value = match m.eval(img) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("{e}");
                    return eval_exit(&e);
                }
            };
            eprintln!("{measure}({image}) = {value}");
            let doc = json!({
                "command": "eval",
                "grid": scene.grid.descriptor(),
                "measure": measure,
                "image": image,
                "value": value.to_string(),
                "value_float": value.to_f64(),
            });
            emit(&cli, &doc)
        }
        Command::Integrate { measure, function } => {
            let m = match scene.measure(measure) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let f = match scene.function(function) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let value = match integrate(m, &f) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("{e}");
                    return eval_exit(&e);
                }
            };
            eprintln!(
                "integral of {function} against {measure} = {}",
                sig12(value)
            );
            let doc = json!({
                "command": "integrate",
                "grid": scene.grid.descriptor(),
                "measure": measure,
                "function": function,
                "value": value,
            });
            emit(&cli, &doc)
        }
        Command::Verify { suite } => {
            let ctx = suites::SuiteContext {
                scene: &scene,
                seed: cli.seed,
                budget: cli.budget,
            };
            let reports = match suites::run_suite(&ctx, suite) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let mut summary: BTreeMap<&str, usize> =
                [("pass", 0), ("fail", 0), ("inconclusive", 0)].into();
            for r in &reports {
                let key = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Inconclusive => "inconclusive",
                };
                *summary.get_mut(key).unwrap() += 1;
                let label = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Inconclusive => "inconclusive",
                };
                eprintln!("[{label}] {}: {}", r.check, r.property);
            }
            let failed = summary["fail"] > 0;
            let doc = json!({
                "command": "verify",
                "suite": suite,
                "grid": scene.grid.descriptor(),
                "seed": cli.seed,
                "budget": cli.budget,
                "reports": reports,
                "summary": summary,
            });
            let code = emit(&cli, &doc);
            if code != ExitCode::SUCCESS {
                code
            } else if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Counterexample { measure } => {
            let m = match scene.measure(measure) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            match find_nonsubadditive_witness(m, cli.budget, cli.seed) {
                Some(w) => {
                    eprintln!(
                        "witness after {} candidates: values {} + {} < {}",
                        w.candidates_tried, w.value_a, w.value_b, w.value_union
                    );
                    eprintln!("A:\n{}", w.a.to_mask());
                    eprintln!("B:\n{}", w.b.to_mask());
                    eprintln!("A u B:\n{}", w.union.to_mask());
                    let doc = json!({
                        "command": "counterexample",
                        "grid": scene.grid.descriptor(),
                        "measure": measure,
                        "seed": cli.seed,
                        "budget": cli.budget,
                        "found": true,
                        "candidates_tried": w.candidates_tried,
                        "values": {
                            "a": w.value_a.to_string(),
                            "b": w.value_b.to_string(),
                            "union": w.value_union.to_string(),
                        },
                        "witness": {
                            "a": w.a.to_mask(),
                            "b": w.b.to_mask(),
                            "union": w.union.to_mask(),
                        },
                    });
                    emit(&cli, &doc)
                }
                None => {
                    eprintln!("none within budget {}", cli.budget);
                    let doc = json!({
                        "command": "counterexample",
                        "grid": scene.grid.descriptor(),
                        "measure": measure,
                        "seed": cli.seed,
                        "budget": cli.budget,
                        "found": false,
                    });
                    emit(&cli, &doc)
                }
            }
        }
    }
}
