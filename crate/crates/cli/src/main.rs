//! `tc7`: hypothesis checks, configuration search, discharging audits and
//! total colorings for plane graphs of maximum degree 6.
//!
//! Every command prints one JSON report on stdout and exits with 0 when the
//! verdict is positive, 1 when it is negative and 2 on input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tc7_core::catalog::{find_all, find_any_reducible};
use tc7_core::colorer::{color7_with, ColorError, ColorOptions};
use tc7_core::coloring::{exact_total_coloring, first_conflict, Outcome};
use tc7_core::discharge::audit;
use tc7_core::forge::{generate, GenSpec, Profile};
use tc7_core::format::{parse_coloring, parse_graph, write_coloring, write_graph};
use tc7_core::patterns::hypothesis_report;
use tc7_core::PlaneGraph;

const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Parser)]
#[command(name = "tc7", version, about = "Total 7-coloring toolkit for plane graphs of maximum degree 6")]
struct Cli {
    /// Node budget for exact searches.
    #[arg(long, env = "TC7_BUDGET", global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report maximum degree, diamonds, houses and 6-vertex cycle violations.
    Check { graph: PathBuf },
    /// Find a reducible configuration.
    FindConfig {
        graph: PathBuf,
        /// List every match instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Run the discharging rules and audit the final charges.
    Discharge { graph: PathBuf },
    /// Compute a total coloring.
    Color {
        graph: PathBuf,
        #[arg(long, default_value_t = 7)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Constructive)]
        mode: Mode,
        /// Write the coloring file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring file against a graph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Generate a graph.
    Generate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value = "hypothesis", value_parser = parse_profile)]
        profile: Profile,
        /// Write the graph file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Constructive,
    Exact,
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    Profile::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Profile::ALL.iter().map(|p| p.name()).collect();
        format!("unknown profile `{s}` (expected one of {})", names.join(", "))
    })
}

#[derive(Serialize)]
struct Report {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input_digest: String,
    verdict: &'static str,
    payload: Value,
}

/// Outcome of a command: verdict, whether it counts as success, payload.
struct Verdict {
    verdict: &'static str,
    ok: bool,
    payload: Value,
}

fn positive(verdict: &'static str, payload: Value) -> Verdict {
    Verdict { verdict, ok: true, payload }
}

fn negative(verdict: &'static str, payload: Value) -> Verdict {
    Verdict { verdict, ok: false, payload }
}

/// An input problem: exit code 2.
struct InputError(String);

fn read(path: &Path, digest: &mut Sha256) -> Result<String, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    digest.update(&bytes);
    String::from_utf8(bytes).map_err(|_| InputError(format!("{}: not UTF-8", path.display())))
}

fn load_graph(path: &Path, digest: &mut Sha256) -> Result<PlaneGraph, InputError> {
    let text = read(path, digest)?;
    parse_graph(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn write_out(path: &Path, text: &str) -> Result<(), InputError> {
    std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli, digest: &mut Sha256) -> Result<Verdict, InputError> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Check { graph } => {
            let g = load_graph(graph, digest)?;
            let report = hypothesis_report(&g);
            let payload = to_value(&report);
            Ok(if report.satisfied {
                positive("satisfied", payload)
            } else {
                negative("violated", payload)
            })
        }
        Command::FindConfig { graph, all } => {
            let g = load_graph(graph, digest)?;
            let matches = if *all {
                find_all(&g)
            } else {
                find_any_reducible(&g).into_iter().collect()
            };
            let payload = json!({ "matches": matches });
            Ok(if matches.is_empty() {
                negative("none", payload)
            } else {
                positive("found", payload)
            })
        }
        Command::Discharge { graph } => {
            let g = load_graph(graph, digest)?;
            let a = audit(&g).map_err(|e| InputError(e.to_string()))?;
            let mut payload = to_value(&a);
            payload["note"] = json!(
                "masters come from a best-effort matching of 2-vertices to 6-neighbors; \
                 2-vertices left unmatched are paid as if they had no master"
            );
            Ok(if a.all_localized() {
                positive("localized", payload)
            } else {
                negative("unlocalized", payload)
            })
        }
        Command::Color { graph, k, mode, out } => {
            let g = load_graph(graph, digest)?;
            if *k == 0 || *k > tc7_core::coloring::MAX_PALETTE {
                return Err(InputError(format!("palette size {k} unsupported")));
            }
            let outcome = match mode {
                Mode::Exact => match exact_total_coloring(&g, *k, Some(budget)) {
                    Outcome::Found(c) => Ok((c, json!({ "mode": "exact" }))),
                    Outcome::NoneExists => Err(negative("none", json!({ "mode": "exact", "k": k }))),
                    Outcome::Exhausted { nodes } => Err(negative(
                        "exhausted",
                        json!({ "mode": "exact", "k": k, "nodes": nodes }),
                    )),
                },
                Mode::Constructive => {
                    if *k != 7 {
                        return Err(InputError("constructive mode only produces 7-colorings".into()));
                    }
                    let opts = ColorOptions {
                        base_budget: Some(budget),
                        ..ColorOptions::default()
                    };
                    match color7_with(&g, &opts) {
                        Ok(run) => {
                            let steps = to_value(&run.steps);
                            Ok((run.coloring, json!({ "mode": "constructive", "steps": steps })))
                        }
                        Err(ColorError::Hypothesis(report)) => Err(negative(
                            "rejected",
                            json!({ "mode": "constructive", "reason": "hypotheses", "report": to_value(&report) }),
                        )),
                        Err(e) => Err(negative(
                            "failed",
                            json!({ "mode": "constructive", "reason": e.to_string() }),
                        )),
                    }
                }
            };
            match outcome {
                Ok((c, mut payload)) => {
                    let text = write_coloring(&g, &c);
                    if let Some(path) = out {
                        write_out(path, &text)?;
                    }
                    payload["k"] = json!(k);
                    payload["coloring"] = json!(text);
                    Ok(positive("colored", payload))
                }
                Err(neg) => Ok(neg),
            }
        }
        Command::Verify { graph, coloring } => {
            let g = load_graph(graph, digest)?;
            let text = read(coloring, digest)?;
            let c = parse_coloring(&g, &text).map_err(|e| InputError(format!("{}: {e}", coloring.display())))?;
            Ok(match first_conflict(&g, &c) {
                Ok(None) => positive("valid", json!({ "k": c.palette_size() })),
                Ok(Some(conflict)) => negative("invalid", json!({ "conflict": to_value(&conflict) })),
                Err(e) => negative("invalid", json!({ "reason": e.to_string() })),
            })
        }
        Command::Generate { seed, n, profile, out } => {
            let spec = GenSpec::new(*seed, *n, *profile);
            digest.update(serde_json::to_vec(&spec).expect("spec serializes"));
            match generate(&spec) {
                Ok(g) => {
                    let text = write_graph(&g);
                    if let Some(path) = out {
                        write_out(path, &text)?;
                    }
                    Ok(positive(
                        "generated",
                        json!({ "spec": to_value(&spec), "vertices": g.vertex_count(), "graph": text }),
                    ))
                }
                Err(e) => Ok(negative(
                    "failed",
                    json!({ "spec": to_value(&spec), "error": to_value(&e), "message": e.to_string() }),
                )),
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::FindConfig { .. } => "find-config",
        Command::Discharge { .. } => "discharge",
        Command::Color { .. } => "color",
        Command::Verify { .. } => "verify",
        Command::Generate { .. } => "generate",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut digest = Sha256::new();
    let result = run(&cli, &mut digest);
    let input_digest = format!("sha256:{:x}", digest.finalize());
    let (verdict, payload, code) = match result {
        Ok(o) => (o.verdict, o.payload, if o.ok { 0 } else { 1 }),
        Err(InputError(message)) => ("error", json!({ "error": message }), 2),
    };
    let report = Report {
        tool: "tc7",
        version: env!("CARGO_PKG_VERSION"),
        command: command_name(&cli.command),
        input_digest,
        verdict,
        payload,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(code)
}
