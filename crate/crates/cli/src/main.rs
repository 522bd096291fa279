//! `bigrady` checks bigraphical reactive system models: it parses a model
//! file, explores the induced labeled transition system, verifies sort
//! conformance, and checks the declared CTL properties.
//!
//! Exit codes: 0 everything holds, 1 a property is refuted, 2 the input is
//! unusable (IO, syntax, resolution, or sort violations), 3 exploration hit
//! the state budget.

mod export;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use brs_engine::{build_transition_system, EngineError, PriorityClasses, TransitionSystem};
use ctl_checker::{check, counterexample, Model};
use model_dsl::{fixtures, parse_model, ResolvedModel};
use sorting::check_sorts;

use report::{DiagnosticReport, PropertyReport, RunReport, TraceReport};

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bigrady",
    version,
    about = "Model checker for bigraphical reactive systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Explore a model's state space and check its properties.
    Check(CheckArgs),
    /// Export a model's state space without checking properties.
    Export(ExportArgs),
    /// Write a bundled example model into the current directory.
    Init(InitArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Model file to check.
    file: PathBuf,
    /// Write a JSON run report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the explored transition system as Graphviz DOT to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Abort exploration beyond this many states.
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
    /// Check sort conformance on every reachable state, not just the
    /// initial one.
    #[arg(long)]
    dynamic_sorts: bool,
    /// Suppress the human-readable report.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// Model file to export.
    file: PathBuf,
    #[arg(long, value_enum)]
    format: ExportFormat,
    /// Output path.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Abort exploration beyond this many states.
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct InitArgs {
    /// Example name; omit to list the available examples.
    #[arg(long, value_name = "NAME")]
    example: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check(args) => run_check(args),
        Command::Export(args) => run_export(args),
        Command::Init(args) => run_init(args),
    };
    ExitCode::from(code)
}

/// Read, parse, and resolve a model file.
fn load(file: &Path) -> Result<(String, ResolvedModel), u8> {
    let display = file.display().to_string();
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {display}: {e}");
            return Err(EXIT_INPUT);
        }
    };
    match parse_model(&text).and_then(|f| f.resolve()) {
        Ok(model) => Ok((display, model)),
        Err(e) => {
            eprintln!("{display}: {e}");
            Err(EXIT_INPUT)
        }
    }
}

/// Build the labeled transition system, mapping engine failures to exit codes.
fn explore(
    model: &ResolvedModel,
    max_states: Option<usize>,
    display: &str,
) -> Result<TransitionSystem, u8> {
    let classes = match PriorityClasses::new(model.classes.clone()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{display}: {e}");
            return Err(EXIT_INPUT);
        }
    };
    match build_transition_system(&model.initial, &classes, &model.predicates, max_states) {
        Ok(ts) => Ok(ts),
        Err(e @ EngineError::StateBudgetExceeded { .. }) => {
            eprintln!("{display}: {e}");
            Err(EXIT_BUDGET)
        }
        Err(e) => {
            eprintln!("{display}: {e}");
            Err(EXIT_INPUT)
        }
    }
}

fn ctl_model(ts: &TransitionSystem) -> Model {
    Model {
        state_count: ts.state_count(),
        initial: ts.initial(),
        transitions: ts.transitions().iter().cloned().collect(),
        atoms: ts.labels().clone(),
    }
}

fn run_check(args: CheckArgs) -> u8 {
    let (display, model) = match load(&args.file) {
        Ok(v) => v,
        Err(code) => return code,
    };

    // Static conformance gates exploration: a model whose initial state
    // breaks its own scheme is rejected like a parse error.
    if let Some(scheme) = &model.sorts {
        match check_sorts(scheme, &model.initial) {
            Err(e) => {
                eprintln!("{display}: {e}");
                return EXIT_INPUT;
            }
            Ok(diags) if !diags.is_empty() => {
                for d in &diags {
                    eprintln!("{display}: sort violation in the initial state: {d}");
                }
                return EXIT_INPUT;
            }
            Ok(_) => {}
        }
    }

    let started = Instant::now();
    let ts = match explore(&model, args.max_states, &display) {
        Ok(ts) => ts,
        Err(code) => return code,
    };
    let duration = started.elapsed();

    let mut sort_violations = Vec::new();
    if args.dynamic_sorts {
        if let Some(scheme) = &model.sorts {
            for (id, state) in ts.states().iter().enumerate() {
                match check_sorts(scheme, state) {
                    Err(e) => {
                        eprintln!("{display}: {e}");
                        return EXIT_INPUT;
                    }
                    Ok(diags) => {
                        sort_violations.extend(diags.into_iter().map(|d| DiagnosticReport {
                            state: id,
                            location: d.location.to_string(),
                            constraint: d.constraint,
                            message: d.message,
                        }));
                    }
                }
            }
        }
    }

    let m = ctl_model(&ts);
    let mut properties = Vec::new();
    for p in &model.properties {
        let result = match check(&m, &p.formula) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("{display}: property {}: {e}", p.name);
                return EXIT_INPUT;
            }
        };
        let trace = if result.holds {
            None
        } else {
            counterexample(&m, &p.formula)
                .ok()
                .flatten()
                .map(|c| TraceReport {
                    states: c.states,
                    rules: c.rules,
                })
        };
        properties.push(PropertyReport {
            name: p.name.clone(),
            formula: p.text.clone(),
            holds: result.holds,
            counterexample: trace,
        });
    }

    let sorts_checked = match (&model.sorts, args.dynamic_sorts) {
        (None, _) => "none",
        (Some(_), false) => "initial",
        (Some(_), true) => "all",
    };
    let stats = ts.stats();
    let report = RunReport {
        schema: 1,
        file: display,
        states: stats.states,
        transitions: stats.transitions,
        deadlocks: stats.deadlocks,
        raw_occurrences: stats.raw_occurrences,
        duration_ms: duration.as_millis(),
        sorts_checked,
        sort_violations,
        properties,
    };

    if let Some(path) = &args.json {
        let body = serde_json::to_string_pretty(&report).expect("report types serialize");
        if let Err(e) = fs::write(path, body + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    if let Some(path) = &args.dot {
        if let Err(e) = fs::write(path, export::dot(&ts)) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    if args.quiet {
        for v in &report.sort_violations {
            eprintln!(
                "{}: sort violation in state {}: {}: {} (violates {})",
                report.file, v.state, v.location, v.message, v.constraint
            );
        }
    } else {
        report::print_human(&report, duration);
    }

    if !report.sort_violations.is_empty() {
        EXIT_INPUT
    } else if report.properties.iter().any(|p| !p.holds) {
        EXIT_REFUTED
    } else {
        EXIT_OK
    }
}

fn run_export(args: ExportArgs) -> u8 {
    let (display, model) = match load(&args.file) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let ts = match explore(&model, args.max_states, &display) {
        Ok(ts) => ts,
        Err(code) => return code,
    };
    let body = match args.format {
        ExportFormat::Dot => export::dot(&ts),
        ExportFormat::Json => export::lts_json(&ts, &display) + "\n",
    };
    if let Err(e) = fs::write(&args.out, body) {
        eprintln!("error: {}: {e}", args.out.display());
        return EXIT_INPUT;
    }
    EXIT_OK
}

fn run_init(args: InitArgs) -> u8 {
    let all = fixtures();
    let Some(name) = args.example else {
        println!("available examples:");
        for f in &all {
            println!("  {}", f.name);
        }
        return EXIT_OK;
    };
    let Some(f) = all.iter().find(|f| f.name == name) else {
        eprintln!("error: no example named `{name}`; available:");
        for f in &all {
            eprintln!("  {}", f.name);
        }
        return EXIT_INPUT;
    };
    let path = PathBuf::from(format!("{}.bgm", f.name));
    if path.exists() {
        eprintln!("error: {} already exists", path.display());
        return EXIT_INPUT;
    }
    if let Err(e) = fs::write(&path, f.text) {
        eprintln!("error: {}: {e}", path.display());
        return EXIT_INPUT;
    }
    println!("wrote {}", path.display());
    EXIT_OK
}
