//! Run reports: the JSON document written by `check --json` and the
//! human-readable summary printed to stdout.

use std::time::Duration;

use serde::Serialize;

/// Machine-readable outcome of one `check` run.
#[derive(Debug, Serialize)]
pub struct RunReport {
    /// Report format version.
    pub schema: u32,
    pub file: String,
    pub states: usize,
    pub transitions: usize,
    pub deadlocks: usize,
    /// Rule applications before isomorphism deduplication.
    pub raw_occurrences: usize,
    pub duration_ms: u128,
    /// Which states were checked against the sort scheme:
    /// "none", "initial", or "all".
    pub sorts_checked: &'static str,
    pub sort_violations: Vec<DiagnosticReport>,
    pub properties: Vec<PropertyReport>,
}

#[derive(Debug, Serialize)]
pub struct DiagnosticReport {
    /// State the violation was found in (0 is the initial state).
    pub state: usize,
    pub location: String,
    pub constraint: String,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub formula: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<TraceReport>,
}

#[derive(Debug, Serialize)]
pub struct TraceReport {
    pub states: Vec<usize>,
    pub rules: Vec<String>,
}

fn fmt_duration(d: Duration) -> String {
    if d.as_millis() < 1000 {
        format!("{} ms", d.as_millis())
    } else {
        format!("{:.1} s", d.as_secs_f64())
    }
}

/// Print the summary a person reads at the terminal.
pub fn print_human(report: &RunReport, duration: Duration) {
    println!(
        "{}: {} states, {} transitions in {}",
        report.file,
        report.states,
        report.transitions,
        fmt_duration(duration)
    );
    match report.sorts_checked {
        "none" => println!("sorts: no scheme declared"),
        "initial" => {
            if report.sort_violations.is_empty() {
                println!("sorts: initial state conforms");
            }
        }
        _ => {
            if report.sort_violations.is_empty() {
                println!("sorts: all {} states conform", report.states);
            }
        }
    }
    for v in &report.sort_violations {
        println!(
            "sort violation in state {}: {}: {} (violates {})",
            v.state, v.location, v.message, v.constraint
        );
    }

    if report.properties.is_empty() {
        println!("no properties declared");
        return;
    }
    for p in &report.properties {
        let mark = if p.holds { "pass " } else { "FAIL " };
        println!("  {mark} {}", p.name);
        if let Some(trace) = &p.counterexample {
            let steps = trace.rules.len();
            let last_state = trace.states.last().copied().unwrap_or_default();
            match trace.rules.last() {
                Some(rule) => println!(
                    "        refuted by `{rule}` after {steps} step{} (state {last_state})",
                    if steps == 1 { "" } else { "s" }
                ),
                None => println!("        refuted in the initial state"),
            }
        }
    }
    let failing = report.properties.iter().filter(|p| !p.holds).count();
    let total = report.properties.len();
    if failing == 0 {
        println!(
            "all {total} propert{} hold",
            if total == 1 { "y" } else { "ies" }
        );
    } else {
        println!("{failing} of {total} properties fail");
    }
}
