// Copyright 2026 The triwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

mod output;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use output::{num, OutputFormat};
use triwit_core::{
    certify_witness, detection_boundary, evaluate, kay_state, kye_state, linspace, scan_kay, scan_kye,
    witness_by_label, witness_family, CRule, DensityMatrix, DetectionRecord, OptimizerConfig, Witness,
};

const PPT_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "triwit", version, about = "Three-qubit entanglement witnesses and bound entangled states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Kay or Kye state and report its spectrum and PPT status.
    State {
        #[command(subcommand)]
        family: StateFamily,
    },
    /// Evaluate a witness on a state, e.g. `--witness W1 --state kay:a=2.5`.
    Eval {
        #[arg(long)]
        witness: String,
        #[arg(long)]
        state: String,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Scan a state family over a parameter range.
    Scan {
        #[command(subcommand)]
        family: ScanFamily,
    },
    /// Maximize the product-state objective of one witness, or `all`.
    Certify {
        #[arg(long, default_value = "W1")]
        witness: String,
        #[arg(long, default_value_t = 9)]
        grid: usize,
        #[arg(long, default_value_t = 200)]
        refine: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
}

#[derive(Args)]
struct StateFlags {
    /// Print all eigenvalues.
    #[arg(long)]
    eigs: bool,
    /// Print per-qubit PPT flags.
    #[arg(long)]
    ppt: bool,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Subcommand)]
enum StateFamily {
    Kay {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[command(flatten)]
        flags: StateFlags,
    },
    Kye {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[command(flatten)]
        flags: StateFlags,
    },
}

#[derive(Args)]
struct ScanFlags {
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    witness: Option<String>,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum ScanFamily {
    Kay {
        #[arg(long, allow_negative_numbers = true)]
        a_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        a_max: f64,
        #[command(flatten)]
        flags: ScanFlags,
    },
    Kye {
        #[arg(long, allow_negative_numbers = true)]
        b_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        b_max: f64,
        /// A fixed value, or `inverse` for c = 1/b.
        #[arg(long)]
        c: String,
        #[command(flatten)]
        flags: ScanFlags,
    },
}

enum CliError {
    Invalid(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<triwit_core::Error> for CliError {
    fn from(e: triwit_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::State { family } => cmd_state(family),
        Command::Eval { witness, state, format } => cmd_eval(&witness, &state, format),
        Command::Scan { family } => cmd_scan(family),
        Command::Certify { witness, grid, refine, tol, seed, format } => {
            let config = OptimizerConfig { grid_points_per_axis: grid, refine_iterations: refine, tolerance: tol, seed };
            cmd_certify(&witness, &config, format)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Invalid(msg) | CliError::Io(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Serialize)]
struct StateReport {
    family: String,
    param_a: Option<f64>,
    param_b: Option<f64>,
    param_c: Option<f64>,
    trace: f64,
    min_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ppt: Option<[bool; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pt_min_eigenvalues: Option<[f64; 3]>,
}

fn cmd_state(family: StateFamily) -> CliResult<()> {
    let (rho, flags) = match family {
        StateFamily::Kay { a, flags } => (kay_state(a)?, flags),
        StateFamily::Kye { b, c, flags } => (kye_state(b, c)?, flags),
    };
    let eigenvalues = rho.eigenvalues()?;
    let pt_min = if flags.ppt { Some(rho.pt_min_eigenvalues()?) } else { None };
    let (param_a, param_b, param_c) = params_of(&rho);
    let report = StateReport {
        family: rho.family().name().to_string(),
        param_a,
        param_b,
        param_c,
        trace: rho.matrix().trace().re,
        min_eigenvalue: eigenvalues[0],
        eigenvalues: flags.eigs.then(|| eigenvalues.clone()),
        ppt: pt_min.map(|m| m.map(|v| v >= -PPT_TOL)),
        pt_min_eigenvalues: pt_min,
    };

    let text = match flags.format {
        None => {
            let mut s = String::new();
            let _ = writeln!(s, "family: {}", report.family);
            for (name, v) in [("a", param_a), ("b", param_b), ("c", param_c)] {
                if let Some(v) = v {
                    let _ = writeln!(s, "{name}: {}", num(v));
                }
            }
            let _ = writeln!(s, "trace: {}", num(report.trace));
            let _ = writeln!(s, "min eigenvalue: {}", num(report.min_eigenvalue));
            if let Some(e) = &report.eigenvalues {
                let _ = writeln!(s, "eigenvalues: [{}]", join(e.iter().map(|&x| num(x))));
            }
            if let (Some(ppt), Some(m)) = (report.ppt, report.pt_min_eigenvalues) {
                let _ = writeln!(s, "ppt: [{}]", join(ppt.iter().map(bool::to_string)));
                let _ = writeln!(s, "pt min eigenvalues: [{}]", join(m.iter().map(|&x| num(x))));
            }
            s
        }
        Some(OutputFormat::Json) => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Some(OutputFormat::Csv) => {
            let mut s = String::from(
                "family,param_a,param_b,param_c,trace,min_eigenvalue,ppt_q1,ppt_q2,ppt_q3,eigenvalues\n",
            );
            let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
            let ppt: Vec<String> =
                report.ppt.map(|p| p.iter().map(bool::to_string).collect()).unwrap_or_else(|| vec![String::new(); 3]);
            let eigs = report.eigenvalues.as_ref().map(|e| join_with(e.iter().map(|&x| num(x)), ";")).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                report.family,
                opt(param_a),
                opt(param_b),
                opt(param_c),
                num(report.trace),
                num(report.min_eigenvalue),
                ppt.join(","),
                eigs
            );
            s
        }
    };
    print!("{text}");
    Ok(())
}

fn params_of(rho: &DensityMatrix) -> (Option<f64>, Option<f64>, Option<f64>) {
    match *rho.family() {
        triwit_core::Family::Kay { a } => (Some(a), None, None),
        triwit_core::Family::Kye { b, c } => (None, Some(b), Some(c)),
        _ => (None, None, None),
    }
}

fn join(items: impl Iterator<Item = String>) -> String {
    join_with(items, ", ")
}

fn join_with(items: impl Iterator<Item = String>, sep: &str) -> String {
    items.collect::<Vec<_>>().join(sep)
}

/// Parses `kay:a=2.5` or `kye:b=1,c=1`.
fn parse_state(spec: &str) -> CliResult<DensityMatrix> {
    let bad = |why: &str| CliError::Invalid(format!("bad state spec '{spec}': {why}"));
    let (family, rest) = spec.split_once(':').ok_or_else(|| bad("expected family:key=value,..."))?;
    let mut a = None;
    let mut b = None;
    let mut c = None;
    for pair in rest.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = pair.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        let value: f64 = value.trim().parse().map_err(|_| bad(&format!("'{value}' is not a number")))?;
        match key.trim() {
            "a" => a = Some(value),
            "b" => b = Some(value),
            "c" => c = Some(value),
            other => return Err(bad(&format!("unknown parameter '{other}'"))),
        }
    }
    match family.trim() {
        "kay" => Ok(kay_state(a.ok_or_else(|| bad("missing a"))?)?),
        "kye" => Ok(kye_state(b.ok_or_else(|| bad("missing b"))?, c.ok_or_else(|| bad("missing c"))?)?),
        other => Err(bad(&format!("unknown family '{other}'"))),
    }
}

fn cmd_eval(witness: &str, state: &str, format: Option<OutputFormat>) -> CliResult<()> {
    let w = witness_by_label(witness)?;
    let rho = parse_state(state)?;
    let record = evaluate(&w, &rho, PPT_TOL)?;
    match format {
        Some(f) => print!("{}", output::records(std::slice::from_ref(&record), f)),
        None => {
            println!("witness: {}", record.witness);
            let params: Vec<String> = record.params.iter().map(|(k, v)| format!("{k}={}", num(*v))).collect();
            println!("state: {} {}", record.family, params.join(","));
            println!("expectation: {}", num(record.expectation));
            if let Some(closed) = record.closed_form {
                println!("closed form: {} (|difference| {:e})", num(closed), (closed - record.expectation).abs());
            }
            println!("detected: {}", record.detected);
            println!("ppt: [{}]", join(record.ppt.iter().map(bool::to_string)));
        }
    }
    Ok(())
}

fn scan_witness(label: Option<&str>, default: &str) -> CliResult<Witness> {
    Ok(witness_by_label(label.unwrap_or(default))?)
}

fn cmd_scan(family: ScanFamily) -> CliResult<()> {
    let (records, flags) = match family {
        ScanFamily::Kay { a_min, a_max, flags } => {
            let w = scan_witness(flags.witness.as_deref(), "W1")?;
            (scan_kay(a_min, a_max, flags.steps, &w)?, flags)
        }
        ScanFamily::Kye { b_min, b_max, c, flags } => {
            let w = scan_witness(flags.witness.as_deref(), "W2")?;
            if !(b_min.is_finite() && b_max.is_finite()) || b_min <= 0.0 || b_min >= b_max {
                return Err(CliError::Invalid(format!("need 0 < b_min < b_max (got {b_min}, {b_max})")));
            }
            if flags.steps < 2 {
                return Err(CliError::Invalid(format!("steps must be >= 2 (got {})", flags.steps)));
            }
            let rule = match c.trim() {
                "inverse" => CRule::Inverse,
                value => CRule::Fixed(
                    value.parse().map_err(|_| CliError::Invalid(format!("--c must be a number or 'inverse' (got {value})")))?,
                ),
            };
            (scan_kye(&linspace(b_min, b_max, flags.steps), rule, &w)?, flags)
        }
    };

    let payload = output::records(&records, flags.format);
    let summary = summarize(&records);
    match &flags.out {
        Some(path) => {
            std::fs::write(path, payload)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            print!("{payload}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn summarize(records: &[DetectionRecord]) -> String {
    let detected = records.iter().filter(|r| r.detected).count();
    let pct = 100.0 * detected as f64 / records.len() as f64;
    let mut s = format!(
        "{} scan with {}: {} points, {} detected ({pct:.1}%)",
        records[0].family,
        records[0].witness,
        records.len(),
        detected
    );
    match detection_boundary(records) {
        Some((lo, hi)) => {
            let _ = write!(s, ", detection boundary in [{}, {}]", num(lo), num(hi));
        }
        None => s.push_str(", no sign change"),
    }
    s
}

fn cmd_certify(witness: &str, config: &OptimizerConfig, format: Option<OutputFormat>) -> CliResult<()> {
    let witnesses = if witness.eq_ignore_ascii_case("all") { witness_family() } else { vec![witness_by_label(witness)?] };
    let reports = witnesses.iter().map(|w| certify_witness(w, config)).collect::<Result<Vec<_>, _>>()?;
    match format {
        Some(f) => print!("{}", output::certifications(&reports, f)),
        None => {
            for c in &reports {
                let note = if c.converged { "" } else { " (not converged; value is a lower bound on the maximum)" };
                println!(
                    "{:<6} max {:.12} min expectation {:+.3e} {} evaluations {} angles [{}]{note}",
                    c.witness,
                    c.max_angle_objective,
                    c.min_expectation,
                    if c.pass { "pass" } else { "FAIL" },
                    c.evaluations,
                    join(c.best_angles.iter().map(|x| format!("{x:.6}")))
                );
            }
            let passed = reports.iter().filter(|c| c.pass).count();
            println!("{passed}/{} passed", reports.len());
        }
    }
    Ok(())
}
