//! Exact Ehrhart polynomial toolkit.
//!
//! Constructs polytope spec files, counts lattice points of dilates,
//! recovers Ehrhart polynomials, checks them against closed forms, and
//! reports coefficient signs, thresholds, and positive real roots — all in
//! exact arithmetic. A verdict is only ever "pass" on exact equality.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 invalid input,
//! 3 counting-budget refusal.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ehrhart::counting::{CountOptions, DEFAULT_MAX_POINTS};
use ehrhart::{
    closed_form_ehrhart, coefficient_report, count_positive_real_roots, delta_vector,
    ehrhart_polynomial_with, isolate_positive_roots, min_m_with_positive_root, min_negative_m,
    parse_spec, rat, reeve, reeve_family, reeve_polynomial, serialize_spec, slope_factor,
    Error as LibError, LatticePolytope, Rat, RootInterval,
};
use num_traits::{Signed, ToPrimitive};
use report::{big_json, check_json, delta_json, interval_json, poly_json, rat_json};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

const EXIT_VERIFY_FAIL: i32 = 1;
const EXIT_INVALID: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(name = "ehrhart", version, about = "Exact Ehrhart polynomial toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a polytope from a named family and write its spec file
    Construct {
        /// Which family to construct
        #[arg(long, value_enum)]
        family: Family,
        /// Tetrahedron parameter m >= 1
        #[arg(long)]
        m: u64,
        /// Target dimension (paper family only, d >= 4)
        #[arg(long)]
        d: Option<u32>,
        /// Write the spec document here; without it the spec goes to stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the machine-readable JSON report on stdout
        #[arg(long)]
        json: bool,
    },
    /// Count dilates of a spec file and recover its Ehrhart polynomial
    Ehrhart {
        /// Polytope spec file
        spec: PathBuf,
        #[command(flatten)]
        counting: CountingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the closed-form Ehrhart polynomial of the prism family
    ClosedForm {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Brute-force counts versus the closed form, exact equality only
    Verify {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        counting: CountingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per-degree coefficient table with exact values and signs
    Signs {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Least m at which every middle coefficient turns negative
    FindMinM {
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the coefficient slope factors for positivity
    Gcheck {
        /// Upper end of the dimension sweep (starts at 5)
        #[arg(long)]
        d_max: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Positive real roots with exact isolating intervals
    Roots {
        /// Polytope spec file whose Ehrhart polynomial is analyzed
        spec: Option<PathBuf>,
        /// Scan m upward for the least tetrahedron with a positive root
        #[arg(long, conflicts_with = "spec")]
        scan_min_m: bool,
        /// Add decimal approximations, clearly labeled
        #[arg(long)]
        approx: bool,
        #[command(flatten)]
        counting: CountingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Reeve,
    Paper,
}

#[derive(Args)]
struct CountingArgs {
    /// Candidate-point budget for a single enumeration
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: u64,
    /// Cap the counting worker threads (counts are independent of this)
    #[arg(long)]
    threads: Option<usize>,
}

impl CountingArgs {
    fn options(&self) -> CountOptions {
        CountOptions {
            max_points: self.max_points,
            threads: self.threads,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the machine-readable JSON report on stdout
    #[arg(long)]
    json: bool,
    /// Write the JSON report to this file (stdout keeps the human text)
    #[arg(long)]
    out: Option<PathBuf>,
}

struct CliError {
    code: i32,
    message: String,
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        let code = match &e {
            LibError::BudgetExceeded { .. } => EXIT_BUDGET,
            LibError::NotEhrhartConsistent(_)
            | LibError::Internal(_)
            | LibError::NonIntegerDelta { .. } => EXIT_VERIFY_FAIL,
            _ => EXIT_INVALID,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INVALID,
        message: msg.into(),
    }
}

type CmdResult = Result<i32, CliError>;

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(cli.command);
    eprintln!("timing: total {:.3}s", started.elapsed().as_secs_f64());
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Construct {
            family,
            m,
            d,
            out,
            json,
        } => cmd_construct(family, m, d, out.as_deref(), json),
        Command::Ehrhart {
            spec,
            counting,
            output,
        } => cmd_ehrhart(&spec, &counting, &output),
        Command::ClosedForm { d, m, output } => cmd_closed_form(d, m, &output),
        Command::Verify {
            d,
            m,
            counting,
            output,
        } => cmd_verify(d, m, &counting, &output),
        Command::Signs { d, m, output } => cmd_signs(d, m, &output),
        Command::FindMinM { d, output } => cmd_find_min_m(d, &output),
        Command::Gcheck { d_max, output } => cmd_gcheck(d_max, &output),
        Command::Roots {
            spec,
            scan_min_m,
            approx,
            counting,
            output,
        } => cmd_roots(spec.as_deref(), scan_min_m, approx, &counting, &output),
    }
}

/// Emits the report: JSON to `--report-out` when given, JSON to stdout
/// under `--json`, otherwise the human text to stdout. JSON output is a
/// pure function of the inputs — byte-identical across runs.
fn emit(output: &OutputArgs, report: &Value, text: &str) -> Result<(), CliError> {
    let rendered = serde_json::to_string_pretty(report)
        .expect("report serialization cannot fail")
        + "\n";
    if let Some(path) = &output.out {
        std::fs::write(path, &rendered)?;
    }
    if output.json && output.out.is_none() {
        print!("{rendered}");
    } else {
        println!("{text}");
    }
    Ok(())
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn describe(p: &LatticePolytope) -> Vec<String> {
    match p {
        LatticePolytope::Simplex(s) => s
            .vertices()
            .iter()
            .map(|v| {
                let coords: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                format!("vertex ({})", coords.join(", "))
            })
            .collect(),
        LatticePolytope::Box(b) => b
            .intervals()
            .iter()
            .map(|(lo, hi)| format!("interval [{lo}, {hi}]"))
            .collect(),
        LatticePolytope::Product(fs) => fs
            .iter()
            .map(|f| format!("factor {} (dim {})", f.kind_name(), f.dimension()))
            .collect(),
        LatticePolytope::HRep(h) => vec![format!(
            "{} inequalities, bbox {}",
            h.inequalities().len(),
            h.bbox()
                .iter()
                .map(|(lo, hi)| format!("[{lo}, {hi}]"))
                .collect::<Vec<_>>()
                .join(" x ")
        )],
    }
}

fn cmd_construct(
    family: Family,
    m: u64,
    d: Option<u32>,
    out: Option<&Path>,
    json: bool,
) -> CmdResult {
    let (polytope, family_name) = match family {
        Family::Reeve => {
            if d.is_some() {
                return Err(invalid("--d is only meaningful for --family paper"));
            }
            (reeve(m)?, "reeve")
        }
        Family::Paper => {
            let d = d.ok_or_else(|| invalid("--family paper requires --d"))?;
            (reeve_family(d, m)?, "paper")
        }
    };
    let spec_text = serialize_spec(&polytope);
    if let Some(path) = out {
        std::fs::write(path, &spec_text)?;
    }

    let dim = polytope.dimension();
    let summary = describe(&polytope);
    let spec_value: Value =
        serde_json::from_str(&spec_text).expect("generated spec is valid JSON");
    let report = json!({
        "command": "construct",
        "inputs": {
            "family": family_name,
            "m": m,
            "d": d,
        },
        "dim": dim,
        "kind": polytope.kind_name(),
        "summary": summary,
        "spec_sha256": sha256_hex(spec_text.as_bytes()),
        "out": out.map(|p| p.display().to_string()),
        "spec": spec_value,
    });

    let mut text = String::new();
    let _ = writeln!(text, "constructed {} of dimension {dim}", polytope.kind_name());
    for line in &summary {
        let _ = writeln!(text, "  {line}");
    }
    match out {
        Some(path) => {
            let _ = write!(text, "wrote {}", path.display());
        }
        None => {
            // No destination: the spec document itself is the payload.
            let _ = write!(text, "{spec_text}");
        }
    }
    emit(
        &OutputArgs { json, out: None },
        &report,
        &text,
    )?;
    Ok(0)
}

struct LoadedSpec {
    polytope: LatticePolytope,
    sha256: String,
}

fn load_spec(path: &Path) -> Result<LoadedSpec, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| invalid(format!("{} is not UTF-8", path.display())))?;
    let polytope = parse_spec(&text)?;
    Ok(LoadedSpec {
        polytope,
        sha256: sha256_hex(text.as_bytes()),
    })
}

fn cmd_ehrhart(spec: &Path, counting: &CountingArgs, output: &OutputArgs) -> CmdResult {
    let loaded = load_spec(spec)?;
    let dim = loaded.polytope.dimension();

    let counting_started = Instant::now();
    let poly = ehrhart_polynomial_with(&loaded.polytope, &counting.options())?;
    eprintln!(
        "timing: counting {:.3}s",
        counting_started.elapsed().as_secs_f64()
    );

    let delta = delta_vector(&poly, dim)?;
    let positive_roots = count_positive_real_roots(&poly)?;

    let report = json!({
        "command": "ehrhart",
        "inputs": {
            "spec_path": spec.display().to_string(),
            "spec_sha256": loaded.sha256,
            "max_points": counting.max_points,
        },
        "kind": loaded.polytope.kind_name(),
        "dim": dim,
        "polynomial": poly_json(&poly),
        "delta": delta_json(&delta),
        "positive_real_roots": positive_roots,
        "checks": [
            check_json("interpolation-guard", true),
            check_json("delta-integrality", true),
        ],
    });

    let mut text = String::new();
    let _ = writeln!(
        text,
        "spec: {} ({}, dim {dim}, sha256 {})",
        spec.display(),
        loaded.polytope.kind_name(),
        loaded.sha256
    );
    let _ = writeln!(text, "polynomial: {poly}");
    let _ = writeln!(text, "delta: {delta}");
    let _ = write!(text, "positive real roots: {positive_roots}");
    emit(output, &report, &text)?;
    Ok(0)
}

fn cmd_closed_form(d: u32, m: u64, output: &OutputArgs) -> CmdResult {
    let poly = closed_form_ehrhart(d, m)?;
    let report = json!({
        "command": "closed-form",
        "inputs": { "d": d, "m": m },
        "polynomial": poly_json(&poly),
    });
    emit(output, &report, &format!("polynomial: {poly}"))?;
    Ok(0)
}

fn cmd_verify(d: u32, m: u64, counting: &CountingArgs, output: &OutputArgs) -> CmdResult {
    let family = reeve_family(d, m)?;
    let counting_started = Instant::now();
    let brute = ehrhart_polynomial_with(&family, &counting.options())?;
    eprintln!(
        "timing: counting {:.3}s",
        counting_started.elapsed().as_secs_f64()
    );
    let closed = closed_form_ehrhart(d, m)?;
    let pass = brute == closed;

    let report = json!({
        "command": "verify",
        "inputs": { "d": d, "m": m, "max_points": counting.max_points },
        "verdict": if pass { "pass" } else { "fail" },
        "brute_force": poly_json(&brute),
        "closed_form": poly_json(&closed),
        "checks": [check_json("brute-force-equals-closed-form", pass)],
    });

    let mut text = String::new();
    let _ = writeln!(
        text,
        "verify d={d} m={m}: brute-force counts vs closed form -> {}",
        if pass { "pass" } else { "FAIL" }
    );
    if pass {
        let _ = write!(text, "polynomial: {brute}");
    } else {
        let _ = writeln!(text, "brute force: {brute}");
        let _ = write!(text, "closed form: {closed}");
    }
    emit(output, &report, &text)?;
    Ok(if pass { 0 } else { EXIT_VERIFY_FAIL })
}

fn signs_rows(reportv: &ehrhart::CoefficientReport) -> (Vec<Value>, String) {
    let mut rows = Vec::new();
    let mut text = String::new();
    for (j, (c, sign)) in reportv
        .coefficients
        .iter()
        .zip(&reportv.signs)
        .enumerate()
    {
        rows.push(json!({
            "degree": j,
            "value": rat_json(c),
            "display": c.to_string(),
            "sign": sign,
        }));
        let _ = writeln!(text, "n^{j}: {c} {sign}");
    }
    (rows, text)
}

fn cmd_signs(d: u32, m: u64, output: &OutputArgs) -> CmdResult {
    let r = coefficient_report(d, m)?;
    let (rows, rows_text) = signs_rows(&r);
    let report = json!({
        "command": "signs",
        "inputs": { "d": d, "m": m },
        "coefficients": rows,
        "prism_coeffs": r.prism_coeffs.iter().map(big_json).collect::<Vec<_>>(),
        "slope_factors": r
            .slope_factors
            .iter()
            .map(|(j, g)| json!({ "j": j, "value": big_json(g) }))
            .collect::<Vec<_>>(),
        "all_middle_negative": r.all_middle_negative,
        "checks": [check_json("coefficient-routes-agree", true)],
    });
    let text = format!(
        "{rows_text}all middle negative (n^1..n^{}): {}",
        d - 2,
        r.all_middle_negative
    );
    emit(output, &report, &text)?;
    Ok(0)
}

fn cmd_find_min_m(d: u32, output: &OutputArgs) -> CmdResult {
    let m = min_negative_m(d)?;
    let at_m = coefficient_report(d, m)?;
    let at_prev = coefficient_report(d, m - 1)?;

    let middles = |r: &ehrhart::CoefficientReport| -> Vec<Value> {
        (1..=(d - 2) as usize)
            .map(|j| {
                json!({
                    "degree": j,
                    "value": rat_json(&r.coefficients[j]),
                    "display": r.coefficients[j].to_string(),
                    "sign": r.signs[j],
                })
            })
            .collect()
    };
    let report = json!({
        "command": "find-min-m",
        "inputs": { "d": d },
        "min_m": m,
        "at_min_m": middles(&at_m),
        "at_previous_m": middles(&at_prev),
        "checks": [
            check_json("all-middle-negative-at-min-m", at_m.all_middle_negative),
            check_json("witness-at-previous-m", !at_prev.all_middle_negative),
        ],
    });

    let mut text = String::new();
    let _ = writeln!(text, "least m with all middle coefficients negative: {m}");
    let row = |r: &ehrhart::CoefficientReport| {
        (1..=(d - 2) as usize)
            .map(|j| format!("n^{j}: {} {}", r.coefficients[j], r.signs[j]))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(text, "at m = {m}: {}", row(&at_m));
    let _ = write!(text, "at m = {}: {}", m - 1, row(&at_prev));
    emit(output, &report, &text)?;
    Ok(0)
}

fn cmd_gcheck(d_max: u32, output: &OutputArgs) -> CmdResult {
    if d_max < 5 {
        return Err(invalid("--d-max must be at least 5"));
    }
    let mut checked = 0usize;
    let mut violations = Vec::new();
    for d in 5..=d_max {
        for j in 3..=d - 2 {
            let g = slope_factor(d, j)?;
            checked += 1;
            if !g.is_positive() {
                violations.push(json!({ "d": d, "j": j, "value": big_json(&g) }));
            }
        }
    }
    let pass = violations.is_empty();
    let report = json!({
        "command": "gcheck",
        "inputs": { "d_max": d_max },
        "values_checked": checked,
        "verdict": if pass { "pass" } else { "fail" },
        "violations": violations,
    });
    let text = if pass {
        format!("slope factors positive for 5 <= d <= {d_max} ({checked} values)")
    } else {
        format!("found non-positive slope factors ({checked} values checked)")
    };
    emit(output, &report, &text)?;
    Ok(if pass { 0 } else { EXIT_VERIFY_FAIL })
}

/// Presentation width for isolating intervals.
fn interval_width() -> Rat {
    rat(1, 64)
}

fn interval_lines(intervals: &[RootInterval], approx: bool) -> String {
    let mut text = String::new();
    for iv in intervals {
        if iv.lo == iv.hi {
            let _ = write!(text, "\nroot = {} exactly", iv.lo);
        } else {
            let _ = write!(text, "\nroot in ({}, {}]", iv.lo, iv.hi);
        }
        if approx {
            let mid = (&iv.lo + &iv.hi) / rat(2, 1);
            let _ = write!(
                text,
                "  ~ {:.6} (approx)",
                mid.to_f64().unwrap_or(f64::NAN)
            );
        }
    }
    text
}

fn cmd_roots(
    spec: Option<&Path>,
    scan_min_m: bool,
    approx: bool,
    counting: &CountingArgs,
    output: &OutputArgs,
) -> CmdResult {
    match (spec, scan_min_m) {
        (Some(path), false) => cmd_roots_of_spec(path, approx, counting, output),
        (None, true) => cmd_roots_scan(approx, output),
        _ => Err(invalid("pass a spec file or --scan-min-m")),
    }
}

fn cmd_roots_of_spec(
    spec: &Path,
    approx: bool,
    counting: &CountingArgs,
    output: &OutputArgs,
) -> CmdResult {
    let loaded = load_spec(spec)?;
    let poly = ehrhart_polynomial_with(&loaded.polytope, &counting.options())?;
    let count = count_positive_real_roots(&poly)?;
    let intervals = isolate_positive_roots(&poly, Some(&interval_width()))?;

    let report = json!({
        "command": "roots",
        "inputs": {
            "spec_path": spec.display().to_string(),
            "spec_sha256": loaded.sha256,
            "max_points": counting.max_points,
        },
        "polynomial": poly_json(&poly),
        "positive_real_roots": count,
        "isolating_intervals": intervals.iter().map(interval_json).collect::<Vec<_>>(),
    });

    let mut text = String::new();
    let _ = writeln!(text, "polynomial: {poly}");
    let _ = write!(text, "positive real roots: {count}");
    text.push_str(&interval_lines(&intervals, approx));
    emit(output, &report, &text)?;
    Ok(0)
}

fn cmd_roots_scan(approx: bool, output: &OutputArgs) -> CmdResult {
    let m = min_m_with_positive_root();
    let poly = reeve_polynomial(m);
    let count = count_positive_real_roots(&poly)?;
    let intervals = isolate_positive_roots(&poly, Some(&interval_width()))?;
    let below = count_positive_real_roots(&reeve_polynomial(m - 1))?;

    let report = json!({
        "command": "roots",
        "inputs": { "scan_min_m": true },
        "min_m": m,
        "polynomial": poly_json(&poly),
        "positive_real_roots": count,
        "positive_real_roots_below": below,
        "isolating_intervals": intervals.iter().map(interval_json).collect::<Vec<_>>(),
        "checks": [check_json("no-positive-root-below-min-m", below == 0)],
    });

    let mut text = String::new();
    let _ = writeln!(text, "least m with a positive real root: {m}");
    let _ = writeln!(text, "polynomial: {poly}");
    let _ = write!(text, "positive real roots: {count} (at m = {}: {below})", m - 1);
    text.push_str(&interval_lines(&intervals, approx));
    emit(output, &report, &text)?;
    Ok(0)
}
