use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;
use zx_core::rules::{
    apply, find_matches, lemma_endpoint_catalog, rule_catalog, soundness_cases, verify_derivation_with, Anchor,
    Derivation, Direction, Rule, RuleInstance,
};
use zx_core::semantics::{evaluate, evaluate_float, matrices_equal, semantically_equal, Comparison, Entry, Matrix};
use zx_core::sharp::{
    incompleteness_witness, scan_table, sharp, sharp_simplified, supp_gap, supp_gap_float, ScanStatus, SharpParams,
};
use zx_core::twins::{find_antiphase_twins, merge_all_twins, merge_case};
use zx_core::{Diagram, Phase, VertexId, ZxError};

#[derive(Parser)]
#[command(name = "zx", version, about = "ZX-calculus diagrams: evaluate, rewrite, sharpen, merge twins")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct Arith {
    /// Exact cyclotomic arithmetic (the default).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Floating-point arithmetic; needed for non-dyadic phases.
    #[arg(long)]
    float: bool,
    /// Tolerance for floating-point comparisons and display.
    #[arg(long, default_value_t = 1e-9, requires = "float")]
    tol: f64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the matrix of a diagram.
    Eval {
        diagram: PathBuf,
        #[command(flatten)]
        arith: Arith,
    },
    /// Check every catalog rule (and optional extra equations) on a phase grid.
    CheckRules {
        /// Phases kπ/N for a power of two N.
        #[arg(long, default_value_t = 4)]
        grid: u32,
        /// JSON list of {"name", "lhs", "rhs"} equations to check as well.
        #[arg(long)]
        rules: Option<PathBuf>,
        #[command(flatten)]
        arith: Arith,
    },
    /// Apply one rule once.
    Rewrite {
        diagram: PathBuf,
        #[arg(long)]
        rule: String,
        #[arg(long, default_value = "LR", value_parser = parse_dir)]
        dir: Direction,
        /// Comma-separated vertex ids the match must cover.
        #[arg(long)]
        at: Option<String>,
        #[arg(long, value_parser = parse_phase)]
        alpha: Option<Phase>,
        #[arg(long)]
        arity: Option<usize>,
        /// List the matches instead of rewriting.
        #[arg(long)]
        list: bool,
    },
    /// Replay a derivation script, checking semantics after every step.
    Verify {
        script: PathBuf,
        /// Refuse steps using derived rules (SUP, HOPF, GBIALG).
        #[arg(long)]
        no_sup: bool,
    },
    /// Check the lemma endpoint families.
    Lemmas {
        #[arg(long, value_parser = parse_phase)]
        alpha: Option<Phase>,
        #[arg(long, default_value_t = 8)]
        grid: u32,
    },
    /// Emit the k-copy image of a diagram.
    Sharp {
        diagram: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        l: i64,
        /// Drop gadgets whose leaf phase vanishes.
        #[arg(long)]
        simplify: bool,
    },
    /// Per-rule soundness of the k-copy interpretation for k ≤ kmax and ℓ in a range.
    Scan {
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        lrange: String,
        #[arg(long, default_value_t = 4)]
        grid: u32,
    },
    /// Compare both sides of supplementarity after sharpening and plugging 011.
    Witness {
        #[arg(long, value_parser = parse_phase)]
        alpha: Phase,
    },
    /// Tabulate (1 + e^{2iα})(1 − e^{4iα}) over kπ/N.
    Suppgap {
        #[arg(long, default_value_t = 8)]
        grid: u32,
    },
    /// List antiphase twin pairs, or merge them.
    Twins {
        diagram: PathBuf,
        #[arg(long)]
        merge: bool,
        #[arg(long, requires = "merge")]
        no_sup: bool,
        /// Where to write the certificate (defaults to <out>.cert.json, or inline).
        #[arg(long, requires = "merge")]
        cert: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<ZxError> for CliError {
    fn from(e: ZxError) -> Self {
        match e {
            ZxError::FragmentViolation | ZxError::Unreplayable { .. } | ZxError::SemanticDrift { .. } => {
                CliError::Failed(e.to_string())
            }
            e => CliError::Usage(e.to_string()),
        }
    }
}

type Res<T> = Result<T, CliError>;

fn parse_phase(s: &str) -> Result<Phase, String> {
    s.parse::<Phase>().map_err(|e| e.to_string())
}

fn parse_dir(s: &str) -> Result<Direction, String> {
    match s.to_ascii_uppercase().as_str() {
        "LR" => Ok(Direction::LR),
        "RL" => Ok(Direction::RL),
        _ => Err(format!("direction must be LR or RL, not `{s}`")),
    }
}

fn grid_phases(n: u32) -> Res<Vec<Phase>> {
    if !n.is_power_of_two() {
        return Err(CliError::Usage(format!("--grid must be a power of two, not {n}")));
    }
    Ok(Phase::dyadic_grid(n.trailing_zeros()))
}

fn parse_range(s: &str) -> Res<Vec<i64>> {
    let bad = || CliError::Usage(format!("--lrange expects a..b, not `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn read(p: &Path) -> Res<String> {
    std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
}

fn load_diagram(p: &Path) -> Res<Diagram> {
    let d = Diagram::from_json(&read(p)?).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
    d.validate()?;
    Ok(d)
}

fn write_file(p: &Path, s: &str) -> Res<()> {
    std::fs::write(p, s).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
}

fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialise") + "\n"
}

fn matrix_rows<T: Entry>(m: &Matrix<T>, show: impl Fn(&T) -> String) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| show(m.get(r, c))).collect()).collect()
}

fn render_rows(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    rows.iter()
        .map(|r| r.iter().map(|s| format!("{s:>width$}")).collect::<Vec<_>>().join("  ") + "\n")
        .collect()
}

struct Output {
    text: String,
    json: Value,
    failed: Option<String>,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, failed: None }
    }
}

fn eval(path: &Path, a: Arith) -> Res<Output> {
    let d = load_diagram(path)?;
    let head = format!("{}×{} matrix ({} → {})\n", 1 << d.n_outputs(), 1 << d.n_inputs(), d.n_inputs(), d.n_outputs());
    let (rows, mode) = if a.float {
        let m = evaluate_float(&d)?;
        let tol = a.tol;
        let rows = matrix_rows(&m, |e| {
            let z = e.to_complex();
            let clean = |x: f64| if x.abs() < tol { 0.0 } else { x };
            let (re, im) = (clean(z.re), clean(z.im));
            if im < 0.0 { format!("{re:.6}-{:.6}i", -im) } else { format!("{re:.6}+{im:.6}i") }
        });
        (rows, "float")
    } else {
        (matrix_rows(&evaluate(&d)?, |e| e.pretty()), "exact")
    };
    let text = head + &render_rows(&rows);
    Ok(Output::ok(text, json!({"command": "eval", "mode": mode, "inputs": d.n_inputs(), "outputs": d.n_outputs(), "rows": rows})))
}

#[derive(Deserialize)]
struct Equation {
    name: String,
    lhs: Diagram,
    rhs: Diagram,
}

fn equal(a: &Diagram, b: &Diagram, arith: Arith) -> Res<bool> {
    Ok(if arith.float {
        matrices_equal(&evaluate_float(a)?, &evaluate_float(b)?, Comparison::Tolerance(arith.tol))?
    } else {
        semantically_equal(a, b)?
    })
}

fn check_rules(grid: u32, extra: Option<&Path>, arith: Arith) -> Res<Output> {
    let phases = grid_phases(grid)?;
    let cat = rule_catalog();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for (r, label) in cat.rejected() {
        writeln!(text, "FAIL {r}: rejected at load, {label}").unwrap();
        rows.push(json!({"rule": r.to_string(), "pass": false, "case": label}));
        failed.push(r.to_string());
    }
    let mut total = 0;
    for r in cat.rules() {
        let cases = soundness_cases(r, &phases);
        let mut bad = None;
        for c in &cases {
            if !equal(&c.lhs, &c.rhs, arith)? {
                bad = Some(c.label.clone());
                break;
            }
        }
        total += cases.len();
        match &bad {
            None => writeln!(text, "ok   {r} ({} instances)", cases.len()).unwrap(),
            Some(l) => {
                writeln!(text, "FAIL {r}: {l}").unwrap();
                failed.push(r.to_string());
            }
        }
        rows.push(json!({"rule": r.to_string(), "pass": bad.is_none(), "instances": cases.len(), "case": bad}));
    }
    if let Some(p) = extra {
        let eqs: Vec<Equation> =
            serde_json::from_str(&read(p)?).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        for eq in eqs {
            eq.lhs.validate()?;
            eq.rhs.validate()?;
            let ok = equal(&eq.lhs, &eq.rhs, arith)?;
            total += 1;
            writeln!(text, "{} {}", if ok { "ok  " } else { "FAIL" }, eq.name).unwrap();
            if !ok {
                failed.push(eq.name.clone());
            }
            rows.push(json!({"rule": eq.name, "pass": ok, "instances": 1}));
        }
    }
    writeln!(text, "{total} instances, {} failing", failed.len()).unwrap();
    let json = json!({"command": "check-rules", "grid": grid, "rules": rows, "failing": failed});
    let failed = (!failed.is_empty()).then(|| format!("unsound: {}", failed.join(", ")));
    Ok(Output { text, json, failed })
}

fn parse_anchor_ids(s: &str) -> Res<Vec<Anchor>> {
    let mut v = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map(|n| Anchor::Vertex(VertexId(n))))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("--at expects comma-separated vertex ids, not `{s}`")))?;
    v.sort();
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn rewrite(
    path: &Path,
    rule: &str,
    dir: Direction,
    at: Option<&str>,
    alpha: Option<Phase>,
    arity: Option<usize>,
    list: bool,
) -> Res<Output> {
    let d = load_diagram(path)?;
    let rule: Rule = rule.parse()?;
    if !rule_catalog().contains(&rule) {
        return Err(CliError::Usage(format!("{rule} is not a distinct variant in the catalog")));
    }
    let mut inst = RuleInstance::new(rule, dir);
    inst.phases.alpha = alpha;
    inst.arity = arity;
    let mut ms = find_matches(&d, &inst);
    if let Some(at) = at {
        let want = parse_anchor_ids(at)?;
        ms.retain(|m| {
            let got: Vec<Anchor> = m.anchors.iter().filter(|a| matches!(a, Anchor::Vertex(_))).copied().collect();
            got == want
        });
    }
    if list {
        let steps: Vec<Value> =
            ms.iter().map(|m| serde_json::to_value(zx_core::rules::Step::from_match(m)).unwrap()).collect();
        let text: String = steps.iter().map(|s| s.to_string() + "\n").collect();
        return Ok(Output::ok(text, json!({"command": "rewrite", "matches": steps})));
    }
    let m = ms.first().ok_or_else(|| CliError::Failed(format!("{rule} {dir:?} does not apply")))?;
    let next = apply(&d, m)?;
    let step = serde_json::to_value(zx_core::rules::Step::from_match(m)).unwrap();
    Ok(Output::ok(next.to_json_pretty() + "\n", json!({"command": "rewrite", "step": step, "result": next})))
}

fn verify(path: &Path, no_sup: bool) -> Res<Output> {
    let script = Derivation::from_json(&read(path)?)?;
    let rep = verify_derivation_with(&script, !no_sup)?;
    let mut text = String::new();
    for s in &rep.steps {
        writeln!(text, "step {:>3}  {} {:?}  ok", s.index, s.rule, s.dir).unwrap();
    }
    writeln!(text, "VERIFIED {} steps", rep.steps.len()).unwrap();
    Ok(Output::ok(text, json!({"command": "verify", "verdict": rep.verdict, "steps": rep.steps.len(), "result": rep.result})))
}

fn lemmas(alpha: Option<Phase>, grid: u32) -> Res<Output> {
    let phases = match alpha {
        Some(a) => vec![a],
        None => grid_phases(grid)?,
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for f in lemma_endpoint_catalog() {
        let mut bad = Vec::new();
        for &a in &phases {
            let c = f.check(a)?;
            if !c.passed() {
                bad.push(a.to_string());
            }
        }
        let status = if bad.is_empty() { "ok  " } else { "FAIL" };
        writeln!(text, "{status} {:<20} {}", f.name, f.summary).unwrap();
        if !bad.is_empty() {
            writeln!(text, "     fails at {}", bad.join(", ")).unwrap();
            failed.push(f.name);
        }
        rows.push(json!({"family": f.name, "pass": bad.is_empty(), "failing_alphas": bad}));
    }
    let json = json!({"command": "lemmas", "phases": phases.len(), "families": rows});
    let failed = (!failed.is_empty()).then(|| format!("failing: {}", failed.join(", ")));
    Ok(Output { text, json, failed })
}

fn sharp_cmd(path: &Path, k: usize, l: i64, simplify: bool) -> Res<Output> {
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let d = load_diagram(path)?;
    let p = SharpParams::new(k, l);
    let img = if simplify { sharp_simplified(&d, p) } else { sharp(&d, p) };
    Ok(Output::ok(img.to_json_pretty() + "\n", json!({"command": "sharp", "k": k, "l": l, "result": img})))
}

fn scan(kmax: usize, lrange: &str, grid: u32) -> Res<Output> {
    if kmax == 0 {
        return Err(CliError::Usage("--kmax must be at least 1".into()));
    }
    let ls = parse_range(lrange)?;
    let ks: Vec<usize> = (1..=kmax).collect();
    let reps = scan_table(&ks, &ls, &grid_phases(grid)?);
    let mut text = format!("{:>3} {:>3}  {:<10} {:<10} failing rules\n", "k", "l", "predicted", "observed");
    for r in &reps {
        let zx_fail: Vec<String> = r.failing_names().into_iter().filter(|n| n != "SUP").collect();
        let skipped: Vec<&str> =
            r.rows.iter().filter(|x| x.status == ScanStatus::Skipped).map(|x| x.rule.as_str()).collect();
        let observed = if zx_fail.is_empty() { "sound" } else { "unsound" };
        let predicted = if r.params.predicted_sound() { "sound" } else { "unsound" };
        let mut line = format!("{:>3} {:>3}  {predicted:<10} {observed:<10} {}", r.params.k, r.params.l, r.failing_names().join(" "));
        if !skipped.is_empty() {
            write!(line, "  (too large: {})", skipped.join(" ")).unwrap();
        }
        text.push_str(line.trim_end());
        text.push('\n');
    }
    Ok(Output::ok(text, json!({"command": "scan", "grid": grid, "cells": reps})))
}

fn witness(alpha: Phase) -> Res<Output> {
    let w = incompleteness_witness(alpha)?;
    let verdict = if w.equal { "EQUAL" } else { "UNEQUAL" };
    let mut text = format!("α = {alpha}\n011∘sharp(lhs) = {}\n011∘sharp(rhs) = {}\n", w.lhs.pretty(), w.rhs.pretty());
    if w.equal {
        writeln!(text, "{verdict}: no separation at α = {alpha}; supp_gap = {}", w.gap.pretty()).unwrap();
    } else {
        writeln!(text, "{verdict}: supplementarity at α = {alpha} is not derivable; supp_gap = {}", w.gap.pretty())
            .unwrap();
    }
    let json = json!({
        "command": "witness", "alpha": alpha, "lhs": w.lhs.pretty(), "rhs": w.rhs.pretty(),
        "verdict": verdict, "supp_gap": w.gap.pretty(), "consistent": w.consistent(),
    });
    let failed = (!w.consistent()).then(|| "scalar verdict disagrees with supp_gap".to_string());
    Ok(Output { text, json, failed })
}

fn suppgap(grid: u32) -> Res<Output> {
    let mut text = format!("{:<8} {:<28} {:<24} zero\n", "α", "exact", "float");
    let mut rows = Vec::new();
    for a in grid_phases(grid)? {
        let g = supp_gap(a)?;
        let f = supp_gap_float(a);
        let fl = format!("{:.6}{:+.6}i", f.re, f.im);
        writeln!(text, "{:<8} {:<28} {:<24} {}", a.to_string(), g.pretty(), fl, if g.is_zero() { "yes" } else { "" }).unwrap();
        rows.push(json!({"alpha": a, "exact": g.pretty(), "zero": g.is_zero()}));
    }
    Ok(Output::ok(text.lines().map(|l| l.trim_end().to_string() + "\n").collect(), json!({"command": "suppgap", "rows": rows})))
}

fn twins(path: &Path, merge: bool, no_sup: bool, cert: Option<&Path>, out: Option<&Path>) -> Res<(Output, Option<(PathBuf, String)>)> {
    let d = load_diagram(path)?;
    let pairs = find_antiphase_twins(&d);
    let mut text = String::new();
    let mut listed = Vec::new();
    for t in &pairs {
        let case = merge_case(&d, t);
        writeln!(text, "v{} v{}  {:?}  {} / {}  {:?}", t.u.0, t.v.0, t.colour, t.phases.0, t.phases.1, case).unwrap();
        listed.push(json!({"u": t.u.0, "v": t.v.0, "colour": format!("{:?}", t.colour), "case": format!("{case:?}")}));
    }
    if !merge {
        if pairs.is_empty() {
            text.push_str("no antiphase twins\n");
        }
        return Ok((Output::ok(text, json!({"command": "twins", "pairs": listed})), None));
    }
    let (merged, certificate) = merge_all_twins(&d, !no_sup)?;
    let cert_json = certificate.to_json_pretty() + "\n";
    let cert_path = cert.map(Path::to_path_buf).or_else(|| out.map(|o| o.with_extension("cert.json")));
    let json = json!({"command": "twins", "pairs": listed, "result": merged, "certificate": certificate});
    let text = match &cert_path {
        Some(_) => merged.to_json_pretty() + "\n",
        None => to_pretty(&json!({"result": merged, "certificate": certificate})),
    };
    Ok((Output::ok(text, json), cert_path.map(|p| (p, cert_json))))
}

/// Runs one invocation; returns the exit code with stdout and stderr text.
pub fn run(argv: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> (u8, String, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let s = e.render().to_string();
            return if code == 0 { (0, s, String::new()) } else { (2, String::new(), s) };
        }
    };
    match dispatch(&cli) {
        Ok((o, extra)) => {
            let body = if cli.json { to_pretty(&o.json) } else { o.text };
            if let Some((p, s)) = extra {
                if let Err(e) = write_file(&p, &s) {
                    return (e.code(), String::new(), format!("error: {e}\n"));
                }
            }
            let stdout = match &cli.out {
                Some(p) => match write_file(p, &body) {
                    Ok(()) => String::new(),
                    Err(e) => return (e.code(), String::new(), format!("error: {e}\n")),
                },
                None => body,
            };
            match o.failed {
                Some(msg) => (1, stdout, format!("check failed: {msg}\n")),
                None => (0, stdout, String::new()),
            }
        }
        Err(e) => (e.code(), String::new(), format!("error: {e}\n")),
    }
}

fn dispatch(cli: &Cli) -> Res<(Output, Option<(PathBuf, String)>)> {
    let plain = |o: Res<Output>| o.map(|o| (o, None));
    match &cli.cmd {
        Cmd::Eval { diagram, arith } => plain(eval(diagram, *arith)),
        Cmd::CheckRules { grid, rules, arith } => plain(check_rules(*grid, rules.as_deref(), *arith)),
        Cmd::Rewrite { diagram, rule, dir, at, alpha, arity, list } => {
            plain(rewrite(diagram, rule, *dir, at.as_deref(), *alpha, *arity, *list))
        }
        Cmd::Verify { script, no_sup } => plain(verify(script, *no_sup)),
        Cmd::Lemmas { alpha, grid } => plain(lemmas(*alpha, *grid)),
        Cmd::Sharp { diagram, k, l, simplify } => plain(sharp_cmd(diagram, *k, *l, *simplify)),
        Cmd::Scan { kmax, lrange, grid } => plain(scan(*kmax, lrange, *grid)),
        Cmd::Witness { alpha } => plain(witness(*alpha)),
        Cmd::Suppgap { grid } => plain(suppgap(*grid)),
        Cmd::Twins { diagram, merge, no_sup, cert } => {
            twins(diagram, *merge, *no_sup, cert.as_deref(), cli.out.as_deref())
        }
    }
}
