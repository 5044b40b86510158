//! Command-line surface: classify, solve, verify and identity search, with
//! text or JSON reports. `run` is pure apart from reading input files, so
//! tests drive it directly.

mod json;

use std::fs;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C;
use serde_json::{json, Map, Value};

use crate::classifier::{classify, ClassificationReport, FactorStructure, Verdict};
use crate::classifier::{CITE_T1, CITE_T2A, CITE_T2B, CITE_T2C};
use crate::equation::EquationSpec;
use crate::error::CliError;
use crate::identity::{search_instances, verify_pair_identity, CaseId, Instance, PairIdentity, Scalars, SearchBudget};
use crate::parser::parse_equation;
use crate::solutions::{build_solution, eval_solution, PeriodicSpec, SolutionFamily, SolutionOptions};
use crate::verifier::{verify_residual, Grid, Outcome, VerificationReport};

pub use json::to_json_string;

pub const SCHEMA: &str = "malmquist-report/1";

/// Exit status: analysis done.
pub const EXIT_OK: i32 = 0;
/// Exit status: analysis done, negative result (no transcendental solution,
/// or a failed residual check).
pub const EXIT_NEGATIVE: i32 = 1;
/// Exit status: usage, input or parse error.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "malmquist", version, about = "Classify and solve f(z+1)^n = P(z,f)/Q(z,f)")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce to a canonical form and report the verdict.
    Classify {
        /// Equation text such as "F^2 = f^3", or a file holding one.
        input: String,
    },
    /// Build the solution family of the canonical form.
    Solve {
        /// Equation text or a file holding one.
        input: String,
        /// Constant periodic coefficient π0.
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        pi0: f64,
        /// Sample grid re0:re1:nre,im0:im1:nim; also used for the residual.
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        branch: BranchArgs,
    },
    /// Check a solution family against the equation on a grid.
    Verify {
        /// Equation text or a file holding one.
        input: String,
        /// Solution JSON, inline or a file; a full solve report is accepted.
        #[arg(long)]
        solution: String,
        /// Grid re0:re1:nre,im0:im1:nim; ignored for orbit families.
        #[arg(long)]
        grid: Option<String>,
        /// Check against the canonical form instead of the input as given.
        #[arg(long)]
        canonical: bool,
    },
    /// Search exact pair-identity instances for a case and degree pair.
    Identities {
        /// Case id such as 2c-6, 1c-odd, 2b-rel.
        #[arg(long = "case")]
        case_id: String,
        /// Degree of P0 (in f³ for 2c-6).
        #[arg(long)]
        p0: usize,
        /// Degree of Q0 (in f³ for 2c-6).
        #[arg(long)]
        q0: usize,
        /// Random starts per system.
        #[arg(long, default_value_t = 64)]
        budget: usize,
        /// Seed of the start generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct BranchArgs {
    /// Use −i in the (±i) prefactors.
    #[arg(long)]
    pub minus_i: bool,
    /// Use the negative exponent base.
    #[arg(long)]
    pub negative_base: bool,
    /// θ = ±1 in the δ map.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Overall sign of δ̄, or of τ in the sn shell.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub sign: f64,
    /// Orbit seed δ(0) as re or re,im.
    #[arg(long, default_value = "1.5", allow_hyphen_values = true)]
    pub delta_seed: String,
    /// Orbit length for the δ map.
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
    /// Inner affine map φ̄ = Aφ + B for the elliptic shells, as A;B with
    /// each entry re or re,im.
    #[arg(long, default_value = "2;0", allow_hyphen_values = true)]
    pub inner: String,
    /// φ(0) for the elliptic shells, as re or re,im.
    #[arg(long, default_value = "0.1,0.05", allow_hyphen_values = true)]
    pub phi0: String,
}

/// What a run produced: exit status and the two output streams.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse arguments (first item is the program name) and run.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code, stdout: String::new(), stderr: text }
            } else {
                RunOutput { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => RunOutput { code, stdout, stderr: String::new() },
        Err(e) => RunOutput { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

pub fn execute(cli: &Cli) -> Result<(i32, String), CliError> {
    if !(cli.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    match &cli.command {
        Command::Classify { input } => {
            let text = read_input(input)?;
            let report = classify(&parse_equation(&text)?);
            let code = verdict_code(&report.verdict);
            let body = base_report("classify", &text, &report);
            Ok((code, render(cli.json, &body, || classify_text(&report))))
        }
        Command::Solve { input, pi0, grid, branch } => {
            let text = read_input(input)?;
            let report = classify(&parse_equation(&text)?);
            let opts = solution_options(*pi0, branch)?;
            let sample_grid = grid.as_deref().map(str::parse::<Grid>).transpose()?;
            let mut body = base_report("solve", &text, &report);
            let mut lines = classify_text(&report);
            match build_solution(&report.verdict, &report.canonical, &opts) {
                Ok(sol) => {
                    let check = verify_residual(&report.canonical, &sol, sample_grid.as_ref().unwrap_or(&Grid::default()), cli.tol)?;
                    body.insert("solution".into(), serde_json::to_value(&sol)?);
                    body.insert("residual_summary".into(), residual_summary(&check, "canonical"));
                    lines.push(format!("solution: {}", family_line(&sol)));
                    lines.push(summary_line(&check));
                    if let Some(g) = &sample_grid {
                        let samples = samples(&sol, g);
                        lines.push(format!("samples: {} points on {}", samples.len(), g));
                        body.insert("samples".into(), Value::Array(samples));
                    }
                }
                Err(e) => {
                    body.insert("solution".into(), Value::Null);
                    body.insert("solution_error".into(), Value::String(e.to_string()));
                    lines.push(format!("solution: none ({})", e));
                }
            }
            Ok((verdict_code(&report.verdict), render(cli.json, &body, || lines)))
        }
        Command::Verify { input, solution, grid, canonical } => {
            let text = read_input(input)?;
            let spec = parse_equation(&text)?;
            let report = classify(&spec);
            let sol = read_solution(solution)?;
            let grid = grid.as_deref().map(str::parse::<Grid>).transpose()?.unwrap_or_default();
            let (target, label) = if *canonical { (&report.canonical, "canonical") } else { (&spec, "input") };
            let check = verify_residual(target, &sol, &grid, cli.tol)?;
            let mut body = base_report("verify", &text, &report);
            body.insert("residual_summary".into(), residual_summary(&check, label));
            body.insert("verification".into(), serde_json::to_value(&check)?);
            let code = if check.outcome == Outcome::Fail { EXIT_NEGATIVE } else { EXIT_OK };
            let lines = vec![format!("equation ({}): {}", label, target), format!("solution: {}", family_line(&sol)), summary_line(&check)];
            Ok((code, render(cli.json, &body, || lines)))
        }
        Command::Identities { case_id, p0, q0, budget, seed } => {
            let case = CaseId::parse(case_id)?;
            let id = PairIdentity { case, scalars: Scalars::default() };
            let b = SearchBudget { starts: *budget, seed: *seed, ..SearchBudget::default() };
            let degrees = f_degrees(case, *p0, *q0);
            let out = search_instances(&id, degrees, &b)?;
            let mut insts = Vec::new();
            let mut lines = vec![format!(
                "case {} with (p0, q0) = ({}, {}), slot degrees in f ({}, {}): {}",
                case, p0, q0, degrees.0, degrees.1, out.note
            )];
            for (j, f) in out.instances.iter().enumerate() {
                let verified = verify_pair_identity(&f.identity, &f.slots).map(|v| v.holds()).unwrap_or(false);
                insts.push(json!({
                    "case": case.id(),
                    "scalars": scalars_json(&f.identity.scalars),
                    "slots": slots_json(&f.slots),
                    "verified": verified,
                }));
                lines.push(format!("instance {}: {} [{}]", j + 1, slots_line(&f.slots, case.power()), if verified { "verified" } else { "NOT verified" }));
            }
            let mut body = Map::new();
            body.insert("schema".into(), SCHEMA.into());
            body.insert("command".into(), "identities".into());
            body.insert("case".into(), case.id().into());
            body.insert("p0".into(), (*p0).into());
            body.insert("q0".into(), (*q0).into());
            body.insert("f_degrees".into(), json!([degrees.0, degrees.1]));
            body.insert("budget".into(), json!({ "starts": b.starts, "seed": b.seed, "max_iter": b.max_iter }));
            body.insert("instances".into(), Value::Array(insts));
            body.insert("note".into(), out.note.clone().into());
            Ok((EXIT_OK, render(cli.json, &body, || lines)))
        }
    }
}

/// Slot degrees in f for the search. Case 2c-6 counts in f³: its identity
/// is invariant under f → ηf, and P0 = f·P01(f³), Q0 = Q01(f³) there.
pub fn f_degrees(case: CaseId, p0: usize, q0: usize) -> (usize, usize) {
    match case {
        CaseId::C6 => (3 * p0 + 1, 3 * q0),
        _ => (p0, q0),
    }
}

fn render(as_json: bool, body: &Map<String, Value>, text: impl FnOnce() -> Vec<String>) -> String {
    if as_json {
        to_json_string(&Value::Object(body.clone())) + "\n"
    } else {
        text().join("\n") + "\n"
    }
}

/// Inline equation text, or a file whose first non-comment line holds one.
fn read_input(arg: &str) -> Result<String, CliError> {
    if arg.contains('=') {
        return Ok(arg.to_string());
    }
    let body = fs::read_to_string(arg).map_err(|e| CliError::Io { path: arg.to_string(), msg: e.to_string() })?;
    body.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .ok_or_else(|| CliError::Usage(format!("input file '{}' holds no equation", arg)))
}

fn read_solution(arg: &str) -> Result<SolutionFamily, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Io { path: arg.to_string(), msg: e.to_string() })?
    };
    let v: Value = serde_json::from_str(&text)?;
    let fam = match v.get("solution") {
        Some(s) if !s.is_null() => s.clone(),
        Some(_) => return Err(CliError::Usage("the report carries no solution".into())),
        None => v,
    };
    Ok(serde_json::from_value(fam)?)
}

fn parse_complex(s: &str) -> Result<C, CliError> {
    let bad = || CliError::Usage(format!("'{}' is not a complex number (re or re,im)", s));
    let mut it = s.split(',').map(|t| t.trim().parse::<f64>());
    let re = it.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = it.next().transpose().map_err(|_| bad())?.unwrap_or(0.0);
    if it.next().is_some() {
        return Err(bad());
    }
    Ok(C::new(re, im))
}

fn solution_options(pi0: f64, b: &BranchArgs) -> Result<SolutionOptions, CliError> {
    let (a, bb) = b
        .inner
        .split_once(';')
        .ok_or_else(|| CliError::Usage(format!("--inner '{}' is not A;B", b.inner)))?;
    Ok(SolutionOptions {
        periodic: PeriodicSpec::constant(pi0),
        plus_i: !b.minus_i,
        negative_base: b.negative_base,
        theta: b.theta,
        sign: b.sign,
        seed: parse_complex(&b.delta_seed)?,
        orbit_steps: b.steps,
        affine: (parse_complex(a)?, parse_complex(bb)?),
        phi0: parse_complex(&b.phi0)?,
    })
}

fn verdict_code(v: &Verdict) -> i32 {
    if matches!(v, Verdict::NoSolution { .. }) {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}

fn citations(v: &Verdict) -> Vec<String> {
    let c = match v {
        Verdict::NoSolution { citation, .. } => citation.as_str(),
        Verdict::T1aPower { .. } | Verdict::T1cPower { .. } | Verdict::T1cChebOdd { .. } | Verdict::T1cChebEven { .. } => CITE_T1,
        Verdict::T2aInvPower { .. } => CITE_T2A,
        Verdict::T2bInvPower { .. } | Verdict::T2bDeltaMap(_) => CITE_T2B,
        Verdict::T2c(_) => CITE_T2C,
        _ => return Vec::new(),
    };
    vec![c.to_string()]
}

fn slots_json(inst: &Instance) -> Value {
    let mut m = Map::new();
    for (k, s) in inst {
        m.insert(k.clone(), json!({ "constant": s.constant.to_string(), "base": s.base.to_string() }));
    }
    Value::Object(m)
}

fn slots_line(inst: &Instance, n: u32) -> String {
    inst.iter()
        .map(|(k, s)| format!("{}^{} = ({})*({})^{}", k, n, s.constant, s.base, n))
        .collect::<Vec<_>>()
        .join(", ")
}

fn scalars_json(s: &Scalars) -> Value {
    json!({
        "kappa": s.kappa.to_string(),
        "gamma": s.gamma.to_string(),
        "gamma2": s.gamma2.to_string(),
        "kappa2": s.kappa2.to_string(),
        "eta": s.eta.to_string(),
        "k1": s.k1,
        "k2": s.k2,
        "l0": s.l0,
    })
}

fn params(v: &Verdict) -> Value {
    match v {
        Verdict::T1aPower { c } | Verdict::T1cPower { c } | Verdict::T2aInvPower { c } | Verdict::T2bInvPower { c } => {
            json!({ "c": c.to_string() })
        }
        Verdict::T1cChebOdd { p0, slots } | Verdict::T1cChebEven { p0, slots } => {
            json!({ "p0": p0, "slots": slots_json(slots) })
        }
        Verdict::T2bDeltaMap(d) => {
            let mut inst = Instance::new();
            inst.insert("P011".into(), d.p011.clone());
            inst.insert("P012".into(), d.p012.clone());
            json!({ "k1": d.k1, "l0": d.l0, "q1": d.q1.to_string(), "slots": slots_json(&inst) })
        }
        Verdict::T2c(c) => json!({
            "case": c.case.id(),
            "scalars": scalars_json(&c.scalars),
            "slots": slots_json(&c.slots),
        }),
        Verdict::NoSolution { reason, .. } => json!({ "reason": reason }),
        Verdict::Unclassified { failed_condition } => json!({ "failed_condition": failed_condition }),
        Verdict::N1 | Verdict::OutOfScopeDEqualsN => json!({}),
    }
}

fn structure_json(fs: &FactorStructure) -> Value {
    let res = |v: &[crate::classifier::ResidualFactor]| {
        v.iter().map(|r| json!({ "factor": r.factor.to_string(), "order": r.order })).collect::<Vec<_>>()
    };
    json!({
        "n": fs.n,
        "lc": fs.lc.to_string(),
        "p0": fs.p0.to_string(),
        "q0": fs.q0.to_string(),
        "p0_deg": fs.p0_deg,
        "q0_deg": fs.q0_deg,
        "residual_p": res(&fs.residual_p),
        "residual_q": res(&fs.residual_q),
        "n_c": fs.n_c,
        "gcd_k": fs.gcd_k,
        "zero_flags": [fs.zero_flags.0, fs.zero_flags.1],
    })
}

fn base_report(command: &str, text: &str, r: &ClassificationReport) -> Map<String, Value> {
    let spec: &EquationSpec = &r.input;
    let mut m = Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    m.insert("input".into(), text.into());
    m.insert("n".into(), spec.n.into());
    m.insert("p".into(), spec.p.to_string().into());
    m.insert("q".into(), spec.q.to_string().into());
    m.insert("d".into(), spec.d().into());
    m.insert("factor_structure".into(), r.structure.as_ref().map(structure_json).unwrap_or(Value::Null));
    m.insert("trace".into(), Value::Array(r.trace.steps.iter().map(|s| s.to_string().into()).collect()));
    m.insert("canonical".into(), r.canonical.to_string().into());
    m.insert("verdict".into(), r.verdict.id().into());
    m.insert("params".into(), params(&r.verdict));
    m.insert("citations".into(), Value::Array(citations(&r.verdict).into_iter().map(Value::from).collect()));
    m.insert("residual_summary".into(), Value::Null);
    m.insert("notes".into(), Value::Array(r.notes.iter().map(|s| s.as_str().into()).collect()));
    m
}

fn classify_text(r: &ClassificationReport) -> Vec<String> {
    let mut out = vec![format!("input: {}", r.input), format!("canonical: {}", r.canonical), format!("verdict: {}", r.verdict.id())];
    match &r.verdict {
        Verdict::NoSolution { reason, .. } => out.push(format!("reason: {}", reason)),
        Verdict::Unclassified { failed_condition } => out.push(format!("failed condition: {}", failed_condition)),
        _ => {}
    }
    for c in citations(&r.verdict) {
        out.push(format!("citation: {}", c));
    }
    if r.trace.is_empty() {
        out.push("trace: (none)".into());
    }
    for (j, s) in r.trace.steps.iter().enumerate() {
        out.push(format!("trace {}: {}", j + 1, s));
    }
    out.extend(r.notes.iter().map(|n| format!("note: {}", n)));
    out
}

fn family_line(sol: &SolutionFamily) -> String {
    let kind = serde_json::to_value(&sol.kind).ok().and_then(|v| v.get("family").cloned());
    let name = kind.as_ref().and_then(Value::as_str).unwrap_or("?");
    format!("{} for {}{}", name, sol.form, if sol.shell { " (parametrization shell)" } else { "" })
}

fn residual_summary(r: &VerificationReport, against: &str) -> Value {
    json!({
        "equation": against,
        "grid": r.grid,
        "tol": r.tol,
        "points": r.points.len(),
        "skipped": r.skipped.len(),
        "skipped_fraction": r.skipped_fraction,
        "max_residual": r.max_residual,
        "outcome": r.outcome,
    })
}

fn summary_line(r: &VerificationReport) -> String {
    let m = r.max_residual.map(|m| format!("{:.3e}", m)).unwrap_or_else(|| "n/a".into());
    let o = match r.outcome {
        Outcome::Pass => "pass",
        Outcome::Fail => "FAIL",
        Outcome::Inconclusive => "inconclusive",
    };
    format!(
        "residual: {} on {} ({} measured, {} skipped), max {} vs tol {:e}",
        o,
        r.grid,
        r.points.len(),
        r.skipped.len(),
        m,
        r.tol
    )
}

fn samples(sol: &SolutionFamily, g: &Grid) -> Vec<Value> {
    g.points()
        .into_iter()
        .map(|z| {
            let f = match eval_solution(sol, z) {
                Ok(Some(v)) => json!([v.re, v.im]),
                _ => Value::Null,
            };
            json!({ "z": [z.re, z.im], "f": f })
        })
        .collect()
}
