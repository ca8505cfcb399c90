//! Command-line front end.
//!
//! Every subcommand validates its flags through the library constructors
//! before doing any work. Exit codes: 0 ok, 2 invalid input, 3 regime
//! precondition unmet, 4 I/O failure. CSV numbers carry 17 significant
//! digits; a JSON sidecar next to each CSV records the full configuration,
//! including defaults, so every artifact describes how it was made.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dynamics::{basin_boundary, ns_sweep, portrait, simulate, Grid, SimSettings, Verdict};
use crate::error::Error;
use crate::fixed_points::{all_fixed_points, existence_verdict, interior_point, uhat_bounds, FixedPointLabel};
use crate::model::{ParamName, Params, ResponseOrder};
use crate::regions::{hypothesis_blocks, invariance_hypotheses, parameter_subclasses, verify_invariance, RegionId};
use crate::stability::classify;

pub const EXIT_INVALID: i32 = 2;
pub const EXIT_REGIME: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        CliError {
            code: EXIT_IO,
            message: format!("cannot write {}: {err}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Regime(_) => EXIT_REGIME,
            _ => EXIT_INVALID,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "phytozoo", version, about = "Discrete phytoplankton-zooplankton maps: fixed points, stability, orbits and bifurcation scans")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every fixed point with (p, q), eigenvalues and type
    Fp(FpArgs),
    /// Iterate one orbit and write it as CSV
    Simulate(SimulateArgs),
    /// Parameter subclasses, existence verdict and hypothesis checklists
    ClassifyParams(ClassifyArgs),
    /// Scan one parameter for q(u_-) = 1 crossings
    Sweep(SweepArgs),
    /// Bisect the boundary between the basins of E- and E1
    Basin(BasinArgs),
    /// Limit verdict for every cell of a grid of initial conditions
    Portrait(PortraitArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Model parameters. Optional at the parser level so that `sweep` can leave
/// out the scanned one; everything else reports a missing value as invalid
/// input.
#[derive(Args, Debug, Clone, Serialize)]
pub struct ModelArgs {
    /// Response exponent: 1 (Holling type II) or 2 (type III)
    #[arg(long, allow_hyphen_values = true)]
    pub h: u8,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
}

impl ModelArgs {
    fn value(&self, name: ParamName) -> Option<f64> {
        match name {
            ParamName::Beta => self.beta,
            ParamName::R => self.r,
            ParamName::Theta => self.theta,
            ParamName::C => self.c,
        }
    }

    /// Builds `Params`, taking `fill` for the named parameter when it was not
    /// given on the command line.
    fn params_with_default(&self, fill: Option<(ParamName, f64)>) -> CliResult<Params> {
        let get = |name: ParamName| -> CliResult<f64> {
            match (self.value(name), fill) {
                (Some(v), _) => Ok(v),
                (None, Some((n, v))) if n == name => Ok(v),
                (None, _) => Err(CliError::invalid(format!("missing --{name}"))),
            }
        };
        let params = Params::new(
            self.h,
            get(ParamName::Beta)?,
            get(ParamName::R)?,
            get(ParamName::Theta)?,
            get(ParamName::C)?,
        )?;
        Ok(params)
    }

    fn params(&self) -> CliResult<Params> {
        self.params_with_default(None)
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SimArgs {
    /// Maximum number of iterations
    #[arg(long, default_value_t = 100_000, allow_hyphen_values = true)]
    pub steps: i64,
    /// Max-norm distance to a fixed point that counts as converged
    #[arg(long = "conv-tol", default_value_t = 1e-9, allow_hyphen_values = true)]
    pub conv_tol: f64,
    /// Coordinate magnitude that counts as divergence
    #[arg(long, default_value_t = 1e8, allow_hyphen_values = true)]
    pub escape: f64,
}

impl SimArgs {
    fn settings(&self) -> CliResult<SimSettings> {
        if self.steps < 1 {
            return Err(CliError::invalid(format!(
                "--steps must be at least 1, got {}",
                self.steps
            )));
        }
        let settings = SimSettings {
            max_steps: self.steps as usize,
            conv_tol: self.conv_tol,
            escape_radius: self.escape,
        };
        settings.validate()?;
        Ok(settings)
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FpArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub u0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub v0: f64,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Fixed point the orbit is expected to reach (E0, E1, Eminus, Eplus);
    /// exits with 3 if it does not exist for these parameters
    #[arg(long)]
    pub target: Option<FixedPointLabel>,
    #[arg(long, default_value = "trajectory.csv")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Also sample every invariant set with this seed and report one-step
    /// violations
    #[arg(long)]
    pub seed: Option<u64>,
    /// Samples per set when --seed is given
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Print JSON instead of the text report
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Scanned parameter: beta, r, theta or c
    #[arg(long)]
    pub param: ParamName,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    /// Number of grid values, endpoints included
    #[arg(long, default_value_t = 101, allow_hyphen_values = true)]
    pub steps: i64,
    #[arg(long, default_value = "sweep.csv")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BasinArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Comma-separated u values; defaults to u of the saddle E+
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub us: Option<Vec<f64>>,
    /// Bisection stops when the v bracket is this narrow
    #[arg(long = "v-tol", default_value_t = 1e-6)]
    pub v_tol: f64,
    #[command(flatten)]
    pub sim: SimArgs,
    #[arg(long, default_value = "basin.csv")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PortraitArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// u0:u1:nu,v0:v1:nv
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Grid,
    #[command(flatten)]
    pub sim: SimArgs,
    #[arg(long, default_value = "portrait.csv")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn params_json(p: &Params) -> Value {
    json!({
        "h": p.h(),
        "beta": p.beta(),
        "r": p.r(),
        "theta": p.theta(),
        "c": p.c(),
    })
}

fn settings_json(s: &SimSettings) -> Value {
    json!({
        "max_steps": s.max_steps,
        "conv_tol": s.conv_tol,
        "escape_radius": s.escape_radius,
    })
}

fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn emit(stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

/// Path of the JSON sidecar that accompanies a CSV file.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let side = out.with_extension("json");
    if side == out {
        let mut s = out.as_os_str().to_owned();
        s.push(".meta.json");
        PathBuf::from(s)
    } else {
        side
    }
}

/// Writes the main artifact. CSV gets a sidecar; JSON already contains the
/// sidecar fields and is written alone.
fn write_artifact(out: &Path, format: Format, csv: &str, meta: Value, rows: Value) -> CliResult<()> {
    match format {
        Format::Csv => {
            write_file(out, csv)?;
            write_file(&sidecar_path(out), &to_pretty(&meta))
        }
        Format::Json => {
            let mut doc = meta;
            doc["rows"] = rows;
            write_file(out, &to_pretty(&doc))
        }
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Fp(a) => cmd_fixed_points(&a, stdout),
        Command::Simulate(a) => cmd_simulate(&a, stdout),
        Command::ClassifyParams(a) => cmd_classify_params(&a, stdout),
        Command::Sweep(a) => cmd_sweep(&a, stdout),
        Command::Basin(a) => cmd_basin(&a, stdout),
        Command::Portrait(a) => cmd_portrait(&a, stdout),
    }
}

pub fn cmd_fixed_points(a: &FpArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let params = a.model.params()?;
    let ev = existence_verdict(&params);

    let mut points = Vec::new();
    let mut csv = String::from("label,u,v,p,q,lambda1_re,lambda1_im,lambda2_re,lambda2_im,class\n");
    for fp in all_fixed_points(&params) {
        let rep = classify(&fp, &params)?;
        let lambda: Vec<Value> = rep
            .eigenvalues
            .iter()
            .map(|z| json!({ "re": z.re, "im": z.im }))
            .collect();
        points.push(json!({
            "label": fp.label.as_str(),
            "u": fp.state.u,
            "v": fp.state.v,
            "p": rep.coeffs.p,
            "q": rep.coeffs.q,
            "lambda": lambda,
            "class": rep.class.as_str(),
            "degenerate": fp.degenerate,
            "ns_flag": rep.ns_flag,
            "note": rep.note,
        }));
        let [l1, l2] = rep.eigenvalues;
        let nums = [fp.state.u, fp.state.v, rep.coeffs.p, rep.coeffs.q, l1.re, l1.im, l2.re, l2.im];
        let _ = writeln!(
            csv,
            "{},{},{}",
            fp.label,
            nums.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(","),
            rep.class
        );
    }

    let doc = json!({
        "params": params_json(&params),
        "fixed_points": points,
        "regime": {
            "name": ev.regime,
            "description": ev.regime.describe(),
            "interior_count": ev.count,
            "ubar": ev.ubar,
            "psi_ubar": ev.psi_min,
            "psi_one": ev.psi_one,
        },
    });
    let text = match a.format {
        Format::Json => to_pretty(&doc),
        Format::Csv => csv,
    };
    match &a.out {
        Some(path) => write_file(path, &text),
        None => emit(stdout, &text),
    }
}

pub fn cmd_simulate(a: &SimulateArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let params = a.model.params()?;
    let settings = a.sim.settings()?;
    let s0 = crate::model::State::new(a.u0, a.v0);
    if !s0.is_finite() {
        return Err(CliError::invalid("--u0 and --v0 must be finite"));
    }
    if let Some(target) = a.target {
        if !all_fixed_points(&params).iter().any(|fp| fp.label == target) {
            return Err(Error::Regime(format!("target fixed point {target} does not exist for these parameters")).into());
        }
    }

    let run = simulate(s0, &params, &settings)?;
    let mut csv = String::from("n,u,v\n");
    for (n, s) in run.indices.iter().zip(&run.iterates) {
        let _ = writeln!(csv, "{n},{},{}", fmt_num(s.u), fmt_num(s.v));
    }
    let meta = json!({
        "command": "simulate",
        "params": params_json(&params),
        "initial": { "u": a.u0, "v": a.v0 },
        "settings": settings_json(&settings),
        "target": a.target,
        "verdict": run.verdict.to_string(),
        "steps_used": run.steps_used,
        "stride": run.stride,
    });
    let rows: Vec<Value> = run
        .indices
        .iter()
        .zip(&run.iterates)
        .map(|(n, s)| json!({ "n": n, "u": s.u, "v": s.v }))
        .collect();
    write_artifact(&a.out, a.format, &csv, meta, Value::Array(rows))?;

    let mut text = String::new();
    if let Some(target) = a.target {
        let reached = run.verdict == Verdict::ConvergedTo(target);
        let _ = writeln!(text, "target={target} reached={reached}");
    }
    let _ = writeln!(text, "verdict={} steps={}", run.verdict, run.steps_used);
    emit(stdout, &text)
}

fn invariance_regions(order: ResponseOrder) -> Vec<RegionId> {
    RegionId::ALL
        .iter()
        .copied()
        .filter(|r| r.order() == order)
        .filter(|r| matches!(r, RegionId::M1 | RegionId::M2 | RegionId::M3 | RegionId::M4 | RegionId::N))
        .collect()
}

pub fn cmd_classify_params(a: &ClassifyArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let params = a.model.params()?;
    let ev = existence_verdict(&params);
    let type_ii = params.order() == ResponseOrder::TypeII;

    let uhat = if type_ii { uhat_bounds(&params).ok() } else { None };
    let subclasses = if type_ii { parameter_subclasses(&params)? } else { Vec::new() };
    let blocks = hypothesis_blocks(&params);

    let mut invariance = Vec::new();
    if let Some(seed) = a.seed {
        for region in invariance_regions(params.order()) {
            let rep = verify_invariance(region, &params, a.samples, seed)?;
            invariance.push(json!({
                "region": region.as_str(),
                "hypotheses_hold": rep.hypotheses_hold,
                "samples": rep.samples,
                "violations": rep.violations.len(),
            }));
        }
    }

    if a.format == Some(Format::Json) {
        let doc = json!({
            "params": params_json(&params),
            "uhat": uhat.map(|(lo, hi)| json!({ "minus": lo, "plus": hi })),
            "subclasses": subclasses.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            "existence": {
                "name": ev.regime,
                "description": ev.regime.describe(),
                "interior_count": ev.count,
                "ubar": ev.ubar,
                "psi_ubar": ev.psi_min,
                "psi_one": ev.psi_one,
            },
            "hypotheses": blocks,
            "invariance": invariance,
            "seed": a.seed,
        });
        return emit(stdout, &to_pretty(&doc));
    }

    let mut t = String::new();
    let _ = writeln!(
        t,
        "params: h={} beta={} r={} theta={} c={}",
        params.h(),
        params.beta(),
        params.r(),
        params.theta(),
        params.c()
    );
    if type_ii {
        match uhat {
            Some((lo, hi)) => {
                let _ = writeln!(t, "uhat: minus={lo:.6} plus={hi:.6}");
            }
            None => {
                let _ = writeln!(t, "uhat: no real roots");
            }
        }
        let names: Vec<&str> = subclasses.iter().map(|s| s.as_str()).collect();
        let _ = writeln!(
            t,
            "subclasses: {}",
            if names.is_empty() { "none".to_string() } else { names.join(" ") }
        );
    }
    let _ = writeln!(t, "existence: {} ({} interior)", ev.regime.describe(), ev.count);
    let _ = writeln!(t, "ubar={:.6} psi(ubar)={:.6} psi(1)={:.6}", ev.ubar, ev.psi_min, ev.psi_one);
    for block in &blocks {
        let _ = writeln!(
            t,
            "[{}] {}",
            if block.all_hold() { "holds" } else { "fails" },
            block.claim
        );
        for c in &block.checks {
            let _ = writeln!(t, "  {} {}", if c.holds { "pass" } else { "FAIL" }, c.name);
        }
    }
    for region in invariance_regions(params.order()) {
        if let Some(block) = invariance_hypotheses(region, &params) {
            if !blocks.iter().any(|b| b.claim == block.claim) {
                let _ = writeln!(
                    t,
                    "[{}] {}",
                    if block.all_hold() { "holds" } else { "fails" },
                    block.claim
                );
            }
        }
    }
    for entry in &invariance {
        let _ = writeln!(
            t,
            "sampled {}: {} starts, {} one-step violations (hypotheses {})",
            entry["region"].as_str().unwrap_or("?"),
            entry["samples"],
            entry["violations"],
            if entry["hypotheses_hold"].as_bool() == Some(true) { "hold" } else { "do not hold" }
        );
    }
    emit(stdout, &t)
}

pub fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let params = a.model.params_with_default(Some((a.param, a.from)))?;
    if a.steps < 2 {
        return Err(CliError::invalid(format!("--steps must be at least 2, got {}", a.steps)));
    }
    let sweep = ns_sweep(a.param, a.from, a.to, a.steps as usize, &params)?;

    let mut csv = String::from("param,u_minus,p,q,class\n");
    let mut rows = Vec::new();
    for s in &sweep.samples {
        if let (Some(u), Some(p), Some(q), Some(class)) = (s.u_minus, s.p, s.q, s.class) {
            let _ = writeln!(
                csv,
                "{},{},{},{},{}",
                fmt_num(s.value),
                fmt_num(u),
                fmt_num(p),
                fmt_num(q),
                class
            );
            rows.push(json!({ "param": s.value, "u_minus": u, "p": p, "q": q, "class": class.as_str() }));
        }
    }
    let meta = json!({
        "command": "sweep",
        "params": params_json(&params),
        "param": a.param,
        "from": a.from,
        "to": a.to,
        "steps": a.steps,
        "ns_tol": crate::dynamics::NS_TOL,
        "param_tol": crate::dynamics::NS_PARAM_TOL,
        "crossings": sweep.crossings,
        "notes": sweep.notes,
    });
    write_artifact(&a.out, a.format, &csv, meta, Value::Array(rows))?;

    let mut text = format!("crossings={}\n", sweep.crossings.len());
    for c in &sweep.crossings {
        let _ = writeln!(
            text,
            "crossing {}={} u_minus={} p={} q={}",
            c.param_name, c.value, c.u_minus, c.p_at_crossing, c.q_at_crossing
        );
    }
    emit(stdout, &text)
}

pub fn cmd_basin(a: &BasinArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let params = a.model.params()?;
    let settings = a.sim.settings()?;
    if !(a.v_tol > 0.0) {
        return Err(CliError::invalid("--v-tol must be positive"));
    }
    crate::dynamics::check_bistable(&params)?;
    let us = match &a.us {
        Some(us) if !us.is_empty() => us.clone(),
        _ => {
            let saddle = interior_point(&params, FixedPointLabel::Eplus)
                .ok_or_else(|| CliError::from(Error::Regime("no saddle E+".into())))?;
            vec![saddle.state.u]
        }
    };
    let boundary = basin_boundary(&us, &params, a.v_tol, &settings)?;

    let mut csv = String::from("u,v_star\n");
    for s in &boundary.samples {
        let _ = writeln!(csv, "{},{}", fmt_num(s.u), fmt_num(s.v_star));
    }
    let meta = json!({
        "command": "basin",
        "params": params_json(&params),
        "us": us,
        "v_tol": a.v_tol,
        "scan_points": crate::dynamics::BASIN_SCAN_POINTS,
        "settings": settings_json(&settings),
        "samples": boundary.samples,
        "notes": boundary.notes,
    });
    let rows: Vec<Value> = boundary
        .samples
        .iter()
        .map(|s| json!({ "u": s.u, "v_star": s.v_star }))
        .collect();
    write_artifact(&a.out, a.format, &csv, meta, Value::Array(rows))?;

    let mut text = String::new();
    for s in &boundary.samples {
        let _ = writeln!(text, "u={} v_star={} below={} above={}", s.u, s.v_star, s.below, s.above);
    }
    for n in &boundary.notes {
        let _ = writeln!(text, "note: {n}");
    }
    emit(stdout, &text)
}

pub fn cmd_portrait(a: &PortraitArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let params = a.model.params()?;
    let settings = a.sim.settings()?;
    let cells = portrait(&a.grid, &params, &settings)?;

    let mut csv = String::from("u,v,verdict\n");
    let mut counts: std::collections::BTreeMap<String, usize> = Default::default();
    for c in &cells {
        let verdict = c.verdict.to_string();
        let _ = writeln!(csv, "{},{},{}", fmt_num(c.start.u), fmt_num(c.start.v), verdict);
        *counts.entry(verdict).or_default() += 1;
    }
    let meta = json!({
        "command": "portrait",
        "params": params_json(&params),
        "grid": a.grid,
        "settings": settings_json(&settings),
        "counts": counts,
    });
    let rows: Vec<Value> = cells
        .iter()
        .map(|c| json!({ "u": c.start.u, "v": c.start.v, "verdict": c.verdict.to_string() }))
        .collect();
    write_artifact(&a.out, a.format, &csv, meta, Value::Array(rows))?;

    let mut text = String::new();
    for (verdict, n) in &counts {
        let _ = writeln!(text, "{verdict}: {n}");
    }
    emit(stdout, &text)
}
