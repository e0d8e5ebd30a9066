//! Command-line front end. Every subcommand prints JSON lines: one record per
//! trial or item, then a summary. Exit status 0 means every checked claim
//! held, 1 means one was falsified, 2 means the invocation was invalid.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::centerpoint::{
    self, reduce_central_from_tverberg, tukey_depth, tverberg_partition, PointConfig,
};
use crate::counterexample::{
    build_counterexample, probe_tverberg_plus_one, verify_isolation, CounterexampleError,
};
use crate::random;
use crate::rational::Point;
use crate::waist::{facet_touching_check, fiber_width_demo, DemoMap, WaistError};
use crate::z2_index::{cross_polytope_sphere, hind, Z2Complex};

#[derive(Debug, Parser)]
#[command(
    name = "topocenter",
    version,
    about = "Exact checks of central point, Tverberg and Z2-index claims"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Ambient dimension; the simplex dimension for `cover` and `fiber-demo`.
    #[arg(long = "d", global = true)]
    pub d: Option<usize>,
    /// Number of parts.
    #[arg(long = "r", global = true)]
    pub r: Option<usize>,
    /// Simplex dimension; must match the value derived from d and r.
    #[arg(long = "m", global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub trials: usize,
    /// JSON input replacing the random instances.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; the report does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth-certified centerpoints of (d+1)(r-1)+1 points.
    Centerpoint,
    /// First Tverberg partition in canonical order, with the depth of its point.
    Tverberg,
    /// Central point through the prime lifting of a Tverberg partition.
    Reduce,
    /// Homological index of a cross-polytope sphere or an input complex.
    Hind {
        #[arg(long)]
        sphere: Option<usize>,
    },
    /// Face isolation for the cone map at m = (d+1)r-2.
    Counterexample,
    /// Search for disjoint faces with a common image at m = (d+1)r-1.
    Probe,
    /// Covering scale of facet-touching sets in the simplex of dimension d.
    Cover,
    /// Grid-sampled fiber widths of a PL map on the simplex (evidence only).
    FiberDemo {
        #[arg(long, value_enum, default_value_t = MapArg::Projection)]
        map: MapArg,
        /// Grid denominator.
        #[arg(long, default_value_t = 12)]
        den: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MapArg {
    Projection,
    Constant,
    Counterexample,
}

impl From<MapArg> for DemoMap {
    fn from(m: MapArg) -> Self {
        match m {
            MapArg::Projection => DemoMap::Projection,
            MapArg::Constant => DemoMap::Constant,
            MapArg::Counterexample => DemoMap::Counterexample,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Falsified,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Falsified => 1,
        }
    }
}

/// An invalid invocation, reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

struct Report {
    lines: Vec<String>,
    status: Status,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            status: Status::Pass,
        }
    }

    fn push(&mut self, v: Value) {
        self.lines.push(v.to_string());
    }

    fn fail(&mut self) {
        self.status = Status::Falsified;
    }
}

fn require(v: Option<usize>, name: &str) -> Result<usize, UsageError> {
    v.ok_or_else(|| usage(format!("--{name} is required")))
}

fn check_m(given: Option<usize>, derived: usize) -> Result<usize, UsageError> {
    match given {
        Some(m) if m != derived => Err(usage(format!(
            "--m {m} is inconsistent with d and r, which fix m = {derived}"
        ))),
        _ => Ok(derived),
    }
}

fn reject_m(cli: &Cli, sub: &str) -> Result<(), UsageError> {
    match cli.m {
        Some(_) => Err(usage(format!("--m does not apply to {sub}"))),
        None => Ok(()),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("invalid input {}: {e}", path.display())))
}

/// `d` and `r` for the point-set subcommands, with `r >= 1` and `d >= 1`.
fn point_params(cli: &Cli) -> Result<(usize, usize, usize), UsageError> {
    let d = require(cli.d, "d")?;
    let r = require(cli.r, "r")?;
    if d == 0 || r == 0 {
        return Err(usage("--d and --r must be positive"));
    }
    let m = check_m(cli.m, (d + 1) * (r - 1))?;
    Ok((d, r, m))
}

/// Configurations to run: the input file, or `trials` seeded random ones.
fn configs(cli: &Cli, d: usize, n: usize) -> Result<Vec<PointConfig>, UsageError> {
    match &cli.input {
        Some(path) => {
            let c: PointConfig = read_json(path)?;
            if c.dim() != d {
                return Err(usage(format!("input has d = {}, expected {d}", c.dim())));
            }
            Ok(vec![c])
        }
        None => Ok((0..cli.trials)
            .map(|t| random::config(&mut random::trial_rng(cli.seed, t), d, n))
            .collect()),
    }
}

fn run_point_trials(
    cli: &Cli,
    name: &str,
    exact_size: bool,
    trial: impl Fn(&PointConfig, usize) -> (bool, Value) + Sync,
) -> Result<Report, UsageError> {
    let (d, r, m) = point_params(cli)?;
    let cs = configs(cli, d, m + 1)?;
    if exact_size && cs.iter().any(|c| c.len() != m + 1) {
        return Err(usage(format!("{name} needs exactly {} points", m + 1)));
    }
    let results: Vec<(bool, Value)> = cs.par_iter().map(|c| trial(c, r)).collect();
    let mut rep = Report::new();
    let mut passed = 0;
    for (i, ((ok, mut v), c)) in results.into_iter().zip(&cs).enumerate() {
        // below the guaranteed size a miss is data, not a falsification
        let asserted = c.len() > m;
        v["trial"] = json!(i);
        v["pass"] = json!(ok);
        v["asserted"] = json!(asserted);
        if ok {
            passed += 1;
        } else if asserted {
            rep.fail();
        }
        rep.push(v);
    }
    rep.push(json!({
        "summary": name, "d": d, "r": r, "n": m + 1, "seed": cli.seed,
        "trials": cs.len(), "passed": passed,
    }));
    Ok(rep)
}

fn err_value(c: &PointConfig, e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string(), "config": c })
}

fn centerpoint_trial(c: &PointConfig, r: usize) -> (bool, Value) {
    match centerpoint::centerpoint(c, r) {
        Ok(cert) => {
            let ok = cert.depth >= r && cert.verify(c);
            (ok, json!({ "certificate": cert, "config": c }))
        }
        Err(e) => (false, err_value(c, e)),
    }
}

fn tverberg_trial(c: &PointConfig, r: usize) -> (bool, Value) {
    let cert = match tverberg_partition(c, r) {
        Ok(Some(cert)) => cert,
        Ok(None) => return (false, err_value(c, "no Tverberg partition")),
        Err(e) => return (false, err_value(c, e)),
    };
    match tukey_depth(&cert.point, c) {
        Ok(depth) => {
            let ok = cert.verify(c, r) && depth.depth >= r;
            (
                ok,
                json!({ "certificate": cert, "depth": depth.depth, "config": c }),
            )
        }
        Err(e) => (false, err_value(c, e)),
    }
}

fn reduce_trial(c: &PointConfig, r: usize) -> (bool, Value) {
    match reduce_central_from_tverberg(c, r) {
        Ok(out) => {
            let ok = out.plan.identities_hold() && out.depth.depth >= r;
            (ok, json!({ "outcome": out, "config": c }))
        }
        Err(e) => (false, err_value(c, e)),
    }
}

fn run_hind(cli: &Cli, sphere: Option<usize>) -> Result<Report, UsageError> {
    reject_m(cli, "hind")?;
    let x: Z2Complex = match (sphere, &cli.input) {
        (Some(m), None) => cross_polytope_sphere(m),
        (None, Some(path)) => read_json(path)?,
        _ => return Err(usage("hind needs exactly one of --sphere and --input")),
    };
    let h = hind(&x).map_err(|e| usage(format!("invalid complex: {e}")))?;
    let mut rep = Report::new();
    rep.push(json!({ "hind": h }));
    Ok(rep)
}

fn falsified(rep: &mut Report, e: &CounterexampleError) {
    rep.fail();
    let detail = match e {
        CounterexampleError::Pigeonhole { tuple, .. }
        | CounterexampleError::NotIsolated { tuple, .. }
        | CounterexampleError::BadCertificate { tuple } => json!(tuple),
        _ => Value::Null,
    };
    rep.push(json!({ "error": e.to_string(), "tuple": detail }));
}

fn cone_params(cli: &Cli, offset: usize) -> Result<(usize, usize, usize), UsageError> {
    let d = require(cli.d, "d")?;
    let r = require(cli.r, "r")?;
    if d == 0 || r < 2 {
        return Err(usage("need --d >= 1 and --r >= 2"));
    }
    let m = check_m(cli.m, (d + 1) * r - offset)?;
    Ok((d, r, m))
}

fn run_counterexample(cli: &Cli) -> Result<Report, UsageError> {
    let (d, r, m) = cone_params(cli, 2)?;
    let mut rep = Report::new();
    let result = build_counterexample(d, r).and_then(|spec| verify_isolation(&spec));
    match result {
        Ok(report) => {
            for rec in &report.records {
                rep.push(json!(rec));
            }
            rep.push(json!({
                "summary": "counterexample", "d": d, "r": r, "m": m,
                "tuples": report.records.len(), "isolated": report.records.len(),
            }));
        }
        Err(e) => falsified(&mut rep, &e),
    }
    Ok(rep)
}

fn run_probe(cli: &Cli) -> Result<Report, UsageError> {
    let (d, r, _) = cone_params(cli, 1)?;
    let mut rep = Report::new();
    match probe_tverberg_plus_one(d, r) {
        Ok(p) => {
            if p.is_failure() {
                rep.fail();
            }
            rep.push(json!(p));
        }
        Err(e) => falsified(&mut rep, &e),
    }
    Ok(rep)
}

#[derive(Deserialize)]
struct CoverInput {
    #[serde(with = "crate::rational::serde_frac::vec2")]
    points: Vec<Point>,
}

fn run_cover(cli: &Cli) -> Result<Report, UsageError> {
    reject_m(cli, "cover")?;
    let sets: Vec<Vec<Point>> = match &cli.input {
        Some(path) => vec![read_json::<CoverInput>(path)?.points],
        None => {
            let n = require(cli.d, "d")?;
            if n == 0 {
                return Err(usage("--d must be positive"));
            }
            (0..cli.trials)
                .map(|t| random::facet_touching_set(&mut random::trial_rng(cli.seed, t), n))
                .collect()
        }
    };
    let results: Vec<_> = sets.par_iter().map(|s| facet_touching_check(s)).collect();
    let mut rep = Report::new();
    let mut passed = 0;
    for (i, (res, set)) in results.into_iter().zip(&sets).enumerate() {
        let pts: Vec<Vec<String>> = set
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect())
            .collect();
        match res {
            Ok(r) => {
                passed += 1;
                rep.push(json!({ "trial": i, "pass": true, "report": r, "points": pts }));
            }
            Err(WaistError::OutsideSimplex(j)) if cli.input.is_some() => {
                return Err(usage(format!("input point {j} is not in the simplex")));
            }
            Err(e) => {
                rep.fail();
                rep.push(
                    json!({ "trial": i, "pass": false, "error": e.to_string(), "points": pts }),
                );
            }
        }
    }
    rep.push(
        json!({ "summary": "cover", "seed": cli.seed, "trials": sets.len(), "passed": passed }),
    );
    Ok(rep)
}

fn run_fiber_demo(cli: &Cli, map: MapArg, den: usize) -> Result<Report, UsageError> {
    reject_m(cli, "fiber-demo")?;
    let n = cli.d.unwrap_or(2);
    if den == 0 {
        return Err(usage("--den must be positive"));
    }
    let report = fiber_width_demo(map.into(), n, den).map_err(|e| usage(e.to_string()))?;
    let mut rep = Report::new();
    for cell in &report.cells {
        rep.push(json!({ "kind": "evidence", "cell": cell }));
    }
    rep.push(json!({
        "summary": "fiber-demo", "kind": report.kind, "map": report.map, "n": report.n,
        "k": report.k, "den": report.den, "cells": report.cells.len(),
        "max_delta": report.max_delta.to_string(),
    }));
    Ok(rep)
}

fn dispatch(cli: &Cli) -> Result<Report, UsageError> {
    match &cli.command {
        Command::Centerpoint => run_point_trials(cli, "centerpoint", false, centerpoint_trial),
        Command::Tverberg => run_point_trials(cli, "tverberg", false, tverberg_trial),
        Command::Reduce => {
            let r = require(cli.r, "r")?;
            if r < 2 {
                return Err(usage("reduce needs --r >= 2"));
            }
            run_point_trials(cli, "reduce", true, reduce_trial)
        }
        Command::Hind { sphere } => run_hind(cli, *sphere),
        Command::Counterexample => run_counterexample(cli),
        Command::Probe => run_probe(cli),
        Command::Cover => run_cover(cli),
        Command::FiberDemo { map, den } => run_fiber_demo(cli, *map, *den),
    }
}

/// Runs the parsed command and writes its report to `out` or `--output`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, UsageError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(usage("--jobs must be positive"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| {
        usage(format!(
            "cannot start {} threads: {e}",
            cli.jobs.unwrap_or(0)
        ))
    })?;
    let rep = pool.install(|| dispatch(cli))?;
    let mut text = rep.lines.join("\n");
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}")))?,
    }
    Ok(rep.status)
}
