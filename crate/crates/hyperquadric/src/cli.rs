//! Command-line front end.
//!
//! Every verb reads JSON (a file path, inline JSON, or `-` for stdin) and writes
//! one JSON document to stdout or `--out`. Exit codes: 0 ok, 1 domain error
//! (the JSON says which), 2 malformed input.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AElem, Delta, NumElem};
use crate::chains::{self, ChainSpec};
use crate::group::{self, Action};
use crate::hermitian::{self, Class, HermitianError, HermitianForm2};
use crate::json::{self as js, JsonError};
use crate::lie;
use crate::normalform::{self, InitialData, NormalFormError, NormalFormReport};
use crate::quadric_frame::{self, P2Point, DIM};
use crate::sample;
use crate::scalar::Gaussian;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Parser, Debug)]
#[command(name = "hyperquadric", version, about = "Hyperquadrics over double and complex numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// 1 (double numbers) or -1 (complex numbers); verbs that take a series read it from the input.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta: Option<i64>,
    /// Weight bound for normalization.
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Finite-difference step (flatness) or grid step (chain).
    #[arg(long, global = true)]
    pub step: Option<f64>,
    /// Number of sample points.
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a pair of 2×2 Hermitian matrices `{"h1", "h2"}`.
    ClassifyHermitian { input: String },
    /// Normalize a series, or `{"series", "init": {"c", "a", "r"}}`.
    Normalize { input: String },
    CheckNormalForm { input: String },
    Kappa { input: String },
    IsMatrix { input: String },
    /// Sample the quadric chain `Z = AW` on a real grid.
    Chain {
        #[arg(long = "A")]
        a: String,
        /// JSON list of real `[a, b]` pairs; defaults to `k·step·E`, `k < points`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Integrate the chain distribution; optional `{"x": [16 reals], "dir", "length"}`.
    ChainDistribution { input: Option<String> },
    /// Structure-equation residual over random frame points.
    Flatness,
    #[command(subcommand)]
    Group(GroupCmd),
    #[command(subcommand)]
    Lie(LieCmd),
    /// The fixed real basis of the Lie algebra.
    DumpBasis,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Check membership of a 3×3 matrix.
    Verify { input: String },
    /// `{"g", "z", "w"}`.
    Act { input: String },
    /// All normalizing factors σ for `{"c"}`.
    Sigma { input: String },
}

#[derive(Subcommand, Debug)]
pub enum LieCmd {
    Dims,
    /// `{"x", "y"}`.
    Bracket { input: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error("{kind}: {message}")]
    Domain { kind: String, message: String, report: Option<Value> },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => 1,
            CliError::Malformed(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Malformed(m) => json!({"error": {"kind": "malformed-input", "message": m}}),
            CliError::Domain { kind, message, report } => {
                let mut v = report.clone().unwrap_or_else(|| json!({}));
                v["error"] = json!({"kind": kind, "message": message});
                v
            }
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::Malformed(e.0)
    }
}

fn domain(kind: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Domain { kind: kind.into(), message: e.to_string(), report: None }
}

impl From<NormalFormError> for CliError {
    fn from(e: NormalFormError) -> Self {
        match e {
            NormalFormError::Malformed(HermitianError::MalformedSeries) => CliError::Malformed(e.to_string()),
            _ => domain("normal-form", e),
        }
    }
}

/// Inline JSON, `-` for stdin, or a file path.
pub fn read_input(s: &str) -> Result<Value, CliError> {
    let text = match s.trim_start().chars().next() {
        Some('{') | Some('[') => s.to_string(),
        _ if s == "-" => {
            let mut t = String::new();
            std::io::stdin().read_to_string(&mut t).map_err(|e| CliError::Malformed(format!("stdin: {e}")))?;
            t
        }
        _ => std::fs::read_to_string(s).map_err(|e| CliError::Malformed(format!("{s}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("invalid JSON: {e}")))
}

fn delta_opt(cli: &Cli) -> Result<Option<Delta>, CliError> {
    cli.delta.map(|d| Delta::from_sign(d).ok_or_else(|| CliError::Malformed(format!("--delta must be 1 or -1, got {d}")))).transpose()
}

fn deltas(cli: &Cli) -> Result<Vec<Delta>, CliError> {
    Ok(delta_opt(cli)?.map_or(Delta::BOTH.to_vec(), |d| vec![d]))
}

pub fn report_to_json(r: &NormalFormReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "condition": v.condition.to_string(), "component": v.component,
                "mono": js::mono_to_json(v.mono), "coeff": js::gaussian_to_json(&v.coeff),
            })
        })
        .collect();
    json!({
        "delta": r.delta.sign(), "satisfied": r.satisfied, "matrix": r.matrix_flag,
        "kappa": js::rational_to_json(&r.kappa), "nu": r.nu, "violations": violations,
    })
}

fn series_arg(v: &Value) -> Result<(crate::series::SurfaceSeries, Option<InitialData>), CliError> {
    // a normalize report is accepted as input too
    if let Some(n) = v.get("normal_form") {
        return Ok((js::series_from_json(n)?, None));
    }
    match v.get("series") {
        None => Ok((js::series_from_json(v)?, None)),
        Some(s) => {
            let s = js::series_from_json(s)?;
            let init = match v.get("init") {
                None => None,
                Some(i) => {
                    let get = |k: &str| -> Result<_, CliError> {
                        Ok(js::aelem_from_json(i.get(k).ok_or_else(|| CliError::Malformed(format!("init.{k} missing")))?, Some(s.delta))?)
                    };
                    Some(InitialData { c: get("c")?, a: get("a")?, r: get("r")? })
                }
            };
            Ok((s, init))
        }
    }
}

fn classify_hermitian(cli: &Cli, input: &str) -> Result<Value, CliError> {
    let [h1, h2] = js::hermitian_pair_from_json(&read_input(input)?)?;
    let h = HermitianForm2::new(h1, h2).map_err(|e| CliError::Malformed(e.to_string()))?;
    let mut out = json!({"discriminant": js::gaussian_to_json(&h.discriminant())});
    let class = match cli.mode {
        Mode::Exact => {
            let c = hermitian::classify(&h);
            if let (Some(w), Some(r)) = (&c.witness, c.residual) {
                let a: Vec<Vec<Value>> = w.a.iter().map(|r| r.iter().map(|z| js::complex_to_json(*z)).collect()).collect();
                out["witness"] = json!({"a": a, "b": w.b});
                out["residual"] = json!(r);
            }
            c.class
        }
        Mode::Numeric => hermitian::classify_numeric(&h.to_c64(), 1e-12).map_err(|e| domain("tolerance", e))?,
    };
    out["label"] = json!(class.to_string());
    if class == Class::Degenerate {
        return Err(CliError::Domain { kind: "degenerate".into(), message: "the pencil is degenerate".into(), report: Some(out) });
    }
    Ok(out)
}

fn chain_verb(cli: &Cli, a: &str, grid: Option<&str>) -> Result<Value, CliError> {
    let a = js::num_from_json(&read_input(a)?, delta_opt(cli)?)?;
    let d = a.delta;
    let grid: Vec<NumElem> = match grid {
        Some(g) => {
            let v = read_input(g)?;
            let arr = v.as_array().ok_or_else(|| CliError::Malformed("grid must be a list of [a, b] pairs".into()))?;
            arr.iter()
                .map(|p| {
                    let p = p.as_array().filter(|p| p.len() == 2).and_then(|p| Some((p[0].as_f64()?, p[1].as_f64()?)));
                    let (x, y) = p.ok_or_else(|| CliError::Malformed("grid must be a list of [a, b] pairs".into()))?;
                    Ok(AElem::new(d, x.into(), y.into()))
                })
                .collect::<Result<_, CliError>>()?
        }
        None => {
            let h = cli.step.unwrap_or(0.1);
            (0..cli.points.unwrap_or(11)).map(|k| AElem::new(d, (k as f64 * h).into(), 0.0.into())).collect()
        }
    };
    let spec = ChainSpec { a: a.clone() };
    let mut points = Vec::new();
    let (mut r1, mut r2) = (0.0f64, 0.0f64);
    for p in chains::chain_on_quadric(&spec, &grid) {
        let p = p.map_err(|e| domain("no-real-branch", e))?;
        let (x, y) = p.residuals(&a);
        (r1, r2) = (r1.max(x), r2.max(y));
        points.push(json!({"u": js::num_to_json(&p.u), "v": js::num_to_json(&p.v), "z": js::num_to_json(&p.z), "w": js::num_to_json(&p.w)}));
    }
    Ok(json!({"delta": d.sign(), "A": js::num_to_json(&a), "points": points, "max_line_residual": r1, "max_quadric_residual": r2}))
}

fn chain_distribution(cli: &Cli, input: Option<&str>) -> Result<Value, CliError> {
    let v = input.map(read_input).transpose()?.unwrap_or(json!({}));
    let d = delta_opt(cli)?.unwrap_or(Delta::Plus);
    let start = match v.get("x") {
        Some(x) => {
            let xs: Vec<f64> = x
                .as_array()
                .filter(|a| a.len() == DIM)
                .map(|a| a.iter().filter_map(Value::as_f64).collect())
                .filter(|a: &Vec<f64>| a.len() == DIM)
                .ok_or_else(|| CliError::Malformed(format!("x must hold {DIM} numbers")))?;
            P2Point::new(d, xs.try_into().expect("length checked")).map_err(|e| domain("frame", e))?
        }
        None => P2Point::random(d, &mut sample::rng(cli.seed)),
    };
    let dir = match v.get("dir") {
        Some(x) => js::num_from_json(x, Some(d))?,
        None => AElem::one(d),
    };
    let length = match v.get("length") {
        Some(l) => l.as_f64().ok_or_else(|| CliError::Malformed("length must be a number".into()))?,
        None => 1.0,
    };
    let path = chains::integrate_chain_distribution(&start, &dir, length, cli.points.unwrap_or(20)).map_err(|e| domain("chain", e))?;
    let pts: Vec<Value> = path
        .points
        .iter()
        .map(|p| json!({"s": p.s, "z": js::num_to_json(&p.z), "u": js::num_to_json(&p.u), "t": js::num_to_json(&p.t)}))
        .collect();
    Ok(json!({
        "delta": d.sign(), "start": start.x.to_vec(), "slope": js::num_to_json(&path.slope),
        "drift_tdg": path.drift_tdg, "drift_ggbar": path.drift_ggbar,
        "projection_residual": path.projection_residual, "points": pts,
    }))
}

fn group_verb(cli: &Cli, cmd: &GroupCmd) -> Result<Value, CliError> {
    match cmd {
        GroupCmd::Verify { input } => {
            let m = js::mat3_from_json(&read_input(input)?)?;
            let member = group::is_member(&m);
            let iso = group::isotropy_params(&m).ok().map(|p| {
                json!({"sigma": js::aelem_to_json(&p.sigma), "c": js::aelem_to_json(&p.c), "a": js::aelem_to_json(&p.a), "r": js::aelem_to_json(&p.r)})
            });
            let out = json!({"member": member, "isotropy": iso});
            if member {
                Ok(out)
            } else {
                Err(CliError::Domain { kind: "not-a-member".into(), message: "U J U* ≠ J or det U ≠ E".into(), report: Some(out) })
            }
        }
        GroupCmd::Act { input } => {
            let v = read_input(input)?;
            let g = js::mat3_from_json(v.get("g").ok_or_else(|| CliError::Malformed("missing field \"g\"".into()))?)?;
            let get = |k: &str| -> Result<_, CliError> {
                Ok(js::aelem_from_json(v.get(k).ok_or_else(|| CliError::Malformed(format!("missing field {k:?}")))?, Some(g.delta))?)
            };
            let (z, w) = (get("z")?, get("w")?);
            if !group::is_member(&g) {
                return Err(domain("not-a-member", "U J U* ≠ J or det U ≠ E"));
            }
            if !group::on_quadric(&z, &w) {
                return Err(domain("not-on-quadric", group::GroupError::NotOnQuadric));
            }
            Ok(match group::act(&g, &z, &w) {
                Action::Point { z, w } => json!({"at_infinity": false, "z": js::aelem_to_json(&z), "w": js::aelem_to_json(&w)}),
                Action::AtInfinity => json!({"at_infinity": true}),
            })
        }
        GroupCmd::Sigma { input } => {
            let v = read_input(input)?;
            let c = v.get("c").ok_or_else(|| CliError::Malformed("missing field \"c\"".into()))?;
            match cli.mode {
                Mode::Exact => {
                    let c = js::aelem_from_json(c, None)?;
                    let s = group::solve_sigma(&c.to_cyclotomic()).map_err(|e| domain("sigma", e))?;
                    Ok(json!({"count": s.len(), "sigma": s.iter().map(js::cyclotomic_elem_to_json).collect::<Vec<_>>()}))
                }
                Mode::Numeric => {
                    let c = js::num_from_json(c, None)?;
                    let s = group::solve_sigma_numeric(&c).map_err(|e| domain("sigma", e))?;
                    Ok(json!({"count": s.len(), "sigma": s.iter().map(js::num_to_json).collect::<Vec<_>>()}))
                }
            }
        }
    }
}

fn lie_verb(cli: &Cli, cmd: &LieCmd) -> Result<Value, CliError> {
    match cmd {
        LieCmd::Dims => {
            let out: Vec<Value> = deltas(cli)?
                .into_iter()
                .map(|d| {
                    let g = lie::grade_dims(d);
                    let total: usize = g.iter().map(|x| x.1).sum();
                    let positive: usize = g.iter().filter(|x| x.0 > 0).map(|x| x.1).sum();
                    json!({"delta": d.sign(), "dim": total, "graded": g, "positive": positive})
                })
                .collect();
            Ok(json!(out))
        }
        LieCmd::Bracket { input } => {
            let v = read_input(input)?;
            let get = |k: &str| -> Result<_, CliError> {
                Ok(js::mat3_from_json(v.get(k).ok_or_else(|| CliError::Malformed(format!("missing field {k:?}")))?)?)
            };
            let (x, y) = (get("x")?, get("y")?);
            if x.delta != y.delta {
                return Err(CliError::Malformed("delta mismatch".into()));
            }
            if !(lie::is_member(&x) && lie::is_member(&y)) {
                return Err(domain("not-in-algebra", "input is not in the Lie algebra of the group"));
            }
            let b = lie::bracket(&x, &y);
            Ok(json!({"bracket": js::mat3_to_json(&b), "grade": lie::homogeneous_grade(&b)}))
        }
    }
}

fn dump_basis(cli: &Cli) -> Result<Value, CliError> {
    let out: Vec<Value> = deltas(cli)?
        .into_iter()
        .map(|d| {
            let b: Vec<Value> = lie::basis::<Gaussian>(d)
                .iter()
                .map(|e| json!({"block": format!("{:?}", e.block), "unit": e.unit, "grade": e.grade(), "matrix": js::mat3_to_json(&e.matrix)}))
                .collect();
            json!({"delta": d.sign(), "basis": b})
        })
        .collect();
    Ok(json!(out))
}

/// Run one command and return its JSON report.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::ClassifyHermitian { input } => classify_hermitian(cli, input),
        Command::Normalize { input } => {
            let (s, init) = series_arg(&read_input(input)?)?;
            let init = init.unwrap_or_else(|| InitialData::identity(s.delta));
            let n = normalform::normalize(&s, &init, cli.bound.unwrap_or(s.bound))?;
            let r = normalform::check(&n.normal_form)?;
            Ok(json!({"normal_form": js::series_to_json(&n.normal_form), "map": js::jet_to_json(&n.map), "report": report_to_json(&r)}))
        }
        Command::CheckNormalForm { input } => {
            let (s, _) = series_arg(&read_input(input)?)?;
            Ok(report_to_json(&normalform::check(&s)?))
        }
        Command::Kappa { input } => {
            let (s, _) = series_arg(&read_input(input)?)?;
            let r = normalform::check(&s)?;
            if !r.satisfied {
                return Err(CliError::Domain {
                    kind: "not-in-normal-form".into(),
                    message: NormalFormError::NotInNormalForm.to_string(),
                    report: Some(report_to_json(&r)),
                });
            }
            Ok(json!({"kappa": js::rational_to_json(&r.kappa)}))
        }
        Command::IsMatrix { input } => {
            let (s, _) = series_arg(&read_input(input)?)?;
            Ok(json!({"matrix": normalform::is_matrix_surface(&s)?}))
        }
        Command::Chain { a, grid } => chain_verb(cli, a, grid.as_deref()),
        Command::ChainDistribution { input } => chain_distribution(cli, input.as_deref()),
        Command::Flatness => {
            let step = cli.step.unwrap_or(1e-4);
            let points = cli.points.unwrap_or(20);
            let mut r = sample::rng(cli.seed);
            let reps: Vec<Value> = deltas(cli)?
                .into_iter()
                .map(|d| serde_json::to_value(quadric_frame::flatness_report(d, points, step, &mut r)).expect("plain data"))
                .collect();
            Ok(if reps.len() == 1 { reps.into_iter().next().expect("one report") } else { json!(reps) })
        }
        Command::Group(g) => group_verb(cli, g),
        Command::Lie(l) => lie_verb(cli, l),
        Command::DumpBasis => dump_basis(cli),
    }
}

/// Parse arguments, run, print, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (code, value) = match run(&cli) {
        Ok(v) => (0, v),
        Err(e) => (e.exit_code(), e.to_json()),
    };
    let text = serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n";
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("{}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}
