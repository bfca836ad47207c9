//! Command-line front end behind the `fci` binary.
//!
//! Exit codes: 0 success, 1 domain failure, 2 usage error. Every run that
//! writes `--out PATH` also writes `PATH.manifest.json` with the parsed
//! flags and SHA-256 digests of the payloads.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::chern::{chern_analytic, chern_loop, chern_plaquette, curvature_map, LoopSpec};
use crate::classical::{
    count_min_energy_configs_dp, enumerate_ground_states_with, CouplingConstants, EnumerationOptions,
    Mode, DEFAULT_BUDGET, DEFAULT_LIST_CAP,
};
use crate::composite::{aligned_specs, composite_chern, ChernMethod, SectorSpec};
use crate::ed::{build_many_body, is_strictly_decreasing, low_spectrum, strong_coupling_scan};
use crate::error::Error;
use crate::hk::{band_gap, require_gap, HkParams};
use crate::lattice::TorusLattice;
use crate::output::{fmt_float, sha256_hex, write_csv};

/// `WxH`, validated as a torus when parsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Size(pub TorusLattice);

impl FromStr for Size {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (w, h) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
        let w: usize = w.trim().parse().map_err(|e| format!("width: {e}"))?;
        let h: usize = h.trim().parse().map_err(|e| format!("height: {e}"))?;
        TorusLattice::new(w, h).map(Size).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.0.width(), self.0.height())
    }
}

fn as_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Serialize for Size {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        as_display(self, s)
    }
}

/// `a:b:step` with `step > 0`; `a > b` is the empty range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected a:b:step, got {s:?}"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
        let r = Range {
            start: num(parts[0])?,
            stop: num(parts[1])?,
            step: num(parts[2])?,
        };
        if !(r.step > 0.0) || !r.start.is_finite() || !r.stop.is_finite() {
            return Err("range needs finite ends and a positive step".into());
        }
        Ok(r)
    }
}

impl Range {
    /// Points `a + i step` up to `b`; values within `1e-9 step` of zero
    /// are snapped to zero.
    pub fn points(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut i = 0u64;
        loop {
            let mut x = self.start + i as f64 * self.step;
            if x > self.stop + 1e-9 * self.step {
                break;
            }
            if x.abs() < 1e-9 * self.step {
                x = 0.0;
            }
            out.push(x);
            i += 1;
        }
        out
    }
}

/// `θ1,θ2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Twists(pub f64, pub f64);

impl FromStr for Twists {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected θ1,θ2, got {s:?}"))?;
        let a = a.trim().parse().map_err(|e| format!("θ1: {e}"))?;
        let b = b.trim().parse().map_err(|e| format!("θ2: {e}"))?;
        Ok(Twists(a, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Numeric,
    #[value(alias = "lexicographic")]
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Plaquette,
    Analytic,
    Loop,
}

#[derive(Debug, Parser)]
#[command(name = "fci", version, about = "Classical ground states, HK Chern numbers and small-torus ED")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exhaustive classical ground states or the transfer-matrix count.
    Classical(ClassicalArgs),
    /// Chern number of the lower HK band.
    Chern(ChernArgs),
    /// Gap and Chern number along a td sweep.
    PhaseDiagram(PhaseDiagramArgs),
    /// Sector Chern vector, average and phase label.
    Composite(CompositeArgs),
    /// Low spectrum of the interacting Hamiltonian or the strong-coupling scan.
    Ed(EdArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ClassicalArgs {
    #[arg(long)]
    pub size: Size,
    #[arg(long)]
    pub particles: usize,
    #[arg(long, default_value_t = 1.0)]
    pub g1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub g2: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Numeric)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, default_value_t = DEFAULT_LIST_CAP)]
    pub list_cap: usize,
    /// Count zero-energy configurations with the transfer-matrix counter.
    #[arg(long)]
    pub dp: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct ChernArgs {
    #[arg(long)]
    pub t1: f64,
    #[arg(long)]
    pub t2: f64,
    #[arg(long)]
    pub td: f64,
    #[arg(long, default_value_t = 24)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Plaquette)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, default_value_t = 2048)]
    pub steps: usize,
    /// Curvature CSV (`k1,k2,F`) on the plaquette mesh.
    #[arg(long)]
    pub map: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct PhaseDiagramArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub td_range: Range,
    #[arg(long, default_value_t = 1.0)]
    pub t1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t2: f64,
    #[arg(long, default_value_t = 24)]
    pub grid: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CompositeArgs {
    /// Four `t1,t2,td` triples for sectors (0,0), (1,0), (0,1), (1,1).
    #[arg(long, num_args = 4, allow_hyphen_values = true, required = true)]
    #[serde(serialize_with = "display_list")]
    pub sector_params: Vec<HkParams>,
    #[arg(long, value_enum, default_value_t = MethodArg::Plaquette)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 24)]
    pub grid: usize,
    /// Torus used for the translation flags.
    #[arg(long, default_value = "8x8")]
    pub size: Size,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EdArgs {
    #[arg(long, default_value = "4x4")]
    pub size: Size,
    #[arg(long)]
    pub particles: usize,
    #[arg(long, default_value_t = 100.0)]
    pub g1: f64,
    #[arg(long, default_value_t = 5.0)]
    pub g2: f64,
    #[arg(
        long,
        num_args = 4,
        allow_hyphen_values = true,
        default_values = ["1,1,0.5", "1,1,0.5", "1,1,0.5", "1,1,0.5"]
    )]
    #[serde(serialize_with = "display_list")]
    pub sector_params: Vec<HkParams>,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub twists: Twists,
    #[arg(long, default_value_t = 24)]
    pub levels: usize,
    /// Run the strong-coupling scan over these g1 values instead.
    #[arg(long, value_delimiter = ',')]
    pub scan_g1: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    pub hopping_scale: f64,
    /// CSV payload (`index,energy` or `g1,max_deviation`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON summary.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

fn display_list<S: Serializer>(v: &[HkParams], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| format!("{},{},{}", p.t1, p.t2, p.td)))
}

/// Failure inside a subcommand; always exit code 1.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(format!("json: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

struct Emitter<'a> {
    stdout: &'a mut dyn Write,
    written: Vec<(PathBuf, String)>,
}

impl Emitter<'_> {
    /// Payload to `path`, or stdout when absent.
    fn emit(&mut self, path: Option<&Path>, bytes: &[u8]) -> CmdResult {
        match path {
            Some(p) => {
                fs::write(p, bytes)?;
                self.written.push((p.to_path_buf(), sha256_hex(bytes)));
            }
            None => self.stdout.write_all(bytes)?,
        }
        Ok(())
    }

    fn manifest<A: Serialize>(&self, anchor: Option<&Path>, subcommand: &str, args: &A, started: Instant) -> CmdResult {
        let Some(anchor) = anchor else {
            return Ok(());
        };
        let outputs: Vec<_> = self
            .written
            .iter()
            .map(|(p, d)| json!({"path": p.display().to_string(), "sha256": d}))
            .collect();
        let doc = json!({
            "subcommand": subcommand,
            "parameters": args,
            "version": env!("CARGO_PKG_VERSION"),
            "wall_time_seconds": started.elapsed().as_secs_f64(),
            "outputs": outputs,
        });
        let mut path = anchor.as_os_str().to_owned();
        path.push(".manifest.json");
        fs::write(PathBuf::from(path), json_bytes(&doc)?)?;
        Ok(())
    }
}

fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>, Failure> {
    let mut bytes = serde_json::to_vec_pretty(v)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    write_csv(&mut buf, header, rows)?;
    Ok(buf)
}

fn specs_from(params: &[HkParams]) -> [SectorSpec; 4] {
    aligned_specs([params[0], params[1], params[2], params[3]])
}

fn cmd_classical(a: &ClassicalArgs, em: &mut Emitter) -> CmdResult {
    let lattice = a.size.0;
    if a.dp {
        let count = count_min_energy_configs_dp(&lattice, a.particles)?;
        let doc = json!({
            "width": lattice.width(),
            "height": lattice.height(),
            "particles": a.particles,
            "zero_energy_configurations": count.to_string(),
        });
        return em.emit(a.out.as_deref(), &json_bytes(&doc)?);
    }
    let couplings = CouplingConstants::new(a.g1, a.g2)?;
    let mode = match a.mode {
        ModeArg::Numeric => Mode::Numeric,
        ModeArg::Lex => Mode::Lexicographic,
    };
    let options = EnumerationOptions {
        budget: a.budget,
        list_cap: a.list_cap,
    };
    let report = match enumerate_ground_states_with(&lattice, a.particles, couplings, mode, options) {
        Err(e @ Error::BudgetExceeded { .. }) => {
            return Err(Failure(format!("{e} (pass --dp for the zero-energy count)")));
        }
        r => r?,
    };
    em.emit(a.out.as_deref(), &json_bytes(&report)?)
}

fn cmd_chern(a: &ChernArgs, em: &mut Emitter) -> CmdResult {
    let params = HkParams::new(a.t1, a.t2, a.td)?;
    let doc = match a.method {
        MethodArg::Plaquette => {
            let map = curvature_map(&params, a.grid)?;
            let c = map.chern()?;
            if let Some(path) = &a.map {
                let mut buf = Vec::new();
                map.write_csv(&mut buf)?;
                em.emit(Some(path), &buf)?;
            }
            json!({
                "method": "plaquette",
                "params": params,
                "grid": a.grid,
                "chern": c.chern,
                "total": fmt_float(c.total),
                "residue": fmt_float(c.residue),
            })
        }
        MethodArg::Analytic => {
            require_gap(&params)?;
            json!({"method": "analytic", "params": params, "chern": chern_analytic(&params)?})
        }
        MethodArg::Loop => {
            require_gap(&params)?;
            let spec = LoopSpec::new(a.eps, a.steps)?;
            let value = chern_loop(&params, &spec)?;
            json!({
                "method": "loop",
                "params": params,
                "epsilon": a.eps,
                "steps": a.steps,
                "value": fmt_float(value),
                "chern": value.round() as i64,
            })
        }
    };
    em.emit(a.out.as_deref(), &json_bytes(&doc)?)
}

/// One sweep row: `td, gap, chern` with `chern` replaced by a marker when
/// the point is refused.
fn phase_row(t1: f64, t2: f64, td: f64, grid: usize) -> (Vec<String>, bool) {
    let params = match HkParams::new(t1, t2, td) {
        Ok(p) => p,
        Err(_) => return (vec![fmt_float(td), String::new(), "error".into()], false),
    };
    let gap = band_gap(&params, grid.max(16)).map(|g| fmt_float(g.gap)).unwrap_or_default();
    match chern_plaquette(&params, grid) {
        Ok(c) => (vec![fmt_float(td), gap, c.chern.to_string()], true),
        Err(Error::GaplessRefusal { .. }) => (vec![fmt_float(td), gap, "gapless".into()], false),
        Err(_) => (vec![fmt_float(td), gap, "error".into()], false),
    }
}

fn cmd_phase_diagram(a: &PhaseDiagramArgs, em: &mut Emitter, stderr: &mut dyn Write) -> CmdResult {
    use rayon::prelude::*;
    if a.jobs == 0 {
        return Err(Failure("--jobs must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Failure(e.to_string()))?;
    let points = a.td_range.points();
    let rows: Vec<(Vec<String>, bool)> =
        pool.install(|| points.par_iter().map(|&td| phase_row(a.t1, a.t2, td, a.grid)).collect());
    let warnings = rows.iter().filter(|r| !r.1).count();
    let rows: Vec<Vec<String>> = rows.into_iter().map(|r| r.0).collect();
    em.emit(a.out.as_deref(), &csv_bytes(&["td", "gap", "chern"], &rows)?)?;
    if warnings > 0 {
        writeln!(stderr, "warning: {warnings} row(s) without a Chern number")?;
    }
    Ok(())
}

fn cmd_composite(a: &CompositeArgs, em: &mut Emitter) -> CmdResult {
    let specs = specs_from(&a.sector_params);
    let method = match a.method {
        MethodArg::Plaquette => ChernMethod::Plaquette { grid: a.grid },
        MethodArg::Analytic => ChernMethod::Analytic,
        MethodArg::Loop => return Err(Failure("composite supports plaquette or analytic".into())),
    };
    let report = composite_chern(&specs, method, Some(&a.size.0))?;
    em.emit(a.out.as_deref(), &json_bytes(&report)?)
}

fn cmd_ed(a: &EdArgs, em: &mut Emitter) -> CmdResult {
    let lattice = a.size.0;
    let specs = specs_from(&a.sector_params);
    if let Some(g1s) = &a.scan_g1 {
        let rows = strong_coupling_scan(&lattice, a.particles, &specs, a.g2, g1s, a.hopping_scale)?;
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| vec![fmt_float(r.g1), fmt_float(r.max_deviation)])
            .collect();
        em.emit(a.out.as_deref(), &csv_bytes(&["g1", "max_deviation"], &table)?)?;
        if let Some(path) = &a.json {
            let doc = json!({
                "g2": a.g2,
                "hopping_scale": a.hopping_scale,
                "rows": table.iter().map(|r| json!({"g1": r[0], "max_deviation": r[1]})).collect::<Vec<_>>(),
                "strictly_decreasing": is_strictly_decreasing(&rows),
            });
            em.emit(Some(path), &json_bytes(&doc)?)?;
        }
        return Ok(());
    }
    let couplings = CouplingConstants::new(a.g1, a.g2)?;
    let scaled = specs.map(|s| s.scaled(a.hopping_scale));
    let h = build_many_body(&lattice, a.particles, &scaled, &couplings, (a.twists.0, a.twists.1))?;
    let s = low_spectrum(&h, a.levels.min(h.dimension()))?;
    let table: Vec<Vec<String>> = s
        .energies
        .iter()
        .enumerate()
        .map(|(i, e)| vec![i.to_string(), fmt_float(*e)])
        .collect();
    em.emit(a.out.as_deref(), &csv_bytes(&["index", "energy"], &table)?)?;
    if let Some(path) = &a.json {
        let doc = json!({
            "dimension": h.dimension(),
            "energies": s.energies.iter().map(|e| fmt_float(*e)).collect::<Vec<_>>(),
            "clusters": s.clusters.iter().map(|c| json!({
                "start": c.start,
                "size": c.size,
                "energy": fmt_float(c.energy),
                "splitting": fmt_float(c.splitting),
            })).collect::<Vec<_>>(),
        });
        em.emit(Some(path), &json_bytes(&doc)?)?;
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let started = Instant::now();
    let mut em = Emitter {
        stdout,
        written: Vec::new(),
    };
    let result = match &cli.command {
        Command::Classical(a) => cmd_classical(a, &mut em).and_then(|_| em.manifest(a.out.as_deref(), "classical", a, started)),
        Command::Chern(a) => cmd_chern(a, &mut em).and_then(|_| em.manifest(a.out.as_deref(), "chern", a, started)),
        Command::PhaseDiagram(a) => cmd_phase_diagram(a, &mut em, stderr)
            .and_then(|_| em.manifest(a.out.as_deref(), "phase-diagram", a, started)),
        Command::Composite(a) => cmd_composite(a, &mut em).and_then(|_| em.manifest(a.out.as_deref(), "composite", a, started)),
        Command::Ed(a) => {
            let anchor = a.out.as_deref().or(a.json.as_deref());
            cmd_ed(a, &mut em).and_then(|_| em.manifest(anchor, "ed", a, started))
        }
    };
    match result {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("fci").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parses_helpers() {
        assert_eq!("4x6".parse::<Size>().unwrap().to_string(), "4x6");
        assert!("3x4".parse::<Size>().is_err());
        let r: Range = "-1:1:0.25".parse().unwrap();
        let p = r.points();
        assert_eq!(p.len(), 9);
        assert_eq!(p[4], 0.0);
        assert!("1:-1:0.5".parse::<Range>().unwrap().points().is_empty());
        assert!("0:1:0".parse::<Range>().is_err());
        assert_eq!("0.5,-1".parse::<Twists>().unwrap(), Twists(0.5, -1.0));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["classical", "--size", "3x4", "--particles", "1"]).0, 2);
        assert_eq!(run_capture(&["nonsense"]).0, 2);
        assert_eq!(run_capture(&["composite", "--sector-params", "1,1,1"]).0, 2);
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, _, err) = run_capture(&["chern", "--t1", "1", "--t2", "1", "--td", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("gap"));
        let (code, _, err) = run_capture(&["classical", "--size", "8x8", "--particles", "16"]);
        assert_eq!(code, 1);
        assert!(err.contains("--dp"));
    }

    #[test]
    fn composite_to_stdout() {
        let (code, out, _) = run_capture(&[
            "composite",
            "--sector-params",
            "1,1,1",
            "1,1,1",
            "1,1,1",
            "1,1,-1",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["average"], "1/2");
        assert_eq!(v["phase"], "FCI");
    }

    #[test]
    fn phase_diagram_header_only_for_empty_range() {
        let (code, out, _) = run_capture(&["phase-diagram", "--td-range", "1:0:0.5"]);
        assert_eq!(code, 0);
        assert_eq!(out, "td,gap,chern\n");
    }
}
