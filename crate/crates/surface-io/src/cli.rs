//! The `minidisk` command line: mesh/slice exports and the certificate
//! runners.
//!
//! Exit codes: 0 when everything requested passed, 1 when a certificate
//! failed or a runtime error occurred, 2 on bad arguments.  An optional
//! `--config <path>` file supplies defaults as flat `key=value` lines with
//! keys named after the long flags; explicit flags win.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use wrep_core::family::{self, FamilyParameter};
use wrep_core::limit::{self, Sign, WindingSource};


use crate::export::{export_mesh, write_csv_rows, MeshFormat};
use crate::mesh::{sample_mesh, MeshSource};
use crate::report::ReportDocument;
use crate::verify;

#[derive(Parser)]
#[command(name = "minidisk", version, about = "Minimal-disk surfaces: meshes, slices, and verification reports")]
struct Cli {
    /// Flat key=value file supplying defaults for the flags below.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a surface mesh and export it.
    Mesh(MeshArgs),
    /// Sample one horizontal slice and export it as CSV.
    Slice(SliceArgs),
    /// Run the embedding certificate suite on a grid preset.
    Verify(VerifyArgs),
    /// Emit the four-part theorem report.
    Theorem(TheoremArgs),
    /// Measure convergence toward the limit surfaces.
    Converge(ConvergeArgs),
    /// Count axis-phase turns between two heights.
    Winding(WindingArgs),
}

#[derive(Args)]
struct MeshArgs {
    /// Family parameter in (0, 1/2).
    #[arg(long)]
    a: Option<f64>,
    /// Mesh a limit surface instead: `plus` or `minus`.
    #[arg(long)]
    limit: Option<String>,
    /// Smallest |x| column for limit meshes.
    #[arg(long)]
    x_min: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ns: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// obj, ply, or csv.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SliceArgs {
    #[arg(long)]
    a: Option<f64>,
    /// Slice height, |x| <= 1/2.
    #[arg(long)]
    x: Option<f64>,
    /// Number of samples across the slice (odd, >= 3).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    grid_preset: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TheoremArgs {
    /// Comma-separated subsequence indices, e.g. 3,6,12,24.
    #[arg(long)]
    k_list: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ns: Option<usize>,
    /// Allowed max/min ratio of the away-from-origin curvature supremum.
    #[arg(long)]
    stability: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long)]
    k_list: Option<String>,
    /// Lower edge of the compact window in x.
    #[arg(long)]
    xmin: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ns: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WindingArgs {
    /// Family parameter; omit with --limit for the limit surface.
    #[arg(long)]
    a: Option<f64>,
    /// Use the limit surface.
    #[arg(long, default_value_t = false)]
    limit: bool,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    t2: Option<f64>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<wrep_core::Error> for Failure {
    fn from(e: wrep_core::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&PathBuf>) -> Result<Self, Failure> {
        let mut map = BTreeMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(Failure::Usage(format!(
                        "config {}:{}: expected key=value",
                        path.display(),
                        lineno + 1
                    )));
                };
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Config(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| Failure::Usage(format!("config key {key}={raw}: {e}"))),
        }
    }
}

fn pick<T: FromStr>(flag: Option<T>, cfg: &Config, key: &str) -> Result<Option<T>, Failure>
where
    T::Err: Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

fn require<T>(v: Option<T>, what: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing required value: {what}")))
}

fn parse_family(a: f64) -> Result<FamilyParameter, Failure> {
    FamilyParameter::new(a).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_k_list(raw: &str) -> Result<Vec<u32>, Failure> {
    raw.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Failure::Usage(format!("bad k-list entry {t:?}: {e}")))
        })
        .collect()
}

fn write_report(doc: &ReportDocument, out: Option<&PathBuf>, w: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, doc.to_json())
                .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
            writeln!(w, "wrote {}", path.display()).ok();
        }
        None => {
            w.write_all(doc.to_json().as_bytes()).ok();
        }
    }
    Ok(())
}

fn report_exit(doc: &ReportDocument, w: &mut dyn Write) -> i32 {
    for sec in &doc.sections {
        let failed = sec.certificates.iter().filter(|c| !c.pass).count();
        writeln!(
            w,
            "{} {} ({} certificates{})",
            if sec.all_pass() { "PASS" } else { "FAIL" },
            sec.name,
            sec.certificates.len(),
            if failed > 0 { format!(", {failed} failed") } else { String::new() }
        )
        .ok();
    }
    if doc.all_pass() {
        0
    } else {
        1
    }
}

fn run_mesh(args: MeshArgs, cfg: &Config, w: &mut dyn Write) -> Result<i32, Failure> {
    let a = pick(args.a, cfg, "a")?;
    let limit = pick(args.limit, cfg, "limit")?;
    let source = match (a, limit.as_deref()) {
        (Some(a), None) => MeshSource::Family(parse_family(a)?),
        (None, Some(which)) => {
            let sign = match which {
                "plus" => Sign::Plus,
                "minus" => Sign::Minus,
                other => return Err(Failure::Usage(format!("--limit must be plus or minus, got {other}"))),
            };
            let x_min = pick(args.x_min, cfg, "x-min")?.unwrap_or(0.0625);
            if !(0.0 < x_min && x_min < 0.5) {
                return Err(Failure::Usage("--x-min must lie in (0, 1/2)".into()));
            }
            MeshSource::Limit { sign, x_min }
        }
        _ => return Err(Failure::Usage("pass exactly one of --a or --limit".into())),
    };
    let nx = pick(args.nx, cfg, "nx")?.unwrap_or(129);
    let ns = pick(args.ns, cfg, "ns")?.unwrap_or(41);
    let tol = pick(args.tol, cfg, "tol")?.unwrap_or(1e-12);
    let format_name = pick(args.format, cfg, "format")?.unwrap_or_else(|| "obj".to_string());
    let format = MeshFormat::parse(&format_name)
        .ok_or_else(|| Failure::Usage(format!("unknown format {format_name:?} (obj|ply|csv)")))?;
    let out = require(pick(args.out, cfg, "out")?, "--out")?;

    let mesh = sample_mesh(&source, nx, ns, tol)?;
    let file = fs::File::create(&out)
        .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", out.display())))?;
    let bytes = export_mesh(&mesh, format, std::io::BufWriter::new(file))?;
    writeln!(w, "wrote {} ({bytes} bytes, {} vertices)", out.display(), mesh.samples.len()).ok();
    Ok(0)
}

fn run_slice(args: SliceArgs, cfg: &Config, w: &mut dyn Write) -> Result<i32, Failure> {
    let a = parse_family(require(pick(args.a, cfg, "a")?, "--a")?)?;
    let x = require(pick(args.x, cfg, "x")?, "--x")?;
    let n = pick(args.n, cfg, "n")?.unwrap_or(41);
    let tol = pick(args.tol, cfg, "tol")?.unwrap_or(1e-12);
    let out = require(pick(args.out, cfg, "out")?, "--out")?;
    if !(-0.5..=0.5).contains(&x) {
        return Err(Failure::Usage("--x must lie in [-1/2, 1/2]".into()));
    }
    let slice = family::slice(a, x, n, tol).map_err(|e| match e {
        wrep_core::Error::InvalidParameter { .. } => Failure::Usage(e.to_string()),
        other => Failure::Runtime(other.to_string()),
    })?;
    let file = fs::File::create(&out)
        .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", out.display())))?;
    let mut bw = std::io::BufWriter::new(file);
    write_csv_rows(slice.samples.iter(), &mut bw)?;
    bw.flush().map_err(crate::Error::from)?;
    writeln!(
        w,
        "wrote {} ({} samples, slice direction = ({:.6}, {:.6}))",
        out.display(),
        slice.samples.len(),
        slice.axis_direction[0],
        slice.axis_direction[1]
    )
    .ok();
    Ok(0)
}

fn run_verify(args: VerifyArgs, cfg: &Config, w: &mut dyn Write) -> Result<i32, Failure> {
    let name = pick(args.grid_preset, cfg, "grid-preset")?.unwrap_or_else(|| "acceptance".to_string());
    let preset = verify::GridPreset::by_name(&name)
        .ok_or_else(|| Failure::Usage(format!("unknown grid preset {name:?}")))?;
    let tol = pick(args.tol, cfg, "tol")?.unwrap_or(1e-12);
    let out = pick(args.out, cfg, "out")?;
    let doc = verify::embedding_report(&preset, tol)?;
    write_report(&doc, out.as_ref(), w)?;
    Ok(report_exit(&doc, w))
}

fn run_theorem(args: TheoremArgs, cfg: &Config, w: &mut dyn Write) -> Result<i32, Failure> {
    let k_raw = pick(args.k_list, cfg, "k-list")?.unwrap_or_else(|| "3,6,12,24".to_string());
    let k_list = parse_k_list(&k_raw)?;
    let delta = pick(args.delta, cfg, "delta")?.unwrap_or(0.1);
    let nx = pick(args.nx, cfg, "nx")?.unwrap_or(129);
    let ns = pick(args.ns, cfg, "ns")?.unwrap_or(41);
    let stability = pick(args.stability, cfg, "stability")?.unwrap_or(1.1);
    let tol = pick(args.tol, cfg, "tol")?.unwrap_or(1e-12);
    let out = pick(args.out, cfg, "out")?;
    let doc = verify::theorem_report(&k_list, delta, nx, ns, stability, tol)?;
    write_report(&doc, out.as_ref(), w)?;
    Ok(report_exit(&doc, w))
}

fn run_converge(args: ConvergeArgs, cfg: &Config, w: &mut dyn Write) -> Result<i32, Failure> {
    let k_raw = pick(args.k_list, cfg, "k-list")?.unwrap_or_else(|| "3,6,12,24".to_string());
    let k_list = parse_k_list(&k_raw)?;
    let xmin = pick(args.xmin, cfg, "xmin")?.unwrap_or(0.125);
    let nx = pick(args.nx, cfg, "nx")?.unwrap_or(17);
    let ns = pick(args.ns, cfg, "ns")?.unwrap_or(9);
    let tol = pick(args.tol, cfg, "tol")?.unwrap_or(1e-12);
    let out = pick(args.out, cfg, "out")?;
    let doc = verify::convergence_document(&k_list, xmin, nx, ns, tol)?;
    write_report(&doc, out.as_ref(), w)?;
    Ok(report_exit(&doc, w))
}

fn run_winding(args: WindingArgs, cfg: &Config, w: &mut dyn Write) -> Result<i32, Failure> {
    let t1 = require(pick(args.t1, cfg, "t1")?, "--t1")?;
    let t2 = require(pick(args.t2, cfg, "t2")?, "--t2")?;
    let a = pick(args.a, cfg, "a")?;
    let turns = match (a, args.limit) {
        (Some(a), false) => {
            let a = parse_family(a)?;
            limit::winding_count(WindingSource::Family(a), t1, t2)
                .map_err(|e| Failure::Usage(e.to_string()))?
        }
        (None, true) => limit::winding_count(WindingSource::Limit, t1, t2)
            .map_err(|e| Failure::Usage(e.to_string()))?,
        _ => return Err(Failure::Usage("pass exactly one of --a or --limit".into())),
    };
    let limit_turns = limit::winding_count(WindingSource::Limit, t1, t2)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(w, "turns = {turns:.6} ({turns})").ok();
    writeln!(w, "limit turns = {limit_turns:.6} ({limit_turns})").ok();
    Ok(0)
}

/// Run the CLI against explicit output streams; returns the exit code.
pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                err.write_all(rendered.as_bytes()).ok();
                return 2;
            }
            out.write_all(rendered.as_bytes()).ok();
            return 0;
        }
    };
    let cfg = match Config::load(cli.config.as_ref()) {
        Ok(cfg) => cfg,
        Err(Failure::Usage(msg)) | Err(Failure::Runtime(msg)) => {
            writeln!(err, "error: {msg}").ok();
            return 2;
        }
    };
    let result = match cli.command {
        Command::Mesh(a) => run_mesh(a, &cfg, out),
        Command::Slice(a) => run_slice(a, &cfg, out),
        Command::Verify(a) => run_verify(a, &cfg, out),
        Command::Theorem(a) => run_theorem(a, &cfg, out),
        Command::Converge(a) => run_converge(a, &cfg, out),
        Command::Winding(a) => run_winding(a, &cfg, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            writeln!(err, "error: {msg}").ok();
            2
        }
        Err(Failure::Runtime(msg)) => {
            writeln!(err, "error: {msg}").ok();
            1
        }
    }
}

/// Run the CLI against the process streams.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    run_cli_with(args, &mut out, &mut err)
}
