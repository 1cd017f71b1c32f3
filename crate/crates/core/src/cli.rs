//! The `qolct` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
//! 3 file format error, 4 grid or shape error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::io;
use crate::olct::{self, ComplexSignal, Method};
use crate::params::{OlctParams, Preset};
use crate::qolct;
use crate::quaternion::ComplexE2;
use crate::verify::{self, Suite, TrialConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_GRID: i32 = 4;

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParams(_) | Error::DegenerateComposition(_) | Error::Usage(_) | Error::Domain(_) => EXIT_USAGE,
        Error::Format(_) | Error::Io(_) => EXIT_FORMAT,
        Error::Grid(_) | Error::Shape(_) => EXIT_GRID,
    }
}

#[derive(Parser, Debug)]
#[command(name = "qolct", version, about = "Quaternion offset linear canonical transform")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Forward transform of a signal file.
    Transform(TransformArgs),
    /// Inverse transform of a spectrum file.
    Inverse(InverseArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Forward transform, right-multiply by a mask, inverse transform.
    Filter(FilterArgs),
    /// Time the direct and fast scalar transforms.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Transform parameters `A,B,C,D,p,q`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "preset", required_unless_present = "preset")]
    params: Option<String>,
    /// Named parameters: `qft`, `qfrft:THETA` or `qlct:A,B,C,D`.
    #[arg(long, allow_hyphen_values = true)]
    preset: Option<String>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<OlctParams> {
        match (&self.params, &self.preset) {
            (Some(p), _) => parse_params(p),
            (None, Some(p)) => parse_preset(p)?.params(),
            (None, None) => Err(Error::Usage("one of --params or --preset is required".into())),
        }
    }
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
    /// `direct` or `fast`.
    #[arg(long, default_value = "fast")]
    method: String,
    #[arg(long, allow_hyphen_values = true)]
    wstart: Option<f64>,
    #[arg(long)]
    wstep: Option<f64>,
    #[arg(long)]
    wcount: Option<usize>,
}

#[derive(Args, Debug)]
struct InverseArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
    #[arg(long, default_value = "fast")]
    method: String,
    #[arg(long, allow_hyphen_values = true)]
    tstart: Option<f64>,
    #[arg(long)]
    tstep: Option<f64>,
    #[arg(long)]
    tcount: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// One of roundtrip, linearity, moyal, conjugation, convolution, product,
    /// composition, special_cases, fast_vs_direct.
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    /// Overrides the suite's headline tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Also write the report as `key=value` lines.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FilterArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    mask: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Comma-separated sample counts.
    #[arg(long, default_value = "256,1024,4096,16384,65536")]
    sizes: String,
    /// Largest size for which the direct sum is timed.
    #[arg(long, default_value_t = 8192)]
    direct_max: usize,
    /// Timings are the minimum over this many runs.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| Error::Usage(format!("'{v}' is not a number"))))
        .collect()
}

/// `A,B,C,D,p,q`.
pub fn parse_params(s: &str) -> Result<OlctParams> {
    let v = parse_floats(s)?;
    let [a, b, c, d, p, q] = v[..] else {
        return Err(Error::Usage(format!("--params needs six values A,B,C,D,p,q, got {}", v.len())));
    };
    OlctParams::new(a, b, c, d, p, q)
}

/// `qft`, `qfrft:THETA` or `qlct:A,B,C,D`.
pub fn parse_preset(s: &str) -> Result<Preset> {
    match s.split_once(':') {
        None if s == "qft" => Ok(Preset::Qft),
        Some(("qfrft", theta)) => {
            let theta = theta.trim().parse().map_err(|_| Error::Usage(format!("bad angle in preset '{s}'")))?;
            Ok(Preset::Qfrft { theta })
        }
        Some(("qlct", rest)) => match parse_floats(rest)?[..] {
            [a, b, c, d] => Ok(Preset::Qlct { a, b, c, d }),
            _ => Err(Error::Usage(format!("preset '{s}' needs four values"))),
        },
        _ => Err(Error::Usage(format!("unknown preset '{s}' (expected qft, qfrft:THETA or qlct:A,B,C,D)"))),
    }
}

/// Default grid with any of `start`, `step`, `count` overridden.
fn override_grid(default: Grid, start: Option<f64>, step: Option<f64>, count: Option<usize>) -> Result<Grid> {
    let step = step.unwrap_or(default.step());
    let count = count.unwrap_or(default.count());
    let start = start.unwrap_or(-((count / 2) as f64) * step);
    Grid::new(start, step, count)
}

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Transform(a) => cmd_transform(&a, err),
        Command::Inverse(a) => cmd_inverse(&a, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Filter(a) => cmd_filter(&a),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_transform(a: &TransformArgs, err: &mut dyn Write) -> Result<i32> {
    let params = a.params.resolve()?;
    let method: Method = a.method.parse()?;
    let f = io::read_signal(&a.input)?;
    let wgrid = override_grid(params.default_wgrid(f.grid()), a.wstart, a.wstep, a.wcount)?;
    if !params.satisfies_sampling_contract(f.grid(), &wgrid) {
        let _ = writeln!(err, "warning: output grid differs from the matched grid; accuracy is unspecified");
    }
    let spec = qolct::qolct_forward(&f, &params, &wgrid, method)?;
    io::write_spectrum(&a.output, &spec)?;
    Ok(EXIT_OK)
}

fn cmd_inverse(a: &InverseArgs, err: &mut dyn Write) -> Result<i32> {
    let params = a.params.resolve()?;
    let method: Method = a.method.parse()?;
    let spec = io::read_signal(&a.input)?;
    params.check_transformable()?;
    if let Some(n) = a.tcount {
        if n != spec.len() {
            return Err(Error::Grid(format!(
                "--tcount {n} does not match the {} spectrum samples required by the matched grid",
                spec.len()
            )));
        }
    }
    let tgrid = override_grid(params.default_tgrid(spec.grid()), a.tstart, a.tstep, a.tcount)?;
    if !params.satisfies_sampling_contract(&tgrid, spec.grid()) {
        let _ = writeln!(err, "warning: time grid differs from the matched grid; accuracy is unspecified");
    }
    let f = qolct::qolct_inverse_with(&spec, &params, &tgrid, method)?;
    io::write_signal(&a.output, &f)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let mut cfg = TrialConfig::for_suite(suite);
    cfg.seed = a.seed;
    if let Some(n) = a.n {
        cfg.n_samples = n;
    }
    if let Some(k) = a.trials {
        cfg.n_trials = k;
    }
    cfg.tolerance = a.tol;
    let report = verify::run_suite(suite, &cfg)?;
    writeln!(out, "{}", report.summary())?;
    for n in &report.notes {
        writeln!(out, "  {n}")?;
    }
    if let Some(path) = &a.report {
        io::write_report(path, &report)?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_filter(a: &FilterArgs) -> Result<i32> {
    let params = a.params.resolve()?;
    let f = io::read_signal(&a.input)?;
    let mask = io::read_mask(&a.mask)?;
    let wgrid = params.default_wgrid(f.grid());
    let spec = qolct::qolct_forward(&f, &params, &wgrid, Method::Fast)?;
    let filtered = qolct::apply_mask(&spec, &mask)?;
    let g = qolct::qolct_inverse(&filtered, &params, f.grid())?;
    io::write_signal(&a.output, &g)?;
    Ok(EXIT_OK)
}

/// One benchmark row; `direct_ms` and `deviation` are absent above the cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub direct_ms: Option<f64>,
    pub fast_ms: f64,
    pub max_rel_deviation: Option<f64>,
}

fn min_time_ms<T>(repeats: usize, mut f: impl FnMut() -> Result<T>) -> Result<(f64, T)> {
    let mut best = f64::INFINITY;
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let t0 = Instant::now();
        let v = f()?;
        best = best.min(t0.elapsed().as_secs_f64() * 1e3);
        last = Some(v);
    }
    Ok((best, last.expect("at least one run")))
}

/// Times both scalar paths on a modulated Gaussian at each size, on the matched grid.
pub fn bench(params: &OlctParams, sizes: &[usize], direct_max: usize, repeats: usize) -> Result<Vec<BenchRow>> {
    params.check_transformable()?;
    sizes
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::Usage("sizes must be positive".into()));
            }
            let grid = Grid::centered((std::f64::consts::TAU / n as f64).sqrt(), n)?;
            let f = ComplexSignal::from_fn(grid, |t| ComplexE2::cis(0.7 * t) * (-0.5 * t * t).exp());
            let wgrid = params.default_wgrid(&grid);
            let (fast_ms, fast) = min_time_ms(repeats, || olct::olct_fast(&f, params, &wgrid))?;
            let (direct_ms, deviation) = if n <= direct_max {
                let (ms, direct) = min_time_ms(repeats, || olct::olct_direct(&f, params, &wgrid))?;
                let num: f64 = fast.samples().iter().zip(direct.samples()).map(|(a, b)| (a - b).norm_sqr()).sum();
                let den: f64 = direct.samples().iter().map(|b| b.norm_sqr()).sum();
                (Some(ms), Some((num / den).sqrt()))
            } else {
                (None, None)
            };
            Ok(BenchRow { size: n, direct_ms, fast_ms, max_rel_deviation: deviation })
        })
        .collect()
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let params = a.params.resolve()?;
    let sizes: Vec<usize> = a
        .sizes
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::Usage(format!("bad size '{s}'"))))
        .collect::<Result<_>>()?;
    let rows = bench(&params, &sizes, a.direct_max, a.repeats)?;
    let opt = |v: Option<f64>, prec: usize| v.map(|x| format!("{x:.prec$}")).unwrap_or_default();
    writeln!(out, "size,direct_ms,fast_ms,max_rel_deviation")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{:.3},{}",
            r.size,
            opt(r.direct_ms, 3),
            r.fast_ms,
            r.max_rel_deviation.map(|d| format!("{d:.3e}")).unwrap_or_default()
        )?;
    }
    Ok(EXIT_OK)
}
