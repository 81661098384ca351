//! Command-line front end.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::{Family, Kernel};
use crate::matching::secular_det;
use crate::model::RingConfig;
use crate::oracle::{oracle_levels, oracle_window, OracleOptions};
use crate::spectrum::{energy_window, find_levels, EnergyLevel, SpectrumOptions};
use crate::wavefunction::{build_solution, normalize, sample, MIN_SAMPLES};

/// Largest solver/oracle disagreement `verify` accepts.
pub const VERIFY_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(
    name = "rashba-ring",
    version,
    about = "Bound states of a finite-depth quantum ring with Rashba coupling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies of one channel.
    Spectrum(RingArgs),
    /// Energy tables for v = 25 (1) or v = 100 (2).
    Table(TableArgs),
    /// Normalised radial wavefunction samples `r,u,w`.
    Wavefunction(WavefunctionArgs),
    /// Sign and log-magnitude of the regularised secular determinant
    /// `e · det M` across the bound window.
    DetScan(DetScanArgs),
    /// Compare the spectrum with the ODE-integration oracle.
    Verify(RingArgs),
    #[command(hide = true)]
    BesselProbe(ProbeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    /// Total angular momentum quantum number.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i32>,
    /// Dimensionless barrier height.
    #[arg(long)]
    pub v: Option<f64>,
    /// Dimensionless Rashba coupling.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Inner radius in units of the outer radius.
    #[arg(long)]
    pub ri: Option<f64>,
    /// Scan points across the energy window.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Root bracket width.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with any of `m, v, beta, r_i, grid_points, tol, format,
    /// out`; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Which table: 1 (v = 25) or 2 (v = 100).
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Zero-based level index within the spectrum.
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    /// Number of uniform radii (r_i and 1 are added).
    #[arg(long, default_value_t = 512)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct DetScanArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Number of uniform energies.
    #[arg(long, default_value_t = 400)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long, allow_hyphen_values = true)]
    pub order: i32,
    #[arg(long, allow_hyphen_values = true)]
    pub re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub im: f64,
}

impl clap::builder::ValueParserFactory for Family {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Family>())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Solver(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::OutOfRange(_) => 3,
            CliError::Mismatch(_) | CliError::Solver(_) | CliError::Io { .. } => 1,
        }
    }
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub m: Option<i32>,
    pub v: Option<f64>,
    pub beta: Option<f64>,
    pub r_i: Option<f64>,
    pub grid_points: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub m: i32,
    pub v: f64,
    pub beta: f64,
    pub r_i: f64,
    pub grid_points: usize,
    pub tol: f64,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn ring(&self) -> RingConfig {
        RingConfig {
            m: self.m,
            v: self.v,
            beta: self.beta,
            r_i: self.r_i,
        }
    }

    pub fn spectrum_options(&self) -> SpectrumOptions {
        SpectrumOptions {
            grid_points: self.grid_points,
            tol: self.tol,
        }
    }
}

fn usage(e: crate::Error) -> CliError {
    CliError::Usage(e.to_string())
}

impl RingArgs {
    pub fn resolve(&self, default_format: Format) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let need = |name: &str| CliError::Usage(format!("missing required parameter --{name}"));
        let defaults = SpectrumOptions::default();
        let run = RunConfig {
            m: self.m.or(file.m).ok_or_else(|| need("m"))?,
            v: self.v.or(file.v).ok_or_else(|| need("v"))?,
            beta: self.beta.or(file.beta).ok_or_else(|| need("beta"))?,
            r_i: self.ri.or(file.r_i).ok_or_else(|| need("ri"))?,
            grid_points: self.grid.or(file.grid_points).unwrap_or(defaults.grid_points),
            tol: self.tol.or(file.tol).unwrap_or(defaults.tol),
            output_format: self.format.or(file.format).unwrap_or(default_format),
            output_path: self.out.clone().or(file.out),
        };
        run.ring().validate().map_err(usage)?;
        run.spectrum_options().validate().map_err(usage)?;
        Ok(run)
    }
}

/// Half-away-from-zero rounding to two decimals, applied to the value's
/// 9-decimal representation so that printed ties such as 2.425 round up.
pub fn round2(x: f64) -> String {
    let t = format!("{:.9}", x.abs());
    let (int, frac) = t.split_once('.').unwrap_or((&t, "000000000"));
    let int: u128 = int.parse().unwrap_or(0);
    let frac = frac.as_bytes();
    let mut n = int * 100 + u128::from(frac[0] - b'0') * 10 + u128::from(frac[1] - b'0');
    if frac[2] >= b'5' {
        n += 1;
    }
    let sign = if x < 0.0 && n != 0 { "-" } else { "" };
    format!("{sign}{}.{:02}", n / 100, n % 100)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub config: RingConfig,
    pub options: SpectrumOptions,
    pub levels: Vec<EnergyLevel>,
}

pub fn render_spectrum(out: &SpectrumOutput, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(out),
        Format::Csv => {
            s.push_str("index,e,bracket_lo,bracket_hi,residual_logdet_gap\n");
            for l in &out.levels {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    l.index, l.e, l.bracket.0, l.bracket.1, l.residual_logdet_gap
                );
            }
        }
        Format::Markdown => {
            let c = &out.config;
            let _ = writeln!(s, "m = {}, v = {}, beta = {}, r_i = {}\n", c.m, c.v, c.beta, c.r_i);
            s.push_str("| index | e | e (2 dp) | log-det gap |\n|---:|---:|---:|---:|\n");
            for l in &out.levels {
                let _ = writeln!(
                    s,
                    "| {} | {:.10} | {} | {:.3} |",
                    l.index,
                    l.e,
                    round2(l.e),
                    l.residual_logdet_gap
                );
            }
        }
    }
    s
}

pub fn cmd_spectrum(run: &RunConfig) -> Result<String, CliError> {
    let levels = find_levels(&run.ring(), &run.spectrum_options())?;
    Ok(render_spectrum(
        &SpectrumOutput {
            config: run.ring(),
            options: run.spectrum_options(),
            levels,
        },
        run.output_format,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: i32,
    pub r_i: f64,
    pub beta: f64,
    pub levels: Vec<f64>,
}

/// `(v, β values)` of each table; rows run over `m ∈ {0, 1}` then
/// `r_i ∈ {0.2, 0.5, 0.8}` then `β`.
pub fn table_layout(which: u8) -> (f64, [f64; 3]) {
    match which {
        1 => (25.0, [0.0, 1.0, 5.0]),
        _ => (100.0, [0.0, 2.0, 10.0]),
    }
}

pub const TABLE_RADII: [f64; 3] = [0.2, 0.5, 0.8];

pub fn table_rows(which: u8, opts: &SpectrumOptions) -> crate::Result<Vec<TableRow>> {
    let (v, betas) = table_layout(which);
    let mut keys = Vec::new();
    for m in 0..=1 {
        for r_i in TABLE_RADII {
            for beta in betas {
                keys.push((m, r_i, beta));
            }
        }
    }
    keys.par_iter()
        .map(|&(m, r_i, beta)| {
            let cfg = RingConfig::new(m, v, beta, r_i)?;
            let levels = find_levels(&cfg, opts)?.iter().map(|l| l.e).collect();
            Ok(TableRow { m, r_i, beta, levels })
        })
        .collect()
}

pub fn render_table(which: u8, rows: &[TableRow], format: Format) -> String {
    let (v, _) = table_layout(which);
    let width = rows.iter().map(|r| r.levels.len()).max().unwrap_or(0).max(1);
    let mut s = String::new();
    match format {
        Format::Json => return to_json(&rows),
        Format::Csv => {
            s.push_str("m,r_i,beta");
            for i in 1..=width {
                let _ = write!(s, ",e{i}");
            }
            s.push('\n');
            for r in rows {
                let _ = write!(s, "{},{},{}", r.m, r.r_i, r.beta);
                for i in 0..width {
                    s.push(',');
                    if let Some(e) = r.levels.get(i) {
                        s.push_str(&round2(*e));
                    }
                }
                s.push('\n');
            }
        }
        Format::Markdown => {
            let _ = writeln!(s, "Energy levels for v = {v}\n");
            s.push_str("| r_i | beta |");
            for i in 1..=width {
                let _ = write!(s, " e{i} |");
            }
            s.push_str("\n|---:|---:|");
            s.push_str(&"---:|".repeat(width));
            s.push('\n');
            let mut current = None;
            for r in rows {
                if current != Some(r.m) {
                    current = Some(r.m);
                    let _ = writeln!(s, "| m = {} | |{}", r.m, " |".repeat(width));
                }
                let _ = write!(s, "| {} | {} |", r.r_i, r.beta);
                for i in 0..width {
                    match r.levels.get(i) {
                        Some(e) => {
                            let _ = write!(s, " {} |", round2(*e));
                        }
                        None => s.push_str("  |"),
                    }
                }
                s.push('\n');
            }
        }
    }
    s
}

pub fn cmd_table(args: &TableArgs) -> Result<String, CliError> {
    let defaults = SpectrumOptions::default();
    let opts = SpectrumOptions {
        grid_points: args.grid.unwrap_or(defaults.grid_points),
        tol: args.tol.unwrap_or(defaults.tol),
    };
    opts.validate().map_err(usage)?;
    let rows = table_rows(args.which, &opts)?;
    Ok(render_table(args.which, &rows, args.format.unwrap_or(Format::Markdown)))
}

pub fn cmd_wavefunction(run: &RunConfig, level_index: usize, n_points: usize) -> Result<String, CliError> {
    if n_points < MIN_SAMPLES {
        return Err(CliError::Usage(format!(
            "--points must be at least {MIN_SAMPLES}, got {n_points}"
        )));
    }
    let levels = find_levels(&run.ring(), &run.spectrum_options())?;
    let level = levels.get(level_index).ok_or_else(|| {
        CliError::OutOfRange(format!(
            "level index {level_index} out of range: {} level(s) found",
            levels.len()
        ))
    })?;
    let sol = normalize(&build_solution(&run.ring(), level.e)?)?;
    let samples = sample(&sol, n_points)?;
    Ok(match run.output_format {
        Format::Csv => samples.to_csv(),
        Format::Json => to_json(&samples),
        Format::Markdown => {
            let mut s = String::from("| r | u | w |\n|---:|---:|---:|\n");
            for i in 0..samples.r.len() {
                let _ = writeln!(s, "| {:e} | {:e} | {:e} |", samples.r[i], samples.u[i], samples.w[i]);
            }
            s
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub e: f64,
    pub sign: i8,
    pub log_abs_det: f64,
}

pub fn cmd_det_scan(run: &RunConfig, n: usize) -> Result<String, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {n}")));
    }
    let cfg = run.ring();
    let w = energy_window(&cfg);
    let points: Vec<ScanPoint> = if w.is_empty() {
        Vec::new()
    } else {
        let step = (w.e_max - w.e_min) / (n - 1) as f64;
        (0..n)
            .into_par_iter()
            .map(|i| {
                let e = if i + 1 == n { w.e_max } else { w.e_min + step * i as f64 };
                secular_det(&cfg, e).map(|d| ScanPoint {
                    e,
                    sign: d.sign,
                    log_abs_det: d.log_magnitude,
                })
            })
            .collect::<crate::Result<_>>()?
    };
    let mut s = String::new();
    match run.output_format {
        Format::Json => return Ok(to_json(&points)),
        Format::Csv => {
            s.push_str("e,sign,log_abs_det\n");
            for p in &points {
                let _ = writeln!(s, "{},{},{}", p.e, p.sign, p.log_abs_det);
            }
        }
        Format::Markdown => {
            s.push_str("| e | sign | log det |\n|---:|---:|---:|\n");
            for p in &points {
                let _ = writeln!(s, "| {} | {} | {} |", p.e, p.sign, p.log_abs_det);
            }
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: RingConfig,
    pub matching: Vec<f64>,
    pub oracle: Vec<f64>,
    pub differences: Vec<f64>,
    pub max_abs_diff: f64,
    pub passed: bool,
}

/// Runs both solvers over the oracle's window.
pub fn verify(cfg: &RingConfig, opts: &SpectrumOptions) -> crate::Result<VerifyReport> {
    let window = oracle_window(cfg);
    let matching: Vec<f64> = find_levels(cfg, opts)?
        .iter()
        .map(|l| l.e)
        .filter(|&e| window.contains(e))
        .collect();
    let oracle = oracle_levels(
        cfg,
        &OracleOptions {
            tol: 1e-9,
            ..Default::default()
        },
    )?;
    let differences: Vec<f64> = if matching.len() == oracle.len() {
        matching.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).collect()
    } else {
        Vec::new()
    };
    let max_abs_diff = if matching.len() == oracle.len() {
        differences.iter().copied().fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(VerifyReport {
        config: *cfg,
        passed: max_abs_diff <= VERIFY_TOLERANCE,
        matching,
        oracle,
        differences,
        max_abs_diff,
    })
}

pub fn render_verify(r: &VerifyReport, format: Format) -> String {
    let mut s = String::new();
    let n = r.matching.len().max(r.oracle.len());
    let cell = |v: &[f64], i: usize| v.get(i).map(|x| x.to_string()).unwrap_or_default();
    match format {
        Format::Json => return to_json(r),
        Format::Csv => {
            s.push_str("index,e_matching,e_oracle,abs_diff\n");
            for i in 0..n {
                let _ = writeln!(
                    s,
                    "{i},{},{},{}",
                    cell(&r.matching, i),
                    cell(&r.oracle, i),
                    cell(&r.differences, i)
                );
            }
        }
        Format::Markdown => {
            s.push_str("| index | matching | oracle | abs diff |\n|---:|---:|---:|---:|\n");
            for i in 0..n {
                let d = r.differences.get(i).map(|d| format!("{d:.2e}")).unwrap_or_default();
                let _ = writeln!(s, "| {i} | {} | {} | {d} |", cell(&r.matching, i), cell(&r.oracle, i));
            }
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "\n{verdict}: max |de| = {:.3e} (limit {VERIFY_TOLERANCE:e}), {} vs {} levels",
                r.max_abs_diff,
                r.matching.len(),
                r.oracle.len()
            );
        }
    }
    s
}

pub fn cmd_verify(run: &RunConfig) -> Result<String, CliError> {
    let report = verify(&run.ring(), &run.spectrum_options())?;
    let text = render_verify(&report, run.output_format);
    if report.passed {
        Ok(text)
    } else {
        emit(&text, run.output_path.as_deref())?;
        Err(CliError::Mismatch(format!(
            "solvers disagree: max |de| = {:e}, {} vs {} levels",
            report.max_abs_diff,
            report.matching.len(),
            report.oracle.len()
        )))
    }
}

fn cmd_bessel_probe(args: &ProbeArgs) -> Result<String, CliError> {
    let z = Complex64::new(args.re, args.im);
    let c = Kernel::default().eval(args.family, args.order, z).map_err(usage)?;
    Ok(format!(
        "family,order,re,im,value_re,value_im\n{:?},{},{},{},{:e},{:e}\n",
        args.family, args.order, args.re, args.im, c.re, c.im
    ))
}

/// Executes a parsed command and writes its output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let (text, out) = match &cli.command {
        Command::Spectrum(a) => {
            let run = a.resolve(Format::Markdown)?;
            (cmd_spectrum(&run)?, run.output_path)
        }
        Command::Table(a) => (cmd_table(a)?, a.out.clone()),
        Command::Wavefunction(a) => {
            let run = a.ring.resolve(Format::Csv)?;
            (cmd_wavefunction(&run, a.level, a.points)?, run.output_path)
        }
        Command::DetScan(a) => {
            let run = a.ring.resolve(Format::Csv)?;
            (cmd_det_scan(&run, a.points)?, run.output_path)
        }
        Command::Verify(a) => {
            let run = a.resolve(Format::Markdown)?;
            (cmd_verify(&run)?, run.output_path)
        }
        Command::BesselProbe(a) => (cmd_bessel_probe(a)?, None),
    };
    emit(&text, out.as_deref())
}

/// Parses `args`, runs, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round2(1.005000001), "1.01");
        assert_eq!(round2(-2.425), "-2.43");
        assert_eq!(round2(-0.001), "0.00");
        assert_eq!(round2(10.1), "10.10");
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"m": 1, "v": 25, "beta": 1, "r_i": 0.2, "format": "json"}"#).unwrap();
        let cli = Cli::try_parse_from(["x", "spectrum", "--config", path.to_str().unwrap(), "--beta", "-1"]).unwrap();
        let Command::Spectrum(a) = cli.command else { panic!() };
        let run = a.resolve(Format::Markdown).unwrap();
        assert_eq!((run.m, run.beta, run.output_format), (1, -1.0, Format::Json));
    }

    #[test]
    fn invalid_values_are_usage_errors() {
        let cli =
            Cli::try_parse_from(["x", "spectrum", "--m", "0", "--v", "25", "--beta", "0", "--ri", "1.5"]).unwrap();
        let Command::Spectrum(a) = cli.command else { panic!() };
        assert_eq!(a.resolve(Format::Csv).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn table_markdown_shape() {
        let rows = vec![
            TableRow {
                m: 0,
                r_i: 0.2,
                beta: 0.0,
                levels: vec![5.581, 10.1],
            },
            TableRow {
                m: 1,
                r_i: 0.8,
                beta: 0.0,
                levels: vec![21.638],
            },
        ];
        let md = render_table(1, &rows, Format::Markdown);
        assert!(md.contains("| 0.2 | 0 | 5.58 | 10.10 |"));
        assert!(md.contains("| 0.8 | 0 | 21.64 |  |"));
        let csv = render_table(1, &rows, Format::Csv);
        assert_eq!(csv.lines().nth(2), Some("1,0.8,0,21.64,"));
    }
}
