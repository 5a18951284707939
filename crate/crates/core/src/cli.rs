//! Command-line driver and figure-data emitters.
//!
//! Six subcommands, each producing one fixed-schema table (CSV or JSON):
//!
//! * `spectrum`     n, e_et, e_fgh, e_coulomb, e_ho, character
//! * `wavefunction` n, x, psi_et, psi_fgh
//! * `envelope`     n, x, v, v_env
//! * `sweep-d`      n, d, e_fgh, e_var, e_et
//! * `compare`      n, e_lower, e_exact, e_fgh, e_upper
//! * `convergence`  refinement, n_points, x_max, n, e_fgh, delta
//!
//! Level ranges `a..b` are inclusive. Exit codes: 0 success, 2 usage or
//! validation failure, 3 numerical failure; every error prints one line to
//! stderr starting with the error name.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{coulomb_lower_for_level, harmonic_upper, hulthen_bracket};
use crate::envelope::{build_envelopes, classify_bound, solve_level, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::fgh::{convergence_sweep, fgh_solve, GridEigenResult, GridSpec};
use crate::model::{model_from_label, DomainKind, HamiltonianModel};
use crate::output::{render, Cell, GridMetadata, Metadata, OutputFormat, Table};
use crate::variational::variational_energy;
use crate::wavefunction::sample_wavefunction;

#[derive(Parser, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[command(
    name = "et-spectra",
    version,
    about = "Envelope-theory spectra for 1D two-body Hamiltonians, with grid-oracle, \
             analytic-bound, and variational comparators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Command {
    /// Per-level energy table: envelope, grid oracle, and analytic bounds.
    Spectrum(SpectrumArgs),
    /// Sampled envelope and grid-oracle eigenfunctions on a common grid.
    Wavefunction(WavefunctionArgs),
    /// Potential and its per-level tangent quadratic envelopes.
    Envelope(EnvelopeArgs),
    /// Ground/first-excited energies versus the bias D for three engines.
    #[command(name = "sweep-d")]
    SweepD(SweepDArgs),
    /// Analytic bracket around an exactly solvable half-line well.
    Compare(CompareArgs),
    /// Grid-refinement ladder with per-level eigenvalue deltas.
    Convergence(ConvergenceArgs),
}

/// Model selection shared by all subcommands.
#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArgs {
    /// Registry label: soft-coulomb | pure-coulomb | harmonic-approx |
    /// hulthen | exp-well | coulomb-half.
    #[arg(long)]
    pub model: String,
    /// Model parameter, repeatable: -P D=2 -P k=1 -P a=0.2
    #[arg(short = 'P', long = "param", value_name = "KEY=VAL", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,
}

impl ModelArgs {
    pub fn parameters(&self) -> BTreeMap<String, f64> {
        self.params.iter().cloned().collect()
    }

    pub fn build(&self) -> Result<HamiltonianModel> {
        model_from_label(&self.model, &self.parameters())
    }
}

/// Output destination and encoding shared by all subcommands.
#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Optional overrides of the model-scaled default grid.
#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridArgs {
    /// Grid points (odd, >= 65).
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Half-width of the grid box.
    #[arg(long)]
    pub grid_xmax: Option<f64>,
}

impl GridArgs {
    fn resolve(&self, model: &HamiltonianModel, n_levels: usize) -> Result<GridSpec> {
        let default = GridSpec::default_for(model, n_levels)?;
        GridSpec::new(
            self.grid_points.unwrap_or(default.n_points),
            self.grid_xmax.unwrap_or(default.x_max),
            model.domain(),
        )
    }
}

/// Inclusive level range `a..b` (a single index `n` means `n..n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRange {
    pub lo: usize,
    pub hi: usize,
}

impl LevelRange {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    pub fn count(&self) -> usize {
        self.hi - self.lo + 1
    }
}

fn parse_levels(text: &str) -> Result<LevelRange, String> {
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<usize>().map_err(|e| e.to_string())?,
            b.trim().parse::<usize>().map_err(|e| e.to_string())?,
        ),
        None => {
            let n = text.trim().parse::<usize>().map_err(|e| e.to_string())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty level range {lo}..{hi}"));
    }
    Ok(LevelRange { lo, hi })
}

fn parse_param(text: &str) -> Result<(String, f64), String> {
    let (key, val) = text
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VAL, got `{text}`"))?;
    let value = val
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad value for `{key}`: {e}"))?;
    Ok((key.trim().to_string(), value))
}

fn parse_window(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = parse_real_range(text)?;
    if !(hi > lo) {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Like a window but a degenerate A..A range is allowed (single-point sweep).
fn parse_d_range(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = parse_real_range(text)?;
    if !(hi >= lo) {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_real_range(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{text}`"))?;
    let lo = a.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Inclusive level range a..b.
    #[arg(long, value_parser = parse_levels)]
    pub levels: LevelRange,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Inclusive level range a..b.
    #[arg(long, value_parser = parse_levels)]
    pub levels: LevelRange,
    /// Sampling window A..B; default is the level's own +-8/lambda.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(f64, f64)>,
    /// Sample count per level.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Inclusive level range a..b.
    #[arg(long, value_parser = parse_levels)]
    pub levels: LevelRange,
    /// Sampling window A..B; default spans 3 x0 of the highest level.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(f64, f64)>,
    /// Sample count per level.
    #[arg(long, default_value_t = 601)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Levels to sweep, subset of 0..1.
    #[arg(long, value_parser = parse_levels)]
    pub levels: LevelRange,
    /// Bias range A..B with positive endpoints.
    #[arg(long, value_parser = parse_d_range, allow_hyphen_values = true)]
    pub d_range: (f64, f64),
    /// Number of bias samples.
    #[arg(long, default_value_t = 16)]
    pub d_count: usize,
    /// Sample spacing over the bias range.
    #[arg(long, value_enum, default_value_t = SpacingArg::Log)]
    pub d_spacing: SpacingArg,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpacingArg {
    Log,
    Linear,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Inclusive level range a..b.
    #[arg(long, value_parser = parse_levels)]
    pub levels: LevelRange,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Inclusive level range 0..b (must start at 0).
    #[arg(long, value_parser = parse_levels)]
    pub levels: LevelRange,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Execute a parsed command, writing the rendered table to its destination.
pub fn run(cli: Cli) -> Result<()> {
    let (table, metadata, output) = match &cli.command {
        Command::Spectrum(args) => {
            let (t, m) = cmd_spectrum(args)?;
            (t, m, args.output.clone())
        }
        Command::Wavefunction(args) => {
            let (t, m) = cmd_wavefunction(args)?;
            (t, m, args.output.clone())
        }
        Command::Envelope(args) => {
            let (t, m) = cmd_envelope(args)?;
            (t, m, args.output.clone())
        }
        Command::SweepD(args) => {
            let (t, m) = cmd_sweep_d(args)?;
            (t, m, args.output.clone())
        }
        Command::Compare(args) => {
            let (t, m) = cmd_compare(args)?;
            (t, m, args.output.clone())
        }
        Command::Convergence(args) => {
            let (t, m) = cmd_convergence(args)?;
            (t, m, args.output.clone())
        }
    };
    let text = render(&table, &metadata, output.format.into());
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn metadata_for(
    command: &'static str,
    model: &ModelArgs,
    levels: Option<LevelRange>,
    grid: Option<&GridSpec>,
) -> Metadata {
    Metadata {
        command,
        model: Some(model.model.clone()),
        parameters: model.parameters(),
        levels: levels.map(|r| (r.lo, r.hi)),
        grid: grid.map(|g| GridMetadata {
            n_points: g.n_points,
            x_max: g.x_max,
        }),
        solver_tol: DEFAULT_TOL,
    }
}

/// Energy table behind the level-by-level comparison figure.
pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<(Table, Metadata)> {
    let model = args.model.build()?;
    let levels = args.levels;
    let spec = args.grid.resolve(&model, levels.hi + 1)?;
    let oracle = fgh_solve(&model, &spec, levels.hi + 1)?;
    let character = classify_bound(&model).as_str();
    let d = model.parameter("D");

    let mut table = Table::new(vec!["n", "e_et", "e_fgh", "e_coulomb", "e_ho", "character"]);
    for n in levels.iter() {
        let et = solve_level(&model, n, DEFAULT_TOL)?;
        let e_coulomb = if model.label == "soft-coulomb" {
            coulomb_lower_for_level(n)
        } else {
            None
        };
        let e_ho = match d {
            Some(d) => Some(harmonic_upper(n, d)?),
            None => None,
        };
        table.push(vec![
            Cell::Int(n),
            Cell::Real(et.energy),
            Cell::Real(oracle.eigenvalues[n]),
            Cell::OptReal(e_coulomb),
            Cell::OptReal(e_ho),
            Cell::Text(character),
        ]);
    }
    Ok((
        table,
        metadata_for("spectrum", &args.model, Some(levels), Some(&spec)),
    ))
}

fn aligned_oracle_values(
    oracle: &GridEigenResult,
    level: usize,
    et_values: impl Fn(f64) -> f64,
    xs: &[f64],
) -> Vec<f64> {
    // Relative sign fixed by the overlap on the oracle's own grid.
    let mut overlap = 0.0;
    let vals = oracle.wavefunction_values(level);
    for (x, v) in oracle.grid.iter().zip(&vals) {
        overlap += et_values(*x) * v;
    }
    let sign = if overlap < 0.0 { -1.0 } else { 1.0 };
    oracle
        .interpolate_wavefunction(level, xs)
        .into_iter()
        .map(|v| sign * v)
        .collect()
}

/// Envelope and oracle eigenfunctions sampled on a shared per-level grid.
pub fn cmd_wavefunction(args: &WavefunctionArgs) -> Result<(Table, Metadata)> {
    let model = args.model.build()?;
    let levels = args.levels;
    if args.points < 2 {
        return Err(Error::Usage(format!(
            "need at least 2 sample points, got {}",
            args.points
        )));
    }
    let spec = args.grid.resolve(&model, levels.hi + 1)?;
    let oracle = fgh_solve(&model, &spec, levels.hi + 1)?;

    let mut table = Table::new(vec!["n", "x", "psi_et", "psi_fgh"]);
    for n in levels.iter() {
        let sol = solve_level(&model, n, DEFAULT_TOL)?;
        let (lo, hi) = match args.window {
            Some(w) => w,
            None => {
                let span = 8.0 / sol.lambda();
                match model.domain() {
                    DomainKind::FullLine => (-span, span),
                    DomainKind::HalfLine => (0.0, span),
                }
            }
        };
        let xs: Vec<f64> = (0..args.points)
            .map(|i| lo + (hi - lo) * i as f64 / (args.points - 1) as f64)
            .collect();
        let sample = sample_wavefunction(&sol, &xs)?;
        let fgh_vals = aligned_oracle_values(
            &oracle,
            n,
            |x| crate::wavefunction::eval_wavefunction(&sol, x),
            &xs,
        );
        for ((x, et), fgh) in xs.iter().zip(&sample.values).zip(&fgh_vals) {
            table.push(vec![
                Cell::Int(n),
                Cell::Real(*x),
                Cell::Real(*et),
                Cell::Real(*fgh),
            ]);
        }
    }
    Ok((
        table,
        metadata_for("wavefunction", &args.model, Some(levels), Some(&spec)),
    ))
}

/// Potential and tangent envelopes over a window.
pub fn cmd_envelope(args: &EnvelopeArgs) -> Result<(Table, Metadata)> {
    let model = args.model.build()?;
    let levels = args.levels;
    if args.points < 2 {
        return Err(Error::Usage(format!(
            "need at least 2 sample points, got {}",
            args.points
        )));
    }

    let mut solutions = Vec::new();
    for n in levels.iter() {
        solutions.push(solve_level(&model, n, DEFAULT_TOL)?);
    }
    let x0_top = solutions
        .iter()
        .map(|s| s.x0)
        .fold(0.0_f64, f64::max);
    let (lo, hi) = match args.window {
        Some(w) => w,
        None => match model.domain() {
            DomainKind::FullLine => (-3.0 * x0_top, 3.0 * x0_top),
            DomainKind::HalfLine => (3.0 * x0_top / args.points as f64, 3.0 * x0_top),
        },
    };
    if model.domain() == DomainKind::HalfLine && lo < 0.0 {
        return Err(Error::DomainViolation(lo));
    }

    let mut table = Table::new(vec!["n", "x", "v", "v_env"]);
    for sol in &solutions {
        let env = build_envelopes(&model, sol);
        for i in 0..args.points {
            let x = lo + (hi - lo) * i as f64 / (args.points - 1) as f64;
            table.push(vec![
                Cell::Int(sol.n),
                Cell::Real(x),
                Cell::Real(model.v(x)),
                Cell::Real(env.v_tilde(x)),
            ]);
        }
    }
    Ok((
        table,
        metadata_for("envelope", &args.model, Some(levels), None),
    ))
}

/// Ground/first-excited comparison of the grid oracle, the variational
/// bound, and the envelope bound over a bias sweep.
pub fn cmd_sweep_d(args: &SweepDArgs) -> Result<(Table, Metadata)> {
    if args.model.model != "soft-coulomb" {
        return Err(Error::UnsupportedModel {
            label: args.model.model.clone(),
            reason: "the bias sweep compares engines of the soft-coulomb model".into(),
        });
    }
    let levels = args.levels;
    if levels.hi > 1 {
        return Err(Error::Usage(format!(
            "sweep levels must be within 0..1, got {}..{}",
            levels.lo, levels.hi
        )));
    }
    let (d_lo, d_hi) = args.d_range;
    if d_lo <= 0.0 {
        return Err(Error::NonPositiveBias(d_lo));
    }
    if args.d_count < 1 {
        return Err(Error::Usage("d-count must be at least 1".into()));
    }

    let ds: Vec<f64> = (0..args.d_count)
        .map(|i| {
            let t = if args.d_count == 1 {
                0.0
            } else {
                i as f64 / (args.d_count - 1) as f64
            };
            match args.d_spacing {
                SpacingArg::Log => (d_lo.ln() + (d_hi.ln() - d_lo.ln()) * t).exp(),
                SpacingArg::Linear => d_lo + (d_hi - d_lo) * t,
            }
        })
        .collect();

    let mut table = Table::new(vec!["n", "d", "e_fgh", "e_var", "e_et"]);
    let mut last_spec = None;
    for n in levels.iter() {
        for &d in &ds {
            let model = crate::model::make_soft_coulomb(d)?;
            let spec = args.grid.resolve(&model, levels.hi + 1)?;
            let oracle = fgh_solve(&model, &spec, levels.hi + 1)?;
            let et = solve_level(&model, n, DEFAULT_TOL)?;
            let var = variational_energy(d, n)?;
            table.push(vec![
                Cell::Int(n),
                Cell::Real(d),
                Cell::Real(oracle.eigenvalues[n]),
                Cell::Real(var.energy),
                Cell::Real(et.energy),
            ]);
            last_spec = Some(spec);
        }
    }
    Ok((
        table,
        Metadata {
            command: "sweep-d",
            model: Some(args.model.model.clone()),
            parameters: args.model.parameters(),
            levels: Some((levels.lo, levels.hi)),
            grid: last_spec.map(|g| GridMetadata {
                n_points: g.n_points,
                x_max: g.x_max,
            }),
            solver_tol: DEFAULT_TOL,
        },
    ))
}

/// Analytic bracket table for the exactly solvable half-line trio.
pub fn cmd_compare(args: &CompareArgs) -> Result<(Table, Metadata)> {
    if args.model.model != "hulthen" {
        return Err(Error::UnsupportedModel {
            label: args.model.model.clone(),
            reason: "analytic bracketing spectra are registered for the hulthen model".into(),
        });
    }
    let model = args.model.build()?;
    let params = args.model.parameters();
    let (k, a) = (params["k"], params["a"]);
    let levels = args.levels;
    let spec = args.grid.resolve(&model, levels.hi + 1)?;
    let oracle = fgh_solve(&model, &spec, levels.hi + 1)?;

    let mut table = Table::new(vec!["n", "e_lower", "e_exact", "e_fgh", "e_upper"]);
    for n in levels.iter() {
        let bracket = hulthen_bracket(n, k, a)?;
        table.push(vec![
            Cell::Int(n),
            Cell::Real(bracket.lower),
            Cell::Real(bracket.exact),
            Cell::Real(oracle.eigenvalues[n]),
            Cell::Real(bracket.upper),
        ]);
    }
    Ok((
        table,
        metadata_for("compare", &args.model, Some(levels), Some(&spec)),
    ))
}

/// Grid-refinement ladder table.
pub fn cmd_convergence(args: &ConvergenceArgs) -> Result<(Table, Metadata)> {
    let model = args.model.build()?;
    let levels = args.levels;
    if levels.lo != 0 {
        return Err(Error::Usage(
            "convergence levels must start at 0 (deltas track every level below)".into(),
        ));
    }
    // The ladder quadruples the point count; default to a quarter of the
    // usual density so the final rung lands on the standard grid.
    let default = GridSpec::default_for(&model, levels.hi + 1)?;
    let base = GridSpec::new(
        args.grid
            .grid_points
            .unwrap_or((default.n_points - 1) / 4 + 1),
        args.grid.grid_xmax.unwrap_or(default.x_max / 4.0),
        model.domain(),
    )?;
    let sweep = convergence_sweep(&model, &base, levels.hi + 1)?;

    let mut table = Table::new(vec!["refinement", "n_points", "x_max", "n", "e_fgh", "delta"]);
    for (r, step) in sweep.steps.iter().enumerate() {
        for n in levels.iter() {
            table.push(vec![
                Cell::Int(r),
                Cell::Int(step.spec.n_points),
                Cell::Real(step.spec.x_max),
                Cell::Int(n),
                Cell::Real(step.eigenvalues[n]),
                Cell::OptReal(step.deltas.as_ref().map(|d| d[n])),
            ]);
        }
    }
    Ok((
        table,
        metadata_for("convergence", &args.model, Some(levels), Some(&base)),
    ))
}

/// Canonical single-line rendering of a clap usage failure.
pub fn usage_line(err: &clap::Error) -> String {
    let text = err.to_string();
    let mut line = String::new();
    for l in text.lines() {
        if !l.trim().is_empty() {
            write!(line, "{}", l.trim()).ok();
            break;
        }
    }
    line
}
