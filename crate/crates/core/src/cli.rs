//! Command-line front end: `spectrum`, `evolve`, `grid` and `rates`.
//!
//! Settings come from built-in defaults, then an optional TOML config file
//! (`--config`), then flags; later sources win.
//!
//! ```toml
//! g = 1.0
//! beta = 4.0          # or alpha = 0.6, not both
//! format = "csv"
//! output = "grid.csv"
//!
//! [grid]
//! tau_max = 6.283185307179586
//! beta_points = 129
//! beta_scale = "log"
//! quantity = "prob_AB"
//!
//! [timeseries]
//! tau_max = 20.0
//! tau_points = 401
//! step = 0.005
//! oracle = true
//!
//! [rates]
//! tau_max = 50.0
//! step = 0.005
//! n_a = 1.0
//! n_b = 0.0
//! tau_from = 10.0
//! ```

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::model::{hamiltonian_2x2, ModelParams};
use crate::semiclassical::{self, RatePopulations};
use crate::spectral::{eigensystem_analytic, eigensystem_numeric, metric_operator};
use crate::sweep::{self, fmt_f64, BetaScale, Column, GridSpec, Quantity, Table, TimeseriesSpec};

/// Tolerance used when reporting the oracle comparison.
pub const ORACLE_TOLERANCE: f64 = 1e-10;

#[derive(Parser, Debug, Clone)]
#[command(name = "asymtunnel", version, about = "Non-reciprocal two-site tunneling: spectra, dynamics, figure data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Eigenvalues, biorthogonal eigenvectors, residuals and metric operator
    Spectrum(Options),
    /// Time series of occupations, probabilities, norms and rate populations
    Evolve(Options),
    /// (tau, beta) grid of a closed-form quantity
    Grid(Options),
    /// Semiclassical rate-equation trajectory with equilibrium statistics
    Rates(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// Coupling constant g (nonzero)
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Asymmetry alpha in (-1, 1)
    #[arg(long, allow_negative_numbers = true, conflicts_with = "beta")]
    pub alpha: Option<f64>,
    /// Asymmetry ratio beta = (1 + alpha) / (1 - alpha) > 0
    #[arg(long)]
    pub beta: Option<f64>,
    /// Upper end of the tau axis (grid, time series) or rate horizon
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[arg(long)]
    pub tau_points: Option<usize>,
    #[arg(long)]
    pub beta_min: Option<f64>,
    #[arg(long)]
    pub beta_max: Option<f64>,
    #[arg(long)]
    pub beta_points: Option<usize>,
    /// linear | log
    #[arg(long)]
    pub beta_scale: Option<String>,
    /// Grid quantity: prob_AB | prob_BA | ratio | norm_A | norm_B
    #[arg(long)]
    pub quantity: Option<String>,
    /// Rate-equation step in tau
    #[arg(long)]
    pub step: Option<f64>,
    /// Start of the equilibrium averaging window (rates)
    #[arg(long)]
    pub tau_from: Option<f64>,
    /// Initial population of site A (rates)
    #[arg(long)]
    pub n_a: Option<f64>,
    /// Initial population of site B (rates)
    #[arg(long)]
    pub n_b: Option<f64>,
    /// Output path, `-` for standard output
    #[arg(long)]
    pub output: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Add matrix-exponential oracle columns (evolve)
    #[arg(long)]
    pub oracle: bool,
    /// TOML configuration file
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub tau_points: Option<usize>,
    pub beta_min: Option<f64>,
    pub beta_max: Option<f64>,
    pub beta_points: Option<usize>,
    pub beta_scale: Option<String>,
    pub quantity: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeseriesSection {
    pub tau_max: Option<f64>,
    pub tau_points: Option<usize>,
    pub step: Option<f64>,
    pub oracle: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatesSection {
    pub tau_max: Option<f64>,
    pub step: Option<f64>,
    pub n_a: Option<f64>,
    pub n_b: Option<f64>,
    pub tau_from: Option<f64>,
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub g: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub output: Option<String>,
    pub format: Option<Format>,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub timeseries: TimeseriesSection,
    #[serde(default)]
    pub rates: RatesSection,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Settings after merging defaults, config file and flags.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: ModelParams,
    pub output: String,
    pub format: Format,
    pub grid: GridSpec,
    pub quantity: Quantity,
    pub timeseries: TimeseriesSpec,
    pub oracle: bool,
    pub rate_tau_end: f64,
    pub rate_step: f64,
    pub rate_initial: RatePopulations,
    pub tau_from: f64,
}

pub const DEFAULT_TAU_FROM: f64 = 10.0;

impl Resolved {
    pub fn new(opts: &Options) -> Result<Self> {
        let cfg = match &opts.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Self::merge(&cfg, opts)
    }

    pub fn merge(cfg: &RunConfig, opts: &Options) -> Result<Self> {
        if cfg.alpha.is_some() && cfg.beta.is_some() {
            return Err(Error::Config("config sets both alpha and beta".into()));
        }
        if opts.alpha.is_some() && opts.beta.is_some() {
            return Err(Error::Config("--alpha and --beta are mutually exclusive".into()));
        }
        let g = opts.g.or(cfg.g).unwrap_or(1.0);
        let params = match (opts.alpha, opts.beta, cfg.alpha, cfg.beta) {
            (Some(a), None, _, _) => ModelParams::new(g, a)?,
            (None, Some(b), _, _) => ModelParams::from_beta(g, b)?,
            (None, None, Some(a), _) => ModelParams::new(g, a)?,
            (None, None, None, Some(b)) => ModelParams::from_beta(g, b)?,
            _ => ModelParams::from_beta(g, 4.0)?,
        };

        let gs = &cfg.grid;
        let base = GridSpec::default();
        let scale = match opts.beta_scale.as_deref().or(gs.beta_scale.as_deref()) {
            Some(s) => s.parse::<BetaScale>()?,
            None => base.beta_scale,
        };
        let grid = GridSpec {
            tau_min: gs.tau_min.unwrap_or(base.tau_min),
            tau_max: opts.tau_max.or(gs.tau_max).unwrap_or(base.tau_max),
            tau_points: opts.tau_points.or(gs.tau_points).unwrap_or(base.tau_points),
            beta_min: opts.beta_min.or(gs.beta_min).unwrap_or(base.beta_min),
            beta_max: opts.beta_max.or(gs.beta_max).unwrap_or(base.beta_max),
            beta_points: opts.beta_points.or(gs.beta_points).unwrap_or(base.beta_points),
            beta_scale: scale,
        };
        let quantity = match opts.quantity.as_deref().or(gs.quantity.as_deref()) {
            Some(q) => q.parse()?,
            None => Quantity::ProbAB,
        };

        let ts = &cfg.timeseries;
        let tbase = TimeseriesSpec::default();
        let timeseries = TimeseriesSpec {
            tau_max: opts.tau_max.or(ts.tau_max).unwrap_or(tbase.tau_max),
            tau_points: opts.tau_points.or(ts.tau_points).unwrap_or(tbase.tau_points),
            max_rate_step: opts.step.or(ts.step).unwrap_or(tbase.max_rate_step),
            initial: tbase.initial,
        };

        let rs = &cfg.rates;
        let rate_initial = RatePopulations::new(
            opts.n_a.or(rs.n_a).unwrap_or(1.0),
            opts.n_b.or(rs.n_b).unwrap_or(0.0),
            0.0,
        )?;

        Ok(Self {
            params,
            output: opts.output.clone().or_else(|| cfg.output.clone()).unwrap_or_else(|| "-".into()),
            format: opts.format.or(cfg.format).unwrap_or(Format::Csv),
            grid,
            quantity,
            timeseries,
            oracle: opts.oracle || ts.oracle.unwrap_or(false),
            rate_tau_end: opts.tau_max.or(rs.tau_max).unwrap_or(semiclassical::DEFAULT_TAU_END),
            rate_step: opts.step.or(rs.step).unwrap_or(semiclassical::DEFAULT_STEP),
            rate_initial,
            tau_from: opts.tau_from.or(rs.tau_from).unwrap_or(DEFAULT_TAU_FROM),
        })
    }
}

/// What a command produced: the document for `--output` and summary lines
/// for the terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: String,
    pub summary: Vec<String>,
}

fn params_json(p: &ModelParams) -> serde_json::Value {
    json!({ "g": p.g(), "alpha": p.alpha(), "beta": p.beta(), "omega": p.omega() })
}

fn params_line(p: &ModelParams) -> String {
    format!("g={} alpha={} beta={} omega={}", fmt_f64(p.g()), fmt_f64(p.alpha()), fmt_f64(p.beta()), fmt_f64(p.omega()))
}

fn cjson(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &ComplexMatrix) -> serde_json::Value {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&z| cjson(z)).collect::<Vec<_>>()).collect()
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

pub fn cmd_spectrum(cfg: &Resolved) -> Result<Outcome> {
    let p = &cfg.params;
    let h = hamiltonian_2x2(p);
    let sys = eigensystem_analytic(p);
    let eta = metric_operator(&sys);
    let numeric = eigensystem_numeric(&h)?;
    let numeric_dev = sys
        .eigenvalues
        .iter()
        .zip(&numeric.eigenvalues)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let biorth = sys.biorthogonality_residual();
    let complete = sys.completeness_residual();
    let pseudo = eta.pseudo_hermiticity_residual(&h);
    let hermitian = p.alpha() == 0.0;

    let summary = vec![
        format!("eigenvalues: +{} / -{}", p.omega(), p.omega()),
        format!("metric operator: diag({}, {})", eta.matrix[(0, 0)].re, eta.matrix[(1, 1)].re),
        format!("biorthogonality residual: {biorth:.3e}"),
        format!("completeness residual: {complete:.3e}"),
        format!("numeric eigenvalue deviation: {numeric_dev:.3e}"),
    ];

    let document = match cfg.format {
        Format::Json => pretty(&json!({
            "params": params_json(p),
            "hermitian": hermitian,
            "eigenvalues": sys.eigenvalues.iter().map(|&z| cjson(z)).collect::<Vec<_>>(),
            "right_vectors": sys.right_vectors.iter().map(|v| v.iter().map(|&z| cjson(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "left_vectors": sys.left_vectors.iter().map(|v| v.iter().map(|&z| cjson(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "metric": matrix_json(&eta.matrix),
            "biorthogonality_residual": biorth,
            "completeness_residual": complete,
            "pseudo_hermiticity_residual": pseudo,
            "numeric_eigenvalues": numeric.eigenvalues.iter().map(|&z| cjson(z)).collect::<Vec<_>>(),
            "numeric_eigenvalue_deviation": numeric_dev,
        })),
        Format::Csv => {
            let mut out = format!("# spectrum {}\nkind,index,component,re,im\n", params_line(p));
            let mut push = |kind: &str, i: usize, k: usize, z: Complex64| {
                out.push_str(&format!("{kind},{i},{k},{},{}\n", fmt_f64(z.re), fmt_f64(z.im)));
            };
            for (i, &e) in sys.eigenvalues.iter().enumerate() {
                push("eigenvalue", i, 0, e);
            }
            for (i, v) in sys.right_vectors.iter().enumerate() {
                v.iter().enumerate().for_each(|(k, &z)| push("right", i, k, z));
            }
            for (i, v) in sys.left_vectors.iter().enumerate() {
                v.iter().enumerate().for_each(|(k, &z)| push("left", i, k, z));
            }
            for r in 0..2 {
                for c in 0..2 {
                    push("metric", r, c, eta.matrix[(r, c)]);
                }
            }
            for (i, &e) in numeric.eigenvalues.iter().enumerate() {
                push("numeric_eigenvalue", i, 0, e);
            }
            out.push_str(&format!("# biorthogonality_residual={}\n", fmt_f64(biorth)));
            out.push_str(&format!("# completeness_residual={}\n", fmt_f64(complete)));
            out.push_str(&format!("# pseudo_hermiticity_residual={}\n", fmt_f64(pseudo)));
            out.push_str(&format!("# numeric_eigenvalue_deviation={}\n", fmt_f64(numeric_dev)));
            if hermitian {
                out.push_str("# hermitian=true (left vectors are the adjoints of the right vectors)\n");
            }
            out
        }
    };
    Ok(Outcome { document, summary })
}

fn max_dev(table: &Table, cols: &[&str], target: f64) -> f64 {
    let series: Vec<Vec<f64>> = cols.iter().map(|c| table.column(c).expect("column present")).collect();
    (0..table.rows.len())
        .map(|i| (series.iter().map(|s| s[i]).sum::<f64>() - target).abs())
        .fold(0.0, f64::max)
}

pub fn cmd_evolve(cfg: &Resolved) -> Result<Outcome> {
    let p = &cfg.params;
    let mut spec = cfg.timeseries;
    spec.initial = RatePopulations::on_site_a();
    let mut columns = Column::QUANTUM.to_vec();
    columns.extend([Column::RateA, Column::RateB]);
    if cfg.oracle {
        columns.extend(Column::ORACLE);
    }
    let table = sweep::timeseries(p, &spec, &columns)?;

    let mut summary = vec![
        format!("max |P_AA + P_AB - 1| = {:.3e}", max_dev(&table, &["P_AA", "P_AB"], 1.0)),
        format!("max |P_BA + P_BB - 1| = {:.3e}", max_dev(&table, &["P_BA", "P_BB"], 1.0)),
        format!("max |N_A + N_B - 1| = {:.3e}", max_dev(&table, &["N_A", "N_B"], 1.0)),
        format!("max |n_A + n_B - n(0)| = {:.3e}", max_dev(&table, &["n_A", "n_B"], spec.initial.total())),
    ];
    let oracle_dev = sweep::max_oracle_deviation(&table);
    if let Some(d) = oracle_dev {
        let verdict = if d < ORACLE_TOLERANCE { "ok" } else { "EXCEEDED" };
        summary.push(format!("oracle max deviation = {d:.3e} (tolerance {ORACLE_TOLERANCE:e}: {verdict})"));
    }

    let document = match cfg.format {
        Format::Csv => {
            let mut comments = vec![format!("timeseries {} rate_step={}", params_line(p), fmt_f64(spec.rate_step()))];
            if let Some(d) = oracle_dev {
                comments.push(format!("oracle_max_deviation={}", fmt_f64(d)));
            }
            table.to_csv(&comments)
        }
        Format::Json => pretty(&json!({
            "params": params_json(p),
            "rate_step": spec.rate_step(),
            "columns": table.columns,
            "rows": table.rows,
            "oracle_max_deviation": oracle_dev,
        })),
    };
    Ok(Outcome { document, summary })
}

pub fn cmd_grid(cfg: &Resolved) -> Result<Outcome> {
    let res = sweep::grid(&cfg.grid, cfg.quantity)?;
    let document = match cfg.format {
        Format::Csv => res.to_csv(),
        Format::Json => res.to_json(),
    };
    let summary = vec![format!(
        "{} on {}x{} (tau, beta) nodes",
        cfg.quantity.name(),
        cfg.grid.tau_points,
        cfg.grid.beta_points
    )];
    Ok(Outcome { document, summary })
}

pub fn cmd_rates(cfg: &Resolved) -> Result<Outcome> {
    let p = &cfg.params;
    let traj = semiclassical::integrate(&cfg.rate_initial, p, cfg.rate_tau_end, cfg.rate_step)?;
    let stats = semiclassical::equilibrium_stats(&traj, cfg.tau_from)?;
    let total = cfg.rate_initial.total();
    let drift = traj.samples.iter().map(|s| (s.total() - total).abs()).fold(0.0, f64::max);
    let summary = vec![
        format!("mean n_A = {:.6}, mean n_B = {:.6} over tau >= {}", stats.mean_n_a, stats.mean_n_b, cfg.tau_from),
        format!("n_A peak-to-peak amplitude = {:.6}", stats.amplitude_n_a),
        format!("max conservation drift = {drift:.3e}"),
    ];
    let document = match cfg.format {
        Format::Csv => {
            let table = Table {
                columns: vec!["tau".into(), "n_A".into(), "n_B".into()],
                rows: traj.samples.iter().map(|s| vec![s.tau, s.n_a, s.n_b]).collect(),
            };
            let mut out = table.to_csv(&[format!("rates {} step={}", params_line(p), fmt_f64(traj.step))]);
            out.push_str(&format!(
                "# tau_from={} mean_nA={} mean_nB={} amplitude_nA={}\n",
                fmt_f64(cfg.tau_from),
                fmt_f64(stats.mean_n_a),
                fmt_f64(stats.mean_n_b),
                fmt_f64(stats.amplitude_n_a)
            ));
            out
        }
        Format::Json => pretty(&json!({
            "params": params_json(p),
            "step": traj.step,
            "columns": ["tau", "n_A", "n_B"],
            "rows": traj.samples.iter().map(|s| [s.tau, s.n_a, s.n_b]).collect::<Vec<_>>(),
            "equilibrium": {
                "tau_from": cfg.tau_from,
                "mean_nA": stats.mean_n_a,
                "mean_nB": stats.mean_n_b,
                "amplitude_nA": stats.amplitude_n_a,
            },
        })),
    };
    Ok(Outcome { document, summary })
}

/// Resolves settings and runs the command without touching the filesystem
/// beyond reading `--config`.
pub fn run(command: &Command) -> Result<(Resolved, Outcome)> {
    let (opts, f): (&Options, fn(&Resolved) -> Result<Outcome>) = match command {
        Command::Spectrum(o) => (o, cmd_spectrum),
        Command::Evolve(o) => (o, cmd_evolve),
        Command::Grid(o) => (o, cmd_grid),
        Command::Rates(o) => (o, cmd_rates),
    };
    let resolved = Resolved::new(opts)?;
    let outcome = f(&resolved)?;
    Ok((resolved, outcome))
}

/// Runs the command and writes its document; returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    match run(&cli.command).and_then(|(resolved, outcome)| emit(&resolved, &outcome)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(resolved: &Resolved, outcome: &Outcome) -> Result<()> {
    if resolved.output == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(outcome.document.as_bytes())?;
        stdout.flush()?;
        for line in &outcome.summary {
            eprintln!("{line}");
        }
    } else {
        std::fs::write(&resolved.output, &outcome.document)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", resolved.output)))?;
        for line in &outcome.summary {
            println!("{line}");
        }
    }
    Ok(())
}
