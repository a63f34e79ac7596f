//! Figure datasets: `(τ, β)` grids of closed-form quantities and `τ` time
//! series of occupations, probabilities and rate-equation populations.
//!
//! # CSV grid layout
//!
//! ```text
//! # quantity=prob_AB tau_points=201 beta_points=129
//! tau,beta,value
//! 0.0000000000000000e0,2.5000000000000000e-1,0.0000000000000000e0
//! ...
//! ```
//!
//! Rows run over `τ` (outer) and `β` (inner). Numbers carry 17 significant
//! digits so that parsing them back reproduces the same `f64`.
//!
//! # JSON grid layout
//!
//! `{"spec": GridSpec, "quantity": "<name>", "values": [[...], ...]}` where
//! `values[i][j]` belongs to the i-th `τ` node and j-th `β` node.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{self, closed_form, oracle, SiteState};
use crate::error::{Error, Result};
use crate::model::{ModelParams, Site};
use crate::semiclassical::{self, RatePopulations};

/// `{:.16e}`: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BetaScale {
    Linear,
    Log,
}

impl FromStr for BetaScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(BetaScale::Linear),
            "log" => Ok(BetaScale::Log),
            other => Err(Error::Config(format!("unknown beta scale '{other}' (expected linear|log)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub tau_min: f64,
    pub tau_max: f64,
    pub tau_points: usize,
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_points: usize,
    pub beta_scale: BetaScale,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            tau_min: 0.0,
            tau_max: 2.0 * std::f64::consts::PI,
            tau_points: 201,
            beta_min: 0.25,
            beta_max: 4.0,
            beta_points: 129,
            beta_scale: BetaScale::Log,
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let d = (hi - lo) / (n - 1) as f64;
    (0..n).map(|k| if k + 1 == n { hi } else { lo + k as f64 * d }).collect()
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.tau_min, self.tau_max, self.beta_min, self.beta_max].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::Config("grid bounds must be finite".into()));
        }
        if self.tau_min >= self.tau_max || self.beta_min >= self.beta_max {
            return Err(Error::Config("grid minima must be below maxima".into()));
        }
        if self.tau_points < 2 || self.beta_points < 2 {
            return Err(Error::Config("grids need at least two points per axis".into()));
        }
        if self.beta_min <= 0.0 {
            return Err(Error::Domain(format!("beta_min = {} must be strictly positive", self.beta_min)));
        }
        Ok(())
    }

    pub fn tau_nodes(&self) -> Vec<f64> {
        linspace(self.tau_min, self.tau_max, self.tau_points)
    }

    pub fn beta_nodes(&self) -> Vec<f64> {
        match self.beta_scale {
            BetaScale::Linear => linspace(self.beta_min, self.beta_max, self.beta_points),
            BetaScale::Log => {
                let mut nodes: Vec<f64> = linspace(self.beta_min.ln(), self.beta_max.ln(), self.beta_points)
                    .into_iter()
                    .map(f64::exp)
                    .collect();
                nodes[0] = self.beta_min;
                *nodes.last_mut().unwrap() = self.beta_max;
                nodes
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "prob_AB")]
    ProbAB,
    #[serde(rename = "prob_BA")]
    ProbBA,
    #[serde(rename = "ratio")]
    Ratio,
    #[serde(rename = "norm_A")]
    NormA,
    #[serde(rename = "norm_B")]
    NormB,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [Quantity::ProbAB, Quantity::ProbBA, Quantity::Ratio, Quantity::NormA, Quantity::NormB];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::ProbAB => "prob_AB",
            Quantity::ProbBA => "prob_BA",
            Quantity::Ratio => "ratio",
            Quantity::NormA => "norm_A",
            Quantity::NormB => "norm_B",
        }
    }

    fn eval(self, params: &ModelParams, t: f64) -> f64 {
        match self {
            Quantity::ProbAB => closed_form::prob_ab(params, t),
            Quantity::ProbBA => closed_form::prob_ba(params, t),
            Quantity::Ratio => closed_form::ratio(params, t),
            Quantity::NormA => closed_form::norm_a(params, t),
            Quantity::NormB => closed_form::norm_b(params, t),
        }
    }

    fn admissible(self, v: f64) -> bool {
        v.is_finite()
            && match self {
                Quantity::ProbAB | Quantity::ProbBA => (0.0..=1.0).contains(&v),
                Quantity::Ratio | Quantity::NormA | Quantity::NormB => v > 0.0,
            }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown quantity '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub spec: GridSpec,
    pub quantity: Quantity,
    /// `values[i][j]` at `(tau_nodes[i], beta_nodes[j])`.
    pub values: Vec<Vec<f64>>,
}

/// Evaluates `quantity` on every `(τ, β)` node with `g = 1`, so `t = τ`.
pub fn grid(spec: &GridSpec, quantity: Quantity) -> Result<GridResult> {
    spec.validate()?;
    let params: Vec<ModelParams> =
        spec.beta_nodes().into_iter().map(|b| ModelParams::from_beta(1.0, b)).collect::<Result<_>>()?;
    let values: Vec<Vec<f64>> = spec
        .tau_nodes()
        .par_iter()
        .map(|&tau| params.iter().map(|p| quantity.eval(p, p.time_from_tau(tau))).collect())
        .collect();
    for (i, row) in values.iter().enumerate() {
        if let Some(j) = row.iter().position(|&v| !quantity.admissible(v)) {
            return Err(Error::Domain(format!(
                "{} out of range at node ({i}, {j}): {}",
                quantity.name(),
                row[j]
            )));
        }
    }
    Ok(GridResult { spec: *spec, quantity, values })
}

impl GridResult {
    pub fn to_csv(&self) -> String {
        let taus = self.spec.tau_nodes();
        let betas = self.spec.beta_nodes();
        let mut out = format!(
            "# quantity={} tau_points={} beta_points={}\ntau,beta,value\n",
            self.quantity.name(),
            self.spec.tau_points,
            self.spec.beta_points
        );
        for (tau, row) in taus.iter().zip(&self.values) {
            for (beta, v) in betas.iter().zip(row) {
                let _ = writeln!(out, "{},{},{}", fmt_f64(*tau), fmt_f64(*beta), fmt_f64(*v));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("grid serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("invalid grid JSON: {e}")))
    }
}

/// A grid read back from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct GridTable {
    pub quantity: Quantity,
    pub tau: Vec<f64>,
    pub beta: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

pub fn parse_grid_csv(text: &str) -> Result<GridTable> {
    let bad = |msg: &str| Error::Config(format!("invalid grid CSV: {msg}"));
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty input"))?;
    let meta = header.strip_prefix("# ").ok_or_else(|| bad("missing header"))?;
    let mut quantity = None;
    let mut tau_points = None;
    let mut beta_points = None;
    for kv in meta.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| bad("malformed header field"))?;
        match k {
            "quantity" => quantity = Some(v.parse::<Quantity>()?),
            "tau_points" => tau_points = v.parse::<usize>().ok(),
            "beta_points" => beta_points = v.parse::<usize>().ok(),
            _ => return Err(bad("unknown header field")),
        }
    }
    let (quantity, n, m) = match (quantity, tau_points, beta_points) {
        (Some(q), Some(n), Some(m)) => (q, n, m),
        _ => return Err(bad("incomplete header")),
    };
    if lines.next() != Some("tau,beta,value") {
        return Err(bad("missing column line"));
    }
    let mut tau = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(m);
    let mut values = vec![Vec::with_capacity(m); n];
    let mut count = 0usize;
    for line in lines {
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.parse::<f64>().map_err(|_| bad("unparsable number")))
            .collect::<Result<_>>()?;
        if fields.len() != 3 {
            return Err(bad("expected three columns"));
        }
        let (i, j) = (count / m, count % m);
        if i >= n {
            return Err(bad("more rows than announced"));
        }
        if j == 0 {
            tau.push(fields[0]);
        }
        if i == 0 {
            beta.push(fields[1]);
        }
        values[i].push(fields[2]);
        count += 1;
    }
    if count != n * m {
        return Err(bad("fewer rows than announced"));
    }
    Ok(GridTable { quantity, tau, beta, values })
}

/// Columns available in a time series; all quantum columns start from an
/// excitation on the named site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    /// `{N_A}_A`
    OccupationA,
    /// `{N_B}_A`
    OccupationB,
    ProbAB,
    ProbAA,
    ProbBA,
    ProbBB,
    Ratio,
    NormA,
    NormB,
    /// Rate-equation populations.
    RateA,
    RateB,
    OracleOccupationA,
    OracleOccupationB,
    OracleProbAB,
    OracleProbBA,
    OracleNormA,
    OracleNormB,
}

impl Column {
    pub const QUANTUM: [Column; 9] = [
        Column::OccupationA,
        Column::OccupationB,
        Column::ProbAB,
        Column::ProbAA,
        Column::ProbBA,
        Column::ProbBB,
        Column::Ratio,
        Column::NormA,
        Column::NormB,
    ];

    pub const ORACLE: [Column; 6] = [
        Column::OracleOccupationA,
        Column::OracleOccupationB,
        Column::OracleProbAB,
        Column::OracleProbBA,
        Column::OracleNormA,
        Column::OracleNormB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::OccupationA => "N_A",
            Column::OccupationB => "N_B",
            Column::ProbAB => "P_AB",
            Column::ProbAA => "P_AA",
            Column::ProbBA => "P_BA",
            Column::ProbBB => "P_BB",
            Column::Ratio => "ratio",
            Column::NormA => "norm_A",
            Column::NormB => "norm_B",
            Column::RateA => "n_A",
            Column::RateB => "n_B",
            Column::OracleOccupationA => "oracle_N_A",
            Column::OracleOccupationB => "oracle_N_B",
            Column::OracleProbAB => "oracle_P_AB",
            Column::OracleProbBA => "oracle_P_BA",
            Column::OracleNormA => "oracle_norm_A",
            Column::OracleNormB => "oracle_norm_B",
        }
    }

    /// The closed-form column an oracle column checks.
    pub fn oracle_of(self) -> Option<Column> {
        match self {
            Column::OracleOccupationA => Some(Column::OccupationA),
            Column::OracleOccupationB => Some(Column::OccupationB),
            Column::OracleProbAB => Some(Column::ProbAB),
            Column::OracleProbBA => Some(Column::ProbBA),
            Column::OracleNormA => Some(Column::NormA),
            Column::OracleNormB => Some(Column::NormB),
            _ => None,
        }
    }

    fn quantum_value(self, params: &ModelParams, t: f64) -> Result<f64> {
        let a = SiteState::localized(Site::A);
        let b = SiteState::localized(Site::B);
        let norm = |s: &SiteState| -> Result<f64> {
            let sys = crate::spectral::eigensystem_analytic(params);
            let st = dynamics::evolve(&dynamics::decompose(s, &sys)?, params, t);
            Ok(dynamics::norm_factor(&st)?.re)
        };
        match self {
            Column::OccupationA => dynamics::occupation(&a, Site::A, params, t),
            Column::OccupationB => dynamics::occupation(&a, Site::B, params, t),
            Column::ProbAB => dynamics::probability(&a, &b, params, t, true),
            Column::ProbAA => dynamics::probability(&a, &a, params, t, true),
            Column::ProbBA => dynamics::probability(&b, &a, params, t, true),
            Column::ProbBB => dynamics::probability(&b, &b, params, t, true),
            Column::Ratio => Ok(dynamics::probability_ratio(params, t)),
            Column::NormA => norm(&a),
            Column::NormB => norm(&b),
            Column::OracleOccupationA => oracle::numeric_occupation(params, &a, Site::A, t),
            Column::OracleOccupationB => oracle::numeric_occupation(params, &a, Site::B, t),
            Column::OracleProbAB => oracle::numeric_probability(params, &a, &b, t, true),
            Column::OracleProbBA => oracle::numeric_probability(params, &b, &a, t, true),
            Column::OracleNormA => oracle::numeric_norm_factor(params, &a, t),
            Column::OracleNormB => oracle::numeric_norm_factor(params, &b, t),
            Column::RateA | Column::RateB => unreachable!("rate columns come from the integrator"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeseriesSpec {
    pub tau_max: f64,
    pub tau_points: usize,
    /// Upper bound on the rate-equation step; the actual step divides the
    /// node spacing evenly.
    pub max_rate_step: f64,
    pub initial: RatePopulations,
}

impl Default for TimeseriesSpec {
    fn default() -> Self {
        Self {
            tau_max: 20.0,
            tau_points: 401,
            max_rate_step: semiclassical::DEFAULT_STEP,
            initial: RatePopulations::on_site_a(),
        }
    }
}

impl TimeseriesSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau_max.is_finite() && self.tau_max > 0.0) {
            return Err(Error::Config(format!("tau_max = {} must be positive", self.tau_max)));
        }
        if self.tau_points < 2 {
            return Err(Error::Config("time series needs at least two points".into()));
        }
        if !(self.max_rate_step.is_finite() && self.max_rate_step > 0.0) {
            return Err(Error::Config("step must be positive".into()));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        self.tau_max / (self.tau_points - 1) as f64
    }

    /// Integrator steps per node interval.
    pub fn substeps(&self) -> usize {
        (self.spacing() / self.max_rate_step - 1e-9).ceil().max(1.0) as usize
    }

    pub fn rate_step(&self) -> f64 {
        self.spacing() / self.substeps() as f64
    }

    pub fn tau_nodes(&self) -> Vec<f64> {
        linspace(0.0, self.tau_max, self.tau_points)
    }
}

/// Column-labelled numeric table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Header line plus rows; `comments` are emitted first as `# ` lines.
    pub fn to_csv(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(","));
        }
        out
    }
}

/// Time series over `τ ∈ [0, tau_max]`. The first column is always `tau`.
pub fn timeseries(params: &ModelParams, spec: &TimeseriesSpec, columns: &[Column]) -> Result<Table> {
    spec.validate()?;
    let taus = spec.tau_nodes();
    let wants_rates = columns.iter().any(|c| matches!(c, Column::RateA | Column::RateB));
    let rates = if wants_rates {
        let traj = semiclassical::integrate(&spec.initial, params, spec.tau_max, spec.rate_step())?;
        let k = spec.substeps();
        Some((0..taus.len()).map(|j| traj.samples[j * k]).collect::<Vec<_>>())
    } else {
        None
    };

    let rows = taus
        .par_iter()
        .enumerate()
        .map(|(j, &tau)| {
            let t = params.time_from_tau(tau);
            let mut row = Vec::with_capacity(columns.len() + 1);
            row.push(tau);
            for &c in columns {
                row.push(match c {
                    Column::RateA => rates.as_ref().unwrap()[j].n_a,
                    Column::RateB => rates.as_ref().unwrap()[j].n_b,
                    other => other.quantum_value(params, t)?,
                });
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut names = vec!["tau".to_string()];
    names.extend(columns.iter().map(|c| c.name().to_string()));
    Ok(Table { columns: names, rows })
}

/// Largest `|oracle - closed form|` over every oracle column present.
pub fn max_oracle_deviation(table: &Table) -> Option<f64> {
    let mut worst: Option<f64> = None;
    for c in Column::ORACLE {
        let (Some(o), Some(base)) = (table.column(c.name()), c.oracle_of().and_then(|b| table.column(b.name()))) else {
            continue;
        };
        let d = o.iter().zip(&base).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        worst = Some(worst.map_or(d, |w| w.max(d)));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn default_spec_nodes() {
        let spec = GridSpec::default();
        spec.validate().unwrap();
        let b = spec.beta_nodes();
        assert_eq!(b.len(), 129);
        assert_eq!((b[0], b[128]), (0.25, 4.0));
        assert!((b[64] - 1.0).abs() < 1e-15);
        for j in 0..129 {
            assert!((b[j] * b[128 - j] - 1.0).abs() < 1e-14);
        }
        let t = spec.tau_nodes();
        assert_eq!((t[0], t[200]), (0.0, 2.0 * std::f64::consts::PI));
    }

    #[test]
    fn spec_validation() {
        let base = GridSpec::default();
        for bad in [
            GridSpec { tau_max: -1.0, ..base },
            GridSpec { tau_points: 1, ..base },
            GridSpec { beta_min: 0.0, ..base },
            GridSpec { beta_min: 5.0, ..base },
            GridSpec { beta_max: f64::NAN, ..base },
        ] {
            assert!(grid(&bad, Quantity::ProbAB).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn symmetric_row_is_rabi() {
        let spec = GridSpec { beta_points: 3, beta_min: 0.5, beta_max: 2.0, ..GridSpec::default() };
        let res = grid(&spec, Quantity::ProbAB).unwrap();
        for (tau, row) in spec.tau_nodes().iter().zip(&res.values) {
            assert!((row[1] - tau.sin().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn beta_four_node() {
        // ω = 0.8 at β = 4; ωτ = π/4 lands on the grid's upper τ node
        let tau = FRAC_PI_4 / 0.8;
        let spec = GridSpec { tau_min: 0.0, tau_max: tau, tau_points: 2, beta_min: 0.25, beta_max: 4.0, beta_points: 2, beta_scale: BetaScale::Log };
        let p = grid(&spec, Quantity::ProbAB).unwrap();
        let r = grid(&spec, Quantity::Ratio).unwrap();
        assert!((p.values[1][1] - 0.8).abs() < 1e-12);
        assert!((r.values[1][1] - 4.0).abs() < 1e-12);
        for (j, beta) in spec.beta_nodes().iter().enumerate() {
            assert!((r.values[0][j] - beta * beta).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_layout_and_roundtrip() {
        let spec = GridSpec { tau_points: 4, beta_points: 3, ..GridSpec::default() };
        let res = grid(&spec, Quantity::NormB).unwrap();
        let csv = res.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# quantity=norm_B tau_points=4 beta_points=3"));
        assert_eq!(lines.next(), Some("tau,beta,value"));
        assert_eq!(lines.count(), 12);
        assert!(!csv.contains('\r'));
        let table = parse_grid_csv(&csv).unwrap();
        assert_eq!(table.quantity, Quantity::NormB);
        assert_eq!(table.values, res.values);
        assert_eq!(table.tau, spec.tau_nodes());
        assert_eq!(table.beta, spec.beta_nodes());
    }

    #[test]
    fn csv_parser_rejects_garbage() {
        assert!(parse_grid_csv("").is_err());
        assert!(parse_grid_csv("# quantity=prob_AB tau_points=1 beta_points=1\ntau,beta,value\n1,2\n").is_err());
        assert!(parse_grid_csv("# quantity=nope tau_points=1 beta_points=1\n").is_err());
        assert!(parse_grid_csv("# quantity=ratio tau_points=2 beta_points=1\ntau,beta,value\n0,1,1\n").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let spec = GridSpec { tau_points: 5, beta_points: 7, ..GridSpec::default() };
        let res = grid(&spec, Quantity::Ratio).unwrap();
        let back = GridResult::from_json(&res.to_json()).unwrap();
        assert_eq!(back, res);
        let v: serde_json::Value = serde_json::from_str(&res.to_json()).unwrap();
        assert_eq!(v["quantity"], "ratio");
        assert_eq!(v["spec"]["beta_scale"], "log");
        assert_eq!(v["values"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn timeseries_examples() {
        let p = ModelParams::from_beta(1.0, 4.0).unwrap();
        let spec = TimeseriesSpec { tau_max: 10.0, tau_points: 101, ..TimeseriesSpec::default() };
        let cols = [Column::OccupationA, Column::OccupationB, Column::RateA, Column::RateB];
        let table = timeseries(&p, &spec, &cols).unwrap();
        assert_eq!(table.columns, ["tau", "N_A", "N_B", "n_A", "n_B"]);
        assert_eq!(table.rows[0][1], 1.0);
        for row in &table.rows {
            assert!((row[1] + row[2] - 1.0).abs() < 1e-12);
        }
        let traj = semiclassical::integrate(&spec.initial, &p, spec.tau_max, spec.rate_step()).unwrap();
        let k = spec.substeps();
        assert_eq!(k, 20);
        for (j, row) in table.rows.iter().enumerate() {
            assert_eq!(row[3], traj.samples[j * k].n_a);
            assert_eq!(row[4], traj.samples[j * k].n_b);
        }
    }

    #[test]
    fn timeseries_oracle_columns() {
        let p = ModelParams::from_beta(2.0, 0.5).unwrap();
        let spec = TimeseriesSpec { tau_max: 6.0, tau_points: 31, ..TimeseriesSpec::default() };
        let mut cols = Column::QUANTUM.to_vec();
        cols.extend(Column::ORACLE);
        let table = timeseries(&p, &spec, &cols).unwrap();
        assert!(max_oracle_deviation(&table).unwrap() < 1e-10);
        let plain = timeseries(&p, &spec, &Column::QUANTUM).unwrap();
        assert_eq!(max_oracle_deviation(&plain), None);
    }
}
