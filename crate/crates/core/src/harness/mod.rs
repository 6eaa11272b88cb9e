// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded sampling of entangled Gaussian resources and batch generation of
//! the data tables behind every scatter and trajectory plot.
//!
//! Every sample is drawn from its own ChaCha8 stream keyed by `(seed,
//! index)`, so tables are byte-identical whatever the thread count.

mod verify;

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::atlas::{
    gmemms_image_boundary, mems_boundary, nmax_vs_field_negativity, qlems_negativity,
    qmems_negativity, qubit_entropy_max, qubit_entropy_min,
};
use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::gaussian::{
    from_entropic_params, gaussian_entropies, gaussian_negativity, validate_cm, EntropicParams,
    StandardFormCM, EIGEN_TOL,
};
use crate::interface::{
    evolve, mapped_global_entropy, mapped_marginal_entropy, mapped_negativity, steady_state,
};
use crate::par::{map_indexed, Execution};
use crate::qubit::{linear_entropy, linear_entropy_single, marginals, negativity, TwoQubitState};

pub use verify::{verify_suite, verify_suite_with, CheckResult, VerifyOptions, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    #[serde(rename = "fig1a_entropy_scatter")]
    Fig1aEntropyScatter,
    #[serde(rename = "fig1b_negativity_scatter")]
    Fig1bNegativityScatter,
    #[serde(rename = "fig2a_mems_plane")]
    Fig2aMemsPlane,
    #[serde(rename = "fig2bc_entropy_surfaces")]
    Fig2bcEntropySurfaces,
    #[serde(rename = "figS4_marginal_pyramid")]
    FigS4MarginalPyramid,
    #[serde(rename = "trajS1_S3")]
    TrajS1S3,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::Fig1aEntropyScatter,
        ExperimentKind::Fig1bNegativityScatter,
        ExperimentKind::Fig2aMemsPlane,
        ExperimentKind::Fig2bcEntropySurfaces,
        ExperimentKind::FigS4MarginalPyramid,
        ExperimentKind::TrajS1S3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Fig1aEntropyScatter => "fig1a_entropy_scatter",
            ExperimentKind::Fig1bNegativityScatter => "fig1b_negativity_scatter",
            ExperimentKind::Fig2aMemsPlane => "fig2a_mems_plane",
            ExperimentKind::Fig2bcEntropySurfaces => "fig2bc_entropy_surfaces",
            ExperimentKind::FigS4MarginalPyramid => "figS4_marginal_pyramid",
            ExperimentKind::TrajS1S3 => "trajS1_S3",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment kind '{s}'")))
    }
}

pub const DEFAULT_S_MAX: f64 = 10.0;
pub const DEFAULT_WERNER_FRACTION: f64 = 0.25;
/// Smallest `s` of the near-Werner augmentation.
pub const WERNER_S_MIN: f64 = 5.0;
/// Upper end of `g` for near-Werner draws; Werner weight `2/(1+g^2)` then
/// runs from 1 down to 0.2.
pub const WERNER_G_MAX: f64 = 3.0;

/// Constraints on the sampled region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingConstraints {
    pub s_max: f64,
    pub symmetric_only: bool,
    /// Fraction of draws replaced by near-Werner-limit resources
    /// (`d = 0`, `lambda = -1`, large `s`).
    pub werner_fraction: f64,
}

impl Default for SamplingConstraints {
    fn default() -> Self {
        SamplingConstraints {
            s_max: DEFAULT_S_MAX,
            symmetric_only: false,
            werner_fraction: 0.0,
        }
    }
}

impl SamplingConstraints {
    pub fn validate(&self) -> Result<()> {
        if !(self.s_max > 1.0) || !self.s_max.is_finite() {
            return Err(Error::Config(format!("s_max = {} must exceed 1", self.s_max)));
        }
        if !(0.0..=1.0).contains(&self.werner_fraction) {
            return Err(Error::Config(format!(
                "werner_fraction = {} outside [0, 1]",
                self.werner_fraction
            )));
        }
        if self.werner_fraction > 0.0 && self.s_max < WERNER_S_MIN {
            return Err(Error::Config(format!(
                "near-Werner draws need s_max >= {WERNER_S_MIN}, got {}",
                self.s_max
            )));
        }
        Ok(())
    }
}

/// Draws a point of the entangled region: `s ~ U[1, s_max]`,
/// `d ~ U[-(s-1), s-1]`, `g ~ U[2|d|+1, 2s-1]`, `lambda ~ U[-1, 1]`.
pub fn sample_params<R: Rng + ?Sized>(rng: &mut R, c: &SamplingConstraints) -> EntropicParams {
    if c.werner_fraction > 0.0 && rng.random::<f64>() < c.werner_fraction {
        let s = rng.random_range(WERNER_S_MIN..=c.s_max);
        let g = rng.random_range(1.0..=WERNER_G_MAX.min(2.0 * s - 1.0));
        return EntropicParams::new(s, 0.0, g, -1.0);
    }
    let s = rng.random_range(1.0..=c.s_max);
    let d = if c.symmetric_only {
        0.0
    } else {
        rng.random_range(-(s - 1.0)..=(s - 1.0))
    };
    let g = rng.random_range((2.0 * d.abs() + 1.0)..=(2.0 * s - 1.0));
    let lambda = rng.random_range(-1.0..=1.0);
    EntropicParams::new(s, d, g, lambda)
}

/// Random stream for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sample `index` of the sequence determined by `seed`.
pub fn sample_at(seed: u64, index: u64, c: &SamplingConstraints) -> EntropicParams {
    sample_params(&mut sample_rng(seed, index), c)
}

/// Field and qubit diagnostics of one resource.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub params: EntropicParams,
    pub field_entropy_global: f64,
    pub field_entropy_marginals: (f64, f64),
    pub field_negativity: f64,
    pub qubit_entropy_global: f64,
    pub qubit_entropy_marginals: (f64, f64),
    pub qubit_negativity: f64,
}

pub const RECORD_COLUMNS: [&str; 12] = [
    "s",
    "d",
    "g",
    "lambda",
    "field_entropy_global",
    "field_entropy_marginal_1",
    "field_entropy_marginal_2",
    "field_negativity",
    "qubit_entropy_global",
    "qubit_entropy_marginal_a",
    "qubit_entropy_marginal_b",
    "qubit_negativity",
];

/// Field and qubit diagnostics of an arbitrary physical resource, together
/// with its steady state.
#[derive(Debug, Clone)]
pub struct ResourceDiagnostics {
    pub steady_state: TwoQubitState,
    pub field_entropy_global: f64,
    pub field_entropy_marginals: (f64, f64),
    pub field_negativity: f64,
    pub qubit_entropy_global: f64,
    pub qubit_entropy_marginals: (f64, f64),
    pub qubit_negativity: f64,
}

/// Field quantities from the covariance matrix, qubit quantities from the
/// spectrum of the steady-state density matrix.
pub fn diagnose(cm: &StandardFormCM) -> Result<ResourceDiagnostics> {
    let report = validate_cm(cm, EIGEN_TOL)?;
    if !report.is_physical() {
        return Err(Error::Domain(format!(
            "covariance matrix {cm:?} violates V12 + i Omega >= 0 (min eigenvalue {:e})",
            report.min_eigenvalue_of_v_plus_i_omega
        )));
    }
    let field = gaussian_entropies(cm)?;
    let rho = steady_state(cm)?.to_state()?;
    let (rho_a, rho_b) = marginals(&rho);
    Ok(ResourceDiagnostics {
        field_entropy_global: field.global,
        field_entropy_marginals: (field.marginal_1, field.marginal_2),
        field_negativity: gaussian_negativity(cm)?,
        qubit_entropy_global: linear_entropy(&rho),
        qubit_entropy_marginals: (linear_entropy_single(&rho_a), linear_entropy_single(&rho_b)),
        qubit_negativity: negativity(&rho),
        steady_state: rho,
    })
}

impl DiagnosticsRecord {
    pub fn compute(params: &EntropicParams) -> Result<Self> {
        let d = diagnose(&from_entropic_params(params)?)?;
        Ok(DiagnosticsRecord {
            params: *params,
            field_entropy_global: d.field_entropy_global,
            field_entropy_marginals: d.field_entropy_marginals,
            field_negativity: d.field_negativity,
            qubit_entropy_global: d.qubit_entropy_global,
            qubit_entropy_marginals: d.qubit_entropy_marginals,
            qubit_negativity: d.qubit_negativity,
        })
    }

    pub fn values(&self) -> [f64; 12] {
        let p = &self.params;
        [
            p.s,
            p.d,
            p.g,
            p.lambda,
            self.field_entropy_global,
            self.field_entropy_marginals.0,
            self.field_entropy_marginals.1,
            self.field_negativity,
            self.qubit_entropy_global,
            self.qubit_entropy_marginals.0,
            self.qubit_entropy_marginals.1,
            self.qubit_negativity,
        ]
    }

    /// Largest deviation between the stored qubit values and the closed
    /// forms of the map.
    pub fn closed_form_residual(&self) -> Result<f64> {
        let cm = from_entropic_params(&self.params)?;
        let diffs = [
            self.qubit_entropy_global - mapped_global_entropy(&cm)?,
            self.qubit_negativity - mapped_negativity(&cm)?,
            self.qubit_entropy_marginals.0 - mapped_marginal_entropy(self.field_entropy_marginals.0),
            self.qubit_entropy_marginals.1 - mapped_marginal_entropy(self.field_entropy_marginals.1),
        ];
        Ok(diffs.iter().fold(0.0, |m, d| m.max(d.abs())))
    }
}

/// Tolerance of the per-run spot check against the closed forms.
pub const SPOT_CHECK_TOL: f64 = 1e-9;

/// One table cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Flag(bool),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Real(v) => f.write_str(&fmt_f64(*v)),
            Cell::Flag(v) => f.write_str(if *v { "1" } else { "0" }),
        }
    }
}

impl Cell {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Cell::Int(v) => v as f64,
            Cell::Real(v) => v,
            Cell::Flag(v) => f64::from(u8::from(v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n_samples: usize,
    pub seed: u64,
    pub constraints: SamplingConstraints,
    pub output_path: PathBuf,
}

impl ExperimentConfig {
    /// Config with the kind's default constraints: symmetric resources for
    /// the entropy surfaces, near-Werner augmentation for the MEMS plane.
    pub fn new(kind: ExperimentKind, n_samples: usize, seed: u64, output_path: impl Into<PathBuf>) -> Self {
        let constraints = SamplingConstraints {
            symmetric_only: kind == ExperimentKind::Fig2bcEntropySurfaces,
            werner_fraction: if kind == ExperimentKind::Fig2aMemsPlane {
                DEFAULT_WERNER_FRACTION
            } else {
                0.0
            },
            ..SamplingConstraints::default()
        };
        ExperimentConfig {
            kind,
            n_samples,
            seed,
            constraints,
            output_path: output_path.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::Config("n_samples must be at least 1".into()));
        }
        if self.kind == ExperimentKind::Fig2bcEntropySurfaces && !self.constraints.symmetric_only {
            return Err(Error::Config(format!("{} requires symmetric resources", self.kind)));
        }
        self.constraints.validate()
    }

    /// Sidecar path: the CSV path with `.json` appended.
    pub fn sidecar_path(&self) -> PathBuf {
        let mut name = self.output_path.clone().into_os_string();
        name.push(".json");
        PathBuf::from(name)
    }
}

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    kind: ExperimentKind,
    n_samples: usize,
    seed: u64,
    constraints: &'a SamplingConstraints,
    tool_version: &'static str,
}

/// In-memory result of an experiment.
#[derive(Debug, Clone)]
pub struct ExperimentTable {
    pub kind: ExperimentKind,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Per-sample diagnostics; empty for trajectory runs.
    pub records: Vec<DiagnosticsRecord>,
}

impl ExperimentTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k].as_f64()).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_string))?;
        }
        w.flush()?;
        Ok(())
    }
}

fn kind_columns(kind: ExperimentKind) -> &'static [&'static str] {
    match kind {
        ExperimentKind::Fig1aEntropyScatter => &[
            "purified",
            "entangled",
            "qubit_entropy_min_bound",
            "qubit_entropy_max_bound",
        ],
        ExperimentKind::Fig1bNegativityScatter => {
            &["normalized_field_negativity", "qubit_negativity_max_bound", "entangled"]
        }
        ExperimentKind::Fig2aMemsPlane => &["mems_boundary", "entangled"],
        ExperimentKind::Fig2bcEntropySurfaces => &["qmems_negativity", "qlems_negativity"],
        ExperimentKind::FigS4MarginalPyramid => &["gmemms_bound"],
        ExperimentKind::TrajS1S3 => &[],
    }
}

fn surface_value(r: Result<f64>) -> Result<f64> {
    match r {
        Ok(v) => Ok(v),
        // outside the sheet's reach: recorded as NaN
        Err(Error::NoPhysicalState(_)) => Ok(f64::NAN),
        Err(e) => Err(e),
    }
}

fn kind_cells(kind: ExperimentKind, r: &DiagnosticsRecord) -> Result<Vec<Cell>> {
    let entangled = Cell::Flag(r.qubit_negativity > 0.0);
    Ok(match kind {
        ExperimentKind::Fig1aEntropyScatter => vec![
            Cell::Flag(r.qubit_entropy_global < r.field_entropy_global),
            entangled,
            Cell::Real(qubit_entropy_min(r.field_entropy_global)),
            Cell::Real(qubit_entropy_max(r.field_entropy_global)),
        ],
        ExperimentKind::Fig1bNegativityScatter => vec![
            Cell::Real(r.field_negativity / (1.0 + r.field_negativity)),
            Cell::Real(nmax_vs_field_negativity(r.field_negativity)),
            entangled,
        ],
        ExperimentKind::Fig2aMemsPlane => {
            vec![Cell::Real(mems_boundary(r.qubit_entropy_global)), entangled]
        }
        ExperimentKind::Fig2bcEntropySurfaces => {
            let (s_loc, s) = (r.qubit_entropy_marginals.0, r.qubit_entropy_global);
            vec![
                Cell::Real(surface_value(qmems_negativity(s_loc, s))?),
                Cell::Real(surface_value(qlems_negativity(s_loc, s))?),
            ]
        }
        ExperimentKind::FigS4MarginalPyramid => vec![Cell::Real(gmemms_image_boundary(
            r.qubit_entropy_marginals.0,
            r.qubit_entropy_marginals.1,
        )?)],
        ExperimentKind::TrajS1S3 => vec![],
    })
}

fn scatter_table(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentTable> {
    let c = config.constraints;
    let seed = config.seed;
    let kind = config.kind;
    let computed = map_indexed(config.n_samples, exec, |i| -> Result<(DiagnosticsRecord, Vec<Cell>)> {
        let record = DiagnosticsRecord::compute(&sample_at(seed, i as u64, &c))?;
        if i % 100 == 0 {
            let residual = record.closed_form_residual()?;
            if !(residual <= SPOT_CHECK_TOL) {
                return Err(Error::Consistency(format!(
                    "sample {i}: stored diagnostics deviate from closed forms by {residual:e}"
                )));
            }
        }
        let mut row = vec![Cell::Int(i as u64)];
        row.extend(record.values().map(Cell::Real));
        row.extend(kind_cells(kind, &record)?);
        Ok((record, row))
    });
    let mut columns = vec!["index".to_string()];
    columns.extend(RECORD_COLUMNS.iter().map(|c| c.to_string()));
    columns.extend(kind_columns(kind).iter().map(|c| c.to_string()));
    let mut records = Vec::with_capacity(config.n_samples);
    let mut rows = Vec::with_capacity(config.n_samples);
    for item in computed {
        let (record, row) = item?;
        records.push(record);
        rows.push(row);
    }
    Ok(ExperimentTable {
        kind,
        columns,
        rows,
        records,
    })
}

/// Reference resource of the trajectory experiment; `lambda` is swept.
pub const TRAJ_S: f64 = 1.774;
pub const TRAJ_D: f64 = 0.07;
pub const TRAJ_G: f64 = 1.448;
pub const TRAJ_GAMMA: f64 = 0.1;
/// Sweep `-1, -0.6, ..., 1`.
pub const TRAJ_LAMBDAS: [f64; 6] = [-1.0, -0.6, -0.2, 0.2, 0.6, 1.0];
pub const TRAJ_TAU_MAX: f64 = 100.0;
pub const TRAJ_POINTS: usize = 201;
/// Random trajectories run at unit coupling over this horizon.
pub const RANDOM_TRAJ_TAU_MAX: f64 = 10.0;
pub const RANDOM_TRAJ_POINTS: usize = 101;

const TRAJ_COLUMNS: [&str; 22] = [
    "trajectory",
    "family",
    "s",
    "d",
    "g",
    "lambda",
    "gamma",
    "tau",
    "re_00_00",
    "re_01_01",
    "re_10_10",
    "re_11_11",
    "re_00_11",
    "im_00_11",
    "re_01_10",
    "im_01_10",
    "anti_x_leak",
    "qubit_entropy_global",
    "qubit_negativity",
    "field_negativity",
    "normalized_field_negativity",
    "steady_negativity",
];

/// Family tag: 0 for the reference lambda sweep, 1 for random resources.
fn trajectory_rows(
    id: u64,
    family: u64,
    params: &EntropicParams,
    gamma: f64,
    tau_max: f64,
    points: usize,
) -> Result<Vec<Vec<Cell>>> {
    let cm = from_entropic_params(params)?;
    let traj = evolve(&TwoQubitState::basis(0), &cm, gamma, tau_max, points)?;
    let field_n = gaussian_negativity(&cm)?;
    let steady_n = mapped_negativity(&cm)?;
    let mut rows = Vec::with_capacity(points);
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let m = state.matrix();
        let mut row = vec![Cell::Int(id), Cell::Int(family)];
        row.extend(
            [
                params.s,
                params.d,
                params.g,
                params.lambda,
                gamma,
                *t,
                m[(0, 0)].re,
                m[(1, 1)].re,
                m[(2, 2)].re,
                m[(3, 3)].re,
                m[(0, 3)].re,
                m[(0, 3)].im,
                m[(1, 2)].re,
                m[(1, 2)].im,
                state.anti_x_leak(),
                linear_entropy(state),
                negativity(state),
                field_n,
                field_n / (1.0 + field_n),
                steady_n,
            ]
            .map(Cell::Real),
        );
        rows.push(row);
    }
    Ok(rows)
}

fn trajectory_table(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentTable> {
    let sweep = TRAJ_LAMBDAS.len();
    let c = config.constraints;
    let seed = config.seed;
    let chunks = map_indexed(sweep + config.n_samples, exec, |i| {
        if i < sweep {
            let p = EntropicParams::new(TRAJ_S, TRAJ_D, TRAJ_G, TRAJ_LAMBDAS[i]);
            trajectory_rows(i as u64, 0, &p, TRAJ_GAMMA, TRAJ_TAU_MAX, TRAJ_POINTS)
        } else {
            let p = sample_at(seed, (i - sweep) as u64, &c);
            trajectory_rows(i as u64, 1, &p, 1.0, RANDOM_TRAJ_TAU_MAX, RANDOM_TRAJ_POINTS)
        }
    });
    let mut rows = Vec::new();
    for chunk in chunks {
        rows.extend(chunk?);
    }
    Ok(ExperimentTable {
        kind: config.kind,
        columns: TRAJ_COLUMNS.iter().map(|c| c.to_string()).collect(),
        rows,
        records: Vec::new(),
    })
}

/// Computes the experiment table without touching the filesystem.
///
/// Trajectory runs emit the reference `lambda` sweep followed by
/// `n_samples` trajectories from random resources, all started in |00>.
pub fn compute_experiment(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentTable> {
    config.validate()?;
    match config.kind {
        ExperimentKind::TrajS1S3 => trajectory_table(config, exec),
        _ => scatter_table(config, exec),
    }
}

fn write_sidecar(config: &ExperimentConfig, path: &Path) -> Result<()> {
    let sidecar = Sidecar {
        kind: config.kind,
        n_samples: config.n_samples,
        seed: config.seed,
        constraints: &config.constraints,
        tool_version: env!("CARGO_PKG_VERSION"),
    };
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, &sidecar)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Runs the experiment and writes the CSV plus its JSON sidecar.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentTable> {
    run_experiment_with(config, Execution::default())
}

pub fn run_experiment_with(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentTable> {
    let table = compute_experiment(config, exec)?;
    let mut out = BufWriter::new(File::create(&config.output_path)?);
    table.write_csv(&mut out)?;
    out.flush()?;
    write_sidecar(config, &config.sidecar_path())?;
    Ok(table)
}
