// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! `cvqmap` command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::value::RawValue;

use cvqmap::atlas::{boundary_curve, CurveKind, Resolution};
use cvqmap::format::fmt_f64;
use cvqmap::gaussian::{from_entropic_params, to_entropic_params};
use cvqmap::harness::{
    diagnose, run_experiment_with, verify_suite_with, ExperimentConfig, ExperimentKind,
    VerifyOptions,
};
use cvqmap::interface::{evolve, write_trajectory_csv};
use cvqmap::{EntropicParams, Error, Execution, StandardFormCM, TwoQubitState};

#[derive(Debug, Parser)]
#[command(name = "cvqmap", version, about = "Map two-mode Gaussian resources onto two-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the steady state and diagnostics of one resource as JSON.
    Map(ResourceArgs),
    /// Integrate the master equation and write a trajectory CSV.
    Evolve(EvolveArgs),
    /// Run a sampling experiment and write its CSV and JSON sidecar.
    Sample(SampleArgs),
    /// Write a boundary curve or surface as CSV.
    Boundary(BoundaryArgs),
    /// Run the verification suite; exits with 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(id = "resource", required = true, multiple = true)]
struct ResourceArgs {
    /// Diagonal entry of mode 1.
    #[arg(long, allow_hyphen_values = true, group = "resource", requires_all = ["b", "cplus", "cminus"], conflicts_with_all = ["s", "d", "g", "lambda"])]
    a: Option<f64>,
    /// Diagonal entry of mode 2.
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    b: Option<f64>,
    /// Position-position correlation.
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    cplus: Option<f64>,
    /// Momentum-momentum correlation.
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    cminus: Option<f64>,
    /// Mean marginal parameter.
    #[arg(long, allow_hyphen_values = true, group = "resource", requires_all = ["d", "g", "lambda"])]
    s: Option<f64>,
    /// Marginal asymmetry.
    #[arg(long, allow_hyphen_values = true, requires = "s")]
    d: Option<f64>,
    /// Inverse global purity, sqrt(det V12).
    #[arg(long, allow_hyphen_values = true, requires = "s")]
    g: Option<f64>,
    /// Ordering parameter in [-1, 1].
    #[arg(long, allow_hyphen_values = true, requires = "s")]
    lambda: Option<f64>,
}

impl ResourceArgs {
    fn resource(&self) -> cvqmap::Result<StandardFormCM> {
        match (self.a, self.b, self.cplus, self.cminus) {
            (Some(a), Some(b), Some(cp), Some(cm)) => Ok(StandardFormCM::new(a, b, cp, cm)),
            _ => match (self.s, self.d, self.g, self.lambda) {
                (Some(s), Some(d), Some(g), Some(l)) => {
                    from_entropic_params(&EntropicParams::new(s, d, g, l))
                }
                _ => Err(Error::InvalidInput(
                    "give either --a --b --cplus --cminus or --s --d --g --lambda".into(),
                )),
            },
        }
    }
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    resource: ResourceArgs,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Final dimensionless time.
    #[arg(long, default_value_t = 10.0)]
    tau_max: f64,
    /// Number of output samples, including tau = 0.
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// Coupling; the generator is gamma (V12 + i Omega).
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Initial computational basis state (00, 01, 10, 11) or "mixed".
    #[arg(long, default_value = "00")]
    initial: String,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Experiment kind, e.g. fig1a_entropy_scatter.
    #[arg(long)]
    kind: String,
    /// Output CSV; the sidecar goes to <out>.json.
    #[arg(long)]
    out: PathBuf,
    /// Number of samples (random trajectories for trajS1_S3).
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Upper end of the sampled marginal parameter s.
    #[arg(long, default_value_t = 10.0)]
    smax: f64,
    /// Fraction of near-Werner draws; defaults to the kind's setting.
    #[arg(long)]
    werner_fraction: Option<f64>,
    /// Restrict to symmetric resources (d = 0).
    #[arg(long)]
    symmetric: bool,
    /// Evaluate rows on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct BoundaryArgs {
    /// Curve kind, e.g. mems_werner or qmems_surface.
    #[arg(long)]
    curve: String,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Points per curve.
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Points per surface axis.
    #[arg(long, default_value_t = 50)]
    grid: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Random resources per sampled check.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 2026)]
    seed: u64,
}

fn number(x: f64) -> Box<RawValue> {
    // non-finite values have no JSON literal
    let text = if x.is_finite() { fmt_f64(x) } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

#[derive(Serialize)]
struct CmJson {
    a: Box<RawValue>,
    b: Box<RawValue>,
    c_plus: Box<RawValue>,
    c_minus: Box<RawValue>,
}

#[derive(Serialize)]
struct ParamsJson {
    s: Box<RawValue>,
    d: Box<RawValue>,
    g: Box<RawValue>,
    lambda: Box<RawValue>,
}

#[derive(Serialize)]
struct DiagnosticsJson {
    field_entropy_global: Box<RawValue>,
    field_entropy_marginal_1: Box<RawValue>,
    field_entropy_marginal_2: Box<RawValue>,
    field_negativity: Box<RawValue>,
    qubit_entropy_global: Box<RawValue>,
    qubit_entropy_marginal_a: Box<RawValue>,
    qubit_entropy_marginal_b: Box<RawValue>,
    qubit_negativity: Box<RawValue>,
}

#[derive(Serialize)]
struct MapJson {
    covariance: CmJson,
    entropic_params: Option<ParamsJson>,
    steady_state: Vec<Vec<[Box<RawValue>; 2]>>,
    diagnostics: DiagnosticsJson,
}

fn run_map(args: &ResourceArgs) -> cvqmap::Result<()> {
    let cm = args.resource()?;
    let diag = diagnose(&cm)?;
    let params = to_entropic_params(&cm).ok().map(|p| ParamsJson {
        s: number(p.s),
        d: number(p.d),
        g: number(p.g),
        lambda: number(p.lambda),
    });
    let m = diag.steady_state.matrix();
    let doc = MapJson {
        covariance: CmJson {
            a: number(cm.a),
            b: number(cm.b),
            c_plus: number(cm.c_plus),
            c_minus: number(cm.c_minus),
        },
        entropic_params: params,
        steady_state: (0..4)
            .map(|i| (0..4).map(|j| [number(m[(i, j)].re), number(m[(i, j)].im)]).collect())
            .collect(),
        diagnostics: DiagnosticsJson {
            field_entropy_global: number(diag.field_entropy_global),
            field_entropy_marginal_1: number(diag.field_entropy_marginals.0),
            field_entropy_marginal_2: number(diag.field_entropy_marginals.1),
            field_negativity: number(diag.field_negativity),
            qubit_entropy_global: number(diag.qubit_entropy_global),
            qubit_entropy_marginal_a: number(diag.qubit_entropy_marginals.0),
            qubit_entropy_marginal_b: number(diag.qubit_entropy_marginals.1),
            qubit_negativity: number(diag.qubit_negativity),
        },
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

fn initial_state(name: &str) -> cvqmap::Result<TwoQubitState> {
    match name {
        "00" => Ok(TwoQubitState::basis(0)),
        "01" => Ok(TwoQubitState::basis(1)),
        "10" => Ok(TwoQubitState::basis(2)),
        "11" => Ok(TwoQubitState::basis(3)),
        "mixed" => Ok(TwoQubitState::maximally_mixed()),
        other => Err(Error::InvalidInput(format!("unknown initial state '{other}'"))),
    }
}

fn output(path: Option<&PathBuf>) -> cvqmap::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn run_evolve(args: &EvolveArgs) -> cvqmap::Result<()> {
    let cm = args.resource.resource()?;
    let rho = initial_state(&args.initial)?;
    let traj = evolve(&rho, &cm, args.gamma, args.tau_max, args.steps)?;
    write_trajectory_csv(&traj, output(args.out.as_ref())?)
}

fn run_sample(args: &SampleArgs) -> cvqmap::Result<()> {
    let kind: ExperimentKind = args.kind.parse()?;
    let mut config = ExperimentConfig::new(kind, args.n, args.seed, &args.out);
    config.constraints.s_max = args.smax;
    config.constraints.symmetric_only |= args.symmetric;
    if let Some(f) = args.werner_fraction {
        config.constraints.werner_fraction = f;
    }
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let table = run_experiment_with(&config, exec)?;
    eprintln!(
        "wrote {} rows to {} (config in {})",
        table.rows.len(),
        config.output_path.display(),
        config.sidecar_path().display()
    );
    Ok(())
}

fn run_boundary(args: &BoundaryArgs) -> cvqmap::Result<()> {
    let kind: CurveKind = args.curve.parse()?;
    let res = Resolution {
        curve_points: args.points,
        surface_points: args.grid,
    };
    let curve = boundary_curve(kind, res, Execution::Parallel)?;
    let mut out = output(args.out.as_ref())?;
    curve.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> cvqmap::Result<bool> {
    let opts = VerifyOptions {
        samples: args.samples,
        seed: args.seed,
        ..VerifyOptions::default()
    };
    let report = verify_suite_with(&opts);
    println!("{}", report.to_json());
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Map(a) => run_map(a).map(|_| true),
        Command::Evolve(a) => run_evolve(a).map(|_| true),
        Command::Sample(a) => run_sample(a).map(|_| true),
        Command::Boundary(a) => run_boundary(a).map(|_| true),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("cvqmap: {e}");
            ExitCode::from(if e.is_domain() { 2 } else { 1 })
        }
    }
}
