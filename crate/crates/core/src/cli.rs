//! Command-line front end and the JSON file formats it reads and writes.
//!
//! Scenario and simulation inputs are JSON documents with unknown fields
//! rejected. Results go to standard output as a single JSON document with
//! every float printed to 17 significant digits; diagnostics go to standard
//! error.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::constraints::{intersect_with_affine, AffineConstraint, Intersection};
use crate::error::{Error, Result};
use crate::model::{CountHint, Frame, QuadricDescriptor, SatelliteLocus, Scenario, SolutionSet};
use crate::numerics::{Tolerance, Vector};
use crate::quadrics::{classify, DualityReport};
use crate::simulate::{
    cost_surface, run_trials, trial_pseudoranges, ErrorStats, NoiseModel, SearchRegion,
    TrialConfig, DEFAULT_HALF_WIDTH, DEFAULT_RESOLUTION,
};
use crate::solver::{filter_inequalities, solve_squared, Diagnostics, ExplicitPoint, Feasibility};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_EMPTY: i32 = 2;

pub const DEFAULT_TRIALS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatelliteEntry {
    pub position: Vec<f64>,
    pub pseudorange: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneEntry {
    pub base: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
}

impl PlaneEntry {
    pub fn to_constraint(&self) -> Result<AffineConstraint> {
        Ok(AffineConstraint {
            base: Vector::from_vec(self.base.clone()),
            basis: self
                .basis
                .iter()
                .map(|b| Vector::from_vec(b.clone()))
                .collect(),
        })
    }

    pub fn from_constraint(c: &AffineConstraint) -> Self {
        Self {
            base: c.base.as_slice().to_vec(),
            basis: c.basis.iter().map(|b| b.as_slice().to_vec()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesEntry {
    #[serde(default = "default_rank_rel")]
    pub rank_rel: f64,
    #[serde(default = "default_geom_abs")]
    pub geom_abs: f64,
}

fn default_rank_rel() -> f64 {
    Tolerance::default().rank_rel
}

fn default_geom_abs() -> f64 {
    Tolerance::default().geom_abs
}

/// Input document for `solve`, `intersect` and `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub satellites: Vec<SatelliteEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint: Option<PlaneEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<TolerancesEntry>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("scenario: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    pub fn from_scenario(sc: &Scenario) -> Self {
        Self {
            dimension: sc.dim,
            unit: None,
            satellites: sc
                .satellites
                .iter()
                .zip(&sc.pseudoranges)
                .map(|(s, &t)| SatelliteEntry {
                    position: s.as_slice().to_vec(),
                    pseudorange: t,
                })
                .collect(),
            constraint: None,
            tolerances: Some(TolerancesEntry {
                rank_rel: sc.tol.rank_rel,
                geom_abs: sc.tol.geom_abs,
            }),
        }
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        for (i, sat) in self.satellites.iter().enumerate() {
            if sat.position.len() != self.dimension {
                return Err(Error::Input(format!(
                    "satellites[{i}].position has {} coordinates, expected {}",
                    sat.position.len(),
                    self.dimension
                )));
            }
        }
        let tol = self
            .tolerances
            .map(|t| Tolerance {
                rank_rel: t.rank_rel,
                geom_abs: t.geom_abs,
            })
            .unwrap_or_default();
        let sc = Scenario {
            dim: self.dimension,
            satellites: self
                .satellites
                .iter()
                .map(|s| Vector::from_vec(s.position.clone()))
                .collect(),
            pseudoranges: self.satellites.iter().map(|s| s.pseudorange).collect(),
            tol,
        };
        if sc.is_empty() {
            return Err(Error::NoSatellites);
        }
        sc.validate()?;
        Ok(sc)
    }

    pub fn constraint(&self) -> Result<Option<AffineConstraint>> {
        let Some(entry) = &self.constraint else {
            return Ok(None);
        };
        let c = entry.to_constraint()?;
        if c.base.len() != self.dimension {
            return Err(Error::Input(format!(
                "constraint.base has {} coordinates, expected {}",
                c.base.len(),
                self.dimension
            )));
        }
        c.validate()?;
        Ok(Some(c))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthEntry {
    pub position: Vec<f64>,
    #[serde(default)]
    pub bias: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionEntry {
    pub plane: PlaneEntry,
    pub lower: [f64; 2],
    pub upper: [f64; 2],
    #[serde(default)]
    pub resolution: Option<usize>,
}

/// Input document for `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationFile {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub receivers: Vec<Vec<f64>>,
    pub truth: TruthEntry,
    pub noise: NoiseModel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

impl SimulationFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("simulation config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    /// The trial configuration. Without an explicit region the grid is the
    /// default square around the truth, in the horizontal plane through it
    /// (or the whole plane when `dimension` is 2).
    pub fn trial_config(&self, resolution: Option<usize>) -> Result<TrialConfig> {
        let n = self.dimension;
        for (i, r) in self.receivers.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Input(format!(
                    "receivers[{i}] has {} coordinates, expected {n}",
                    r.len()
                )));
            }
        }
        if self.truth.position.len() != n {
            return Err(Error::Input(format!(
                "truth.position has {} coordinates, expected {n}",
                self.truth.position.len()
            )));
        }
        if n < 2 {
            return Err(Error::Input("simulation needs dimension at least 2".into()));
        }
        let x_true = Vector::from_vec(self.truth.position.clone());
        let region = match &self.region {
            Some(r) => SearchRegion {
                constraint: r.plane.to_constraint()?,
                lower: r.lower,
                upper: r.upper,
                resolution: {
                    let res = resolution.or(r.resolution).unwrap_or(DEFAULT_RESOLUTION);
                    [res, res]
                },
            },
            None => {
                let constraint = if n == 2 {
                    AffineConstraint {
                        base: Vector::zeros(2),
                        basis: vec![
                            Vector::from_vec(vec![1.0, 0.0]),
                            Vector::from_vec(vec![0.0, 1.0]),
                        ],
                    }
                } else {
                    AffineConstraint::horizontal(n, x_true[n - 1])
                };
                SearchRegion::around(
                    constraint,
                    &x_true,
                    DEFAULT_HALF_WIDTH,
                    resolution.unwrap_or(DEFAULT_RESOLUTION),
                )
            }
        };
        if region.constraint.base.len() != n {
            return Err(Error::Input(format!(
                "region.plane.base has {} coordinates, expected {n}",
                region.constraint.base.len()
            )));
        }
        region.validate()?;
        Ok(TrialConfig {
            receivers: self
                .receivers
                .iter()
                .map(|r| Vector::from_vec(r.clone()))
                .collect(),
            x_true,
            b_true: self.truth.bias,
            noise: self.noise,
            region,
        })
    }
}

/// Output of `solve`, `intersect` and `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub command: String,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub count: CountHint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution_set: Option<SolutionSet>,
    /// Explicit solutions with their feasibility, when the set is finite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<ExplicitPoint>>,
    pub q_sol: QuadricDescriptor,
    pub q_sat: SatelliteLocus,
    pub feasibility: Feasibility,
    pub feasible_count: CountHint,
    pub duality: DualityReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Intersection>,
    pub frame: Frame,
    pub diagnostics: Diagnostics,
}

impl ResultDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("result document: {e}")))
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }
}

/// Output of `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationReport {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub sigma: f64,
    pub seed: u64,
    pub resolution: [usize; 2],
    pub stats: ErrorStats,
    /// `stats` converted to metres when `unit` is `km`, otherwise a copy.
    pub stats_reported: ErrorStats,
    pub reported_unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
}

/// Pretty printer that writes every float with 17 significant digits.
struct ExactFloats<'a>(PrettyFormatter<'a>);

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{value:.8e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Pretty JSON with 17 significant digits per float.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[derive(Debug, Parser)]
#[command(
    name = "pseudoquad",
    version,
    about = "Positioning from pseudoranges via quadrics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a scenario and report both quadrics and feasibility.
    Solve(SolveArgs),
    /// Intersect the solution set with the scenario's affine constraint.
    Intersect(SolveArgs),
    /// Run a noisy grid-search localization experiment.
    Simulate(SimulateArgs),
    /// Like `solve` without the solution parametrization.
    Classify(SolveArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub scenario: PathBuf,
    #[arg(long)]
    pub tol_rank: Option<f64>,
    #[arg(long)]
    pub tol_geom: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub config: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Write the cost surface of the first trial as CSV.
    #[arg(long)]
    pub surface: Option<PathBuf>,
    #[arg(long)]
    pub resolution: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Solve,
    Intersect,
    Classify,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Solve => "solve",
            Mode::Intersect => "intersect",
            Mode::Classify => "classify",
        }
    }
}

/// Runs the scenario pipeline on an already parsed file.
pub fn analyze(
    file: &ScenarioFile,
    command: &str,
    tol: Option<Tolerance>,
) -> Result<ResultDocument> {
    let mode = match command {
        "solve" => Mode::Solve,
        "intersect" => Mode::Intersect,
        "classify" => Mode::Classify,
        other => return Err(Error::Input(format!("unknown command {other}"))),
    };
    let mut sc = file.to_scenario()?;
    if let Some(tol) = tol {
        tol.validate()?;
        sc.tol = tol;
    }
    let constraint = file.constraint()?;
    if mode == Mode::Intersect && constraint.is_none() {
        return Err(Error::Input(
            "intersect needs a constraint in the scenario".into(),
        ));
    }
    let sol = solve_squared(&sc)?;
    let feasible = filter_inequalities(&sol, &sc);
    let (q_sol, q_sat, duality) = classify(&sol);
    let candidates = match (&constraint, mode) {
        (Some(c), Mode::Intersect) => Some(intersect_with_affine(&sol, &sc, c)?),
        _ => None,
    };
    let solutions = match &feasible.feasible {
        Feasibility::Explicit { points } => Some(points.clone()),
        _ => None,
    };
    Ok(ResultDocument {
        command: mode.name().to_string(),
        dimension: sc.dim,
        unit: file.unit.clone(),
        count: sol.set.count(),
        solution_set: (mode != Mode::Classify).then(|| sol.set.clone()),
        solutions,
        q_sol,
        q_sat,
        feasibility: feasible.feasible.clone(),
        feasible_count: feasible.count(),
        duality,
        candidates,
        frame: sol.frame.clone(),
        diagnostics: sol.diagnostics.clone(),
    })
}

fn override_tolerance(file: &ScenarioFile, args: &SolveArgs) -> Option<Tolerance> {
    if args.tol_rank.is_none() && args.tol_geom.is_none() {
        return None;
    }
    let base = file
        .tolerances
        .map(|t| Tolerance {
            rank_rel: t.rank_rel,
            geom_abs: t.geom_abs,
        })
        .unwrap_or_default();
    Some(Tolerance {
        rank_rel: args.tol_rank.unwrap_or(base.rank_rel),
        geom_abs: args.tol_geom.unwrap_or(base.geom_abs),
    })
}

fn run_scenario(
    command: &str,
    args: &SolveArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let file = ScenarioFile::load(&args.scenario)?;
    let doc = analyze(&file, command, override_tolerance(&file, args))?;
    writeln!(out, "{}", doc.to_json())?;
    let empty = match &doc.candidates {
        Some(cands) => {
            if let Some(diag) = &cands.diagnostic {
                writeln!(err, "note: {diag}")?;
            }
            cands.candidates.is_empty() && !cands.positive_dimensional
        }
        None => doc.count == CountHint::Zero,
    };
    if !doc.duality.all_ok() {
        writeln!(err, "warning: duality checks did not all pass")?;
    }
    Ok(if empty { EXIT_EMPTY } else { EXIT_OK })
}

/// Multiplier turning position errors into reported units.
pub fn report_factor(unit: Option<&str>) -> (f64, Option<String>) {
    match unit {
        Some("km") => (1000.0, Some("m".into())),
        other => (1.0, other.map(str::to_string)),
    }
}

/// Runs the simulation described by a parsed config.
pub fn simulate_file(
    file: &SimulationFile,
    seed: Option<u64>,
    trials: Option<usize>,
    resolution: Option<usize>,
) -> Result<(SimulationReport, TrialConfig)> {
    let mut config = file.trial_config(resolution)?;
    if let Some(seed) = seed {
        config.noise.seed = seed;
    }
    let trials = trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let stats = run_trials(&config, trials)?;
    let (factor, reported_unit) = report_factor(file.unit.as_deref());
    let report = SimulationReport {
        command: "simulate".into(),
        unit: file.unit.clone(),
        sigma: config.noise.sigma,
        seed: config.noise.seed,
        resolution: config.region.resolution,
        stats,
        stats_reported: ErrorStats {
            trials: stats.trials,
            mean_error: stats.mean_error * factor,
            std_error: stats.std_error * factor,
        },
        reported_unit,
        surface: None,
    };
    Ok((report, config))
}

fn run_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let file = SimulationFile::load(&args.config)?;
    let (mut report, config) = simulate_file(&file, args.seed, args.trials, args.resolution)?;
    if let Some(path) = &args.surface {
        let t = trial_pseudoranges(&config, 0);
        let surface = cost_surface(&config.receivers, &t, &config.region)?;
        let f = std::fs::File::create(path)?;
        surface.write_csv(io::BufWriter::new(f))?;
        report.surface = Some(path.display().to_string());
    }
    writeln!(out, "{}", to_json_string(&report))?;
    Ok(EXIT_OK)
}

/// Executes a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Solve(a) => run_scenario("solve", a, out, err),
        Command::Intersect(a) => run_scenario("intersect", a, out, err),
        Command::Classify(a) => run_scenario("classify", a, out, err),
        Command::Simulate(a) => run_simulate(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// Parses `args` and runs; clap usage errors exit with [`EXIT_INPUT`].
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, &mut stdout.lock(), &mut stderr.lock()),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
