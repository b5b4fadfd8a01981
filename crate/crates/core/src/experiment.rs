//! Scenario files, seeded batch runs, sweeps and pattern sampling.
//!
//! A scenario file is TOML. Every key is optional except
//! `desired_angles_deg`; unknown keys are rejected.
//!
//! ```toml
//! num_antennas = 15                 # N
//! spacing_wavelengths = 0.5         # d/λ
//! desired_angles_deg = [55.0, 60.0]
//! interference_angles_deg = [20.0, 160.0]
//! eta_max_db = -10.0
//! schemes = ["RA", "FOA", "IA"]
//! seeds = 20                        # or an explicit list: [1, 7, 42]
//! pattern_sample_step_deg = 0.1
//!
//! [pattern]                         # 3GPP element overrides
//! max_gain_dbi = 8.0
//! beamwidth_3db_deg = 65.0
//! sidelobe_limit_db = 30.0
//! front_to_back_db = 30.0
//!
//! [solver]
//! delta_threshold = 0.01            # outer loop
//! max_outer_iterations = 50
//!
//! [solver.sca]
//! delta_threshold = 0.01
//! max_iterations = 100
//! subproblem_tolerance = 1e-7
//!
//! [solver.pso]
//! num_particles = 200
//! max_iterations = 100
//! inertia_initial = 0.9
//! inertia_final = 0.2
//! learn_local = 1.4
//! learn_global = 1.4
//! penalty_factor = 1e6
//! delta_threshold = 0.01
//! stall_iterations = 10
//! ```
//!
//! Seeds drive both the random initial weight phases and the swarm, so
//! `solver.pso.rng_seed` must not be set in the file.
//!
//! All CSV output is a deterministic function of the scenario file and the
//! seed set; parallel work is gathered back in cell/seed order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ao::{solve_scheme, AoConfig, RunReport, Scheme};
use crate::array_model::{ArrayGeometry, ArrayModel, RadiationPattern, Scenario};
use crate::error::{Error, Result};
use crate::pso::{derive_seed, PsoConfig};
use crate::sca::ScaConfig;
use crate::units::linear_to_db;

/// Optional cap on worker threads.
pub const THREADS_ENV: &str = "RA_BEAMKIT_THREADS";

pub const PATTERN_CSV_HEADER: &str = "psi_deg,gain_linear,gain_db";
pub const SWEEP_CSV_HEADER: &str = "sweep_value,scheme,mean_maxmin_gain_db,delta_vs_ra_db";
pub const SUMMARY_CSV_HEADER: &str = "scheme,best_seed,min_desired_gain_linear,min_desired_gain_db,fraction_of_full_gain,max_interference_gain_linear,mean_min_desired_gain_db,num_seeds";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PatternOverrides {
    pub max_gain_dbi: f64,
    pub beamwidth_3db_deg: f64,
    pub sidelobe_limit_db: f64,
    pub front_to_back_db: f64,
}

impl Default for PatternOverrides {
    fn default() -> Self {
        let p = RadiationPattern::default();
        Self {
            max_gain_dbi: p.max_gain_dbi,
            beamwidth_3db_deg: p.beamwidth_3db_deg,
            sidelobe_limit_db: p.sidelobe_limit_db,
            front_to_back_db: p.front_to_back_db,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOverrides {
    pub delta_threshold: f64,
    pub max_outer_iterations: usize,
    pub sca: ScaConfig,
    pub pso: PsoConfig,
}

impl Default for SolverOverrides {
    fn default() -> Self {
        let ao = AoConfig::default();
        Self {
            delta_threshold: ao.delta_threshold,
            max_outer_iterations: ao.max_outer_iterations,
            sca: ao.sca,
            pso: ao.pso,
        }
    }
}

impl SolverOverrides {
    pub fn to_config(&self) -> AoConfig {
        AoConfig {
            sca: self.sca,
            pso: self.pso,
            delta_threshold: self.delta_threshold,
            max_outer_iterations: self.max_outer_iterations,
        }
    }
}

/// Either a number of seeds (`0..count`) or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Seeds {
    Count(u64),
    List(Vec<u64>),
}

impl Default for Seeds {
    fn default() -> Self {
        Seeds::Count(1)
    }
}

impl Seeds {
    pub fn to_vec(&self) -> Vec<u64> {
        match self {
            Seeds::Count(n) => (0..*n).collect(),
            Seeds::List(list) => list.clone(),
        }
    }
}

fn default_num_antennas() -> usize {
    15
}
fn default_spacing() -> f64 {
    0.5
}
fn default_eta_max_db() -> f64 {
    -10.0
}
fn default_schemes() -> Vec<Scheme> {
    Scheme::ALL.to_vec()
}
fn default_step() -> f64 {
    0.1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default = "default_num_antennas")]
    pub num_antennas: usize,
    #[serde(default = "default_spacing")]
    pub spacing_wavelengths: f64,
    #[serde(default)]
    pub pattern: PatternOverrides,
    pub desired_angles_deg: Vec<f64>,
    #[serde(default)]
    pub interference_angles_deg: Vec<f64>,
    #[serde(default = "default_eta_max_db")]
    pub eta_max_db: f64,
    #[serde(default = "default_schemes")]
    pub schemes: Vec<Scheme>,
    #[serde(default)]
    pub solver: SolverOverrides,
    #[serde(default)]
    pub seeds: Seeds,
    #[serde(default = "default_step")]
    pub pattern_sample_step_deg: f64,
}

impl ScenarioFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: Self = toml::from_str(text).map_err(|e| {
            // type errors only say what was expected; quote the offending line
            let location = e.span().and_then(|span| {
                let line = text[..span.start].matches('\n').count();
                text.lines()
                    .nth(line)
                    .map(|l| format!(" at line {}: `{}`", line + 1, l.trim()))
            });
            Error::Schema(format!("{}{}", e.message(), location.unwrap_or_default()))
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&read_text(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let schema = |msg: String| Err(Error::Schema(msg));
        if self.num_antennas == 0 {
            return schema("num_antennas: must be at least 1".into());
        }
        if !(self.spacing_wavelengths > 0.0 && self.spacing_wavelengths.is_finite()) {
            return schema("spacing_wavelengths: must be positive".into());
        }
        self.radiation_pattern()
            .map_err(|e| Error::Schema(format!("pattern: {e}")))?;
        self.scenario()
            .map_err(|e| Error::Schema(e.to_string().replace("invalid scenario: ", "")))?;
        if self.schemes.is_empty() {
            return schema("schemes: at least one scheme is required".into());
        }
        if self.seeds.to_vec().is_empty() {
            return schema("seeds: at least one seed is required".into());
        }
        if !(self.pattern_sample_step_deg > 0.0 && self.pattern_sample_step_deg <= 180.0) {
            return schema("pattern_sample_step_deg: must be in (0, 180]".into());
        }
        if self.solver.pso.rng_seed != 0 {
            return schema("solver.pso.rng_seed: seeds come from `seeds`; remove this key".into());
        }
        self.solver
            .to_config()
            .validate()
            .map_err(|e| Error::Schema(format!("solver: {e}")))?;
        Ok(())
    }

    pub fn radiation_pattern(&self) -> Result<RadiationPattern> {
        let p = &self.pattern;
        RadiationPattern::new(
            p.max_gain_dbi,
            p.beamwidth_3db_deg,
            p.sidelobe_limit_db,
            p.front_to_back_db,
        )
    }

    pub fn geometry(&self) -> Result<ArrayGeometry> {
        ArrayGeometry::new(self.num_antennas, self.spacing_wavelengths)
    }

    pub fn scenario(&self) -> Result<Scenario> {
        Scenario::new(
            self.desired_angles_deg.clone(),
            self.interference_angles_deg.clone(),
            self.eta_max_db,
        )
    }

    /// Array model used to evaluate a report of the given scheme.
    pub fn model_for(&self, scheme: Scheme) -> Result<ArrayModel> {
        let geometry = self.geometry()?;
        Ok(match scheme {
            Scheme::Ia => ArrayModel::isotropic(geometry),
            Scheme::Ra | Scheme::Foa => ArrayModel::three_gpp(geometry, self.radiation_pattern()?),
        })
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatternSample {
    pub psi_deg: f64,
    pub gain_linear: f64,
    pub gain_db: f64,
}

/// Array gain of `report`'s final state from 0° to 180° in `step_deg` steps.
pub fn sample_pattern(
    model: &ArrayModel,
    report: &RunReport,
    step_deg: f64,
) -> Result<Vec<PatternSample>> {
    if !(step_deg > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "pattern step must be positive, got {step_deg}"
        )));
    }
    let count = (180.0 / step_deg + 1e-9).floor() as usize;
    let state = &report.final_state;
    (0..=count)
        .map(|i| {
            // snap to the nanodegree so grid points like 55° land exactly
            let psi = ((i as f64 * step_deg) * 1e9).round() / 1e9;
            let gain = model.gain(&state.weights, &state.rotations_deg, psi)?;
            Ok(PatternSample {
                psi_deg: psi,
                gain_linear: gain,
                gain_db: linear_to_db(gain),
            })
        })
        .collect()
}

pub fn pattern_csv(samples: &[PatternSample]) -> String {
    let mut out = String::from(PATTERN_CSV_HEADER);
    out.push('\n');
    for s in samples {
        let _ = writeln!(out, "{},{},{}", s.psi_deg, s.gain_linear, s.gain_db);
    }
    out
}

/// Runs `f` on a worker pool capped by [`THREADS_ENV`] when it is set.
pub fn with_worker_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Solves every `(scheme, seed)` pair in parallel; results come back in
/// scheme-major, seed-minor order.
fn solve_batch(
    schemes: &[Scheme],
    seeds: &[u64],
    scenario: &Scenario,
    pattern: &RadiationPattern,
    geometry: &ArrayGeometry,
    config: &AoConfig,
) -> Result<Vec<Vec<RunReport>>> {
    let jobs: Vec<(usize, u64)> = (0..schemes.len())
        .flat_map(|s| seeds.iter().map(move |&seed| (s, seed)))
        .collect();
    let results: Vec<Result<RunReport>> = jobs
        .par_iter()
        .map(|&(s, seed)| solve_scheme(schemes[s], scenario, pattern, geometry, config, seed))
        .collect();
    let mut grouped: Vec<Vec<RunReport>> = vec![Vec::with_capacity(seeds.len()); schemes.len()];
    for ((s, _), result) in jobs.into_iter().zip(results) {
        grouped[s].push(result?);
    }
    Ok(grouped)
}

fn mean_db(reports: &[RunReport]) -> f64 {
    reports
        .iter()
        .map(|r| linear_to_db(r.min_desired_gain))
        .sum::<f64>()
        / reports.len() as f64
}

/// Highest min desired gain; the earliest seed wins ties.
fn best_report(reports: &[RunReport]) -> &RunReport {
    let mut best = &reports[0];
    for r in &reports[1..] {
        if r.min_desired_gain > best.min_desired_gain {
            best = r;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeSummary {
    pub scheme: Scheme,
    pub best_seed: u64,
    pub min_desired_gain_linear: f64,
    pub min_desired_gain_db: f64,
    pub fraction_of_full_gain: f64,
    pub max_interference_gain_linear: f64,
    pub mean_min_desired_gain_db: f64,
    pub num_seeds: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutcome {
    pub summaries: Vec<SchemeSummary>,
    /// Best report per scheme, in scheme order.
    pub best_reports: Vec<RunReport>,
    pub files: Vec<PathBuf>,
}

/// What a report file carries besides the report itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    #[serde(flatten)]
    pub report: RunReport,
    pub seed_min_desired_gains: Vec<f64>,
    pub config: ScenarioFile,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    /// Replaces the file's seeds with `0..count`.
    pub seed_count: Option<u64>,
    /// Replaces the file's scheme list.
    pub schemes: Option<Vec<Scheme>>,
}

fn summary_csv(summaries: &[SchemeSummary]) -> String {
    let mut out = String::from(SUMMARY_CSV_HEADER);
    out.push('\n');
    for s in summaries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            s.scheme,
            s.best_seed,
            s.min_desired_gain_linear,
            s.min_desired_gain_db,
            s.fraction_of_full_gain,
            s.max_interference_gain_linear,
            s.mean_min_desired_gain_db,
            s.num_seeds
        );
    }
    out
}

fn write_file(path: PathBuf, contents: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, contents)?;
    files.push(path);
    Ok(())
}

/// Applies `options` to a loaded scenario file.
pub fn resolve(mut file: ScenarioFile, options: &RunOptions) -> Result<ScenarioFile> {
    if let Some(count) = options.seed_count {
        file.seeds = Seeds::Count(count);
    }
    if let Some(schemes) = &options.schemes {
        file.schemes = schemes.clone();
    }
    file.validate()?;
    Ok(file)
}

/// Runs every scheme and seed of a scenario and writes, into `output_dir`:
/// `report_<scheme>.json` (best seed), `pattern_<scheme>.csv` and
/// `summary.csv`.
pub fn run_scenario_file(file: &ScenarioFile, output_dir: &Path) -> Result<ScenarioOutcome> {
    file.validate()?;
    let scenario = file.scenario()?;
    let pattern = file.radiation_pattern()?;
    let geometry = file.geometry()?;
    let config = file.solver.to_config();
    let seeds = file.seeds.to_vec();

    let grouped = with_worker_pool(|| {
        solve_batch(
            &file.schemes,
            &seeds,
            &scenario,
            &pattern,
            &geometry,
            &config,
        )
    })?;

    fs::create_dir_all(output_dir)?;
    let mut files = Vec::new();
    let mut summaries = Vec::new();
    let mut best_reports = Vec::new();
    for (scheme, reports) in file.schemes.iter().zip(&grouped) {
        let best = best_report(reports).clone();
        let tag = scheme.as_str().to_ascii_lowercase();

        let record = ReportFile {
            report: best.clone(),
            seed_min_desired_gains: reports.iter().map(|r| r.min_desired_gain).collect(),
            config: file.clone(),
        };
        let json = serde_json::to_string_pretty(&record)?;
        write_file(
            output_dir.join(format!("report_{tag}.json")),
            &json,
            &mut files,
        )?;

        let samples = sample_pattern(
            &file.model_for(*scheme)?,
            &best,
            file.pattern_sample_step_deg,
        )?;
        write_file(
            output_dir.join(format!("pattern_{tag}.csv")),
            &pattern_csv(&samples),
            &mut files,
        )?;

        summaries.push(SchemeSummary {
            scheme: *scheme,
            best_seed: best.seed,
            min_desired_gain_linear: best.min_desired_gain,
            min_desired_gain_db: linear_to_db(best.min_desired_gain),
            fraction_of_full_gain: best.fraction_of_full_gain(),
            max_interference_gain_linear: best.max_interference_gain,
            mean_min_desired_gain_db: mean_db(reports),
            num_seeds: reports.len(),
        });
        best_reports.push(best);
    }
    write_file(
        output_dir.join("summary.csv"),
        &summary_csv(&summaries),
        &mut files,
    )?;

    Ok(ScenarioOutcome {
        summaries,
        best_reports,
        files,
    })
}

pub fn run_scenario(
    path: &Path,
    output_dir: &Path,
    options: &RunOptions,
) -> Result<ScenarioOutcome> {
    let file = resolve(ScenarioFile::load(path)?, options)?;
    run_scenario_file(&file, output_dir)
}

/// Scalar scenario field a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepField {
    NumAntennas,
    SpacingWavelengths,
    EtaMaxDb,
}

impl std::str::FromStr for SweepField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "num_antennas" => Ok(SweepField::NumAntennas),
            "spacing_wavelengths" => Ok(SweepField::SpacingWavelengths),
            "eta_max_db" => Ok(SweepField::EtaMaxDb),
            other => Err(Error::Schema(format!(
                "--field: unknown sweep field `{other}` (expected num_antennas, spacing_wavelengths or eta_max_db)"
            ))),
        }
    }
}

impl SweepField {
    fn apply(&self, file: &mut ScenarioFile, value: f64) -> Result<()> {
        match self {
            SweepField::NumAntennas => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(Error::Schema(format!(
                        "--values: num_antennas must be a positive integer, got {value}"
                    )));
                }
                file.num_antennas = value as usize;
            }
            SweepField::SpacingWavelengths => file.spacing_wavelengths = value,
            SweepField::EtaMaxDb => file.eta_max_db = value,
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub field: SweepField,
    pub values: Vec<f64>,
    /// Number of random scenarios per value. `None` reuses the file's
    /// directions with its seed list.
    pub random_scenarios: Option<usize>,
    pub base_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub sweep_value: f64,
    pub scheme: Scheme,
    pub mean_maxmin_gain_db: f64,
    /// Mean RA gain minus this scheme's, in dB; `None` when RA was not run.
    pub delta_vs_ra_db: Option<f64>,
}

/// Directions for random scenario `index`: the base file's K and L,
/// redrawn uniformly on [0°, 180°].
pub fn random_scenario(base: &ScenarioFile, base_seed: u64, index: usize) -> Result<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(base_seed, index as u64));
    loop {
        let desired: Vec<f64> = (0..base.desired_angles_deg.len())
            .map(|_| rng.gen_range(0.0..=180.0))
            .collect();
        let interference: Vec<f64> = (0..base.interference_angles_deg.len())
            .map(|_| rng.gen_range(0.0..=180.0))
            .collect();
        if let Ok(s) = Scenario::new(desired, interference, base.eta_max_db) {
            return Ok(s);
        }
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let delta = r.delta_vs_ra_db.map(|d| d.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.sweep_value, r.scheme, r.mean_maxmin_gain_db, delta
        );
    }
    out
}

/// Mean max-min gain (dB) per sweep value and scheme; writes `sweep.csv`.
pub fn run_sweep_file(
    base: &ScenarioFile,
    spec: &SweepSpec,
    output_dir: &Path,
) -> Result<Vec<SweepRow>> {
    base.validate()?;
    if spec.values.is_empty() {
        return Err(Error::Schema(
            "--values: at least one value is required".into(),
        ));
    }
    if spec.random_scenarios == Some(0) {
        return Err(Error::Schema("--scenarios: must be at least 1".into()));
    }

    let mut cells = Vec::new();
    for &value in &spec.values {
        let mut file = base.clone();
        spec.field.apply(&mut file, value)?;
        file.validate()?;
        cells.push((value, file));
    }

    // (cell, repetition) -> (scenario, seed)
    let repetitions: Vec<(Option<usize>, u64)> = match spec.random_scenarios {
        Some(m) => (0..m)
            .map(|j| (Some(j), derive_seed(spec.base_seed, 1_000_000 + j as u64)))
            .collect(),
        None => base.seeds.to_vec().into_iter().map(|s| (None, s)).collect(),
    };

    let mut jobs = Vec::new();
    for (c, (_, file)) in cells.iter().enumerate() {
        for (k, scheme) in file.schemes.iter().enumerate() {
            for &(index, seed) in &repetitions {
                jobs.push((c, k, *scheme, index, seed));
            }
        }
    }

    let gains: Vec<Result<f64>> = with_worker_pool(|| {
        jobs.par_iter()
            .map(|&(c, _, scheme, index, seed)| {
                let file = &cells[c].1;
                let scenario = match index {
                    Some(j) => random_scenario(file, spec.base_seed, j)?,
                    None => file.scenario()?,
                };
                let report = solve_scheme(
                    scheme,
                    &scenario,
                    &file.radiation_pattern()?,
                    &file.geometry()?,
                    &file.solver.to_config(),
                    seed,
                )?;
                Ok(linear_to_db(report.min_desired_gain))
            })
            .collect()
    });

    let mut sums = vec![vec![0.0; base.schemes.len()]; cells.len()];
    for (&(c, k, ..), gain) in jobs.iter().zip(gains) {
        sums[c][k] += gain?;
    }

    let reps = repetitions.len() as f64;
    let mut rows = Vec::new();
    for (c, (value, file)) in cells.iter().enumerate() {
        let means: Vec<f64> = sums[c].iter().map(|s| s / reps).collect();
        let ra = file
            .schemes
            .iter()
            .position(|s| *s == Scheme::Ra)
            .map(|k| means[k]);
        for (k, scheme) in file.schemes.iter().enumerate() {
            rows.push(SweepRow {
                sweep_value: *value,
                scheme: *scheme,
                mean_maxmin_gain_db: means[k],
                delta_vs_ra_db: ra.map(|r| r - means[k]),
            });
        }
    }

    fs::create_dir_all(output_dir)?;
    fs::write(output_dir.join("sweep.csv"), sweep_csv(&rows))?;
    Ok(rows)
}

pub fn run_sweep(path: &Path, spec: &SweepSpec, output_dir: &Path) -> Result<Vec<SweepRow>> {
    run_sweep_file(&ScenarioFile::load(path)?, spec, output_dir)
}

/// Reads a report written by [`run_scenario`] and samples its pattern.
pub fn pattern_from_report(
    scenario_path: &Path,
    report_path: &Path,
    step_deg: Option<f64>,
) -> Result<Vec<PatternSample>> {
    let file = ScenarioFile::load(scenario_path)?;
    let text = read_text(report_path)?;
    let report: RunReport = serde_json::from_str(&text)?;
    if report.final_state.num_antennas() != file.num_antennas {
        return Err(Error::Schema(format!(
            "num_antennas: scenario has {} but the report state has {}",
            file.num_antennas,
            report.final_state.num_antennas()
        )));
    }
    sample_pattern(
        &file.model_for(report.scheme)?,
        &report,
        step_deg.unwrap_or(file.pattern_sample_step_deg),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_takes_defaults() {
        let file = ScenarioFile::from_toml("desired_angles_deg = [90.0]").unwrap();
        assert_eq!(file.num_antennas, 15);
        assert_eq!(file.spacing_wavelengths, 0.5);
        assert_eq!(file.eta_max_db, -10.0);
        assert_eq!(file.schemes, Scheme::ALL.to_vec());
        assert_eq!(file.seeds.to_vec(), vec![0]);
        assert_eq!(file.solver.to_config(), AoConfig::default());
    }

    #[test]
    fn unknown_key_is_named() {
        let err =
            ScenarioFile::from_toml("desired_angles_deg = [90.0]\nnum_antenas = 4").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("num_antenas"), "{err}");

        let err = ScenarioFile::from_toml("desired_angles_deg = [90.0]\n[solver.pso]\nswarm = 3")
            .unwrap_err();
        assert!(err.to_string().contains("swarm"), "{err}");
    }

    #[test]
    fn out_of_range_angle_is_rejected() {
        let err = ScenarioFile::from_toml("desired_angles_deg = [200.0]").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("desired_angles_deg"), "{err}");
    }

    #[test]
    fn seed_forms() {
        let f = ScenarioFile::from_toml("desired_angles_deg = [90.0]\nseeds = 3").unwrap();
        assert_eq!(f.seeds.to_vec(), vec![0, 1, 2]);
        let f = ScenarioFile::from_toml("desired_angles_deg = [90.0]\nseeds = [5, 9]").unwrap();
        assert_eq!(f.seeds.to_vec(), vec![5, 9]);
        assert!(ScenarioFile::from_toml("desired_angles_deg = [90.0]\nseeds = 0").is_err());
        assert!(
            ScenarioFile::from_toml("desired_angles_deg = [90.0]\n[solver.pso]\nrng_seed = 4")
                .is_err()
        );
    }

    #[test]
    fn pattern_grid_covers_endpoints() {
        let file =
            ScenarioFile::from_toml("desired_angles_deg = [90.0]\nnum_antennas = 2").unwrap();
        let report = solve_scheme(
            Scheme::Foa,
            &file.scenario().unwrap(),
            &file.radiation_pattern().unwrap(),
            &file.geometry().unwrap(),
            &AoConfig::default(),
            0,
        )
        .unwrap();
        let samples = sample_pattern(&file.model_for(Scheme::Foa).unwrap(), &report, 0.1).unwrap();
        assert_eq!(samples.len(), 1801);
        assert_eq!(samples[0].psi_deg, 0.0);
        assert_eq!(samples[900].psi_deg, 90.0);
        assert_eq!(samples[1800].psi_deg, 180.0);
    }

    #[test]
    fn random_scenarios_keep_sizes() {
        let file = ScenarioFile::from_toml(
            "desired_angles_deg = [10.0, 20.0]\ninterference_angles_deg = [30.0, 40.0, 50.0]",
        )
        .unwrap();
        let s = random_scenario(&file, 7, 3).unwrap();
        assert_eq!(s.desired_angles_deg.len(), 2);
        assert_eq!(s.interference_angles_deg.len(), 3);
        assert_eq!(s, random_scenario(&file, 7, 3).unwrap());
        assert_ne!(s, random_scenario(&file, 7, 4).unwrap());
    }

    #[test]
    fn sweep_field_parsing() {
        assert_eq!(
            "num_antennas".parse::<SweepField>().unwrap(),
            SweepField::NumAntennas
        );
        assert!("N".parse::<SweepField>().is_err());
    }
}
