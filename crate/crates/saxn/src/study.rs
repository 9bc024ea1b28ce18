//! Orchestrated studies: sigma-shrinkage grids, symbol-distribution
//! chi-squared grids, the ACF-sum regression, and normality sweeps, plus
//! the declarative config and run-directory writer behind the CLI.
//!
//! Studies isolate failures per cell: a degenerate or unreadable series
//! shows up as an explicit error cell instead of aborting the grid. Runs
//! are deterministic: per-series seeds derive from the root seed and the
//! series name, results merge in loop order over sorted inputs, and all
//! artifacts go through the diff-stable emitters.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::emit::{escape_csv, format_sig, Report};
use crate::io::{
    acf_sigma_plot_csv, read_series, write_report, write_text_file, DatasetSpec, ReportFormat,
};
use crate::sax::{breakpoints, renormalize_paa, should_renormalize, symbolize, RenormPolicy};
use crate::series::{paa_with_width, z_normalize, TimeSeries};
use crate::stats::{
    acf_sum, chi_squared_gof, jarque_bera, ols_fit, pearson_corr, GofReport, NormalityReport,
    RegressionFit,
};
use crate::synth::{sinusoid, sinusoid_with_noise, white_noise, NoiseParams, SinusoidParams};

/// Seed used when a config or CLI invocation does not give one.
pub const DEFAULT_SEED: u64 = 42;

/// A study cell that either produced a value or an explanation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellOutcome<T> {
    Ok(T),
    Err { error: String },
}

impl<T> CellOutcome<T> {
    pub fn from_result(result: Result<T>) -> Self {
        match result {
            Ok(value) => CellOutcome::Ok(value),
            Err(e) => CellOutcome::Err {
                error: e.to_string(),
            },
        }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            CellOutcome::Ok(value) => Some(value),
            CellOutcome::Err { .. } => None,
        }
    }
}

/// Post-PAA sigma per (series, width): the shrinkage table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaTable {
    pub widths: Vec<usize>,
    pub rows: Vec<SigmaRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaRow {
    pub name: String,
    /// Parallel to `SigmaTable::widths`.
    pub sigmas: Vec<CellOutcome<f64>>,
    /// Tail samples dropped per width to reach a divisible length
    /// (parallel to `SigmaTable::widths`, 0 when already divisible).
    pub dropped: Vec<usize>,
}

impl SigmaTable {
    pub fn get(&self, name: &str, width: usize) -> Option<&CellOutcome<f64>> {
        let col = self.widths.iter().position(|&w| w == width)?;
        self.rows
            .iter()
            .find(|r| r.name == name)
            .and_then(|r| r.sigmas.get(col))
    }
}

impl Report for SigmaTable {
    /// Wide layout: one row per series, one sigma column per width.
    fn to_csv(&self) -> String {
        let mut out = String::from("series");
        for w in &self.widths {
            out.push_str(&format!(",{w}"));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&escape_csv(&row.name));
            for cell in &row.sigmas {
                match cell {
                    CellOutcome::Ok(sigma) => out.push_str(&format!(",{}", format_sig(*sigma))),
                    CellOutcome::Err { error } => out.push_str(&format!(",{}", escape_csv(error))),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Which side of the re-normalization fork a chi-squared cell came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SaxVariant {
    /// Canonical SAX: symbols straight from the PAA means.
    #[serde(rename = "SAX")]
    Canonical,
    /// Means re-normalized to sigma 1 before symbolization.
    #[serde(rename = "SAXn")]
    Renormalized,
}

/// Uniformity test results over (series, width, cardinality, variant).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSqGrid {
    pub cells: Vec<ChiSqCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSqCell {
    pub series: String,
    pub w: usize,
    pub k: usize,
    pub variant: SaxVariant,
    pub report: CellOutcome<GofReport>,
}

impl ChiSqGrid {
    pub fn get(&self, series: &str, w: usize, k: usize, variant: SaxVariant) -> Option<&ChiSqCell> {
        self.cells
            .iter()
            .find(|c| c.series == series && c.w == w && c.k == k && c.variant == variant)
    }
}

impl Report for ChiSqGrid {
    /// Long layout, one row per cell.
    fn to_csv(&self) -> String {
        let mut out = String::from(
            "series,w,k,variant,abs_dev_pct,statistic,dof,p_value,reject_at_5pct,error\n",
        );
        for cell in &self.cells {
            let variant = match cell.variant {
                SaxVariant::Canonical => "SAX",
                SaxVariant::Renormalized => "SAXn",
            };
            match &cell.report {
                CellOutcome::Ok(r) => out.push_str(&format!(
                    "{},{},{},{variant},{},{},{},{},{},\n",
                    escape_csv(&cell.series),
                    cell.w,
                    cell.k,
                    format_sig(r.abs_dev_pct),
                    format_sig(r.statistic),
                    r.dof,
                    format_sig(r.p_value),
                    r.reject_at_5pct,
                )),
                CellOutcome::Err { error } => out.push_str(&format!(
                    "{},{},{},{variant},,,,,,{}\n",
                    escape_csv(&cell.series),
                    cell.w,
                    cell.k,
                    escape_csv(error),
                )),
            }
        }
        out
    }
}

/// Regression of post-PAA sigma on the lag-1..30 ACF sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcfRegressionStudy {
    pub width: usize,
    pub correlation: f64,
    pub fit: RegressionFit,
    pub rows: Vec<AcfSigmaRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcfSigmaRow {
    pub series_name: String,
    pub acf_sum: f64,
    pub post_paa_sigma: f64,
}

impl AcfRegressionStudy {
    /// Rows in the shape the scatter-plot emitter takes.
    pub fn plot_rows(&self) -> Vec<(String, f64, f64)> {
        self.rows
            .iter()
            .map(|r| (r.series_name.clone(), r.acf_sum, r.post_paa_sigma))
            .collect()
    }
}

impl Report for AcfRegressionStudy {}

/// Jarque-Bera reports per series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityStudy {
    pub rows: Vec<NormalityRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityRow {
    pub name: String,
    pub report: CellOutcome<NormalityReport>,
}

impl NormalityStudy {
    pub fn get(&self, name: &str) -> Option<&CellOutcome<NormalityReport>> {
        self.rows.iter().find(|r| r.name == name).map(|r| &r.report)
    }
}

impl Report for NormalityStudy {}

/// Population sigma of the PAA means of the z-normalized series, after
/// truncating the tail to a multiple of `width`.
pub fn post_paa_sigma(series: &TimeSeries, width: usize) -> Result<f64> {
    let truncated = series.truncated_to_multiple(width)?;
    let (normalized, _) = z_normalize(&truncated)?;
    Ok(paa_with_width(&normalized, width)?.post_stats().sigma)
}

/// Runs the sigma-shrinkage grid over every (series, width).
pub fn run_sigma_study(series_set: &[TimeSeries], widths: &[usize]) -> SigmaTable {
    let rows = series_set
        .iter()
        .map(|series| SigmaRow {
            name: series.name().to_string(),
            sigmas: widths
                .iter()
                .map(|&w| CellOutcome::from_result(post_paa_sigma(series, w)))
                .collect(),
            dropped: widths
                .iter()
                .map(|&w| if w == 0 { 0 } else { series.len() % w })
                .collect(),
        })
        .collect();
    SigmaTable {
        widths: widths.to_vec(),
        rows,
    }
}

/// Runs the symbol-distribution uniformity grid.
///
/// For every (series, width) the PAA vector is computed once; each policy
/// then decides whether it is re-normalized before symbolization, so the
/// SAX / SAXn cells of a pair differ in exactly that one step. Policies
/// map to the variant label by what they did: a cell whose policy fired
/// is `SAXn`, otherwise `SAX`.
pub fn run_symbol_distribution_study(
    series_set: &[TimeSeries],
    widths: &[usize],
    cardinalities: &[usize],
    policies: &[RenormPolicy],
) -> ChiSqGrid {
    let mut cells = Vec::new();
    for series in series_set {
        for &w in widths {
            let prepared = series
                .truncated_to_multiple(w)
                .and_then(|t| z_normalize(&t).map(|(z, _)| z))
                .and_then(|z| paa_with_width(&z, w));
            for &k in cardinalities {
                for &policy in policies {
                    let cell = match &prepared {
                        Ok(vector) => {
                            let fire = should_renormalize(vector, policy);
                            let variant = if fire {
                                SaxVariant::Renormalized
                            } else {
                                SaxVariant::Canonical
                            };
                            let report = CellOutcome::from_result((|| {
                                let table = breakpoints(k)?;
                                let vector = if fire {
                                    renormalize_paa(vector)?
                                } else {
                                    vector.clone()
                                };
                                let word = symbolize(&vector, &table);
                                chi_squared_gof(&word.symbol_counts(), k)
                            })());
                            ChiSqCell {
                                series: series.name().to_string(),
                                w,
                                k,
                                variant,
                                report,
                            }
                        }
                        Err(e) => ChiSqCell {
                            series: series.name().to_string(),
                            w,
                            k,
                            variant: match policy {
                                RenormPolicy::Always => SaxVariant::Renormalized,
                                _ => SaxVariant::Canonical,
                            },
                            report: CellOutcome::Err {
                                error: e.to_string(),
                            },
                        },
                    };
                    cells.push(cell);
                }
            }
        }
    }
    ChiSqGrid { cells }
}

/// Regresses post-PAA sigma at `width` on the ACF sum per series.
///
/// Unlike the grids this propagates errors: a regression over partial
/// data would silently change the fitted numbers.
pub fn run_acf_regression_study(
    series_set: &[TimeSeries],
    width: usize,
) -> Result<AcfRegressionStudy> {
    let mut rows = Vec::with_capacity(series_set.len());
    for series in series_set {
        let truncated = series.truncated_to_multiple(width)?;
        rows.push(AcfSigmaRow {
            series_name: series.name().to_string(),
            acf_sum: acf_sum(&truncated)?,
            post_paa_sigma: post_paa_sigma(series, width)?,
        });
    }
    let x: Vec<f64> = rows.iter().map(|r| r.acf_sum).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.post_paa_sigma).collect();
    let fit = ols_fit(&x, &y)?;
    let correlation = pearson_corr(&x, &y)?;
    Ok(AcfRegressionStudy {
        width,
        correlation,
        fit,
        rows,
    })
}

/// Jarque-Bera per series, errors isolated per row.
pub fn run_normality_study(series_set: &[TimeSeries]) -> NormalityStudy {
    NormalityStudy {
        rows: series_set
            .iter()
            .map(|series| NormalityRow {
                name: series.name().to_string(),
                report: CellOutcome::from_result(jarque_bera(series)),
            })
            .collect(),
    }
}

// --- declarative configuration -------------------------------------------

/// One synthetic series in a study config. Noise seeds derive from the
/// config root seed and the series name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SyntheticSpec {
    WhiteNoise {
        name: String,
        sigma: f64,
        length: usize,
    },
    Sinusoid {
        name: String,
        amplitude: f64,
        frequency: f64,
        phase_factor: f64,
        length: usize,
    },
    SinusoidWithNoise {
        name: String,
        amplitude: f64,
        frequency: f64,
        phase_factor: f64,
        noise_sigma: f64,
        length: usize,
    },
}

impl SyntheticSpec {
    pub fn name(&self) -> &str {
        match self {
            SyntheticSpec::WhiteNoise { name, .. }
            | SyntheticSpec::Sinusoid { name, .. }
            | SyntheticSpec::SinusoidWithNoise { name, .. } => name,
        }
    }

    pub fn generate(&self, root_seed: u64) -> Result<TimeSeries> {
        let seed = derive_seed(root_seed, self.name());
        let series = match self {
            SyntheticSpec::WhiteNoise { sigma, length, .. } => white_noise(&NoiseParams {
                sigma: *sigma,
                seed,
                length: *length,
            })?,
            SyntheticSpec::Sinusoid {
                amplitude,
                frequency,
                phase_factor,
                length,
                ..
            } => sinusoid(&SinusoidParams {
                amplitude: *amplitude,
                frequency: *frequency,
                phase_factor: *phase_factor,
                length: *length,
            })?,
            SyntheticSpec::SinusoidWithNoise {
                amplitude,
                frequency,
                phase_factor,
                noise_sigma,
                length,
                ..
            } => sinusoid_with_noise(
                &SinusoidParams {
                    amplitude: *amplitude,
                    frequency: *frequency,
                    phase_factor: *phase_factor,
                    length: *length,
                },
                &NoiseParams {
                    sigma: *noise_sigma,
                    seed,
                    length: *length,
                },
            )?,
        };
        Ok(series.renamed(self.name()))
    }
}

/// Studies a config can request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StudyKind {
    Sigma,
    Chisq,
    AcfRegression,
    Normality,
}

/// Declarative study configuration, read from JSON by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub widths: Vec<usize>,
    #[serde(default = "default_cardinalities")]
    pub cardinalities: Vec<usize>,
    #[serde(default = "default_policies")]
    pub policies: Vec<RenormPolicy>,
    #[serde(default = "default_acf_width")]
    pub acf_width: usize,
    pub studies: Vec<StudyKind>,
    #[serde(default)]
    pub synthetic: Vec<SyntheticSpec>,
    #[serde(default)]
    pub datasets: Vec<DatasetSpec>,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_cardinalities() -> Vec<usize> {
    vec![5, 10]
}

fn default_policies() -> Vec<RenormPolicy> {
    vec![RenormPolicy::Never, RenormPolicy::Always]
}

fn default_acf_width() -> usize {
    20
}

impl StudyConfig {
    pub fn from_json(text: &str) -> Result<StudyConfig> {
        let config: StudyConfig = serde_json::from_str(text).map_err(|e| Error::InvalidConfig {
            context: format!("study config: {e}"),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |context: String| Err(Error::InvalidConfig { context });
        if self.studies.is_empty() {
            return fail("no studies requested".into());
        }
        if self.widths.is_empty() {
            return fail("widths list is empty".into());
        }
        if self.widths.contains(&0) {
            return fail("width 0 is invalid".into());
        }
        if self.acf_width == 0 {
            return fail("acf_width 0 is invalid".into());
        }
        if self.synthetic.is_empty() && self.datasets.is_empty() {
            return fail("no series: both synthetic and datasets are empty".into());
        }
        if self.studies.contains(&StudyKind::Chisq) {
            if self.cardinalities.is_empty() {
                return fail("chisq study requested with no cardinalities".into());
            }
            if let Some(&k) = self.cardinalities.iter().find(|&&k| !(2..=26).contains(&k)) {
                return fail(format!("cardinality {k} outside 2..=26"));
            }
            if self.policies.is_empty() {
                return fail("chisq study requested with no policies".into());
            }
            for policy in &self.policies {
                policy.validate()?;
            }
        }
        let mut names = BTreeSet::new();
        for name in self
            .synthetic
            .iter()
            .map(|s| s.name().to_string())
            .chain(self.datasets.iter().map(|d| d.series_name()))
        {
            if name.is_empty() {
                return fail("series with empty name".into());
            }
            if !names.insert(name.clone()) {
                return fail(format!("duplicate series name {name:?}"));
            }
        }
        Ok(())
    }
}

/// Deterministic per-series seed: splitmix64 over the root seed xor an
/// FNV-1a hash of the label.
pub fn derive_seed(root: u64, label: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in label.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(root ^ hash)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

// --- presets ---------------------------------------------------------------

pub fn preset_names() -> &'static [&'static str] {
    &["synthetic", "real-world", "chisq-synthetic"]
}

/// Built-in configs; `None` for an unknown name.
pub fn preset(name: &str) -> Option<StudyConfig> {
    match name {
        "synthetic" => Some(synthetic_preset()),
        "real-world" => Some(real_world_preset()),
        "chisq-synthetic" => Some(chisq_synthetic_preset()),
        _ => None,
    }
}

/// The three reference generators plus nine noise/sinusoid mixtures that
/// sweep the autocorrelation range, n = 10000 each.
fn synthetic_preset() -> StudyConfig {
    let n = 10_000;
    let mut synthetic = vec![
        SyntheticSpec::WhiteNoise {
            name: "random".into(),
            sigma: 1.0,
            length: n,
        },
        SyntheticSpec::Sinusoid {
            name: "sin wave".into(),
            amplitude: 2.0,
            frequency: 0.002,
            phase_factor: 0.6,
            length: n,
        },
        SyntheticSpec::SinusoidWithNoise {
            name: "sin wave with noise".into(),
            amplitude: 2.0,
            frequency: 0.002,
            phase_factor: 0.6,
            noise_sigma: 2.0,
            length: n,
        },
    ];
    for noise_sigma in [0.1, 0.3, 0.5, 0.8, 1.2, 1.8, 2.8, 4.0, 6.0] {
        synthetic.push(SyntheticSpec::SinusoidWithNoise {
            name: format!("mix_{noise_sigma:.1}"),
            amplitude: 2.0,
            frequency: 0.002,
            phase_factor: 0.6,
            noise_sigma,
            length: n,
        });
    }
    StudyConfig {
        seed: DEFAULT_SEED,
        widths: vec![1, 2, 5, 10, 20],
        cardinalities: vec![5, 10],
        policies: vec![RenormPolicy::Never, RenormPolicy::Always],
        acf_width: 20,
        studies: vec![
            StudyKind::Sigma,
            StudyKind::Chisq,
            StudyKind::AcfRegression,
            StudyKind::Normality,
        ],
        synthetic,
        datasets: vec![],
    }
}

/// Twelve user-supplied files under datasets/; see datasets/README.md for
/// the expected layout. Missing files are skipped, not fatal.
fn real_world_preset() -> StudyConfig {
    use crate::io::ColumnSelector::{Index, Name};
    let spec = |path: &str, column, name: &str| {
        DatasetSpec::new(format!("datasets/{path}"))
            .with_column(column)
            .with_name(name)
    };
    StudyConfig {
        seed: DEFAULT_SEED,
        widths: vec![2, 5, 10, 20],
        cardinalities: vec![5, 10],
        policies: vec![RenormPolicy::Never, RenormPolicy::Always],
        acf_width: 20,
        studies: vec![
            StudyKind::Sigma,
            StudyKind::Chisq,
            StudyKind::AcfRegression,
            StudyKind::Normality,
        ],
        synthetic: vec![],
        datasets: vec![
            spec("darwin.dat", Index(0), "darwin"),
            spec("flutter.dat", Index(0), "flutter_1"),
            spec("flutter.dat", Index(1), "flutter_2"),
            spec("robot_arm.dat", Index(0), "robot_1"),
            spec("robot_arm.dat", Index(1), "robot_2"),
            spec("sunspot.dat", Index(0), "sunspot"),
            spec("EEG_heart_rate.dat", Index(0), "heart"),
            spec("water.dat", Name("aprecip".into()), "water_1"),
            spec("water.dat", Name("discharg".into()), "water_2"),
            spec("water.dat", Index(2), "water_3"),
            spec("spot_exrates.dat", Index(0), "fx_rate"),
            spec("balloon.dat", Index(0), "balloon"),
        ],
    }
}

/// Seeded standard Gaussian only: the minimal uniformity-restoration grid.
fn chisq_synthetic_preset() -> StudyConfig {
    StudyConfig {
        seed: DEFAULT_SEED,
        widths: vec![5, 10, 20],
        cardinalities: vec![5, 10],
        policies: vec![RenormPolicy::Never, RenormPolicy::Always],
        acf_width: 20,
        studies: vec![StudyKind::Chisq],
        synthetic: vec![SyntheticSpec::WhiteNoise {
            name: "random".into(),
            sigma: 1.0,
            length: 10_000,
        }],
        datasets: vec![],
    }
}

// --- run directory ----------------------------------------------------------

/// A dataset the run could not load, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedDataset {
    pub name: String,
    pub path: String,
    pub reason: String,
}

/// What a run produced; written as manifest.json in the run directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub root_seed: u64,
    /// Artifact file names in the run directory, sorted.
    pub files: Vec<String>,
    /// Series that entered the studies, in study order.
    pub series: Vec<String>,
    pub skipped: Vec<SkippedDataset>,
}

impl Report for RunManifest {}
impl Report for StudyConfig {}
impl Report for Vec<SkippedDataset> {}

/// Executes every study in the config and writes the artifacts plus a
/// manifest into `out_dir`. Byte-identical for identical configs.
pub fn run_study(config: &StudyConfig, out_dir: &Path) -> Result<RunManifest> {
    config.validate()?;
    std::fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.display().to_string(),
        source,
    })?;

    let mut series_set: Vec<TimeSeries> = Vec::new();
    let mut skipped: Vec<SkippedDataset> = Vec::new();
    for spec in &config.synthetic {
        series_set.push(spec.generate(config.seed)?);
    }
    for spec in &config.datasets {
        match read_series(spec) {
            Ok(series) => series_set.push(series),
            Err(e) => skipped.push(SkippedDataset {
                name: spec.series_name(),
                path: spec.path.display().to_string(),
                reason: e.to_string(),
            }),
        }
    }

    let mut files: Vec<String> = Vec::new();
    let mut emit = |name: &str, text: String| -> Result<()> {
        write_text_file(&out_dir.join(name), &text)?;
        files.push(name.to_string());
        Ok(())
    };

    let mut seen = BTreeSet::new();
    for kind in config.studies.iter().filter(|k| seen.insert(**k)) {
        match kind {
            StudyKind::Sigma => {
                let table = run_sigma_study(&series_set, &config.widths);
                emit("sigma_table.json", crate::io::report_json(&table)?)?;
                emit("sigma_table.csv", table.to_csv())?;
            }
            StudyKind::Chisq => {
                let grid = run_symbol_distribution_study(
                    &series_set,
                    &config.widths,
                    &config.cardinalities,
                    &config.policies,
                );
                emit("chisq_grid.json", crate::io::report_json(&grid)?)?;
                emit("chisq_grid.csv", grid.to_csv())?;
            }
            StudyKind::AcfRegression => {
                let outcome = CellOutcome::from_result(run_acf_regression_study(
                    &series_set,
                    config.acf_width,
                ));
                emit("acf_regression.json", crate::io::report_json(&outcome)?)?;
                if let CellOutcome::Ok(study) = &outcome {
                    emit("fig_acf_sigma.csv", acf_sigma_plot_csv(&study.plot_rows()))?;
                }
            }
            StudyKind::Normality => {
                let study = run_normality_study(&series_set);
                emit("normality.json", crate::io::report_json(&study)?)?;
            }
        }
    }

    if !skipped.is_empty() {
        emit("skipped.json", crate::io::report_json(&skipped)?)?;
    }
    emit("config.json", crate::io::report_json(config)?)?;

    files.sort();
    let manifest = RunManifest {
        root_seed: config.seed,
        files,
        series: series_set.iter().map(|s| s.name().to_string()).collect(),
        skipped,
    };
    write_report(
        &manifest,
        &out_dir.join("manifest.json"),
        ReportFormat::Json,
    )?;
    Ok(manifest)
}
