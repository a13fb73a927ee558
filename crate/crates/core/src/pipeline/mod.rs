//! End-to-end pipeline orchestration: data acquisition, conditioning,
//! augmentation, PCA, the optional quantum feature branch, classifier
//! training, evaluation, and artifact emission.
//!
//! A run is a pure function of its [`PipelineConfig`] apart from wall-clock
//! timings: every random choice (splitting, circuit angles, synthetic data,
//! cross-validation, forests, SMO partner picks) derives from the config
//! seed, and output files are rendered with round-trip float formatting.
//! Artifacts are built fully in memory and written in one final pass; if
//! any write fails, the files already written by this run are removed.

mod ingest;
mod persist;
mod report;
mod synth;

pub use ingest::{load_directory, load_png, save_png, IngestResult};
pub use persist::{ModelBundle, BUNDLE_VERSION};
pub use report::{
    AblationSummary, BranchReport, ComparisonRow, DatasetSummary, EvalReport,
    ExtractionTimingRow, ModelReport, PcaSummary,
};
pub use synth::{generate as generate_synthetic, SyntheticSpec};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifiers::{train, Dataset, ModelSpec, TrainedModel};
use crate::fusion::{fuse, Standardizer, BRANCH_WIDTH};
use crate::image::{augment, condition, to_raw_vector, GrayImage, PreprocessConfig};
use crate::metrics::cv::{k_fold_cv, monte_carlo_cv};
use crate::metrics::{
    pr_curve, roc_curve, scores, time_block, ConfusionMatrix, TimingStats,
};
use crate::pca::{explained_variance_ratio, pca_fit, pca_transform, PcaModel};
use crate::quantum::{extract_quantum_features, CircuitSpec, ObservableSet};
use crate::seed::{derive_seed, stream};
use crate::split::stratified_split;

#[derive(Debug, Error)]
pub enum PipelineError {
    /// The configuration is self-inconsistent or out of range.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// The dataset directory is missing, misshapen, or unusable.
    #[error("ingestion failed: {0}")]
    Ingest(String),
    /// The data itself cannot support the requested run.
    #[error("data error: {0}")]
    Data(String),
    /// A persisted artifact declares an unsupported format version.
    #[error("unsupported bundle version {found}, expected {expected}")]
    Version { found: u64, expected: u64 },
    /// A persisted artifact cannot be parsed.
    #[error("format error: {0}")]
    Format(String),
    /// A processing stage failed mid-run.
    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PipelineError {
    /// Process exit code: 1 for configuration/format problems, 2 for data
    /// problems, 3 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) | PipelineError::Version { .. } | PipelineError::Format(_) => 1,
            PipelineError::Ingest(_) | PipelineError::Data(_) => 2,
            PipelineError::Stage { .. } | PipelineError::Io(_) => 3,
        }
    }
}

fn stage_err(stage: &str, source: impl std::error::Error + Send + Sync + 'static) -> PipelineError {
    PipelineError::Stage {
        stage: stage.to_string(),
        source: Box::new(source),
    }
}

/// Which feature branch(es) to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Hybrid,
    Both,
}

impl Default for Mode {
    fn default() -> Self {
        Mode::Both
    }
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Hybrid => "hybrid",
            Mode::Both => "both",
        }
    }

    fn branches(&self) -> Vec<BranchKind> {
        match self {
            Mode::Classical => vec![BranchKind::Classical],
            Mode::Hybrid => vec![BranchKind::Hybrid],
            Mode::Both => vec![BranchKind::Classical, BranchKind::Hybrid],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BranchKind {
    Classical,
    Hybrid,
}

impl BranchKind {
    fn name(&self) -> &'static str {
        match self {
            BranchKind::Classical => "classical",
            BranchKind::Hybrid => "hybrid",
        }
    }
}

/// Where the images come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum DataSource {
    /// Generated in-process; see [`SyntheticSpec`].
    Synthetic(SyntheticSpec),
    /// Loaded from a directory of PNGs; see [`load_directory`].
    Directory { path: PathBuf },
}

/// Train/val/test proportions for the seeded stratified split (ignored when
/// the dataset directory is already pre-split).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SplitFractions {
    pub train: f64,
    pub val: f64,
    pub test: f64,
}

impl Default for SplitFractions {
    fn default() -> Self {
        Self {
            train: 0.8,
            val: 0.1,
            test: 0.1,
        }
    }
}

impl SplitFractions {
    fn validate(&self) -> Result<(), PipelineError> {
        if !(self.train > 0.0 && self.val > 0.0 && self.test > 0.0) {
            return Err(PipelineError::Config(format!(
                "split fractions must all be positive, got {}/{}/{}",
                self.train, self.val, self.test
            )));
        }
        let sum = self.train + self.val + self.test;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(PipelineError::Config(format!(
                "split fractions must sum to 1, got {sum}"
            )));
        }
        Ok(())
    }
}

/// Cross-validation settings applied to every trained model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CvConfig {
    /// Monte Carlo splits (ignored when `k_fold` is set).
    pub n_splits: usize,
    /// Holdout fraction per Monte Carlo split.
    pub test_fraction: f64,
    /// Switch to stratified k-fold with this many folds.
    pub k_fold: Option<usize>,
}

impl Default for CvConfig {
    fn default() -> Self {
        Self {
            n_splits: 10,
            test_fraction: 0.1,
            k_fold: None,
        }
    }
}

/// Full description of a pipeline run.  Every field except `dataset` has a
/// default, so a minimal JSON config is just the data source.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub dataset: DataSource,
    #[serde(default)]
    pub split: SplitFractions,
    #[serde(default)]
    pub preprocess: PreprocessConfig,
    /// Principal components kept for the hybrid branch (and the classical
    /// branch unless `classical_k` overrides it).
    #[serde(default = "default_pca_k")]
    pub pca_k: usize,
    /// Optional different component count for the classical branch.
    #[serde(default)]
    pub classical_k: Option<usize>,
    #[serde(default)]
    pub circuit: CircuitSpec,
    #[serde(default = "default_observables")]
    pub observables: ObservableSet,
    #[serde(default = "ModelSpec::all_defaults")]
    pub models: Vec<ModelSpec>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    /// Standardise features to zero mean and unit variance on train.
    #[serde(default = "default_true")]
    pub standardize: bool,
    #[serde(default)]
    pub cv: CvConfig,
    /// Repetitions of the feature-extraction timing measurement.
    #[serde(default = "default_timing_repeats")]
    pub timing_repeats: usize,
}

fn default_pca_k() -> usize {
    BRANCH_WIDTH
}
fn default_observables() -> ObservableSet {
    ObservableSet::ring_default(4)
}
fn default_seed() -> u64 {
    42
}
fn default_out_dir() -> PathBuf {
    PathBuf::from("qfuse_out")
}
fn default_true() -> bool {
    true
}
fn default_timing_repeats() -> usize {
    5
}

impl PipelineConfig {
    pub fn from_json(bytes: &[u8]) -> Result<Self, PipelineError> {
        serde_json::from_slice(bytes)
            .map_err(|e| PipelineError::Config(format!("cannot parse config: {e}")))
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if let DataSource::Synthetic(spec) = &self.dataset {
            spec.validate()?;
        }
        self.split.validate()?;
        self.preprocess
            .validate()
            .map_err(|e| PipelineError::Config(e.to_string()))?;
        self.circuit
            .validate()
            .map_err(|e| PipelineError::Config(e.to_string()))?;
        self.observables
            .validate(self.circuit.n_qubits)
            .map_err(|e| PipelineError::Config(e.to_string()))?;
        if self.pca_k == 0 {
            return Err(PipelineError::Config("pca_k must be at least 1".into()));
        }
        if self.classical_k == Some(0) {
            return Err(PipelineError::Config("classical_k must be at least 1".into()));
        }
        if self.models.is_empty() {
            return Err(PipelineError::Config("at least one model is required".into()));
        }
        for (i, a) in self.models.iter().enumerate() {
            if self.models[..i].iter().any(|b| b.kind() == a.kind()) {
                return Err(PipelineError::Config(format!(
                    "duplicate model kind `{}`: artifact names are keyed by kind",
                    a.kind()
                )));
            }
        }
        if self.mode != Mode::Classical {
            if self.pca_k != BRANCH_WIDTH {
                return Err(PipelineError::Config(format!(
                    "the hybrid branch fuses exactly {BRANCH_WIDTH} principal components, got pca_k = {}",
                    self.pca_k
                )));
            }
            if self.observables.len() != BRANCH_WIDTH {
                return Err(PipelineError::Config(format!(
                    "the hybrid branch fuses exactly {BRANCH_WIDTH} observables, got {}",
                    self.observables.len()
                )));
            }
        }
        if self.cv.n_splits == 0 {
            return Err(PipelineError::Config("cv.n_splits must be at least 1".into()));
        }
        if !(self.cv.test_fraction > 0.0 && self.cv.test_fraction < 1.0) {
            return Err(PipelineError::Config(
                "cv.test_fraction must lie strictly between 0 and 1".into(),
            ));
        }
        if let Some(k) = self.cv.k_fold {
            if k < 2 {
                return Err(PipelineError::Config("cv.k_fold must be at least 2".into()));
            }
        }
        if self.timing_repeats < 5 {
            return Err(PipelineError::Config(format!(
                "timing_repeats must be at least 5 for a usable spread, got {}",
                self.timing_repeats
            )));
        }
        Ok(())
    }
}

/// What [`run`] produced: the parsed report plus the relative paths written
/// under `out_dir`.
#[derive(Debug)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub report: EvalReport,
}

/// Per-branch working state assembled before model training.
struct BranchData {
    kind: BranchKind,
    pca: PcaModel,
    pca_width: usize,
    train: Vec<Vec<f64>>,
    val: Vec<Vec<f64>>,
    test: Vec<Vec<f64>>,
    standardizer: Option<Standardizer>,
    degenerate_dims: Vec<usize>,
}

/// Executes the full pipeline and writes all artifacts under
/// `config.out_dir`.
pub fn run(config: &PipelineConfig) -> Result<RunSummary, PipelineError> {
    config.validate()?;

    // Acquisition.
    let (images, labels, skipped, pre_split) = match &config.dataset {
        DataSource::Synthetic(spec) => {
            let (images, labels) = synth::generate(spec, derive_seed(config.seed, stream::SYNTH))?;
            (images, labels, 0, None)
        }
        DataSource::Directory { path } => {
            let r = ingest::load_directory(path)?;
            (r.images, r.labels, r.skipped, r.pre_split)
        }
    };
    let positives = labels.iter().filter(|&&l| l == 1).count();
    if positives == 0 || positives == labels.len() {
        return Err(PipelineError::Data(format!(
            "both classes are required, got {positives} positives in {} images",
            labels.len()
        )));
    }

    // Partition.
    let [train_idx, val_idx, test_idx] = match pre_split {
        Some(parts) => parts,
        None => {
            let parts = stratified_split(
                &labels,
                &[config.split.val, config.split.test],
                derive_seed(config.seed, stream::SPLIT),
            );
            [parts[0].clone(), parts[1].clone(), parts[2].clone()]
        }
    };
    let part_classes = |idx: &[usize]| {
        let pos = idx.iter().filter(|&&i| labels[i] == 1).count();
        (pos, idx.len() - pos)
    };
    let (train_pos, train_neg) = part_classes(&train_idx);
    if train_pos == 0 || train_neg == 0 {
        return Err(PipelineError::Data(
            "the training part must contain both classes; enlarge the dataset or the train fraction"
                .into(),
        ));
    }
    let (test_pos, test_neg) = part_classes(&test_idx);
    if test_pos == 0 || test_neg == 0 {
        return Err(PipelineError::Data(
            "the test part must contain both classes to evaluate ranking metrics".into(),
        ));
    }

    // Conditioning (all splits) and augmentation (train only; originals
    // kept, each op's variant appended right after its source image).
    let conditioned: Vec<GrayImage> = images
        .iter()
        .map(|img| condition(img, &config.preprocess))
        .collect::<Result<_, _>>()
        .map_err(|e| stage_err("conditioning", e))?;

    let mut train_images: Vec<GrayImage> = Vec::new();
    let mut train_labels: Vec<u8> = Vec::new();
    for &i in &train_idx {
        train_images.push(conditioned[i].clone());
        train_labels.push(labels[i]);
        let variants =
            augment(&conditioned[i], &config.preprocess.augment_ops).map_err(|e| stage_err("augmentation", e))?;
        for v in variants {
            train_images.push(v);
            train_labels.push(labels[i]);
        }
    }

    let flatten = |imgs: &[GrayImage]| -> Result<Vec<Vec<f64>>, PipelineError> {
        imgs.iter()
            .map(|img| to_raw_vector(img, &config.preprocess))
            .collect::<Result<_, _>>()
            .map_err(|e| stage_err("flattening", e))
    };
    let gather = |idx: &[usize]| -> Vec<GrayImage> {
        idx.iter().map(|&i| conditioned[i].clone()).collect()
    };
    let train_raw = flatten(&train_images)?;
    let val_raw = flatten(&gather(&val_idx))?;
    let test_raw = flatten(&gather(&test_idx))?;
    let val_labels: Vec<u8> = val_idx.iter().map(|&i| labels[i]).collect();
    let test_labels: Vec<u8> = test_idx.iter().map(|&i| labels[i]).collect();

    // Shared PCA basis fitted on the (augmented) training rows.
    let pca = pca_fit(&train_raw, config.pca_k).map_err(|e| stage_err("pca", e))?;
    let evr = explained_variance_ratio(&pca, pca.total_variance).map_err(|e| stage_err("pca", e))?;
    let project = |model: &PcaModel, rows: &[Vec<f64>]| -> Result<Vec<Vec<f64>>, PipelineError> {
        rows.iter()
            .map(|r| pca_transform(model, r))
            .collect::<Result<_, _>>()
            .map_err(|e| stage_err("pca", e))
    };
    let train_proj = project(&pca, &train_raw)?;
    let val_proj = project(&pca, &val_raw)?;
    let test_proj = project(&pca, &test_raw)?;

    // Branch feature assembly.
    let mut branches: Vec<BranchData> = Vec::new();
    for kind in config.mode.branches() {
        let (branch_pca, pca_width, mut train_x, mut val_x, mut test_x) = match kind {
            BranchKind::Classical => {
                let k_c = config.classical_k.unwrap_or(config.pca_k);
                if k_c == config.pca_k {
                    (pca.clone(), k_c, train_proj.clone(), val_proj.clone(), test_proj.clone())
                } else {
                    let own = pca_fit(&train_raw, k_c).map_err(|e| stage_err("pca", e))?;
                    let t = project(&own, &train_raw)?;
                    let v = project(&own, &val_raw)?;
                    let s = project(&own, &test_raw)?;
                    (own, k_c, t, v, s)
                }
            }
            BranchKind::Hybrid => {
                let quantise = |rows: &[Vec<f64>]| -> Result<Vec<Vec<f64>>, PipelineError> {
                    rows.iter()
                        .map(|p| {
                            let q = extract_quantum_features(p, &config.circuit, &config.observables)
                                .map_err(|e| stage_err("quantum", e))?;
                            Ok(fuse(p, &q).map_err(|e| stage_err("fusion", e))?.into_vec())
                        })
                        .collect()
                };
                (
                    pca.clone(),
                    BRANCH_WIDTH,
                    quantise(&train_proj)?,
                    quantise(&val_proj)?,
                    quantise(&test_proj)?,
                )
            }
        };

        let (standardizer, degenerate_dims) = if config.standardize {
            let st = Standardizer::fit(&train_x).map_err(|e| stage_err("standardisation", e))?;
            let apply_all = |rows: &mut Vec<Vec<f64>>| -> Result<(), PipelineError> {
                for row in rows.iter_mut() {
                    *row = st.apply(row).map_err(|e| stage_err("standardisation", e))?;
                }
                Ok(())
            };
            apply_all(&mut train_x)?;
            apply_all(&mut val_x)?;
            apply_all(&mut test_x)?;
            let dims = st.degenerate_dims();
            (Some(st), dims)
        } else {
            (None, Vec::new())
        };

        branches.push(BranchData {
            kind,
            pca: branch_pca,
            pca_width,
            train: train_x,
            val: val_x,
            test: test_x,
            standardizer,
            degenerate_dims,
        });
    }

    // Training, evaluation, and artifact assembly.
    let cv_seed = derive_seed(config.seed, stream::CV);
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    let mut branch_reports: Vec<BranchReport> = Vec::new();
    let mut comparison: Vec<ComparisonRow> = Vec::new();
    let mut extraction_timing: Vec<ExtractionTimingRow> = Vec::new();

    for branch in &branches {
        let name = branch.kind.name();
        let train_data = Dataset::new(branch.train.clone(), train_labels.clone())
            .map_err(|e| stage_err("training", e))?;

        let mut model_reports: Vec<ModelReport> = Vec::new();
        let mut trained_models: Vec<TrainedModel> = Vec::new();
        for spec in &config.models {
            let (trained, train_seconds) = time_block(|| train(spec, &train_data));
            let model = trained.map_err(|e| stage_err("training", e))?;

            let (evaluated, eval_seconds) = time_block(|| -> Result<_, crate::classifiers::ModelError> {
                let mut predictions = Vec::with_capacity(branch.test.len());
                let mut decision_scores = Vec::with_capacity(branch.test.len());
                for x in &branch.test {
                    predictions.push(model.predict(x)?);
                    decision_scores.push(model.decision_score(x)?);
                }
                Ok((predictions, decision_scores))
            });
            let (predictions, decision_scores) = evaluated.map_err(|e| stage_err("evaluation", e))?;

            let confusion = ConfusionMatrix::from_predictions(&test_labels, &predictions)
                .map_err(|e| stage_err("evaluation", e))?;
            let score_table = scores(&confusion);
            let roc = roc_curve(&decision_scores, &test_labels)
                .map_err(|e| stage_err("evaluation", e))?;
            let pr = pr_curve(&decision_scores, &test_labels)
                .map_err(|e| stage_err("evaluation", e))?;

            let val_accuracy = if branch.val.is_empty() {
                None
            } else {
                let mut hits = 0usize;
                for (x, &y) in branch.val.iter().zip(&val_labels) {
                    let p = model.predict(x).map_err(|e| stage_err("evaluation", e))?;
                    hits += (p == y) as usize;
                }
                Some(hits as f64 / branch.val.len() as f64)
            };

            let cv = match config.cv.k_fold {
                Some(k) => k_fold_cv(spec, &train_data, k, cv_seed),
                None => monte_carlo_cv(
                    spec,
                    &train_data,
                    config.cv.n_splits,
                    config.cv.test_fraction,
                    cv_seed,
                ),
            }
            .map_err(|e| stage_err("cross_validation", e))?;

            let roc_file = format!("curves/{name}_{}_roc.csv", spec.kind());
            let pr_file = format!("curves/{name}_{}_pr.csv", spec.kind());
            let model_file = format!("models/{name}_{}.json", spec.kind());
            files.push((roc_file.clone(), report::curve_csv(&roc)));
            files.push((pr_file.clone(), report::curve_csv(&pr)));
            let mut model_bytes = serde_json::to_vec_pretty(&model).expect("model serialises");
            model_bytes.push(b'\n');
            files.push((model_file.clone(), model_bytes));

            model_reports.push(ModelReport {
                kind: spec.kind().to_string(),
                confusion,
                scores: score_table,
                roc_auc: roc.area,
                average_precision: pr.area,
                train_seconds,
                eval_seconds,
                val_accuracy,
                cv,
                roc_curve_file: roc_file,
                pr_curve_file: pr_file,
                model_file,
            });
            trained_models.push(model);
        }

        // Headline model: the SVM when configured, otherwise the first.
        let headline = model_reports
            .iter()
            .find(|r| r.kind == "svm")
            .unwrap_or(&model_reports[0]);
        comparison.push(ComparisonRow {
            branch: name.to_string(),
            model: headline.kind.clone(),
            accuracy: headline.scores.accuracy,
            f1_score: headline.scores.f1,
            cohens_kappa: headline.scores.kappa,
            roc_auc: headline.roc_auc,
            f2_score: headline.scores.f2,
            training_time_sec: headline.train_seconds,
            evaluating_time_sec: headline.eval_seconds,
        });
        let headline_accuracy = headline.scores.accuracy;

        // Feature-extraction cost over the test images, repeated.
        let mut seconds = Vec::with_capacity(config.timing_repeats);
        for _ in 0..config.timing_repeats {
            let (outcome, secs) = time_block(|| -> Result<(), PipelineError> {
                for &i in &test_idx {
                    let raw = to_raw_vector(&conditioned[i], &config.preprocess)
                        .map_err(|e| stage_err("timing", e))?;
                    let p = pca_transform(&branch.pca, &raw).map_err(|e| stage_err("timing", e))?;
                    let features = match branch.kind {
                        BranchKind::Classical => p,
                        BranchKind::Hybrid => {
                            let q = extract_quantum_features(&p, &config.circuit, &config.observables)
                                .map_err(|e| stage_err("timing", e))?;
                            fuse(&p, &q).map_err(|e| stage_err("timing", e))?.into_vec()
                        }
                    };
                    if let Some(st) = &branch.standardizer {
                        st.apply(&features).map_err(|e| stage_err("timing", e))?;
                    }
                }
                Ok(())
            });
            outcome?;
            seconds.push(secs);
        }
        let stats = TimingStats::from_seconds(&seconds);
        extraction_timing.push(ExtractionTimingRow {
            pipeline: name.to_string(),
            samples: test_idx.len(),
            repeats: config.timing_repeats,
            mean_seconds: stats.mean_seconds,
            std_seconds: stats.std_seconds,
            raw_seconds: seconds,
            classification_accuracy: headline_accuracy,
        });

        // Per-branch artifacts: feature tables, model table, bundle.
        files.push((
            format!("features/{name}_train.csv"),
            report::features_csv(&branch.train, &train_labels, branch.pca_width),
        ));
        files.push((
            format!("features/{name}_val.csv"),
            report::features_csv(&branch.val, &val_labels, branch.pca_width),
        ));
        files.push((
            format!("features/{name}_test.csv"),
            report::features_csv(&branch.test, &test_labels, branch.pca_width),
        ));
        files.push((
            format!("tables/model_comparison_{name}.csv"),
            report::model_comparison_csv(&model_reports),
        ));
        let bundle = ModelBundle {
            version: BUNDLE_VERSION,
            mode: name.to_string(),
            preprocess: config.preprocess.clone(),
            pca: branch.pca.clone(),
            circuit: match branch.kind {
                BranchKind::Hybrid => Some(config.circuit.clone()),
                BranchKind::Classical => None,
            },
            observables: match branch.kind {
                BranchKind::Hybrid => Some(config.observables.clone()),
                BranchKind::Classical => None,
            },
            standardizer: branch.standardizer.clone(),
            models: trained_models,
        };
        files.push((format!("models/bundle_{name}.json"), bundle.to_json()));

        branch_reports.push(BranchReport {
            branch: name.to_string(),
            feature_width: branch.train[0].len(),
            degenerate_feature_dims: branch.degenerate_dims.clone(),
            models: model_reports,
        });
    }

    let ablation = if comparison.len() == 2 {
        let classical = comparison[0].accuracy;
        let hybrid = comparison[1].accuracy;
        Some(AblationSummary {
            classical_accuracy: classical,
            hybrid_accuracy: hybrid,
            accuracy_delta: hybrid - classical,
        })
    } else {
        None
    };

    let eval = EvalReport {
        seed: config.seed,
        mode: config.mode.as_str().to_string(),
        dataset: DatasetSummary {
            total: images.len(),
            train: train_idx.len(),
            train_augmented: train_labels.len(),
            val: val_idx.len(),
            test: test_idx.len(),
            skipped,
        },
        pca: PcaSummary {
            k: pca.k(),
            explained_variance_ratio: evr,
            total_variance: pca.total_variance,
        },
        branches: branch_reports,
        comparison: comparison.clone(),
        ablation,
        extraction_timing: extraction_timing.clone(),
    };
    files.push((
        "tables/classical_vs_hybrid.csv".to_string(),
        report::comparison_csv(&comparison),
    ));
    files.push((
        "tables/extraction_complexity.csv".to_string(),
        report::extraction_csv(&extraction_timing),
    ));
    files.push(("report.json".to_string(), report::report_json(&eval)));

    emit(&config.out_dir, &files)?;
    Ok(RunSummary {
        out_dir: config.out_dir.clone(),
        files: files.iter().map(|(rel, _)| PathBuf::from(rel)).collect(),
        report: eval,
    })
}

/// Writes every artifact; on failure, removes the files this call already
/// wrote so a broken run does not leave a half-populated output directory.
fn emit(out_dir: &Path, files: &[(String, Vec<u8>)]) -> Result<(), PipelineError> {
    let mut written: Vec<PathBuf> = Vec::new();
    let outcome = (|| -> std::io::Result<()> {
        for (rel, bytes) in files {
            let path = out_dir.join(rel);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, bytes)?;
            written.push(path);
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        for path in &written {
            let _ = std::fs::remove_file(path);
        }
        return Err(PipelineError::Io(e));
    }
    Ok(())
}
