//! Evaluation-report structures and their JSON/CSV renderings.
//!
//! Floats are written with Rust's shortest round-trip formatting, so two
//! runs that compute identical numbers emit identical bytes.  Every file
//! path recorded in the report is relative to the run's output directory.

use serde::{Deserialize, Serialize};

use crate::metrics::cv::CvReport;
use crate::metrics::{ConfusionMatrix, CurveData, Scores};

/// Top-level contents of `report.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub seed: u64,
    /// The requested mode: `"classical"`, `"hybrid"`, or `"both"`.
    pub mode: String,
    pub dataset: DatasetSummary,
    pub pca: PcaSummary,
    pub branches: Vec<BranchReport>,
    /// One headline row per branch (the SVM when present, otherwise the
    /// first configured model).
    pub comparison: Vec<ComparisonRow>,
    /// Present when both branches ran: the measured hybrid-minus-classical
    /// accuracy difference on the headline model.
    pub ablation: Option<AblationSummary>,
    pub extraction_timing: Vec<ExtractionTimingRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub total: usize,
    pub train: usize,
    /// Training rows after augmentation (originals included).
    pub train_augmented: usize,
    pub val: usize,
    pub test: usize,
    /// Unreadable files skipped during ingestion.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcaSummary {
    pub k: usize,
    pub explained_variance_ratio: Vec<f64>,
    pub total_variance: f64,
}

/// Everything measured for one feature branch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    /// `"classical"` or `"hybrid"`.
    pub branch: String,
    pub feature_width: usize,
    /// Feature dimensions the standardizer found constant on train.
    pub degenerate_feature_dims: Vec<usize>,
    pub models: Vec<ModelReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub kind: String,
    pub confusion: ConfusionMatrix,
    pub scores: Scores,
    pub roc_auc: f64,
    pub average_precision: f64,
    pub train_seconds: f64,
    pub eval_seconds: f64,
    /// Accuracy on the validation part; absent when that part is empty.
    pub val_accuracy: Option<f64>,
    pub cv: CvReport,
    pub roc_curve_file: String,
    pub pr_curve_file: String,
    pub model_file: String,
}

/// Headline metrics for the branch-vs-branch table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub branch: String,
    pub model: String,
    pub accuracy: f64,
    pub f1_score: f64,
    pub cohens_kappa: f64,
    pub roc_auc: f64,
    pub f2_score: f64,
    pub training_time_sec: f64,
    pub evaluating_time_sec: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AblationSummary {
    pub classical_accuracy: f64,
    pub hybrid_accuracy: f64,
    /// `hybrid_accuracy - classical_accuracy`; reported as measured, it may
    /// be negative.
    pub accuracy_delta: f64,
}

/// Feature-extraction cost for one branch over the test images.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractionTimingRow {
    /// `"classical"` or `"hybrid"`.
    pub pipeline: String,
    /// Images processed per repeat.
    pub samples: usize,
    pub repeats: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
    /// Wall-clock seconds for each repeat; mean and std derive from these.
    pub raw_seconds: Vec<f64>,
    /// Test accuracy of the branch's headline model.
    pub classification_accuracy: f64,
}

pub fn report_json(report: &EvalReport) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(report).expect("report serialises");
    bytes.push(b'\n');
    bytes
}

/// `threshold,x,y` rows; the leading anchor's threshold prints as `inf`.
pub fn curve_csv(curve: &CurveData) -> Vec<u8> {
    let mut out = String::from("threshold,x,y\n");
    for p in &curve.points {
        out.push_str(&format!("{},{},{}\n", p.threshold, p.x, p.y));
    }
    out.into_bytes()
}

/// Feature matrix with labels: PCA columns first, then any quantum columns.
pub fn features_csv(rows: &[Vec<f64>], labels: &[u8], pca_width: usize) -> Vec<u8> {
    let width = rows.first().map(|r| r.len()).unwrap_or(pca_width);
    let mut header: Vec<String> = (0..pca_width).map(|i| format!("pca_{i}")).collect();
    header.extend((0..width - pca_width).map(|i| format!("q_{i}")));
    header.push("label".into());
    let mut out = header.join(",");
    out.push('\n');
    for (row, label) in rows.iter().zip(labels) {
        for v in row {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{label}\n"));
    }
    out.into_bytes()
}

/// Per-model metric table for one branch.
pub fn model_comparison_csv(models: &[ModelReport]) -> Vec<u8> {
    let mut out = String::from(
        "model,accuracy,precision,recall,f1,f2,kappa,roc_auc,average_precision,\
         cv_mean,cv_std,train_time_sec,eval_time_sec\n",
    );
    for m in models {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            m.kind,
            m.scores.accuracy,
            m.scores.precision,
            m.scores.recall,
            m.scores.f1,
            m.scores.f2,
            m.scores.kappa,
            m.roc_auc,
            m.average_precision,
            m.cv.mean,
            m.cv.std_dev,
            m.train_seconds,
            m.eval_seconds,
        ));
    }
    out.into_bytes()
}

/// The branch-vs-branch headline table.
pub fn comparison_csv(rows: &[ComparisonRow]) -> Vec<u8> {
    let mut out = String::from(
        "branch,model,accuracy,f1_score,cohens_kappa,roc_auc,f2_score,\
         training_time_sec,evaluating_time_sec\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.branch,
            r.model,
            r.accuracy,
            r.f1_score,
            r.cohens_kappa,
            r.roc_auc,
            r.f2_score,
            r.training_time_sec,
            r.evaluating_time_sec,
        ));
    }
    out.into_bytes()
}

/// Extraction-cost table; timing column names contain `time` so they can be
/// recognised and masked when comparing runs.
pub fn extraction_csv(rows: &[ExtractionTimingRow]) -> Vec<u8> {
    let mut out =
        String::from("pipeline,samples,repeats,mean_time_sec,std_time_sec,classification_accuracy\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.pipeline, r.samples, r.repeats, r.mean_seconds, r.std_seconds, r.classification_accuracy,
        ));
    }
    out.into_bytes()
}
