//! Binary-classification metrics: confusion matrices, threshold scores with
//! explicit degenerate-denominator handling, ROC and precision–recall
//! curves, wall-clock timing helpers, and cross-validation (see [`cv`]).
//!
//! Degenerate cases never panic and never produce NaN: a score whose
//! denominator vanishes is reported as `0.0` and its name is appended to
//! [`Scores::degenerate`], so downstream tables stay finite and the
//! condition stays visible.

pub mod cv;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("invalid metric input: {0}")]
    Data(String),
}

/// Counts for a 2×2 contingency table; positives are class 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionMatrix {
    pub fn from_predictions(labels: &[u8], predictions: &[u8]) -> Result<Self, MetricsError> {
        if labels.len() != predictions.len() {
            return Err(MetricsError::Data(format!(
                "{} labels but {} predictions",
                labels.len(),
                predictions.len()
            )));
        }
        if labels.is_empty() {
            return Err(MetricsError::Data("no samples".into()));
        }
        let mut cm = ConfusionMatrix::default();
        for (&y, &p) in labels.iter().zip(predictions) {
            if y > 1 || p > 1 {
                return Err(MetricsError::Data("labels must be 0 or 1".into()));
            }
            match (y, p) {
                (1, 1) => cm.tp += 1,
                (0, 1) => cm.fp += 1,
                (0, 0) => cm.tn += 1,
                (1, 0) => cm.fn_ += 1,
                _ => unreachable!(),
            }
        }
        Ok(cm)
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }
}

/// Threshold metrics derived from a confusion matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub f2: f64,
    pub kappa: f64,
    /// Names of metrics whose denominator vanished (reported as 0.0).
    pub degenerate: Vec<String>,
}

fn ratio(num: f64, den: f64, name: &str, degenerate: &mut Vec<String>) -> f64 {
    if den == 0.0 {
        degenerate.push(name.to_string());
        0.0
    } else {
        num / den
    }
}

/// F-measure with recall weighted `beta` times as much as precision.
fn f_beta(precision: f64, recall: f64, beta: f64, name: &str, degenerate: &mut Vec<String>) -> f64 {
    let b2 = beta * beta;
    ratio(
        (1.0 + b2) * precision * recall,
        b2 * precision + recall,
        name,
        degenerate,
    )
}

/// Computes accuracy, precision, recall, F1, F2, and Cohen's kappa.
///
/// Kappa is 1 exactly when the off-diagonal is empty (perfect agreement,
/// even if only one table cell is populated); otherwise it is
/// `(p_o - p_e) / (1 - p_e)` with the chance-agreement denominator guarded
/// like the other ratios.
pub fn scores(cm: &ConfusionMatrix) -> Scores {
    let mut degenerate = Vec::new();
    let n = cm.total() as f64;
    let (tp, fp, tn, fn_) = (cm.tp as f64, cm.fp as f64, cm.tn as f64, cm.fn_ as f64);

    let accuracy = ratio(tp + tn, n, "accuracy", &mut degenerate);
    let precision = ratio(tp, tp + fp, "precision", &mut degenerate);
    let recall = ratio(tp, tp + fn_, "recall", &mut degenerate);
    let f1 = f_beta(precision, recall, 1.0, "f1", &mut degenerate);
    let f2 = f_beta(precision, recall, 2.0, "f2", &mut degenerate);

    let kappa = if cm.total() > 0 && cm.fp == 0 && cm.fn_ == 0 {
        1.0
    } else {
        let p_o = (tp + tn) / n;
        let p_e = ((tp + fp) * (tp + fn_) + (fn_ + tn) * (fp + tn)) / (n * n);
        ratio(p_o - p_e, 1.0 - p_e, "kappa", &mut degenerate)
    };

    Scores {
        accuracy,
        precision,
        recall,
        f1,
        f2,
        kappa,
        degenerate,
    }
}

/// One operating point of a ranking curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    /// Score cutoff: a sample is called positive when `score >= threshold`.
    pub threshold: f64,
    pub x: f64,
    pub y: f64,
}

/// A ranking curve with its summary area.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveData {
    pub points: Vec<CurvePoint>,
    pub area: f64,
}

fn check_curve_input(scores: &[f64], labels: &[u8]) -> Result<(usize, usize), MetricsError> {
    if scores.len() != labels.len() {
        return Err(MetricsError::Data(format!(
            "{} scores but {} labels",
            scores.len(),
            labels.len()
        )));
    }
    if scores.is_empty() {
        return Err(MetricsError::Data("no samples".into()));
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(MetricsError::Data("non-finite score".into()));
    }
    if labels.iter().any(|&y| y > 1) {
        return Err(MetricsError::Data("labels must be 0 or 1".into()));
    }
    let pos = labels.iter().filter(|&&y| y == 1).count();
    Ok((pos, labels.len() - pos))
}

/// Sorted descending by score, with equal scores collapsed into one
/// threshold group: (threshold, positives in group, negatives in group).
fn threshold_groups(scores: &[f64], labels: &[u8]) -> Vec<(f64, u64, u64)> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).expect("finite scores"));
    let mut groups: Vec<(f64, u64, u64)> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some((t, p, ng)) if *t == scores[i] => {
                if labels[i] == 1 {
                    *p += 1;
                } else {
                    *ng += 1;
                }
            }
            _ => {
                let (p, ng) = if labels[i] == 1 { (1, 0) } else { (0, 1) };
                groups.push((scores[i], p, ng));
            }
        }
    }
    groups
}

/// Receiver operating characteristic: `x` is the false-positive rate, `y`
/// the true-positive rate, one point per distinct threshold plus the
/// all-negative anchor.  The area is the trapezoidal AUC.  Both classes must
/// be present.
pub fn roc_curve(scores: &[f64], labels: &[u8]) -> Result<CurveData, MetricsError> {
    let (pos, neg) = check_curve_input(scores, labels)?;
    if pos == 0 || neg == 0 {
        return Err(MetricsError::Data(
            "ROC needs both classes in the labels".into(),
        ));
    }
    let mut points = vec![CurvePoint {
        threshold: f64::INFINITY,
        x: 0.0,
        y: 0.0,
    }];
    let (mut tp, mut fp) = (0u64, 0u64);
    for (threshold, p, ng) in threshold_groups(scores, labels) {
        tp += p;
        fp += ng;
        points.push(CurvePoint {
            threshold,
            x: fp as f64 / neg as f64,
            y: tp as f64 / pos as f64,
        });
    }
    let area = points
        .windows(2)
        .map(|w| (w[1].x - w[0].x) * (w[0].y + w[1].y) / 2.0)
        .sum();
    Ok(CurveData { points, area })
}

/// Precision–recall curve: `x` is recall, `y` precision, anchored at
/// `(0, 1)`.  The area is the step-interpolated average precision
/// `Σ (R_i − R_{i−1}) · P_i`.  At least one positive label is required.
pub fn pr_curve(scores: &[f64], labels: &[u8]) -> Result<CurveData, MetricsError> {
    let (pos, _neg) = check_curve_input(scores, labels)?;
    if pos == 0 {
        return Err(MetricsError::Data(
            "precision-recall needs at least one positive label".into(),
        ));
    }
    let mut points = vec![CurvePoint {
        threshold: f64::INFINITY,
        x: 0.0,
        y: 1.0,
    }];
    let (mut tp, mut fp) = (0u64, 0u64);
    let mut area = 0.0;
    let mut prev_recall = 0.0;
    for (threshold, p, ng) in threshold_groups(scores, labels) {
        tp += p;
        fp += ng;
        let precision = tp as f64 / (tp + fp) as f64;
        let recall = tp as f64 / pos as f64;
        area += (recall - prev_recall) * precision;
        prev_recall = recall;
        points.push(CurvePoint {
            threshold,
            x: recall,
            y: precision,
        });
    }
    Ok(CurveData { points, area })
}

/// Runs `f`, returning its value and the elapsed wall-clock seconds.
pub fn time_block<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = std::time::Instant::now();
    let value = f();
    (value, start.elapsed().as_secs_f64())
}

/// Mean and sample standard deviation of repeated wall-clock measurements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingStats {
    pub samples: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
}

impl TimingStats {
    /// `n - 1` denominator; a single sample reports zero spread.
    pub fn from_seconds(seconds: &[f64]) -> Self {
        let n = seconds.len();
        let mean = if n == 0 {
            0.0
        } else {
            seconds.iter().sum::<f64>() / n as f64
        };
        let std = if n < 2 {
            0.0
        } else {
            let ss: f64 = seconds.iter().map(|s| (s - mean) * (s - mean)).sum();
            (ss / (n - 1) as f64).sqrt()
        };
        TimingStats {
            samples: n,
            mean_seconds: mean,
            std_seconds: std,
        }
    }
}
