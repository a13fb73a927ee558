//! Model-bundle persistence: everything needed to classify a fresh image —
//! preprocessing parameters, the PCA basis, the optional quantum stage, the
//! standardizer, and the trained classifiers — in one versioned JSON file.

use serde::{Deserialize, Serialize};

use crate::classifiers::TrainedModel;
use crate::fusion::{fuse, Standardizer};
use crate::image::{condition, to_raw_vector, GrayImage, PreprocessConfig};
use crate::pca::{pca_transform, PcaModel};
use crate::quantum::{extract_quantum_features, CircuitSpec, ObservableSet};

use super::PipelineError;

/// Current bundle format version.
pub const BUNDLE_VERSION: u64 = 1;

/// A self-contained inference artifact for one pipeline branch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelBundle {
    pub version: u64,
    /// `"classical"` or `"hybrid"`.
    pub mode: String,
    pub preprocess: PreprocessConfig,
    pub pca: PcaModel,
    /// Present only for the hybrid branch.
    pub circuit: Option<CircuitSpec>,
    /// Present only for the hybrid branch.
    pub observables: Option<ObservableSet>,
    /// Absent when the run disabled feature standardisation.
    pub standardizer: Option<Standardizer>,
    pub models: Vec<TrainedModel>,
}

impl ModelBundle {
    pub fn to_json(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("bundle serialises");
        bytes.push(b'\n');
        bytes
    }

    /// Parses a bundle, rejecting unknown versions before attempting the
    /// full decode so version skew reports cleanly instead of as a random
    /// missing-field error.
    pub fn from_json(bytes: &[u8]) -> Result<Self, PipelineError> {
        let value: serde_json::Value = serde_json::from_slice(bytes)
            .map_err(|e| PipelineError::Format(format!("bundle is not valid JSON: {e}")))?;
        let version = value
            .get("version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| {
                PipelineError::Format("bundle has no integer `version` field".into())
            })?;
        if version != BUNDLE_VERSION {
            return Err(PipelineError::Version {
                found: version,
                expected: BUNDLE_VERSION,
            });
        }
        serde_json::from_value(value)
            .map_err(|e| PipelineError::Format(format!("malformed bundle: {e}")))
    }

    /// Runs the full inference path on one raw image and returns
    /// `(model kind, label, decision score)` per bundled classifier.
    pub fn classify(&self, img: &GrayImage) -> Result<Vec<(String, u8, f64)>, PipelineError> {
        let conditioned = condition(img, &self.preprocess)
            .map_err(|e| PipelineError::Data(format!("conditioning failed: {e}")))?;
        let raw = to_raw_vector(&conditioned, &self.preprocess)
            .map_err(|e| PipelineError::Data(format!("flattening failed: {e}")))?;
        let pca_features = pca_transform(&self.pca, &raw)
            .map_err(|e| PipelineError::Data(format!("projection failed: {e}")))?;

        let mut features = pca_features;
        if let (Some(circuit), Some(observables)) = (&self.circuit, &self.observables) {
            let quantum = extract_quantum_features(&features, circuit, observables)
                .map_err(|e| PipelineError::Data(format!("quantum features failed: {e}")))?;
            features = fuse(&features, &quantum)
                .map_err(|e| PipelineError::Data(format!("fusion failed: {e}")))?
                .into_vec();
        }
        if let Some(standardizer) = &self.standardizer {
            features = standardizer
                .apply(&features)
                .map_err(|e| PipelineError::Data(format!("standardisation failed: {e}")))?;
        }

        let mut results = Vec::with_capacity(self.models.len());
        for model in &self.models {
            let score = model
                .decision_score(&features)
                .map_err(|e| PipelineError::Data(format!("scoring failed: {e}")))?;
            let label = model
                .predict(&features)
                .map_err(|e| PipelineError::Data(format!("prediction failed: {e}")))?;
            results.push((model.kind().to_string(), label, score));
        }
        Ok(results)
    }
}
