//! Hybrid quantum-classical feature pipeline for binary bone X-ray
//! classification.
//!
//! The crate is organised around the stages of the pipeline:
//!
//! * [`image`] — grayscale conditioning (denoising, contrast-limited
//!   equalisation, edge extraction, augmentation) and flattening of images
//!   into raw feature vectors;
//! * [`pca`] — principal component analysis for the classical feature branch;
//! * [`quantum`] — a dense statevector simulator that re-encodes the PCA
//!   features through a fixed parameterised circuit and reads out Pauli-Z
//!   expectation values;
//! * [`fusion`] — concatenation of the classical and quantum features plus
//!   train-set standardisation;
//! * [`classifiers`] — from-scratch SVM, k-NN, decision-tree, random-forest
//!   and gradient-boosting learners over the fused vectors;
//! * [`metrics`] — confusion-matrix scores, ROC / precision-recall curves,
//!   Monte-Carlo cross-validation and wall-clock timing helpers;
//! * [`pipeline`] — configuration, synthetic data, dataset ingestion,
//!   end-to-end orchestration and report emission.

pub mod classifiers;
pub mod fusion;
pub mod image;
pub mod metrics;
pub mod pca;
pub mod pipeline;
pub mod quantum;
pub mod seed;
pub mod split;

pub(crate) mod linalg;
