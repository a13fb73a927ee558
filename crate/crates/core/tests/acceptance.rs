//! Acceptance gate for the whole pipeline: nine numbered criteria, each run
//! as its own test and each printing one `PASS`/`FAIL` line (run with
//! `--nocapture` to see the lines as they complete).

mod common;

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use common::{assert_close, circuit_unitary, dense_expect_z, dense_expect_zz, mat_vec, pairwise_auc, pca_reference};
use num_complex::Complex64;
use qfuse_core::classifiers::{
    train, Dataset, FeatureSubsample, ForestParams, GboostParams, KnnParams, ModelInner,
    ModelSpec, SvmParams, TreeParams,
};
use qfuse_core::metrics::cv::monte_carlo_cv;
use qfuse_core::metrics::{pr_curve, roc_curve, scores, ConfusionMatrix};
use qfuse_core::pca::{pca_fit, pca_inverse_transform, pca_transform};
use qfuse_core::pipeline::{run, PipelineConfig, RunSummary};
use qfuse_core::quantum::{
    amplitude_encode, extract_quantum_features, run_circuit, CircuitSpec, Entanglement,
    ObservableSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn criterion(number: u8, description: &str, body: impl FnOnce()) {
    let result = catch_unwind(AssertUnwindSafe(body));
    let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
    println!("acceptance criterion {number} [{description}]: {verdict}");
    if let Err(payload) = result {
        resume_unwind(payload);
    }
}

fn random_values(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut values: Vec<f64> = (0..len).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
    if values.iter().all(|v| *v == 0.0) {
        values[0] = 1.0;
    }
    values
}

/// Two well-separated 2-d clusters, `per_class` points each, class 1 first.
fn blob_dataset(per_class: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<u8>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Vec::with_capacity(2 * per_class);
    let mut labels = Vec::with_capacity(2 * per_class);
    for (label, center) in [(1u8, 2.0f64), (0u8, -2.0f64)] {
        for _ in 0..per_class {
            features.push(vec![
                center + rng.gen::<f64>() - 0.5,
                center + rng.gen::<f64>() - 0.5,
            ]);
            labels.push(label);
        }
    }
    (features, labels)
}

fn config_from_json(json: serde_json::Value) -> PipelineConfig {
    PipelineConfig::from_json(json.to_string().as_bytes()).expect("valid test config")
}

fn run_into(mut config: PipelineConfig, dir: &Path) -> RunSummary {
    config.out_dir = dir.to_path_buf();
    run(&config).expect("pipeline run succeeds")
}

#[test]
fn criterion_1_statevector_simulation() {
    criterion(1, "statevector simulation matches a dense unitary oracle", || {
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(201);
        let observables = ObservableSet::ring_default(4);
        for trial in 0..100 {
            let spec = CircuitSpec {
                n_qubits: 4,
                layers: rng.gen_range(0..=3),
                angle_seed: rng.gen(),
                entanglement: if trial % 2 == 0 {
                    Entanglement::Ring
                } else {
                    Entanglement::Linear
                },
            };
            let len = rng.gen_range(1..=16);
            let values = random_values(&mut rng, len);
            let encoded = amplitude_encode(&values, 4).unwrap();
            let evolved = run_circuit(&encoded, &spec).unwrap();

            // Amplitudes against the dense 16×16 product of gate matrices.
            let expected = mat_vec(&circuit_unitary(&spec), encoded.amplitudes());
            for (i, (a, e)) in evolved.amplitudes().iter().zip(&expected).enumerate() {
                assert!(
                    (a - e).norm() <= 1e-10,
                    "trial {trial}: amplitude {i} drifted: {a} vs {e}"
                );
            }

            // Unitarity: the evolved state stays normalised.
            let norm = evolved.norm_sqr().sqrt();
            assert!((norm - 1.0).abs() <= 1e-10, "trial {trial}: norm {norm}");

            // Readout bounds plus agreement with expectations taken on the
            // oracle's own amplitudes.
            let features = extract_quantum_features(&values, &spec, &observables).unwrap();
            assert_eq!(features.len(), 8);
            for (i, f) in features.iter().enumerate() {
                assert!((-1.0..=1.0).contains(f), "trial {trial}: feature {i} = {f}");
            }
            for (i, &q) in observables.singles.iter().enumerate() {
                assert_close(
                    features[i],
                    dense_expect_z(&expected, 4, q),
                    1e-10,
                    "single-qubit feature",
                );
            }
            for (j, &(a, b)) in observables.pairs.iter().enumerate() {
                assert_close(
                    features[observables.singles.len() + j],
                    dense_expect_zz(&expected, 4, a, b),
                    1e-10,
                    "correlator feature",
                );
            }

            // Positive rescaling cannot change the features: bit-for-bit for
            // power-of-two factors, to rounding noise otherwise.
            for c in [0.5, 2.0, 1024.0, 2f64.powi(-20)] {
                let scaled: Vec<f64> = values.iter().map(|v| c * v).collect();
                let out = extract_quantum_features(&scaled, &spec, &observables).unwrap();
                assert_eq!(out, features, "trial {trial}: scaling by {c} changed features");
            }
            for c in [3.0, 0.7, 123.456] {
                let scaled: Vec<f64> = values.iter().map(|v| c * v).collect();
                let out = extract_quantum_features(&scaled, &spec, &observables).unwrap();
                for (o, f) in out.iter().zip(&features) {
                    assert!(
                        (o - f).abs() <= 1e-12,
                        "trial {trial}: scaling by {c} moved a feature by {}",
                        (o - f).abs()
                    );
                }
            }
        }
        let elapsed = started.elapsed().as_secs_f64();
        assert!(elapsed < 5.0, "oracle comparison took {elapsed:.2} s");
    });
}

#[test]
fn criterion_2_amplitude_encoding() {
    criterion(2, "amplitude encoding normalises and zero-pads", || {
        let mut rng = ChaCha8Rng::seed_from_u64(202);
        for _ in 0..1000 {
            let len = rng.gen_range(1..=16);
            let values = random_values(&mut rng, len);
            let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
            let state = amplitude_encode(&values, 4).unwrap();
            let amps = state.amplitudes();
            assert_eq!(amps.len(), 16);
            for (i, amp) in amps.iter().enumerate() {
                let expected = if i < values.len() {
                    Complex64::new(values[i] / norm, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                assert_eq!(*amp, expected, "amplitude {i}");
            }
            assert!(
                (state.norm_sqr() - 1.0).abs() <= 1e-12,
                "squared norm {}",
                state.norm_sqr()
            );
        }
    });
}

#[test]
fn criterion_3_pca_oracle_equivalence() {
    criterion(3, "pca agrees with a brute-force eigendecomposition", || {
        let mut rng = ChaCha8Rng::seed_from_u64(203);
        for instance in 0..50 {
            let n = rng.gen_range(2..=8usize);
            let d = rng.gen_range(1..=8usize);
            // Ramp per-dimension spread so eigenvalues stay well separated.
            let data: Vec<Vec<f64>> = (0..n)
                .map(|_| {
                    (0..d)
                        .map(|j| (rng.gen::<f64>() * 2.0 - 1.0) * (1.0 + 0.5 * j as f64))
                        .collect()
                })
                .collect();
            let k_max = (n - 1).min(d);
            let model = pca_fit(&data, k_max).unwrap();
            let (mean, components, variances) = pca_reference(&data, k_max);

            for (a, e) in model.mean.iter().zip(&mean) {
                assert_close(*a, *e, 1e-12, "instance mean");
            }
            for i in 0..k_max {
                assert_close(
                    model.variances[i],
                    variances[i],
                    1e-9,
                    &format!("instance {instance} variance {i}"),
                );
                for j in 0..d {
                    assert_close(
                        model.components[i][j],
                        components[i][j],
                        1e-8,
                        &format!("instance {instance} component ({i},{j})"),
                    );
                }
            }

            // Orthonormality of the fitted basis.
            for i in 0..k_max {
                for j in 0..k_max {
                    let dot: f64 = model.components[i]
                        .iter()
                        .zip(&model.components[j])
                        .map(|(a, b)| a * b)
                        .sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert_close(dot, expected, 1e-9, "basis orthonormality");
                }
            }

            // More components can only reconstruct the data better.
            let mut last = f64::INFINITY;
            for k in 1..=k_max {
                let m = pca_fit(&data, k).unwrap();
                let err: f64 = data
                    .iter()
                    .map(|row| {
                        let coords = pca_transform(&m, row).unwrap();
                        let rec = pca_inverse_transform(&m, &coords).unwrap();
                        row.iter()
                            .zip(&rec)
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum::<f64>()
                    })
                    .sum::<f64>()
                    / n as f64;
                assert!(
                    err <= last + 1e-12,
                    "instance {instance}: reconstruction error rose from {last} to {err} at k={k}"
                );
                last = err;
            }
        }
    });
}

#[test]
fn criterion_4_classifier_sanity() {
    criterion(4, "classifiers solve canonical sanity problems", || {
        let (blob_x, blob_y) = blob_dataset(20, 204);
        let blobs = Dataset::new(blob_x.clone(), blob_y.clone()).unwrap();
        let specs = [
            ModelSpec::Svm(SvmParams::default()),
            ModelSpec::Knn(KnnParams { k: 1 }),
            ModelSpec::Dtree(TreeParams::default()),
            ModelSpec::Rforest(ForestParams::default()),
            ModelSpec::Gboost(GboostParams::default()),
        ];
        for spec in &specs {
            let model = train(spec, &blobs).unwrap();
            for (x, &y) in blob_x.iter().zip(&blob_y) {
                assert_eq!(
                    model.predict(x).unwrap(),
                    y,
                    "{} misclassifies a separable training point",
                    spec.kind()
                );
            }
        }

        // The four-point parity problem needs a non-linear boundary.
        let xor_x = vec![
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ];
        let xor_y = vec![0u8, 1, 1, 0];
        let xor = Dataset::new(xor_x.clone(), xor_y.clone()).unwrap();
        let xor_specs = [
            ModelSpec::Svm(SvmParams {
                c: 10.0,
                gamma: Some(1.0),
                ..SvmParams::default()
            }),
            ModelSpec::Dtree(TreeParams {
                max_depth: 2,
                min_samples_split: 2,
            }),
        ];
        for spec in &xor_specs {
            let model = train(spec, &xor).unwrap();
            for (x, &y) in xor_x.iter().zip(&xor_y) {
                assert_eq!(model.predict(x).unwrap(), y, "{} fails parity", spec.kind());
            }
        }

        // A single un-bagged, un-subsampled tree in a forest is just a tree.
        let lone_forest = train(
            &ModelSpec::Rforest(ForestParams {
                n_trees: 1,
                max_depth: 6,
                min_samples_split: 2,
                bootstrap: false,
                feature_subsample: FeatureSubsample::All,
                seed: 0,
            }),
            &blobs,
        )
        .unwrap();
        let bare_tree = train(
            &ModelSpec::Dtree(TreeParams {
                max_depth: 6,
                min_samples_split: 2,
            }),
            &blobs,
        )
        .unwrap();
        let mut probes = blob_x.clone();
        for i in 0..9 {
            for j in 0..9 {
                probes.push(vec![-3.0 + 0.75 * i as f64, -3.0 + 0.75 * j as f64]);
            }
        }
        for x in &probes {
            assert_eq!(
                lone_forest.predict(x).unwrap(),
                bare_tree.predict(x).unwrap(),
                "degenerate forest disagrees with its tree at {x:?}"
            );
        }

        // Boosting must never get worse on its own training objective.
        let boosted = train(&ModelSpec::Gboost(GboostParams::default()), &blobs).unwrap();
        let ModelInner::Gboost(g) = &boosted.inner else {
            panic!("boosting spec trained a different model");
        };
        assert_eq!(g.loss_curve.len(), GboostParams::default().rounds + 1);
        for pair in g.loss_curve.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-9,
                "training loss rose from {} to {}",
                pair[0],
                pair[1]
            );
        }
    });
}

#[test]
fn criterion_5_metric_oracles() {
    criterion(5, "ranking and confusion metrics match counting oracles", || {
        // Trapezoid AUC against explicit positive/negative pair counting,
        // with ties forced via quantisation.
        let mut rng = ChaCha8Rng::seed_from_u64(205);
        for set in 0..50 {
            let mut labels: Vec<u8> = (0..100).map(|_| rng.gen_range(0..=1) as u8).collect();
            labels[0] = 1;
            labels[1] = 0;
            let scores_vec: Vec<f64> = (0..100)
                .map(|i| {
                    let s = rng.gen::<f64>();
                    if i % 3 == 0 {
                        (s * 10.0).round() / 10.0
                    } else {
                        s
                    }
                })
                .collect();
            let auc = roc_curve(&scores_vec, &labels).unwrap().area;
            assert_close(
                auc,
                pairwise_auc(&scores_vec, &labels),
                1e-9,
                &format!("auc on score set {set}"),
            );
        }

        // Twenty random confusion matrices against the closed-form ratios.
        for case in 0..20 {
            let cm = ConfusionMatrix {
                tp: rng.gen_range(1..=30),
                fp: rng.gen_range(1..=30),
                tn: rng.gen_range(1..=30),
                fn_: rng.gen_range(1..=30),
            };
            let s = scores(&cm);
            let (tp, fp, tn, fn_) = (cm.tp as f64, cm.fp as f64, cm.tn as f64, cm.fn_ as f64);
            let total = tp + fp + tn + fn_;
            let precision = tp / (tp + fp);
            let recall = tp / (tp + fn_);
            let p_o = (tp + tn) / total;
            let p_e = ((tp + fn_) * (tp + fp) + (fp + tn) * (fn_ + tn)) / (total * total);
            let ctx = format!("confusion case {case}");
            assert_close(s.accuracy, p_o, 1e-12, &ctx);
            assert_close(s.precision, precision, 1e-12, &ctx);
            assert_close(s.recall, recall, 1e-12, &ctx);
            assert_close(s.f1, 2.0 * precision * recall / (precision + recall), 1e-12, &ctx);
            assert_close(s.f2, 5.0 * precision * recall / (4.0 * precision + recall), 1e-12, &ctx);
            assert_close(s.kappa, (p_o - p_e) / (1.0 - p_e), 1e-12, &ctx);
            assert!(s.degenerate.is_empty(), "{ctx}: unexpected degenerate flags");
        }

        // Agreement extremes: perfect prediction and constant prediction on
        // balanced labels.
        let perfect = scores(&ConfusionMatrix { tp: 7, fp: 0, tn: 5, fn_: 0 });
        assert_eq!(perfect.kappa, 1.0);
        let always_positive = scores(&ConfusionMatrix { tp: 5, fp: 5, tn: 0, fn_: 0 });
        assert!(always_positive.kappa.abs() <= 1e-15);
        let always_negative = scores(&ConfusionMatrix { tp: 0, fp: 0, tn: 5, fn_: 5 });
        assert!(always_negative.kappa.abs() <= 1e-15);

        // Average precision on a hand-counted ranking.
        let curve = pr_curve(&[0.9, 0.8, 0.7, 0.6, 0.5, 0.4], &[1, 0, 1, 1, 0, 0]).unwrap();
        assert_close(curve.area, 29.0 / 36.0, 1e-15, "hand-counted average precision");
    });
}

#[test]
fn criterion_6_desk_scale_experiment() {
    criterion(6, "desk-scale hybrid run beats the accuracy floor", || {
        let started = Instant::now();
        let out = TempDir::new().unwrap();
        let config = config_from_json(serde_json::json!({
            "dataset": {"source": "synthetic", "n_per_class": 200, "width": 64, "height": 64, "noise": 0.05},
            "preprocess": {"resize_to": [16, 16], "augment_ops": [{"op": "hflip"}]},
            "models": [{"kind": "svm"}],
            "cv": {"n_splits": 3, "test_fraction": 0.1},
            "mode": "both",
            "seed": 42
        }));
        let summary = run_into(config, out.path());

        let hybrid = summary
            .report
            .branches
            .iter()
            .find(|b| b.branch == "hybrid")
            .expect("hybrid branch present");
        let svm = hybrid
            .models
            .iter()
            .find(|m| m.kind == "svm")
            .expect("svm report present");
        assert!(
            svm.scores.accuracy >= 0.95,
            "hybrid svm test accuracy {} below the floor",
            svm.scores.accuracy
        );

        // Branch-vs-branch headline table covers both branches with the full
        // metric and timing columns.
        let comparison =
            std::fs::read_to_string(out.path().join("tables/classical_vs_hybrid.csv")).unwrap();
        let mut lines = comparison.lines();
        assert_eq!(
            lines.next().unwrap(),
            "branch,model,accuracy,f1_score,cohens_kappa,roc_auc,f2_score,training_time_sec,evaluating_time_sec"
        );
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].starts_with("classical,svm,"));
        assert!(rows[1].starts_with("hybrid,svm,"));

        for branch in ["classical", "hybrid"] {
            let table = std::fs::read_to_string(
                out.path().join(format!("tables/model_comparison_{branch}.csv")),
            )
            .unwrap();
            assert!(table.starts_with(
                "model,accuracy,precision,recall,f1,f2,kappa,roc_auc,average_precision,cv_mean,cv_std,train_time_sec,eval_time_sec\n"
            ));
            assert_eq!(table.lines().count(), 2, "{branch} table should list one model");
        }

        // The two-branch accuracy gap is reported as measured.
        let ablation = summary.report.ablation.as_ref().expect("ablation emitted");
        let classical_acc = summary
            .report
            .comparison
            .iter()
            .find(|r| r.branch == "classical")
            .unwrap()
            .accuracy;
        assert_close(ablation.classical_accuracy, classical_acc, 1e-15, "ablation classical");
        assert_close(ablation.hybrid_accuracy, svm.scores.accuracy, 1e-15, "ablation hybrid");
        assert_close(
            ablation.accuracy_delta,
            ablation.hybrid_accuracy - ablation.classical_accuracy,
            1e-15,
            "ablation delta",
        );

        let elapsed = started.elapsed().as_secs_f64();
        assert!(elapsed < 120.0, "experiment took {elapsed:.1} s");
    });
}

/// Removes every JSON object key naming a wall-clock quantity.
fn strip_timing(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.retain(|k, _| !(k.contains("seconds") || k.contains("time_sec")));
            for v in map.values_mut() {
                strip_timing(v);
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Drops every CSV column whose header names a wall-clock quantity.
fn strip_time_columns(text: &str) -> String {
    let mut lines = text.lines();
    let header = match lines.next() {
        Some(h) => h,
        None => return String::new(),
    };
    let keep: Vec<bool> = header.split(',').map(|name| !name.contains("time")).collect();
    let mut out = String::new();
    for line in std::iter::once(header).chain(lines) {
        let kept: Vec<&str> = line
            .split(',')
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(f, _)| f)
            .collect();
        out.push_str(&kept.join(","));
        out.push('\n');
    }
    out
}

fn small_run_config(out_dir: &Path) -> PipelineConfig {
    let mut config = config_from_json(serde_json::json!({
        "dataset": {"source": "synthetic", "n_per_class": 30, "width": 32, "height": 32, "noise": 0.05},
        "preprocess": {"resize_to": [8, 8], "augment_ops": [{"op": "hflip"}]},
        "models": [{"kind": "svm"}, {"kind": "knn", "k": 3}],
        "cv": {"n_splits": 3, "test_fraction": 0.2},
        "mode": "both",
        "seed": 7
    }));
    config.out_dir = out_dir.to_path_buf();
    config
}

#[test]
fn criterion_7_determinism() {
    criterion(7, "identical seeds reproduce identical artifacts", || {
        let tmp = TempDir::new().unwrap();
        let dir_a = tmp.path().join("a");
        let dir_b = tmp.path().join("b");
        let summary_a = run(&small_run_config(&dir_a)).unwrap();
        let summary_b = run(&small_run_config(&dir_b)).unwrap();

        let mut files_a = summary_a.files.clone();
        let mut files_b = summary_b.files.clone();
        files_a.sort();
        files_b.sort();
        assert_eq!(files_a, files_b, "runs emitted different file sets");
        for needed in [
            "report.json",
            "models/bundle_classical.json",
            "models/bundle_hybrid.json",
            "models/hybrid_svm.json",
            "curves/hybrid_knn_roc.csv",
            "tables/classical_vs_hybrid.csv",
            "tables/extraction_complexity.csv",
            "features/classical_test.csv",
        ] {
            assert!(
                files_a.iter().any(|f| f == Path::new(needed)),
                "expected artifact {needed} missing"
            );
        }

        for rel in &files_a {
            let bytes_a = std::fs::read(dir_a.join(rel)).unwrap();
            let bytes_b = std::fs::read(dir_b.join(rel)).unwrap();
            match rel.extension().and_then(|e| e.to_str()) {
                Some("json") => {
                    let mut a: serde_json::Value = serde_json::from_slice(&bytes_a).unwrap();
                    let mut b: serde_json::Value = serde_json::from_slice(&bytes_b).unwrap();
                    strip_timing(&mut a);
                    strip_timing(&mut b);
                    assert_eq!(a, b, "{} differs beyond timing fields", rel.display());
                }
                Some("csv") => {
                    let a = strip_time_columns(std::str::from_utf8(&bytes_a).unwrap());
                    let b = strip_time_columns(std::str::from_utf8(&bytes_b).unwrap());
                    assert_eq!(a, b, "{} differs beyond timing columns", rel.display());
                }
                _ => assert_eq!(bytes_a, bytes_b, "{} differs", rel.display()),
            }
        }
    });
}

#[test]
fn criterion_8_monte_carlo_cross_validation() {
    criterion(8, "monte carlo cross-validation is consistent and replayable", || {
        let (features, labels) = blob_dataset(30, 208);
        let data = Dataset::new(features, labels).unwrap();
        let spec = ModelSpec::Knn(KnnParams { k: 3 });
        let report = monte_carlo_cv(&spec, &data, 10, 0.2, 99).unwrap();

        assert_eq!(report.accuracies.len(), 10);
        let min = report.accuracies.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = report.accuracies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(min <= report.mean && report.mean <= max, "mean outside [min, max]");

        let mean: f64 = report.accuracies.iter().sum::<f64>() / 10.0;
        let var: f64 = report
            .accuracies
            .iter()
            .map(|a| (a - mean) * (a - mean))
            .sum::<f64>()
            / 9.0;
        assert_close(report.mean, mean, 1e-12, "stored mean");
        assert_close(report.std_dev, var.sqrt(), 1e-12, "stored std");

        let replay = monte_carlo_cv(&spec, &data, 10, 0.2, 99).unwrap();
        assert_eq!(report, replay, "seed replay changed the report");

        // A depth-0 tree always answers with the majority-free 0.5 leaf and
        // predicts the negative class, so every stratified split scores
        // exactly one half on this balanced set.
        let stump = ModelSpec::Dtree(TreeParams {
            max_depth: 0,
            min_samples_split: 2,
        });
        let stump_report = monte_carlo_cv(&stump, &data, 10, 0.2, 7).unwrap();
        for acc in &stump_report.accuracies {
            assert_eq!(*acc, 0.5, "stump split accuracy should be exactly one half");
        }
        assert_eq!(stump_report.mean, 0.5);
        assert_eq!(stump_report.std_dev, 0.0);
    });
}

#[test]
fn criterion_9_extraction_timing() {
    criterion(9, "extraction timing rows are self-consistent", || {
        let tmp = TempDir::new().unwrap();
        let summary = run(&small_run_config(tmp.path())).unwrap();
        let timing = &summary.report.extraction_timing;
        assert_eq!(timing.len(), 2, "one row per branch");
        assert!(timing.iter().any(|r| r.pipeline == "classical"));
        assert!(timing.iter().any(|r| r.pipeline == "hybrid"));

        for row in timing {
            assert!(row.repeats >= 5, "{}: only {} repeats", row.pipeline, row.repeats);
            assert_eq!(row.raw_seconds.len(), row.repeats);
            assert_eq!(row.samples, summary.report.dataset.test);
            assert!(row.raw_seconds.iter().all(|s| s.is_finite() && *s >= 0.0));
            let mean: f64 = row.raw_seconds.iter().sum::<f64>() / row.repeats as f64;
            let var: f64 = row
                .raw_seconds
                .iter()
                .map(|s| (s - mean) * (s - mean))
                .sum::<f64>()
                / (row.repeats - 1) as f64;
            assert_close(row.mean_seconds, mean, 1e-12, "row mean vs raw repeats");
            assert_close(row.std_seconds, var.sqrt(), 1e-12, "row std vs raw repeats");
            assert!((0.0..=1.0).contains(&row.classification_accuracy));
        }

        let table =
            std::fs::read_to_string(tmp.path().join("tables/extraction_complexity.csv")).unwrap();
        let mut lines = table.lines();
        assert_eq!(
            lines.next().unwrap(),
            "pipeline,samples,repeats,mean_time_sec,std_time_sec,classification_accuracy"
        );
        assert_eq!(lines.count(), 2);
    });
}
