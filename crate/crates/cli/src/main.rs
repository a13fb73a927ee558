//! `qfuse`: drive the hybrid quantum–classical classification pipeline from
//! the command line.
//!
//! Exit codes: 0 on success, 1 for usage/config/format problems, 2 for
//! dataset problems, 3 for runtime failures.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use qfuse_core::pipeline::{
    generate_synthetic, load_directory, load_png, run, save_png, EvalReport, Mode, ModelBundle,
    PipelineConfig, PipelineError, SyntheticSpec,
};
use qfuse_core::seed::{derive_seed, stream};

#[derive(Parser)]
#[command(
    name = "qfuse",
    version,
    about = "Hybrid quantum-classical fracture classification pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic PNG dataset (fractured/ and normal/ folders).
    ///
    /// The same seed produces the same images as a pipeline run configured
    /// with the synthetic source and that seed.
    Synth {
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Images per class.
        #[arg(long, default_value_t = 200)]
        per_class: usize,
        /// Image width in pixels.
        #[arg(long, default_value_t = 64)]
        width: usize,
        /// Image height in pixels.
        #[arg(long, default_value_t = 64)]
        height: usize,
        /// Additive uniform noise amplitude.
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Validate a dataset directory and report what would be ingested.
    IngestCheck {
        /// Dataset root (flat or pre-split layout).
        #[arg(long)]
        path: PathBuf,
    },
    /// Run the full pipeline from a JSON config file.
    Run {
        /// Path to the pipeline config JSON.
        #[arg(long)]
        config: PathBuf,
        /// Override the configured mode: classical, hybrid, or both.
        #[arg(long)]
        mode: Option<String>,
        /// Override the configured master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the configured output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify PNG images with a saved model bundle (one JSON line each).
    Predict {
        /// Path to a bundle produced by `run` (models/bundle_<branch>.json).
        #[arg(long)]
        model: PathBuf,
        /// Images to classify.
        #[arg(required = true)]
        images: Vec<PathBuf>,
    },
    /// Pretty-print the tables of a run report.
    Report {
        /// Path to a report.json produced by `run`.
        #[arg(long)]
        report: PathBuf,
    },
}

fn main() {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            std::process::exit(1);
        }
    };
    if let Err(err) = execute(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn parse_mode(text: &str) -> Result<Mode, PipelineError> {
    match text {
        "classical" => Ok(Mode::Classical),
        "hybrid" => Ok(Mode::Hybrid),
        "both" => Ok(Mode::Both),
        other => Err(PipelineError::Config(format!(
            "unknown mode `{other}`; expected classical, hybrid, or both"
        ))),
    }
}

fn execute(command: Command) -> Result<(), PipelineError> {
    match command {
        Command::Synth {
            out,
            per_class,
            width,
            height,
            noise,
            seed,
        } => {
            let spec = SyntheticSpec {
                n_per_class: per_class,
                width,
                height,
                noise,
            };
            let (images, labels) = generate_synthetic(&spec, derive_seed(seed, stream::SYNTH))?;
            let mut counters = [0usize; 2];
            for (img, &label) in images.iter().zip(&labels) {
                let folder = if label == 1 { "fractured" } else { "normal" };
                let dir = out.join(folder);
                std::fs::create_dir_all(&dir)?;
                save_png(img, &dir.join(format!("img_{:04}.png", counters[label as usize])))?;
                counters[label as usize] += 1;
            }
            println!(
                "wrote {} fractured and {} normal images to {}",
                counters[1],
                counters[0],
                out.display()
            );
            Ok(())
        }
        Command::IngestCheck { path } => {
            let result = load_directory(&path)?;
            let positives = result.labels.iter().filter(|&&l| l == 1).count();
            println!("images:    {}", result.images.len());
            println!("fractured: {positives}");
            println!("normal:    {}", result.images.len() - positives);
            println!("skipped:   {}", result.skipped);
            match result.pre_split {
                Some(parts) => println!(
                    "layout:    pre-split (train {}, val {}, test {})",
                    parts[0].len(),
                    parts[1].len(),
                    parts[2].len()
                ),
                None => println!("layout:    flat"),
            }
            Ok(())
        }
        Command::Run {
            config,
            mode,
            seed,
            out,
        } => {
            let bytes = std::fs::read(&config)?;
            let mut config = PipelineConfig::from_json(&bytes)?;
            if let Some(mode) = mode {
                config.mode = parse_mode(&mode)?;
            }
            if let Some(seed) = seed {
                config.seed = seed;
            }
            if let Some(out) = out {
                config.out_dir = out;
            }
            let summary = run(&config)?;
            println!(
                "wrote {} files to {}",
                summary.files.len(),
                summary.out_dir.display()
            );
            print_comparison(&summary.report);
            Ok(())
        }
        Command::Predict { model, images } => {
            let bundle = ModelBundle::from_json(&std::fs::read(&model)?)?;
            for path in images {
                let img = load_png(&path)?;
                let results = bundle.classify(&img)?;
                let predictions: Vec<serde_json::Value> = results
                    .into_iter()
                    .map(|(kind, label, score)| {
                        serde_json::json!({
                            "model": kind,
                            "label": if label == 1 { "fractured" } else { "normal" },
                            "score": score,
                        })
                    })
                    .collect();
                let line = serde_json::json!({
                    "image": path.display().to_string(),
                    "branch": bundle.mode,
                    "predictions": predictions,
                });
                println!("{line}");
            }
            Ok(())
        }
        Command::Report { report } => {
            let bytes = std::fs::read(&report)?;
            let parsed: EvalReport = serde_json::from_slice(&bytes)
                .map_err(|e| PipelineError::Format(format!("cannot parse report: {e}")))?;
            print_report(&parsed);
            Ok(())
        }
    }
}

fn print_comparison(report: &EvalReport) {
    println!();
    println!(
        "{:<10} {:<8} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "branch", "model", "accuracy", "f1", "kappa", "roc_auc", "f2"
    );
    for row in &report.comparison {
        println!(
            "{:<10} {:<8} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            row.branch, row.model, row.accuracy, row.f1_score, row.cohens_kappa, row.roc_auc, row.f2_score
        );
    }
    if let Some(ablation) = &report.ablation {
        println!(
            "\nhybrid - classical accuracy delta: {:+.4}",
            ablation.accuracy_delta
        );
    }
}

fn print_report(report: &EvalReport) {
    println!(
        "dataset: {} images (train {}, augmented {}, val {}, test {}, skipped {})",
        report.dataset.total,
        report.dataset.train,
        report.dataset.train_augmented,
        report.dataset.val,
        report.dataset.test,
        report.dataset.skipped
    );
    let evr_sum: f64 = report.pca.explained_variance_ratio.iter().sum();
    println!(
        "pca: {} components explaining {:.1}% of variance",
        report.pca.k,
        evr_sum * 100.0
    );
    for branch in &report.branches {
        println!("\n[{}] {} features", branch.branch, branch.feature_width);
        println!(
            "{:<8} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>11}",
            "model", "accuracy", "precision", "recall", "f1", "f2", "kappa", "roc_auc", "cv_mean±std"
        );
        for m in &branch.models {
            println!(
                "{:<8} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>5.3}±{:.3}",
                m.kind,
                m.scores.accuracy,
                m.scores.precision,
                m.scores.recall,
                m.scores.f1,
                m.scores.f2,
                m.scores.kappa,
                m.roc_auc,
                m.cv.mean,
                m.cv.std_dev
            );
        }
    }
    if !report.extraction_timing.is_empty() {
        println!();
        println!(
            "{:<10} {:>8} {:>8} {:>14} {:>13}",
            "pipeline", "samples", "repeats", "mean_time_sec", "std_time_sec"
        );
        for row in &report.extraction_timing {
            println!(
                "{:<10} {:>8} {:>8} {:>14.6} {:>13.6}",
                row.pipeline, row.samples, row.repeats, row.mean_seconds, row.std_seconds
            );
        }
    }
    print_comparison(report);
}
