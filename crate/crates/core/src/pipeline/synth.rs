//! Synthetic radiograph-like test images: a bright, slightly tilted
//! vertical band on a dark background.  "Fractured" samples interrupt the
//! band with a dimmed horizontal gap; "normal" samples leave it intact.
//!
//! Every image draws its geometry and noise from its own seeded generator,
//! so a dataset is a pure function of `(spec, seed)` and any single image
//! can be regenerated in isolation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::image::GrayImage;
use crate::seed::derive_seed;

use super::PipelineError;

/// Background intensity of the synthetic plate.
const BACKGROUND: f64 = 0.08;
/// Peak intensity at the band centre.
const PEAK: f64 = 0.85;

/// Shape of a generated dataset.  Class 0 is "normal", class 1 is
/// "fractured"; each class gets `n_per_class` images.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SyntheticSpec {
    pub n_per_class: usize,
    pub width: usize,
    pub height: usize,
    /// Amplitude of the additive uniform pixel noise.
    pub noise: f64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            n_per_class: 200,
            width: 64,
            height: 64,
            noise: 0.05,
        }
    }
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.n_per_class == 0 {
            return Err(PipelineError::Config(
                "n_per_class must be at least 1".into(),
            ));
        }
        if self.width < 8 || self.height < 8 {
            return Err(PipelineError::Config(format!(
                "synthetic images must be at least 8x8, got {}x{}",
                self.width, self.height
            )));
        }
        if !(0.0..=0.5).contains(&self.noise) {
            return Err(PipelineError::Config(format!(
                "noise must lie in [0, 0.5], got {}",
                self.noise
            )));
        }
        Ok(())
    }
}

/// Renders one image.  `class` 1 adds the fracture gap.
///
/// The draw order is fixed (band jitter, width factor, tilt, then the gap
/// parameters for class 1, then per-pixel noise row-major), so adding
/// images never perturbs existing ones.
fn render(spec: &SyntheticSpec, class: u8, rng: &mut ChaCha8Rng) -> GrayImage {
    let (w, h) = (spec.width as f64, spec.height as f64);
    let center = w * (0.5 + rng.gen_range(-0.08..0.08));
    let half_width = 0.11 * w * (1.0 + rng.gen_range(-0.1..0.1));
    let tilt = rng.gen_range(-0.15..0.15);

    let gap = if class == 1 {
        let gap_center = h * rng.gen_range(0.35..0.65);
        let gap_half = (h * rng.gen_range(0.04..0.08)).round().max(1.0);
        let contrast = rng.gen_range(0.7..0.85);
        Some((gap_center, gap_half, contrast))
    } else {
        None
    };

    let mut pixels = Vec::with_capacity(spec.width * spec.height);
    for y in 0..spec.height {
        let cx = center + tilt * (y as f64 - h / 2.0);
        let band_scale = match gap {
            Some((gc, gh, contrast)) if (y as f64 - gc).abs() <= gh => 1.0 - contrast,
            _ => 1.0,
        };
        for x in 0..spec.width {
            let u = (x as f64 - cx) / half_width;
            let band = (-u.powi(4)).exp();
            let mut p = BACKGROUND + (PEAK - BACKGROUND) * band * band_scale;
            if spec.noise > 0.0 {
                p += spec.noise * rng.gen_range(-1.0..1.0);
            }
            pixels.push(p.clamp(0.0, 1.0));
        }
    }
    GrayImage::new(spec.width, spec.height, pixels).expect("clamped pixels are valid")
}

/// Generates the full dataset: all normal images, then all fractured ones,
/// in index order.  Image `(class, i)` is seeded by
/// `derive_seed(seed, class << 32 | i)`.
pub fn generate(spec: &SyntheticSpec, seed: u64) -> Result<(Vec<GrayImage>, Vec<u8>), PipelineError> {
    spec.validate()?;
    let mut images = Vec::with_capacity(2 * spec.n_per_class);
    let mut labels = Vec::with_capacity(2 * spec.n_per_class);
    for class in 0u8..2 {
        for i in 0..spec.n_per_class {
            let image_seed = derive_seed(seed, ((class as u64) << 32) | i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(image_seed);
            images.push(render(spec, class, &mut rng));
            labels.push(class);
        }
    }
    Ok((images, labels))
}
