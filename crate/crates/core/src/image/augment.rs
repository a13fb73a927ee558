//! Training-set augmentation: each configured op yields one variant of the
//! input image.  All ops are deterministic transforms, so the variant list is
//! a pure function of (image, ops).

use serde::{Deserialize, Serialize};

use super::resample::{rotate, scale};
use super::{GrayImage, ImageError};

/// One augmentation transform.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum AugmentOp {
    /// Rotation about the centre by a signed angle in degrees.
    Rotate { degrees: f64 },
    /// Mirror across the vertical axis.
    Hflip,
    /// Mirror across the horizontal axis.
    Vflip,
    /// Zoom about the centre by a positive factor.
    Scale { factor: f64 },
    /// Contrast adjustment about mid-gray: `0.5 + factor·(p − 0.5)`, clamped.
    Contrast { factor: f64 },
}

impl AugmentOp {
    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<(), ImageError> {
        match self {
            AugmentOp::Scale { factor } | AugmentOp::Contrast { factor } if !(*factor > 0.0) => {
                Err(ImageError::Config(format!(
                    "augmentation factor must be positive, got {factor}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Applies the op to an image.
    pub fn apply(&self, img: &GrayImage) -> Result<GrayImage, ImageError> {
        match *self {
            AugmentOp::Rotate { degrees } => Ok(rotate(img, degrees)),
            AugmentOp::Hflip => Ok(hflip(img)),
            AugmentOp::Vflip => Ok(vflip(img)),
            AugmentOp::Scale { factor } => scale(img, factor),
            AugmentOp::Contrast { factor } => contrast(img, factor),
        }
    }
}

/// Mirror across the vertical axis (left-right swap) — an exact involution.
pub fn hflip(img: &GrayImage) -> GrayImage {
    let w = img.width();
    GrayImage::from_fn(w, img.height(), |x, y| img.get(w - 1 - x, y))
}

/// Mirror across the horizontal axis (top-bottom swap) — an exact involution.
pub fn vflip(img: &GrayImage) -> GrayImage {
    let h = img.height();
    GrayImage::from_fn(img.width(), h, |x, y| img.get(x, h - 1 - y))
}

/// Contrast adjustment about mid-gray, clamped to `[0, 1]`.
pub fn contrast(img: &GrayImage, factor: f64) -> Result<GrayImage, ImageError> {
    if !(factor > 0.0) {
        return Err(ImageError::Config(format!(
            "contrast factor must be positive, got {factor}"
        )));
    }
    Ok(GrayImage::from_fn(img.width(), img.height(), |x, y| {
        0.5 + factor * (img.get(x, y) - 0.5)
    }))
}

/// Produces one variant per op, in op order.  The original image is not
/// included.
pub fn augment(img: &GrayImage, ops: &[AugmentOp]) -> Result<Vec<GrayImage>, ImageError> {
    ops.iter().map(|op| op.apply(img)).collect()
}
