//! Bilinear geometric resampling: resize, rotation and scaling.

use super::{GrayImage, ImageError};

/// Bilinear sample at a fractional coordinate with border replication.
fn sample_clamped(img: &GrayImage, x: f64, y: f64) -> f64 {
    let x0 = x.floor();
    let y0 = y.floor();
    let tx = x - x0;
    let ty = y - y0;
    let (xi, yi) = (x0 as isize, y0 as isize);
    let p00 = img.get_clamped(xi, yi);
    let p10 = img.get_clamped(xi + 1, yi);
    let p01 = img.get_clamped(xi, yi + 1);
    let p11 = img.get_clamped(xi + 1, yi + 1);
    let top = p00 * (1.0 - tx) + p10 * tx;
    let bottom = p01 * (1.0 - tx) + p11 * tx;
    top * (1.0 - ty) + bottom * ty
}

/// Bilinear sample that reads zero outside the image bounds.
fn sample_zero(img: &GrayImage, x: f64, y: f64) -> f64 {
    let x0 = x.floor();
    let y0 = y.floor();
    let tx = x - x0;
    let ty = y - y0;
    let at = |xi: f64, yi: f64| -> f64 {
        if xi < 0.0 || yi < 0.0 || xi >= img.width() as f64 || yi >= img.height() as f64 {
            0.0
        } else {
            img.get(xi as usize, yi as usize)
        }
    };
    let p00 = at(x0, y0);
    let p10 = at(x0 + 1.0, y0);
    let p01 = at(x0, y0 + 1.0);
    let p11 = at(x0 + 1.0, y0 + 1.0);
    let top = p00 * (1.0 - tx) + p10 * tx;
    let bottom = p01 * (1.0 - tx) + p11 * tx;
    top * (1.0 - ty) + bottom * ty
}

/// Bilinear resize using half-pixel centre alignment, so resizing to the
/// current dimensions is the identity.
pub fn resize(img: &GrayImage, width: usize, height: usize) -> Result<GrayImage, ImageError> {
    if width == 0 || height == 0 {
        return Err(ImageError::Config(format!(
            "resize target must be positive, got {width}x{height}"
        )));
    }
    let sx = img.width() as f64 / width as f64;
    let sy = img.height() as f64 / height as f64;
    Ok(GrayImage::from_fn(width, height, |x, y| {
        let src_x = (x as f64 + 0.5) * sx - 0.5;
        let src_y = (y as f64 + 0.5) * sy - 0.5;
        sample_clamped(img, src_x, src_y)
    }))
}

/// Rotation about the image centre by `degrees` (counter-clockwise for the
/// usual screen orientation), bilinear, zero-filled outside the source.
pub fn rotate(img: &GrayImage, degrees: f64) -> GrayImage {
    let theta = degrees.to_radians();
    let (sin, cos) = theta.sin_cos();
    let cx = (img.width() as f64 - 1.0) / 2.0;
    let cy = (img.height() as f64 - 1.0) / 2.0;
    GrayImage::from_fn(img.width(), img.height(), |x, y| {
        // Inverse mapping: rotate the destination coordinate backwards.
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        let src_x = cx + cos * dx + sin * dy;
        let src_y = cy - sin * dx + cos * dy;
        sample_zero(img, src_x, src_y)
    })
}

/// Zoom about the image centre by `factor` (> 1 enlarges content, cropping
/// it; < 1 shrinks it, zero-filling the surround).  The canvas keeps its
/// size.
pub fn scale(img: &GrayImage, factor: f64) -> Result<GrayImage, ImageError> {
    if !(factor > 0.0) {
        return Err(ImageError::Config(format!(
            "scale factor must be positive, got {factor}"
        )));
    }
    let cx = (img.width() as f64 - 1.0) / 2.0;
    let cy = (img.height() as f64 - 1.0) / 2.0;
    Ok(GrayImage::from_fn(img.width(), img.height(), |x, y| {
        let src_x = cx + (x as f64 - cx) / factor;
        let src_y = cy + (y as f64 - cy) / factor;
        sample_zero(img, src_x, src_y)
    }))
}
