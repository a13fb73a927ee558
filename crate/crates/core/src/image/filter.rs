//! Spatial denoising filters: Gaussian and median.

use super::{GrayImage, ImageError};

/// Convolves with a normalised 2-D Gaussian kernel.
///
/// `kernel_size` must be odd; borders are handled by edge replication and the
/// output is clamped to `[0, 1]` (a formality — the kernel weights are convex).
pub fn gaussian_filter(
    img: &GrayImage,
    sigma: f64,
    kernel_size: usize,
) -> Result<GrayImage, ImageError> {
    if !(sigma > 0.0) {
        return Err(ImageError::Config(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if kernel_size % 2 == 0 || kernel_size == 0 {
        return Err(ImageError::Config(format!(
            "kernel size must be odd, got {kernel_size}"
        )));
    }

    let r = (kernel_size / 2) as isize;
    let mut kernel = Vec::with_capacity(kernel_size * kernel_size);
    let mut sum = 0.0;
    for dy in -r..=r {
        for dx in -r..=r {
            let w = (-((dx * dx + dy * dy) as f64) / (2.0 * sigma * sigma)).exp();
            kernel.push(w);
            sum += w;
        }
    }
    for w in &mut kernel {
        *w /= sum;
    }

    let (w, h) = (img.width(), img.height());
    let out = GrayImage::from_fn(w, h, |x, y| {
        let mut acc = 0.0;
        let mut ki = 0;
        for dy in -r..=r {
            for dx in -r..=r {
                acc += kernel[ki] * img.get_clamped(x as isize + dx, y as isize + dy);
                ki += 1;
            }
        }
        acc
    });
    Ok(out)
}

/// Replaces each pixel by the median of its odd-sized square window, with
/// edge replication at the borders.
pub fn median_filter(img: &GrayImage, window: usize) -> Result<GrayImage, ImageError> {
    if window % 2 == 0 || window == 0 {
        return Err(ImageError::Config(format!(
            "window size must be odd, got {window}"
        )));
    }
    let r = (window / 2) as isize;
    let (w, h) = (img.width(), img.height());
    let mut buf = Vec::with_capacity(window * window);
    let out = GrayImage::from_fn(w, h, |x, y| {
        buf.clear();
        for dy in -r..=r {
            for dx in -r..=r {
                buf.push(img.get_clamped(x as isize + dx, y as isize + dy));
            }
        }
        buf.sort_by(|a, b| a.partial_cmp(b).expect("pixels are finite"));
        buf[buf.len() / 2]
    });
    Ok(out)
}
