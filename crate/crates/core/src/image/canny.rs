//! Canny edge detection: Gaussian smoothing, Sobel gradients, non-maximum
//! suppression and double-threshold hysteresis.

use super::filter::gaussian_filter;
use super::{GrayImage, ImageError};

/// Smoothing applied before the gradient operator (a conventional choice for
/// this detector).
const SMOOTH_SIGMA: f64 = 1.4;
const SMOOTH_KERNEL: usize = 5;

/// Detects edges, returning a binary image (pixels exactly 0.0 or 1.0).
///
/// Gradient magnitudes are normalised by the image's maximum, so `low` and
/// `high` are thresholds in `[0, 1]` relative to the strongest edge.  Pixels
/// at or above `high` seed edges; pixels at or above `low` survive only when
/// 8-connected to a seed.  Raising `high` can therefore only shrink the
/// output.  A constant image has no gradients and yields all zeros.
pub fn canny(img: &GrayImage, low: f64, high: f64) -> Result<GrayImage, ImageError> {
    if !(0.0..=1.0).contains(&low) || !(0.0..=1.0).contains(&high) || low >= high {
        return Err(ImageError::Config(format!(
            "thresholds must satisfy 0 <= low < high <= 1, got {low} and {high}"
        )));
    }
    let (w, h) = (img.width(), img.height());
    let smoothed = gaussian_filter(img, SMOOTH_SIGMA, SMOOTH_KERNEL.min(odd_cap(w, h)))?;

    // Sobel gradients with replicated borders.
    let mut gx = vec![0.0f64; w * h];
    let mut gy = vec![0.0f64; w * h];
    let mut mag = vec![0.0f64; w * h];
    let mut max_mag = 0.0f64;
    for y in 0..h {
        for x in 0..w {
            let s = |dx: isize, dy: isize| smoothed.get_clamped(x as isize + dx, y as isize + dy);
            let dx = (s(1, -1) + 2.0 * s(1, 0) + s(1, 1)) - (s(-1, -1) + 2.0 * s(-1, 0) + s(-1, 1));
            let dy = (s(-1, 1) + 2.0 * s(0, 1) + s(1, 1)) - (s(-1, -1) + 2.0 * s(0, -1) + s(1, -1));
            let m = dx.hypot(dy);
            gx[y * w + x] = dx;
            gy[y * w + x] = dy;
            mag[y * w + x] = m;
            max_mag = max_mag.max(m);
        }
    }
    if max_mag == 0.0 {
        return GrayImage::constant(w, h, 0.0);
    }
    for m in &mut mag {
        *m /= max_mag;
    }

    // Non-maximum suppression: keep a pixel only if it is not exceeded by the
    // neighbour ahead along the gradient direction and strictly exceeds the
    // neighbour behind (the asymmetry deterministically thins two-pixel
    // plateaus to one).
    let mut thin = vec![0.0f64; w * h];
    for y in 0..h {
        for x in 0..w {
            let idx = y * w + x;
            let m = mag[idx];
            if m == 0.0 {
                continue;
            }
            let (fdx, fdy) = sector_offset(gx[idx], gy[idx]);
            let at = |dx: isize, dy: isize| -> f64 {
                let nx = x as isize + dx;
                let ny = y as isize + dy;
                if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    0.0
                } else {
                    mag[ny as usize * w + nx as usize]
                }
            };
            let ahead = at(fdx, fdy);
            let behind = at(-fdx, -fdy);
            if m >= ahead && m > behind {
                thin[idx] = m;
            }
        }
    }

    // Double threshold + hysteresis (8-connectivity flood from strong seeds).
    let mut out = vec![0.0f64; w * h];
    let mut stack: Vec<usize> = Vec::new();
    for (idx, &m) in thin.iter().enumerate() {
        if m >= high {
            out[idx] = 1.0;
            stack.push(idx);
        }
    }
    while let Some(idx) = stack.pop() {
        let x = (idx % w) as isize;
        let y = (idx / w) as isize;
        for dy in -1isize..=1 {
            for dx in -1isize..=1 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let nx = x + dx;
                let ny = y + dy;
                if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    continue;
                }
                let nidx = ny as usize * w + nx as usize;
                if out[nidx] == 0.0 && thin[nidx] >= low {
                    out[nidx] = 1.0;
                    stack.push(nidx);
                }
            }
        }
    }

    GrayImage::new(w, h, out)
}

/// Largest odd kernel size not exceeding the image's smaller side, capped at
/// the default; keeps tiny images processable.
fn odd_cap(w: usize, h: usize) -> usize {
    let side = w.min(h);
    if side % 2 == 0 {
        side.saturating_sub(1).max(1)
    } else {
        side
    }
}

/// Quantises a gradient direction into one of four sectors and returns the
/// forward neighbour offset along it: horizontal, vertical or one of the two
/// diagonals.
fn sector_offset(gx: f64, gy: f64) -> (isize, isize) {
    let angle = gy.atan2(gx).to_degrees();
    // Fold to [0, 180).
    let a = if angle < 0.0 { angle + 180.0 } else { angle };
    if !(22.5..157.5).contains(&a) {
        (1, 0) // ~0°: gradient along x.
    } else if a < 67.5 {
        (1, 1) // ~45°.
    } else if a < 112.5 {
        (0, 1) // ~90°: gradient along y.
    } else {
        (-1, 1) // ~135°.
    }
}
