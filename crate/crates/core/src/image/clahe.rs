//! Contrast-limited adaptive histogram equalisation.
//!
//! The image is divided into a grid of tiles; each tile gets its own 256-bin
//! histogram, clipped at `clip × (tile pixels / 256)` with the excess
//! redistributed evenly, and an equalisation mapping
//! `m(b) = (cdf(b) − cdf_min) / (n − cdf_min)`.  Every output pixel bilinearly
//! interpolates the mappings of its (up to four) surrounding tile centres,
//! which suppresses visible tile seams.

use super::{GrayImage, ImageError};

const BINS: usize = 256;

/// Per-tile equalisation mapping from bin index to output intensity.
struct TileMap {
    map: Vec<f64>,
}

/// Quantises an intensity in `[0, 1]` to its histogram bin.
#[inline]
fn bin_of(p: f64) -> usize {
    ((p * (BINS - 1) as f64).round() as usize).min(BINS - 1)
}

fn tile_mapping(img: &GrayImage, x0: usize, x1: usize, y0: usize, y1: usize, clip: f64) -> TileMap {
    let n = ((x1 - x0) * (y1 - y0)) as f64;
    let mut hist = vec![0.0f64; BINS];
    for y in y0..y1 {
        for x in x0..x1 {
            hist[bin_of(img.get(x, y))] += 1.0;
        }
    }

    // Clip and redistribute the excess evenly across all bins.
    let limit = clip * n / BINS as f64;
    let mut excess = 0.0;
    for h in &mut hist {
        if *h > limit {
            excess += *h - limit;
            *h = limit;
        }
    }
    if excess > 0.0 {
        let share = excess / BINS as f64;
        for h in &mut hist {
            *h += share;
        }
    }

    // Equalisation mapping from the cumulative histogram.
    let mut cdf = vec![0.0f64; BINS];
    let mut acc = 0.0;
    for (c, h) in cdf.iter_mut().zip(&hist) {
        acc += h;
        *c = acc;
    }
    let cdf_min = cdf
        .iter()
        .cloned()
        .find(|&c| c > 0.0)
        .unwrap_or(0.0);
    let denom = n - cdf_min;
    let map = if denom > 0.0 {
        cdf.iter().map(|&c| ((c - cdf_min) / denom).clamp(0.0, 1.0)).collect()
    } else {
        // Degenerate tile (all mass below cdf_min): keep levels unchanged.
        (0..BINS).map(|b| b as f64 / (BINS - 1) as f64).collect()
    };
    TileMap { map }
}

/// Contrast-limited adaptive histogram equalisation over a
/// `tiles.0 × tiles.1` (columns × rows) grid.
///
/// Fails when the image is smaller than the tile grid.  Output intensities
/// stay in `[0, 1]`; a constant image maps to a (possibly different) constant.
pub fn clahe(
    img: &GrayImage,
    tiles: (usize, usize),
    clip: f64,
) -> Result<GrayImage, ImageError> {
    let (tx, ty) = tiles;
    if tx == 0 || ty == 0 {
        return Err(ImageError::Config("tile counts must be positive".into()));
    }
    if !(clip > 0.0) {
        return Err(ImageError::Config(format!(
            "clip limit must be positive, got {clip}"
        )));
    }
    let (w, h) = (img.width(), img.height());
    if w < tx || h < ty {
        return Err(ImageError::Config(format!(
            "image {w}x{h} smaller than tile grid {tx}x{ty}"
        )));
    }

    // Integer tile boundaries partitioning the full image.
    let x_bounds: Vec<usize> = (0..=tx).map(|i| i * w / tx).collect();
    let y_bounds: Vec<usize> = (0..=ty).map(|j| j * h / ty).collect();
    let x_centers: Vec<f64> = (0..tx)
        .map(|i| (x_bounds[i] + x_bounds[i + 1]) as f64 / 2.0)
        .collect();
    let y_centers: Vec<f64> = (0..ty)
        .map(|j| (y_bounds[j] + y_bounds[j + 1]) as f64 / 2.0)
        .collect();

    let mut maps = Vec::with_capacity(tx * ty);
    for j in 0..ty {
        for i in 0..tx {
            maps.push(tile_mapping(
                img,
                x_bounds[i],
                x_bounds[i + 1],
                y_bounds[j],
                y_bounds[j + 1],
                clip,
            ));
        }
    }
    let map_at = |i: usize, j: usize| -> &TileMap { &maps[j * tx + i] };

    // Bracketing tile indices and interpolation weight along one axis:
    // pixels outside the first/last centre use the edge tile fully.
    let bracket = |coord: f64, centers: &[f64]| -> (usize, usize, f64) {
        if coord <= centers[0] {
            return (0, 0, 0.0);
        }
        if coord >= centers[centers.len() - 1] {
            let last = centers.len() - 1;
            return (last, last, 0.0);
        }
        let mut lo = 0;
        while centers[lo + 1] < coord {
            lo += 1;
        }
        let t = (coord - centers[lo]) / (centers[lo + 1] - centers[lo]);
        (lo, lo + 1, t)
    };

    let out = GrayImage::from_fn(w, h, |x, y| {
        let b = bin_of(img.get(x, y));
        let (i0, i1, sx) = bracket(x as f64, &x_centers);
        let (j0, j1, sy) = bracket(y as f64, &y_centers);
        let m00 = map_at(i0, j0).map[b];
        let m10 = map_at(i1, j0).map[b];
        let m01 = map_at(i0, j1).map[b];
        let m11 = map_at(i1, j1).map[b];
        let top = m00 * (1.0 - sx) + m10 * sx;
        let bottom = m01 * (1.0 - sx) + m11 * sx;
        top * (1.0 - sy) + bottom * sy
    });
    Ok(out)
}
