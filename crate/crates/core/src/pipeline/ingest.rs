//! PNG dataset ingestion.
//!
//! Two directory layouts are accepted:
//!
//! * flat: `<root>/fractured/*.png` and `<root>/normal/*.png`, split later
//!   by the seeded stratified splitter;
//! * pre-split: `<root>/{train,val,test}/{fractured,normal}/*.png`, in which
//!   case the on-disk partition is honoured verbatim (a missing `val` or
//!   `test` directory yields an empty part).
//!
//! Files are read in lexicographic name order so ingestion is independent
//! of filesystem enumeration order.  An unreadable PNG is skipped with a
//! warning and counted; a class folder that yields no usable image at all
//! is an error.

use std::path::Path;

use crate::image::GrayImage;

use super::PipelineError;

/// Label-1 class folder name.
const FRACTURED: &str = "fractured";
/// Label-0 class folder name.
const NORMAL: &str = "normal";

/// Images, labels, and how they were found on disk.
#[derive(Debug)]
pub struct IngestResult {
    pub images: Vec<GrayImage>,
    pub labels: Vec<u8>,
    /// Unreadable files that were skipped.
    pub skipped: usize,
    /// Index sets for train/val/test when the directory was pre-split.
    pub pre_split: Option<[Vec<usize>; 3]>,
}

/// Loads a dataset from `root`, auto-detecting the layout.
pub fn load_directory(root: &Path) -> Result<IngestResult, PipelineError> {
    if !root.is_dir() {
        return Err(PipelineError::Ingest(format!(
            "dataset directory {} does not exist",
            root.display()
        )));
    }
    let split_dirs = ["train", "val", "test"].map(|name| root.join(name));
    if split_dirs.iter().any(|d| d.is_dir()) {
        if !split_dirs[0].is_dir() {
            return Err(PipelineError::Ingest(format!(
                "pre-split dataset {} has no train directory",
                root.display()
            )));
        }
        let mut result = IngestResult {
            images: Vec::new(),
            labels: Vec::new(),
            skipped: 0,
            pre_split: None,
        };
        let mut parts: [Vec<usize>; 3] = Default::default();
        for (part, dir) in parts.iter_mut().zip(&split_dirs) {
            if !dir.is_dir() {
                continue;
            }
            let start = result.images.len();
            load_class_folders(dir, &mut result)?;
            part.extend(start..result.images.len());
        }
        result.pre_split = Some(parts);
        Ok(result)
    } else {
        let mut result = IngestResult {
            images: Vec::new(),
            labels: Vec::new(),
            skipped: 0,
            pre_split: None,
        };
        load_class_folders(root, &mut result)?;
        Ok(result)
    }
}

/// Reads `<dir>/fractured` and `<dir>/normal` into `result`.
fn load_class_folders(dir: &Path, result: &mut IngestResult) -> Result<(), PipelineError> {
    for (folder, label) in [(FRACTURED, 1u8), (NORMAL, 0u8)] {
        let class_dir = dir.join(folder);
        if !class_dir.is_dir() {
            return Err(PipelineError::Ingest(format!(
                "missing class folder {}",
                class_dir.display()
            )));
        }
        let before = result.images.len();
        let mut names: Vec<String> = Vec::new();
        for entry in std::fs::read_dir(&class_dir)? {
            let entry = entry?;
            let name = entry.file_name().to_string_lossy().into_owned();
            let is_png = Path::new(&name)
                .extension()
                .map(|e| e.eq_ignore_ascii_case("png"))
                .unwrap_or(false);
            if entry.path().is_file() && is_png {
                names.push(name);
            }
        }
        names.sort();
        for name in names {
            let path = class_dir.join(&name);
            match decode_png(&path) {
                Ok(img) => {
                    result.images.push(img);
                    result.labels.push(label);
                }
                Err(err) => {
                    log::warn!("skipping unreadable image {}: {err}", path.display());
                    result.skipped += 1;
                }
            }
        }
        if result.images.len() == before {
            return Err(PipelineError::Ingest(format!(
                "class folder {} contains no usable PNG images",
                class_dir.display()
            )));
        }
    }
    Ok(())
}

/// Loads one PNG from disk; unlike folder ingestion, a failure here is an
/// error rather than a skip.
pub fn load_png(path: &Path) -> Result<GrayImage, PipelineError> {
    decode_png(path)
        .map_err(|e| PipelineError::Ingest(format!("cannot read {}: {e}", path.display())))
}

/// Decodes one PNG to intensities in `[0, 1]`: 8-bit grayscale directly,
/// anything else through an RGB channel average.
fn decode_png(path: &Path) -> Result<GrayImage, String> {
    let dynamic = ::image::open(path).map_err(|e| e.to_string())?;
    let (gray, w, h) = match dynamic {
        ::image::DynamicImage::ImageLuma8(buf) => {
            let (w, h) = (buf.width() as usize, buf.height() as usize);
            let pixels = buf.pixels().map(|p| p.0[0] as f64 / 255.0).collect();
            (pixels, w, h)
        }
        other => {
            let rgb = other.to_rgb8();
            let (w, h) = (rgb.width() as usize, rgb.height() as usize);
            let pixels: Vec<f64> = rgb
                .pixels()
                .map(|p| (p.0[0] as f64 + p.0[1] as f64 + p.0[2] as f64) / (3.0 * 255.0))
                .collect();
            (pixels, w, h)
        }
    };
    GrayImage::new(w, h, gray).map_err(|e| e.to_string())
}

/// Encodes a `[0, 1]` image as an 8-bit grayscale PNG at `path`.
pub fn save_png(img: &GrayImage, path: &Path) -> Result<(), PipelineError> {
    let mut buf = ::image::GrayImage::new(img.width() as u32, img.height() as u32);
    for (x, y, px) in buf.enumerate_pixels_mut() {
        let v = (img.get(x as usize, y as usize) * 255.0).round().clamp(0.0, 255.0);
        *px = ::image::Luma([v as u8]);
    }
    buf.save(path)
        .map_err(|e| PipelineError::Ingest(format!("cannot write {}: {e}", path.display())))
}
