//! Image, mask, and landmark file handling.

use std::path::Path;

use anyhow::{Context, Result};
use fairqa_core::image::RgbImage;
use fairqa_core::regions::{EyeAnnotation, RegionMask};
use serde::Deserialize;

/// Decodes any supported image file into an owned RGB buffer.
pub fn load_rgb_image(path: &Path) -> Result<RgbImage> {
    let img = image::open(path)
        .with_context(|| format!("opening image {}", path.display()))?
        .to_rgb8();
    RgbImage::new(img.width(), img.height(), img.into_raw())
        .map_err(|e| anyhow::anyhow!("decoded image has an inconsistent buffer: {e}"))
}

/// Encodes an RGB buffer as PNG.
pub fn save_rgb_image(img: &RgbImage, path: &Path) -> Result<()> {
    let buffer = image::RgbImage::from_raw(img.width(), img.height(), img.data().to_vec())
        .expect("buffer length is width*height*3 by construction");
    buffer
        .save(path)
        .with_context(|| format!("writing image {}", path.display()))?;
    Ok(())
}

/// Loads a single-channel mask file; a pixel belongs to the region iff
/// its 8-bit value exceeds 127, which tolerates anti-aliased masks.
pub fn load_mask(path: &Path) -> Result<RegionMask> {
    let img = image::open(path)
        .with_context(|| format!("opening mask {}", path.display()))?
        .to_luma8();
    let bits: Vec<bool> = img.as_raw().iter().map(|&v| v > 127).collect();
    RegionMask::new(img.width(), img.height(), bits)
        .map_err(|e| anyhow::anyhow!("decoded mask has an inconsistent buffer: {e}"))
}

/// Writes a mask as an 8-bit PNG of 0/255 values.
pub fn save_mask(mask: &RegionMask, path: &Path) -> Result<()> {
    let data: Vec<u8> = mask
        .bits()
        .iter()
        .map(|&b| if b { 255 } else { 0 })
        .collect();
    let buffer = image::GrayImage::from_raw(mask.width(), mask.height(), data)
        .expect("buffer length is width*height by construction");
    buffer
        .save(path)
        .with_context(|| format!("writing mask {}", path.display()))?;
    Ok(())
}

#[derive(Debug, Deserialize)]
struct EyeFile {
    polygon: Vec<[f64; 2]>,
    iris_center: [f64; 2],
    iris_radius: f64,
}

/// Loads per-eye landmark annotations from a JSON array of
/// `{polygon, iris_center, iris_radius}` objects.
pub fn load_landmarks(path: &Path) -> Result<Vec<EyeAnnotation>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading landmarks {}", path.display()))?;
    let eyes: Vec<EyeFile> = serde_json::from_str(&text)
        .with_context(|| format!("parsing landmarks {}", path.display()))?;
    eyes.into_iter()
        .map(|e| {
            EyeAnnotation::new(e.polygon, e.iris_center, e.iris_radius)
                .map_err(|err| anyhow::anyhow!("{}: {err}", path.display()))
        })
        .collect()
}
