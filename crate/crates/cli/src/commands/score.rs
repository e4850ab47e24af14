//! `fairqa score`: per-sample, per-region quality components.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use fairqa_core::error::Error as CoreError;
use fairqa_core::quality::{assess, QualityComponents};
use fairqa_core::regions::{
    apply_mask, sclera_mask_from_landmarks, RegionMask, DEFAULT_MIN_SCLERA_PIXELS,
    DEFAULT_MIN_SKIN_PIXELS,
};

use crate::cli::ScoreArgs;
use crate::error::{AppError, AppResult};
use crate::imageio::{load_landmarks, load_mask, load_rgb_image};
use crate::manifest::{DatasetManifest, SampleEntry};
use crate::scores::{write_scores, RegionKind, ScoreRecord};

/// Stable reason codes for the rejects CSV.
fn reason_code(err: &CoreError) -> &'static str {
    match err {
        CoreError::ZeroAreaMask => "ZeroAreaMask",
        CoreError::RegionTooSmall { .. } => "RegionTooSmall",
        CoreError::DimensionMismatch { .. } => "DimensionMismatch",
        CoreError::InvalidPolygon(_) => "InvalidPolygon",
        CoreError::EmptyRegion => "EmptyRegion",
        CoreError::EmptyInput => "EmptyInput",
        _ => "Error",
    }
}

struct Reject {
    sample_id: String,
    region: RegionKind,
    reason: &'static str,
}

fn min_pixels_for(kind: RegionKind, override_value: Option<usize>) -> usize {
    override_value.unwrap_or(match kind {
        RegionKind::Skin => DEFAULT_MIN_SKIN_PIXELS,
        RegionKind::Sclera => DEFAULT_MIN_SCLERA_PIXELS,
    })
}

/// Builds the requested region's mask for one sample, or reports why it
/// cannot be built.
fn region_mask(
    manifest: &DatasetManifest,
    sample: &SampleEntry,
    kind: RegionKind,
    image_size: (u32, u32),
) -> Result<RegionMask, &'static str> {
    match kind {
        RegionKind::Skin => match &sample.skin_mask_path {
            Some(rel) => load_mask(&manifest.resolve(rel)).map_err(|_| "IoError"),
            None => Err("MissingRegionSource"),
        },
        RegionKind::Sclera => {
            if let Some(rel) = &sample.sclera_mask_path {
                load_mask(&manifest.resolve(rel)).map_err(|_| "IoError")
            } else if let Some(rel) = &sample.landmarks_path {
                let eyes = load_landmarks(&manifest.resolve(rel)).map_err(|_| "IoError")?;
                sclera_mask_from_landmarks(&eyes, image_size.0, image_size.1)
                    .map_err(|e| reason_code(&e))
            } else {
                Err("MissingRegionSource")
            }
        }
    }
}

fn score_one(
    manifest: &DatasetManifest,
    sample: &SampleEntry,
    kind: RegionKind,
    image: &fairqa_core::image::RgbImage,
    min_pixels: usize,
) -> Result<QualityComponents, &'static str> {
    let mask = region_mask(manifest, sample, kind, (image.width(), image.height()))?;
    let region = apply_mask(image, &mask, min_pixels).map_err(|e| reason_code(&e))?;
    Ok(assess(&region))
}

fn write_rejects(rejects: &mut [Reject], path: &Path) -> Result<()> {
    rejects.sort_by(|a, b| {
        a.sample_id
            .cmp(&b.sample_id)
            .then(a.region.name().cmp(b.region.name()))
    });
    let mut writer =
        csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    writer.write_record(["sample_id", "region", "reason"])?;
    for r in rejects.iter() {
        writer.write_record([r.sample_id.as_str(), r.region.name(), r.reason])?;
    }
    writer.flush()?;
    Ok(())
}

fn default_rejects_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".rejects.csv");
    out.with_file_name(name)
}

pub fn run_score(args: &ScoreArgs) -> AppResult<()> {
    if !(0.0..=1.0).contains(&args.max_reject_rate) {
        return Err(AppError::usage("--max-reject-rate must be in [0, 1]"));
    }
    let manifest = DatasetManifest::load(&args.manifest)?;
    let kinds = args.region.kinds();

    let mut samples: Vec<&SampleEntry> = manifest.samples().iter().collect();
    samples.sort_by(|a, b| a.sample_id.cmp(&b.sample_id));

    let mut records: Vec<ScoreRecord> = Vec::new();
    let mut rejects: Vec<Reject> = Vec::new();
    for sample in &samples {
        let image = load_rgb_image(&manifest.resolve(&sample.image_path));
        for &kind in &kinds {
            let outcome = match &image {
                Ok(img) => score_one(
                    &manifest,
                    sample,
                    kind,
                    img,
                    min_pixels_for(kind, args.min_region_pixels),
                ),
                Err(_) => Err("IoError"),
            };
            match outcome {
                Ok(components) => records.push(ScoreRecord {
                    sample_id: sample.sample_id.clone(),
                    region: kind,
                    components,
                }),
                Err(reason) => rejects.push(Reject {
                    sample_id: sample.sample_id.clone(),
                    region: kind,
                    reason,
                }),
            }
        }
    }

    write_scores(&records, &args.out)?;
    let rejects_path = args
        .rejects
        .clone()
        .unwrap_or_else(|| default_rejects_path(&args.out));
    write_rejects(&mut rejects, &rejects_path)?;

    let attempted = samples.len() * kinds.len();
    if attempted > 0 {
        let rate = rejects.len() as f64 / attempted as f64;
        if rate > args.max_reject_rate {
            return Err(AppError::Domain(anyhow::anyhow!(
                "rejected {} of {} rows ({rate:.2} > --max-reject-rate {}); see {}",
                rejects.len(),
                attempted,
                args.max_reject_rate,
                rejects_path.display()
            )));
        }
    }
    println!(
        "scored {} rows, rejected {} (scores: {}, rejects: {})",
        records.len(),
        rejects.len(),
        args.out.display(),
        rejects_path.display()
    );
    Ok(())
}
