//! `fairqa augment`: synthetic variants plus an extended manifest.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use fairqa_core::augment::{
    default_ladder, generate_variants, AugmentationKind, AugmentationSpec, ORIGINAL_TAG,
};
use serde::Deserialize;

use crate::cli::AugmentArgs;
use crate::error::AppResult;
use crate::imageio::{load_rgb_image, save_rgb_image};
use crate::manifest::{DatasetManifest, SampleEntry};

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ConfigKind {
    DynamicRangeCompression,
    ExposureScale,
}

#[derive(Debug, Deserialize)]
struct ConfigEntry {
    kind: ConfigKind,
    parameter: f64,
    tag: String,
}

fn load_config(path: &Path) -> Result<Vec<AugmentationSpec>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading augmentation config {}", path.display()))?;
    let entries: Vec<ConfigEntry> = serde_json::from_str(&text)
        .with_context(|| format!("parsing augmentation config {}", path.display()))?;
    entries
        .into_iter()
        .map(|e| {
            let kind = match e.kind {
                ConfigKind::DynamicRangeCompression => AugmentationKind::DynamicRangeCompression,
                ConfigKind::ExposureScale => AugmentationKind::ExposureScale,
            };
            AugmentationSpec::new(kind, e.parameter, &e.tag)
                .map_err(|err| anyhow::anyhow!("config entry {:?}: {err}", e.tag))
        })
        .collect()
}

fn file_extension(path: &str) -> String {
    Path::new(path)
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("png")
        .to_string()
}

/// Copies a per-sample side file (mask or landmarks) into the output
/// directory under a variant-independent name.
fn copy_side_file(
    manifest: &DatasetManifest,
    source: &Option<String>,
    sample_id: &str,
    suffix: &str,
    out_dir: &Path,
) -> Result<Option<String>> {
    let Some(rel) = source else {
        return Ok(None);
    };
    let name = format!("{sample_id}__{suffix}.{}", file_extension(rel));
    let dst = out_dir.join(&name);
    fs::copy(manifest.resolve(rel), &dst)
        .with_context(|| format!("copying {rel} to {}", dst.display()))?;
    Ok(Some(name))
}

pub fn run_augment(args: &AugmentArgs) -> AppResult<()> {
    let manifest = DatasetManifest::load(&args.manifest)?;
    let specs = match &args.config {
        Some(path) => load_config(path)?,
        None => default_ladder(),
    };
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;

    let mut samples: Vec<&SampleEntry> = manifest.samples().iter().collect();
    samples.sort_by(|a, b| a.sample_id.cmp(&b.sample_id));

    let mut extended: Vec<SampleEntry> = Vec::new();
    for sample in samples {
        let source_path = manifest.resolve(&sample.image_path);
        let image = load_rgb_image(&source_path)?;
        let variants = generate_variants(&image, &specs).map_err(anyhow::Error::from)?;

        let skin = copy_side_file(
            &manifest,
            &sample.skin_mask_path,
            &sample.sample_id,
            "skin_mask",
            &args.out_dir,
        )?;
        let sclera = copy_side_file(
            &manifest,
            &sample.sclera_mask_path,
            &sample.sample_id,
            "sclera_mask",
            &args.out_dir,
        )?;
        let landmarks = copy_side_file(
            &manifest,
            &sample.landmarks_path,
            &sample.sample_id,
            "landmarks",
            &args.out_dir,
        )?;

        for (tag, variant) in &variants {
            let is_original = tag == ORIGINAL_TAG;
            let image_name = if is_original {
                // Keep the original bytes and container format.
                let name = format!(
                    "{}__{tag}.{}",
                    sample.sample_id,
                    file_extension(&sample.image_path)
                );
                fs::copy(&source_path, args.out_dir.join(&name))
                    .with_context(|| format!("copying {}", source_path.display()))?;
                name
            } else {
                let name = format!("{}__{tag}.png", sample.sample_id);
                save_rgb_image(variant, &args.out_dir.join(&name))?;
                name
            };
            extended.push(SampleEntry {
                sample_id: if is_original {
                    sample.sample_id.clone()
                } else {
                    format!("{}__{tag}", sample.sample_id)
                },
                subject_id: sample.subject_id.clone(),
                group_label: sample.group_label.clone(),
                variant_tag: tag.clone(),
                image_path: image_name,
                skin_mask_path: skin.clone(),
                sclera_mask_path: sclera.clone(),
                landmarks_path: landmarks.clone(),
                embedding_id: match (&sample.embedding_id, is_original) {
                    (Some(id), true) => Some(id.clone()),
                    (Some(id), false) => Some(format!("{id}__{tag}")),
                    (None, _) => None,
                },
            });
        }
    }

    let manifest_path = args.out_dir.join("manifest.json");
    DatasetManifest::save(&extended, &manifest_path)?;
    println!(
        "wrote {} samples to {}",
        extended.len(),
        manifest_path.display()
    );
    Ok(())
}
