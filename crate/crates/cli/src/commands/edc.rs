//! `fairqa edc`: per-region, per-group error-vs-discard evaluation.

use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use fairqa_core::edc::{build_mated_pairs, edc_curve, EdcCurve, EdcParams, EdcSample};
use serde::Serialize;

use crate::cli::{ComponentChoice, EdcArgs};
use crate::embeddings::EmbeddingStore;
use crate::error::{AppError, AppResult};
use crate::manifest::{DatasetManifest, SampleEntry};
use crate::scores::{read_scores, score_map, RegionKind};

#[derive(Serialize)]
struct Summary {
    threshold: f64,
    starting_error: f64,
    pauc: f64,
    pauc_limit: f64,
}

fn pick_component(c: &fairqa_core::quality::QualityComponents, choice: ComponentChoice) -> f64 {
    match choice {
        ComponentChoice::DynamicRange => c.dynamic_range.value() as f64,
        ComponentChoice::UnderExposure => c.under_exposure.value() as f64,
        ComponentChoice::OverExposure => c.over_exposure.value() as f64,
    }
}

/// `<prefix>.<region>.<ext>`, appended so prefixes containing dots
/// survive intact.
fn prefixed_path(prefix: &std::path::Path, region: &str, ext: &str) -> std::path::PathBuf {
    let mut name = prefix.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".{region}.{ext}"));
    prefix.with_file_name(name)
}

fn write_curve_csv(curve: &EdcCurve, path: &std::path::Path) -> Result<()> {
    let mut file = fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
    writeln!(file, "discard,error")?;
    for (d, e) in curve.discard_fractions.iter().zip(&curve.error_rates) {
        writeln!(file, "{d},{e}")?;
    }
    Ok(())
}

pub fn run_edc(args: &EdcArgs) -> AppResult<()> {
    if !(args.starting_error > 0.0 && args.starting_error < 1.0) {
        return Err(AppError::usage("--starting-error must be in (0, 1)"));
    }
    if !(args.grid_step > 0.0 && args.grid_step < 1.0) {
        return Err(AppError::usage(
            "--grid-step must be in (0, 1) so the grid has at least one point below 1",
        ));
    }
    if !(args.pauc_limit > 0.0 && args.pauc_limit <= 1.0) {
        return Err(AppError::usage("--pauc-limit must be in (0, 1]"));
    }
    if args.min_retained == 0 {
        return Err(AppError::usage("--min-retained must be at least 1"));
    }

    let manifest = DatasetManifest::load(&args.manifest)?;
    if args.group != "all" && !manifest.group_labels().contains(&args.group.as_str()) {
        return Err(AppError::usage(format!(
            "unknown group {:?}; manifest has: {}",
            args.group,
            manifest.group_labels().join(", ")
        )));
    }

    let scores = score_map(&read_scores(&args.scores)?);
    let store = EmbeddingStore::load(&args.embeddings)?;

    let mut samples: Vec<&SampleEntry> = manifest.samples_in_group(&args.group);
    samples.sort_by(|a, b| a.sample_id.cmp(&b.sample_id));

    if let Some(parent) = args.out_prefix.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
    }

    for kind in args.region.kinds() {
        let curve = evaluate_region(args, &samples, &scores, &store, kind)?;

        let csv_path = prefixed_path(&args.out_prefix, kind.name(), "csv");
        write_curve_csv(&curve, &csv_path)?;

        let summary = Summary {
            threshold: curve.threshold,
            starting_error: curve.starting_error,
            pauc: curve.pauc,
            pauc_limit: curve.pauc_limit,
        };
        let json_path = prefixed_path(&args.out_prefix, kind.name(), "json");
        let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        text.push('\n');
        fs::write(&json_path, text).with_context(|| format!("writing {}", json_path.display()))?;

        println!(
            "{}: {} points, pauc {} (csv: {}, json: {})",
            kind,
            curve.discard_fractions.len(),
            curve.pauc,
            csv_path.display(),
            json_path.display()
        );
    }
    Ok(())
}

fn evaluate_region(
    args: &EdcArgs,
    samples: &[&SampleEntry],
    scores: &std::collections::BTreeMap<
        (String, RegionKind),
        fairqa_core::quality::QualityComponents,
    >,
    store: &EmbeddingStore,
    kind: RegionKind,
) -> AppResult<EdcCurve> {
    let mut edc_samples = Vec::with_capacity(samples.len());
    for sample in samples {
        let components = scores
            .get(&(sample.sample_id.clone(), kind))
            .ok_or_else(|| {
                anyhow::anyhow!(
                    "missing {kind} quality for sample {:?} in {}",
                    sample.sample_id,
                    args.scores.display()
                )
            })?;
        let embedding_id = sample
            .embedding_id
            .as_ref()
            .ok_or_else(|| anyhow::anyhow!("sample {:?} has no embedding id", sample.sample_id))?;
        let embedding = store.get(embedding_id).ok_or_else(|| {
            anyhow::anyhow!(
                "missing embedding {embedding_id:?} for sample {:?}",
                sample.sample_id
            )
        })?;
        edc_samples.push(EdcSample {
            sample_id: sample.sample_id.clone(),
            subject_id: sample.subject_id.clone(),
            quality: pick_component(components, args.component),
            embedding: embedding.to_vec(),
        });
    }

    let pairs = build_mated_pairs(&edc_samples).map_err(anyhow::Error::from)?;
    let params = EdcParams {
        starting_error: args.starting_error,
        discard_grid: EdcParams::discard_grid_with_step(args.grid_step)
            .map_err(anyhow::Error::from)?,
        min_retained: args.min_retained,
        pauc_limit: args.pauc_limit,
    };
    let curve = edc_curve(&pairs, &params).map_err(|e| {
        anyhow::anyhow!(
            "EDC over {} pairs for region {kind} failed: {e}",
            pairs.len()
        )
    })?;
    Ok(curve)
}
