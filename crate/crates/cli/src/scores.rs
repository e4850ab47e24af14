//! Quality score persistence: the CSV exchanged between `score` and
//! `edc` runs.
//!
//! Format: header `sample_id,region,dynamic_range,under_exposure,
//! over_exposure`, one row per scored (sample, region), sorted by
//! sample id then region so reruns are byte-identical.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use fairqa_core::quality::{QualityComponents, QualityScore};

/// Which masked region a score was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegionKind {
    Sclera,
    Skin,
}

impl RegionKind {
    pub fn name(&self) -> &'static str {
        match self {
            RegionKind::Sclera => "sclera",
            RegionKind::Skin => "skin",
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sclera" => Ok(RegionKind::Sclera),
            "skin" => Ok(RegionKind::Skin),
            _ => bail!("unknown region {s:?} (expected \"skin\" or \"sclera\")"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreRecord {
    pub sample_id: String,
    pub region: RegionKind,
    pub components: QualityComponents,
}

/// Writes records sorted by (sample id, region); rewriting the same
/// records produces identical bytes.
pub fn write_scores(records: &[ScoreRecord], path: &Path) -> Result<()> {
    let mut sorted: Vec<&ScoreRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        a.sample_id
            .cmp(&b.sample_id)
            .then(a.region.name().cmp(b.region.name()))
    });
    let mut writer = csv::Writer::from_path(path)
        .with_context(|| format!("writing scores {}", path.display()))?;
    writer.write_record([
        "sample_id",
        "region",
        "dynamic_range",
        "under_exposure",
        "over_exposure",
    ])?;
    for r in sorted {
        writer.write_record([
            r.sample_id.as_str(),
            r.region.name(),
            &r.components.dynamic_range.value().to_string(),
            &r.components.under_exposure.value().to_string(),
            &r.components.over_exposure.value().to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_scores(path: &Path) -> Result<Vec<ScoreRecord>> {
    let mut reader = csv::Reader::from_path(path)
        .with_context(|| format!("reading scores {}", path.display()))?;
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.len() != 5 {
            bail!("score row has {} fields, expected 5", record.len());
        }
        let parse_score = |i: usize| -> Result<QualityScore> {
            let raw: u8 = record[i]
                .parse()
                .with_context(|| format!("bad score value {:?}", &record[i]))?;
            QualityScore::new(raw).map_err(|e| anyhow::anyhow!("{e}"))
        };
        out.push(ScoreRecord {
            sample_id: record[0].to_string(),
            region: record[1].parse()?,
            components: QualityComponents {
                dynamic_range: parse_score(2)?,
                under_exposure: parse_score(3)?,
                over_exposure: parse_score(4)?,
            },
        });
    }
    Ok(out)
}

/// Index read scores by (sample id, region) for joining against a
/// manifest.
pub fn score_map(records: &[ScoreRecord]) -> BTreeMap<(String, RegionKind), QualityComponents> {
    records
        .iter()
        .map(|r| ((r.sample_id.clone(), r.region), r.components))
        .collect()
}
