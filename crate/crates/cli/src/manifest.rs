//! Dataset manifests: the JSON boundary where images, masks, landmark
//! files, group labels, and embedding ids enter the system.
//!
//! All paths inside a manifest are resolved relative to the manifest
//! file's directory, so fixture trees stay relocatable.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

fn default_group() -> String {
    "all".to_string()
}

fn default_variant() -> String {
    "orig".to_string()
}

/// One dataset sample: a subject's image variant plus its region
/// sources and optional embedding reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub sample_id: String,
    pub subject_id: String,
    #[serde(default = "default_group")]
    pub group_label: String,
    #[serde(default = "default_variant")]
    pub variant_tag: String,
    pub image_path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skin_mask_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sclera_mask_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub landmarks_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding_id: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestFile {
    samples: Vec<SampleEntry>,
}

/// A validated manifest plus the directory its paths resolve against.
#[derive(Debug, Clone)]
pub struct DatasetManifest {
    base_dir: PathBuf,
    samples: Vec<SampleEntry>,
}

impl DatasetManifest {
    /// Loads and validates a manifest JSON file. Sample ids must be
    /// unique and subject ids non-empty.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading manifest {}", path.display()))?;
        let parsed: ManifestFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing manifest {}", path.display()))?;
        let base_dir = path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        Self::from_samples(base_dir, parsed.samples)
    }

    pub fn from_samples(base_dir: PathBuf, samples: Vec<SampleEntry>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for s in &samples {
            if !seen.insert(s.sample_id.as_str()) {
                bail!("duplicate sample id {:?}", s.sample_id);
            }
            if s.subject_id.is_empty() {
                bail!("sample {:?} has an empty subject id", s.sample_id);
            }
        }
        Ok(Self { base_dir, samples })
    }

    /// Writes `samples` as a manifest JSON file.
    pub fn save(samples: &[SampleEntry], path: &Path) -> Result<()> {
        let file = ManifestFile {
            samples: samples.to_vec(),
        };
        let mut text = serde_json::to_string_pretty(&file)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing manifest {}", path.display()))?;
        Ok(())
    }

    pub fn samples(&self) -> &[SampleEntry] {
        &self.samples
    }

    pub fn base_dir(&self) -> &Path {
        &self.base_dir
    }

    /// A manifest-relative path turned absolute against the manifest's
    /// directory. Absolute inputs pass through unchanged.
    pub fn resolve(&self, relative: &str) -> PathBuf {
        let p = Path::new(relative);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// Distinct group labels, sorted.
    pub fn group_labels(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self
            .samples
            .iter()
            .map(|s| s.group_label.as_str())
            .collect();
        set.into_iter().collect()
    }

    /// Samples whose group matches; `"all"` selects every sample.
    pub fn samples_in_group(&self, group: &str) -> Vec<&SampleEntry> {
        self.samples
            .iter()
            .filter(|s| group == "all" || s.group_label == group)
            .collect()
    }
}
