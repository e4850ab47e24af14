//! Synthetic fixtures shared by the CLI and acceptance suites: small
//! face-like images with disjoint skin and sclera zones, their masks,
//! manifests, and deterministic embeddings.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fairqa::imageio::{save_mask, save_rgb_image};
use fairqa::manifest::{DatasetManifest, SampleEntry};
use fairqa_core::image::RgbImage;
use fairqa_core::regions::RegionMask;

pub const IMG_W: u32 = 64;
pub const IMG_H: u32 = 48;

/// Two eye boxes: (x0, x1, y0, y1), half-open.
pub const SCLERA_BOXES: [(u32, u32, u32, u32); 2] = [(10, 22, 12, 18), (42, 54, 12, 18)];

pub fn in_sclera(x: u32, y: u32) -> bool {
    SCLERA_BOXES
        .iter()
        .any(|&(x0, x1, y0, y1)| x >= x0 && x < x1 && y >= y0 && y < y1)
}

fn jitter(x: u32, y: u32, modulus: i16) -> i16 {
    ((x as i16 * 31 + y as i16 * 17) % modulus) - modulus / 2
}

fn shifted(base: [u8; 3], delta: i16) -> [u8; 3] {
    [
        (base[0] as i16 + delta).clamp(0, 255) as u8,
        (base[1] as i16 + delta).clamp(0, 255) as u8,
        (base[2] as i16 + delta).clamp(0, 255) as u8,
    ]
}

/// A face-like test image: `skin_tone` everywhere except the two eye
/// boxes, which carry a whitish sclera tone. Both zones get a small
/// coordinate-hash jitter so histograms are not degenerate;
/// `sclera_shift` nudges the sclera tone per subject.
pub fn synth_face(skin_tone: [u8; 3], sclera_shift: i16) -> RgbImage {
    RgbImage::from_fn(IMG_W, IMG_H, |x, y| {
        if in_sclera(x, y) {
            shifted([235, 233, 228], jitter(x, y, 5) + sclera_shift)
        } else {
            shifted(skin_tone, jitter(x, y, 13) * 3)
        }
    })
}

pub fn sclera_mask() -> RegionMask {
    RegionMask::from_fn(IMG_W, IMG_H, in_sclera)
}

pub fn skin_mask() -> RegionMask {
    RegionMask::from_fn(IMG_W, IMG_H, |x, y| !in_sclera(x, y))
}

pub struct FixtureSubject {
    pub subject_id: String,
    pub group_label: String,
    pub skin_tone: [u8; 3],
    pub sclera_shift: i16,
}

/// Writes a one-sample-per-subject dataset (images, masks, manifest)
/// into `dir` and returns the manifest path. Embedding ids equal
/// sample ids.
pub fn write_dataset(dir: &Path, subjects: &[FixtureSubject]) -> PathBuf {
    fs::create_dir_all(dir).unwrap();
    let mut samples = Vec::new();
    for s in subjects {
        let sid = format!("{}-f", s.subject_id);
        let image = synth_face(s.skin_tone, s.sclera_shift);
        save_rgb_image(&image, &dir.join(format!("{sid}.png"))).unwrap();
        save_mask(&skin_mask(), &dir.join(format!("{sid}_skin.png"))).unwrap();
        save_mask(&sclera_mask(), &dir.join(format!("{sid}_sclera.png"))).unwrap();
        samples.push(SampleEntry {
            sample_id: sid.clone(),
            subject_id: s.subject_id.clone(),
            group_label: s.group_label.clone(),
            variant_tag: "orig".to_string(),
            image_path: format!("{sid}.png"),
            skin_mask_path: Some(format!("{sid}_skin.png")),
            sclera_mask_path: Some(format!("{sid}_sclera.png")),
            landmarks_path: None,
            embedding_id: Some(sid),
        });
    }
    let path = dir.join("manifest.json");
    DatasetManifest::save(&samples, &path).unwrap();
    path
}

pub fn four_subject_dataset(dir: &Path) -> PathBuf {
    write_dataset(
        dir,
        &[
            FixtureSubject {
                subject_id: "subj-a".into(),
                group_label: "dark".into(),
                skin_tone: [95, 65, 50],
                sclera_shift: 0,
            },
            FixtureSubject {
                subject_id: "subj-b".into(),
                group_label: "dark".into(),
                skin_tone: [110, 78, 60],
                sclera_shift: 1,
            },
            FixtureSubject {
                subject_id: "subj-c".into(),
                group_label: "light".into(),
                skin_tone: [215, 185, 165],
                sclera_shift: 2,
            },
            FixtureSubject {
                subject_id: "subj-d".into(),
                group_label: "light".into(),
                skin_tone: [200, 170, 150],
                sclera_shift: 3,
            },
        ],
    )
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

/// Deterministic embedding for a sample: a per-subject base direction
/// plus a perturbation that grows with how far the variant tag sits
/// down the degradation ladder, so lower-quality variants drift.
pub fn deterministic_embedding(subject_id: &str, variant_tag: &str) -> Vec<f64> {
    let dim = 8;
    let sh = fnv1a(subject_id.as_bytes());
    let mut base: Vec<f64> = (0..dim)
        .map(|i| (((sh >> (i * 8)) & 0xff) as f64 / 255.0) * 2.0 - 1.0)
        .collect();
    let severity = match variant_tag {
        "orig" => 0.0,
        "dr60" | "ex50" => 0.15,
        "dr40" | "ex30" => 0.3,
        _ => 0.5,
    };
    let vh = fnv1a(variant_tag.as_bytes());
    for (i, v) in base.iter_mut().enumerate() {
        let noise = (((vh >> (i * 8)) & 0xff) as f64 / 255.0) * 2.0 - 1.0;
        *v += severity * noise;
    }
    base
}

/// Writes one embedding row per manifest sample.
pub fn write_embeddings_for_manifest(manifest_path: &Path, out: &Path) {
    let manifest = DatasetManifest::load(manifest_path).unwrap();
    let mut text = String::from("embedding_id,v0,v1,v2,v3,v4,v5,v6,v7\n");
    for s in manifest.samples() {
        let id = s
            .embedding_id
            .clone()
            .expect("fixture samples carry embedding ids");
        let vec = deterministic_embedding(&s.subject_id, &s.variant_tag);
        text.push_str(&id);
        for v in vec {
            text.push_str(&format!(",{v:.6}"));
        }
        text.push('\n');
    }
    fs::write(out, text).unwrap();
}

pub fn fairqa_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fairqa"))
}

pub fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("spawning fairqa");
    assert!(
        out.status.success(),
        "command failed ({:?}):\nstdout: {}\nstderr: {}",
        cmd,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}
