//! Synthetic degradations for building evaluation sets: dynamic-range
//! compression toward mid-gray and linear exposure scaling.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::image::RgbImage;

/// Tag under which the untouched input appears in variant lists.
pub const ORIGINAL_TAG: &str = "orig";

/// Shrinks every channel toward 128: `v' = round(c·v + (1−c)·128)`.
///
/// `c = 1` leaves the image unchanged; smaller `c` compresses the value
/// range to `[128(1−c), 128 + 127c]`. The value 128 is preserved for
/// every `c`.
pub fn compress_dynamic_range(image: &RgbImage, c: f64) -> Result<RgbImage, Error> {
    if c.is_nan() || c <= 0.0 || c > 1.0 {
        return Err(Error::InvalidParameter(
            "compression factor must be in (0, 1]",
        ));
    }
    Ok(image
        .map_channels(|v| libm::round(c * v as f64 + (1.0 - c) * 128.0).clamp(0.0, 255.0) as u8))
}

/// Linear gain with clamping: `v' = clamp(round(f·v), 0, 255)`.
///
/// `f > 1` simulates over-exposure, `f < 1` under-exposure.
pub fn scale_exposure(image: &RgbImage, f: f64) -> Result<RgbImage, Error> {
    if !f.is_finite() || f <= 0.0 {
        return Err(Error::InvalidParameter("exposure factor must be positive"));
    }
    Ok(image.map_channels(|v| libm::round(f * v as f64).clamp(0.0, 255.0) as u8))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugmentationKind {
    DynamicRangeCompression,
    ExposureScale,
}

/// One synthetic degradation: a transform kind, its parameter, and the
/// tag the output is filed under.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentationSpec {
    kind: AugmentationKind,
    parameter: f64,
    tag: String,
}

impl AugmentationSpec {
    pub fn new(kind: AugmentationKind, parameter: f64, tag: &str) -> Result<Self, Error> {
        match kind {
            AugmentationKind::DynamicRangeCompression => {
                if parameter.is_nan() || parameter <= 0.0 || parameter > 1.0 {
                    return Err(Error::InvalidParameter(
                        "compression factor must be in (0, 1]",
                    ));
                }
            }
            AugmentationKind::ExposureScale => {
                if !parameter.is_finite() || parameter <= 0.0 {
                    return Err(Error::InvalidParameter("exposure factor must be positive"));
                }
            }
        }
        Ok(Self {
            kind,
            parameter,
            tag: tag.to_string(),
        })
    }

    pub fn kind(&self) -> AugmentationKind {
        self.kind
    }

    pub fn parameter(&self) -> f64 {
        self.parameter
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn apply(&self, image: &RgbImage) -> RgbImage {
        match self.kind {
            AugmentationKind::DynamicRangeCompression => {
                compress_dynamic_range(image, self.parameter)
                    .expect("parameter validated at construction")
            }
            AugmentationKind::ExposureScale => {
                scale_exposure(image, self.parameter).expect("parameter validated at construction")
            }
        }
    }
}

/// The stock degradation ladder: compression factors 0.6/0.4/0.2 and
/// under-exposure gains 0.5/0.3/0.15.
pub fn default_ladder() -> Vec<AugmentationSpec> {
    use AugmentationKind::*;
    [
        (DynamicRangeCompression, 0.6, "dr60"),
        (DynamicRangeCompression, 0.4, "dr40"),
        (DynamicRangeCompression, 0.2, "dr20"),
        (ExposureScale, 0.5, "ex50"),
        (ExposureScale, 0.3, "ex30"),
        (ExposureScale, 0.15, "ex15"),
    ]
    .into_iter()
    .map(|(k, p, t)| AugmentationSpec::new(k, p, t).expect("stock parameters are valid"))
    .collect()
}

/// Over-exposure gains 1.5/2.0/3.0 for building bright-degradation sets.
pub fn over_exposure_ladder() -> Vec<AugmentationSpec> {
    [(1.5, "ex150"), (2.0, "ex200"), (3.0, "ex300")]
        .into_iter()
        .map(|(p, t)| {
            AugmentationSpec::new(AugmentationKind::ExposureScale, p, t)
                .expect("stock parameters are valid")
        })
        .collect()
}

/// Applies every spec to the image, returning the untouched original
/// under [`ORIGINAL_TAG`] followed by one output per spec, in spec
/// order. Tags must be unique and must not reuse the original's tag.
pub fn generate_variants(
    image: &RgbImage,
    specs: &[AugmentationSpec],
) -> Result<Vec<(String, RgbImage)>, Error> {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    seen.insert(ORIGINAL_TAG);
    for spec in specs {
        if !seen.insert(spec.tag()) {
            return Err(Error::DuplicateTag(spec.tag.clone()));
        }
    }
    let mut out = Vec::with_capacity(specs.len() + 1);
    out.push((ORIGINAL_TAG.to_string(), image.clone()));
    for spec in specs {
        out.push((spec.tag.clone(), spec.apply(image)));
    }
    Ok(out)
}
