//! Luminance-histogram quality components over a masked pixel region.
//!
//! Three component scores are computed from the 256-bin luminance
//! histogram of a region's pixels:
//!
//! - **dynamic range**: sigmoid-mapped Shannon entropy of the histogram,
//! - **under-exposure**: one minus the proportion of pixels with
//!   luminance at or below [`UNDER_EXPOSURE_MAX`],
//! - **over-exposure**: one minus the proportion of pixels with
//!   luminance at or above [`OVER_EXPOSURE_MIN`].
//!
//! All three are reported as integers in `[0, 100]`; higher is better.
//! The scores depend only on the multiset of pixel values, never on
//! pixel coordinates, so any region shape (face skin, eye sclera) feeds
//! the same math.

use alloc::vec::Vec;

use crate::error::Error;

/// ITU-R BT.601 luma weight for the red channel.
pub const LUMA_R: f64 = 0.299;
/// ITU-R BT.601 luma weight for the green channel.
pub const LUMA_G: f64 = 0.587;
/// ITU-R BT.601 luma weight for the blue channel.
pub const LUMA_B: f64 = 0.114;

/// Highest luminance counted as under-exposed (inclusive).
pub const UNDER_EXPOSURE_MAX: u8 = 25;
/// Lowest luminance counted as over-exposed (inclusive).
pub const OVER_EXPOSURE_MIN: u8 = 247;

/// BT.601 luma of one 8-bit RGB pixel, rounded half away from zero and
/// clamped to `[0, 255]`.
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    let l = LUMA_R * r as f64 + LUMA_G * g as f64 + LUMA_B * b as f64;
    libm::round(l).clamp(0.0, 255.0) as u8
}

/// The masked RGB pixels of one region of one image.
///
/// Construction rejects empty regions, so every downstream operation can
/// assume at least one pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelRegion {
    pixels: Vec<[u8; 3]>,
}

impl PixelRegion {
    pub fn new(pixels: Vec<[u8; 3]>) -> Result<Self, Error> {
        if pixels.is_empty() {
            return Err(Error::EmptyRegion);
        }
        Ok(Self { pixels })
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    /// Number of pixels; always at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.pixels.len()
    }
}

/// Per-pixel luminance of a region, one value per pixel in region order.
pub fn luminance(region: &PixelRegion) -> Vec<u8> {
    region
        .pixels
        .iter()
        .map(|&[r, g, b]| luma(r, g, b))
        .collect()
}

/// Normalized 256-bin histogram of 8-bit luminance values.
///
/// Bin `i` holds the proportion of pixels with luminance exactly `i`.
/// Counts are kept internally so that band sums like the exposure
/// proportions are computed from integers and divided once, which keeps
/// them bit-identical to a direct pixel count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuminanceHistogram {
    counts: [u64; 256],
    pixel_count: u64,
}

impl LuminanceHistogram {
    /// Counts a sequence of luminance values. Errors on empty input.
    pub fn from_luminances(luminances: &[u8]) -> Result<Self, Error> {
        if luminances.is_empty() {
            return Err(Error::EmptyRegion);
        }
        let mut counts = [0u64; 256];
        for &l in luminances {
            counts[l as usize] += 1;
        }
        Ok(Self {
            counts,
            pixel_count: luminances.len() as u64,
        })
    }

    /// Builds a histogram directly from per-bin counts. Errors when all
    /// counts are zero.
    pub fn from_counts(counts: [u64; 256]) -> Result<Self, Error> {
        let pixel_count: u64 = counts.iter().sum();
        if pixel_count == 0 {
            return Err(Error::EmptyRegion);
        }
        Ok(Self {
            counts,
            pixel_count,
        })
    }

    /// Proportion of pixels in bin `i`; the 256 proportions sum to 1.
    pub fn bin(&self, i: u8) -> f64 {
        self.counts[i as usize] as f64 / self.pixel_count as f64
    }

    /// All 256 bin proportions.
    pub fn bins(&self) -> [f64; 256] {
        let mut out = [0.0; 256];
        for (o, &c) in out.iter_mut().zip(self.counts.iter()) {
            *o = c as f64 / self.pixel_count as f64;
        }
        out
    }

    pub fn count(&self, i: u8) -> u64 {
        self.counts[i as usize]
    }

    pub fn pixel_count(&self) -> u64 {
        self.pixel_count
    }

    /// Proportion of pixels with luminance in `lo..=hi`, computed as an
    /// integer count divided once.
    pub fn proportion_in(&self, lo: u8, hi: u8) -> f64 {
        let total: u64 = self.counts[lo as usize..=hi as usize].iter().sum();
        total as f64 / self.pixel_count as f64
    }
}

/// Histogram of a luminance sequence; errors on empty input.
pub fn histogram(luminances: &[u8]) -> Result<LuminanceHistogram, Error> {
    LuminanceHistogram::from_luminances(luminances)
}

/// Shannon entropy of the histogram in bits, in `[0, 8]`.
///
/// Empty bins contribute zero (`0·log2 0 := 0`).
pub fn entropy(hist: &LuminanceHistogram) -> f64 {
    let n = hist.pixel_count as f64;
    let mut h = 0.0;
    for &c in hist.counts.iter() {
        if c > 0 {
            let p = c as f64 / n;
            h -= p * libm::log2(p);
        }
    }
    h
}

/// Center and width of the score-mapping sigmoid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmoidParams {
    center: f64,
    width: f64,
}

impl SigmoidParams {
    /// `width` must be strictly positive.
    pub fn new(center: f64, width: f64) -> Result<Self, Error> {
        if !width.is_finite() || width <= 0.0 || !center.is_finite() {
            return Err(Error::InvalidParameter("sigmoid width must be positive"));
        }
        Ok(Self { center, width })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }
}

impl Default for SigmoidParams {
    /// The dynamic-range mapping: center 5, width 1.
    fn default() -> Self {
        Self {
            center: 5.0,
            width: 1.0,
        }
    }
}

/// Increasing logistic `s(x) = 1 / (1 + exp((center - x) / width))`,
/// with `s(center) = 0.5`.
pub fn sigmoid(x: f64, params: &SigmoidParams) -> f64 {
    1.0 / (1.0 + libm::exp((params.center - x) / params.width))
}

/// One quality component value, an integer in `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QualityScore(u8);

impl QualityScore {
    pub fn new(value: u8) -> Result<Self, Error> {
        if value > 100 {
            return Err(Error::InvalidParameter("quality score must be at most 100"));
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> u8 {
        self.0
    }

    /// Rounds a value in `[0, 100]` half away from zero.
    fn from_scaled(x: f64) -> Self {
        Self(libm::round(x).clamp(0.0, 100.0) as u8)
    }
}

/// The three component scores of one region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QualityComponents {
    pub dynamic_range: QualityScore,
    pub under_exposure: QualityScore,
    pub over_exposure: QualityScore,
}

/// Dynamic range component of a histogram: sigmoid-mapped entropy.
pub fn dynamic_range_from_histogram(hist: &LuminanceHistogram) -> QualityScore {
    let s = sigmoid(entropy(hist), &SigmoidParams::default());
    QualityScore::from_scaled(100.0 * s)
}

/// Under-exposure component of a histogram: `round(100 * (1 - v))` where
/// `v` is the proportion of pixels with luminance `<= 25`.
pub fn under_exposure_from_histogram(hist: &LuminanceHistogram) -> QualityScore {
    let v = hist.proportion_in(0, UNDER_EXPOSURE_MAX);
    QualityScore::from_scaled(100.0 * (1.0 - v))
}

/// Over-exposure component of a histogram: `round(100 * (1 - v))` where
/// `v` is the proportion of pixels with luminance `>= 247`.
pub fn over_exposure_from_histogram(hist: &LuminanceHistogram) -> QualityScore {
    let v = hist.proportion_in(OVER_EXPOSURE_MIN, 255);
    QualityScore::from_scaled(100.0 * (1.0 - v))
}

fn region_histogram(region: &PixelRegion) -> LuminanceHistogram {
    LuminanceHistogram::from_luminances(&luminance(region))
        .expect("region is non-empty by construction")
}

pub fn dynamic_range_score(region: &PixelRegion) -> QualityScore {
    dynamic_range_from_histogram(&region_histogram(region))
}

pub fn under_exposure_score(region: &PixelRegion) -> QualityScore {
    under_exposure_from_histogram(&region_histogram(region))
}

pub fn over_exposure_score(region: &PixelRegion) -> QualityScore {
    over_exposure_from_histogram(&region_histogram(region))
}

/// All three components from a single histogram pass. Results are
/// identical to calling the three score functions independently.
pub fn assess(region: &PixelRegion) -> QualityComponents {
    let hist = region_histogram(region);
    QualityComponents {
        dynamic_range: dynamic_range_from_histogram(&hist),
        under_exposure: under_exposure_from_histogram(&hist),
        over_exposure: over_exposure_from_histogram(&hist),
    }
}
