//! Skin-tone-robust face image quality components over masked pixel
//! regions.
//!
//! The crate computes three quality components — dynamic range,
//! under-exposure, and over-exposure — from the luminance histogram of
//! an arbitrary masked region of a face image (face skin or eye
//! sclera), and provides the evaluation machinery around them:
//!
//! - [`quality`]: luminance, histograms, entropy, sigmoid mapping, and
//!   the three `[0, 100]` component scores;
//! - [`regions`]: region masks, landmark-based sclera mask
//!   construction, and mask application;
//! - [`augment`]: synthetic dynamic-range and exposure degradations;
//! - [`histmetrics`]: chi-squared and Hellinger histogram distances;
//! - [`edc`]: mated-pair error-vs-discard curves and pAUC.
//!
//! Everything here is pure computation over owned buffers: no IO, no
//! globals, no threads. File formats and the command-line front end
//! live in the companion `fairqa` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod augment;
pub mod edc;
pub mod error;
pub mod histmetrics;
pub mod image;
pub mod quality;
pub mod regions;

pub use error::Error;
pub use image::RgbImage;
pub use quality::{PixelRegion, QualityComponents, QualityScore};
pub use regions::RegionMask;
