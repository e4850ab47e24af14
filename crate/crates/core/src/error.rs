use alloc::string::String;
use core::fmt;

/// Errors produced by region construction, scoring, augmentation, and
/// EDC evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A pixel region or luminance sequence was empty.
    EmptyRegion,
    /// Two buffers that must match in size do not.
    DimensionMismatch { expected: usize, actual: usize },
    /// A mask selected no pixels at all.
    ZeroAreaMask,
    /// A mask selected fewer pixels than the configured floor.
    RegionTooSmall { pixels: usize, min_pixels: usize },
    /// An eye polygon had fewer than four points, repeated consecutive
    /// points, or intersects itself.
    InvalidPolygon(&'static str),
    /// A numeric parameter was outside its valid range.
    InvalidParameter(&'static str),
    /// Two augmentation variants were given the same tag.
    DuplicateTag(String),
    /// The same sample id appeared twice when pairing.
    DuplicateSampleId(String),
    /// An embedding vector had zero magnitude.
    ZeroVector,
    /// Two embedding vectors have different lengths.
    LengthMismatch { left: usize, right: usize },
    /// An operation that needs at least one element got none.
    EmptyInput,
    /// No EDC grid point retained enough pairs to evaluate.
    AllDiscarded,
    /// Fewer than two curve points lie at or below the pAUC limit.
    InsufficientPoints,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyRegion => write!(f, "pixel region is empty"),
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected {expected}, got {actual}")
            }
            Error::ZeroAreaMask => write!(f, "mask selects no pixels"),
            Error::RegionTooSmall { pixels, min_pixels } => {
                write!(
                    f,
                    "region has {pixels} pixels, below the minimum of {min_pixels}"
                )
            }
            Error::InvalidPolygon(reason) => write!(f, "invalid eye polygon: {reason}"),
            Error::InvalidParameter(reason) => write!(f, "invalid parameter: {reason}"),
            Error::DuplicateTag(tag) => write!(f, "duplicate augmentation tag: {tag:?}"),
            Error::DuplicateSampleId(id) => write!(f, "duplicate sample id: {id:?}"),
            Error::ZeroVector => write!(f, "embedding vector has zero magnitude"),
            Error::LengthMismatch { left, right } => {
                write!(f, "embedding length mismatch: {left} vs {right}")
            }
            Error::EmptyInput => write!(f, "input is empty"),
            Error::AllDiscarded => {
                write!(f, "every discard step fell below the retained-pair floor")
            }
            Error::InsufficientPoints => {
                write!(f, "fewer than two curve points at or below the pAUC limit")
            }
        }
    }
}

impl core::error::Error for Error {}
