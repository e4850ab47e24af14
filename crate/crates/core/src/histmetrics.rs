//! Distances between normalized luminance histograms.

use core::str::FromStr;

use crate::quality::LuminanceHistogram;

/// Symmetric chi-squared distance, `½ Σ (p_i − q_i)² / (p_i + q_i)`,
/// bounded to `[0, 1]` for normalized histograms. Bins where both
/// proportions are zero contribute nothing.
pub fn chi_squared(p: &LuminanceHistogram, q: &LuminanceHistogram) -> f64 {
    let mut d = 0.0;
    for i in 0..=255u8 {
        let (pi, qi) = (p.bin(i), q.bin(i));
        let denom = pi + qi;
        if denom > 0.0 {
            let diff = pi - qi;
            d += diff * diff / denom;
        }
    }
    // Proportions sum to 1 per histogram, so the true value is at most
    // 1; anything above is accumulated rounding.
    (0.5 * d).min(1.0)
}

/// Pearson chi-squared, `Σ (p_i − q_i)² / q_i`, skipping bins where `q`
/// is empty. Asymmetric and unbounded; offered for comparisons against
/// tooling that uses this form.
pub fn pearson_chi_squared(p: &LuminanceHistogram, q: &LuminanceHistogram) -> f64 {
    let mut d = 0.0;
    for i in 0..=255u8 {
        let qi = q.bin(i);
        if qi > 0.0 {
            let diff = p.bin(i) - qi;
            d += diff * diff / qi;
        }
    }
    d
}

/// Hellinger distance, `sqrt(1 − Σ sqrt(p_i · q_i))`, in `[0, 1]`.
///
/// Zero iff the histograms are identical; one iff their supports are
/// disjoint.
pub fn hellinger(p: &LuminanceHistogram, q: &LuminanceHistogram) -> f64 {
    let mut bc = 0.0;
    let mut identical = true;
    for i in 0..=255u8 {
        let (pi, qi) = (p.bin(i), q.bin(i));
        if pi != qi {
            identical = false;
        }
        bc += libm::sqrt(pi * qi);
    }
    // The Bhattacharyya sum of equal histograms lands within a few ulps
    // of 1, which the outer sqrt would smear to ~1e-8; identity must be
    // exactly zero.
    if identical {
        return 0.0;
    }
    libm::sqrt((1.0 - bc).max(0.0))
}

/// Which chi-squared form to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Chi2Variant {
    #[default]
    Symmetric,
    Pearson,
}

impl Chi2Variant {
    pub fn compute(&self, p: &LuminanceHistogram, q: &LuminanceHistogram) -> f64 {
        match self {
            Chi2Variant::Symmetric => chi_squared(p, q),
            Chi2Variant::Pearson => pearson_chi_squared(p, q),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Chi2Variant::Symmetric => "symmetric",
            Chi2Variant::Pearson => "pearson",
        }
    }
}

impl FromStr for Chi2Variant {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symmetric" => Ok(Chi2Variant::Symmetric),
            "pearson" => Ok(Chi2Variant::Pearson),
            _ => Err(crate::error::Error::InvalidParameter(
                "chi2 variant must be \"symmetric\" or \"pearson\"",
            )),
        }
    }
}
