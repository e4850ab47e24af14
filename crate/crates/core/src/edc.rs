//! Error-vs-Discard Characteristic evaluation.
//!
//! Mated comparison pairs are built from precomputed embeddings, a
//! decision threshold is calibrated so that the false non-match rate at
//! zero discard hits a requested starting error, and the error rate is
//! then re-measured as growing fractions of the lowest-quality pairs are
//! discarded. A flat curve means the quality measure carries no
//! information about recognition errors; a falling curve means low
//! scores predict failures. The partial area under the curve up to a
//! discard limit (pAUC, normalized by the limit) summarizes a curve in
//! one number — lower is better.
//!
//! Conventions, all deterministic and oracle-checkable:
//!
//! - quantiles are lower empirical quantiles at rank `floor(q·N)`, no
//!   interpolation;
//! - a pair fails when its similarity is strictly below the threshold;
//! - a pair is discarded when its quality is strictly below the discard
//!   quantile, so ties are always retained together;
//! - pair quality is the minimum of the two samples' scores.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;

/// Cosine similarity of two equal-length, non-zero vectors, in `[-1, 1]`.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64, Error> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(dot / (libm::sqrt(na) * libm::sqrt(nb)))
}

/// One scored sample entering pairing: identity, quality, embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct EdcSample {
    pub sample_id: String,
    pub subject_id: String,
    pub quality: f64,
    pub embedding: Vec<f64>,
}

/// A mated comparison: two samples of the same subject.
#[derive(Debug, Clone, PartialEq)]
pub struct MatedPair {
    pub sample_a: String,
    pub sample_b: String,
    /// Cosine similarity of the two embeddings.
    pub similarity: f64,
    /// Minimum of the two samples' quality scores.
    pub pair_quality: f64,
}

/// All unordered same-subject sample pairs, with similarity computed
/// from the embeddings and pair quality pooled by minimum.
///
/// Sample ids must be unique. Output order is deterministic: subjects
/// in sorted order, pairs in input order within a subject.
pub fn build_mated_pairs(samples: &[EdcSample]) -> Result<Vec<MatedPair>, Error> {
    let mut seen: alloc::collections::BTreeSet<&str> = alloc::collections::BTreeSet::new();
    for s in samples {
        if !seen.insert(&s.sample_id) {
            return Err(Error::DuplicateSampleId(s.sample_id.clone()));
        }
    }
    let mut by_subject: alloc::collections::BTreeMap<&str, Vec<&EdcSample>> =
        alloc::collections::BTreeMap::new();
    for s in samples {
        by_subject.entry(&s.subject_id).or_default().push(s);
    }
    let mut pairs = Vec::new();
    for (_, group) in by_subject {
        for i in 0..group.len() {
            for j in (i + 1)..group.len() {
                let (a, b) = (group[i], group[j]);
                let similarity = cosine_similarity(&a.embedding, &b.embedding)?;
                pairs.push(MatedPair {
                    sample_a: a.sample_id.clone(),
                    sample_b: b.sample_id.clone(),
                    similarity,
                    pair_quality: a.quality.min(b.quality),
                });
            }
        }
    }
    Ok(pairs)
}

/// Lower empirical quantile: the value at rank `floor(q·N)` of the
/// ascending sort, capped at the last element.
fn lower_quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let rank = (q * n as f64) as usize;
    sorted[rank.min(n - 1)]
}

/// Decision threshold whose strict-below false non-match rate does not
/// exceed `starting_error`: the lower quantile of the similarities at
/// rank `floor(starting_error · N)`.
pub fn calibrate_threshold(similarities: &[f64], starting_error: f64) -> Result<f64, Error> {
    if similarities.is_empty() {
        return Err(Error::EmptyInput);
    }
    if starting_error.is_nan() || starting_error <= 0.0 || starting_error >= 1.0 {
        return Err(Error::InvalidParameter("starting error must be in (0, 1)"));
    }
    let mut sorted = similarities.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    Ok(lower_quantile(&sorted, starting_error))
}

/// Fraction of pairs whose similarity is strictly below the threshold.
pub fn fnmr_at(pairs: &[MatedPair], threshold: f64) -> Result<f64, Error> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let failing = pairs.iter().filter(|p| p.similarity < threshold).count();
    Ok(failing as f64 / pairs.len() as f64)
}

/// Knobs for one EDC evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EdcParams {
    /// Target false non-match rate at zero discard, in (0, 1).
    pub starting_error: f64,
    /// Discard fractions to evaluate, strictly increasing within [0, 1).
    pub discard_grid: Vec<f64>,
    /// The curve stops before any point that would retain fewer pairs.
    pub min_retained: usize,
    /// Upper integration bound for the curve's pAUC, in (0, 1].
    pub pauc_limit: f64,
}

impl EdcParams {
    /// Grid `0, step, 2·step, …` up to but excluding 1.
    pub fn discard_grid_with_step(step: f64) -> Result<Vec<f64>, Error> {
        if step.is_nan() || step <= 0.0 || step >= 1.0 {
            return Err(Error::InvalidParameter(
                "grid step must be in (0, 1) so the grid has a point below 1",
            ));
        }
        let mut grid = Vec::new();
        let mut k = 0u32;
        loop {
            let d = k as f64 * step;
            if d >= 1.0 {
                break;
            }
            grid.push(d);
            k += 1;
        }
        Ok(grid)
    }

    fn validate(&self) -> Result<(), Error> {
        if self.starting_error.is_nan() || self.starting_error <= 0.0 || self.starting_error >= 1.0
        {
            return Err(Error::InvalidParameter("starting error must be in (0, 1)"));
        }
        if self.discard_grid.is_empty() {
            return Err(Error::InvalidParameter("discard grid is empty"));
        }
        for &d in &self.discard_grid {
            if !(0.0..1.0).contains(&d) {
                return Err(Error::InvalidParameter("discard grid must lie in [0, 1)"));
            }
        }
        for w in self.discard_grid.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidParameter(
                    "discard grid must be strictly increasing",
                ));
            }
        }
        if self.min_retained == 0 {
            return Err(Error::InvalidParameter("min retained must be at least 1"));
        }
        if self.pauc_limit.is_nan() || self.pauc_limit <= 0.0 || self.pauc_limit > 1.0 {
            return Err(Error::InvalidParameter("pAUC limit must be in (0, 1]"));
        }
        Ok(())
    }
}

impl Default for EdcParams {
    /// Starting error 0.05, grid 0 to 0.95 step 0.05, 10-pair floor,
    /// pAUC limit 0.20.
    fn default() -> Self {
        Self {
            starting_error: 0.05,
            discard_grid: Self::discard_grid_with_step(0.05).expect("stock step is valid"),
            min_retained: 10,
            pauc_limit: 0.20,
        }
    }
}

/// One evaluated EDC curve.
#[derive(Debug, Clone, PartialEq)]
pub struct EdcCurve {
    /// Evaluated discard fractions, strictly increasing.
    pub discard_fractions: Vec<f64>,
    /// Retained-pair false non-match rate at each discard fraction.
    pub error_rates: Vec<f64>,
    /// Calibrated decision threshold.
    pub threshold: f64,
    /// Requested starting error used for calibration.
    pub starting_error: f64,
    /// Normalized partial area under the curve up to `pauc_limit`; for
    /// a degenerate one-point curve, the constant extension of that
    /// single error value.
    pub pauc: f64,
    pub pauc_limit: f64,
}

/// Sweeps the discard grid: calibrates the threshold on all pairs, then
/// for each fraction `d` discards pairs whose quality is strictly below
/// the `d`-quantile of all pair qualities and measures the FNMR of the
/// rest. Evaluation stops before the first point that would retain
/// fewer than `min_retained` pairs.
pub fn edc_curve(pairs: &[MatedPair], params: &EdcParams) -> Result<EdcCurve, Error> {
    if pairs.len() < 2 {
        return Err(Error::EmptyInput);
    }
    params.validate()?;

    let similarities: Vec<f64> = pairs.iter().map(|p| p.similarity).collect();
    let threshold = calibrate_threshold(&similarities, params.starting_error)?;

    let mut sorted_quality: Vec<f64> = pairs.iter().map(|p| p.pair_quality).collect();
    sorted_quality.sort_unstable_by(f64::total_cmp);

    let mut discard_fractions = Vec::new();
    let mut error_rates = Vec::new();
    for &d in &params.discard_grid {
        let cutoff = lower_quantile(&sorted_quality, d);
        let retained: Vec<&MatedPair> = pairs.iter().filter(|p| p.pair_quality >= cutoff).collect();
        if retained.len() < params.min_retained {
            break;
        }
        let failing = retained.iter().filter(|p| p.similarity < threshold).count();
        discard_fractions.push(d);
        error_rates.push(failing as f64 / retained.len() as f64);
    }
    if discard_fractions.is_empty() {
        return Err(Error::AllDiscarded);
    }

    // A one-point curve carries no slope information; its stored pAUC
    // is the constant extension of that single error value.
    let pauc = if error_rates.len() == 1 {
        error_rates[0]
    } else {
        pauc_from_points(&discard_fractions, &error_rates, params.pauc_limit)?
    };
    Ok(EdcCurve {
        discard_fractions,
        error_rates,
        threshold,
        starting_error: params.starting_error,
        pauc,
        pauc_limit: params.pauc_limit,
    })
}

/// Trapezoidal area under `(discards, errors)` for discard in
/// `[0, limit]`, divided by `limit`. A segment straddling the limit is
/// cut by linear interpolation; a curve that stops short of the limit
/// is integrated as far as it goes.
pub fn pauc_from_points(discards: &[f64], errors: &[f64], limit: f64) -> Result<f64, Error> {
    if limit.is_nan() || limit <= 0.0 || limit > 1.0 {
        return Err(Error::InvalidParameter("pAUC limit must be in (0, 1]"));
    }
    debug_assert_eq!(discards.len(), errors.len());
    if discards.iter().filter(|&&d| d <= limit).count() < 2 {
        return Err(Error::InsufficientPoints);
    }
    let mut ds: Vec<f64> = Vec::new();
    let mut es: Vec<f64> = Vec::new();
    for (i, (&d, &e)) in discards.iter().zip(errors).enumerate() {
        if d <= limit {
            ds.push(d);
            es.push(e);
        } else {
            // Cut the straddling segment at the limit.
            if i > 0 && discards[i - 1] < limit {
                let (d0, e0) = (discards[i - 1], errors[i - 1]);
                let t = (limit - d0) / (d - d0);
                ds.push(limit);
                es.push(e0 + t * (e - e0));
            }
            break;
        }
    }
    let mut area = 0.0;
    for i in 1..ds.len() {
        area += (ds[i] - ds[i - 1]) * (es[i] + es[i - 1]) / 2.0;
    }
    Ok(area / limit)
}

/// Normalized pAUC of an already-evaluated curve at an arbitrary limit.
pub fn pauc(curve: &EdcCurve, limit: f64) -> Result<f64, Error> {
    pauc_from_points(&curve.discard_fractions, &curve.error_rates, limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::ToString;
    use alloc::vec;

    fn pair(a: &str, b: &str, similarity: f64, quality: f64) -> MatedPair {
        MatedPair {
            sample_a: a.to_string(),
            sample_b: b.to_string(),
            similarity,
            pair_quality: quality,
        }
    }

    #[test]
    fn cosine_of_identical_vectors_is_one() {
        let e = [0.3, -1.2, 0.5, 2.0];
        assert!((cosine_similarity(&e, &e).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_of_orthogonal_vectors_is_zero() {
        assert_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn cosine_hand_example() {
        let c = cosine_similarity(&[1.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!((c - 0.707_106_781_186_547_5).abs() < 1e-15);
    }

    #[test]
    fn cosine_rejects_degenerate_inputs() {
        assert_eq!(
            cosine_similarity(&[1.0, 2.0], &[1.0]).unwrap_err(),
            Error::LengthMismatch { left: 2, right: 1 }
        );
        assert_eq!(
            cosine_similarity(&[0.0, 0.0], &[1.0, 0.0]).unwrap_err(),
            Error::ZeroVector
        );
        assert_eq!(cosine_similarity(&[], &[]).unwrap_err(), Error::EmptyInput);
    }

    fn sample(id: &str, subject: &str, quality: f64, embedding: &[f64]) -> EdcSample {
        EdcSample {
            sample_id: id.to_string(),
            subject_id: subject.to_string(),
            quality,
            embedding: embedding.to_vec(),
        }
    }

    #[test]
    fn single_sample_subject_yields_no_pairs() {
        let pairs = build_mated_pairs(&[sample("a", "s1", 50.0, &[1.0, 0.0])]).unwrap();
        assert!(pairs.is_empty());
    }

    #[test]
    fn three_samples_yield_three_pairs() {
        let samples = [
            sample("a", "s1", 10.0, &[1.0, 0.0]),
            sample("b", "s1", 20.0, &[1.0, 0.1]),
            sample("c", "s1", 30.0, &[1.0, 0.2]),
        ];
        let pairs = build_mated_pairs(&samples).unwrap();
        assert_eq!(pairs.len(), 3);
        // Pooling by minimum.
        assert_eq!(pairs[0].pair_quality, 10.0);
    }

    #[test]
    fn no_cross_subject_pairs() {
        let samples = [
            sample("a1", "s1", 1.0, &[1.0, 0.0]),
            sample("a2", "s1", 1.0, &[1.0, 0.0]),
            sample("b1", "s2", 1.0, &[0.0, 1.0]),
            sample("b2", "s2", 1.0, &[0.0, 1.0]),
        ];
        let pairs = build_mated_pairs(&samples).unwrap();
        assert_eq!(pairs.len(), 2);
        for p in &pairs {
            assert_ne!(p.sample_a, p.sample_b);
        }
    }

    #[test]
    fn duplicate_sample_ids_are_rejected() {
        let samples = [
            sample("a", "s1", 1.0, &[1.0]),
            sample("a", "s1", 1.0, &[1.0]),
        ];
        assert_eq!(
            build_mated_pairs(&samples).unwrap_err(),
            Error::DuplicateSampleId("a".to_string())
        );
    }

    #[test]
    fn calibration_hand_example() {
        let sims: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
        let t = calibrate_threshold(&sims, 0.1).unwrap();
        assert_eq!(t, 0.2);
        let below = sims.iter().filter(|&&s| s < t).count();
        assert_eq!(below, 1);
    }

    #[test]
    fn calibration_at_tiny_error_picks_the_minimum() {
        let sims = [0.9, 0.1, 0.5, 0.7];
        let t = calibrate_threshold(&sims, 1e-9).unwrap();
        assert_eq!(t, 0.1);
        assert_eq!(sims.iter().filter(|&&s| s < t).count(), 0);
    }

    #[test]
    fn calibration_with_constant_scores_never_fails_anything() {
        let sims = [0.4; 12];
        for se in [0.05, 0.3, 0.9] {
            let t = calibrate_threshold(&sims, se).unwrap();
            assert_eq!(t, 0.4);
            assert_eq!(sims.iter().filter(|&&s| s < t).count(), 0);
        }
    }

    #[test]
    fn calibration_rejects_bad_inputs() {
        assert_eq!(
            calibrate_threshold(&[], 0.1).unwrap_err(),
            Error::EmptyInput
        );
        assert!(calibrate_threshold(&[0.5], 0.0).is_err());
        assert!(calibrate_threshold(&[0.5], 1.0).is_err());
    }

    #[test]
    fn fnmr_counts_strictly_below() {
        let pairs: Vec<MatedPair> = (0..8)
            .map(|i| pair(&format!("a{i}"), &format!("b{i}"), i as f64, 0.0))
            .collect();
        assert_eq!(fnmr_at(&pairs, 0.0).unwrap(), 0.0);
        assert_eq!(fnmr_at(&pairs, 8.0).unwrap(), 1.0);
        assert_eq!(fnmr_at(&pairs, 2.0).unwrap(), 0.25);
    }

    #[test]
    fn edc_perfect_quality_zeroes_out_at_starting_discard() {
        // Quality ordered identically to similarity: discarding the two
        // lowest-quality pairs removes exactly the two failing pairs.
        let pairs: Vec<MatedPair> = (1..=8)
            .map(|i| {
                let s = i as f64 / 10.0;
                pair(&format!("a{i}"), &format!("b{i}"), s, s)
            })
            .collect();
        let params = EdcParams {
            starting_error: 0.25,
            discard_grid: vec![0.0, 0.25],
            min_retained: 1,
            pauc_limit: 0.25,
        };
        let curve = edc_curve(&pairs, &params).unwrap();
        assert_eq!(curve.error_rates[0], 0.25);
        assert_eq!(curve.error_rates[1], 0.0);
    }

    #[test]
    fn edc_constant_quality_stays_flat() {
        let pairs: Vec<MatedPair> = (0..10)
            .map(|i| pair(&format!("a{i}"), &format!("b{i}"), i as f64 / 10.0, 42.0))
            .collect();
        let params = EdcParams {
            starting_error: 0.2,
            discard_grid: EdcParams::discard_grid_with_step(0.1).unwrap(),
            min_retained: 1,
            pauc_limit: 0.2,
        };
        let curve = edc_curve(&pairs, &params).unwrap();
        // Ties at the quantile are all retained, so every point keeps
        // every pair and the realized starting FNMR.
        for &e in &curve.error_rates {
            assert_eq!(e, curve.error_rates[0]);
        }
        assert_eq!(curve.discard_fractions.len(), 10);
    }

    #[test]
    fn edc_single_point_grid() {
        let pairs: Vec<MatedPair> = (0..10)
            .map(|i| {
                pair(
                    &format!("a{i}"),
                    &format!("b{i}"),
                    i as f64 / 10.0,
                    i as f64,
                )
            })
            .collect();
        let params = EdcParams {
            starting_error: 0.3,
            discard_grid: vec![0.0],
            min_retained: 1,
            pauc_limit: 1.0,
        };
        let curve = edc_curve(&pairs, &params).unwrap();
        assert_eq!(curve.discard_fractions, vec![0.0]);
        // floor(0.3 * 10) = 3 scores fall strictly below the threshold.
        assert_eq!(curve.error_rates, vec![0.3]);
        assert_eq!(curve.pauc, 0.3);
    }

    #[test]
    fn edc_stops_early_at_the_retention_floor() {
        let pairs: Vec<MatedPair> = (0..10)
            .map(|i| {
                pair(
                    &format!("a{i}"),
                    &format!("b{i}"),
                    i as f64 / 10.0,
                    i as f64,
                )
            })
            .collect();
        let params = EdcParams {
            starting_error: 0.3,
            discard_grid: EdcParams::discard_grid_with_step(0.1).unwrap(),
            min_retained: 5,
            pauc_limit: 0.2,
        };
        let curve = edc_curve(&pairs, &params).unwrap();
        // Points at d = 0.6.. would retain fewer than 5 of 10 pairs.
        assert_eq!(curve.discard_fractions.len(), 6);
        assert_eq!(*curve.discard_fractions.last().unwrap(), 0.5);
    }

    #[test]
    fn edc_all_discarded_when_floor_exceeds_pairs() {
        let pairs: Vec<MatedPair> = (0..4)
            .map(|i| pair(&format!("a{i}"), &format!("b{i}"), i as f64, i as f64))
            .collect();
        let params = EdcParams {
            starting_error: 0.25,
            discard_grid: vec![0.0, 0.5],
            min_retained: 10,
            pauc_limit: 0.5,
        };
        assert_eq!(edc_curve(&pairs, &params).unwrap_err(), Error::AllDiscarded);
    }

    #[test]
    fn pauc_of_constant_error_is_that_error() {
        let d = [0.0, 0.05, 0.1, 0.15, 0.2];
        let e = [0.05; 5];
        let p = pauc_from_points(&d, &e, 0.2).unwrap();
        assert!((p - 0.05).abs() < 1e-15);
    }

    #[test]
    fn pauc_of_linear_descent_is_the_triangle_mean() {
        let d = [0.0, 0.2];
        let e = [0.1, 0.0];
        let p = pauc_from_points(&d, &e, 0.2).unwrap();
        assert!((p - 0.05).abs() < 1e-15);
    }

    #[test]
    fn pauc_interpolates_a_straddling_segment() {
        // Error 0.1 on [0, 0.1], then linear to 0.0 at 0.3; limit 0.2
        // cuts the second segment at its midpoint value 0.05.
        let d = [0.0, 0.1, 0.3];
        let e = [0.1, 0.1, 0.0];
        let p = pauc_from_points(&d, &e, 0.2).unwrap();
        // area = 0.1*0.1 + 0.1*(0.1+0.05)/2 = 0.0175; /0.2 = 0.0875
        assert!((p - 0.0875).abs() < 1e-15, "got {p}");
    }

    #[test]
    fn pauc_needs_two_points_below_the_limit() {
        assert_eq!(
            pauc_from_points(&[0.0, 0.5], &[0.1, 0.1], 0.2).unwrap_err(),
            Error::InsufficientPoints
        );
    }

    #[test]
    fn grid_step_must_leave_a_point_below_one() {
        assert!(EdcParams::discard_grid_with_step(1.0).is_err());
        assert!(EdcParams::discard_grid_with_step(0.0).is_err());
        let grid = EdcParams::discard_grid_with_step(0.05).unwrap();
        assert_eq!(grid.len(), 20);
        assert_eq!(grid[0], 0.0);
        assert!(*grid.last().unwrap() < 1.0);
    }
}
