//! Confusion and diffusion measurements over ciphertext pairs.
//!
//! Two metrics: positional similarity (fraction of byte positions where
//! two ciphertexts agree — the element-by-element comparison; 1.0 means
//! identical) and bit difference ratio (fraction of differing bits — the
//! sharper avalanche statistic; 0.5 is the ideal for unrelated outputs).
//! [`avalanche_report`] drives them over many single-character flips with
//! a seeded generator, and [`dispersion_check`] counts how many distinct
//! byte values a single repeated character scatters into.

use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cipher::{encrypt, Ciphertext};
use crate::codec::CipherParams;
use crate::{Error, Result};

fn check_shapes(a: &Ciphertext, b: &Ciphertext) -> Result<usize> {
    if a.block_size() != b.block_size() {
        return Err(Error::IncompatibleCiphertexts {
            reason: format!(
                "block sizes differ: {} vs {}",
                a.block_size(),
                b.block_size()
            ),
        });
    }
    if a.chunk_count() != b.chunk_count() {
        return Err(Error::IncompatibleCiphertexts {
            reason: format!(
                "chunk counts differ: {} vs {}",
                a.chunk_count(),
                b.chunk_count()
            ),
        });
    }
    let positions = a.chunk_count() * a.block_size() as usize;
    if positions == 0 {
        return Err(Error::IncompatibleCiphertexts {
            reason: "no positions to compare".into(),
        });
    }
    Ok(positions)
}

/// Fraction of byte positions where `a` and `b` hold the same value.
pub fn positional_similarity(a: &Ciphertext, b: &Ciphertext) -> Result<f64> {
    let positions = check_shapes(a, b)?;
    let equal: usize = a
        .chunks()
        .iter()
        .zip(b.chunks())
        .map(|(ca, cb)| ca.iter().zip(cb).filter(|(x, y)| x == y).count())
        .sum();
    Ok(equal as f64 / positions as f64)
}

/// Fraction of bits that differ between `a` and `b`.
pub fn bit_difference_ratio(a: &Ciphertext, b: &Ciphertext) -> Result<f64> {
    let positions = check_shapes(a, b)?;
    let differing: u32 = a
        .chunks()
        .iter()
        .zip(b.chunks())
        .map(|(ca, cb)| {
            ca.iter()
                .zip(cb)
                .map(|(x, y)| (x ^ y).count_ones())
                .sum::<u32>()
        })
        .sum();
    Ok(differing as f64 / (positions * 8) as f64)
}

/// One avalanche trial: which position was flipped and how the two
/// ciphertexts compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub position_flipped: usize,
    pub positional_similarity: f64,
    pub bit_difference_ratio: f64,
}

/// Mean and extrema of one metric across trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSummary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl MetricSummary {
    fn over(values: impl Iterator<Item = f64>) -> Self {
        let mut count = 0usize;
        let mut sum = 0.0;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            count += 1;
            sum += v;
            min = min.min(v);
            max = max.max(v);
        }
        Self {
            mean: sum / count as f64,
            min,
            max,
        }
    }
}

/// Aggregated avalanche measurement: the per-trial records plus summary
/// statistics for both metrics. Reproducible from its seed.
#[derive(Debug, Clone, PartialEq)]
pub struct AvalancheReport {
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
    pub positional_similarity: MetricSummary,
    pub bit_difference_ratio: MetricSummary,
}

impl AvalancheReport {
    /// Writes the per-trial records as CSV.
    pub fn write_csv(&self, sink: &mut dyn Write) -> Result<()> {
        writeln!(
            sink,
            "trial,position_flipped,positional_similarity,bit_difference_ratio"
        )?;
        for t in &self.trials {
            writeln!(
                sink,
                "{},{},{:.6},{:.6}",
                t.trial, t.position_flipped, t.positional_similarity, t.bit_difference_ratio
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for AvalancheReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "avalanche report ({} trials, seed {})",
            self.trials.len(),
            self.seed
        )?;
        writeln!(
            f,
            "{:<24} {:>10} {:>10} {:>10}",
            "metric", "mean", "min", "max"
        )?;
        for (name, s) in [
            ("positional similarity", &self.positional_similarity),
            ("bit difference ratio", &self.bit_difference_ratio),
        ] {
            writeln!(
                f,
                "{:<24} {:>10.6} {:>10.6} {:>10.6}",
                name, s.mean, s.min, s.max
            )?;
        }
        Ok(())
    }
}

/// Measures how a one-character change in the plaintext spreads through
/// the ciphertext. Each trial flips one uniformly chosen position to a
/// different random byte, encrypts both texts and records both metrics.
pub fn avalanche_report(
    plaintext: &[u8],
    params: &CipherParams,
    trials: usize,
    rng_seed: u64,
) -> Result<AvalancheReport> {
    run_trials(plaintext, params, trials, rng_seed, true)
}

/// `flip = false` is the self-check mode: both ciphertexts come from the
/// unmodified plaintext, so similarity must be exactly 1 and the bit
/// ratio exactly 0 — a canary for the comparison plumbing itself.
fn run_trials(
    plaintext: &[u8],
    params: &CipherParams,
    trials: usize,
    rng_seed: u64,
    flip: bool,
) -> Result<AvalancheReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trial count must be positive".into()));
    }
    if plaintext.is_empty() {
        return Err(Error::InvalidArgument(
            "avalanche measurement needs a nonempty plaintext".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let baseline = encrypt(plaintext, params);
    let mut records = Vec::with_capacity(trials);
    for trial in 0..trials {
        let position = rng.random_range(0..plaintext.len());
        let mut modified = plaintext.to_vec();
        if flip {
            modified[position] = loop {
                let byte: u8 = rng.random();
                if byte != plaintext[position] {
                    break byte;
                }
            };
        }
        let other = encrypt(&modified, params);
        records.push(TrialRecord {
            trial,
            position_flipped: position,
            positional_similarity: positional_similarity(&baseline, &other)?,
            bit_difference_ratio: bit_difference_ratio(&baseline, &other)?,
        });
    }
    Ok(AvalancheReport {
        seed: rng_seed,
        positional_similarity: MetricSummary::over(records.iter().map(|t| t.positional_similarity)),
        bit_difference_ratio: MetricSummary::over(records.iter().map(|t| t.bit_difference_ratio)),
        trials: records,
    })
}

/// Encrypts a run of one repeated byte and counts the distinct byte
/// values in the ciphertext — a quick dispersion probe: an identity-like
/// cipher yields at most two values, a diffusing one many.
pub fn dispersion_check(plaintext: &[u8], params: &CipherParams) -> Result<usize> {
    if plaintext.is_empty() {
        return Err(Error::InvalidArgument(
            "dispersion check needs a nonempty plaintext".into(),
        ));
    }
    if plaintext.iter().any(|&b| b != plaintext[0]) {
        return Err(Error::InvalidArgument(
            "dispersion check expects one repeated byte".into(),
        ));
    }
    let ciphertext = encrypt(plaintext, params);
    let mut seen = [false; 256];
    for chunk in ciphertext.chunks() {
        for &byte in chunk {
            seen[byte as usize] = true;
        }
    }
    Ok(seen.iter().filter(|&&s| s).count())
}
