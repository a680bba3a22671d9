//! Wall-clock measurement of full encrypt-then-decrypt cycles.
//!
//! Two sweeps: plaintext length at a few fixed keys, and iteration count
//! at a fixed length. Plaintexts are seeded random alphanumeric strings
//! (never ending in the pad byte, so the round-trip check is exact), and
//! every timed cycle verifies decrypt(encrypt(p)) == p — a benchmark must
//! not silently measure a broken cipher. Absolute times depend on the
//! machine; what is meaningful is how they scale.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cipher::{decrypt_with_mode, encrypt_with_mode, ChunkMode};
use crate::codec::CipherParams;
use crate::{Error, Result};

/// Length sweep defaults: powers of ten.
pub const DEFAULT_LENGTHS: [usize; 5] = [10, 100, 1_000, 10_000, 100_000];
/// Keys timed at each length in the length sweep.
pub const DEFAULT_LENGTH_KEYS: [u64; 3] = [8, 32, 64];
/// Keys timed in the iteration sweep.
pub const DEFAULT_ITERATION_KEYS: [u64; 7] = [1, 2, 4, 8, 16, 32, 64];
/// Plaintext length used by the iteration sweep.
pub const DEFAULT_ITERATION_LENGTH: usize = 100_000;
/// Block size used when none is chosen.
pub const DEFAULT_BLOCK_SIZE: u8 = 8;

/// One measured cell: mean seconds per encrypt+decrypt cycle at a given
/// plaintext length and key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRecord {
    pub string_length: usize,
    pub iterations: u64,
    pub runtime_seconds: f64,
    pub repetitions: u32,
    pub mode: ChunkMode,
}

fn check_sweep_args(lengths: &[usize], keys: &[u64], repetitions: u32) -> Result<()> {
    if lengths.is_empty() || keys.is_empty() {
        return Err(Error::InvalidArgument(
            "benchmark needs at least one length and one key".into(),
        ));
    }
    if !lengths.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(
            "benchmark lengths must be strictly ascending".into(),
        ));
    }
    if lengths[0] == 0 {
        return Err(Error::InvalidArgument("benchmark lengths must be positive".into()));
    }
    if repetitions == 0 {
        return Err(Error::InvalidArgument("repetition count must be positive".into()));
    }
    Ok(())
}

fn random_plaintext(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.sample(rand::distr::Alphanumeric)).collect()
}

/// Times one plaintext under one parameter set: an untimed warmup cycle,
/// then `repetitions` timed cycles averaged. Any cycle whose decryption
/// does not reproduce the plaintext aborts the benchmark.
fn timed_record(
    plaintext: &[u8],
    params: &CipherParams,
    repetitions: u32,
    mode: ChunkMode,
) -> Result<BenchRecord> {
    let cycle = |check: bool| -> Result<()> {
        let ciphertext = encrypt_with_mode(plaintext, params, mode);
        let recovered = decrypt_with_mode(&ciphertext, params, mode)?;
        if check && recovered != plaintext {
            return Err(Error::BenchIntegrity {
                length: plaintext.len(),
                key: params.key(),
            });
        }
        Ok(())
    };
    cycle(true)?; // warmup, verified once up front
    let start = Instant::now();
    for _ in 0..repetitions {
        cycle(true)?;
    }
    let elapsed = start.elapsed();
    Ok(BenchRecord {
        string_length: plaintext.len(),
        iterations: params.key(),
        runtime_seconds: elapsed.as_secs_f64() / f64::from(repetitions),
        repetitions,
        mode,
    })
}

/// Times every (length, key) pair on fresh seeded plaintexts.
pub fn length_sweep(
    lengths: &[usize],
    iteration_set: &[u64],
    block_size: u8,
    repetitions: u32,
    rng_seed: u64,
) -> Result<Vec<BenchRecord>> {
    length_sweep_with_mode(
        lengths,
        iteration_set,
        block_size,
        repetitions,
        rng_seed,
        ChunkMode::Sequential,
    )
}

/// [`length_sweep`] with an explicit chunk scheduling mode.
pub fn length_sweep_with_mode(
    lengths: &[usize],
    iteration_set: &[u64],
    block_size: u8,
    repetitions: u32,
    rng_seed: u64,
    mode: ChunkMode,
) -> Result<Vec<BenchRecord>> {
    check_sweep_args(lengths, iteration_set, repetitions)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut records = Vec::with_capacity(lengths.len() * iteration_set.len());
    for &length in lengths {
        let plaintext = random_plaintext(&mut rng, length);
        for &key in iteration_set {
            let params = CipherParams::new(block_size, key)?;
            records.push(timed_record(&plaintext, &params, repetitions, mode)?);
        }
    }
    Ok(records)
}

/// Times every key on one fixed seeded plaintext.
pub fn iteration_sweep(
    length: usize,
    iterations: &[u64],
    block_size: u8,
    repetitions: u32,
    rng_seed: u64,
) -> Result<Vec<BenchRecord>> {
    iteration_sweep_with_mode(
        length,
        iterations,
        block_size,
        repetitions,
        rng_seed,
        ChunkMode::Sequential,
    )
}

/// [`iteration_sweep`] with an explicit chunk scheduling mode.
pub fn iteration_sweep_with_mode(
    length: usize,
    iterations: &[u64],
    block_size: u8,
    repetitions: u32,
    rng_seed: u64,
    mode: ChunkMode,
) -> Result<Vec<BenchRecord>> {
    check_sweep_args(&[length], iterations, repetitions)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let plaintext = random_plaintext(&mut rng, length);
    iterations
        .iter()
        .map(|&key| {
            let params = CipherParams::new(block_size, key)?;
            timed_record(&plaintext, &params, repetitions, mode)
        })
        .collect()
}

/// Writes records as CSV, sorted by (length, key). The scheduling mode is
/// not a column; the four-column layout is stable.
pub fn emit_csv(records: &[BenchRecord], sink: &mut dyn Write) -> Result<()> {
    let mut ordered: Vec<&BenchRecord> = records.iter().collect();
    ordered.sort_by_key(|r| (r.string_length, r.iterations));
    writeln!(sink, "string_length,iterations,runtime_seconds,repetitions")?;
    for r in ordered {
        writeln!(
            sink,
            "{},{},{:.6},{}",
            r.string_length, r.iterations, r.runtime_seconds, r.repetitions
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_sweep_covers_the_cartesian_product() {
        let records = length_sweep(&[4, 20], &[1, 2], 8, 1, 5).unwrap();
        assert_eq!(records.len(), 4);
        let cells: Vec<(usize, u64)> =
            records.iter().map(|r| (r.string_length, r.iterations)).collect();
        assert_eq!(cells, [(4, 1), (4, 2), (20, 1), (20, 2)]);
        for r in &records {
            assert!(r.runtime_seconds >= 0.0);
            assert_eq!(r.repetitions, 1);
            assert_eq!(r.mode, ChunkMode::Sequential);
        }
    }

    #[test]
    fn iteration_sweep_has_one_record_per_key() {
        let records = iteration_sweep(32, &DEFAULT_ITERATION_KEYS, 8, 1, 5).unwrap();
        assert_eq!(records.len(), 7);
        for (r, &k) in records.iter().zip(&DEFAULT_ITERATION_KEYS) {
            assert_eq!(r.string_length, 32);
            assert_eq!(r.iterations, k);
        }
    }

    #[test]
    fn repetitions_change_averaging_not_row_count() {
        let one = length_sweep(&[6], &[2], 8, 1, 9).unwrap();
        let three = length_sweep(&[6], &[2], 8, 3, 9).unwrap();
        assert_eq!(one.len(), three.len());
        assert_eq!(three[0].repetitions, 3);
    }

    #[test]
    fn bad_sweep_arguments_are_rejected() {
        assert!(matches!(
            length_sweep(&[], &[1], 8, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            length_sweep(&[10], &[], 8, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            length_sweep(&[10, 10], &[1], 8, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            length_sweep(&[20, 10], &[1], 8, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            length_sweep(&[0, 10], &[1], 8, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            length_sweep(&[10], &[1], 8, 0, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            iteration_sweep(10, &[1], 9, 1, 0),
            Err(Error::InvalidBlockSize { size: 9 })
        ));
    }

    #[test]
    fn plaintexts_are_deterministic_per_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let pa = random_plaintext(&mut a, 100);
        let pb = random_plaintext(&mut b, 100);
        assert_eq!(pa, pb);
        assert!(pa.iter().all(|b| b.is_ascii_alphanumeric()));
    }

    #[test]
    fn integrity_failure_aborts() {
        // a plaintext ending in the pad byte cannot round-trip exactly
        let params = CipherParams::new(8, 3).unwrap();
        assert!(matches!(
            timed_record(&[0x61, 0x00], &params, 1, ChunkMode::Sequential),
            Err(Error::BenchIntegrity { length: 2, key: 3 })
        ));
    }

    #[test]
    fn parallel_mode_is_recorded() {
        let records =
            length_sweep_with_mode(&[64], &[4], 8, 1, 2, ChunkMode::Parallel).unwrap();
        assert_eq!(records[0].mode, ChunkMode::Parallel);
    }

    #[test]
    fn csv_layout_is_pinned() {
        let records = [BenchRecord {
            string_length: 10,
            iterations: 8,
            runtime_seconds: 0.002,
            repetitions: 3,
            mode: ChunkMode::Sequential,
        }];
        let mut buf = Vec::new();
        emit_csv(&records, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "string_length,iterations,runtime_seconds,repetitions\n10,8,0.002000,3\n"
        );
    }

    #[test]
    fn csv_sorts_by_length_then_key() {
        let mk = |len, k| BenchRecord {
            string_length: len,
            iterations: k,
            runtime_seconds: 0.0,
            repetitions: 1,
            mode: ChunkMode::Sequential,
        };
        let records = [mk(100, 8), mk(10, 64), mk(100, 1), mk(10, 8)];
        let mut buf = Vec::new();
        emit_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(
            rows,
            [
                "10,8,0.000000,1",
                "10,64,0.000000,1",
                "100,1,0.000000,1",
                "100,8,0.000000,1"
            ]
        );
        // byte-identical re-emit
        let mut again = Vec::new();
        emit_csv(&records, &mut again).unwrap();
        assert_eq!(again, text.as_bytes());
    }
}
