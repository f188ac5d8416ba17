//! Inputs shared by the benchmarks.

use onemotive::motives::random::{motive_suite, RandomParams};
use onemotive::motives::MotiveDatum;
use onemotive::ZMatrix;

pub const SEED: u64 = 0xBE7C;

pub fn motives(count: usize) -> Vec<MotiveDatum> {
    motive_suite(SEED, count, &RandomParams::default())
}

pub fn free_motives(count: usize) -> Vec<MotiveDatum> {
    motive_suite(SEED, count, &RandomParams::free())
}

/// Deterministic dense `n x n` integer matrix with small entries.
pub fn int_matrix(n: usize) -> ZMatrix {
    let rows: Vec<Vec<i64>> =
        (0..n).map(|r| (0..n).map(|c| ((r * 7 + c * 13 + r * c) % 11) as i64 - 5).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ZMatrix::from_i64(n, &refs)
}
