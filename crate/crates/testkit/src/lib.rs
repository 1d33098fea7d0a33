//! Test fixtures for the vevid crates: an f64 brute-force reference
//! pipeline, seeded random data and the location of the bundled corpus.
//!
//! Nothing here depends on `vevid-core`, so the references stay independent
//! of the code they check.

pub mod oracle;

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Directory holding the bundled low-light corpus.
pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Corpus images in file-name order.
pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("corpus entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "ppm" || e == "png"))
        .collect();
    files.sort();
    files
}

/// `n` uniform samples in `[0, 1)` from a seeded ChaCha8 stream.
pub fn random_values(n: usize, seed: u64) -> Vec<f32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen::<f32>()).collect()
}

/// `n` uniform bytes from a seeded ChaCha8 stream.
pub fn random_bytes(n: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen::<u8>()).collect()
}
