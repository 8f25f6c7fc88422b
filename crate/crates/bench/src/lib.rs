//! Synthetic corpora for benchmarks and load tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rpaclone_core::MetaProcess;

/// `processes` random meta-processes of `len` tokens over `alphabet`
/// symbols, with a shared block of `planted` tokens copied into every
/// tenth process.
pub fn synthetic_corpus(processes: usize, len: usize, alphabet: usize, planted: usize, seed: u64) -> Vec<MetaProcess> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block: Vec<String> = (0..planted).map(|i| format!("Block{i}")).collect();
    (0..processes)
        .map(|p| {
            let mut tokens: Vec<String> = (0..len)
                .map(|_| format!("T{}", rng.random_range(0..alphabet)))
                .collect();
            if p % 10 == 0 && planted > 0 && planted <= len {
                let at = rng.random_range(0..=len - planted);
                tokens[at..at + planted].clone_from_slice(&block);
            }
            MetaProcess::new(format!("p{p:04}"), tokens)
        })
        .collect()
}
