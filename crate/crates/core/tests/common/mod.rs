#![allow(dead_code)]

use std::collections::BTreeSet;

use mcskel_core::{
    parse_kernel, random_kernel, Alphabet, Context, Support, SupportKernel, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE4: &str = include_str!("../../../../kernels/example4.json");

pub fn example4() -> SupportKernel {
    parse_kernel(EXAMPLE4).unwrap()
}

pub const RATES: [f64; 4] = [0.1, 0.3, 0.5, 0.7];

#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub alphabet_size: usize,
    pub order: usize,
    pub rate: f64,
    pub seed: u64,
}

/// 1200 full-table kernels, 30 per (|A|, m, rate) cell.
pub fn random_suite() -> Vec<(Params, SupportKernel)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    for alphabet_size in [2, 3] {
        for order in 1..=5 {
            for rate in RATES {
                for _ in 0..30 {
                    let p = Params { alphabet_size, order, rate, seed };
                    out.push((p, random_kernel(alphabet_size, order, rate, seed).unwrap()));
                    seed += 1;
                }
            }
        }
    }
    out
}

/// Sparse context tree: a handful of random suffixes of mixed length over a
/// full default. These hit `0 < K < m` far more often than full tables.
pub fn random_tree_kernel(alphabet_size: usize, order: usize, rate: f64, seed: u64) -> SupportKernel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(1..=4);
    let mut seen = BTreeSet::new();
    let mut contexts = Vec::new();
    for _ in 0..n {
        let len = rng.gen_range(1..=order);
        let suffix: Vec<usize> = (0..len).map(|_| rng.gen_range(0..alphabet_size)).collect();
        if !seen.insert(suffix.clone()) {
            continue;
        }
        let mut bits: Vec<bool> = (0..alphabet_size).map(|_| !rng.gen_bool(rate)).collect();
        if !bits.iter().any(|&b| b) {
            bits[rng.gen_range(0..alphabet_size)] = true;
        }
        contexts.push(Context {
            suffix: Word::from(suffix),
            support: Support::new(bits),
            probs: None,
        });
    }
    SupportKernel::new(
        Alphabet::numeric(alphabet_size).unwrap(),
        order,
        contexts,
        Support::full(alphabet_size),
    )
    .unwrap()
}

pub fn tree_suite(count: u64) -> Vec<SupportKernel> {
    (0..count)
        .map(|s| {
            let alphabet_size = 2 + (s % 2) as usize;
            let order = 1 + ((s / 2) % 5) as usize;
            let rate = RATES[((s / 10) % 4) as usize];
            random_tree_kernel(alphabet_size, order, rate, s)
        })
        .collect()
}
