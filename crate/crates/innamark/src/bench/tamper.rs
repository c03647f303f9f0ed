//! Seeded block-replacement tampering.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TamperError {
    #[error("tamper fraction {0} outside the 0.1..=0.9 grid")]
    FractionOutOfRange(f64),
}

/// One deterministic block replacement: a contiguous run of
/// round(fraction * original cover length) code points, starting at a
/// seed-determined uniform position, replaced by the fill character.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TamperSpec {
    pub fraction: f64,
    pub seed: u64,
    pub fill_character: char,
}

impl TamperSpec {
    pub fn new(fraction: f64, seed: u64) -> Result<Self, TamperError> {
        if !(0.1..=0.9).contains(&fraction) {
            return Err(TamperError::FractionOutOfRange(fraction));
        }
        Ok(Self {
            fraction,
            seed,
            fill_character: 'a',
        })
    }
}

/// Replaces one block of `text`. The block length is measured against
/// `original_len` (the cover's code-point count before embedding), not the
/// possibly different current text length.
pub fn tamper_replace(text: &str, original_len: usize, spec: &TamperSpec) -> String {
    let chars: Vec<char> = text.chars().collect();
    if chars.is_empty() {
        return String::new();
    }
    let block = ((spec.fraction * original_len as f64).round() as usize)
        .clamp(1, chars.len());
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let start = rng.gen_range(0..=chars.len() - block);
    chars
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if i >= start && i < start + block {
                spec.fill_character
            } else {
                c
            }
        })
        .collect()
}

/// Per-document seed derived from a master seed. splitmix64 of the pair, so
/// results are independent of iteration order and thread scheduling.
pub fn derive_seed(master_seed: u64, doc_index: u64) -> u64 {
    let mut z = master_seed
        .wrapping_add(doc_index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
