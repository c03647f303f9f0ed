//! Imperceptibility and capacity metrics.

use crate::alphabet::WhitespaceAlphabet;
use crate::embedder::capacity_bytes;
use crate::tag::TagFlags;

/// Code-point count of `marked` minus that of `cover`. Zero for pure
/// one-to-one substitution schemes.
pub fn char_count_delta(cover: &str, marked: &str) -> i64 {
    marked.chars().count() as i64 - cover.chars().count() as i64
}

/// UTF-8 byte length of `marked` minus that of `cover`. Every default
/// alphabet member is three bytes in UTF-8 against one for the space it
/// replaces, so a fully embedded cover grows by two bytes per space.
pub fn utf8_size_delta(cover: &str, marked: &str) -> i64 {
    marked.len() as i64 - cover.len() as i64
}

/// Mean maximum embeddable payload bits per cover code point across `docs`.
pub fn capacity_ratio(
    docs: &[String],
    flags: &TagFlags,
    alphabet: &WhitespaceAlphabet,
) -> f64 {
    if docs.is_empty() {
        return 0.0;
    }
    let sum: f64 = docs
        .iter()
        .map(|doc| {
            let chars = doc.chars().count();
            if chars == 0 {
                return 0.0;
            }
            (capacity_bytes(doc, flags, alphabet) * 8) as f64 / chars as f64
        })
        .sum();
    sum / docs.len() as f64
}
