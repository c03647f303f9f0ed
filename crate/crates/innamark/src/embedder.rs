//! Embedding: one-to-one substitution of every standard space in the cover
//! text with the separator/digit stream carrying the framed payload.
//!
//! Each copy of the payload is one separator character followed by the digit
//! characters of the serialized tagged payload. When a copy completes and
//! spaces remain, the next space becomes the separator of a fresh copy, so
//! the output never contains a standard space and never changes the
//! code-point count.

use crate::alphabet::{WhitespaceAlphabet, STANDARD_SPACE};
use crate::codec::{digits_per_byte, encode_bytes};
use crate::tag::{apply_tag, EmbedOptions, TagError, TagFlags};
use crate::transforms::TransformSuite;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("cover text contains no standard space characters to substitute")]
    NoSpaces,
    #[error("insufficient capacity: payload needs {required} spaces, cover has {available}")]
    InsufficientCapacity { required: usize, available: usize },
    #[error(transparent)]
    Tag(#[from] TagError),
}

/// Outcome of an embed: the marked text plus copy accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WatermarkResult {
    pub text: String,
    /// Complete separator-plus-payload copies placed in the text.
    pub copies_embedded: usize,
    /// Digit characters of the trailing incomplete copy, if any.
    pub partial_tail_digits: usize,
}

/// Number of standard spaces (U+0020) in `cover`. Other whitespace such as
/// tabs, newlines, or the no-break space does not count.
pub fn count_spaces(cover: &str) -> usize {
    cover.chars().filter(|&c| c == STANDARD_SPACE).count()
}

/// Largest message (in bytes, before transforms) that fits in `cover` with
/// the given flags: one separator plus the digit characters of tag, prefixes,
/// and message must not exceed the space count.
pub fn capacity_bytes(cover: &str, flags: &TagFlags, alphabet: &WhitespaceAlphabet) -> usize {
    let spaces = count_spaces(cover);
    let d = digits_per_byte(alphabet);
    if spaces < 1 {
        return 0;
    }
    // 1 + d * (1 + prefix_len + p) <= spaces, solved for p.
    ((spaces - 1) / d).saturating_sub(1 + flags.prefix_len())
}

/// Embeds `message` into `cover`, replacing every standard space with the
/// cyclic separator/digit stream.
pub fn embed(
    cover: &str,
    message: &[u8],
    options: &EmbedOptions,
    alphabet: &WhitespaceAlphabet,
    suite: &TransformSuite,
) -> Result<WatermarkResult, EmbedError> {
    let available = count_spaces(cover);
    if available == 0 {
        return Err(EmbedError::NoSpaces);
    }
    let payload = apply_tag(message, options, suite)?;
    let digits = encode_bytes(&payload, alphabet);
    let copy_len = digits.len();
    let required = 1 + copy_len;
    if available < required {
        return Err(EmbedError::InsufficientCapacity {
            required,
            available,
        });
    }

    let separator = alphabet.separator();
    let mut out = String::with_capacity(cover.len() + available * 2);
    // Position in the current copy: 0 = separator pending, k in 1..=copy_len
    // means digit k is next.
    let mut pos = 0usize;
    let mut copies = 0usize;
    for c in cover.chars() {
        if c != STANDARD_SPACE {
            out.push(c);
            continue;
        }
        if pos == 0 || pos > copy_len {
            // Either the very first space or the copy just completed: this
            // space becomes the separator of the next copy.
            if pos > copy_len {
                copies += 1;
            }
            out.push(separator);
            pos = 1;
        } else {
            out.push(digits.chars()[pos - 1]);
            pos += 1;
        }
    }
    let partial_tail_digits = if pos > copy_len {
        copies += 1;
        0
    } else {
        pos.saturating_sub(1)
    };

    Ok(WatermarkResult {
        text: out,
        copies_embedded: copies,
        partial_tail_digits,
    })
}
