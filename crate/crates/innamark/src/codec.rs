//! Byte sequence <-> whitespace digit string conversion.
//!
//! Each payload byte becomes `digits_per_byte` base-`radix` digits, least
//! significant first, rendered as digit characters of the alphabet.

use crate::alphabet::WhitespaceAlphabet;

/// Digits needed to represent one byte: ceil(8 / log2(radix)).
pub fn digits_per_byte(alphabet: &WhitespaceAlphabet) -> usize {
    let radix = alphabet.radix() as f64;
    (8.0 / radix.log2()).ceil() as usize
}

/// A run of digit characters, all members of one alphabet's digit set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitString {
    chars: Vec<char>,
}

impl DigitString {
    /// Wraps `chars` after checking every element is a digit character of
    /// `alphabet`. Returns the first offending character on failure.
    pub fn from_chars(chars: Vec<char>, alphabet: &WhitespaceAlphabet) -> Result<Self, char> {
        match chars.iter().find(|&&c| alphabet.digit_of(c).is_none()) {
            Some(&bad) => Err(bad),
            None => Ok(Self { chars }),
        }
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
}

/// Encodes `payload` into digit characters, one group of `digits_per_byte`
/// per byte, remainders emitted least significant first.
pub fn encode_bytes(payload: &[u8], alphabet: &WhitespaceAlphabet) -> DigitString {
    let radix = alphabet.radix() as u32;
    let per_byte = digits_per_byte(alphabet);
    let mut chars = Vec::with_capacity(payload.len() * per_byte);
    for &byte in payload {
        let mut q = byte as u32;
        for _ in 0..per_byte {
            let r = (q % radix) as u8;
            q /= radix;
            // char_of cannot fail: r < radix by construction.
            chars.push(alphabet.char_of(r).expect("remainder below radix"));
        }
    }
    DigitString { chars }
}

/// Result of decoding a digit string back into bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedBytes {
    pub bytes: Vec<u8>,
    /// Set when the input length was not a whole number of per-byte groups;
    /// the trailing partial group is dropped. Damaged segments produced by
    /// tampering commonly end this way.
    pub truncated_tail: bool,
}

/// Inverse of [`encode_bytes`]: reconstructs each byte as the positional sum
/// of its digit group. A trailing partial group yields the whole bytes plus
/// the `truncated_tail` flag rather than an error.
pub fn decode_digits(digits: &DigitString, alphabet: &WhitespaceAlphabet) -> DecodedBytes {
    let radix = alphabet.radix() as u32;
    let per_byte = digits_per_byte(alphabet);
    let whole = digits.chars.len() / per_byte;
    let mut bytes = Vec::with_capacity(whole);
    for group in digits.chars.chunks_exact(per_byte) {
        let mut value: u32 = 0;
        let mut weight: u32 = 1;
        for &c in group {
            let digit = alphabet.digit_of(c).expect("DigitString invariant") as u32;
            value += digit * weight;
            weight *= radix;
        }
        bytes.push(value as u8);
    }
    DecodedBytes {
        bytes,
        truncated_tail: digits.chars.len() % per_byte != 0,
    }
}
