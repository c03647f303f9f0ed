//! The whitespace homoglyph alphabet.
//!
//! Five Unicode whitespace characters that render at widths close enough to
//! the ordinary space (U+0020) that a substitution is not noticeable: one is
//! reserved as the segment separator, the remaining four carry base-4 digits.

use thiserror::Error;

/// The ordinary space character. The embedder replaces exactly this character
/// and nothing else; it must never be a member of an alphabet.
pub const STANDARD_SPACE: char = '\u{0020}';

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet characters must be pairwise distinct, {0:?} appears twice")]
    DuplicateCharacter(char),
    #[error("alphabet needs at least 2 digit characters, got {0}")]
    TooFewDigits(usize),
    #[error("the standard space U+0020 cannot be an alphabet member")]
    ContainsStandardSpace,
    #[error("digit value {value} out of range for a {radix}-character alphabet")]
    DigitOutOfRange { value: u8, radix: usize },
}

/// A separator character plus an ordered digit alphabet.
///
/// The default instance is the curated five-character set: the three-per-em
/// space as separator and the punctuation space, thin space, narrow no-break
/// space and medium mathematical space as digits 0..=3 (ascending code
/// points). Custom alphabets are allowed as long as the members are distinct
/// and U+0020 is not among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitespaceAlphabet {
    separator: char,
    digits: Vec<char>,
}

impl WhitespaceAlphabet {
    pub const DEFAULT_SEPARATOR: char = '\u{2004}';
    pub const DEFAULT_DIGITS: [char; 4] = ['\u{2008}', '\u{2009}', '\u{202F}', '\u{205F}'];

    pub fn new(separator: char, digits: Vec<char>) -> Result<Self, AlphabetError> {
        if digits.len() < 2 {
            return Err(AlphabetError::TooFewDigits(digits.len()));
        }
        let mut all: Vec<char> = Vec::with_capacity(digits.len() + 1);
        all.push(separator);
        all.extend(&digits);
        if all.contains(&STANDARD_SPACE) {
            return Err(AlphabetError::ContainsStandardSpace);
        }
        for (i, &c) in all.iter().enumerate() {
            if all[..i].contains(&c) {
                return Err(AlphabetError::DuplicateCharacter(c));
            }
        }
        Ok(Self { separator, digits })
    }

    pub fn separator(&self) -> char {
        self.separator
    }

    pub fn digits(&self) -> &[char] {
        &self.digits
    }

    /// Number of digit characters (the encoding radix).
    pub fn radix(&self) -> usize {
        self.digits.len()
    }

    /// Digit value of `c`, or `None` for anything outside the digit set
    /// (including the separator and the standard space).
    pub fn digit_of(&self, c: char) -> Option<u8> {
        self.digits.iter().position(|&d| d == c).map(|v| v as u8)
    }

    /// Digit character for value `v`; strict inverse of [`digit_of`](Self::digit_of).
    pub fn char_of(&self, v: u8) -> Result<char, AlphabetError> {
        self.digits
            .get(v as usize)
            .copied()
            .ok_or(AlphabetError::DigitOutOfRange {
                value: v,
                radix: self.digits.len(),
            })
    }

    /// True for the separator and every digit character.
    pub fn is_member(&self, c: char) -> bool {
        c == self.separator || self.digits.contains(&c)
    }

    /// `["U+2004", "U+2008", ...]`, separator first. Used in report metadata.
    pub fn code_point_labels(&self) -> Vec<String> {
        std::iter::once(self.separator)
            .chain(self.digits.iter().copied())
            .map(|c| format!("U+{:04X}", c as u32))
            .collect()
    }
}

impl Default for WhitespaceAlphabet {
    fn default() -> Self {
        Self {
            separator: Self::DEFAULT_SEPARATOR,
            digits: Self::DEFAULT_DIGITS.to_vec(),
        }
    }
}
