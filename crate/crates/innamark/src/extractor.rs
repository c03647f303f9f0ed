//! Extraction: the literal single-segment scan and a robust multi-segment
//! recovery mode that exploits the repeated embedding.

use crate::alphabet::WhitespaceAlphabet;
use crate::codec::{decode_digits, DigitString};
use crate::tag::{analyze_tag, TagError};
use crate::transforms::TransformSuite;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractError {
    #[error("no alphabet characters present in the text")]
    NoMarks,
    #[error("no segment could be decoded")]
    Unrecoverable,
    #[error(transparent)]
    Tag(#[from] TagError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractMode {
    Literal,
    Robust,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractWarning {
    /// The last segment ended on a partial digit group.
    TruncatedTail,
    /// A digit run appeared before any separator and was skipped (robust) or
    /// collected (literal, matching the original scan behavior).
    UnseparatedLeadingRun,
    /// No segment passed validation; the result is a best-effort decode.
    ValidityFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractResult {
    pub message: Vec<u8>,
    pub mode: ExtractMode,
    pub segments_found: usize,
    pub segments_valid: usize,
    pub warnings: Vec<ExtractWarning>,
}

/// One separator-delimited run of digit characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub digits: Vec<char>,
    /// True when the run had no preceding separator (start-of-text garbage
    /// or a copy whose separator was destroyed).
    pub unseparated: bool,
}

/// Splits the subsequence of alphabet characters on separator boundaries.
/// Empty runs between consecutive separators are dropped; a possibly
/// truncated final run is included.
pub fn segments(text: &str, alphabet: &WhitespaceAlphabet) -> Vec<Segment> {
    let mut runs = Vec::new();
    let mut current: Vec<char> = Vec::new();
    let mut seen_separator = false;
    for c in text.chars() {
        if c == alphabet.separator() {
            if !current.is_empty() {
                runs.push(Segment {
                    digits: std::mem::take(&mut current),
                    unseparated: !seen_separator,
                });
            }
            seen_separator = true;
        } else if alphabet.digit_of(c).is_some() {
            current.push(c);
        }
    }
    if !current.is_empty() {
        runs.push(Segment {
            digits: current,
            unseparated: !seen_separator,
        });
    }
    runs
}

/// The literal scan: collects digit characters until the first separator
/// encountered after at least one digit, then decodes and unframes. Digit
/// characters occurring before any separator are collected too.
pub fn extract_literal(
    text: &str,
    alphabet: &WhitespaceAlphabet,
    passphrase: Option<&str>,
    suite: &TransformSuite,
) -> Result<ExtractResult, ExtractError> {
    let mut collected: Vec<char> = Vec::new();
    let mut saw_mark = false;
    let mut leading_unseparated = false;
    let mut seen_separator = false;
    for c in text.chars() {
        if !alphabet.is_member(c) {
            continue;
        }
        saw_mark = true;
        if c == alphabet.separator() {
            if !collected.is_empty() {
                break;
            }
            seen_separator = true;
        } else {
            if !seen_separator && collected.is_empty() {
                leading_unseparated = true;
            }
            collected.push(c);
        }
    }
    if !saw_mark {
        return Err(ExtractError::NoMarks);
    }

    let digits = DigitString::from_chars(collected, alphabet).expect("filtered to digit chars");
    let decoded = decode_digits(&digits, alphabet);
    let message = analyze_tag(&decoded.bytes, passphrase, suite)?;

    let mut warnings = Vec::new();
    if decoded.truncated_tail {
        warnings.push(ExtractWarning::TruncatedTail);
    }
    if leading_unseparated {
        warnings.push(ExtractWarning::UnseparatedLeadingRun);
    }
    Ok(ExtractResult {
        message,
        mode: ExtractMode::Literal,
        segments_found: segments(text, alphabet).len(),
        segments_valid: 1,
        warnings,
    })
}

/// Decode of one segment, if the tag byte parses at all.
struct SegmentDecode {
    message: Vec<u8>,
    /// Whole digit groups and every enabled integrity prefix verified.
    valid: bool,
    truncated: bool,
}

fn decode_segment(
    segment: &Segment,
    alphabet: &WhitespaceAlphabet,
    passphrase: Option<&str>,
    suite: &TransformSuite,
) -> Option<SegmentDecode> {
    let digits = DigitString::from_chars(segment.digits.clone(), alphabet).ok()?;
    let decoded = decode_digits(&digits, alphabet);
    let message = analyze_tag(&decoded.bytes, passphrase, suite).ok()?;
    // analyze_tag has parsed the tag and verified every enabled integrity
    // prefix. Integrity-free tags offer no signal beyond a whole-group
    // length and a clean decode.
    let valid = !decoded.truncated_tail && !segment.unseparated;
    Some(SegmentDecode {
        message,
        valid,
        truncated: decoded.truncated_tail,
    })
}

/// Robust extraction over all segments.
///
/// Returns the message of the first valid segment in text order. If no
/// segment is valid and at least three segments share a length, a
/// per-position majority vote over the largest equal-length group is
/// revalidated and returned on success (vote ties go to the lowest digit
/// value). Otherwise the longest segment's best-effort decode is returned
/// with a validity warning.
pub fn extract_robust(
    text: &str,
    alphabet: &WhitespaceAlphabet,
    passphrase: Option<&str>,
    suite: &TransformSuite,
) -> Result<ExtractResult, ExtractError> {
    let segs = segments(text, alphabet);
    let has_any_mark = text.chars().any(|c| alphabet.is_member(c));
    if segs.is_empty() {
        return if has_any_mark {
            // Separators only: marks exist but carry nothing.
            Err(ExtractError::Unrecoverable)
        } else {
            Err(ExtractError::NoMarks)
        };
    }

    let decodes: Vec<Option<SegmentDecode>> = segs
        .iter()
        .map(|seg| decode_segment(seg, alphabet, passphrase, suite))
        .collect();
    let segments_valid = decodes
        .iter()
        .filter(|d| d.as_ref().is_some_and(|d| d.valid))
        .count();
    let mut warnings = Vec::new();
    if segs.iter().any(|s| s.unseparated) {
        warnings.push(ExtractWarning::UnseparatedLeadingRun);
    }

    if let Some(first_valid) = decodes.iter().flatten().find(|d| d.valid) {
        return Ok(ExtractResult {
            message: first_valid.message.clone(),
            mode: ExtractMode::Robust,
            segments_found: segs.len(),
            segments_valid,
            warnings,
        });
    }

    // Majority vote across the largest group of equal-length segments.
    if let Some(voted) = majority_vote(&segs, alphabet) {
        let candidate = Segment {
            digits: voted,
            unseparated: false,
        };
        if let Some(decode) = decode_segment(&candidate, alphabet, passphrase, suite) {
            if decode.valid {
                return Ok(ExtractResult {
                    message: decode.message,
                    mode: ExtractMode::Robust,
                    segments_found: segs.len(),
                    segments_valid,
                    warnings,
                });
            }
        }
    }

    // Best-effort: longest segment that decodes at all.
    let longest = segs
        .iter()
        .zip(&decodes)
        .filter_map(|(seg, d)| d.as_ref().map(|d| (seg.digits.len(), d)))
        .max_by_key(|(len, _)| *len);
    match longest {
        Some((_, decode)) => {
            warnings.push(ExtractWarning::ValidityFailed);
            if decode.truncated {
                warnings.push(ExtractWarning::TruncatedTail);
            }
            Ok(ExtractResult {
                message: decode.message.clone(),
                mode: ExtractMode::Robust,
                segments_found: segs.len(),
                segments_valid,
                warnings,
            })
        }
        None => Err(ExtractError::Unrecoverable),
    }
}

/// Per-position vote over the largest class of equal-length segments, if that
/// class has at least three members. Ties prefer the lowest digit value;
/// classes tie-break toward the longer length.
fn majority_vote(segs: &[Segment], alphabet: &WhitespaceAlphabet) -> Option<Vec<char>> {
    use std::collections::HashMap;
    let mut by_len: HashMap<usize, Vec<&Segment>> = HashMap::new();
    for seg in segs {
        by_len.entry(seg.digits.len()).or_default().push(seg);
    }
    let (_, group) = by_len
        .iter()
        .filter(|(len, group)| **len > 0 && group.len() >= 3)
        .max_by_key(|(len, group)| (group.len(), **len))?;

    let len = group[0].digits.len();
    let radix = alphabet.radix();
    let mut voted = Vec::with_capacity(len);
    for pos in 0..len {
        let mut counts = vec![0usize; radix];
        for seg in group {
            if let Some(v) = alphabet.digit_of(seg.digits[pos]) {
                counts[v as usize] += 1;
            }
        }
        let winner = counts
            .iter()
            .enumerate()
            .max_by(|(ia, ca), (ib, cb)| ca.cmp(cb).then(ib.cmp(ia)))
            .map(|(i, _)| i as u8)
            .unwrap();
        voted.push(alphabet.char_of(winner).expect("winner below radix"));
    }
    Some(voted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedder::embed;
    use crate::tag::{EmbedOptions, TagFlags};

    fn defaults() -> (WhitespaceAlphabet, TransformSuite) {
        (WhitespaceAlphabet::default(), TransformSuite::default())
    }

    fn lorem() -> &'static str {
        "Lorem ipsum dolor sit amet, consectetur adipiscing elit, sed do \
         eiusmod tempor incididunt ut labore et dolore magna aliqua. Ut enim \
         ad minim veniam, quis nostrud exercitation ullamco laboris nisi ut \
         aliquip ex ea commodo consequat."
    }

    #[test]
    fn literal_round_trip_worked_example() {
        let (a, s) = defaults();
        let marked = embed(lorem(), b"John", &EmbedOptions::default(), &a, &s).unwrap();
        let result = extract_literal(&marked.text, &a, None, &s).unwrap();
        assert_eq!(result.message, b"John");
        assert!(result.segments_found >= 1);
        assert!(result.warnings.is_empty());
    }

    #[test]
    fn plain_text_has_no_marks() {
        let (a, s) = defaults();
        assert_eq!(
            extract_literal("just ordinary text", &a, None, &s),
            Err(ExtractError::NoMarks)
        );
        assert_eq!(
            extract_robust("just ordinary text", &a, None, &s),
            Err(ExtractError::NoMarks)
        );
    }

    #[test]
    fn literal_stops_at_first_complete_segment() {
        let (a, s) = defaults();
        let marked = embed(lorem(), b"John", &EmbedOptions::default(), &a, &s).unwrap();
        // Truncate inside the second copy: keep the first copy plus the
        // second separator and a few digits.
        let chars: Vec<char> = marked.text.chars().collect();
        let separators: Vec<usize> = chars
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == a.separator())
            .map(|(i, _)| i)
            .collect();
        assert!(separators.len() >= 2);
        let cut = (separators[1] + 7).min(chars.len());
        let truncated: String = chars[..cut].iter().collect();
        let result = extract_literal(&truncated, &a, None, &s).unwrap();
        assert_eq!(result.message, b"John");
        assert!(result.warnings.is_empty());
    }

    #[test]
    fn segments_split_on_separators() {
        let (a, _) = defaults();
        let marked = embed(lorem(), b"Jo", &EmbedOptions::default(), &a, &TransformSuite::default())
            .unwrap();
        let segs = segments(&marked.text, &a);
        assert!(segs.len() >= 3, "copies: {}", marked.copies_embedded);
        assert_eq!(segs[0].digits, segs[1].digits);
        assert!(!segs[0].unseparated);

        assert!(segments("plain text", &a).is_empty());

        let lone = format!("x{}{}{}{}{}", a.separator(), '\u{2008}', '\u{2008}', '\u{2009}', '\u{202F}');
        let segs = segments(&lone, &a);
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].digits.len(), 4);
        assert!(!segs[0].unseparated);
    }

    #[test]
    fn leading_run_without_separator_is_flagged() {
        let (a, _) = defaults();
        let text = format!("{}{}x{}y", '\u{2008}', '\u{2009}', a.separator());
        let segs = segments(&text, &a);
        assert_eq!(segs.len(), 1);
        assert!(segs[0].unseparated);
    }

    #[test]
    fn robust_agrees_with_literal_on_clean_text() {
        let (a, s) = defaults();
        let marked = embed(lorem(), b"John", &EmbedOptions::default(), &a, &s).unwrap();
        let literal = extract_literal(&marked.text, &a, None, &s).unwrap();
        let robust = extract_robust(&marked.text, &a, None, &s).unwrap();
        assert_eq!(literal.message, robust.message);
        assert!(robust.segments_valid >= 1);
    }

    #[test]
    fn robust_survives_block_overwrite() {
        let (a, s) = defaults();
        let cover = lorem().repeat(4);
        let marked = embed(&cover, b"John", &EmbedOptions::default(), &a, &s).unwrap();
        assert!(marked.copies_embedded >= 5);
        let chars: Vec<char> = marked.text.chars().collect();
        let block = chars.len() / 10;
        let start = chars.len() / 2;
        let tampered: String = chars
            .iter()
            .enumerate()
            .map(|(i, &c)| if i >= start && i < start + block { 'a' } else { c })
            .collect();
        let result = extract_robust(&tampered, &a, None, &s).unwrap();
        assert_eq!(result.message, b"John");
        assert!(result.segments_valid >= 1);
    }

    #[test]
    fn destroyed_marks_are_unrecoverable() {
        let (a, s) = defaults();
        let marked = embed(lorem(), b"John", &EmbedOptions::default(), &a, &s).unwrap();
        let stripped: String = marked
            .text
            .chars()
            .map(|c| if a.is_member(c) { ' ' } else { c })
            .collect();
        assert_eq!(
            extract_robust(&stripped, &a, None, &s),
            Err(ExtractError::NoMarks)
        );
    }

    #[test]
    fn majority_vote_recovers_when_every_copy_is_corrupted() {
        let (a, s) = defaults();
        // crc32 makes corrupted copies detectably invalid, forcing the vote.
        // Tagged payload: tag + crc + "Hi" = 7 bytes = 28 digits per copy.
        let options = EmbedOptions {
            flags: TagFlags {
                crc32: true,
                ..Default::default()
            },
            passphrase: None,
        };
        let cover = "w ".repeat(5 * 29);
        let marked = embed(&cover, b"Hi", &options, &a, &s).unwrap();
        assert_eq!(marked.copies_embedded, 5);
        // Flip one digit per copy, each at a different position, so no copy
        // passes its checksum but every position has a 4-of-5 majority.
        let mut chars: Vec<char> = marked.text.chars().collect();
        let digit_positions: Vec<usize> = chars
            .iter()
            .enumerate()
            .filter(|(_, c)| a.digit_of(**c).is_some())
            .map(|(i, _)| i)
            .collect();
        for copy in 0..5 {
            let idx = digit_positions[copy * 28 + copy * 3];
            let old = a.digit_of(chars[idx]).unwrap();
            chars[idx] = a.char_of((old + 1) % 4).unwrap();
        }
        let tampered: String = chars.iter().collect();
        let result = extract_robust(&tampered, &a, None, &s).unwrap();
        assert_eq!(result.message, b"Hi");
        assert_eq!(result.segments_valid, 0);
        assert!(!result.warnings.contains(&ExtractWarning::ValidityFailed));
    }

    #[test]
    fn round_trip_with_integrity_options() {
        let (a, s) = defaults();
        let cover = lorem().repeat(3);
        let flags = TagFlags {
            crc32: true,
            hashing: true,
            size_prefix: true,
            ..Default::default()
        };
        let options = EmbedOptions {
            flags,
            passphrase: None,
        };
        let marked = embed(&cover, b"sig", &options, &a, &s).unwrap();
        let result = extract_robust(&marked.text, &a, None, &s).unwrap();
        assert_eq!(result.message, b"sig");
        assert!(result.segments_valid >= 1);
    }
}
