//! Two simplified comparison baselines: single-location zero-width insertion
//! and trailing tab/space appending. Both are insertion-based, so unlike the
//! substitution scheme they change the character count of the cover.

/// Common surface the sweep drives every scheme through.
pub trait HidingScheme: Send + Sync {
    fn name(&self) -> &'static str;
    fn hide(&self, cover: &str, message: &[u8]) -> Result<String, String>;
    fn reveal(&self, text: &str) -> Result<Vec<u8>, String>;
}

const ZW_ZERO: char = '\u{200B}';
const ZW_ONE: char = '\u{200C}';

/// Inserts the payload, bit-encoded as two zero-width code points, at one
/// location right after the first space of the cover.
pub struct ZeroWidthBaseline;

impl HidingScheme for ZeroWidthBaseline {
    fn name(&self) -> &'static str {
        "zero-width"
    }

    fn hide(&self, cover: &str, message: &[u8]) -> Result<String, String> {
        let split = cover
            .char_indices()
            .find(|(_, c)| *c == ' ')
            .map(|(i, _)| i + 1)
            .ok_or_else(|| "cover has no space to anchor the payload".to_string())?;
        let mut out = String::with_capacity(cover.len() + message.len() * 8 * 3);
        out.push_str(&cover[..split]);
        for &byte in message {
            for bit in (0..8).rev() {
                out.push(if byte >> bit & 1 == 1 { ZW_ONE } else { ZW_ZERO });
            }
        }
        out.push_str(&cover[split..]);
        Ok(out)
    }

    fn reveal(&self, text: &str) -> Result<Vec<u8>, String> {
        let bits: Vec<u8> = text
            .chars()
            .filter_map(|c| match c {
                ZW_ZERO => Some(0),
                ZW_ONE => Some(1),
                _ => None,
            })
            .collect();
        if bits.is_empty() {
            return Err("no zero-width payload present".to_string());
        }
        Ok(bits
            .chunks_exact(8)
            .map(|byte| byte.iter().fold(0u8, |acc, &b| acc << 1 | b))
            .collect())
    }
}

/// Appends the payload after the end of the text: a tab marker, then one
/// space or tab per bit.
pub struct TrailingWhitespaceBaseline;

impl HidingScheme for TrailingWhitespaceBaseline {
    fn name(&self) -> &'static str {
        "trailing"
    }

    fn hide(&self, cover: &str, message: &[u8]) -> Result<String, String> {
        let mut out = String::with_capacity(cover.len() + 1 + message.len() * 8);
        out.push_str(cover);
        out.push('\t');
        for &byte in message {
            for bit in (0..8).rev() {
                out.push(if byte >> bit & 1 == 1 { '\t' } else { ' ' });
            }
        }
        Ok(out)
    }

    fn reveal(&self, text: &str) -> Result<Vec<u8>, String> {
        // The payload is the trailing run of spaces and tabs, introduced by
        // a tab marker.
        let tail_start = text
            .char_indices()
            .rev()
            .take_while(|(_, c)| *c == ' ' || *c == '\t')
            .last()
            .map(|(i, _)| i)
            .ok_or_else(|| "no trailing whitespace payload".to_string())?;
        // The cover may itself end in whitespace; the marker is the first
        // tab inside the trailing run.
        let tail = &text[tail_start..];
        let marker = tail
            .find('\t')
            .ok_or_else(|| "trailing run lacks the tab marker".to_string())?;
        let payload = &tail[marker + 1..];
        let bits: Vec<u8> = payload
            .chars()
            .map(|c| if c == '\t' { 1 } else { 0 })
            .collect();
        if bits.is_empty() || bits.len() % 8 != 0 {
            return Err("trailing payload is not a whole number of bytes".to_string());
        }
        Ok(bits
            .chunks_exact(8)
            .map(|byte| byte.iter().fold(0u8, |acc, &b| acc << 1 | b))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::metrics::char_count_delta;
    use rand::{Rng, SeedableRng};

    fn random_payloads() -> Vec<Vec<u8>> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        (0..50)
            .map(|_| {
                let len = rng.gen_range(1..40);
                (0..len).map(|_| rng.gen()).collect()
            })
            .collect()
    }

    #[test]
    fn zero_width_round_trips_and_grows_text() {
        let scheme = ZeroWidthBaseline;
        let cover = "a cover text with spaces";
        for payload in random_payloads() {
            let marked = scheme.hide(cover, &payload).unwrap();
            assert_eq!(scheme.reveal(&marked).unwrap(), payload);
            assert!(char_count_delta(cover, &marked) > 0);
        }
        assert!(scheme.hide("nospace", b"x").is_err());
        assert!(scheme.reveal(cover).is_err());
    }

    #[test]
    fn trailing_round_trips_and_grows_text() {
        let scheme = TrailingWhitespaceBaseline;
        let cover = "a cover text with spaces";
        for payload in random_payloads() {
            let marked = scheme.hide(cover, &payload).unwrap();
            assert_eq!(scheme.reveal(&marked).unwrap(), payload);
            assert!(char_count_delta(cover, &marked) > 0);
        }
        assert!(scheme.reveal(cover).is_err());
    }

    #[test]
    fn trailing_survives_mid_text_tamper_but_not_tail_tamper() {
        let scheme = TrailingWhitespaceBaseline;
        let cover = "word ".repeat(100);
        let marked = scheme.hide(&cover, b"Jo").unwrap();

        // A block inside the cover body never touches the appended payload.
        let mid: String = marked
            .chars()
            .enumerate()
            .map(|(i, c)| if (100..150).contains(&i) { 'a' } else { c })
            .collect();
        assert_eq!(scheme.reveal(&mid).unwrap(), b"Jo");

        // A block reaching the end of the text destroys it.
        let len = marked.chars().count();
        let tail: String = marked
            .chars()
            .enumerate()
            .map(|(i, c)| if i >= len - 10 { 'a' } else { c })
            .collect();
        assert_ne!(scheme.reveal(&tail).ok(), Some(b"Jo".to_vec()));
    }
}
