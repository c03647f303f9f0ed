//! Cover-text corpora for the evaluation harness.
//!
//! The built-in corpus is generated deterministically from a seed: dummy-text
//! prose in the lorem-ipsum vocabulary with varied document lengths, standing
//! in for a large article dataset at desk scale. A directory of plain-text
//! files can be used instead.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io;
use std::path::Path;

use super::tamper::derive_seed;

const WORDS: &[&str] = &[
    "lorem", "ipsum", "dolor", "sit", "amet", "consectetur", "adipiscing", "elit", "sed", "do",
    "eiusmod", "tempor", "incididunt", "ut", "labore", "et", "dolore", "magna", "aliqua", "enim",
    "ad", "minim", "veniam", "quis", "nostrud", "exercitation", "ullamco", "laboris", "nisi",
    "aliquip", "ex", "ea", "commodo", "consequat", "duis", "aute", "irure", "in", "reprehenderit",
    "voluptate", "velit", "esse", "cillum", "eu", "fugiat", "nulla", "pariatur", "excepteur",
    "sint", "occaecat", "cupidatat", "non", "proident", "sunt", "culpa", "qui", "officia",
    "deserunt", "mollit", "anim", "id", "est", "laborum", "at", "vero", "eos", "accusamus",
    "iusto", "odio", "dignissimos", "ducimus", "blanditiis", "praesentium", "voluptatum",
];

/// A list of cover documents.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub docs: Vec<String>,
}

impl Corpus {
    /// Deterministic dummy-text corpus. Most documents run a few hundred to a
    /// few thousand characters; every seventh is large enough to hold one
    /// copy of a several-hundred-byte payload.
    pub fn synthetic(count: usize, seed: u64) -> Self {
        let docs = (0..count)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
                let target = if i % 7 == 3 {
                    rng.gen_range(9_000..14_000)
                } else {
                    rng.gen_range(800..3_500)
                };
                generate_document(&mut rng, target)
            })
            .collect();
        Self { docs }
    }

    /// Loads every `.txt` file under `dir` (non-recursive), sorted by file
    /// name for deterministic ordering.
    pub fn from_dir(dir: &Path) -> io::Result<Self> {
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .collect::<io::Result<Vec<_>>>()?
            .into_iter()
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
            .collect();
        paths.sort();
        let docs = paths
            .iter()
            .map(std::fs::read_to_string)
            .collect::<io::Result<Vec<_>>>()?;
        Ok(Self { docs })
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn mean_chars(&self) -> f64 {
        if self.docs.is_empty() {
            return 0.0;
        }
        self.docs.iter().map(|d| d.chars().count()).sum::<usize>() as f64
            / self.docs.len() as f64
    }
}

fn generate_document(rng: &mut ChaCha8Rng, target_chars: usize) -> String {
    let mut doc = String::with_capacity(target_chars + 64);
    let mut sentence_in_paragraph = 0;
    while doc.chars().count() < target_chars {
        let words = rng.gen_range(6..15);
        let mut sentence = String::new();
        for w in 0..words {
            let word = WORDS[rng.gen_range(0..WORDS.len())];
            if w == 0 {
                let mut chars = word.chars();
                let first = chars.next().unwrap().to_ascii_uppercase();
                sentence.push(first);
                sentence.push_str(chars.as_str());
            } else {
                sentence.push(' ');
                sentence.push_str(word);
            }
        }
        sentence.push('.');
        if !doc.is_empty() {
            if sentence_in_paragraph >= 5 && rng.gen_bool(0.3) {
                doc.push('\n');
                sentence_in_paragraph = 0;
            } else {
                doc.push(' ');
            }
        }
        doc.push_str(&sentence);
        sentence_in_paragraph += 1;
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedder::count_spaces;

    #[test]
    fn synthetic_corpus_is_deterministic() {
        let a = Corpus::synthetic(10, 99);
        let b = Corpus::synthetic(10, 99);
        assert_eq!(a.docs, b.docs);
        let c = Corpus::synthetic(10, 100);
        assert_ne!(a.docs, c.docs);
    }

    #[test]
    fn documents_have_spaces_and_varied_lengths() {
        let corpus = Corpus::synthetic(210, 7);
        assert_eq!(corpus.len(), 210);
        assert!(corpus.docs.iter().all(|d| count_spaces(d) > 20));
        let large = corpus
            .docs
            .iter()
            .filter(|d| d.chars().count() >= 9_000)
            .count();
        assert!(large >= 25, "{large} large documents");
    }

    #[test]
    fn from_dir_reads_sorted_txt_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("b.txt"), "second doc").unwrap();
        std::fs::write(dir.path().join("a.txt"), "first doc").unwrap();
        std::fs::write(dir.path().join("ignore.md"), "not text").unwrap();
        let corpus = Corpus::from_dir(dir.path()).unwrap();
        assert_eq!(corpus.docs, vec!["first doc", "second doc"]);
    }
}
