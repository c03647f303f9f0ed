//! Benchmark sweeps and report emission.
//!
//! A report is a flat list of metric rows keyed by (algorithm, message
//! class, metric, optional tamper fraction) plus run metadata. Rows are
//! produced in a fixed order and every random choice derives from the master
//! seed, so a report is a pure function of (corpus, seed, algorithm set).

use serde::Serialize;
use std::collections::BTreeMap;
use std::io;

use crate::alphabet::WhitespaceAlphabet;
use crate::bench::baselines::{HidingScheme, TrailingWhitespaceBaseline, ZeroWidthBaseline};
use crate::bench::corpus::Corpus;
use crate::bench::metrics::{capacity_ratio, char_count_delta, utf8_size_delta};
use crate::bench::similarity::jaro_winkler;
use crate::bench::tamper::{derive_seed, tamper_replace, TamperSpec};
use crate::embedder::embed;
use crate::extractor::{extract_literal, extract_robust};
use crate::tag::EmbedOptions;
use crate::transforms::TransformSuite;

/// The tamper grid: 10% to 90% in steps of 10 points.
pub const FRACTION_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// The two payload classes the evaluation runs with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageClass {
    Short,
    Long,
}

impl MessageClass {
    pub fn label(&self) -> &'static str {
        match self {
            MessageClass::Short => "short",
            MessageClass::Long => "long",
        }
    }
}

/// Four-character short message and the 445-character dummy-text long
/// message used by the execution runs.
pub fn default_messages() -> (Vec<u8>, Vec<u8>) {
    let short = b"John".to_vec();
    let long = "Lorem ipsum dolor sit amet, consectetur adipiscing elit, sed do eiusmod \
        tempor incididunt ut labore et dolore magna aliqua. Ut enim ad minim veniam, quis \
        nostrud exercitation ullamco laboris nisi ut aliquip ex ea commodo consequat. Duis \
        aute irure dolor in reprehenderit in voluptate velit esse cillum dolore eu fugiat \
        nulla pariatur. Excepteur sint occaecat cupidatat non proident, sunt in culpa qui \
        officia deserunt mollit anim id est laborum."
        .as_bytes()
        .to_vec();
    debug_assert_eq!(long.len(), 445);
    (short, long)
}

/// Substitution scheme adapter: embed with the default tag, extract in the
/// requested mode.
pub struct InnamarkScheme {
    pub alphabet: WhitespaceAlphabet,
    pub literal: bool,
}

impl InnamarkScheme {
    pub fn robust() -> Self {
        Self {
            alphabet: WhitespaceAlphabet::default(),
            literal: false,
        }
    }

    pub fn literal() -> Self {
        Self {
            alphabet: WhitespaceAlphabet::default(),
            literal: true,
        }
    }
}

impl HidingScheme for InnamarkScheme {
    fn name(&self) -> &'static str {
        if self.literal {
            "innamark-literal"
        } else {
            "innamark-robust"
        }
    }

    fn hide(&self, cover: &str, message: &[u8]) -> Result<String, String> {
        embed(
            cover,
            message,
            &EmbedOptions::default(),
            &self.alphabet,
            &TransformSuite::default(),
        )
        .map(|r| r.text)
        .map_err(|e| e.to_string())
    }

    fn reveal(&self, text: &str) -> Result<Vec<u8>, String> {
        let suite = TransformSuite::default();
        let result = if self.literal {
            extract_literal(text, &self.alphabet, None, &suite)
        } else {
            extract_robust(text, &self.alphabet, None, &suite)
        };
        result.map(|r| r.message).map_err(|e| e.to_string())
    }
}

/// The default algorithm set: both extraction modes plus the two baselines.
pub fn default_schemes() -> Vec<Box<dyn HidingScheme>> {
    vec![
        Box::new(InnamarkScheme::robust()),
        Box::new(InnamarkScheme::literal()),
        Box::new(ZeroWidthBaseline),
        Box::new(TrailingWhitespaceBaseline),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub algorithm: String,
    pub message_class: String,
    pub metric: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fraction: Option<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportMetadata {
    pub document_count: usize,
    pub mean_document_chars: f64,
    pub master_seed: u64,
    pub alphabet: Vec<String>,
    pub strategies: Vec<String>,
    /// Documents with insufficient capacity, keyed by "algorithm/class".
    pub skipped: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkReport {
    pub metadata: ReportMetadata,
    pub rows: Vec<ReportRow>,
}

impl BenchmarkReport {
    /// One CSV row per metric row: algorithm,message_class,metric,fraction,value.
    pub fn write_csv<W: io::Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["algorithm", "message_class", "metric", "fraction", "value"])?;
        for row in &self.rows {
            w.write_record([
                row.algorithm.as_str(),
                row.message_class.as_str(),
                row.metric.as_str(),
                &row.fraction.map_or(String::new(), |f| format!("{f:.1}")),
                &format!("{}", row.value),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Per-(scheme, class, fraction) success rates over the corpus.
///
/// Each cell embeds the message, applies one seeded block replacement, and
/// attempts extraction; success is exact byte equality with the original.
/// Documents the scheme cannot embed into are skipped and counted once per
/// (scheme, class) in the metadata.
pub fn robustness_sweep(
    corpus: &Corpus,
    schemes: &[Box<dyn HidingScheme>],
    short_message: &[u8],
    long_message: &[u8],
    master_seed: u64,
) -> BenchmarkReport {
    let mut rows = Vec::new();
    let mut skipped = BTreeMap::new();
    for scheme in schemes {
        for (class, message) in [
            (MessageClass::Short, short_message),
            (MessageClass::Long, long_message),
        ] {
            // Embed once per document; the same marked text is tampered at
            // every grid fraction.
            let marked: Vec<Option<(usize, String)>> = corpus
                .docs
                .iter()
                .map(|doc| {
                    scheme
                        .hide(doc, message)
                        .ok()
                        .map(|text| (doc.chars().count(), text))
                })
                .collect();
            let embedded = marked.iter().flatten().count();
            skipped.insert(
                format!("{}/{}", scheme.name(), class.label()),
                corpus.len() - embedded,
            );

            for fraction in FRACTION_GRID {
                let mut successes = 0usize;
                for (idx, entry) in marked.iter().enumerate() {
                    let Some((original_len, text)) = entry else {
                        continue;
                    };
                    let spec = TamperSpec {
                        fraction,
                        seed: derive_seed(master_seed, idx as u64),
                        fill_character: 'a',
                    };
                    let tampered = tamper_replace(text, *original_len, &spec);
                    if scheme.reveal(&tampered).ok().as_deref() == Some(message) {
                        successes += 1;
                    }
                }
                let rate = if embedded == 0 {
                    0.0
                } else {
                    successes as f64 / embedded as f64
                };
                rows.push(ReportRow {
                    algorithm: scheme.name().to_string(),
                    message_class: class.label().to_string(),
                    metric: "tamper_success_rate".to_string(),
                    fraction: Some(fraction),
                    value: rate,
                });
            }
        }
    }
    BenchmarkReport {
        metadata: metadata(corpus, master_seed, skipped),
        rows,
    }
}

/// Mean similarity and size-delta metrics per (scheme, class), each over the
/// documents the scheme could embed into.
pub fn imperceptibility_rows(
    corpus: &Corpus,
    schemes: &[Box<dyn HidingScheme>],
    short_message: &[u8],
    long_message: &[u8],
    skipped: &mut BTreeMap<String, usize>,
) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for scheme in schemes {
        for (class, message) in [
            (MessageClass::Short, short_message),
            (MessageClass::Long, long_message),
        ] {
            let mut char_deltas = Vec::new();
            let mut size_deltas = Vec::new();
            let mut similarities = Vec::new();
            for doc in &corpus.docs {
                let Ok(text) = scheme.hide(doc, message) else {
                    continue;
                };
                char_deltas.push(char_count_delta(doc, &text) as f64);
                size_deltas.push(utf8_size_delta(doc, &text) as f64);
                similarities.push(jaro_winkler(doc, &text));
            }
            skipped
                .entry(format!("{}/{}", scheme.name(), class.label()))
                .or_insert(corpus.len() - char_deltas.len());
            for (metric, values) in [
                ("char_count_delta_mean", &char_deltas),
                ("utf8_size_delta_mean", &size_deltas),
                ("jaro_winkler_mean", &similarities),
            ] {
                rows.push(ReportRow {
                    algorithm: scheme.name().to_string(),
                    message_class: class.label().to_string(),
                    metric: metric.to_string(),
                    fraction: None,
                    value: mean(values),
                });
            }
        }
    }
    rows
}

/// Capacity rows: the substitution scheme's measured bits per character, and
/// the conventional 1.0 for the unbounded insertion baselines.
pub fn capacity_rows(corpus: &Corpus, alphabet: &WhitespaceAlphabet) -> Vec<ReportRow> {
    let mut rows = vec![ReportRow {
        algorithm: "innamark-robust".to_string(),
        message_class: "max".to_string(),
        metric: "capacity_bits_per_char".to_string(),
        fraction: None,
        value: capacity_ratio(&corpus.docs, &Default::default(), alphabet),
    }];
    for baseline in ["zero-width", "trailing"] {
        rows.push(ReportRow {
            algorithm: baseline.to_string(),
            message_class: "max".to_string(),
            metric: "capacity_bits_per_char".to_string(),
            fraction: None,
            value: 1.0,
        });
    }
    rows
}

/// The full benchmark: capacity, imperceptibility, and the tamper sweep in
/// one report.
pub fn run_full_benchmark(corpus: &Corpus, master_seed: u64) -> BenchmarkReport {
    let schemes = default_schemes();
    let (short, long) = default_messages();
    let mut report = robustness_sweep(corpus, &schemes, &short, &long, master_seed);
    let mut rows = capacity_rows(corpus, &WhitespaceAlphabet::default());
    rows.extend(imperceptibility_rows(
        corpus,
        &schemes,
        &short,
        &long,
        &mut report.metadata.skipped,
    ));
    rows.append(&mut report.rows);
    report.rows = rows;
    report
}

fn metadata(corpus: &Corpus, master_seed: u64, skipped: BTreeMap<String, usize>) -> ReportMetadata {
    ReportMetadata {
        document_count: corpus.len(),
        mean_document_chars: corpus.mean_chars(),
        master_seed,
        alphabet: WhitespaceAlphabet::default().code_point_labels(),
        strategies: TransformSuite::default().strategy_labels(),
        skipped,
    }
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_deterministic() {
        let corpus = Corpus::synthetic(12, 3);
        let (short, long) = default_messages();
        let a = robustness_sweep(&corpus, &default_schemes(), &short, &long, 77);
        let b = robustness_sweep(&corpus, &default_schemes(), &short, &long, 77);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn sweep_has_nine_cells_per_pair() {
        let corpus = Corpus::synthetic(6, 3);
        let (short, long) = default_messages();
        let report = robustness_sweep(&corpus, &default_schemes(), &short, &long, 1);
        // 4 schemes x 2 classes x 9 fractions.
        assert_eq!(report.rows.len(), 4 * 2 * 9);
        assert!(report
            .rows
            .iter()
            .all(|r| (0.0..=1.0).contains(&r.value)));
    }

    #[test]
    fn csv_emission_has_one_line_per_row_plus_header() {
        let corpus = Corpus::synthetic(4, 3);
        let report = run_full_benchmark(&corpus, 5);
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), report.rows.len() + 1);
        assert!(text.starts_with("algorithm,message_class,metric,fraction,value"));
    }
}
