//! Whitespace-homoglyph information hiding.
//!
//! Embeds arbitrary byte payloads into cover text by substituting every
//! standard space with visually similar Unicode whitespace characters, and
//! extracts them back out, with optional compression, encryption, hashing,
//! and CRC-32 integrity framing. The `bench` module provides the evaluation
//! harness (similarity metrics, capacity ratios, seeded tamper sweeps).

pub mod alphabet;
pub mod bench;
pub mod codec;
pub mod embedder;
pub mod extractor;
pub mod tag;
pub mod transforms;

pub use alphabet::WhitespaceAlphabet;
pub use embedder::{capacity_bytes, count_spaces, embed, EmbedError, WatermarkResult};
pub use extractor::{extract_literal, extract_robust, ExtractError, ExtractMode, ExtractResult};
pub use tag::{EmbedOptions, TagFlags};
pub use transforms::TransformSuite;
