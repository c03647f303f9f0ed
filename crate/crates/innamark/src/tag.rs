//! The one-byte tag framing the embedded payload.
//!
//! Wire format, bit-exact across implementations:
//!
//! ```text
//! tag(1) || [size(4, BE)] || [hash digest(8)] || [crc32(4, BE)] || body
//! ```
//!
//! Tag bits, most significant first: encryption, compression, hashing,
//! crc32, size prefix; the low three bits are reserved and must be zero.
//! The body is the secret message after compression then encryption, each
//! applied only when its flag is set.

use crate::transforms::{crc32, TransformError, TransformSuite};
use thiserror::Error;

const ENCRYPTION_BIT: u8 = 0b1000_0000;
const COMPRESSION_BIT: u8 = 0b0100_0000;
const HASHING_BIT: u8 = 0b0010_0000;
const CRC32_BIT: u8 = 0b0001_0000;
const SIZE_PREFIX_BIT: u8 = 0b0000_1000;
const RESERVED_MASK: u8 = 0b0000_0111;

pub const SIZE_PREFIX_LEN: usize = 4;
pub const HASH_PREFIX_LEN: usize = 8;
pub const CRC_PREFIX_LEN: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TagError {
    #[error("unknown tag: reserved bits 0x{0:02X} set")]
    UnknownTag(u8),
    #[error("payload shorter than its declared prefixes")]
    TruncatedPrefix,
    #[error("crc mismatch: prefix 0x{expected:08X}, body 0x{actual:08X}")]
    CrcMismatch { expected: u32, actual: u32 },
    #[error("hash mismatch")]
    HashMismatch,
    #[error("size mismatch: prefix says {expected}, body has {actual} bytes")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("encryption requested without a passphrase")]
    MissingPassphrase,
    #[error("empty payload: no tag byte")]
    EmptyPayload,
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Option flags carried in the tag byte.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TagFlags {
    pub encryption: bool,
    pub compression: bool,
    pub hashing: bool,
    pub crc32: bool,
    pub size_prefix: bool,
}

impl TagFlags {
    pub fn encode(&self) -> u8 {
        let mut b = 0u8;
        if self.encryption {
            b |= ENCRYPTION_BIT;
        }
        if self.compression {
            b |= COMPRESSION_BIT;
        }
        if self.hashing {
            b |= HASHING_BIT;
        }
        if self.crc32 {
            b |= CRC32_BIT;
        }
        if self.size_prefix {
            b |= SIZE_PREFIX_BIT;
        }
        b
    }

    pub fn parse(byte: u8) -> Result<Self, TagError> {
        if byte & RESERVED_MASK != 0 {
            return Err(TagError::UnknownTag(byte & RESERVED_MASK));
        }
        Ok(Self {
            encryption: byte & ENCRYPTION_BIT != 0,
            compression: byte & COMPRESSION_BIT != 0,
            hashing: byte & HASHING_BIT != 0,
            crc32: byte & CRC32_BIT != 0,
            size_prefix: byte & SIZE_PREFIX_BIT != 0,
        })
    }

    /// Total length of the prefixes these flags imply.
    pub fn prefix_len(&self) -> usize {
        let mut len = 0;
        if self.size_prefix {
            len += SIZE_PREFIX_LEN;
        }
        if self.hashing {
            len += HASH_PREFIX_LEN;
        }
        if self.crc32 {
            len += CRC_PREFIX_LEN;
        }
        len
    }

    /// All 32 valid flag combinations.
    pub fn all_combinations() -> impl Iterator<Item = TagFlags> {
        (0u8..32).map(|i| TagFlags {
            encryption: i & 0b1_0000 != 0,
            compression: i & 0b0_1000 != 0,
            hashing: i & 0b0_0100 != 0,
            crc32: i & 0b0_0010 != 0,
            size_prefix: i & 0b0_0001 != 0,
        })
    }
}

/// The embedding configuration: which options are on, plus key material.
#[derive(Debug, Clone, Default)]
pub struct EmbedOptions {
    pub flags: TagFlags,
    pub passphrase: Option<String>,
}

/// A parsed tag-framed payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedPayload {
    pub flags: TagFlags,
    pub body: Vec<u8>,
}

impl TaggedPayload {
    pub fn serialized_len(&self) -> usize {
        1 + self.flags.prefix_len() + self.body.len()
    }
}

/// Frames `message`: applies the enabled transforms (compress, then encrypt),
/// computes the enabled prefixes over the final body, and serializes.
pub fn apply_tag(
    message: &[u8],
    options: &EmbedOptions,
    suite: &TransformSuite,
) -> Result<Vec<u8>, TagError> {
    let flags = options.flags;
    let mut body = message.to_vec();
    if flags.compression {
        body = suite.compressor.compress(&body);
    }
    if flags.encryption {
        let passphrase = options
            .passphrase
            .as_deref()
            .ok_or(TagError::MissingPassphrase)?;
        body = suite.cipher.encrypt(&body, passphrase)?;
    }

    let mut out = Vec::with_capacity(1 + flags.prefix_len() + body.len());
    out.push(flags.encode());
    if flags.size_prefix {
        out.extend_from_slice(&(body.len() as u32).to_be_bytes());
    }
    if flags.hashing {
        out.extend_from_slice(&suite.hasher.digest8(&body));
    }
    if flags.crc32 {
        out.extend_from_slice(&crc32(&body).to_be_bytes());
    }
    out.extend_from_slice(&body);
    Ok(out)
}

/// Parses a serialized payload, verifies every present prefix, reverses the
/// transforms, and returns the original message bytes.
pub fn analyze_tag(
    payload: &[u8],
    passphrase: Option<&str>,
    suite: &TransformSuite,
) -> Result<Vec<u8>, TagError> {
    let (&tag_byte, mut rest) = payload.split_first().ok_or(TagError::EmptyPayload)?;
    let flags = TagFlags::parse(tag_byte)?;
    if rest.len() < flags.prefix_len() {
        return Err(TagError::TruncatedPrefix);
    }

    let mut expected_size = None;
    if flags.size_prefix {
        let (prefix, tail) = rest.split_at(SIZE_PREFIX_LEN);
        expected_size = Some(u32::from_be_bytes(prefix.try_into().unwrap()) as usize);
        rest = tail;
    }
    let mut expected_digest = None;
    if flags.hashing {
        let (prefix, tail) = rest.split_at(HASH_PREFIX_LEN);
        expected_digest = Some(<[u8; 8]>::try_from(prefix).unwrap());
        rest = tail;
    }
    let mut expected_crc = None;
    if flags.crc32 {
        let (prefix, tail) = rest.split_at(CRC_PREFIX_LEN);
        expected_crc = Some(u32::from_be_bytes(prefix.try_into().unwrap()));
        rest = tail;
    }

    let body = rest;
    if let Some(expected) = expected_size {
        if body.len() != expected {
            return Err(TagError::SizeMismatch {
                expected,
                actual: body.len(),
            });
        }
    }
    if let Some(expected) = expected_digest {
        if suite.hasher.digest8(body) != expected {
            return Err(TagError::HashMismatch);
        }
    }
    if let Some(expected) = expected_crc {
        let actual = crc32(body);
        if actual != expected {
            return Err(TagError::CrcMismatch { expected, actual });
        }
    }

    let mut message = body.to_vec();
    if flags.encryption {
        let passphrase = passphrase.ok_or(TagError::MissingPassphrase)?;
        message = suite.cipher.decrypt(&message, passphrase)?;
    }
    if flags.compression {
        message = suite.compressor.decompress(&message)?;
    }
    Ok(message)
}
