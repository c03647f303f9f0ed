//! Pluggable payload transforms: compression, encryption, hashing, CRC-32.
//!
//! The tag layer only depends on the strategy traits here; the concrete
//! primitives (zlib, ChaCha20-Poly1305 with a PBKDF2-derived key, SHA-256)
//! are the defaults and are named in benchmark report metadata.

use chacha20poly1305::aead::{Aead, KeyInit};
use chacha20poly1305::{ChaCha20Poly1305, Key, Nonce};
use flate2::read::ZlibDecoder;
use flate2::write::ZlibEncoder;
use flate2::Compression;
use sha2::{Digest, Sha256};
use std::io::{Read, Write};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("decompression failed: {0}")]
    DecompressFailure(String),
    #[error("decryption failed: wrong passphrase or tampered ciphertext")]
    DecryptFailure,
    #[error("empty passphrase")]
    EmptyPassphrase,
    #[error("ciphertext too short to carry salt and nonce")]
    TruncatedCiphertext,
}

/// CRC-32/ISO-HDLC: reflected polynomial 0xEDB88320, init and xorout
/// 0xFFFFFFFF. Check value: crc32(b"123456789") = 0xCBF43926.
pub fn crc32(bytes: &[u8]) -> u32 {
    let mut crc: u32 = 0xFFFF_FFFF;
    for &byte in bytes {
        crc ^= byte as u32;
        for _ in 0..8 {
            let mask = (crc & 1).wrapping_neg();
            crc = (crc >> 1) ^ (0xEDB8_8320 & mask);
        }
    }
    !crc
}

pub trait Compressor: Send + Sync {
    fn name(&self) -> &'static str;
    fn compress(&self, bytes: &[u8]) -> Vec<u8>;
    fn decompress(&self, bytes: &[u8]) -> Result<Vec<u8>, TransformError>;
}

pub trait Cipher: Send + Sync {
    fn name(&self) -> &'static str;
    fn encrypt(&self, bytes: &[u8], passphrase: &str) -> Result<Vec<u8>, TransformError>;
    fn decrypt(&self, bytes: &[u8], passphrase: &str) -> Result<Vec<u8>, TransformError>;
}

pub trait Hasher: Send + Sync {
    fn name(&self) -> &'static str;
    /// 8-byte digest used as the integrity prefix.
    fn digest8(&self, bytes: &[u8]) -> [u8; 8];
}

/// zlib (DEFLATE plus adler32 trailer, so corrupt streams are detected).
pub struct ZlibCompressor;

impl Compressor for ZlibCompressor {
    fn name(&self) -> &'static str {
        "zlib"
    }

    fn compress(&self, bytes: &[u8]) -> Vec<u8> {
        let mut encoder = ZlibEncoder::new(Vec::new(), Compression::default());
        encoder.write_all(bytes).expect("in-memory write");
        encoder.finish().expect("in-memory finish")
    }

    fn decompress(&self, bytes: &[u8]) -> Result<Vec<u8>, TransformError> {
        let mut out = Vec::new();
        ZlibDecoder::new(bytes)
            .read_to_end(&mut out)
            .map_err(|e| TransformError::DecompressFailure(e.to_string()))?;
        Ok(out)
    }
}

const SALT_LEN: usize = 16;
const NONCE_LEN: usize = 12;
const PBKDF2_ROUNDS: u32 = 10_000;

/// ChaCha20-Poly1305 with a PBKDF2-HMAC-SHA256 passphrase-derived key.
///
/// Salt and nonce are derived deterministically from the passphrase and the
/// plaintext (SIV style), so the same inputs always produce the same
/// ciphertext. Embedding outputs stay byte-reproducible at the cost of
/// revealing when two documents carry an identical payload under the same
/// passphrase.
pub struct ChaChaCipher;

impl ChaChaCipher {
    fn derive_key(passphrase: &str, salt: &[u8]) -> [u8; 32] {
        let mut key = [0u8; 32];
        pbkdf2::pbkdf2_hmac::<Sha256>(passphrase.as_bytes(), salt, PBKDF2_ROUNDS, &mut key);
        key
    }
}

impl Cipher for ChaChaCipher {
    fn name(&self) -> &'static str {
        "chacha20poly1305-pbkdf2"
    }

    fn encrypt(&self, bytes: &[u8], passphrase: &str) -> Result<Vec<u8>, TransformError> {
        if passphrase.is_empty() {
            return Err(TransformError::EmptyPassphrase);
        }
        let salt: [u8; SALT_LEN] = Sha256::digest(
            [b"innamark.salt.v1".as_slice(), passphrase.as_bytes()].concat(),
        )[..SALT_LEN]
            .try_into()
            .unwrap();
        let key = Self::derive_key(passphrase, &salt);
        let nonce_full = Sha256::digest([b"innamark.nonce.v1".as_slice(), &key, bytes].concat());
        let nonce = Nonce::from_slice(&nonce_full[..NONCE_LEN]);
        let cipher = ChaCha20Poly1305::new(Key::from_slice(&key));
        let ciphertext = cipher
            .encrypt(nonce, bytes)
            .map_err(|_| TransformError::DecryptFailure)?;
        let mut out = Vec::with_capacity(SALT_LEN + NONCE_LEN + ciphertext.len());
        out.extend_from_slice(&salt);
        out.extend_from_slice(&nonce_full[..NONCE_LEN]);
        out.extend_from_slice(&ciphertext);
        Ok(out)
    }

    fn decrypt(&self, bytes: &[u8], passphrase: &str) -> Result<Vec<u8>, TransformError> {
        if passphrase.is_empty() {
            return Err(TransformError::EmptyPassphrase);
        }
        if bytes.len() < SALT_LEN + NONCE_LEN {
            return Err(TransformError::TruncatedCiphertext);
        }
        let (salt, rest) = bytes.split_at(SALT_LEN);
        let (nonce, ciphertext) = rest.split_at(NONCE_LEN);
        let key = Self::derive_key(passphrase, salt);
        let cipher = ChaCha20Poly1305::new(Key::from_slice(&key));
        cipher
            .decrypt(Nonce::from_slice(nonce), ciphertext)
            .map_err(|_| TransformError::DecryptFailure)
    }
}

/// First 8 bytes of SHA-256.
pub struct Sha256Hasher;

impl Hasher for Sha256Hasher {
    fn name(&self) -> &'static str {
        "sha256-8"
    }

    fn digest8(&self, bytes: &[u8]) -> [u8; 8] {
        Sha256::digest(bytes)[..8].try_into().unwrap()
    }
}

/// The transform strategies the tag layer operates with.
pub struct TransformSuite {
    pub compressor: Box<dyn Compressor>,
    pub cipher: Box<dyn Cipher>,
    pub hasher: Box<dyn Hasher>,
}

impl TransformSuite {
    /// Strategy names for report metadata, e.g. `zlib`, `chacha20poly1305-pbkdf2`.
    pub fn strategy_labels(&self) -> Vec<String> {
        vec![
            format!("compressor={}", self.compressor.name()),
            format!("cipher={}", self.cipher.name()),
            format!("hasher={}", self.hasher.name()),
            "crc=crc32-iso-hdlc".to_string(),
        ]
    }
}

impl Default for TransformSuite {
    fn default() -> Self {
        Self {
            compressor: Box::new(ZlibCompressor),
            cipher: Box::new(ChaChaCipher),
            hasher: Box::new(Sha256Hasher),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Reference oracle: CRC-32 computed bit by bit over a message-and-zeros
    /// register, reflected in and out. Independent of the table-free
    /// implementation above.
    fn crc32_bitwise_oracle(bytes: &[u8]) -> u32 {
        const POLY: u32 = 0x04C1_1DB7; // unreflected polynomial

        fn reflect_u8(b: u8) -> u8 {
            b.reverse_bits()
        }
        fn reflect_u32(v: u32) -> u32 {
            v.reverse_bits()
        }

        let mut reg: u32 = 0xFFFF_FFFF;
        for &byte in bytes {
            reg ^= (reflect_u8(byte) as u32) << 24;
            for _ in 0..8 {
                if reg & 0x8000_0000 != 0 {
                    reg = (reg << 1) ^ POLY;
                } else {
                    reg <<= 1;
                }
            }
        }
        reflect_u32(reg) ^ 0xFFFF_FFFF
    }

    #[test]
    fn crc32_known_values() {
        assert_eq!(crc32(&[]), 0x0000_0000);
        assert_eq!(crc32(b"123456789"), 0xCBF4_3926);
        assert_eq!(crc32(&[0x00]), 0xD202_EF8D);
        // Oracle agrees on all three.
        assert_eq!(crc32_bitwise_oracle(&[]), 0x0000_0000);
        assert_eq!(crc32_bitwise_oracle(b"123456789"), 0xCBF4_3926);
        assert_eq!(crc32_bitwise_oracle(&[0x00]), 0xD202_EF8D);
    }

    #[test]
    fn crc32_matches_oracle_on_random_inputs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let len = rng.gen_range(0..64);
            let data: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            assert_eq!(crc32(&data), crc32_bitwise_oracle(&data), "{data:02X?}");
        }
    }

    #[test]
    fn compression_round_trips() {
        let c = ZlibCompressor;
        assert_eq!(c.decompress(&c.compress(&[])).unwrap(), Vec::<u8>::new());

        let repetitive = vec![0x41u8; 1000];
        let compressed = c.compress(&repetitive);
        assert!(compressed.len() < repetitive.len());
        assert_eq!(c.decompress(&compressed).unwrap(), repetitive);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let random: Vec<u8> = (0..256).map(|_| rng.gen()).collect();
        assert_eq!(c.decompress(&c.compress(&random)).unwrap(), random);
    }

    #[test]
    fn decompress_rejects_corrupt_streams() {
        let c = ZlibCompressor;
        let mut compressed = c.compress(b"hello hello hello");
        let last = compressed.len() - 1;
        compressed[last] ^= 0xFF;
        assert!(c.decompress(&compressed).is_err());
        assert!(c.decompress(&[0xDE, 0xAD, 0xBE, 0xEF]).is_err());
    }

    #[test]
    fn encryption_round_trips_and_authenticates() {
        let cipher = ChaChaCipher;
        let msg = b"attack at dawn";
        let ct = cipher.encrypt(msg, "pw").unwrap();
        assert_eq!(cipher.decrypt(&ct, "pw").unwrap(), msg);
        assert_eq!(
            cipher.decrypt(&ct, "pw2").unwrap_err(),
            TransformError::DecryptFailure
        );

        let mut tampered = ct.clone();
        let mid = tampered.len() / 2;
        tampered[mid] ^= 0x01;
        assert_eq!(
            cipher.decrypt(&tampered, "pw").unwrap_err(),
            TransformError::DecryptFailure
        );
    }

    #[test]
    fn encryption_is_deterministic() {
        let cipher = ChaChaCipher;
        assert_eq!(
            cipher.encrypt(b"same", "pw").unwrap(),
            cipher.encrypt(b"same", "pw").unwrap()
        );
    }

    #[test]
    fn encryption_rejects_empty_passphrase() {
        let cipher = ChaChaCipher;
        assert_eq!(
            cipher.encrypt(b"m", "").unwrap_err(),
            TransformError::EmptyPassphrase
        );
    }

    #[test]
    fn digest_is_deterministic_and_eight_bytes() {
        let h = Sha256Hasher;
        assert_eq!(h.digest8(b"abc"), h.digest8(b"abc"));
        assert_eq!(h.digest8(&[]).len(), 8);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let len = rng.gen_range(1..64);
            let mut data: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            let before = h.digest8(&data);
            let bit = rng.gen_range(0..len * 8);
            data[bit / 8] ^= 1 << (bit % 8);
            assert_ne!(before, h.digest8(&data));
        }
    }
}
