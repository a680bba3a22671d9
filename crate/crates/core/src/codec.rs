//! Cipher parameters and the byte-stream <-> chunk codec.
//!
//! A plaintext is padded up to a multiple of the block size `B` and split
//! into `B`-byte chunks; each chunk becomes one `B`x8 lattice. Padding uses
//! a fixed fill byte (0x00 unless overridden), so decryption can only strip
//! trailing fill bytes from the final chunk — a plaintext that itself ends
//! in the fill byte will come back shortened. Callers who need to round-trip
//! such data must pick a fill byte that cannot terminate it.

use crate::lattice::BitLattice;
use crate::{Error, Result};

/// Default padding fill byte.
pub const DEFAULT_PAD_BYTE: u8 = 0x00;

/// Validated encryption parameters: chunk size, iteration key and pad byte.
///
/// The key is the secret. The block size shapes the lattice (`B` rows of 8
/// columns) and must be even so the alternating 2x2 partitions tile it; it
/// is carried in containers in the clear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CipherParams {
    block_size: u8,
    key: u64,
    pad_byte: u8,
}

impl CipherParams {
    /// Creates parameters with the default pad byte. Fails unless
    /// `2 <= block_size` and `block_size` is even.
    pub fn new(block_size: u8, key: u64) -> Result<Self> {
        if block_size < 2 || block_size % 2 != 0 {
            return Err(Error::InvalidBlockSize { size: block_size });
        }
        Ok(Self {
            block_size,
            key,
            pad_byte: DEFAULT_PAD_BYTE,
        })
    }

    /// Same parameters with a different padding fill byte.
    pub fn with_pad_byte(self, pad_byte: u8) -> Self {
        Self { pad_byte, ..self }
    }

    pub fn block_size(&self) -> u8 {
        self.block_size
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn pad_byte(&self) -> u8 {
        self.pad_byte
    }
}

/// Pads `plaintext` with the fill byte to a multiple of the block size and
/// splits it into block-size chunks. Empty input yields no chunks.
pub fn pad_and_chunk(plaintext: &[u8], params: &CipherParams) -> Vec<Vec<u8>> {
    let b = params.block_size as usize;
    let mut chunks: Vec<Vec<u8>> = plaintext.chunks(b).map(<[u8]>::to_vec).collect();
    if let Some(last) = chunks.last_mut() {
        last.resize(b, params.pad_byte);
    }
    chunks
}

/// Joins chunks back into a byte stream, stripping trailing fill bytes from
/// the final chunk only. Every chunk must be exactly the block size.
pub fn unchunk_and_strip(chunks: &[Vec<u8>], params: &CipherParams) -> Result<Vec<u8>> {
    let b = params.block_size as usize;
    for (index, chunk) in chunks.iter().enumerate() {
        if chunk.len() != b {
            return Err(Error::RaggedChunk {
                index,
                len: chunk.len(),
                expected: b,
            });
        }
    }
    let mut bytes: Vec<u8> = chunks.concat();
    if !chunks.is_empty() {
        let keep = bytes.len() - b;
        let tail_len = bytes[keep..]
            .iter()
            .rev()
            .take_while(|&&byte| byte == params.pad_byte)
            .count();
        bytes.truncate(bytes.len() - tail_len);
    }
    Ok(bytes)
}

/// Interprets one chunk as a bit lattice (row r = byte r, MSB first).
pub fn chunk_to_lattice(chunk: &[u8]) -> Result<BitLattice> {
    BitLattice::from_bytes(chunk)
}

/// Serializes a lattice back to its chunk bytes.
pub fn lattice_to_chunk(lattice: &BitLattice) -> Vec<u8> {
    lattice.to_bytes()
}
