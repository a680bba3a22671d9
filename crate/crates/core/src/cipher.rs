//! Encryption, decryption and the ciphertext container format.
//!
//! Encryption pads the plaintext, splits it into block-size chunks, and
//! evolves each chunk's lattice for `key` steps; decryption devolves and
//! strips the padding. Chunks never interact, so they can be processed in
//! parallel with bit-identical results ([`ChunkMode::Parallel`]).
//!
//! The serialized form (`SCYT`) stores the block size and the chunk
//! payloads, never the key.

use std::io::{Read, Write};

use rayon::prelude::*;

use crate::codec::{self, CipherParams};
use crate::critters;
use crate::lattice::BitLattice;
use crate::wire;
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"SCYT";

/// Whether chunks are transformed one after another or across threads.
/// Either way the output is identical; only wall-clock time differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChunkMode {
    #[default]
    Sequential,
    Parallel,
}

/// An encrypted byte stream: the block size it was chunked with and the
/// evolved chunk payloads, in order. The iteration key is not recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    block_size: u8,
    chunks: Vec<Vec<u8>>,
}

impl Ciphertext {
    /// Builds a ciphertext from raw parts, validating that the block size
    /// is legal and every chunk is exactly that long.
    pub fn new(block_size: u8, chunks: Vec<Vec<u8>>) -> Result<Self> {
        if block_size < 2 || block_size % 2 != 0 {
            return Err(Error::InvalidBlockSize { size: block_size });
        }
        for (index, chunk) in chunks.iter().enumerate() {
            if chunk.len() != block_size as usize {
                return Err(Error::RaggedChunk {
                    index,
                    len: chunk.len(),
                    expected: block_size as usize,
                });
            }
        }
        Ok(Self { block_size, chunks })
    }

    pub fn block_size(&self) -> u8 {
        self.block_size
    }

    pub fn chunks(&self) -> &[Vec<u8>] {
        &self.chunks
    }

    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }
}

/// Encrypts `plaintext` under `params`, chunk by chunk.
pub fn encrypt(plaintext: &[u8], params: &CipherParams) -> Ciphertext {
    encrypt_with_mode(plaintext, params, ChunkMode::Sequential)
}

/// [`encrypt`] with an explicit chunk scheduling mode.
pub fn encrypt_with_mode(plaintext: &[u8], params: &CipherParams, mode: ChunkMode) -> Ciphertext {
    let chunks = codec::pad_and_chunk(plaintext, params);
    let key = params.key();
    let transform = |chunk: &Vec<u8>| {
        let lattice = codec::chunk_to_lattice(chunk).expect("padded chunk is a valid lattice");
        codec::lattice_to_chunk(&critters::evolve(&lattice, key))
    };
    let chunks = match mode {
        ChunkMode::Sequential => chunks.iter().map(transform).collect(),
        ChunkMode::Parallel => chunks.par_iter().map(transform).collect(),
    };
    Ciphertext {
        block_size: params.block_size(),
        chunks,
    }
}

/// Decrypts `ciphertext` under `params`. The block sizes must agree; a
/// wrong key is *not* detected — it simply yields wrong bytes.
pub fn decrypt(ciphertext: &Ciphertext, params: &CipherParams) -> Result<Vec<u8>> {
    decrypt_with_mode(ciphertext, params, ChunkMode::Sequential)
}

/// [`decrypt`] with an explicit chunk scheduling mode.
pub fn decrypt_with_mode(
    ciphertext: &Ciphertext,
    params: &CipherParams,
    mode: ChunkMode,
) -> Result<Vec<u8>> {
    if ciphertext.block_size != params.block_size() {
        return Err(Error::BlockSizeMismatch {
            params: params.block_size(),
            ciphertext: ciphertext.block_size,
        });
    }
    let key = params.key();
    let transform = |chunk: &Vec<u8>| {
        let lattice = codec::chunk_to_lattice(chunk).expect("ciphertext chunk is a valid lattice");
        codec::lattice_to_chunk(&critters::devolve(&lattice, key))
    };
    let chunks: Vec<Vec<u8>> = match mode {
        ChunkMode::Sequential => ciphertext.chunks.iter().map(transform).collect(),
        ChunkMode::Parallel => ciphertext.chunks.par_iter().map(transform).collect(),
    };
    codec::unchunk_and_strip(&chunks, params)
}

/// Testing hook: sequential [`encrypt`] that reports each chunk's lattice
/// after every evolution step. Not part of the stable interface.
#[doc(hidden)]
pub fn encrypt_traced(
    plaintext: &[u8],
    params: &CipherParams,
    observe: &mut dyn FnMut(usize, u64, &BitLattice),
) -> Ciphertext {
    let chunks = codec::pad_and_chunk(plaintext, params);
    let key = params.key();
    let chunks = chunks
        .iter()
        .enumerate()
        .map(|(index, chunk)| {
            let lattice = codec::chunk_to_lattice(chunk).expect("padded chunk is a valid lattice");
            let evolved =
                critters::evolve_traced(&lattice, key, &mut |step, state| observe(index, step, state));
            codec::lattice_to_chunk(&evolved)
        })
        .collect();
    Ciphertext {
        block_size: params.block_size(),
        chunks,
    }
}

/// Serializes a ciphertext to the `SCYT` wire format.
pub fn write_ciphertext(sink: &mut dyn Write, ciphertext: &Ciphertext) -> Result<()> {
    let count = u32::try_from(ciphertext.chunks.len())
        .map_err(|_| Error::InvalidArgument("too many chunks for container".into()))?;
    wire::write_header(sink, MAGIC, ciphertext.block_size, count)?;
    for chunk in &ciphertext.chunks {
        sink.write_all(chunk)?;
    }
    Ok(())
}

/// Reads a ciphertext back from the `SCYT` wire format.
pub fn read_ciphertext(source: &mut dyn Read) -> Result<Ciphertext> {
    let header = wire::read_header(source, MAGIC)?;
    let mut chunks = Vec::with_capacity(header.count as usize);
    for _ in 0..header.count {
        let mut chunk = vec![0u8; header.block_size as usize];
        wire::read_exact(source, &mut chunk, "ciphertext chunk")?;
        chunks.push(chunk);
    }
    Ok(Ciphertext {
        block_size: header.block_size,
        chunks,
    })
}
