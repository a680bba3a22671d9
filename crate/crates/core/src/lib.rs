//! # scytale
//!
//! A block cryptosystem built on a reversible cellular automaton: plaintext
//! bytes become 2D bit lattices that are evolved under the Critters rule in
//! a Margolus neighborhood, with the iteration count acting as the private
//! key. Because every evolution step is a permutation of lattice states, the
//! holder of the key can run the automaton backwards and recover the
//! plaintext exactly.
//!
//! **This is a research cipher.** It comes with no security proof, no
//! authentication, and no key-management story. Do not use it to protect
//! real data.
//!
//! ## Pipeline
//!
//! 1. [`codec`] pads the plaintext and splits it into chunks of `B` bytes.
//! 2. [`lattice`] turns each chunk into a toroidal `B x 8` bit grid, one row
//!    per byte, most significant bit first.
//! 3. [`critters`] evolves each grid for `K` steps, alternating the 2x2
//!    block partition between even and odd anchors.
//! 4. [`cipher`] reads the evolved rows back as bytes and packs them into a
//!    ciphertext container. Decryption runs the same steps in reverse.
//!
//! [`image_io`] renders ciphertext chunks as grayscale squares, [`analysis`]
//! measures confusion/diffusion, and [`bench`] times encrypt-decrypt cycles.
//!
//! ## Example
//!
//! ```
//! use scytale::{encrypt, decrypt, CipherParams};
//!
//! let params = CipherParams::new(8, 12).unwrap();
//! let ciphertext = encrypt(b"attack at dawn", &params);
//! assert_eq!(decrypt(&ciphertext, &params).unwrap(), b"attack at dawn");
//! ```

pub mod analysis;
pub mod bench;
pub mod cipher;
pub mod codec;
pub mod critters;
pub mod image_io;
pub mod lattice;

mod wire;

pub use cipher::{decrypt, encrypt, Ciphertext, ChunkMode};
pub use codec::CipherParams;
pub use image_io::PixelSquare;
pub use lattice::{BitLattice, BlockCoord, BlockState, Offset};

/// Error type shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A chunk handed to the lattice layer had an odd or zero length.
    #[error("invalid chunk length {len}: chunks must hold a nonzero even number of bytes")]
    InvalidChunkLength { len: usize },

    /// A block size outside the supported range (even, 2..=255).
    #[error("invalid block size {size}: block sizes must be even and in [2, 255]")]
    InvalidBlockSize { size: u8 },

    /// A block coordinate outside the lattice's partition.
    #[error("block ({block_row}, {block_col}) is out of range for a {rows}x8 lattice")]
    BlockOutOfRange {
        block_row: usize,
        block_col: usize,
        rows: usize,
    },

    /// A ciphertext chunk whose length disagrees with the block size.
    #[error("malformed ciphertext: chunk {index} has {len} bytes, expected {expected}")]
    RaggedChunk {
        index: usize,
        len: usize,
        expected: usize,
    },

    /// Decryption parameters disagree with the ciphertext's block size.
    #[error("block size mismatch: parameters say {params}, ciphertext says {ciphertext}")]
    BlockSizeMismatch { params: u8, ciphertext: u8 },

    /// A container did not start with the expected magic bytes.
    #[error("bad container magic {found:?}, expected {expected:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },

    /// A container with a version this build does not understand.
    #[error("unsupported container version {found}")]
    UnsupportedVersion { found: u8 },

    /// A container ended before all declared bytes were read.
    #[error("container truncated while reading {context}")]
    Truncated { context: &'static str },

    /// A pixel square whose rows are not all identical.
    #[error("corrupt image: row {row} differs from row 0")]
    CorruptImage { row: usize },

    /// A pixel square whose side disagrees with the container block size.
    #[error("pixel square side {found} does not match block size {expected}")]
    SideMismatch { expected: u8, found: u8 },

    /// A raster buffer whose length is not side*side.
    #[error("raster of {len} bytes cannot form a {side}x{side} square")]
    BadRaster { side: u8, len: usize },

    /// Ciphertexts whose shapes prevent a positionwise comparison.
    #[error("ciphertexts are not comparable: {reason}")]
    IncompatibleCiphertexts { reason: String },

    /// A caller-supplied argument outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A benchmark measured a cycle that failed to round-trip.
    #[error("round trip failed during benchmark (length {length}, key {key})")]
    BenchIntegrity { length: usize, key: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
