//! Grayscale rendering of ciphertext chunks and the multi-image container.
//!
//! Each chunk's bytes are read as pixel values (0 black, 255 white),
//! giving a 1xB row image that is replicated vertically into a BxB square
//! — replication rather than interpolation, so the chunk can be recovered
//! exactly. Squares are archived together in the `SCYI` container and can
//! be exported individually as binary PGM for ordinary image viewers.

use std::io::{Read, Write};

use crate::wire;
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"SCYI";

/// A BxB grayscale image, row-major. A square produced from a chunk has
/// all rows identical; [`square_to_chunk`] verifies that before trusting
/// the data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelSquare {
    side: u8,
    pixels: Vec<u8>,
}

impl PixelSquare {
    /// Wraps raw row-major raster bytes. The side must be a legal block
    /// size and the raster exactly side*side bytes. Row consistency is not
    /// checked here — see [`square_to_chunk`].
    pub fn from_raster(side: u8, pixels: Vec<u8>) -> Result<Self> {
        if side < 2 || side % 2 != 0 {
            return Err(Error::InvalidBlockSize { size: side });
        }
        if pixels.len() != side as usize * side as usize {
            return Err(Error::BadRaster {
                side,
                len: pixels.len(),
            });
        }
        Ok(Self { side, pixels })
    }

    pub fn side(&self) -> u8 {
        self.side
    }

    /// Row-major raster bytes, side*side of them.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn row(&self, r: usize) -> &[u8] {
        let side = self.side as usize;
        &self.pixels[r * side..(r + 1) * side]
    }
}

/// Renders a chunk as its replicated-row grayscale square:
/// `pixel(r, c) = chunk[c]` for every row `r`.
pub fn chunk_to_square(chunk: &[u8]) -> Result<PixelSquare> {
    let side: u8 = chunk
        .len()
        .try_into()
        .map_err(|_| Error::InvalidChunkLength { len: chunk.len() })?;
    if side < 2 || side % 2 != 0 {
        return Err(Error::InvalidChunkLength { len: chunk.len() });
    }
    let mut pixels = Vec::with_capacity(chunk.len() * chunk.len());
    for _ in 0..side {
        pixels.extend_from_slice(chunk);
    }
    Ok(PixelSquare { side, pixels })
}

/// Recovers the chunk from a replicated square. Every row must equal row
/// 0; the first deviating row is reported as corruption.
pub fn square_to_chunk(square: &PixelSquare) -> Result<Vec<u8>> {
    let first = square.row(0);
    for r in 1..square.side as usize {
        if square.row(r) != first {
            return Err(Error::CorruptImage { row: r });
        }
    }
    Ok(first.to_vec())
}

/// Writes squares to the `SCYI` container. The block size is explicit so
/// an empty archive still records it; every square's side must match.
pub fn write_image_container(
    sink: &mut dyn Write,
    block_size: u8,
    squares: &[PixelSquare],
) -> Result<()> {
    if block_size < 2 || block_size % 2 != 0 {
        return Err(Error::InvalidBlockSize { size: block_size });
    }
    for square in squares {
        if square.side != block_size {
            return Err(Error::SideMismatch {
                expected: block_size,
                found: square.side,
            });
        }
    }
    let count = u32::try_from(squares.len())
        .map_err(|_| Error::InvalidArgument("too many squares for container".into()))?;
    wire::write_header(sink, MAGIC, block_size, count)?;
    for square in squares {
        sink.write_all(&square.pixels)?;
    }
    Ok(())
}

/// Reads an `SCYI` container back as its block size and squares.
pub fn read_image_container(source: &mut dyn Read) -> Result<(u8, Vec<PixelSquare>)> {
    let header = wire::read_header(source, MAGIC)?;
    let side = header.block_size as usize;
    let mut squares = Vec::with_capacity(header.count as usize);
    for _ in 0..header.count {
        let mut pixels = vec![0u8; side * side];
        wire::read_exact(source, &mut pixels, "image raster")?;
        squares.push(PixelSquare {
            side: header.block_size,
            pixels,
        });
    }
    Ok((header.block_size, squares))
}

/// Writes one square as a binary PGM (P5, maxval 255) image.
pub fn export_pgm(square: &PixelSquare, sink: &mut dyn Write) -> Result<()> {
    write!(sink, "P5\n{} {}\n255\n", square.side, square.side)?;
    sink.write_all(&square.pixels)?;
    Ok(())
}
