//! Toroidal binary lattice with byte-row packing and 2x2 block addressing.
//!
//! A [`BitLattice`] is a `rows x 8` grid of bits that wraps around both
//! edges. Row `r` packs into one byte whose most significant bit is column
//! 0, so a lattice and a byte chunk are the same data seen two ways: row `r`
//! is the left-padded 8-bit binary expansion of byte `r`.
//!
//! The grid is carved into disjoint 2x2 blocks under one of two partition
//! anchors ([`Offset`]). Rows and columns are both even, so either partition
//! tiles the lattice exactly, the shifted one by wrapping around the edges.

use crate::{Error, Result};

/// Every lattice has exactly 8 columns: one bit per column, one byte per row.
pub const COLS: usize = 8;

/// Anchor of the 2x2 block partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Offset {
    /// Blocks anchored at even cell coordinates, offset (0,0).
    Even,
    /// Blocks shifted down and right by one cell, offset (1,1); blocks on
    /// the far edges wrap around toroidally.
    Odd,
}

/// Address of one 2x2 block under a partition offset.
///
/// `block_row` ranges over `0..rows/2` and `block_col` over `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockCoord {
    pub block_row: usize,
    pub block_col: usize,
    pub offset: Offset,
}

impl BlockCoord {
    pub fn new(block_row: usize, block_col: usize, offset: Offset) -> Self {
        Self {
            block_row,
            block_col,
            offset,
        }
    }

    /// Cell coordinates of this block in [TL, TR, BL, BR] order, wrapping
    /// modulo the lattice dimensions.
    pub fn cells(&self, rows: usize) -> [(usize, usize); 4] {
        let (r0, c0) = match self.offset {
            Offset::Even => (2 * self.block_row, 2 * self.block_col),
            Offset::Odd => (2 * self.block_row + 1, 2 * self.block_col + 1),
        };
        let r1 = (r0 + 1) % rows;
        let c1 = (c0 + 1) % COLS;
        [(r0, c0), (r0, c1), (r1, c0), (r1, c1)]
    }
}

/// The 4-bit state of one 2x2 block.
///
/// Layout is fixed: top-left is bit 3, top-right bit 2, bottom-left bit 1,
/// bottom-right bit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockState(u8);

impl BlockState {
    /// Number of distinct block states.
    pub const COUNT: usize = 16;

    pub fn new(bits: u8) -> Self {
        assert!(bits < 16, "block state {bits} out of range");
        Self(bits)
    }

    pub fn from_cells(tl: bool, tr: bool, bl: bool, br: bool) -> Self {
        Self((tl as u8) << 3 | (tr as u8) << 2 | (bl as u8) << 1 | br as u8)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Cell values in [TL, TR, BL, BR] order.
    pub fn cells(self) -> [bool; 4] {
        [
            self.0 & 0b1000 != 0,
            self.0 & 0b0100 != 0,
            self.0 & 0b0010 != 0,
            self.0 & 0b0001 != 0,
        ]
    }

    /// Number of live cells in the block.
    pub fn live_cells(self) -> u32 {
        self.0.count_ones()
    }

    /// Flip every cell.
    pub fn complement(self) -> Self {
        Self(self.0 ^ 0b1111)
    }

    /// Rotate the block 180 degrees: TL<->BR and TR<->BL, which is a 4-bit
    /// reversal.
    pub fn rotate_180(self) -> Self {
        let s = self.0;
        Self((s & 1) << 3 | (s & 2) << 1 | (s & 4) >> 1 | (s & 8) >> 3)
    }

    /// Rotate the block 90 degrees clockwise.
    pub fn rotate_90(self) -> Self {
        let [tl, tr, bl, br] = self.cells();
        Self::from_cells(bl, tl, br, tr)
    }

    /// All 16 states in ascending bit order.
    pub fn all() -> impl Iterator<Item = BlockState> {
        (0..16).map(BlockState)
    }
}

/// Toroidal 2D grid of bits, one row per plaintext byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitLattice {
    rows: Vec<u8>,
}

impl BitLattice {
    /// Builds a lattice from a chunk of bytes, one row per byte with the
    /// most significant bit in column 0.
    pub fn from_bytes(chunk: &[u8]) -> Result<Self> {
        if chunk.is_empty() || chunk.len() % 2 != 0 {
            return Err(Error::InvalidChunkLength { len: chunk.len() });
        }
        Ok(Self {
            rows: chunk.to_vec(),
        })
    }

    /// Reads each row back as a byte. Exact inverse of [`from_bytes`].
    ///
    /// [`from_bytes`]: BitLattice::from_bytes
    pub fn to_bytes(&self) -> Vec<u8> {
        self.rows.clone()
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        COLS
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows.len() && col < COLS, "cell out of range");
        self.rows[row] >> (COLS - 1 - col) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows.len() && col < COLS, "cell out of range");
        let mask = 1 << (COLS - 1 - col);
        if value {
            self.rows[row] |= mask;
        } else {
            self.rows[row] &= !mask;
        }
    }

    /// Number of live (1) cells.
    pub fn live_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Reads the 4-bit state of the block at `coord`.
    pub fn read_block(&self, coord: BlockCoord) -> Result<BlockState> {
        self.check_coord(coord)?;
        let [tl, tr, bl, br] = coord.cells(self.rows.len());
        Ok(BlockState::from_cells(
            self.get(tl.0, tl.1),
            self.get(tr.0, tr.1),
            self.get(bl.0, bl.1),
            self.get(br.0, br.1),
        ))
    }

    /// Writes a 4-bit block state at `coord`. Exact inverse of
    /// [`read_block`] at the same coordinate.
    ///
    /// [`read_block`]: BitLattice::read_block
    pub fn write_block(&mut self, coord: BlockCoord, state: BlockState) -> Result<()> {
        self.check_coord(coord)?;
        let cells = coord.cells(self.rows.len());
        let values = state.cells();
        for (&(r, c), &v) in cells.iter().zip(values.iter()) {
            self.set(r, c, v);
        }
        Ok(())
    }

    /// All block coordinates of the partition under `offset`.
    pub fn block_coords(&self, offset: Offset) -> impl Iterator<Item = BlockCoord> + '_ {
        let block_rows = self.rows.len() / 2;
        (0..block_rows).flat_map(move |br| {
            (0..COLS / 2).map(move |bc| BlockCoord::new(br, bc, offset))
        })
    }

    fn check_coord(&self, coord: BlockCoord) -> Result<()> {
        if coord.block_row >= self.rows.len() / 2 || coord.block_col >= COLS / 2 {
            return Err(Error::BlockOutOfRange {
                block_row: coord.block_row,
                block_col: coord.block_col,
                rows: self.rows.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn row_bytes_mut(&mut self) -> &mut [u8] {
        &mut self.rows
    }
}
