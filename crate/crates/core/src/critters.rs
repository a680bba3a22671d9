//! The Critters block transition and K-step lattice evolution.
//!
//! The forward rule maps each 2x2 block state to a new one:
//!
//! * two live cells: the block is left unchanged,
//! * three live cells: the block is rotated 180 degrees and every cell is
//!   flipped,
//! * zero, one or four live cells: every cell is flipped.
//!
//! (Rotation by 180 degrees and complement commute, so their order does not
//! matter.) The map is a bijection on the 16 block states, which makes the
//! whole automaton reversible: the inverse rule is its permutation inverse,
//! with the closed form obtained by swapping the roles of one and three
//! live cells.
//!
//! Evolution alternates the block partition anchor each step: even steps
//! use [`Offset::Even`], odd steps [`Offset::Odd`]. Decryption applies the
//! inverse rule while visiting the offsets in reverse order.

use std::sync::LazyLock;

use crate::lattice::{BitLattice, BlockState, Offset};

/// Forward and inverse Critters permutations over the 16 block states.
///
/// Both tables are generated from the closed-form rule at first use; the
/// constructor cross-checks the inverted forward table against the derived
/// closed form of the inverse, so a transcription error in either cannot
/// survive startup.
pub struct RuleTable {
    forward: [u8; 16],
    inverse: [u8; 16],
}

static RULE_TABLE: LazyLock<RuleTable> = LazyLock::new(RuleTable::build);

impl RuleTable {
    fn build() -> Self {
        let mut forward = [0u8; 16];
        let mut inverse = [0u8; 16];
        for s in BlockState::all() {
            forward[s.bits() as usize] = forward_closed_form(s).bits();
        }
        for s in 0..16u8 {
            inverse[forward[s as usize] as usize] = s;
        }
        for s in BlockState::all() {
            assert_eq!(
                inverse[s.bits() as usize],
                inverse_closed_form(s).bits(),
                "inverse table disagrees with its closed form at state {s:?}",
            );
        }
        Self { forward, inverse }
    }

    /// The process-wide table.
    pub fn shared() -> &'static RuleTable {
        &RULE_TABLE
    }

    pub fn forward(&self, state: BlockState) -> BlockState {
        BlockState::new(self.forward[state.bits() as usize])
    }

    pub fn inverse(&self, state: BlockState) -> BlockState {
        BlockState::new(self.inverse[state.bits() as usize])
    }

    fn forward_bits(&self) -> &[u8; 16] {
        &self.forward
    }

    fn inverse_bits(&self) -> &[u8; 16] {
        &self.inverse
    }
}

fn forward_closed_form(state: BlockState) -> BlockState {
    match state.live_cells() {
        2 => state,
        3 => state.rotate_180().complement(),
        _ => state.complement(),
    }
}

fn inverse_closed_form(state: BlockState) -> BlockState {
    match state.live_cells() {
        2 => state,
        1 => state.rotate_180().complement(),
        _ => state.complement(),
    }
}

/// Applies the forward Critters rule to one block state.
pub fn forward_block(state: BlockState) -> BlockState {
    RuleTable::shared().forward(state)
}

/// Applies the inverse Critters rule to one block state, so that
/// `inverse_block(forward_block(s)) == s` for every state.
pub fn inverse_block(state: BlockState) -> BlockState {
    RuleTable::shared().inverse(state)
}

/// Partition offset used at step `step` of the schedule: even steps anchor
/// blocks at (0,0), odd steps at (1,1).
pub fn offset_for_step(step: u64) -> Offset {
    if step % 2 == 0 {
        Offset::Even
    } else {
        Offset::Odd
    }
}

/// Applies the forward rule to every block of the partition under `offset`.
pub fn forward_step(lattice: &BitLattice, offset: Offset) -> BitLattice {
    let mut out = lattice.clone();
    step_in_place(&mut out, offset, RuleTable::shared().forward_bits());
    out
}

/// Applies the inverse rule to every block, undoing [`forward_step`] at the
/// same offset.
pub fn inverse_step(lattice: &BitLattice, offset: Offset) -> BitLattice {
    let mut out = lattice.clone();
    step_in_place(&mut out, offset, RuleTable::shared().inverse_bits());
    out
}

/// Evolves the lattice for `key` steps under the alternating offset
/// schedule. `key = 0` is the identity.
pub fn evolve(lattice: &BitLattice, key: u64) -> BitLattice {
    let mut out = lattice.clone();
    let table = RuleTable::shared().forward_bits();
    for step in 0..key {
        step_in_place(&mut out, offset_for_step(step), table);
    }
    out
}

/// Runs the evolution backwards: inverse steps with the offsets visited in
/// reverse order, so `devolve(evolve(l, k), k) == l`.
pub fn devolve(lattice: &BitLattice, key: u64) -> BitLattice {
    let mut out = lattice.clone();
    let table = RuleTable::shared().inverse_bits();
    for step in (0..key).rev() {
        step_in_place(&mut out, offset_for_step(step), table);
    }
    out
}

/// Testing hook: like [`evolve`], but calls `observe` with the step index
/// and lattice state after every step. Not part of the stable interface.
#[doc(hidden)]
pub fn evolve_traced(
    lattice: &BitLattice,
    key: u64,
    observe: &mut dyn FnMut(u64, &BitLattice),
) -> BitLattice {
    let mut out = lattice.clone();
    let table = RuleTable::shared().forward_bits();
    for step in 0..key {
        step_in_place(&mut out, offset_for_step(step), table);
        observe(step, &out);
    }
    out
}

/// Rewrites every block of the partition with `table`, in place. Blocks are
/// disjoint, so each row pair can be transformed independently.
fn step_in_place(lattice: &mut BitLattice, offset: Offset, table: &[u8; 16]) {
    let rows = lattice.row_bytes_mut();
    let n = rows.len();
    match offset {
        Offset::Even => {
            for pair in rows.chunks_exact_mut(2) {
                let (a, b) = transform_row_pair(pair[0], pair[1], table);
                pair[0] = a;
                pair[1] = b;
            }
        }
        Offset::Odd => {
            // Rotating each row byte left by one aligns the shifted column
            // pairs with the byte's even bit pairs; row pairs (r, r+1) for
            // odd r wrap onto row 0 at the bottom edge.
            for r in (1..n).step_by(2) {
                let r2 = (r + 1) % n;
                let (a, b) = transform_row_pair(
                    rows[r].rotate_left(1),
                    rows[r2].rotate_left(1),
                    table,
                );
                rows[r] = a.rotate_right(1);
                rows[r2] = b.rotate_right(1);
            }
        }
    }
}

/// Transforms the four aligned 2x2 blocks spanned by two adjacent row
/// bytes. The two bits of `top` at positions (7-2j, 6-2j) are a block's
/// TL/TR cells and the same bits of `bottom` its BL/BR cells.
fn transform_row_pair(top: u8, bottom: u8, table: &[u8; 16]) -> (u8, u8) {
    let mut new_top = 0u8;
    let mut new_bottom = 0u8;
    for j in 0..4 {
        let shift = 6 - 2 * j;
        let state = ((top >> shift & 0b11) << 2) | (bottom >> shift & 0b11);
        let next = table[state as usize];
        new_top |= (next >> 2) << shift;
        new_bottom |= (next & 0b11) << shift;
    }
    (new_top, new_bottom)
}
