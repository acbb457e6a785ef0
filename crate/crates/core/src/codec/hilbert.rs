//! Table-driven Hilbert codec over the four primitive patterns `U, C, D, N`.
//!
//! Encoding walks the bits of `i` and `j` from the top, one refinement level
//! per iteration: the row-major quadrant `v_k = (i_s j_s)` and the current
//! pattern select the next pattern (`t_p`) and the two Hilbert bits appended
//! to `z` (`t_v`). Decoding runs the inverse tables `t_p_prime` / `t_v_prime`.

use super::{CartesianIndex, Curve, HilbertPattern, LayoutSpec, LinearIndex};
use crate::error::Result;

use HilbertPattern::{C, D, N, U};

/// Encoding and decoding lookup tables, indexed `[pattern][quadrant]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTables {
    pub t_p: [[HilbertPattern; 4]; 4],
    pub t_v: [[u8; 4]; 4],
    pub t_p_prime: [[HilbertPattern; 4]; 4],
    pub t_v_prime: [[u8; 4]; 4],
}

impl HilbertTables {
    pub const STANDARD: HilbertTables = HilbertTables {
        // rows: U, C, D, N; columns: quadrant NW, NE, SW, SE
        t_p: [[D, C, U, U], [C, U, C, N], [U, D, N, D], [N, N, D, C]],
        t_v: [
            [0b00, 0b11, 0b01, 0b10],
            [0b10, 0b11, 0b01, 0b00],
            [0b00, 0b01, 0b11, 0b10],
            [0b10, 0b01, 0b11, 0b00],
        ],
        // columns: position along the curve
        t_p_prime: [[D, U, U, C], [N, C, C, U], [U, D, D, N], [C, N, N, D]],
        t_v_prime: [
            [0b00, 0b10, 0b11, 0b01],
            [0b11, 0b10, 0b00, 0b01],
            // D: inverse of t_v[D]
            [0b00, 0b01, 0b11, 0b10],
            [0b11, 0b01, 0b00, 0b10],
        ],
    };

    #[inline]
    pub(crate) fn step_encode(&self, rho: HilbertPattern, v: u64) -> (HilbertPattern, u64) {
        let (r, v) = (rho as usize, v as usize);
        (self.t_p[r][v], self.t_v[r][v] as u64)
    }

    #[inline]
    pub(crate) fn step_decode(&self, rho: HilbertPattern, v: u64) -> (HilbertPattern, u64) {
        let (r, v) = (rho as usize, v as usize);
        (self.t_p_prime[r][v], self.t_v_prime[r][v] as u64)
    }
}

#[inline]
pub(crate) fn encode_raw(
    i: u64,
    j: u64,
    m: u32,
    start: HilbertPattern,
    tables: &HilbertTables,
) -> u64 {
    let mut rho = start;
    let mut z = 0u64;
    for s in (0..m).rev() {
        let v = (((i >> s) & 1) << 1) | ((j >> s) & 1);
        let (next, bits) = tables.step_encode(rho, v);
        z = (z << 2) | bits;
        rho = next;
    }
    z
}

#[inline]
pub(crate) fn decode_raw(
    z: u64,
    m: u32,
    start: HilbertPattern,
    tables: &HilbertTables,
) -> (u64, u64) {
    let mut rho = start;
    let (mut i, mut j) = (0u64, 0u64);
    for s in (0..m).rev() {
        let v = (z >> (2 * s)) & 3;
        let (next, quadrant) = tables.step_decode(rho, v);
        i = (i << 1) | (quadrant >> 1);
        j = (j << 1) | (quadrant & 1);
        rho = next;
    }
    (i, j)
}

pub fn hilbert_encode(
    idx: CartesianIndex,
    spec: &LayoutSpec,
    tables: &HilbertTables,
) -> Result<LinearIndex> {
    spec.expect_curve(Curve::Hilbert)?;
    spec.check_cartesian(idx)?;
    Ok(LinearIndex(encode_raw(
        idx.i,
        idx.j,
        spec.m,
        spec.initial_pattern,
        tables,
    )))
}

pub fn hilbert_decode(
    z: LinearIndex,
    spec: &LayoutSpec,
    tables: &HilbertTables,
) -> Result<CartesianIndex> {
    spec.expect_curve(Curve::Hilbert)?;
    spec.check_linear(z)?;
    let (i, j) = decode_raw(z.0, spec.m, spec.initial_pattern, tables);
    Ok(CartesianIndex { i, j })
}
