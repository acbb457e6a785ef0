//! Table-driven Peano codec on `3^m x 3^m` grids.
//!
//! Same pattern-machine shape as the Hilbert codec, but each level splits the
//! grid into ninths: the row-major ninth `v = 3 * (i digit) + (j digit)` and
//! the current pattern select the next pattern and one base-9 digit of `z`.
//! Digits are extracted with genuine division and remainder by powers of 3.
//!
//! `P` is the serpentine curve that starts at the top-left cell and runs down
//! the first column of ninths; `Q`, `R` and `S` are its column, row and double
//! reflections. The constants below are frozen from the recursive generator
//! in [`super::oracle`], and a unit test re-derives them.

use super::{CartesianIndex, Curve, LayoutSpec, LinearIndex, PeanoPattern};
use crate::error::Result;

use PeanoPattern::{P, Q, R, S};

/// Peano lookup tables, indexed `[pattern][ninth]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeanoTables {
    /// Pattern of the row-major ninth `v`.
    pub next_pattern: [[PeanoPattern; 9]; 4],
    /// Curve position (base-9 digit) of the row-major ninth `v`.
    pub order: [[u8; 9]; 4],
    /// Pattern of the ninth at curve position `d`.
    pub next_pattern_inv: [[PeanoPattern; 9]; 4],
    /// Row-major ninth at curve position `d`.
    pub order_inv: [[u8; 9]; 4],
}

impl PeanoTables {
    pub const SERPENTINE: PeanoTables = PeanoTables {
        next_pattern: [
            [P, R, P, Q, S, Q, P, R, P],
            [Q, S, Q, P, R, P, Q, S, Q],
            [R, P, R, S, Q, S, R, P, R],
            [S, Q, S, R, P, R, S, Q, S],
        ],
        order: [
            [0, 5, 6, 1, 4, 7, 2, 3, 8],
            [6, 5, 0, 7, 4, 1, 8, 3, 2],
            [2, 3, 8, 1, 4, 7, 0, 5, 6],
            [8, 3, 2, 7, 4, 1, 6, 5, 0],
        ],
        next_pattern_inv: [
            [P, Q, P, R, S, R, P, Q, P],
            [Q, P, Q, S, R, S, Q, P, Q],
            [R, S, R, P, Q, P, R, S, R],
            [S, R, S, Q, P, Q, S, R, S],
        ],
        order_inv: [
            [0, 3, 6, 7, 4, 1, 2, 5, 8],
            [2, 5, 8, 7, 4, 1, 0, 3, 6],
            [6, 3, 0, 1, 4, 7, 8, 5, 2],
            [8, 5, 2, 1, 4, 7, 6, 3, 0],
        ],
    };

    /// Build the four tables from per-pattern `next_pattern` and `order`
    /// rows, inverting the orders.
    pub fn from_rules(next_pattern: [[PeanoPattern; 9]; 4], order: [[u8; 9]; 4]) -> PeanoTables {
        let mut next_pattern_inv = [[P; 9]; 4];
        let mut order_inv = [[0u8; 9]; 4];
        for rho in 0..4 {
            for v in 0..9 {
                let d = order[rho][v] as usize;
                order_inv[rho][d] = v as u8;
                next_pattern_inv[rho][d] = next_pattern[rho][v];
            }
        }
        PeanoTables {
            next_pattern,
            order,
            next_pattern_inv,
            order_inv,
        }
    }
}

#[inline]
pub(crate) fn encode_raw(i: u64, j: u64, m: u32, start: PeanoPattern, tables: &PeanoTables) -> u64 {
    let mut rho = start as usize;
    let mut z = 0u64;
    let mut place = 3u64.pow(m) / 3;
    for _ in 0..m {
        let a = (i / place) % 3;
        let b = (j / place) % 3;
        let v = (3 * a + b) as usize;
        z = z * 9 + tables.order[rho][v] as u64;
        rho = tables.next_pattern[rho][v] as usize;
        place /= 3;
    }
    z
}

#[inline]
pub(crate) fn decode_raw(z: u64, m: u32, start: PeanoPattern, tables: &PeanoTables) -> (u64, u64) {
    let mut rho = start as usize;
    let (mut i, mut j) = (0u64, 0u64);
    let mut place = if m == 0 { 0 } else { 9u64.pow(m - 1) };
    for _ in 0..m {
        let d = ((z / place) % 9) as usize;
        let v = tables.order_inv[rho][d] as u64;
        i = i * 3 + v / 3;
        j = j * 3 + v % 3;
        rho = tables.next_pattern_inv[rho][d] as usize;
        place /= 9;
    }
    (i, j)
}

pub fn peano_encode(
    idx: CartesianIndex,
    spec: &LayoutSpec,
    tables: &PeanoTables,
) -> Result<LinearIndex> {
    spec.expect_curve(Curve::Peano)?;
    spec.check_cartesian(idx)?;
    Ok(LinearIndex(encode_raw(idx.i, idx.j, spec.m, P, tables)))
}

pub fn peano_decode(
    z: LinearIndex,
    spec: &LayoutSpec,
    tables: &PeanoTables,
) -> Result<CartesianIndex> {
    spec.expect_curve(Curve::Peano)?;
    spec.check_linear(z)?;
    let (i, j) = decode_raw(z.0, spec.m, P, tables);
    Ok(CartesianIndex { i, j })
}
