//! Reference layouts built by direct recursive refinement.
//!
//! No bit tricks and no codec tables: each curve is generated by splitting the
//! current block into quadrants (or ninths), handing each sub-block its
//! pattern and its rank along the curve, and recursing. The result is the
//! full map from Cartesian cell to linear index, used to cross-check the
//! arithmetic codecs cell for cell.

use super::{Curve, HilbertPattern, LayoutSpec, PeanoPattern};
use crate::error::{Error, Result};

/// Largest binary exponent the oracle will materialize.
pub const ORACLE_MAX_M_BINARY: u32 = 10;
/// Largest Peano exponent the oracle will materialize.
pub const ORACLE_MAX_M_PEANO: u32 = 6;

/// Quadrant patterns for each primitive Hilbert pattern, as 2x2 grids.
pub fn hilbert_next_pattern(rho: HilbertPattern) -> [[HilbertPattern; 2]; 2] {
    use HilbertPattern::*;
    match rho {
        U => [[D, C], [U, U]],
        D => [[U, D], [N, D]],
        C => [[C, U], [C, N]],
        N => [[N, N], [D, C]],
    }
}

/// Rank along the curve of each quadrant, as 2x2 grids.
pub fn hilbert_order(rho: HilbertPattern) -> [[u64; 2]; 2] {
    use HilbertPattern::*;
    match rho {
        U => [[0, 3], [1, 2]],
        D => [[0, 1], [3, 2]],
        C => [[2, 3], [1, 0]],
        N => [[2, 1], [3, 0]],
    }
}

/// Cells of the `P` pattern in visiting order: down, up, down by columns.
const PEANO_P_VISITS: [(usize, usize); 9] = [
    (0, 0),
    (1, 0),
    (2, 0),
    (2, 1),
    (1, 1),
    (0, 1),
    (0, 2),
    (1, 2),
    (2, 2),
];

/// Reflection flags `(rows flipped, columns flipped)` of a Peano pattern.
fn peano_flips(rho: PeanoPattern) -> (bool, bool) {
    match rho {
        PeanoPattern::P => (false, false),
        PeanoPattern::Q => (false, true),
        PeanoPattern::R => (true, false),
        PeanoPattern::S => (true, true),
    }
}

fn peano_from_flips(rows: bool, cols: bool) -> PeanoPattern {
    match (rows, cols) {
        (false, false) => PeanoPattern::P,
        (false, true) => PeanoPattern::Q,
        (true, false) => PeanoPattern::R,
        (true, true) => PeanoPattern::S,
    }
}

/// Rank and pattern of ninth `(a, b)` of a block with pattern `rho`.
///
/// Inside `P`, a ninth in an odd column is traversed upward (rows flipped)
/// and one in an odd row is traversed right to left (columns flipped), which
/// keeps every exit cell adjacent to the next entry cell. Other patterns are
/// reflections of `P`, so their ninths are reflected the same way.
fn peano_ninth(rho: PeanoPattern, a: usize, b: usize) -> (u64, PeanoPattern) {
    let (fr, fc) = peano_flips(rho);
    let pa = if fr { 2 - a } else { a };
    let pb = if fc { 2 - b } else { b };
    let rank = PEANO_P_VISITS
        .iter()
        .position(|&cell| cell == (pa, pb))
        .unwrap() as u64;
    let sub = peano_from_flips((pb % 2 == 1) ^ fr, (pa % 2 == 1) ^ fc);
    (rank, sub)
}

/// Next-pattern and order rows for every Peano pattern, indexed by the
/// row-major ninth `3a + b`.
pub fn peano_rules() -> ([[PeanoPattern; 9]; 4], [[u8; 9]; 4]) {
    let mut next = [[PeanoPattern::P; 9]; 4];
    let mut order = [[0u8; 9]; 4];
    for rho in PeanoPattern::ALL {
        for a in 0..3 {
            for b in 0..3 {
                let (rank, sub) = peano_ninth(rho, a, b);
                next[rho as usize][3 * a + b] = sub;
                order[rho as usize][3 * a + b] = rank as u8;
            }
        }
    }
    (next, order)
}

struct Grid {
    n: usize,
    cells: Vec<u64>,
}

impl Grid {
    fn set(&mut self, i: usize, j: usize, z: u64) {
        self.cells[i * self.n + j] = z;
    }

    fn hilbert(&mut self, rho: HilbertPattern, i0: usize, j0: usize, size: usize, base: u64) {
        if size == 1 {
            self.set(i0, j0, base);
            return;
        }
        let half = size / 2;
        let span = (half * half) as u64;
        let (next, order) = (hilbert_next_pattern(rho), hilbert_order(rho));
        for a in 0..2 {
            for b in 0..2 {
                self.hilbert(
                    next[a][b],
                    i0 + a * half,
                    j0 + b * half,
                    half,
                    base + order[a][b] * span,
                );
            }
        }
    }

    /// Z-order down to blocks of side `leaf`, row-major inside each block.
    fn morton(&mut self, i0: usize, j0: usize, size: usize, leaf: usize, base: u64) {
        if size <= leaf {
            let mut z = base;
            for i in 0..size {
                for j in 0..size {
                    self.set(i0 + i, j0 + j, z);
                    z += 1;
                }
            }
            return;
        }
        let half = size / 2;
        let span = (half * half) as u64;
        for (rank, (a, b)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            self.morton(
                i0 + a * half,
                j0 + b * half,
                half,
                leaf,
                base + rank as u64 * span,
            );
        }
    }

    fn peano(&mut self, rho: PeanoPattern, i0: usize, j0: usize, size: usize, base: u64) {
        if size == 1 {
            self.set(i0, j0, base);
            return;
        }
        let third = size / 3;
        let span = (third * third) as u64;
        for a in 0..3 {
            for b in 0..3 {
                let (rank, sub) = peano_ninth(rho, a, b);
                self.peano(
                    sub,
                    i0 + a * third,
                    j0 + b * third,
                    third,
                    base + rank * span,
                );
            }
        }
    }
}

/// Map every cell `(i, j)` (stored at `i * n + j`) to its linear index under
/// `spec`, generated recursively.
pub fn generate_layout_oracle(spec: &LayoutSpec) -> Result<Vec<u64>> {
    spec.validate()?;
    let cap = if spec.curve.is_ternary() {
        ORACLE_MAX_M_PEANO
    } else {
        ORACLE_MAX_M_BINARY
    };
    if spec.m > cap {
        return Err(Error::TooLarge(format!(
            "oracle limited to m <= {cap} for {}, got {}",
            spec.curve, spec.m
        )));
    }
    let n = spec.side() as usize;
    let mut grid = Grid {
        n,
        cells: vec![0; n * n],
    };
    match spec.curve {
        Curve::RowMajor => grid.morton(0, 0, n, n, 0),
        Curve::Morton => grid.morton(0, 0, n, 1, 0),
        Curve::MortonHybrid => grid.morton(0, 0, n, spec.block() as usize, 0),
        Curve::Hilbert => grid.hilbert(spec.initial_pattern, 0, 0, n, 0),
        Curve::Peano => grid.peano(PeanoPattern::P, 0, 0, n, 0),
    }
    Ok(grid.cells)
}
