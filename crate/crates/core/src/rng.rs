//! Seeded matrix generation.
//!
//! The generator is SplitMix64: 64-bit state, `state += 0x9e3779b97f4a7c15`
//! per draw, output mixed by `z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9`,
//! `z = (z ^ (z >> 27)) * 0x94d049bb133111eb`, `z ^ (z >> 31)`. The seed is
//! the initial state. Entries are drawn row by row, each `next_u64() % p`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::codec::LayoutSpec;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{LayoutMatrix, MatrixFile, MAX_SIDE};

pub fn generator(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Row-major residues of a seeded random `n x n` matrix over GF(p).
pub fn random_entries(n: usize, field: PrimeField, seed: u64) -> Result<Vec<u32>> {
    if n as u64 > MAX_SIDE {
        return Err(Error::TooLarge(format!("side {n} exceeds {MAX_SIDE}")));
    }
    let mut rng = generator(seed);
    let p = field.modulus() as u64;
    Ok((0..n * n).map(|_| (rng.next_u64() % p) as u32).collect())
}

pub fn random_file(n: usize, field: PrimeField, seed: u64) -> Result<MatrixFile> {
    Ok(MatrixFile {
        modulus: field.modulus(),
        n,
        entries: random_entries(n, field, seed)?,
    })
}

/// Seeded random matrix stored under `spec`. The Cartesian contents depend
/// only on `(side, p, seed)`, never on the layout.
pub fn random_matrix(spec: LayoutSpec, field: PrimeField, seed: u64) -> Result<LayoutMatrix> {
    spec.validate()?;
    let entries = random_entries(spec.side() as usize, field, seed)?;
    LayoutMatrix::from_dense(spec, field, &entries)
}
