use std::fmt;

use thiserror::Error;

/// Coordinate axis named in range errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
    Linear,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Col => "column",
            Axis::Linear => "linear",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{axis} index {value} out of range (bound {bound})")]
    Range { axis: Axis, value: u64, bound: u64 },

    #[error("invalid layout: {0}")]
    Spec(String),

    #[error("size limit exceeded: {0}")]
    TooLarge(String),

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("{0} is not a prime modulus below 2^31")]
    NotPrime(u32),

    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),

    #[error("cannot split a {rows}x{cols} window into quadrants")]
    Split { rows: usize, cols: usize },

    #[error("incompatible layouts: {0}")]
    Incompatible(String),

    #[error("malformed matrix file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("correctness gate failed: {0}")]
    Correctness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(axis: Axis, value: u64, bound: u64) -> Result<()> {
    if value < bound {
        Ok(())
    } else {
        Err(Error::Range { axis, value, bound })
    }
}
