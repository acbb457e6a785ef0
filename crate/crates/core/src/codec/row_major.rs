use super::{CartesianIndex, Curve, LayoutSpec, LinearIndex};
use crate::error::Result;

#[inline]
pub(crate) fn encode_raw(i: u64, j: u64, m: u32) -> u64 {
    (i << m) | j
}

#[inline]
pub(crate) fn decode_raw(z: u64, m: u32) -> (u64, u64) {
    (z >> m, z & ((1u64 << m) - 1))
}

/// Row-major encode: `z = (i << m) | j`, i.e. `i * n + j`.
pub fn rm_encode(idx: CartesianIndex, spec: &LayoutSpec) -> Result<LinearIndex> {
    spec.expect_curve(Curve::RowMajor)?;
    spec.check_cartesian(idx)?;
    Ok(LinearIndex(encode_raw(idx.i, idx.j, spec.m)))
}

/// Row-major decode: `i = z >> m`, `j = z & (2^m - 1)`.
pub fn rm_decode(z: LinearIndex, spec: &LayoutSpec) -> Result<CartesianIndex> {
    spec.expect_curve(Curve::RowMajor)?;
    spec.check_linear(z)?;
    let (i, j) = decode_raw(z.0, spec.m);
    Ok(CartesianIndex { i, j })
}
