//! Morton-hybrid order: Morton order over `T x T` blocks, row-major inside.
//!
//! Bit layout of `z`, high to low: the interleaved block bits
//! `i_{m-1} j_{m-1} .. i_beta j_beta`, then the `beta` low bits of `i`, then
//! the `beta` low bits of `j`.

use super::dilate::{dilate16, dilate32, undilate16, undilate32};
use super::dilate::{EVEN_BITS_32, EVEN_BITS_64, ODD_BITS_32, ODD_BITS_64};
use super::{CartesianIndex, Curve, DilationProfile, LayoutSpec, LinearIndex};
use crate::error::Result;

#[inline]
pub(crate) fn encode_raw(i: u64, j: u64, beta: u32, profile: DilationProfile) -> u64 {
    match profile {
        DilationProfile::Paper16 => {
            let (i, j) = (i as u32, j as u32);
            let mu = (1u32 << beta) - 1;
            let high = u32::MAX.checked_shl(beta).unwrap_or(0);
            let (ir, im) = (i & mu, i & high);
            let (jr, jm) = (j & mu, j & high);
            let z = ((dilate16(im as u16) << 1) | dilate16(jm as u16)) | (ir << beta) | jr;
            z as u64
        }
        DilationProfile::Wide32 => {
            let mu = (1u64 << beta) - 1;
            let high = u64::MAX.checked_shl(beta).unwrap_or(0);
            let (ir, im) = (i & mu, i & high);
            let (jr, jm) = (j & mu, j & high);
            ((dilate32(im as u32) << 1) | dilate32(jm as u32)) | (ir << beta) | jr
        }
    }
}

#[inline]
pub(crate) fn decode_raw(z: u64, beta: u32, profile: DilationProfile) -> (u64, u64) {
    match profile {
        DilationProfile::Paper16 => {
            let z = z as u32;
            let shift = |mask: u32| {
                mask.checked_shl(beta)
                    .and_then(|v| v.checked_shl(beta))
                    .unwrap_or(0)
            };
            let im = undilate16((z & shift(EVEN_BITS_32)) >> 1) as u32;
            let jm = undilate16(z & shift(ODD_BITS_32)) as u32;
            let mu = (1u32 << beta) - 1;
            let ir = z & (mu << beta);
            let jr = z & mu;
            ((im | (ir >> beta)) as u64, (jm | jr) as u64)
        }
        DilationProfile::Wide32 => {
            let shift = |mask: u64| {
                mask.checked_shl(beta)
                    .and_then(|v| v.checked_shl(beta))
                    .unwrap_or(0)
            };
            let im = undilate32((z & shift(EVEN_BITS_64)) >> 1) as u64;
            let jm = undilate32(z & shift(ODD_BITS_64)) as u64;
            let mu = (1u64 << beta) - 1;
            let ir = z & (mu << beta);
            let jr = z & mu;
            (im | (ir >> beta), jm | jr)
        }
    }
}

/// Morton-hybrid encode with truncation size `T = 2^beta`.
pub fn mh_encode(idx: CartesianIndex, spec: &LayoutSpec) -> Result<LinearIndex> {
    spec.expect_curve(Curve::MortonHybrid)?;
    spec.validate()?;
    spec.check_cartesian(idx)?;
    Ok(LinearIndex(encode_raw(
        idx.i,
        idx.j,
        spec.beta,
        spec.profile,
    )))
}

pub fn mh_decode(z: LinearIndex, spec: &LayoutSpec) -> Result<CartesianIndex> {
    spec.expect_curve(Curve::MortonHybrid)?;
    spec.validate()?;
    spec.check_linear(z)?;
    let (i, j) = decode_raw(z.0, spec.beta, spec.profile);
    Ok(CartesianIndex { i, j })
}
