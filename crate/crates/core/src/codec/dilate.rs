//! Dilated integers: bit `k` of a coordinate moved to bit `2k`.

use super::DilationProfile;
use crate::error::{check_range, Axis, Result};

/// Odd-position (row) bits of a 32-bit Morton index.
pub const EVEN_BITS_32: u32 = 0xAAAA_AAAA;
/// Even-position (column) bits of a 32-bit Morton index.
pub const ODD_BITS_32: u32 = 0x5555_5555;
pub const EVEN_BITS_64: u64 = 0xAAAA_AAAA_AAAA_AAAA;
pub const ODD_BITS_64: u64 = 0x5555_5555_5555_5555;

/// Four-stage shift-or-mask cascade on a 16-bit coordinate.
#[inline]
pub fn dilate16(t: u16) -> u32 {
    let mut r = t as u32;
    r = (r | (r << 8)) & 0x00FF_00FF;
    r = (r | (r << 4)) & 0x0F0F_0F0F;
    r = (r | (r << 2)) & 0x3333_3333;
    r = (r | (r << 1)) & 0x5555_5555;
    r
}

/// Inverse of [`dilate16`]. Odd bits of the input are expected to be zero.
#[inline]
pub fn undilate16(mut t: u32) -> u16 {
    t = (t | (t >> 1)) & 0x3333_3333;
    t = (t | (t >> 2)) & 0x0F0F_0F0F;
    t = (t | (t >> 4)) & 0x00FF_00FF;
    t = (t | (t >> 8)) & 0x0000_FFFF;
    t as u16
}

/// Five-stage cascade on a 32-bit coordinate.
#[inline]
pub fn dilate32(t: u32) -> u64 {
    let mut r = t as u64;
    r = (r | (r << 16)) & 0x0000_FFFF_0000_FFFF;
    r = (r | (r << 8)) & 0x00FF_00FF_00FF_00FF;
    r = (r | (r << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    r = (r | (r << 2)) & 0x3333_3333_3333_3333;
    r = (r | (r << 1)) & 0x5555_5555_5555_5555;
    r
}

#[inline]
pub fn undilate32(mut t: u64) -> u32 {
    t = (t | (t >> 1)) & 0x3333_3333_3333_3333;
    t = (t | (t >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    t = (t | (t >> 4)) & 0x00FF_00FF_00FF_00FF;
    t = (t | (t >> 8)) & 0x0000_FFFF_0000_FFFF;
    t = (t | (t >> 16)) & 0x0000_0000_FFFF_FFFF;
    t as u32
}

/// Dilate `x` under `profile`; `x` must fit the profile's coordinate width.
pub fn dilate(x: u64, profile: DilationProfile) -> Result<u64> {
    match profile {
        DilationProfile::Paper16 => {
            check_range(Axis::Row, x, 1 << 16)?;
            Ok(dilate16(x as u16) as u64)
        }
        DilationProfile::Wide32 => {
            check_range(Axis::Row, x, 1 << 32)?;
            Ok(dilate32(x as u32))
        }
    }
}

/// Un-dilate `x` under `profile`. Under `Paper16` only the low 32 bits are read.
pub fn undilate(x: u64, profile: DilationProfile) -> u64 {
    match profile {
        DilationProfile::Paper16 => undilate16(x as u32) as u64,
        DilationProfile::Wide32 => undilate32(x) as u64,
    }
}
