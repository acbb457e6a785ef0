use super::dilate::{dilate16, dilate32, undilate16, undilate32};
use super::dilate::{EVEN_BITS_32, EVEN_BITS_64, ODD_BITS_32, ODD_BITS_64};
use super::{CartesianIndex, Curve, DilationProfile, LayoutSpec, LinearIndex};
use crate::error::Result;

#[inline]
pub(crate) fn encode_raw(i: u64, j: u64, profile: DilationProfile) -> u64 {
    match profile {
        DilationProfile::Paper16 => ((dilate16(i as u16) << 1) | dilate16(j as u16)) as u64,
        DilationProfile::Wide32 => (dilate32(i as u32) << 1) | dilate32(j as u32),
    }
}

#[inline]
pub(crate) fn decode_raw(z: u64, profile: DilationProfile) -> (u64, u64) {
    match profile {
        DilationProfile::Paper16 => {
            let z = z as u32;
            let i = undilate16((z & EVEN_BITS_32) >> 1);
            let j = undilate16(z & ODD_BITS_32);
            (i as u64, j as u64)
        }
        DilationProfile::Wide32 => {
            let i = undilate32((z & EVEN_BITS_64) >> 1);
            let j = undilate32(z & ODD_BITS_64);
            (i as u64, j as u64)
        }
    }
}

/// Morton (Z-order) encode: `z = (dilate(i) << 1) | dilate(j)`.
pub fn morton_encode(idx: CartesianIndex, spec: &LayoutSpec) -> Result<LinearIndex> {
    spec.expect_curve(Curve::Morton)?;
    spec.check_cartesian(idx)?;
    Ok(LinearIndex(encode_raw(idx.i, idx.j, spec.profile)))
}

/// Morton decode by masking out the row and column bits and un-dilating each.
pub fn morton_decode(z: LinearIndex, spec: &LayoutSpec) -> Result<CartesianIndex> {
    spec.expect_curve(Curve::Morton)?;
    spec.check_linear(z)?;
    let (i, j) = decode_raw(z.0, spec.profile);
    Ok(CartesianIndex { i, j })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let spec = LayoutSpec::morton(3).unwrap();
        assert_eq!(
            morton_encode(CartesianIndex::new(4, 6), &spec).unwrap(),
            LinearIndex(52)
        );
        assert_eq!(
            morton_decode(LinearIndex(52), &spec).unwrap(),
            CartesianIndex::new(4, 6)
        );
        assert_eq!(
            morton_encode(CartesianIndex::new(0, 0), &spec).unwrap(),
            LinearIndex(0)
        );
    }

    #[test]
    fn profiles_agree_where_both_apply() {
        let narrow = LayoutSpec::morton(6).unwrap();
        let wide = narrow.with_profile(DilationProfile::Wide32).unwrap();
        for i in 0..64 {
            for j in 0..64 {
                let idx = CartesianIndex::new(i, j);
                assert_eq!(
                    morton_encode(idx, &narrow).unwrap(),
                    morton_encode(idx, &wide).unwrap()
                );
            }
        }
    }

    #[test]
    fn wide_profile_top_corner() {
        let spec = LayoutSpec::morton(16)
            .and_then(|s| s.with_profile(DilationProfile::Wide32))
            .and_then(|s| s.with_m(32))
            .unwrap();
        let far = CartesianIndex::new(u32::MAX as u64, u32::MAX as u64);
        let z = morton_encode(far, &spec).unwrap();
        assert_eq!(z.0, u64::MAX);
        assert_eq!(morton_decode(z, &spec).unwrap(), far);
    }
}
