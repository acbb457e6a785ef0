//! Index codecs for the five matrix layouts.
//!
//! Every codec converts between a [`CartesianIndex`] `(i, j)` and the
//! [`LinearIndex`] `z` at which that cell lives in the serialized array. All
//! functions are pure; the lookup tables are immutable constants.

mod dilate;
mod hilbert;
mod hybrid;
mod morton;
pub mod oracle;
mod peano;
mod row_major;

use std::fmt;
use std::str::FromStr;

use crate::error::{check_range, Axis, Error, Result};

pub use dilate::{
    dilate, dilate16, dilate32, undilate, undilate16, undilate32, EVEN_BITS_32, EVEN_BITS_64,
    ODD_BITS_32, ODD_BITS_64,
};
pub use hilbert::{hilbert_decode, hilbert_encode, HilbertTables};
pub use hybrid::{mh_decode, mh_encode};
pub use morton::{morton_decode, morton_encode};
pub use oracle::generate_layout_oracle;
pub use peano::{peano_decode, peano_encode, PeanoTables};
pub use row_major::{rm_decode, rm_encode};

/// Grid coordinate `(i, j)`: row `i`, column `j`, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CartesianIndex {
    pub i: u64,
    pub j: u64,
}

impl CartesianIndex {
    pub const fn new(i: u64, j: u64) -> Self {
        Self { i, j }
    }
}

impl From<(u64, u64)> for CartesianIndex {
    fn from((i, j): (u64, u64)) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for CartesianIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Offset into the serialized array of a layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearIndex(pub u64);

impl fmt::Display for LinearIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curve {
    RowMajor,
    Hilbert,
    Peano,
    Morton,
    MortonHybrid,
}

impl Curve {
    pub const ALL: [Curve; 5] = [
        Curve::RowMajor,
        Curve::Hilbert,
        Curve::Peano,
        Curve::Morton,
        Curve::MortonHybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Curve::RowMajor => "row-major",
            Curve::Hilbert => "hilbert",
            Curve::Peano => "peano",
            Curve::Morton => "morton",
            Curve::MortonHybrid => "morton-hybrid",
        }
    }

    /// Peano grids have side `3^m`; every other curve uses `2^m`.
    pub fn is_ternary(self) -> bool {
        matches!(self, Curve::Peano)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Curve::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Spec(format!("unknown layout `{s}`")))
    }
}

/// Width of the dilation cascade used by the Morton-family codecs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DilationProfile {
    /// Four mask stages on 16-bit coordinates and 32-bit indices.
    #[default]
    Paper16,
    /// Five mask stages on 32-bit coordinates and 64-bit indices.
    Wide32,
}

impl DilationProfile {
    pub fn max_m(self) -> u32 {
        match self {
            DilationProfile::Paper16 => 16,
            DilationProfile::Wide32 => 32,
        }
    }
}

impl FromStr for DilationProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper16" => Ok(DilationProfile::Paper16),
            "wide32" => Ok(DilationProfile::Wide32),
            _ => Err(Error::Spec(format!("unknown dilation profile `{s}`"))),
        }
    }
}

/// Primitive Hilbert patterns, in lookup-table row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HilbertPattern {
    #[default]
    U = 0,
    C = 1,
    D = 2,
    N = 3,
}

impl HilbertPattern {
    pub const ALL: [HilbertPattern; 4] = [
        HilbertPattern::U,
        HilbertPattern::C,
        HilbertPattern::D,
        HilbertPattern::N,
    ];
}

impl FromStr for HilbertPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" | "u" => Ok(HilbertPattern::U),
            "C" | "c" => Ok(HilbertPattern::C),
            "D" | "d" => Ok(HilbertPattern::D),
            "N" | "n" => Ok(HilbertPattern::N),
            _ => Err(Error::Spec(format!("unknown Hilbert pattern `{s}`"))),
        }
    }
}

/// Primitive Peano patterns. `Q`, `R` and `S` are the column, row and double
/// reflections of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PeanoPattern {
    #[default]
    P = 0,
    Q = 1,
    R = 2,
    S = 3,
}

impl PeanoPattern {
    pub const ALL: [PeanoPattern; 4] = [
        PeanoPattern::P,
        PeanoPattern::Q,
        PeanoPattern::R,
        PeanoPattern::S,
    ];
}

/// Largest Peano exponent whose `9^m` index space fits in a `u64`.
pub const PEANO_MAX_M: u32 = 20;

/// Which curve, at which size, with which parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LayoutSpec {
    pub curve: Curve,
    /// Side exponent: `n = 2^m`, or `n = 3^m` for Peano.
    pub m: u32,
    /// Morton-hybrid block exponent, `T = 2^beta`. Ignored by other curves.
    pub beta: u32,
    pub initial_pattern: HilbertPattern,
    pub profile: DilationProfile,
}

impl LayoutSpec {
    fn build(curve: Curve, m: u32, beta: u32) -> Result<Self> {
        let spec = LayoutSpec {
            curve,
            m,
            beta,
            initial_pattern: HilbertPattern::U,
            profile: DilationProfile::Paper16,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn row_major(m: u32) -> Result<Self> {
        Self::build(Curve::RowMajor, m, 0)
    }

    pub fn hilbert(m: u32) -> Result<Self> {
        Self::build(Curve::Hilbert, m, 0)
    }

    pub fn peano(m: u32) -> Result<Self> {
        Self::build(Curve::Peano, m, 0)
    }

    pub fn morton(m: u32) -> Result<Self> {
        Self::build(Curve::Morton, m, 0)
    }

    pub fn morton_hybrid(m: u32, beta: u32) -> Result<Self> {
        Self::build(Curve::MortonHybrid, m, beta)
    }

    /// Same layout family at a different profile; re-validated.
    pub fn with_profile(mut self, profile: DilationProfile) -> Result<Self> {
        self.profile = profile;
        self.validate()?;
        Ok(self)
    }

    pub fn with_initial_pattern(mut self, pattern: HilbertPattern) -> Self {
        self.initial_pattern = pattern;
        self
    }

    /// Same curve parameters at a different side exponent.
    pub fn with_m(mut self, m: u32) -> Result<Self> {
        self.m = m;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.curve.is_ternary() {
            if self.m > PEANO_MAX_M {
                return Err(Error::Spec(format!(
                    "peano exponent {} exceeds {PEANO_MAX_M}",
                    self.m
                )));
            }
            return Ok(());
        }
        let cap = self.profile.max_m();
        if self.m > cap {
            return Err(Error::Spec(format!(
                "exponent {} exceeds the {:?} limit of {cap}",
                self.m, self.profile
            )));
        }
        if self.curve == Curve::MortonHybrid && self.beta > self.m {
            return Err(Error::Spec(format!(
                "block exponent {} exceeds matrix exponent {}",
                self.beta, self.m
            )));
        }
        Ok(())
    }

    /// Side length `n`.
    pub fn side(&self) -> u64 {
        if self.curve.is_ternary() {
            3u64.pow(self.m)
        } else {
            1u64 << self.m
        }
    }

    /// Number of cells, `n^2`. Saturates for the widest profiles.
    pub fn len(&self) -> u64 {
        self.side().saturating_mul(self.side())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Morton-hybrid truncation size `T = 2^beta`.
    pub fn block(&self) -> u64 {
        1u64 << self.beta
    }

    pub fn check_cartesian(&self, idx: CartesianIndex) -> Result<()> {
        let n = self.side();
        check_range(Axis::Row, idx.i, n)?;
        check_range(Axis::Col, idx.j, n)
    }

    pub fn check_linear(&self, z: LinearIndex) -> Result<()> {
        // side <= 2^32 so len only saturates at exactly 2^64, where every u64 is valid
        let n = self.side();
        match n.checked_mul(n) {
            Some(len) => check_range(Axis::Linear, z.0, len),
            None => Ok(()),
        }
    }

    pub(crate) fn expect_curve(&self, curve: Curve) -> Result<()> {
        if self.curve == curve {
            Ok(())
        } else {
            Err(Error::Spec(format!(
                "{} codec called with a {} layout",
                curve, self.curve
            )))
        }
    }

    /// Range-checked encode through the curve named by this spec.
    pub fn encode(&self, idx: CartesianIndex) -> Result<LinearIndex> {
        self.check_cartesian(idx)?;
        Ok(LinearIndex(self.encode_unchecked(idx.i, idx.j)))
    }

    /// Range-checked decode through the curve named by this spec.
    pub fn decode(&self, z: LinearIndex) -> Result<CartesianIndex> {
        self.check_linear(z)?;
        let (i, j) = self.decode_unchecked(z.0);
        Ok(CartesianIndex { i, j })
    }

    /// Encode without range checks. Callers guarantee `i, j < side()`.
    #[inline]
    pub fn encode_unchecked(&self, i: u64, j: u64) -> u64 {
        match self.curve {
            Curve::RowMajor => row_major::encode_raw(i, j, self.m),
            Curve::Hilbert => {
                hilbert::encode_raw(i, j, self.m, self.initial_pattern, &HilbertTables::STANDARD)
            }
            Curve::Peano => {
                peano::encode_raw(i, j, self.m, PeanoPattern::P, &PeanoTables::SERPENTINE)
            }
            Curve::Morton => morton::encode_raw(i, j, self.profile),
            Curve::MortonHybrid => hybrid::encode_raw(i, j, self.beta, self.profile),
        }
    }

    /// Decode without range checks. Callers guarantee `z < len()`.
    #[inline]
    pub fn decode_unchecked(&self, z: u64) -> (u64, u64) {
        match self.curve {
            Curve::RowMajor => row_major::decode_raw(z, self.m),
            Curve::Hilbert => {
                hilbert::decode_raw(z, self.m, self.initial_pattern, &HilbertTables::STANDARD)
            }
            Curve::Peano => peano::decode_raw(z, self.m, PeanoPattern::P, &PeanoTables::SERPENTINE),
            Curve::Morton => morton::decode_raw(z, self.profile),
            Curve::MortonHybrid => hybrid::decode_raw(z, self.beta, self.profile),
        }
    }
}

impl fmt::Display for LayoutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.curve {
            Curve::MortonHybrid => write!(f, "morton-hybrid-t{}", self.block()),
            c => f.write_str(c.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hybrid_beta_bound() {
        assert!(LayoutSpec::morton_hybrid(3, 3).is_ok());
        assert!(matches!(
            LayoutSpec::morton_hybrid(3, 4),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn profile_caps() {
        assert!(LayoutSpec::morton(16).is_ok());
        assert!(LayoutSpec::morton(17).is_err());
        let wide = LayoutSpec::morton(16)
            .unwrap()
            .with_profile(DilationProfile::Wide32)
            .unwrap();
        assert!(wide.with_m(32).is_ok());
        assert!(wide.with_m(33).is_err());
    }

    #[test]
    fn sides() {
        assert_eq!(LayoutSpec::row_major(3).unwrap().side(), 8);
        assert_eq!(LayoutSpec::peano(2).unwrap().side(), 9);
        assert_eq!(LayoutSpec::peano(0).unwrap().side(), 1);
    }

    #[test]
    fn range_errors_name_the_axis() {
        let spec = LayoutSpec::row_major(3).unwrap();
        match spec.encode(CartesianIndex::new(2, 8)) {
            Err(Error::Range {
                axis: Axis::Col,
                value: 8,
                bound: 8,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match spec.encode(CartesianIndex::new(9, 0)) {
            Err(Error::Range {
                axis: Axis::Row, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(spec.decode(LinearIndex(64)).is_err());
    }

    #[test]
    fn single_cell_layouts() {
        let specs = [
            LayoutSpec::row_major(0).unwrap(),
            LayoutSpec::hilbert(0).unwrap(),
            LayoutSpec::peano(0).unwrap(),
            LayoutSpec::morton(0).unwrap(),
            LayoutSpec::morton_hybrid(0, 0).unwrap(),
        ];
        for spec in specs {
            assert_eq!(
                spec.encode(CartesianIndex::new(0, 0)).unwrap(),
                LinearIndex(0)
            );
            assert_eq!(
                spec.decode(LinearIndex(0)).unwrap(),
                CartesianIndex::new(0, 0)
            );
        }
    }

    #[test]
    fn curve_names_round_trip() {
        for c in Curve::ALL {
            assert_eq!(c.name().parse::<Curve>().unwrap(), c);
        }
        assert!("zigzag".parse::<Curve>().is_err());
    }
}
