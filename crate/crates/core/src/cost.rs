//! Abstract operation accounting for the index codecs.
//!
//! The counted codecs below are a second, instrumented rendering of the same
//! algorithms the fast codecs run. Every `&`, `|`, `<<`, `>>` is one bit
//! operation, every `+`, `-`, `*`, `/`, `%` one integer operation, and every
//! read of a lookup table one lookup. Mask constants are free, and loop
//! control (the per-iteration shift amount) is not tallied.
//!
//! A Hilbert step reads its tables at `[pattern][row bit][column bit]`, so
//! the quadrant number `v_k` is never materialized by shifting and or-ing the
//! two bits together; the Peano tables are addressed the same way by digit.

use serde::Serialize;

use crate::codec::{
    CartesianIndex, Curve, DilationProfile, HilbertTables, LayoutSpec, LinearIndex, PeanoPattern,
    PeanoTables, EVEN_BITS_32, EVEN_BITS_64, ODD_BITS_32, ODD_BITS_64,
};
use crate::error::Result;

/// Tally of abstract operations consumed by one codec call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OpCounter {
    pub bit_ops: u64,
    pub int_ops: u64,
    pub table_lookups: u64,
}

impl std::ops::Add for OpCounter {
    type Output = OpCounter;

    fn add(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            bit_ops: self.bit_ops + rhs.bit_ops,
            int_ops: self.int_ops + rhs.int_ops,
            table_lookups: self.table_lookups + rhs.table_lookups,
        }
    }
}

/// Executes and tallies single operator applications.
#[derive(Debug, Default)]
struct Tally(OpCounter);

impl Tally {
    fn and(&mut self, a: u64, b: u64) -> u64 {
        self.0.bit_ops += 1;
        a & b
    }
    fn or(&mut self, a: u64, b: u64) -> u64 {
        self.0.bit_ops += 1;
        a | b
    }
    fn shl(&mut self, a: u64, k: u32) -> u64 {
        self.0.bit_ops += 1;
        a.checked_shl(k).unwrap_or(0)
    }
    fn shr(&mut self, a: u64, k: u32) -> u64 {
        self.0.bit_ops += 1;
        a.checked_shr(k).unwrap_or(0)
    }
    fn add(&mut self, a: u64, b: u64) -> u64 {
        self.0.int_ops += 1;
        a + b
    }
    fn sub(&mut self, a: u64, b: u64) -> u64 {
        self.0.int_ops += 1;
        a - b
    }
    fn mul(&mut self, a: u64, b: u64) -> u64 {
        self.0.int_ops += 1;
        a * b
    }
    fn div(&mut self, a: u64, b: u64) -> u64 {
        self.0.int_ops += 1;
        a / b
    }
    fn rem(&mut self, a: u64, b: u64) -> u64 {
        self.0.int_ops += 1;
        a % b
    }
    fn lookup<T: Copy>(&mut self, value: T) -> T {
        self.0.table_lookups += 1;
        value
    }

    /// Truncate to the profile's word: 32-bit arithmetic for `Paper16`.
    fn word(profile: DilationProfile, x: u64) -> u64 {
        match profile {
            DilationProfile::Paper16 => x & 0xFFFF_FFFF,
            DilationProfile::Wide32 => x,
        }
    }

    fn dilate(&mut self, t: u64, profile: DilationProfile) -> u64 {
        let stages: &[(u32, u64)] = match profile {
            DilationProfile::Paper16 => &[
                (8, 0x00FF_00FF),
                (4, 0x0F0F_0F0F),
                (2, 0x3333_3333),
                (1, 0x5555_5555),
            ],
            DilationProfile::Wide32 => &[
                (16, 0x0000_FFFF_0000_FFFF),
                (8, 0x00FF_00FF_00FF_00FF),
                (4, 0x0F0F_0F0F_0F0F_0F0F),
                (2, 0x3333_3333_3333_3333),
                (1, 0x5555_5555_5555_5555),
            ],
        };
        let mut r = t;
        for &(k, mask) in stages {
            let shifted = self.shl(r, k);
            let merged = self.or(r, shifted);
            r = self.and(merged, mask);
        }
        r
    }

    fn undilate(&mut self, t: u64, profile: DilationProfile) -> u64 {
        let stages: &[(u32, u64)] = match profile {
            DilationProfile::Paper16 => &[
                (1, 0x3333_3333),
                (2, 0x0F0F_0F0F),
                (4, 0x00FF_00FF),
                (8, 0x0000_FFFF),
            ],
            DilationProfile::Wide32 => &[
                (1, 0x3333_3333_3333_3333),
                (2, 0x0F0F_0F0F_0F0F_0F0F),
                (4, 0x00FF_00FF_00FF_00FF),
                (8, 0x0000_FFFF_0000_FFFF),
                (16, 0x0000_0000_FFFF_FFFF),
            ],
        };
        let mut r = t;
        for &(k, mask) in stages {
            let shifted = self.shr(r, k);
            let merged = self.or(r, shifted);
            r = self.and(merged, mask);
        }
        r
    }
}

fn masks(profile: DilationProfile) -> (u64, u64, u64) {
    match profile {
        DilationProfile::Paper16 => (EVEN_BITS_32 as u64, ODD_BITS_32 as u64, 0xFFFF_FFFF),
        DilationProfile::Wide32 => (EVEN_BITS_64, ODD_BITS_64, u64::MAX),
    }
}

fn encode_counted(spec: &LayoutSpec, i: u64, j: u64, t: &mut Tally) -> u64 {
    let p = spec.profile;
    match spec.curve {
        Curve::RowMajor => {
            let hi = t.shl(i, spec.m);
            t.or(hi, j)
        }
        Curve::Morton => {
            let di = t.dilate(i, p);
            let dj = t.dilate(j, p);
            let hi = t.shl(di, 1);
            t.or(hi, dj)
        }
        Curve::MortonHybrid => {
            let (_, _, ones) = masks(p);
            let beta = spec.beta;
            let one_shifted = t.shl(1, beta);
            let mu = t.sub(one_shifted, 1);
            let ir = t.and(i, mu);
            let high_i = Tally::word(p, t.shl(ones, beta));
            let im = t.and(i, high_i);
            let jr = t.and(j, mu);
            let high_j = Tally::word(p, t.shl(ones, beta));
            let jm = t.and(j, high_j);
            let dim = t.dilate(im, p);
            let djm = t.dilate(jm, p);
            let hi = t.shl(dim, 1);
            let morton = t.or(hi, djm);
            let row = t.shl(ir, beta);
            let z = t.or(morton, row);
            t.or(z, jr)
        }
        Curve::Hilbert => {
            let tables = &HilbertTables::STANDARD;
            let mut rho = spec.initial_pattern as usize;
            let mut z = 0;
            for s in (0..spec.m).rev() {
                let shifted_i = t.shr(i, s);
                let bi = t.and(shifted_i, 1) as usize;
                let shifted_j = t.shr(j, s);
                let bj = t.and(shifted_j, 1) as usize;
                let quadrant = 2 * bi + bj;
                let next = t.lookup(tables.t_p[rho][quadrant]);
                let bits = t.lookup(tables.t_v[rho][quadrant]) as u64;
                let zs = t.shl(z, 2);
                z = t.or(zs, bits);
                rho = next as usize;
            }
            z
        }
        Curve::Peano => {
            let tables = &PeanoTables::SERPENTINE;
            let mut rho = PeanoPattern::P as usize;
            let mut z = 0;
            let mut place = 3u64.pow(spec.m);
            for _ in 0..spec.m {
                place = t.div(place, 3);
                let qi = t.div(i, place);
                let a = t.rem(qi, 3) as usize;
                let qj = t.div(j, place);
                let b = t.rem(qj, 3) as usize;
                let ninth = 3 * a + b;
                let digit = t.lookup(tables.order[rho][ninth]) as u64;
                let next = t.lookup(tables.next_pattern[rho][ninth]);
                let zs = t.mul(z, 9);
                z = t.add(zs, digit);
                rho = next as usize;
            }
            z
        }
    }
}

fn decode_counted(spec: &LayoutSpec, z: u64, t: &mut Tally) -> (u64, u64) {
    let p = spec.profile;
    match spec.curve {
        Curve::RowMajor => {
            let i = t.shr(z, spec.m);
            let j = t.and(z, (1u64 << spec.m) - 1);
            (i, j)
        }
        Curve::Morton => {
            let (even, odd, _) = masks(p);
            let iz = t.and(z, even);
            let jz = t.and(z, odd);
            let iz = t.shr(iz, 1);
            (t.undilate(iz, p), t.undilate(jz, p))
        }
        Curve::MortonHybrid => {
            let (even, odd, _) = masks(p);
            let beta = spec.beta;
            let even_once = Tally::word(p, t.shl(even, beta));
            let even_mask = Tally::word(p, t.shl(even_once, beta));
            let odd_once = Tally::word(p, t.shl(odd, beta));
            let odd_mask = Tally::word(p, t.shl(odd_once, beta));
            let dim = t.and(z, even_mask);
            let djm = t.and(z, odd_mask);
            let dim = t.shr(dim, 1);
            let im = t.undilate(dim, p);
            let jm = t.undilate(djm, p);
            let one_shifted = t.shl(1, beta);
            let mu = t.sub(one_shifted, 1);
            let mu_row = t.shl(mu, beta);
            let ir = t.and(z, mu_row);
            let jr = t.and(z, mu);
            let ir = t.shr(ir, beta);
            (t.or(im, ir), t.or(jm, jr))
        }
        Curve::Hilbert => {
            let tables = &HilbertTables::STANDARD;
            let mut rho = spec.initial_pattern as usize;
            let (mut i, mut j) = (0, 0);
            for s in (0..spec.m).rev() {
                let zs = t.shr(z, 2 * s);
                let v = t.and(zs, 3) as usize;
                let next = t.lookup(tables.t_p_prime[rho][v]);
                let quadrant = t.lookup(tables.t_v_prime[rho][v]) as u64;
                let is = t.shl(i, 1);
                let bi = t.shr(quadrant, 1);
                i = t.or(is, bi);
                let js = t.shl(j, 1);
                let bj = t.and(quadrant, 1);
                j = t.or(js, bj);
                rho = next as usize;
            }
            (i, j)
        }
        Curve::Peano => {
            let tables = &PeanoTables::SERPENTINE;
            let mut rho = PeanoPattern::P as usize;
            let (mut i, mut j) = (0, 0);
            let mut place = 9u64.pow(spec.m);
            for _ in 0..spec.m {
                place = t.div(place, 9);
                let q = t.div(z, place);
                let d = t.rem(q, 9) as usize;
                let ninth = t.lookup(tables.order_inv[rho][d]) as u64;
                let next = t.lookup(tables.next_pattern_inv[rho][d]);
                let is = t.mul(i, 3);
                let a = t.div(ninth, 3);
                i = t.add(is, a);
                let js = t.mul(j, 3);
                let b = t.rem(ninth, 3);
                j = t.add(js, b);
                rho = next as usize;
            }
            (i, j)
        }
    }
}

/// Encode `idx` under `spec`, returning the index and the operations spent.
pub fn counted_encode(idx: CartesianIndex, spec: &LayoutSpec) -> Result<(LinearIndex, OpCounter)> {
    spec.validate()?;
    spec.check_cartesian(idx)?;
    let mut tally = Tally::default();
    let z = encode_counted(spec, idx.i, idx.j, &mut tally);
    Ok((LinearIndex(z), tally.0))
}

/// Decode `z` under `spec`, returning the coordinate and the operations spent.
pub fn counted_decode(z: LinearIndex, spec: &LayoutSpec) -> Result<(CartesianIndex, OpCounter)> {
    spec.validate()?;
    spec.check_linear(z)?;
    let mut tally = Tally::default();
    let (i, j) = decode_counted(spec, z.0, &mut tally);
    Ok((CartesianIndex { i, j }, tally.0))
}

/// One row of the per-layout conversion cost table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostRow {
    pub layout: String,
    pub m: u32,
    pub beta: u32,
    pub encode_bit_ops: u64,
    pub decode_bit_ops: u64,
    pub encode_lookups: u64,
    pub decode_lookups: u64,
    pub encode_int_ops: u64,
    pub decode_int_ops: u64,
}

/// Encode/decode operation counts for each spec. Counts do not depend on the
/// index for any layout, so the origin is measured.
pub fn report_counts(specs: &[LayoutSpec]) -> Result<Vec<CostRow>> {
    specs
        .iter()
        .map(|spec| {
            let (_, enc) = counted_encode(CartesianIndex::new(0, 0), spec)?;
            let (_, dec) = counted_decode(LinearIndex(0), spec)?;
            Ok(CostRow {
                layout: spec.curve.name().to_string(),
                m: spec.m,
                beta: if spec.curve == Curve::MortonHybrid {
                    spec.beta
                } else {
                    0
                },
                encode_bit_ops: enc.bit_ops,
                decode_bit_ops: dec.bit_ops,
                encode_lookups: enc.table_lookups,
                decode_lookups: dec.table_lookups,
                encode_int_ops: enc.int_ops,
                decode_int_ops: dec.int_ops,
            })
        })
        .collect()
}

/// Serialize cost rows as CSV with a header line.
pub fn write_counts_csv<W: std::io::Write>(rows: &[CostRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enc(spec: &LayoutSpec, i: u64, j: u64) -> OpCounter {
        counted_encode(CartesianIndex::new(i, j), spec).unwrap().1
    }

    fn dec(spec: &LayoutSpec, z: u64) -> OpCounter {
        counted_decode(LinearIndex(z), spec).unwrap().1
    }

    #[test]
    fn row_major_counts() {
        let spec = LayoutSpec::row_major(5).unwrap();
        assert_eq!(enc(&spec, 3, 17).bit_ops, 2);
        assert_eq!(dec(&spec, 99).bit_ops, 2);
        assert_eq!(enc(&spec, 3, 17).int_ops, 0);
    }

    #[test]
    fn morton_counts() {
        let spec = LayoutSpec::morton(8).unwrap();
        assert_eq!(
            enc(&spec, 200, 3),
            OpCounter {
                bit_ops: 26,
                ..Default::default()
            }
        );
        assert_eq!(
            dec(&spec, 12345),
            OpCounter {
                bit_ops: 27,
                ..Default::default()
            }
        );
    }

    #[test]
    fn hybrid_counts() {
        let spec = LayoutSpec::morton_hybrid(6, 4).unwrap();
        assert_eq!(enc(&spec, 20, 6).bit_ops, 36);
        assert_eq!(dec(&spec, 582).bit_ops, 38);
    }

    #[test]
    fn hilbert_counts_per_iteration() {
        let spec = LayoutSpec::hilbert(3).unwrap();
        let e = enc(&spec, 4, 6);
        assert_eq!((e.bit_ops, e.table_lookups), (18, 6));
        let d = dec(&spec, 46);
        assert_eq!((d.bit_ops, d.table_lookups), (24, 6));
    }

    #[test]
    fn peano_uses_integer_ops_only() {
        let spec = LayoutSpec::peano(3).unwrap();
        let e = enc(&spec, 4, 6);
        assert_eq!(e.bit_ops, 0);
        assert_eq!(e.int_ops, 7 * 3);
        assert_eq!(e.table_lookups, 2 * 3);
        let d = dec(&spec, 46);
        assert_eq!(d.int_ops, 9 * 3);
        assert_eq!(d.table_lookups, 2 * 3);
    }

    #[test]
    fn wide_profile_adds_a_stage() {
        let spec = LayoutSpec::morton(8)
            .unwrap()
            .with_profile(DilationProfile::Wide32)
            .unwrap();
        assert_eq!(enc(&spec, 1, 1).bit_ops, 2 * 15 + 2);
        assert_eq!(dec(&spec, 3).bit_ops, 2 * 15 + 3);
    }

    #[test]
    fn report_rows() {
        let specs = [
            LayoutSpec::morton(10).unwrap(),
            LayoutSpec::morton_hybrid(10, 4).unwrap(),
            LayoutSpec::row_major(10).unwrap(),
            LayoutSpec::hilbert(10).unwrap(),
        ];
        let rows = report_counts(&specs).unwrap();
        let triple = |r: &CostRow| (r.encode_bit_ops, r.decode_bit_ops, r.encode_lookups);
        assert_eq!(triple(&rows[0]), (26, 27, 0));
        assert_eq!(triple(&rows[1]), (36, 38, 0));
        assert_eq!(triple(&rows[2]), (2, 2, 0));
        assert_eq!(rows[3].encode_lookups, 20);
        let mut buf = Vec::new();
        write_counts_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "layout,m,beta,encode_bit_ops,decode_bit_ops,encode_lookups,decode_lookups,encode_int_ops,decode_int_ops\n"
        ));
        assert!(text.contains("morton-hybrid,10,4,36,38,0,0,1,1\n"));
    }
}
