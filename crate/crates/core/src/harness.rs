//! Row-major vs. curve-layout TU benchmark sweep.
//!
//! Every `(n, trial)` group decomposes one seeded matrix under each planned
//! layout. Only `tu_decompose` is timed. Within a group all records must
//! agree on rank and eliminated-matrix checksum, otherwise the run stops with
//! [`Error::Correctness`].

use std::io::Write;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::codec::{Curve, LayoutSpec};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::LayoutMatrix;
use crate::rng::random_entries;
use crate::tu::{tu_decompose, TuOptions};

pub const CSV_HEADER: &str = "layout,n,t,trial,seed,wall_time_s,rank,checksum";

pub const DESK_SIZES: [usize; 5] = [128, 256, 512, 1024, 2048];
pub const DESK_TRUNCATIONS: [usize; 4] = [16, 32, 64, 128];
pub const FULL_SIZES: [usize; 7] = [128, 256, 512, 1024, 2048, 4096, 8192];
pub const FULL_TRUNCATIONS: [usize; 5] = [16, 32, 64, 128, 256];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    /// Morton-hybrid block sides; each one is also that row's TU threshold.
    pub truncations: Vec<usize>,
    pub layouts: Vec<Curve>,
    pub modulus: u32,
    pub seed: u64,
    pub trials: usize,
    /// TU threshold for layouts without a truncation size.
    pub threshold: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: DESK_SIZES.to_vec(),
            truncations: DESK_TRUNCATIONS.to_vec(),
            layouts: vec![Curve::RowMajor, Curve::MortonHybrid],
            modulus: 2,
            seed: 0,
            trials: 1,
            threshold: 32,
        }
    }
}

/// One planned decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchCell {
    pub spec: LayoutSpec,
    pub n: usize,
    /// Truncation size, 0 for layouts without one.
    pub t: usize,
    pub trial: usize,
    pub threshold: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub layout: String,
    pub n: usize,
    pub t: usize,
    pub trial: usize,
    pub seed: u64,
    pub wall_time_s: f64,
    pub rank: usize,
    #[serde(serialize_with = "hex16")]
    pub checksum: u64,
}

fn hex16<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:016x}"))
}

fn log2_exact(x: usize, what: &str) -> Result<u32> {
    if x == 0 || !x.is_power_of_two() {
        return Err(Error::Spec(format!("{what} {x} is not a power of two")));
    }
    Ok(x.trailing_zeros())
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Spec("trials must be at least 1".into()));
        }
        PrimeField::new(self.modulus)?;
        for &n in &self.sizes {
            log2_exact(n, "size")?;
        }
        for &t in &self.truncations {
            log2_exact(t, "truncation size")?;
        }
        log2_exact(self.threshold, "threshold")?;
        if let Some(c) = self.layouts.iter().find(|c| c.is_ternary()) {
            return Err(Error::Spec(format!(
                "{} layout has no power-of-two side",
                c.name()
            )));
        }
        Ok(())
    }

    /// Seed of trial `k`.
    pub fn trial_seed(&self, trial: usize) -> u64 {
        self.seed.wrapping_add(trial as u64)
    }

    /// Cells in execution order: by size, then trial, then layout. Pairs with
    /// `t > n` are skipped.
    pub fn plan(&self) -> Result<Vec<BenchCell>> {
        self.validate()?;
        let mut cells = Vec::new();
        for &n in &self.sizes {
            let m = log2_exact(n, "size")?;
            for trial in 0..self.trials {
                for &curve in &self.layouts {
                    if curve == Curve::MortonHybrid {
                        for &t in self.truncations.iter().filter(|&&t| t <= n) {
                            let spec = LayoutSpec::morton_hybrid(m, t.trailing_zeros())?;
                            cells.push(BenchCell {
                                spec,
                                n,
                                t,
                                trial,
                                threshold: t,
                            });
                        }
                    } else {
                        let spec = match curve {
                            Curve::RowMajor => LayoutSpec::row_major(m)?,
                            Curve::Morton => LayoutSpec::morton(m)?,
                            Curve::Hilbert => LayoutSpec::hilbert(m)?,
                            _ => unreachable!("rejected by validate"),
                        };
                        cells.push(BenchCell {
                            spec,
                            n,
                            t: 0,
                            trial,
                            threshold: self.threshold.min(n),
                        });
                    }
                }
            }
        }
        Ok(cells)
    }
}

/// Run the sweep, handing each record to `sink` as soon as its group has
/// passed the checksum gate.
pub fn run_with(
    config: &BenchConfig,
    mut sink: impl FnMut(&BenchRecord) -> Result<()>,
) -> Result<Vec<BenchRecord>> {
    let cells = config.plan()?;
    let field = PrimeField::new(config.modulus)?;
    let mut out = Vec::with_capacity(cells.len());
    let mut start = 0;
    while start < cells.len() {
        let (n, trial) = (cells[start].n, cells[start].trial);
        let end = start
            + cells[start..]
                .iter()
                .take_while(|c| c.n == n && c.trial == trial)
                .count();
        let seed = config.trial_seed(trial);
        let entries = random_entries(n, field, seed)?;
        let mut group = Vec::with_capacity(end - start);
        for cell in &cells[start..end] {
            let matrix = LayoutMatrix::from_dense(cell.spec, field, &entries)?;
            let opts = TuOptions::new(cell.threshold).without_log();
            let clock = Instant::now();
            let res = tu_decompose(matrix, opts)?;
            let wall_time_s = clock.elapsed().as_secs_f64();
            group.push(BenchRecord {
                layout: cell.spec.curve.name().to_string(),
                n,
                t: cell.t,
                trial,
                seed,
                wall_time_s,
                rank: res.rank,
                checksum: res.eliminated.checksum(),
            });
        }
        check_group(&group)?;
        for rec in &group {
            sink(rec)?;
        }
        out.extend(group);
        start = end;
    }
    Ok(out)
}

pub fn run(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    run_with(config, |_| Ok(()))
}

fn check_group(group: &[BenchRecord]) -> Result<()> {
    let Some(first) = group.first() else {
        return Ok(());
    };
    for rec in &group[1..] {
        if rec.rank != first.rank || rec.checksum != first.checksum {
            return Err(Error::Correctness(format!(
                "n={} trial={}: {} t={} gave rank {} checksum {:016x}, {} t={} gave rank {} checksum {:016x}",
                first.n,
                first.trial,
                first.layout,
                first.t,
                first.rank,
                first.checksum,
                rec.layout,
                rec.t,
                rec.rank,
                rec.checksum
            )));
        }
    }
    Ok(())
}

/// CSV writer that always emits the header, even for zero records.
pub struct RecordWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut inner = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(out);
        inner.write_record(CSV_HEADER.split(','))?;
        Ok(RecordWriter { inner })
    }

    pub fn write(&mut self, rec: &BenchRecord) -> Result<()> {
        self.inner.serialize(rec)?;
        self.inner.flush()?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = RecordWriter::new(out)?;
    for rec in records {
        w.write(rec)?;
    }
    w.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchConfig {
        BenchConfig {
            sizes: vec![16, 32],
            truncations: vec![4, 8, 64],
            layouts: vec![Curve::RowMajor, Curve::MortonHybrid, Curve::Hilbert],
            modulus: 2,
            seed: 5,
            trials: 2,
            threshold: 8,
        }
    }

    #[test]
    fn plan_skips_oversized_truncations() {
        let cells = small().plan().unwrap();
        assert_eq!(cells.len(), 2 * 2 * 4);
        assert!(cells.iter().all(|c| c.t <= c.n));
        assert!(cells
            .iter()
            .filter(|c| c.spec.curve != Curve::MortonHybrid)
            .all(|c| c.t == 0));
        let mh: Vec<_> = cells
            .iter()
            .filter(|c| c.spec.curve == Curve::MortonHybrid)
            .collect();
        assert!(mh
            .iter()
            .all(|c| c.threshold == c.t && c.spec.block() == c.t as u64));
    }

    #[test]
    fn full_sweep_shape() {
        let cfg = BenchConfig {
            sizes: vec![256, 512, 1024, 2048, 4096, 8192, 16384],
            truncations: FULL_TRUNCATIONS.to_vec(),
            ..BenchConfig::default()
        };
        let cells = cfg.plan().unwrap();
        let mh = cells
            .iter()
            .filter(|c| c.spec.curve == Curve::MortonHybrid)
            .count();
        let rm = cells
            .iter()
            .filter(|c| c.spec.curve == Curve::RowMajor)
            .count();
        assert_eq!((mh, rm), (35, 7));

        let cfg = BenchConfig {
            sizes: FULL_SIZES.to_vec(),
            truncations: FULL_TRUNCATIONS.to_vec(),
            ..BenchConfig::default()
        };
        let cells = cfg.plan().unwrap();
        assert_eq!(cells.len(), 34 + 7);
    }

    #[test]
    fn records_agree() {
        let recs = run(&small()).unwrap();
        assert_eq!(recs.len(), 16);
        for group in recs.chunks(4) {
            assert!(group
                .iter()
                .all(|r| r.checksum == group[0].checksum && r.rank == group[0].rank));
            assert!(group.iter().all(|r| r.seed == 5 + r.trial as u64));
        }
    }

    #[test]
    fn empty_layouts_header_only() {
        let cfg = BenchConfig {
            layouts: vec![],
            ..small()
        };
        let recs = run(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn csv_row_format() {
        let rec = BenchRecord {
            layout: "morton-hybrid".into(),
            n: 256,
            t: 32,
            trial: 0,
            seed: 7,
            wall_time_s: 0.5,
            rank: 255,
            checksum: 0xabc,
        };
        let mut buf = Vec::new();
        write_csv(&[rec], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            format!("{CSV_HEADER}\nmorton-hybrid,256,32,0,7,0.5,255,0000000000000abc\n")
        );
    }

    #[test]
    fn divergence_is_a_correctness_error() {
        let mut a = BenchRecord {
            layout: "row-major".into(),
            n: 8,
            t: 0,
            trial: 0,
            seed: 0,
            wall_time_s: 0.0,
            rank: 3,
            checksum: 1,
        };
        let mut b = a.clone();
        b.checksum = 2;
        assert!(matches!(
            check_group(&[a.clone(), b]),
            Err(Error::Correctness(_))
        ));
        a.layout = "hilbert".into();
        assert!(check_group(&[a.clone(), a]).is_ok());
    }

    #[test]
    fn invalid_configs() {
        for cfg in [
            BenchConfig {
                trials: 0,
                ..small()
            },
            BenchConfig {
                sizes: vec![12],
                ..small()
            },
            BenchConfig {
                truncations: vec![3],
                ..small()
            },
            BenchConfig {
                modulus: 4,
                ..small()
            },
            BenchConfig {
                layouts: vec![Curve::Peano],
                ..small()
            },
        ] {
            assert!(cfg.plan().is_err(), "{cfg:?}");
        }
    }
}
