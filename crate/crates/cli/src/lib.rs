//! Argument handling and subcommand bodies for the `sfclab` binary.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sfclab_core::cost::write_counts_csv;
use sfclab_core::harness::{self, BenchConfig, RecordWriter, FULL_SIZES, FULL_TRUNCATIONS};
use sfclab_core::matrix::MatrixFile;
use sfclab_core::rng::random_file;
use sfclab_core::{
    counted_decode, counted_encode, report_counts, tu_decompose, CartesianIndex, Curve,
    DilationProfile, HilbertPattern, LayoutSpec, LinearIndex, OpCounter, PrimeField, TuOptions,
};

/// Largest side `map` will print.
pub const MAP_MAX_SIDE: u64 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sfclab_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(sfclab_core::Error::Correctness(_)) => 3,
            CliError::Core(sfclab_core::Error::Io(_))
            | CliError::Core(sfclab_core::Error::Csv(_))
            | CliError::Io(_) => 1,
            CliError::Core(_) | CliError::Usage(_) => 2,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "sfclab",
    version,
    about = "Space-filling-curve matrix layout laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartesian (i, j) to linear index
    Encode {
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        j: u64,
        /// Also print the operation counts
        #[arg(long)]
        count: bool,
    },
    /// Linear index to Cartesian (i, j)
    Decode {
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(long)]
        z: u64,
        #[arg(long)]
        count: bool,
    },
    /// Print the n x n grid of linear indices
    Map {
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(long)]
        csv: bool,
    },
    /// Write a seeded random matrix file
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Row-major vs. curve-layout TU benchmark sweep, CSV output
    Bench(BenchArgs),
    /// Operation-count table, CSV output
    Counts {
        /// Comma-separated layouts
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "row-major,hilbert,peano,morton,morton-hybrid"
        )]
        layouts: Vec<Curve>,
        #[arg(long, default_value_t = 10)]
        m: u32,
        /// Block exponent for morton-hybrid
        #[arg(long, default_value_t = 4)]
        beta: u32,
        #[arg(long, default_value = "paper16")]
        profile: DilationProfile,
    },
    /// TU-decompose a matrix file and print its rank
    Tu {
        input: PathBuf,
        #[arg(long, default_value = "row-major")]
        layout: Curve,
        /// Morton-hybrid block side
        #[arg(long)]
        t: Option<u64>,
        /// Elimination threshold; defaults to the block side or 32
        #[arg(long)]
        threshold: Option<usize>,
        /// Write the transform log to this path
        #[arg(long)]
        log: Option<PathBuf>,
        /// Write the eliminated matrix to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    #[arg(long)]
    pub layout: Curve,
    /// Side exponent: n = 2^m, or 3^m for peano
    #[arg(long)]
    pub m: u32,
    /// Morton-hybrid block side T
    #[arg(long, conflicts_with = "beta")]
    pub t: Option<u64>,
    /// Morton-hybrid block exponent, T = 2^beta
    #[arg(long)]
    pub beta: Option<u32>,
    #[arg(long, default_value = "paper16")]
    pub profile: DilationProfile,
    /// Hilbert start pattern
    #[arg(long, default_value = "U")]
    pub start: HilbertPattern,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated side lengths
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Comma-separated morton-hybrid truncation sizes
    #[arg(long, value_delimiter = ',')]
    pub truncations: Option<Vec<usize>>,
    /// Comma-separated layouts; pass an empty string for none
    #[arg(long, value_delimiter = ',')]
    pub layouts: Option<Vec<String>>,
    /// Sizes 128..8192 and truncations 16..256 unless overridden
    #[arg(long)]
    pub full_sweep: bool,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Threshold for layouts without a truncation size
    #[arg(long, default_value_t = 32)]
    pub threshold: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn block_exponent(t: u64) -> CliResult<u32> {
    if t == 0 || !t.is_power_of_two() {
        return Err(CliError::Usage(format!(
            "block side {t} is not a power of two"
        )));
    }
    Ok(t.trailing_zeros())
}

impl LayoutArgs {
    pub fn spec(&self) -> CliResult<LayoutSpec> {
        let beta = match (self.t, self.beta) {
            (Some(t), _) => Some(block_exponent(t)?),
            (None, b) => b,
        };
        if beta.is_some() && self.layout != Curve::MortonHybrid {
            return Err(CliError::Usage(
                "--t/--beta only apply to morton-hybrid".into(),
            ));
        }
        let spec = LayoutSpec {
            curve: self.layout,
            m: self.m,
            beta: beta.unwrap_or(0),
            initial_pattern: self.start,
            profile: self.profile,
        };
        if self.layout == Curve::MortonHybrid && beta.is_none() {
            return Err(CliError::Usage("morton-hybrid needs --t or --beta".into()));
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn counts_line(c: &OpCounter) -> String {
    format!(
        "bit_ops={} int_ops={} table_lookups={}",
        c.bit_ops, c.int_ops, c.table_lookups
    )
}

fn open_out(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn run(cli: Cli) -> CliResult {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Encode {
            layout,
            i,
            j,
            count,
        } => {
            let spec = layout.spec()?;
            let (z, ops) = counted_encode(CartesianIndex::new(i, j), &spec)?;
            writeln!(out, "{}", z.0)?;
            if count {
                writeln!(out, "{}", counts_line(&ops))?;
            }
        }
        Command::Decode { layout, z, count } => {
            let spec = layout.spec()?;
            let (idx, ops) = counted_decode(LinearIndex(z), &spec)?;
            writeln!(out, "{} {}", idx.i, idx.j)?;
            if count {
                writeln!(out, "{}", counts_line(&ops))?;
            }
        }
        Command::Map { layout, csv } => {
            let spec = layout.spec()?;
            cmd_map(&spec, csv, &mut out)?;
        }
        Command::Gen {
            n,
            p,
            seed,
            out: path,
        } => {
            let field = PrimeField::new(p)?;
            let file = random_file(n, field, seed)?;
            let mut w = open_out(&path)?;
            file.write(&mut w)?;
        }
        Command::Bench(args) => cmd_bench(args)?,
        Command::Counts {
            layouts,
            m,
            beta,
            profile,
        } => {
            let specs = layouts
                .iter()
                .map(|&curve| {
                    let spec = LayoutSpec {
                        curve,
                        m,
                        beta: if curve == Curve::MortonHybrid {
                            beta
                        } else {
                            0
                        },
                        profile,
                        ..LayoutSpec::row_major(0)?
                    };
                    spec.validate()?;
                    Ok(spec)
                })
                .collect::<sfclab_core::Result<Vec<_>>>()?;
            write_counts_csv(&report_counts(&specs)?, &mut out)?;
        }
        Command::Tu {
            input,
            layout,
            t,
            threshold,
            log,
            out: path,
        } => {
            let file = MatrixFile::read(BufReader::new(File::open(&input)?))?;
            let n = file.n as u64;
            if n == 0 || !n.is_power_of_two() {
                return Err(CliError::Usage(format!("side {n} is not a power of two")));
            }
            let m = n.trailing_zeros();
            let spec = match (layout, t) {
                (Curve::MortonHybrid, Some(t)) => LayoutSpec::morton_hybrid(m, block_exponent(t)?)?,
                (Curve::MortonHybrid, None) => {
                    return Err(CliError::Usage("morton-hybrid needs --t".into()))
                }
                (_, Some(_)) => {
                    return Err(CliError::Usage("--t only applies to morton-hybrid".into()))
                }
                (Curve::RowMajor, None) => LayoutSpec::row_major(m)?,
                (Curve::Morton, None) => LayoutSpec::morton(m)?,
                (Curve::Hilbert, None) => LayoutSpec::hilbert(m)?,
                (Curve::Peano, None) => {
                    return Err(CliError::Usage("peano sides are powers of three".into()))
                }
            };
            let threshold =
                threshold.unwrap_or_else(|| t.map_or(32.min(n as usize), |t| t as usize));
            let matrix = file.into_matrix(spec)?;
            let opts = TuOptions {
                threshold,
                record_log: log.is_some(),
            };
            let res = tu_decompose(matrix, opts)?;
            writeln!(
                out,
                "rank={} n={} layout={} threshold={}",
                res.rank, n, spec, threshold
            )?;
            if let Some(p) = log {
                let mut w = BufWriter::new(File::create(p)?);
                write!(w, "{}", res.log)?;
                w.flush()?;
            }
            if let Some(p) = path {
                res.eliminated
                    .write_text(BufWriter::new(File::create(p)?))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn cmd_map<W: Write>(spec: &LayoutSpec, csv: bool, out: &mut W) -> CliResult {
    let n = spec.side();
    if n > MAP_MAX_SIDE {
        return Err(sfclab_core::Error::TooLarge(format!(
            "map prints at most {MAP_MAX_SIDE}x{MAP_MAX_SIDE}, side is {n}"
        ))
        .into());
    }
    let width = (spec.len().saturating_sub(1)).to_string().len();
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| {
                let z = spec.encode_unchecked(i, j);
                if csv {
                    z.to_string()
                } else {
                    format!("{z:>width$}")
                }
            })
            .collect();
        writeln!(out, "{}", row.join(if csv { "," } else { " " }))?;
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> CliResult {
    let mut config = BenchConfig::default();
    if args.full_sweep {
        config.sizes = FULL_SIZES.to_vec();
        config.truncations = FULL_TRUNCATIONS.to_vec();
    }
    if let Some(s) = args.sizes {
        config.sizes = s;
    }
    if let Some(t) = args.truncations {
        config.truncations = t;
    }
    if let Some(l) = args.layouts {
        config.layouts = l
            .iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse())
            .collect::<sfclab_core::Result<Vec<Curve>>>()?;
    }
    config.modulus = args.p;
    config.seed = args.seed;
    config.trials = args.trials;
    config.threshold = args.threshold;
    let cells = config.plan()?;
    eprintln!("bench: {} decompositions", cells.len());

    let mut writer = RecordWriter::new(open_out(&args.out)?)?;
    let records = harness::run_with(&config, |rec| {
        eprintln!(
            "bench: {} n={} t={} trial={} rank={} {:.3}s",
            rec.layout, rec.n, rec.t, rec.trial, rec.rank, rec.wall_time_s
        );
        writer.write(rec)
    })?;
    writer.finish()?;

    // timing summary: reported, never asserted
    for &n in &config.sizes {
        let row: Vec<_> = records
            .iter()
            .filter(|r| r.n == n && r.layout == Curve::RowMajor.name())
            .collect();
        let best = records
            .iter()
            .filter(|r| r.n == n && r.layout == Curve::MortonHybrid.name())
            .min_by(|a, b| a.wall_time_s.total_cmp(&b.wall_time_s));
        if let (Some(rm), Some(mh)) = (row.first(), best) {
            eprintln!(
                "summary: n={n} row-major {:.3}s, best morton-hybrid t={} {:.3}s ({:.2}x)",
                rm.wall_time_s,
                mh.t,
                mh.wall_time_s,
                rm.wall_time_s / mh.wall_time_s.max(f64::MIN_POSITIVE)
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(layout: Curve, t: Option<u64>, beta: Option<u32>) -> LayoutArgs {
        LayoutArgs {
            layout,
            m: 6,
            t,
            beta,
            profile: DilationProfile::Paper16,
            start: HilbertPattern::U,
        }
    }

    #[test]
    fn block_side_becomes_beta() {
        assert_eq!(
            args(Curve::MortonHybrid, Some(16), None)
                .spec()
                .unwrap()
                .beta,
            4
        );
        assert_eq!(
            args(Curve::MortonHybrid, None, Some(2))
                .spec()
                .unwrap()
                .beta,
            2
        );
        assert!(args(Curve::MortonHybrid, Some(12), None).spec().is_err());
        assert!(args(Curve::MortonHybrid, None, None).spec().is_err());
        assert!(args(Curve::Hilbert, Some(4), None).spec().is_err());
    }

    #[test]
    fn exit_codes() {
        let correctness = CliError::Core(sfclab_core::Error::Correctness("x".into()));
        assert_eq!(correctness.exit_code(), 3);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Core(sfclab_core::Error::Spec("x".into())).exit_code(),
            2
        );
        assert_eq!(CliError::Io(io::Error::other("x")).exit_code(), 1);
    }

    #[test]
    fn map_cap() {
        let mut buf = Vec::new();
        assert!(cmd_map(&LayoutSpec::row_major(7).unwrap(), false, &mut buf).is_err());
        cmd_map(&LayoutSpec::row_major(1).unwrap(), false, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 1\n2 3\n");
    }
}
