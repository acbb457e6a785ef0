//! Criterion benchmarks for the codecs and the TU kernel; see `benches/`.
