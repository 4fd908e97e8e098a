//! Criterion benchmarks for the synthesis routines; see `benches/`.
