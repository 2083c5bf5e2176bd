//! Criterion benchmarks for the wedge solver; see `benches/`.
