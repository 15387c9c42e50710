//! Criterion benchmarks for the tube library live under `benches/`.
