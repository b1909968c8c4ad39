//! Criterion benchmarks for the `coexist` crate live in `benches/`.
