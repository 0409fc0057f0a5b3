//! Criterion benchmarks for the verification library; see `benches/verify.rs`.
