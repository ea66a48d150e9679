//! Criterion benchmarks for the goodint library; see `benches/sweeps.rs`.
