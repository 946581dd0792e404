//! Criterion benchmarks for the contextuality lab; see `benches/pipeline.rs`.
