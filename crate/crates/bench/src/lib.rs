//! Benchmark-only crate; see `benches/ops.rs`.
