//! Benchmark-only crate. See the `benches/` directory.
