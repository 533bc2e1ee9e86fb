//! Criterion benchmarks for the core engine live in `benches/engine.rs`.
