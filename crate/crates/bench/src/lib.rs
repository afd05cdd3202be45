//! Criterion benchmarks for apncert-core; see `benches/`. Run with
//! `cargo bench -p apncert-bench`.
