//! Criterion benchmarks for `truncexp`; run with `cargo bench -p truncexp-bench`.
