//! Criterion benchmarks for `cfqmc`; see `benches/`.
