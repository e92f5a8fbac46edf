//! Criterion benchmarks for `qcorr-core`; see `benches/`.
