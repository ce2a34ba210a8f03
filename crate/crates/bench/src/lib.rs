//! Criterion benchmarks for the covariance and optimisation paths; see `benches/`.
