//! Benchmarks of the verification engine live under `benches/`.
