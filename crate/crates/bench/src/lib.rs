//! Criterion benchmarks for `isochrone`; see `benches/orbits.rs`.
