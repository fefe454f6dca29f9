//! Shared setup for the criterion benchmarks.

use pathtower::{GenConfig, Path, PathGen};

/// A deterministic mixed-depth corpus for throughput measurements.
pub fn bench_corpus(seed: u64, depth: usize, count: usize) -> Vec<Path> {
    let cfg = GenConfig {
        seed,
        max_path_depth: depth,
        ..GenConfig::default()
    };
    PathGen::new(&cfg).corpus(count)
}
