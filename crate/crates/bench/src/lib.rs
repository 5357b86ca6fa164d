//! Fixed instance sets for the benchmarks.

use superstring::harness::{generate, Family, GenSpec, Span};
use superstring::Instance;

/// `count` random instances with exactly `m` words of length 6..12 over four letters.
/// Generation may drop substring words, so some instances come out smaller.
pub fn random_instances(m: usize, count: usize, seed: u64) -> Vec<Instance> {
    let spec = GenSpec {
        family: Family::Random,
        m: Span::new(m, m),
        len: Span::new(6, 12),
        alphabet: Span::new(4, 4),
        count,
        seed,
        ..Default::default()
    };
    generate(&spec)
        .expect("valid spec")
        .into_iter()
        .map(|g| g.instance)
        .collect()
}

/// Overlapping reads of length `read` cut from a random genome of length `genome`.
pub fn fragments(genome: usize, read: usize, count: usize, seed: u64) -> Vec<Instance> {
    let spec = GenSpec {
        family: Family::Fragments,
        genome,
        len: Span::new(read, read),
        alphabet: Span::new(4, 4),
        m: Span::new(genome / 2, genome / 2),
        count,
        seed,
        ..Default::default()
    };
    generate(&spec)
        .expect("valid spec")
        .into_iter()
        .map(|g| g.instance)
        .collect()
}
