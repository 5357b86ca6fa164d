//! Seeded instance generators.
//!
//! All randomness comes from SplitMix64: the state `x` advances by
//! `0x9E3779B97F4A7C15` (wrapping) and each output is `x` mixed by
//! `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31`.
//! The master generator starts in state `seed`; instance `i` uses a fresh
//! generator whose state is the master's `i`-th output. A value below `n`
//! is `(next * n) >> 64` over 128 bits. These three rules are enough to
//! reproduce every instance in another language.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strings::{period, reduce_substring_free, Instance, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Words of iid symbols.
    Random,
    /// `{ab^k, b^{k+1}, b^k a}`: GREEDY is optimal or twice optimal depending on ties.
    Tarhio,
    /// `{c(ab)^k, (ba)^k, (ab)^k c}`: GREEDY approaches twice optimal.
    Blum,
    /// Substrings of powers of short random bases, longer than twice the base.
    Periodic,
    /// Reads sampled from one random genome.
    Fragments,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Random,
        Family::Tarhio,
        Family::Blum,
        Family::Periodic,
        Family::Fragments,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Tarhio => "tarhio",
            Family::Blum => "blum",
            Family::Periodic => "periodic",
            Family::Fragments => "fragments",
        }
    }

    /// One instance per family parameter `k` instead of `count` samples.
    pub fn is_parametric(self) -> bool {
        matches!(self, Family::Tarhio | Family::Blum)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidGenSpec(format!("unknown family `{s}`")))
    }
}

/// An inclusive `lo..hi` range written as `N` or `LO..HI`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub const fn new(lo: usize, hi: usize) -> Self {
        Span { lo, hi }
    }

    pub fn range(self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

impl FromStr for Span {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGenSpec(format!("bad range `{s}`, expected N or LO..HI"));
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let span = match s.split_once("..") {
            Some((lo, hi)) => Span::new(num(lo)?, num(hi.trim_start_matches('='))?),
            None => {
                let n = num(s)?;
                Span::new(n, n)
            }
        };
        if span.lo > span.hi {
            return Err(bad());
        }
        Ok(span)
    }
}

/// Everything needed to reproduce a batch of instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    /// Words per instance (random, periodic, fragments).
    pub m: Span,
    /// Word length range.
    pub len: Span,
    /// Alphabet size; symbols are `a`, `b`, ….
    pub alphabet: Span,
    /// Family parameter (tarhio, blum).
    pub k: Span,
    /// Base length range (periodic).
    pub base: Span,
    /// Number of distinct bases per instance (periodic).
    pub groups: Span,
    /// Genome length (fragments).
    pub genome: usize,
    pub count: usize,
    pub seed: u64,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            family: Family::Random,
            m: Span::new(2, 8),
            len: Span::new(2, 9),
            alphabet: Span::new(2, 4),
            k: Span::new(2, 8),
            base: Span::new(2, 4),
            groups: Span::new(1, 2),
            genome: 40,
            count: 1,
            seed: 0,
        }
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidGenSpec(msg.to_string()));
        if self.m.lo == 0 {
            return bad("--m must be at least 1");
        }
        if self.len.lo == 0 {
            return bad("word lengths must be at least 1");
        }
        if self.alphabet.lo == 0 || self.alphabet.hi > 26 {
            return bad("alphabet size must be in 1..26");
        }
        if self.family.is_parametric() && self.k.lo == 0 {
            return bad("family parameter k must be at least 1");
        }
        if self.family == Family::Periodic && (self.base.lo == 0 || self.groups.lo == 0) {
            return bad("base length and group count must be at least 1");
        }
        if self.family == Family::Fragments && self.genome < self.len.lo {
            return bad("genome is shorter than the shortest fragment");
        }
        if !self.family.is_parametric() && self.count == 0 {
            return bad("--count must be at least 1");
        }
        Ok(())
    }

    /// Number of instances [`generate`] produces.
    pub fn instances(&self) -> usize {
        if self.family.is_parametric() {
            self.k.hi - self.k.lo + 1
        } else {
            self.count
        }
    }
}

/// Uniform draws from a SplitMix64 stream.
pub struct Draw(SplitMix64);

impl Draw {
    pub fn new(seed: u64) -> Self {
        Draw(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n`; `n > 0`.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn within(&mut self, s: Span) -> usize {
        s.lo + self.below(s.hi - s.lo + 1)
    }

    fn word(&mut self, len: usize, alphabet: usize) -> Vec<u8> {
        (0..len).map(|_| b'a' + self.below(alphabet) as u8).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub index: usize,
    /// Seed of this instance's own stream.
    pub seed: u64,
    /// Family parameter, for tarhio and blum.
    pub k: Option<usize>,
    pub instance: Instance,
    /// Words dropped by the substring-free reduction.
    pub dropped: usize,
}

pub fn tarhio(k: usize) -> Result<Instance> {
    if k == 0 {
        return Err(Error::InvalidGenSpec("k must be at least 1".into()));
    }
    let b = "b".repeat(k);
    Instance::from_strs(&[format!("a{b}"), format!("{b}b"), format!("{b}a")])
}

pub fn blum(k: usize) -> Result<Instance> {
    if k == 0 {
        return Err(Error::InvalidGenSpec("k must be at least 1".into()));
    }
    let (ab, ba) = ("ab".repeat(k), "ba".repeat(k));
    Instance::from_strs(&[format!("c{ab}"), ba, format!("{ab}c")])
}

fn primitive_base(d: &mut Draw, len: usize, alphabet: usize) -> Result<Vec<u8>> {
    for _ in 0..1000 {
        let x = d.word(len, alphabet);
        let p = period(&x);
        if !len.is_multiple_of(p) || p == len {
            return Ok(x);
        }
    }
    Err(Error::InvalidGenSpec(format!(
        "no primitive base of length {len} over {alphabet} symbols"
    )))
}

fn sample(spec: &GenSpec, d: &mut Draw) -> Result<Vec<Word>> {
    let alphabet = d.within(spec.alphabet);
    let m = d.within(spec.m);
    let words: Vec<Vec<u8>> = match spec.family {
        Family::Random => (0..m)
            .map(|_| {
                let len = d.within(spec.len);
                d.word(len, alphabet)
            })
            .collect(),
        Family::Periodic => {
            let groups = d.within(spec.groups).min(m);
            let mut bases = Vec::with_capacity(groups);
            for _ in 0..groups {
                let b = d.within(spec.base);
                bases.push(primitive_base(d, b, alphabet)?);
            }
            (0..m)
                .map(|i| {
                    let x = &bases[i % groups];
                    // longer than twice the base
                    let lo = spec.len.lo.max(2 * x.len() + 1);
                    let hi = spec.len.hi.max(lo);
                    let len = d.within(Span::new(lo, hi));
                    let start = d.below(x.len());
                    (0..len).map(|j| x[(start + j) % x.len()]).collect()
                })
                .collect()
        }
        Family::Fragments => {
            let genome = d.word(spec.genome, alphabet);
            (0..m)
                .map(|_| {
                    let len = d.within(Span::new(spec.len.lo, spec.len.hi.min(spec.genome)));
                    let start = d.below(spec.genome - len + 1);
                    genome[start..start + len].to_vec()
                })
                .collect()
        }
        Family::Tarhio | Family::Blum => unreachable!("parametric families are not sampled"),
    };
    words.into_iter().map(Word::new).collect()
}

/// Instances described by `spec`, in index order.
pub fn generate(spec: &GenSpec) -> Result<Vec<Generated>> {
    spec.validate()?;
    if spec.family.is_parametric() {
        return spec
            .k
            .range()
            .enumerate()
            .map(|(index, k)| {
                let instance = if spec.family == Family::Tarhio {
                    tarhio(k)?
                } else {
                    blum(k)?
                };
                Ok(Generated {
                    index,
                    seed: spec.seed,
                    k: Some(k),
                    instance,
                    dropped: 0,
                })
            })
            .collect();
    }
    let mut master = Draw::new(spec.seed);
    (0..spec.count)
        .map(|index| {
            let seed = master.next_u64();
            let words = sample(spec, &mut Draw::new(seed))?;
            let total = words.len();
            let reduction = reduce_substring_free(words)?;
            Ok(Generated {
                index,
                seed,
                k: None,
                dropped: total - reduction.instance.len(),
                instance: reduction.instance,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{mgreedy_cycle_cover, CycleClass};

    fn words(i: &Instance) -> Vec<String> {
        i.words().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn closed_families() {
        assert_eq!(words(&tarhio(3).unwrap()), ["abbb", "bbbb", "bbba"]);
        assert_eq!(words(&blum(2).unwrap()), ["cabab", "baba", "ababc"]);
        assert!(tarhio(0).is_err());
    }

    #[test]
    fn splitmix_reference_stream() {
        // first outputs for state 0 of the published reference implementation
        let mut d = Draw::new(0);
        assert_eq!(d.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(d.next_u64(), 0x6e789e6aa1b965f4);
    }

    #[test]
    fn spans_parse() {
        assert_eq!("3".parse::<Span>().unwrap(), Span::new(3, 3));
        assert_eq!("2..9".parse::<Span>().unwrap(), Span::new(2, 9));
        assert_eq!("2..=9".parse::<Span>().unwrap(), Span::new(2, 9));
        assert!("9..2".parse::<Span>().is_err());
        assert!("x".parse::<Span>().is_err());
        assert_eq!(Span::new(2, 9).to_string(), "2..9");
    }

    #[test]
    fn same_spec_same_instances() {
        let spec = GenSpec {
            count: 50,
            seed: 7,
            ..Default::default()
        };
        let a = generate(&spec).unwrap();
        assert_eq!(a, generate(&spec).unwrap());
        assert_eq!(a.len(), 50);
        let other = generate(&GenSpec {
            seed: 8,
            ..spec.clone()
        })
        .unwrap();
        assert_ne!(a, other);
        for g in &a {
            assert!((1..=8).contains(&g.instance.len()));
            assert!(g
                .instance
                .words()
                .iter()
                .all(|w| w.iter().all(|&b| (b'a'..=b'd').contains(&b))));
        }
    }

    #[test]
    fn periodic_family_yields_small_cycles() {
        let spec = GenSpec {
            family: Family::Periodic,
            m: Span::new(2, 2),
            len: Span::new(7, 8),
            base: Span::new(2, 2),
            groups: Span::new(1, 1),
            count: 20,
            seed: 1,
            ..Default::default()
        };
        for g in generate(&spec).unwrap() {
            let cover = mgreedy_cycle_cover(&g.instance);
            assert!(g.instance.words().iter().all(|w| period(w) == 2));
            assert!(
                cover.cycles.iter().all(|c| c.class == CycleClass::Small),
                "{:?}",
                g.instance
            );
        }
    }

    #[test]
    fn fragments_come_from_one_genome() {
        let spec = GenSpec {
            family: Family::Fragments,
            m: Span::new(6, 6),
            len: Span::new(4, 6),
            genome: 20,
            count: 5,
            ..Default::default()
        };
        for g in generate(&spec).unwrap() {
            assert!(g.instance.words().iter().all(|w| (4..=6).contains(&w.len())));
            assert_eq!(g.dropped + g.instance.len(), 6);
        }
    }

    #[test]
    fn invalid_specs() {
        let bad = GenSpec {
            alphabet: Span::new(0, 2),
            ..Default::default()
        };
        assert!(matches!(generate(&bad), Err(Error::InvalidGenSpec(_))));
        let bad = GenSpec {
            family: Family::Blum,
            k: Span::new(0, 3),
            ..Default::default()
        };
        assert!(generate(&bad).is_err());
        let ok = GenSpec {
            family: Family::Blum,
            k: Span::new(2, 8),
            ..Default::default()
        };
        assert_eq!(generate(&ok).unwrap().len(), 7);
    }
}
