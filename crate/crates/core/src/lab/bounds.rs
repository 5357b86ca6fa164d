//! Numbers behind the main bound, its two component bounds, the culprit
//! bounds and the ratio ceilings, plus the suite runner.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::swap::{m_set, relation_t, transform_c0_to_c, TransformNumbers};
use super::{lemmas::lemma_suite, BoundReport};
use crate::algos::{self, culprit_stats, culprits_reproduced, PathSolverKind};
use crate::cover::{mgreedy_cycle_cover, modified_instance, subset_instance, CycleClass, CycleCover, Origin};
use crate::error::{Error, Result};
use crate::graph::OverlapMatrix;
use crate::oracle::{exact_max_ham_cycle, exact_min_cycle_cover, exact_superstring, max_ham_path_on, OracleLimits};
use crate::strings::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MainBound,
    FirstBound,
    SecondBound,
    Culprits,
    Lemmas,
    Transform,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::MainBound,
        Suite::FirstBound,
        Suite::SecondBound,
        Suite::Culprits,
        Suite::Lemmas,
        Suite::Transform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainBound => "main-bound",
            Suite::FirstBound => "first-bound",
            Suite::SecondBound => "second-bound",
            Suite::Culprits => "culprits",
            Suite::Lemmas => "lemmas",
            Suite::Transform => "transform",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == other || self == Suite::All
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverNumbers {
    pub w: usize,
    pub o: usize,
    pub w_small: usize,
    pub w_large: usize,
    pub w_extra_large: usize,
    pub o_small: usize,
    pub o_large: usize,
    pub o_extra_large: usize,
    pub small: usize,
    pub large: usize,
    pub extra_large: usize,
    /// Minimum cycle cover length from the assignment solver.
    pub assignment_w: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthNumbers {
    pub greedy: usize,
    pub mgreedy: usize,
    pub tgreedy: usize,
    pub pipeline_greedy: usize,
    pub pipeline_exact: usize,
    /// Total length of the substring-free representative set.
    pub reps_total: usize,
    /// Maximum Hamiltonian path overlap over the representatives.
    pub reps_best_path: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CulpritNumbers {
    pub greedy: usize,
    pub o_c: usize,
    pub w_c: usize,
    /// Shortest superstring length of the culprit strings.
    pub n_c: usize,
    pub bad_back_edges: usize,
    pub culprits: usize,
    pub laminar: bool,
    pub reproduced: bool,
}

/// Numbers on the sub-instance of strings on small and large cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstNumbers {
    pub m: usize,
    pub n: usize,
    pub o: usize,
    pub w_small: usize,
    pub w_large: usize,
    /// MGREEDY on the sub-instance returned exactly the chosen cycles.
    pub reproduced: bool,
}

/// Numbers on the sub-instance and its small-cycle modification.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondNumbers {
    pub m: usize,
    pub n: usize,
    pub o: usize,
    pub w_small: usize,
    pub w_large: usize,
    pub w_total: usize,
    pub m_prime: usize,
    pub n_prime: usize,
    pub o_prime: usize,
    pub w_small_prime: usize,
    pub w_large_prime: usize,
    pub w_prime_total: usize,
    /// Length of a minimum Hamiltonian cycle in the modified distance graph.
    pub c0_len: usize,
    /// That Hamiltonian cycle contains a whole small cycle of the cover
    /// (only possible when it is one), which the modified bound excludes.
    pub c0_has_small_cycle: bool,
    /// Words swallowed by another word after the modification.
    pub swallowed: usize,
    pub small_become_loops: bool,
    /// Largest number of small cycles related to one large cycle.
    pub max_related: usize,
}

pub fn cover_numbers(instance: &Instance, cover: &CycleCover) -> CoverNumbers {
    let count = |k| cover.cycles.iter().filter(|c| c.class == k).count();
    CoverNumbers {
        w: cover.w_total,
        o: cover.o_total,
        w_small: cover.w_of(CycleClass::Small),
        w_large: cover.w_of(CycleClass::Large),
        w_extra_large: cover.w_of(CycleClass::ExtraLarge),
        o_small: cover.o_of(CycleClass::Small),
        o_large: cover.o_of(CycleClass::Large),
        o_extra_large: cover.o_of(CycleClass::ExtraLarge),
        small: count(CycleClass::Small),
        large: count(CycleClass::Large),
        extra_large: count(CycleClass::ExtraLarge),
        assignment_w: exact_min_cycle_cover(instance).w,
    }
}

/// `o` and `w` of the MGREEDY cover and the exact `n`.
pub fn main_bound(instance: &Instance, limits: &OracleLimits) -> Result<(CoverNumbers, usize)> {
    let cover = mgreedy_cycle_cover(instance);
    let n = exact_superstring(instance, limits)?.n;
    Ok((cover_numbers(instance, &cover), n))
}

pub fn lengths(instance: &Instance, limits: &OracleLimits) -> Result<LengthNumbers> {
    let reps = algos::representatives(instance);
    let best = max_ham_path_on(&OverlapMatrix::new(&reps), &[], limits)?.expect("no edge is forbidden");
    Ok(LengthNumbers {
        greedy: algos::greedy(instance).0.length,
        mgreedy: algos::mgreedy_superstring(instance).length,
        tgreedy: algos::tgreedy(instance).length,
        pipeline_greedy: algos::pipeline(instance, PathSolverKind::GreedyHalf, limits)?.length,
        pipeline_exact: algos::pipeline(instance, PathSolverKind::ExactDp, limits)?.length,
        reps_total: reps.total_len(),
        reps_best_path: best.profit,
    })
}

pub fn culprit_numbers(instance: &Instance, limits: &OracleLimits) -> Result<CulpritNumbers> {
    let (result, trace) = algos::greedy(instance);
    let stats = culprit_stats(&trace);
    let n_c = if stats.strings.is_empty() {
        0
    } else {
        let words = stats.strings.iter().map(|&v| instance.word(v).clone()).collect();
        exact_superstring(&Instance::new(words)?, limits)?.n
    };
    Ok(CulpritNumbers {
        greedy: result.length,
        o_c: stats.o_c,
        w_c: stats.w_c,
        n_c,
        bad_back_edges: trace.bad_back_edges.len(),
        culprits: trace.culprits.len(),
        laminar: trace.is_laminar(),
        reproduced: culprits_reproduced(instance, &trace)?,
    })
}

/// The sub-instance of strings on small and large cycles, its cover, and
/// whether MGREEDY reproduced the chosen cycles on it. `None` if every
/// cycle is extra large.
pub(crate) fn small_and_large(instance: &Instance) -> Option<(Instance, CycleCover, bool)> {
    let cover = mgreedy_cycle_cover(instance);
    let chosen: Vec<usize> = (0..cover.cycles.len())
        .filter(|&i| cover.cycles[i].class != CycleClass::ExtraLarge)
        .collect();
    if chosen.is_empty() {
        return None;
    }
    let sub = subset_instance(instance, &cover, &chosen).expect("chosen cycles exist");
    let sub_cover = mgreedy_cycle_cover(&sub.instance);
    let mut expected: Vec<Vec<usize>> = chosen.iter().map(|&i| cover.cycles[i].nodes.clone()).collect();
    expected.sort();
    let reproduced = sub_cover.canonical(|v| sub.ids[v]) == expected;
    Some((sub.instance, sub_cover, reproduced))
}

pub fn first_bound(instance: &Instance, limits: &OracleLimits) -> Result<FirstNumbers> {
    let Some((sub, cover, reproduced)) = small_and_large(instance) else {
        return Ok(FirstNumbers {
            reproduced: true,
            ..Default::default()
        });
    };
    Ok(FirstNumbers {
        m: sub.len(),
        n: exact_superstring(&sub, limits)?.n,
        o: cover.o_total,
        w_small: cover.w_of(CycleClass::Small),
        w_large: cover.w_of(CycleClass::Large),
        reproduced,
    })
}

/// The modified sub-instance `S′` of the small-and-large sub-instance, or
/// `None` if every cycle is extra large.
pub fn modified_sub_instance(instance: &Instance) -> Option<Instance> {
    let (sub, cover, _) = small_and_large(instance)?;
    Some(modified_instance(&sub, &cover).instance)
}

pub fn second_bound(instance: &Instance, limits: &OracleLimits) -> Result<Option<SecondNumbers>> {
    let Some((sub, cover, _)) = small_and_large(instance) else {
        return Ok(None);
    };
    let modified = modified_instance(&sub, &cover);
    let sp = &modified.instance;
    let cover_p = mgreedy_cycle_cover(sp);
    let ovm = OverlapMatrix::new(sp);
    let ham = exact_max_ham_cycle(sp, limits)?;
    let c0_len = sp.total_len() - ham.profit;
    let mut c0 = vec![0; sp.len()];
    for (i, &v) in ham.order.iter().enumerate() {
        c0[v] = ham.order[(i + 1) % ham.order.len()];
    }

    let small_count = |c: &CycleCover| c.cycles.iter().filter(|x| x.class == CycleClass::Small).count();
    let loops = modified.origin.iter().enumerate().all(|(v, o)| match o {
        Origin::SmallCycle(_) => {
            let c = &cover_p.cycles[cover_p.cycle_of[v]];
            c.len() == 1 && c.class == CycleClass::Small
        }
        Origin::Node(_) => true,
    });
    let t = relation_t(&cover_p, &ovm);
    let max_related = (0..cover_p.cycles.len())
        .map(|l| t.iter().filter(|&&(_, large)| large == l).count())
        .max()
        .unwrap_or(0);

    Ok(Some(SecondNumbers {
        m: sub.len(),
        n: exact_superstring(&sub, limits)?.n,
        o: cover.o_total,
        w_small: cover.w_of(CycleClass::Small),
        w_large: cover.w_of(CycleClass::Large),
        w_total: cover.w_total,
        m_prime: sp.len(),
        n_prime: exact_superstring(sp, limits)?.n,
        o_prime: cover_p.o_total,
        w_small_prime: cover_p.w_of(CycleClass::Small),
        w_large_prime: cover_p.w_of(CycleClass::Large),
        w_prime_total: cover_p.w_total,
        c0_len,
        c0_has_small_cycle: m_set(&cover_p, &c0).into_iter().any(|x| x),
        swallowed: modified.swallowed.len(),
        small_become_loops: loops && small_count(&cover_p) == small_count(&cover),
        max_related,
    }))
}

/// Runs the requested suites on one instance. Oracle limits are enforced:
/// an instance (or derived instance) that is too large is an error.
pub fn verify(instance: &Instance, suites: &[Suite], limits: &OracleLimits) -> Result<BoundReport> {
    let wants = |s: Suite| suites.iter().any(|x| x.includes(s));
    let mut report = BoundReport {
        fingerprint: instance.fingerprint(),
        m: instance.len(),
        total_len: instance.total_len(),
        ..Default::default()
    };
    if wants(Suite::MainBound) || wants(Suite::Culprits) {
        let (cover, n) = main_bound(instance, limits)?;
        report.n = Some(n);
        if wants(Suite::MainBound) {
            report.cover = Some(cover);
            report.lengths = Some(lengths(instance, limits)?);
        }
    }
    if wants(Suite::Culprits) {
        report.culprits = Some(culprit_numbers(instance, limits)?);
    }
    if wants(Suite::FirstBound) {
        report.first = Some(first_bound(instance, limits)?);
    }
    if wants(Suite::SecondBound) {
        report.second = second_bound(instance, limits)?;
    }
    if wants(Suite::Transform) {
        report.transform = match modified_sub_instance(instance) {
            Some(sp) => Some(transform_c0_to_c(&sp, limits)?.numbers),
            None => Some(TransformNumbers::vacuous()),
        };
    }
    if wants(Suite::Lemmas) {
        report.lemmas = Some(lemma_suite(instance, limits)?);
    }
    Ok(report)
}

pub fn verify_main_bound(instance: &Instance, limits: &OracleLimits) -> Result<BoundReport> {
    verify(instance, &[Suite::MainBound], limits)
}

pub fn verify_first_bound(instance: &Instance, limits: &OracleLimits) -> Result<BoundReport> {
    verify(instance, &[Suite::FirstBound], limits)
}

pub fn verify_second_bound(instance: &Instance, limits: &OracleLimits) -> Result<BoundReport> {
    verify(instance, &[Suite::SecondBound], limits)
}

pub fn verify_culprit_bounds(instance: &Instance, limits: &OracleLimits) -> Result<BoundReport> {
    verify(instance, &[Suite::Culprits], limits)
}
