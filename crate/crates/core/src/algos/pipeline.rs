//! Superstring algorithms built on the MGREEDY cycle cover: plain
//! concatenation of representatives, TGREEDY, and the representative
//! pipeline over a pluggable maximum-overlap path solver.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::greedy::{greedy_on, GreedyTrace};
use crate::cover::mgreedy_cycle_cover;
use crate::error::{Error, Result};
use crate::graph::OverlapMatrix;
use crate::oracle::{exact_superstring, max_ham_cycle_on, max_ham_path_on, OracleLimits};
use crate::strings::{find, is_superstring, merge_path, reduce_substring_free, Instance, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Greedy,
    Mgreedy,
    Tgreedy,
    PipelineGreedy,
    PipelineExact,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Greedy,
        Algorithm::Mgreedy,
        Algorithm::Tgreedy,
        Algorithm::PipelineGreedy,
        Algorithm::PipelineExact,
        Algorithm::Exact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Mgreedy => "mgreedy",
            Algorithm::Tgreedy => "tgreedy",
            Algorithm::PipelineGreedy => "pipeline-greedy",
            Algorithm::PipelineExact => "pipeline-exact",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownSolver(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperstringResult {
    pub algorithm: Algorithm,
    /// Input node ids in the order they first occur in `text`.
    pub order: Vec<usize>,
    pub text: Word,
    pub length: usize,
}

impl SuperstringResult {
    fn from_text(algorithm: Algorithm, instance: &Instance, text: Word) -> Self {
        let mut firsts: Vec<(usize, usize)> = (0..instance.len())
            .map(|v| (find(&text, instance.word(v)).expect("result is a superstring"), v))
            .collect();
        firsts.sort_unstable();
        SuperstringResult {
            algorithm,
            order: firsts.into_iter().map(|(_, v)| v).collect(),
            length: text.len(),
            text,
        }
    }

    fn from_order(algorithm: Algorithm, instance: &Instance, order: Vec<usize>) -> Self {
        let text = merge_path(instance, &order).expect("order is a permutation");
        SuperstringResult {
            algorithm,
            order,
            length: text.len(),
            text,
        }
    }
}

/// GREEDY: merge along the path its edge selection builds.
pub fn greedy(instance: &Instance) -> (SuperstringResult, GreedyTrace) {
    let (order, trace) = greedy_on(&OverlapMatrix::new(instance));
    (SuperstringResult::from_order(Algorithm::Greedy, instance, order), trace)
}

/// The GREEDY selection rule used only to extract a path order.
pub fn greedy_max_path(instance: &Instance) -> Vec<usize> {
    greedy_on(&OverlapMatrix::new(instance)).0
}

/// MGREEDY: concatenate the representatives of all cycles in cover order.
pub fn mgreedy_superstring(instance: &Instance) -> SuperstringResult {
    let cover = mgreedy_cycle_cover(instance);
    let mut text = Vec::with_capacity(cover.w_total + cover.o_total);
    for c in &cover.cycles {
        text.extend_from_slice(&c.representative(instance));
    }
    let text = Word::new(text).expect("instance is nonempty");
    SuperstringResult::from_text(Algorithm::Mgreedy, instance, text)
}

/// The substring-free set of cycle representatives.
pub fn representatives(instance: &Instance) -> Instance {
    let cover = mgreedy_cycle_cover(instance);
    reduce_substring_free(cover.representatives(instance))
        .expect("cover is nonempty")
        .instance
}

/// TGREEDY: GREEDY over the representatives.
pub fn tgreedy(instance: &Instance) -> SuperstringResult {
    let reps = representatives(instance);
    let (inner, _) = greedy(&reps);
    SuperstringResult::from_text(Algorithm::Tgreedy, instance, inner.text)
}

/// Exact shortest superstring through the subset DP.
pub fn exact(instance: &Instance, limits: &OracleLimits) -> Result<SuperstringResult> {
    let sol = exact_superstring(instance, limits)?;
    Ok(SuperstringResult::from_order(Algorithm::Exact, instance, sol.order))
}

/// Finds a Hamiltonian path of large total overlap.
pub trait MaxPathSolver {
    fn solve_path(&self, ovm: &OverlapMatrix) -> Result<Vec<usize>>;
}

/// Finds a Hamiltonian cycle of large total overlap, as a cyclic order.
pub trait TourSolver {
    fn solve_tour(&self, ovm: &OverlapMatrix) -> Result<Vec<usize>>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathSolverKind {
    /// GREEDY edge selection; at least half the optimum.
    GreedyHalf,
    /// Held–Karp subset DP.
    ExactDp,
}

impl FromStr for PathSolverKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy_half" | "greedy-half" => Ok(PathSolverKind::GreedyHalf),
            "exact_dp" | "exact-dp" => Ok(PathSolverKind::ExactDp),
            other => Err(Error::UnknownSolver(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GreedyPath;

impl MaxPathSolver for GreedyPath {
    fn solve_path(&self, ovm: &OverlapMatrix) -> Result<Vec<usize>> {
        Ok(greedy_on(ovm).0)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExactPath(pub OracleLimits);

impl MaxPathSolver for ExactPath {
    fn solve_path(&self, ovm: &OverlapMatrix) -> Result<Vec<usize>> {
        let sol = max_ham_path_on(ovm, &[], &self.0)?;
        Ok(sol.expect("no edge is forbidden").order)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExactTour(pub OracleLimits);

impl TourSolver for ExactTour {
    fn solve_tour(&self, ovm: &OverlapMatrix) -> Result<Vec<usize>> {
        Ok(max_ham_cycle_on(ovm, &self.0)?.order)
    }
}

/// Turns a tour solver into a path solver by adding a node whose edges all
/// have zero profit, solving the tour, and cutting the tour at that node.
pub struct TourPath<T>(pub T);

pub fn tour_to_path_adapter<T: TourSolver>(tour: T) -> TourPath<T> {
    TourPath(tour)
}

impl<T: TourSolver> MaxPathSolver for TourPath<T> {
    fn solve_path(&self, ovm: &OverlapMatrix) -> Result<Vec<usize>> {
        let m = ovm.len();
        let k = m + 1;
        let mut ov = vec![0; k * k];
        let mut lens = vec![0; k];
        for a in 0..m {
            lens[a] = ovm.word_len(a);
            for b in 0..m {
                ov[a * k + b] = ovm.ov(a, b);
            }
        }
        let tour = self.0.solve_tour(&OverlapMatrix::from_raw(k, ov, lens))?;
        let cut = tour.iter().position(|&v| v == m).ok_or(Error::NotACover)?;
        Ok(tour[cut + 1..].iter().chain(&tour[..cut]).copied().collect())
    }
}

/// Representatives merged along a path chosen by `solver`.
pub fn pipeline_with(
    instance: &Instance,
    solver: &dyn MaxPathSolver,
    algorithm: Algorithm,
) -> Result<SuperstringResult> {
    let reps = representatives(instance);
    let order = solver.solve_path(&OverlapMatrix::new(&reps))?;
    let text = merge_path(&reps, &order)?;
    debug_assert!(is_superstring(&text, instance));
    Ok(SuperstringResult::from_text(algorithm, instance, text))
}

pub fn pipeline(instance: &Instance, solver: PathSolverKind, limits: &OracleLimits) -> Result<SuperstringResult> {
    match solver {
        PathSolverKind::GreedyHalf => pipeline_with(instance, &GreedyPath, Algorithm::PipelineGreedy),
        PathSolverKind::ExactDp => pipeline_with(instance, &ExactPath(*limits), Algorithm::PipelineExact),
    }
}

/// Runs one algorithm by tag.
pub fn run(algorithm: Algorithm, instance: &Instance, limits: &OracleLimits) -> Result<SuperstringResult> {
    match algorithm {
        Algorithm::Greedy => Ok(greedy(instance).0),
        Algorithm::Mgreedy => Ok(mgreedy_superstring(instance)),
        Algorithm::Tgreedy => Ok(tgreedy(instance)),
        Algorithm::PipelineGreedy => pipeline(instance, PathSolverKind::GreedyHalf, limits),
        Algorithm::PipelineExact => pipeline(instance, PathSolverKind::ExactDp, limits),
        Algorithm::Exact => exact(instance, limits),
    }
}
