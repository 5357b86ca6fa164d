//! The superstring algorithms.

pub mod greedy;
pub mod pipeline;

pub use greedy::{culprit_stats, culprits_reproduced, greedy_on, BackEdge, CulpritStats, GreedyTrace};
pub use pipeline::{
    exact, greedy, greedy_max_path, mgreedy_superstring, pipeline, pipeline_with, representatives, run, tgreedy,
    tour_to_path_adapter, Algorithm, ExactPath, ExactTour, GreedyPath, MaxPathSolver, PathSolverKind,
    SuperstringResult, TourPath, TourSolver,
};
