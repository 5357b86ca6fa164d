//! Shortest superstring approximation algorithms (GREEDY, MGREEDY, TGREEDY
//! and a representative-merging pipeline), exact small-instance oracles,
//! and a lab that checks the quantitative bounds behind their
//! approximation guarantees on concrete instances.

pub mod algos;
pub mod cover;
pub mod error;
pub mod graph;
pub mod harness;
pub mod lab;
pub mod oracle;
pub mod strings;
pub mod surd;

pub use algos::{Algorithm, GreedyTrace, PathSolverKind, SuperstringResult};
pub use cover::{mgreedy_cycle_cover, Cycle, CycleClass, CycleCover};
pub use error::{Error, Result};
pub use graph::{Edge, OverlapEdge, OverlapMatrix};
pub use lab::{BoundReport, Suite};
pub use oracle::OracleLimits;
pub use strings::{Instance, Word};
pub use surd::Surd;
