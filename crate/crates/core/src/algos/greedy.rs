//! GREEDY with its full decision trace: bad back edges, their intervals
//! along the final path, culprits and culprit cycles.

use serde::{Deserialize, Serialize};

use crate::cover::{mgreedy_cycle_cover, Cycle};
use crate::error::Result;
use crate::graph::{Edge, OverlapMatrix};
use crate::strings::Instance;

/// A bad back edge together with the interval it spans in final path order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackEdge {
    pub edge: Edge,
    pub ov: usize,
    /// `(i, j)` with `i ≤ j`: positions of the head and the tail on the final
    /// path. A self-loop on a then-isolated node spans `(i, i)`.
    pub interval: (usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyTrace {
    /// Edges in acceptance order.
    pub accepted: Vec<Edge>,
    /// Edges rejected only because they would close a cycle, in scan order.
    pub bad_back_edges: Vec<BackEdge>,
    /// Indices into `bad_back_edges` of the culprits.
    pub culprits: Vec<usize>,
    /// The cycle each culprit would have closed, head first and tail last.
    pub culprit_cycles: Vec<Cycle>,
    /// Position of every node along the final path.
    pub order_index: Vec<usize>,
}

impl GreedyTrace {
    /// True iff every two bad back edge intervals are disjoint or nested.
    pub fn is_laminar(&self) -> bool {
        let iv: Vec<(usize, usize)> = self.bad_back_edges.iter().map(|b| b.interval).collect();
        iv.iter().enumerate().all(|(x, &(a, b))| {
            iv[x + 1..].iter().all(|&(c, d)| {
                let disjoint = b < c || d < a;
                let nested = (a <= c && d <= b) || (c <= a && b <= d);
                disjoint || nested
            })
        })
    }

    pub fn culprit_edges(&self) -> impl Iterator<Item = &BackEdge> + '_ {
        self.culprits.iter().map(|&i| &self.bad_back_edges[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CulpritStats {
    pub o_c: usize,
    pub w_c: usize,
    /// Node ids on culprit cycles, increasing.
    pub strings: Vec<usize>,
}

/// The GREEDY path order over an arbitrary overlap matrix plus its trace.
///
/// Self-loops are never accepted. One scanned while its node is still
/// isolated fails only the cycle-closing test, so it is recorded as a bad
/// back edge like any other. The scan runs over all edges, so the final
/// (last, first) edge shows up as a bad back edge too.
pub fn greedy_on(ovm: &OverlapMatrix) -> (Vec<usize>, GreedyTrace) {
    let m = ovm.len();
    let none = usize::MAX;
    let mut succ = vec![none; m];
    let mut pred = vec![none; m];
    // For a path end: its start. For a path start: its end.
    let mut other_end: Vec<usize> = (0..m).collect();
    let mut accepted = Vec::with_capacity(m.saturating_sub(1));
    let mut rejected = Vec::new();

    for oe in ovm.sorted_edges() {
        let e = oe.edge();
        if succ[e.tail] != none || pred[e.head] != none {
            continue;
        }
        // tail is a path end, head a path start
        if other_end[e.tail] == e.head {
            rejected.push((e, oe.ov));
            continue;
        }
        let start = other_end[e.tail];
        let end = other_end[e.head];
        succ[e.tail] = e.head;
        pred[e.head] = e.tail;
        other_end[start] = end;
        other_end[end] = start;
        accepted.push(e);
    }

    let mut order = Vec::with_capacity(m);
    if m > 0 {
        let mut v = (0..m).find(|&v| pred[v] == none).expect("a path has a start");
        order.push(v);
        while succ[v] != none {
            v = succ[v];
            order.push(v);
        }
    }
    let mut order_index = vec![0; m];
    for (i, &v) in order.iter().enumerate() {
        order_index[v] = i;
    }

    let bad_back_edges: Vec<BackEdge> = rejected
        .into_iter()
        .map(|(edge, ov)| BackEdge {
            edge,
            ov,
            interval: (order_index[edge.head], order_index[edge.tail]),
        })
        .collect();
    let culprits: Vec<usize> = (0..bad_back_edges.len())
        .filter(|&x| {
            let (a, b) = bad_back_edges[x].interval;
            !bad_back_edges.iter().enumerate().any(|(y, other)| {
                let (c, d) = other.interval;
                y != x && a <= c && d <= b && (c, d) != (a, b)
            })
        })
        .collect();
    let culprit_cycles = culprits
        .iter()
        .map(|&x| {
            let (a, b) = bad_back_edges[x].interval;
            Cycle::from_nodes(ovm, order[a..=b].to_vec())
        })
        .collect();

    let trace = GreedyTrace {
        accepted,
        bad_back_edges,
        culprits,
        culprit_cycles,
        order_index,
    };
    (order, trace)
}

/// Sums over culprit cycles.
pub fn culprit_stats(trace: &GreedyTrace) -> CulpritStats {
    let mut strings: Vec<usize> = trace
        .culprit_cycles
        .iter()
        .flat_map(|c| c.nodes.iter().copied())
        .collect();
    strings.sort_unstable();
    strings.dedup();
    CulpritStats {
        o_c: trace.culprit_cycles.iter().map(|c| c.o).sum(),
        w_c: trace.culprit_cycles.iter().map(|c| c.w).sum(),
        strings,
    }
}

/// True iff MGREEDY on the culprit strings alone outputs exactly the culprit
/// cycles, node order and closing edge included. Vacuously true without culprits.
pub fn culprits_reproduced(instance: &Instance, trace: &GreedyTrace) -> Result<bool> {
    let stats = culprit_stats(trace);
    if stats.strings.is_empty() {
        return Ok(true);
    }
    let words = stats.strings.iter().map(|&v| instance.word(v).clone()).collect();
    let sub = Instance::new(words)?;
    let cover = mgreedy_cycle_cover(&sub);
    let mut expected: Vec<Vec<usize>> = trace.culprit_cycles.iter().map(|c| c.nodes.clone()).collect();
    expected.sort();
    Ok(cover.canonical(|v| stats.strings[v]) == expected)
}
