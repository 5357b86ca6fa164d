//! The overlap graph of an instance and its single global edge order.

use serde::{Deserialize, Serialize};

use crate::strings::{overlap, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn new(tail: usize, head: usize) -> Self {
        Edge { tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapEdge {
    pub tail: usize,
    pub head: usize,
    pub ov: usize,
}

impl OverlapEdge {
    pub fn edge(&self) -> Edge {
        Edge::new(self.tail, self.head)
    }
}

/// All pairwise overlaps (self-loops included) and word lengths of an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapMatrix {
    m: usize,
    ov: Vec<usize>,
    lens: Vec<usize>,
}

impl OverlapMatrix {
    pub fn new(instance: &Instance) -> Self {
        let m = instance.len();
        let mut ov = vec![0; m * m];
        for s in 0..m {
            for t in 0..m {
                ov[s * m + t] = overlap(instance.word(s), instance.word(t), s == t);
            }
        }
        OverlapMatrix {
            m,
            ov,
            lens: instance.words().iter().map(|w| w.len()).collect(),
        }
    }

    /// A bare profit matrix with explicit node lengths; used by the path
    /// solvers and the tour adapter.
    pub fn from_raw(m: usize, ov: Vec<usize>, lens: Vec<usize>) -> Self {
        assert_eq!(ov.len(), m * m);
        assert_eq!(lens.len(), m);
        OverlapMatrix { m, ov, lens }
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn ov(&self, tail: usize, head: usize) -> usize {
        self.ov[tail * self.m + head]
    }

    pub fn ov_edge(&self, e: Edge) -> usize {
        self.ov(e.tail, e.head)
    }

    pub fn dist(&self, tail: usize, head: usize) -> usize {
        self.lens[tail] - self.ov(tail, head)
    }

    pub fn word_len(&self, id: usize) -> usize {
        self.lens[id]
    }

    pub fn total_len(&self) -> usize {
        self.lens.iter().sum()
    }

    /// Total overlap along a path.
    pub fn path_profit(&self, order: &[usize]) -> usize {
        order.windows(2).map(|p| self.ov(p[0], p[1])).sum()
    }

    /// Total overlap of a successor map (a cycle cover).
    pub fn cover_profit(&self, succ: &[usize]) -> usize {
        succ.iter().enumerate().map(|(u, &v)| self.ov(u, v)).sum()
    }

    /// Total distance of a successor map.
    pub fn cover_length(&self, succ: &[usize]) -> usize {
        succ.iter().enumerate().map(|(u, &v)| self.dist(u, v)).sum()
    }

    /// All `m²` edges ordered by (overlap desc, tail asc, head asc).
    ///
    /// This is the one tie-breaking rule every greedy algorithm in the crate uses.
    pub fn sorted_edges(&self) -> Vec<OverlapEdge> {
        let mut edges: Vec<OverlapEdge> = (0..self.m)
            .flat_map(|tail| {
                (0..self.m).map(move |head| OverlapEdge {
                    tail,
                    head,
                    ov: self.ov(tail, head),
                })
            })
            .collect();
        edges.sort_by_key(|e| (std::cmp::Reverse(e.ov), e.tail, e.head));
        edges
    }

    /// Position of the edge in [`OverlapMatrix::sorted_edges`] order, as a sortable key.
    pub fn edge_key(&self, e: Edge) -> (std::cmp::Reverse<usize>, usize, usize) {
        (std::cmp::Reverse(self.ov_edge(e)), e.tail, e.head)
    }
}

pub fn sorted_edges(instance: &Instance) -> Vec<OverlapEdge> {
    OverlapMatrix::new(instance).sorted_edges()
}
