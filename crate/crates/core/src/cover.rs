//! The MGREEDY optimal cycle cover and everything derived from its cycles:
//! cycle words, rotations, representatives, the small/large/extra-large
//! classification, sub-instances and the small-cycle input modification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, OverlapMatrix};
use crate::strings::{pref, reduce_substring_free, Instance, Word};
use crate::surd::{alpha, Surd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CycleClass {
    Small,
    Large,
    ExtraLarge,
}

/// Classifies a cycle with closing overlap `o` and length `w` using the
/// default threshold α = (1+√57)/6.
pub fn classify(o: usize, w: usize) -> CycleClass {
    classify_with(o, w, alpha())
}

/// Small iff `o > 2w`, Large iff `α·w < o ≤ 2w`, ExtraLarge iff `o ≤ α·w`.
pub fn classify_with(o: usize, w: usize, alpha: Surd) -> CycleClass {
    if o > 2 * w {
        CycleClass::Small
    } else if Surd::from(o) > alpha * w {
        CycleClass::Large
    } else {
        CycleClass::ExtraLarge
    }
}

/// A directed cycle `c0 → … → c_{r-1} → c0` whose closing edge is `c_{r-1} → c0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub nodes: Vec<usize>,
    pub w: usize,
    pub o: usize,
    pub class: CycleClass,
}

impl Cycle {
    /// Builds the cycle record for a node sequence whose closing edge is last → first.
    pub fn from_nodes(ovm: &OverlapMatrix, nodes: Vec<usize>) -> Self {
        let r = nodes.len();
        let w = (0..r).map(|i| ovm.dist(nodes[i], nodes[(i + 1) % r])).sum();
        let o = ovm.ov(nodes[r - 1], nodes[0]);
        Cycle {
            nodes,
            w,
            o,
            class: classify(o, w),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn closing_edge(&self) -> Edge {
        Edge::new(*self.nodes.last().unwrap(), self.nodes[0])
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let r = self.nodes.len();
        (0..r).map(move |i| Edge::new(self.nodes[i], self.nodes[(i + 1) % r]))
    }

    fn prefs(&self, instance: &Instance, start: usize) -> Vec<u8> {
        let r = self.nodes.len();
        let mut out = Vec::with_capacity(self.w);
        for i in 0..r {
            let s = self.nodes[(start + i) % r];
            let t = self.nodes[(start + i + 1) % r];
            out.extend_from_slice(pref(instance.word(s), instance.word(t), s == t));
        }
        out
    }

    /// `s(c)`: the concatenated prefixes around the whole cycle; `|s(c)| = w(c)`.
    pub fn word(&self, instance: &Instance) -> Word {
        Word::new(self.prefs(instance, 0)).expect("cycle length is positive")
    }

    /// `strings(c, s_{c_l})`: the rotation of `s(c)` starting at the edge out of `c_l`.
    pub fn rotation(&self, instance: &Instance, l: usize) -> Result<Word> {
        if l >= self.nodes.len() {
            return Err(Error::PositionOutOfRange {
                pos: l,
                len: self.nodes.len(),
            });
        }
        Word::new(self.prefs(instance, l))
    }

    /// `R_c`: the cycle opened at its closing edge; `|R_c| = w(c) + o(c)`.
    pub fn representative(&self, instance: &Instance) -> Word {
        let r = self.nodes.len();
        let mut out = Vec::with_capacity(self.w + self.o);
        for i in 0..r - 1 {
            let (s, t) = (self.nodes[i], self.nodes[i + 1]);
            out.extend_from_slice(pref(instance.word(s), instance.word(t), false));
        }
        out.extend_from_slice(instance.word(self.nodes[r - 1]));
        Word::new(out).expect("words are nonempty")
    }

    /// `R′_c = s(c)·s_{c0}`: wraps fully around the cycle and ends with its first word.
    pub fn extended_representative(&self, instance: &Instance) -> Word {
        let mut out = self.prefs(instance, 0);
        out.extend_from_slice(instance.word(self.nodes[0]));
        Word::new(out).expect("words are nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCover {
    pub cycles: Vec<Cycle>,
    /// Successor of every node.
    pub succ: Vec<usize>,
    /// Index into `cycles` for every node.
    pub cycle_of: Vec<usize>,
    pub w_total: usize,
    pub o_total: usize,
}

impl CycleCover {
    /// Assembles a cover from a successor permutation; the closing edge of each
    /// cycle is the edge with the largest `rank` (e.g. acceptance time).
    pub fn from_succ(ovm: &OverlapMatrix, succ: Vec<usize>, rank: impl Fn(Edge) -> usize) -> Result<Self> {
        let m = succ.len();
        validate_permutation(&succ)?;
        let mut cycle_of = vec![usize::MAX; m];
        let mut cycles = Vec::new();
        for start in 0..m {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let mut nodes = vec![start];
            let mut v = succ[start];
            while v != start {
                nodes.push(v);
                v = succ[v];
            }
            let r = nodes.len();
            let close = (0..r)
                .max_by_key(|&i| rank(Edge::new(nodes[i], nodes[(i + 1) % r])))
                .unwrap();
            nodes.rotate_left((close + 1) % r);
            for &v in &nodes {
                cycle_of[v] = cycles.len();
            }
            cycles.push(Cycle::from_nodes(ovm, nodes));
        }
        Ok(CycleCover {
            w_total: cycles.iter().map(|c| c.w).sum(),
            o_total: cycles.iter().map(|c| c.o).sum(),
            cycles,
            succ,
            cycle_of,
        })
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.succ[e.tail] == e.head
    }

    pub fn cycle_of_edge(&self, e: Edge) -> Option<&Cycle> {
        self.contains(e).then(|| &self.cycles[self.cycle_of[e.tail]])
    }

    pub fn w_of(&self, class: CycleClass) -> usize {
        self.cycles.iter().filter(|c| c.class == class).map(|c| c.w).sum()
    }

    pub fn o_of(&self, class: CycleClass) -> usize {
        self.cycles.iter().filter(|c| c.class == class).map(|c| c.o).sum()
    }

    pub fn representatives(&self, instance: &Instance) -> Vec<Word> {
        self.cycles.iter().map(|c| c.representative(instance)).collect()
    }

    /// Cycles as node sequences (closing edge last) under an id mapping,
    /// sorted, for comparing covers of related instances.
    pub fn canonical(&self, map: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .cycles
            .iter()
            .map(|c| c.nodes.iter().map(|&v| map(v)).collect())
            .collect();
        out.sort();
        out
    }
}

pub(crate) fn validate_permutation(succ: &[usize]) -> Result<()> {
    let mut seen = vec![false; succ.len()];
    for &v in succ {
        if v >= succ.len() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotACover);
        }
    }
    Ok(())
}

/// MGREEDY: scan the global edge order, accepting an edge iff its tail has
/// no accepted out-edge and its head no accepted in-edge.
pub fn mgreedy_cycle_cover(instance: &Instance) -> CycleCover {
    mgreedy_on(&OverlapMatrix::new(instance))
}

pub fn mgreedy_on(ovm: &OverlapMatrix) -> CycleCover {
    let m = ovm.len();
    let mut succ = vec![usize::MAX; m];
    let mut has_pred = vec![false; m];
    let mut accepted_at = vec![usize::MAX; m];
    let mut accepted = 0;
    for e in ovm.sorted_edges() {
        if succ[e.tail] == usize::MAX && !has_pred[e.head] {
            succ[e.tail] = e.head;
            has_pred[e.head] = true;
            accepted_at[e.tail] = accepted;
            accepted += 1;
            if accepted == m {
                break;
            }
        }
    }
    CycleCover::from_succ(ovm, succ, |e| accepted_at[e.tail]).expect("MGREEDY yields a permutation")
}

/// Where a node of a derived instance came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    /// Unchanged word with this node id in the source instance.
    Node(usize),
    /// `R′_c` of the small cycle with this index in the source cover.
    SmallCycle(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedInstance {
    pub instance: Instance,
    pub origin: Vec<Origin>,
    /// Words swallowed by the substring-free re-reduction.
    pub swallowed: Vec<Origin>,
}

/// `S′`: every small cycle's words are replaced by its `R′_c`; other words pass through.
pub fn modified_instance(instance: &Instance, cover: &CycleCover) -> ModifiedInstance {
    let mut words = Vec::new();
    let mut origin = Vec::new();
    for v in 0..instance.len() {
        let ci = cover.cycle_of[v];
        let c = &cover.cycles[ci];
        if c.class == CycleClass::Small {
            if c.nodes.iter().min() == Some(&v) {
                words.push(c.extended_representative(instance));
                origin.push(Origin::SmallCycle(ci));
            }
        } else {
            words.push(instance.word(v).clone());
            origin.push(Origin::Node(v));
        }
    }
    let reduction = reduce_substring_free(words).expect("instance is nonempty");
    let mut kept_origin = Vec::new();
    let mut swallowed = Vec::new();
    for (o, k) in origin.into_iter().zip(&reduction.kept) {
        match k {
            Some(_) => kept_origin.push(o),
            None => swallowed.push(o),
        }
    }
    ModifiedInstance {
        instance: reduction.instance,
        origin: kept_origin,
        swallowed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubInstance {
    pub instance: Instance,
    /// Source node id of every node, increasing.
    pub ids: Vec<usize>,
}

/// The instance restricted to the words on the chosen cycles, keeping the
/// relative id order so the global tie-breaking is preserved.
pub fn subset_instance(instance: &Instance, cover: &CycleCover, chosen: &[usize]) -> Result<SubInstance> {
    if chosen.is_empty() {
        return Err(Error::EmptyChoice);
    }
    let mut ids = Vec::new();
    for &ci in chosen {
        let c = cover.cycles.get(ci).ok_or(Error::InvalidCycle(ci))?;
        ids.extend_from_slice(&c.nodes);
    }
    ids.sort_unstable();
    ids.dedup();
    let words = ids.iter().map(|&v| instance.word(v).clone()).collect();
    Ok(SubInstance {
        instance: Instance::new(words)?,
        ids,
    })
}

/// Minimum overlap over a cycle's edges.
pub fn min_edge_overlap(ovm: &OverlapMatrix, c: &Cycle) -> usize {
    c.edges().map(|e| ovm.ov_edge(e)).min().unwrap()
}
