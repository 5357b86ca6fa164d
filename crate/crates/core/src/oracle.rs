//! Exact solvers used as ground truth on small instances: Held–Karp subset
//! DPs for maximum Hamiltonian paths and cycles, the shortest superstring,
//! and the assignment problem for minimum cycle covers.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, OverlapMatrix};
use crate::strings::{has_periodicity, Instance};

/// Hard cap on DP size; the tables hold `2^m · m` entries.
pub const MAX_DP_NODES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_nodes_dp: usize,
    pub time_budget: Duration,
}

impl OracleLimits {
    pub fn new(max_nodes_dp: usize, time_budget: Duration) -> Result<Self> {
        if max_nodes_dp > MAX_DP_NODES {
            return Err(Error::LimitCap(max_nodes_dp));
        }
        Ok(OracleLimits {
            max_nodes_dp,
            time_budget,
        })
    }

    fn check(&self, m: usize) -> Result<Instant> {
        if m > self.max_nodes_dp {
            return Err(Error::TooLarge {
                m,
                max: self.max_nodes_dp,
            });
        }
        Ok(Instant::now() + self.time_budget)
    }
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_nodes_dp: 14,
            time_budget: Duration::from_secs(30),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSolution {
    pub profit: usize,
    pub order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperstringSolution {
    pub n: usize,
    pub order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCoverSolution {
    pub w: usize,
    pub succ: Vec<usize>,
}

const NEG: i64 = i64::MIN / 4;

/// `best[mask·k + v]`: the largest profit of a path that starts at `v`,
/// visits exactly `mask`, and then pays `term(last)`. Forbidden edges are `None`.
struct HeldKarp {
    k: usize,
    best: Vec<i64>,
}

impl HeldKarp {
    fn solve(
        k: usize,
        profit: &dyn Fn(usize, usize) -> Option<i64>,
        term: &dyn Fn(usize) -> i64,
        deadline: Instant,
        budget: Duration,
    ) -> Result<Self> {
        let mut best = vec![NEG; (1usize << k) * k];
        for v in 0..k {
            best[(1 << v) * k + v] = term(v);
        }
        for mask in 1usize..(1 << k) {
            if mask.count_ones() < 2 {
                continue;
            }
            if mask & 0x3ff == 0 && Instant::now() > deadline {
                return Err(Error::BudgetExceeded(budget));
            }
            for v in 0..k {
                if mask & (1 << v) == 0 {
                    continue;
                }
                let rest = mask ^ (1 << v);
                let mut b = NEG;
                let mut bits = rest;
                while bits != 0 {
                    let u = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let tail = best[rest * k + u];
                    if tail == NEG {
                        continue;
                    }
                    if let Some(p) = profit(v, u) {
                        b = b.max(p + tail);
                    }
                }
                best[mask * k + v] = b;
            }
        }
        Ok(HeldKarp { k, best })
    }

    fn get(&self, mask: usize, v: usize) -> i64 {
        self.best[mask * self.k + v]
    }

    /// Lexicographically smallest optimal continuation from `v` through `mask`.
    fn walk(&self, mut mask: usize, mut v: usize, profit: &dyn Fn(usize, usize) -> Option<i64>) -> Vec<usize> {
        let mut order = vec![v];
        while mask != 1 << v {
            let rest = mask ^ (1 << v);
            let target = self.get(mask, v);
            let u = (0..self.k)
                .find(|&u| {
                    rest & (1 << u) != 0
                        && self.get(rest, u) != NEG
                        && profit(v, u).map(|p| p + self.get(rest, u)) == Some(target)
                })
                .expect("DP table is consistent");
            order.push(u);
            mask = rest;
            v = u;
        }
        order
    }
}

/// Maximum total overlap over Hamiltonian paths, with the lexicographically
/// smallest optimal order; `forbidden` edges may not be used.
pub fn max_ham_path_on(ovm: &OverlapMatrix, forbidden: &[Edge], limits: &OracleLimits) -> Result<Option<PathSolution>> {
    let m = ovm.len();
    let deadline = limits.check(m)?;
    if m == 0 {
        return Err(Error::EmptyInput);
    }
    let profit = |a: usize, b: usize| (!forbidden.contains(&Edge::new(a, b))).then(|| ovm.ov(a, b) as i64);
    let hk = HeldKarp::solve(m, &profit, &|_| 0, deadline, limits.time_budget)?;
    let full = (1usize << m) - 1;
    let best = (0..m).map(|v| hk.get(full, v)).max().unwrap();
    if best == NEG {
        return Ok(None);
    }
    let start = (0..m).find(|&v| hk.get(full, v) == best).unwrap();
    Ok(Some(PathSolution {
        profit: best as usize,
        order: hk.walk(full, start, &profit),
    }))
}

pub fn exact_max_ham_path(instance: &Instance, limits: &OracleLimits) -> Result<PathSolution> {
    let sol = max_ham_path_on(&OverlapMatrix::new(instance), &[], limits)?;
    Ok(sol.expect("the complete graph has a Hamiltonian path"))
}

/// Maximum total overlap over Hamiltonian cycles (a single self-loop when
/// `m = 1`). The returned cyclic order starts at node 0 and is
/// lexicographically smallest among optimal ones.
pub fn max_ham_cycle_on(ovm: &OverlapMatrix, limits: &OracleLimits) -> Result<PathSolution> {
    let m = ovm.len();
    let deadline = limits.check(m)?;
    match m {
        0 => return Err(Error::EmptyInput),
        1 => {
            return Ok(PathSolution {
                profit: ovm.ov(0, 0),
                order: vec![0],
            })
        }
        _ => {}
    }
    // DP over nodes 1..m, relabelled to 0..m-1, returning to node 0 at the end.
    let k = m - 1;
    let profit = |a: usize, b: usize| Some(ovm.ov(a + 1, b + 1) as i64);
    let term = |v: usize| ovm.ov(v + 1, 0) as i64;
    let hk = HeldKarp::solve(k, &profit, &term, deadline, limits.time_budget)?;
    let full = (1usize << k) - 1;
    let first = |u: usize| ovm.ov(0, u + 1) as i64 + hk.get(full, u);
    let best = (0..k).map(first).max().unwrap();
    let start = (0..k).find(|&u| first(u) == best).unwrap();
    let mut order = vec![0];
    order.extend(hk.walk(full, start, &profit).into_iter().map(|v| v + 1));
    Ok(PathSolution {
        profit: best as usize,
        order,
    })
}

pub fn exact_max_ham_cycle(instance: &Instance, limits: &OracleLimits) -> Result<PathSolution> {
    max_ham_cycle_on(&OverlapMatrix::new(instance), limits)
}

/// Shortest superstring length `n = Σ|s| − max path overlap`.
pub fn exact_superstring(instance: &Instance, limits: &OracleLimits) -> Result<SuperstringSolution> {
    let path = exact_max_ham_path(instance, limits)?;
    Ok(SuperstringSolution {
        n: instance.total_len() - path.profit,
        order: path.order,
    })
}

/// Minimum-length cycle cover of the distance graph (self-loops allowed),
/// via the shortest augmenting path method for the assignment problem.
pub fn exact_min_cycle_cover(instance: &Instance) -> CycleCoverSolution {
    let ovm = OverlapMatrix::new(instance);
    let m = ovm.len();
    let cost: Vec<Vec<i64>> = (0..m)
        .map(|s| (0..m).map(|t| ovm.dist(s, t) as i64).collect())
        .collect();
    let succ = hungarian(&cost);
    CycleCoverSolution {
        w: ovm.cover_length(&succ),
        succ,
    }
}

/// Minimum-cost perfect assignment of rows to columns in an `n×n` matrix.
pub fn hungarian(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = i64::MAX / 4;
    // 1-based potentials with a virtual column 0
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        assignment[p[j] - 1] = j - 1;
    }
    assignment
}

/// Every `a ∈ [1, |w|]` such that `w` has periodicity `a`.
pub fn all_periodicities(w: &[u8]) -> Vec<usize> {
    (1..=w.len())
        .filter(|&a| has_periodicity(w, a).expect("a is in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::mgreedy_cycle_cover;
    use crate::strings::{merge_path, period, Word};
    use proptest::prelude::*;

    fn inst(words: &[&str]) -> Instance {
        Instance::from_strs(words).unwrap()
    }

    fn permutations(m: usize) -> Vec<Vec<usize>> {
        fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    go(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; m], &mut out);
        out
    }

    fn brute_path(ovm: &OverlapMatrix) -> (usize, Vec<usize>) {
        // permutations come out in lexicographic order, so the first maximum is the smallest
        let mut best: Option<(usize, Vec<usize>)> = None;
        for p in permutations(ovm.len()) {
            let profit = ovm.path_profit(&p);
            if best.as_ref().is_none_or(|b| profit > b.0) {
                best = Some((profit, p));
            }
        }
        best.unwrap()
    }

    fn brute_cycle(ovm: &OverlapMatrix) -> usize {
        permutations(ovm.len())
            .into_iter()
            .filter(|p| p[0] == 0)
            .map(|p| ovm.path_profit(&p) + ovm.ov(*p.last().unwrap(), 0))
            .max()
            .unwrap()
    }

    fn brute_cover(ovm: &OverlapMatrix) -> usize {
        permutations(ovm.len())
            .into_iter()
            .map(|succ| ovm.cover_length(&succ))
            .min()
            .unwrap()
    }

    #[test]
    fn superstring_examples() {
        let lim = OracleLimits::default();
        let i = inst(&["abc", "bca", "cab"]);
        let s = exact_superstring(&i, &lim).unwrap();
        assert_eq!(s.n, 5);
        assert_eq!(merge_path(&i, &s.order).unwrap().to_string(), "abcab");
        assert_eq!(exact_superstring(&inst(&["ab", "cd"]), &lim).unwrap().n, 4);
        assert_eq!(exact_superstring(&inst(&["abbb", "bbbb", "bbba"]), &lim).unwrap().n, 6);
    }

    #[test]
    fn path_and_cycle_examples() {
        let lim = OracleLimits::default();
        let p = exact_max_ham_path(&inst(&["abbb", "bbbb", "bbba"]), &lim).unwrap();
        assert_eq!((p.profit, p.order), (6, vec![0, 1, 2]));
        assert_eq!(exact_max_ham_path(&inst(&["abc"]), &lim).unwrap().profit, 0);
        let c = exact_max_ham_cycle(&inst(&["abababa", "bababab"]), &lim).unwrap();
        assert_eq!(c.profit, 12);
        assert_eq!(exact_max_ham_cycle(&inst(&["ab", "cd"]), &lim).unwrap().profit, 0);
    }

    #[test]
    fn cover_examples() {
        assert_eq!(exact_min_cycle_cover(&inst(&["abbb", "bbbb", "bbba"])).w, 5);
        let c = exact_min_cycle_cover(&inst(&["ab", "cd"]));
        assert_eq!((c.w, c.succ), (4, vec![0, 1]));
    }

    #[test]
    fn limits() {
        let i = inst(&["a", "b", "c"]);
        let tight = OracleLimits::new(2, Duration::from_secs(1)).unwrap();
        assert!(matches!(
            exact_superstring(&i, &tight),
            Err(Error::TooLarge { m: 3, max: 2 })
        ));
        assert!(matches!(
            OracleLimits::new(21, Duration::from_secs(1)),
            Err(Error::LimitCap(21))
        ));
    }

    #[test]
    fn periodicities() {
        assert_eq!(all_periodicities(b"ababab"), vec![2, 4, 6]);
        assert_eq!(all_periodicities(b"aaaa"), vec![1, 2, 3, 4]);
        assert_eq!(all_periodicities(b"abc"), vec![3]);
        assert_eq!(all_periodicities(b"abaab")[0], period(b"abaab"));
    }

    #[test]
    fn forbidden_edges() {
        let i = inst(&["abbb", "bbbb", "bbba"]);
        let ovm = OverlapMatrix::new(&i);
        let lim = OracleLimits::default();
        let p = max_ham_path_on(&ovm, &[Edge::new(0, 1)], &lim).unwrap().unwrap();
        assert_eq!(p.profit, brute_path_without(&ovm, Edge::new(0, 1)));
        let all: Vec<Edge> = (0..3).flat_map(|a| (0..3).map(move |b| Edge::new(a, b))).collect();
        assert!(max_ham_path_on(&ovm, &all, &lim).unwrap().is_none());
    }

    fn brute_path_without(ovm: &OverlapMatrix, e: Edge) -> usize {
        permutations(ovm.len())
            .into_iter()
            .filter(|p| !p.windows(2).any(|w| Edge::new(w[0], w[1]) == e))
            .map(|p| ovm.path_profit(&p))
            .max()
            .unwrap()
    }

    fn random_instance() -> impl Strategy<Value = Instance> {
        proptest::collection::vec(proptest::collection::vec(b'a'..=b'c', 1..7), 1..8).prop_filter_map(
            "reduces to something",
            |words| {
                let words = words.into_iter().map(|w| Word::new(w).unwrap()).collect();
                crate::strings::reduce_substring_free(words).ok().map(|r| r.instance)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn dp_matches_permutations(i in random_instance()) {
            let ovm = OverlapMatrix::new(&i);
            let lim = OracleLimits::default();
            let (profit, order) = brute_path(&ovm);
            let p = exact_max_ham_path(&i, &lim).unwrap();
            prop_assert_eq!(p.profit, profit);
            prop_assert_eq!(&p.order, &order);
            let c = exact_max_ham_cycle(&i, &lim).unwrap();
            prop_assert_eq!(c.profit, brute_cycle(&ovm));
            let s = exact_superstring(&i, &lim).unwrap();
            prop_assert_eq!(merge_path(&i, &s.order).unwrap().len(), s.n);
            prop_assert_eq!(s.n, i.total_len() - p.profit);
        }

        #[test]
        fn assignment_matches_permutations(i in random_instance()) {
            let ovm = OverlapMatrix::new(&i);
            let cover = exact_min_cycle_cover(&i);
            prop_assert_eq!(cover.w, brute_cover(&ovm));
            prop_assert_eq!(cover.w, mgreedy_cycle_cover(&i).w_total);
            let lim = OracleLimits::default();
            let n = exact_superstring(&i, &lim).unwrap().n;
            let c0 = i.total_len() - exact_max_ham_cycle(&i, &lim).unwrap().profit;
            prop_assert!(cover.w <= c0);
            prop_assert!(c0 <= n);
        }
    }
}
