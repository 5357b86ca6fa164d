//! Per-instance checks of the string and cycle-cover lemmas the bounds rest
//! on. Each family of checks reports how many cases it saw and how many
//! failed; nothing here panics on a violation.

use super::bounds::modified_sub_instance;
use super::swap::{monge_checks, relation_t, tally, Swap};
use super::{LemmaTallies, Tally};
use crate::cover::{mgreedy_on, Cycle, CycleClass, CycleCover};
use crate::error::Result;
use crate::graph::{Edge, OverlapMatrix};
use crate::oracle::{all_periodicities, max_ham_path_on, OracleLimits};
use crate::strings::{contains, equivalent, has_periodicity, overlap, period, power_prefix, Instance};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether every pair of periodicities `a, b` of `w` with `a + b ≤ |w|`
/// has `gcd(a, b)` as a periodicity as well.
pub fn periodicity_gcd_holds(w: &[u8]) -> bool {
    let ps = all_periodicities(w);
    ps.iter().all(|&a| {
        ps.iter()
            .filter(|&&b| a + b <= w.len())
            .all(|&b| has_periodicity(w, gcd(a, b)).expect("gcd is in range"))
    })
}

/// The periodicity-gcd property for every binary word of length 1 to `max_len`.
pub fn periodicity_gcd_exhaustive(max_len: usize) -> Tally {
    let mut t = Tally::default();
    for len in 1..=max_len {
        for bits in 0u32..(1 << len) {
            let w: Vec<u8> = (0..len).map(|i| b'a' + ((bits >> i) & 1) as u8).collect();
            t.record(periodicity_gcd_holds(&w));
        }
    }
    t
}

/// `α = s(c)^∞` and the words it must be tested against.
struct Rotation {
    root: Vec<u8>,
    /// Words inequivalent to α.
    others: Vec<Vec<u8>>,
}

/// Primitive root of `x`.
fn primitive_root(x: &[u8]) -> &[u8] {
    let p = period(x);
    if x.len().is_multiple_of(p) {
        &x[..p]
    } else {
        x
    }
}

/// Overlap of finite `s` with the suffix of `root^∞` starting at offset `k`.
fn overlap_with_power(s: &[u8], root: &[u8], k: usize) -> usize {
    let shifted: Vec<u8> = (0..s.len() + 1).map(|i| root[(k + i) % root.len()]).collect();
    overlap(s, &shifted, false)
}

/// Smallest `k ∈ [1, period(α)]` such that every candidate word `s`
/// inequivalent to `α = s(c)^∞` has `ov(s, α[k]) < period(s) + period(α)/2`,
/// where `α[k]` is the suffix starting at position `k` (1-based). The
/// candidates are the instance words and the other cycles' representatives.
/// Also returns whether every `k′ ∈ [0, k)` satisfies the relaxed bound
/// `ov(s, α[k−k′]) < period(s) + period(α)/2 + k′`.
pub fn overlap_rotation_witness(cover: &CycleCover, ci: usize, instance: &Instance) -> Option<(usize, bool)> {
    let rot = rotation_for(cover, ci, instance);
    let p = rot.root.len();
    // doubled to keep the half integral
    let ok = |k: usize, slack: usize| {
        rot.others
            .iter()
            .all(|s| 2 * overlap_with_power(s, &rot.root, k - 1) < 2 * period(s) + p + 2 * slack)
    };
    let k = (1..=p).find(|&k| ok(k, 0))?;
    Some((k, (0..k).all(|k2| ok(k - k2, k2))))
}

fn rotation_for(cover: &CycleCover, ci: usize, instance: &Instance) -> Rotation {
    let sc = cover.cycles[ci].word(instance);
    let root = primitive_root(sc.as_bytes()).to_vec();
    let alpha2 = [root.as_slice(), root.as_slice()].concat();
    let others = instance
        .words()
        .iter()
        .map(|w| w.as_bytes().to_vec())
        .chain(
            cover
                .cycles
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != ci)
                .map(|(_, c)| c.representative(instance).into_bytes()),
        )
        .filter(|s| !equivalent(s, &alpha2))
        .collect();
    Rotation { root, others }
}

/// No string of length `w(c) + w(c′)` is a substring of both `s(c)^∞` and `s(c′)^∞`.
fn no_long_common_substring(a: &Cycle, b: &Cycle, instance: &Instance) -> bool {
    let h = a.w + b.w;
    let pa = power_prefix(a.word(instance).as_bytes(), h + a.w - 1);
    let pb = power_prefix(b.word(instance).as_bytes(), h + b.w - 1);
    pa.windows(h).all(|x| !contains(&pb, x))
}

/// Equivalence, distance additivity and the unmerged-pair property on one small cycle.
fn small_cycle_checks(
    c: &Cycle,
    ovm: &OverlapMatrix,
    instance: &Instance,
    limits: &OracleLimits,
    t: &mut LemmaTallies,
) -> Result<()> {
    let r = c.len();
    let rc = c.representative(instance);
    for &v in &c.nodes {
        let s = instance.word(v).as_bytes();
        tally(t, "small_strings_equivalent").record(period(s) == c.w && equivalent(s, rc.as_bytes()));
    }
    // dist along the cycle from position i to j (j ≠ i+1) is additive
    for i in 0..r {
        for gap in 2..r {
            let j = (i + gap) % r;
            let along: usize = (0..gap)
                .map(|k| ovm.dist(c.nodes[(i + k) % r], c.nodes[(i + k + 1) % r]))
                .sum();
            tally(t, "small_distance_additive").record(ovm.dist(c.nodes[i], c.nodes[j]) == along);
        }
    }
    // unmerged pairs can stay unmerged in an optimal superstring
    if r >= 3 && ovm.len() <= limits.max_nodes_dp {
        let best = max_ham_path_on(ovm, &[], limits)?.map(|p| p.profit);
        for i in 0..r {
            for gap in 2..r {
                let e = Edge::new(c.nodes[i], c.nodes[(i + gap) % r]);
                let without = max_ham_path_on(ovm, &[e], limits)?.map(|p| p.profit);
                tally(t, "small_unmerged_stay_unmerged").record(without == best);
            }
        }
    }
    Ok(())
}

/// Exchange checks on every quadruple that some swap realizes: `f = (v′,v)`
/// and `f′ = (u,u′)` fit in one cover without `e = (u,v)` iff `v′ ≠ u` and `u′ ≠ v`.
fn exhaustive_monge(ovm: &OverlapMatrix, cover: &CycleCover, t: &mut LemmaTallies) {
    let m = ovm.len();
    for u in 0..m {
        for v in 0..m {
            for vp in (0..m).filter(|&x| x != u) {
                for up in (0..m).filter(|&x| x != v) {
                    let sw = Swap {
                        e: Edge::new(u, v),
                        e2: Edge::new(vp, up),
                        f: Edge::new(vp, v),
                        f2: Edge::new(u, up),
                    };
                    monge_checks(&sw, cover, ovm, t);
                }
            }
        }
    }
}

fn cover_checks(instance: &Instance, limits: &OracleLimits, t: &mut LemmaTallies) -> Result<()> {
    let ovm = OverlapMatrix::new(instance);
    let cover = mgreedy_on(&ovm);
    let words = instance.words();

    for (ci, c) in cover.cycles.iter().enumerate() {
        let sc = c.word(instance);
        let rc = c.representative(instance);
        tally(t, "representative_period").record(period(rc.as_bytes()) == c.w);
        for &v in &c.nodes {
            let s = words[v].as_bytes();
            tally(t, "period_at_most_cycle_w").record(period(s) <= c.w);
            let host = power_prefix(sc.as_bytes(), s.len() + c.w);
            tally(t, "strings_inside_cycle_power").record(contains(&host, s));
        }
        if c.class == CycleClass::Small {
            small_cycle_checks(c, &ovm, instance, limits, t)?;
        }
        match overlap_rotation_witness(&cover, ci, instance) {
            Some((_, general)) => {
                tally(t, "overlap_rotation").record(true);
                tally(t, "overlap_rotation_shifted").record(general);
            }
            None => tally(t, "overlap_rotation").record(false),
        }
        for (cj, d) in cover.cycles.iter().enumerate().filter(|&(cj, _)| cj != ci) {
            for &s in &c.nodes {
                for &u in &d.nodes {
                    tally(t, "cross_cycle_overlap").record(ovm.ov(s, u) < c.w + d.w);
                }
            }
            if cj > ci {
                let rd = d.representative(instance);
                tally(t, "representatives_inequivalent").record(!equivalent(rc.as_bytes(), rd.as_bytes()));
                tally(t, "cycle_powers_share_short_substrings").record(no_long_common_substring(c, d, instance));
            }
        }
    }
    exhaustive_monge(&ovm, &cover, t);
    Ok(())
}

/// Runs every lemma family on `instance` and on its modified
/// small-and-large sub-instance.
pub fn lemma_suite(instance: &Instance, limits: &OracleLimits) -> Result<LemmaTallies> {
    let mut t = LemmaTallies::new();
    let words = instance.words();
    for (i, s) in words.iter().enumerate() {
        let s = s.as_bytes();
        tally(&mut t, "periodicity_gcd").record(periodicity_gcd_holds(s));
        for u in &words[i + 1..] {
            let u = u.as_bytes();
            if !equivalent(s, u) {
                let bound = period(s) + period(u);
                tally(&mut t, "inequivalent_overlap")
                    .record(overlap(s, u, false) < bound && overlap(u, s, false) < bound);
            }
        }
    }
    cover_checks(instance, limits, &mut t)?;
    if let Some(sp) = modified_sub_instance(instance) {
        let ovm = OverlapMatrix::new(&sp);
        let cover = mgreedy_on(&ovm);
        let tr = relation_t(&cover, &ovm);
        for l in 0..cover.cycles.len() {
            let related = tr.iter().filter(|&&(_, x)| x == l).count();
            if cover.cycles[l].class == CycleClass::Large {
                tally(&mut t, "related_at_most_two").record(related <= 2);
            }
        }
        exhaustive_monge(&ovm, &cover, &mut t);
    }
    Ok(t)
}
