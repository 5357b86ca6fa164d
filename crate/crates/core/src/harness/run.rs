//! Batch runners. Instances are processed in parallel; results come back
//! in index order, so reports do not depend on scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::gen::Generated;
use super::report::{InstanceReport, RatioRow, Report, Source, SweepReport, Timings};
use crate::algos::{self, Algorithm};
use crate::error::Result;
use crate::lab::{self, Suite};
use crate::oracle::{exact_superstring, OracleLimits};
use crate::strings::Instance;
use crate::surd::{alpha, Rational, Surd};

fn words(instance: &Instance) -> Vec<String> {
    instance.words().iter().map(|w| w.to_string()).collect()
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs the suites on every instance.
pub fn verify_batch(items: &[Generated], source: Source, suites: &[Suite], limits: &OracleLimits) -> Result<Report> {
    let start = Instant::now();
    let results: Vec<Result<(InstanceReport, f64)>> = items
        .par_iter()
        .map(|g| {
            let t = Instant::now();
            let bounds = lab::verify(&g.instance, suites, limits)?;
            let verdicts = bounds.verdicts();
            let report = InstanceReport {
                index: g.index,
                seed: matches!(source, Source::Generated(_)).then_some(g.seed),
                k: g.k,
                fingerprint: bounds.fingerprint.clone(),
                words: words(&g.instance),
                dropped: g.dropped,
                passed: verdicts.iter().all(|v| v.holds),
                verdicts,
                bounds,
            };
            Ok((report, elapsed_ms(t)))
        })
        .collect();
    let mut instances = Vec::with_capacity(results.len());
    let mut per_instance_ms = Vec::with_capacity(results.len());
    for r in results {
        let (report, ms) = r?;
        instances.push(report);
        per_instance_ms.push(ms);
    }
    let timings = Timings {
        total_ms: elapsed_ms(start),
        per_instance_ms,
    };
    Ok(Report::new(
        source,
        suites.to_vec(),
        limits.max_nodes_dp,
        instances,
        timings,
    ))
}

/// Proven worst-case length/optimum ratio of each algorithm.
pub fn ratio_ceiling(a: Algorithm) -> Surd {
    match a {
        Algorithm::Greedy | Algorithm::Mgreedy => Surd::int(2) + alpha(),
        Algorithm::Tgreedy | Algorithm::PipelineGreedy => Surd::int(2) + alpha().scale(Rational::new(1, 2)),
        Algorithm::PipelineExact => Surd::int(2),
        Algorithm::Exact => Surd::int(1),
    }
}

/// Lengths of `algorithms` on every instance next to the exact optimum.
pub fn sweep_batch(
    items: &[Generated],
    source: Source,
    algorithms: &[Algorithm],
    limits: &OracleLimits,
) -> Result<SweepReport> {
    let start = Instant::now();
    let results: Vec<Result<(RatioRow, f64)>> = items
        .par_iter()
        .map(|g| {
            let t = Instant::now();
            let n = exact_superstring(&g.instance, limits)?.n;
            let mut lengths = BTreeMap::new();
            let mut over_ceiling = Vec::new();
            for &a in algorithms {
                let len = algos::run(a, &g.instance, limits)?.length;
                if Surd::from(len) > ratio_ceiling(a) * n {
                    over_ceiling.push(a);
                }
                lengths.insert(a, len);
            }
            let row = RatioRow {
                index: g.index,
                seed: matches!(source, Source::Generated(_)).then_some(g.seed),
                k: g.k,
                fingerprint: g.instance.fingerprint(),
                m: g.instance.len(),
                n,
                lengths,
                over_ceiling,
            };
            Ok((row, elapsed_ms(t)))
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut per_instance_ms = Vec::with_capacity(results.len());
    for r in results {
        let (row, ms) = r?;
        rows.push(row);
        per_instance_ms.push(ms);
    }
    let timings = Timings {
        total_ms: elapsed_ms(start),
        per_instance_ms,
    };
    Ok(SweepReport::new(
        source,
        algorithms.to_vec(),
        limits.max_nodes_dp,
        rows,
        timings,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{generate, Family, GenSpec, Span};

    fn spec(family: Family, count: usize, seed: u64) -> GenSpec {
        GenSpec {
            family,
            count,
            seed,
            ..Default::default()
        }
    }

    #[test]
    fn verify_is_deterministic() {
        let s = spec(Family::Random, 30, 3);
        let items = generate(&s).unwrap();
        let lim = OracleLimits::default();
        let a = verify_batch(&items, Source::Generated(s.clone()), &[Suite::All], &lim).unwrap();
        let b = verify_batch(&items, Source::Generated(s), &[Suite::All], &lim).unwrap();
        assert_eq!(a.deterministic_json().unwrap(), b.deterministic_json().unwrap());
        assert!(a.passed(), "{:?}", a.falsifications);
        assert_eq!(
            a.instances.iter().map(|r| r.index).collect::<Vec<_>>(),
            (0..30).collect::<Vec<_>>()
        );
        let (again, mismatches) = a.recompute();
        assert!(mismatches.is_empty());
        assert_eq!(again.summary, a.summary);
    }

    #[test]
    fn tampered_report_is_caught() {
        let s = spec(Family::Periodic, 5, 9);
        let items = generate(&s).unwrap();
        let mut r = verify_batch(
            &items,
            Source::Generated(s),
            &[Suite::MainBound],
            &OracleLimits::default(),
        )
        .unwrap();
        // inflate o beyond the bound
        r.instances[0].bounds.cover.as_mut().unwrap().o += 1000;
        let (fresh, mismatches) = r.recompute();
        assert!(!mismatches.is_empty());
        assert!(!fresh.passed());
        assert_eq!(fresh.falsifications[0].index, 0);
    }

    #[test]
    fn blum_sweep_matches_closed_forms() {
        let s = GenSpec {
            family: Family::Blum,
            k: Span::new(2, 6),
            ..Default::default()
        };
        let items = generate(&s).unwrap();
        let r = sweep_batch(
            &items,
            Source::Generated(s),
            &[Algorithm::Greedy, Algorithm::Exact],
            &OracleLimits::default(),
        )
        .unwrap();
        for row in &r.rows {
            let k = row.k.unwrap();
            assert_eq!(row.lengths[&Algorithm::Greedy], 4 * k + 2);
            assert_eq!(row.n, 2 * k + 4);
            assert_eq!(row.lengths[&Algorithm::Exact], row.n);
        }
        assert!(r.passed());
    }

    #[test]
    fn ceilings() {
        assert!((ratio_ceiling(Algorithm::Greedy).to_f64() - (13.0 + 57f64.sqrt()) / 6.0).abs() < 1e-12);
        assert!((ratio_ceiling(Algorithm::Tgreedy).to_f64() - (25.0 + 57f64.sqrt()) / 12.0).abs() < 1e-12);
    }
}
