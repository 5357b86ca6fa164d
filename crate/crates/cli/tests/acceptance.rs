//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use superstring::algos::pipeline::greedy;
use superstring::harness::{blum, generate, tarhio, verify_batch, Family, GenSpec, Report, Source, Span};
use superstring::lab::{constants, periodicity_gcd_exhaustive};
use superstring::oracle::{exact_min_cycle_cover, exact_superstring};
use superstring::strings::overlap;
use superstring::surd::Surd;
use superstring::{mgreedy_cycle_cover, OracleLimits, OverlapMatrix, Suite};

type Outcome = Result<String, String>;

const RANDOM_SEED: u64 = 0x5eed_0001;
const PERIODIC_SEED: u64 = 0x5eed_0002;
const MIXED_SEED: u64 = 0x5eed_0003;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_spec() -> GenSpec {
    GenSpec {
        family: Family::Random,
        m: Span::new(2, 10),
        len: Span::new(2, 9),
        alphabet: Span::new(2, 4),
        count: 10_000,
        seed: RANDOM_SEED,
        ..Default::default()
    }
}

fn periodic_spec(count: usize, seed: u64) -> GenSpec {
    GenSpec {
        family: Family::Periodic,
        m: Span::new(2, 10),
        len: Span::new(2, 12),
        alphabet: Span::new(2, 4),
        base: Span::new(2, 4),
        groups: Span::new(1, 3),
        count,
        seed,
        ..Default::default()
    }
}

fn run_suites(spec: &GenSpec, suites: &[Suite]) -> Result<Report, String> {
    let items = generate(spec).map_err(|e| e.to_string())?;
    verify_batch(
        &items,
        Source::Generated(spec.clone()),
        suites,
        &OracleLimits::default(),
    )
    .map_err(|e| e.to_string())
}

/// Verdict totals over every check whose name starts with `prefix`.
fn checks(reports: &[&Report], prefix: &str) -> Outcome {
    let (mut checked, mut failed) = (0, 0);
    let mut failing = Vec::new();
    for r in reports {
        for (name, c) in r.summary.checks.iter().filter(|(n, _)| n.starts_with(prefix)) {
            checked += c.checked;
            failed += c.failed;
            if c.failed > 0 {
                failing.push(format!("{name} ({} of {})", c.failed, c.checked));
            }
        }
    }
    ensure(checked > 0, format!("no `{prefix}` checks ran"))?;
    ensure(failed == 0, failing.join(", "))?;
    Ok(format!("{checked} checks"))
}

fn first_failure(reports: &[&Report], prefix: &str) -> Option<String> {
    reports.iter().flat_map(|r| &r.falsifications).find_map(|f| {
        f.failed
            .iter()
            .any(|c| c.starts_with(prefix))
            .then(|| format!("instance {} seed {:?} {:?}", f.index, f.seed, f.words))
    })
}

fn with_witness(reports: &[&Report], prefix: &str) -> Outcome {
    checks(reports, prefix).map_err(|e| match first_failure(reports, prefix) {
        Some(w) => format!("{e}; first: {w}"),
        None => e,
    })
}

fn constants_match() -> Outcome {
    let c = constants();
    let alpha = (1.0 + 57f64.sqrt()) / 6.0;
    let gamma = (31.0 + 3.0 * 57f64.sqrt()) / 14.0;
    ensure((c.alpha_f64 - alpha).abs() < 1e-12, format!("alpha = {}", c.alpha_f64))?;
    ensure((c.gamma_f64 - gamma).abs() < 1e-12, format!("gamma = {}", c.gamma_f64))?;
    ensure(
        c.alpha == Surd::from_parts(1, 6, 1, 6),
        "alpha is not (1+√57)/6 exactly",
    )?;
    ensure(
        c.gamma == Surd::from_parts(31, 14, 3, 14),
        "gamma is not (31+3√57)/14 exactly",
    )?;
    ensure(c.constraints.len() == 4, "expected four constraints")?;
    for k in &c.constraints {
        ensure(k.holds(), format!("`{}` fails", k.name))?;
        if k.tight {
            let gap = (k.lhs.to_f64() - k.rhs.to_f64()).abs();
            ensure(gap < 1e-9, format!("`{}` off by {gap}", k.name))?;
        }
    }
    ensure(
        c.constraints.iter().filter(|k| k.tight).count() == 2,
        "expected two tight constraints",
    )?;
    Ok(format!("alpha {:.15} gamma {:.15}", c.alpha_f64, c.gamma_f64))
}

fn worked_overlap() -> Outcome {
    let ov = overlap(b"bababa", b"ababab", false);
    let self_ov = overlap(b"bababa", b"bababa", true);
    ensure(ov == 5, format!("overlap = {ov}"))?;
    ensure(self_ov == 4, format!("self-overlap = {self_ov}"))?;
    Ok("ov = 5, self-ov = 4".into())
}

fn tarhio_covers() -> Outcome {
    for k in 3..=8 {
        let inst = tarhio(k).map_err(|e| e.to_string())?;
        let ovm = OverlapMatrix::new(&inst);
        let id = |w: String| inst.words().iter().position(|x| x.as_bytes() == w.as_bytes()).unwrap();
        let b = "b".repeat(k);
        let (abk, bk1, bka) = (id(format!("a{b}")), id(format!("{b}b")), id(format!("{b}a")));
        let w = mgreedy_cycle_cover(&inst).w_total;
        let opt = exact_min_cycle_cover(&inst).w;
        let mut three = vec![0; 3];
        three[abk] = bk1;
        three[bk1] = bka;
        three[bka] = abk;
        let mut two_one = vec![0; 3];
        two_one[abk] = bka;
        two_one[bka] = abk;
        two_one[bk1] = bk1;
        ensure(w == k + 2, format!("k={k}: mgreedy w = {w}"))?;
        ensure(opt == k + 2, format!("k={k}: oracle w = {opt}"))?;
        ensure(
            ovm.cover_length(&three) == opt,
            format!("k={k}: 3-cycle has length {}", ovm.cover_length(&three)),
        )?;
        ensure(
            ovm.cover_length(&two_one) == opt,
            format!("k={k}: 2-cycle + loop has length {}", ovm.cover_length(&two_one)),
        )?;
    }
    Ok("k = 3..8".into())
}

fn blum_ratios() -> Outcome {
    let mut last = 0.0;
    let mut ratios = Vec::new();
    for k in 2..=8 {
        let inst = blum(k).map_err(|e| e.to_string())?;
        let g = greedy(&inst).0.length;
        let n = exact_superstring(&inst, &OracleLimits::default())
            .map_err(|e| e.to_string())?
            .n;
        ensure(g == 4 * k + 2, format!("k={k}: greedy = {g}"))?;
        ensure(n == 2 * k + 4, format!("k={k}: n = {n}"))?;
        let r = g as f64 / n as f64;
        ensure(r > last && r < 2.0, format!("k={k}: ratio {r} after {last}"))?;
        last = r;
        ratios.push(format!("{r:.3}"));
    }
    Ok(format!("ratios {}", ratios.join(" ")))
}

fn mgreedy_is_optimal() -> Outcome {
    let items = generate(&random_spec()).map_err(|e| e.to_string())?;
    let bad: Vec<_> = items
        .iter()
        .filter(|g| mgreedy_cycle_cover(&g.instance).w_total != exact_min_cycle_cover(&g.instance).w)
        .collect();
    ensure(
        bad.is_empty(),
        format!(
            "{} exceptions, first seed {}",
            bad.len(),
            bad.first().map_or(0, |g| g.seed)
        ),
    )?;
    Ok(format!("{} instances", items.len()))
}

fn lemma_checks(reports: &[&Report]) -> Outcome {
    let t = periodicity_gcd_exhaustive(12);
    ensure(
        t.violations == 0,
        format!("periodicity gcd: {} violations", t.violations),
    )?;
    let suite = with_witness(reports, "lemma.")?;
    Ok(format!("gcd {} words, {suite}", t.checked))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, threads: &str| -> Result<serde_json::Value, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_superstring"))
            .args([
                "verify", "--family", "periodic", "--count", "300", "--seed", "11", "--m", "2..9", "--json",
            ])
            .arg(&path)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            status.status.code() == Some(0),
            format!("verify exited {:?}", status.status.code()),
        )?;
        read_without_timings(&path)
    };
    let a = run("a.json", "4")?;
    let b = run("b.json", "1")?;
    let (ta, tb) = (serde_json::to_vec(&a).unwrap(), serde_json::to_vec(&b).unwrap());
    ensure(ta == tb, "payloads differ")?;
    Ok(format!("{} bytes identical", ta.len()))
}

fn read_without_timings(path: &Path) -> Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    v.as_object_mut().ok_or("report is not an object")?.remove("timings");
    Ok(v)
}

fn report(failed: &mut usize, id: usize, title: &str, start: Instant, outcome: Outcome) {
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("PASS {id:>2} {title}: {detail} ({secs:.1}s)"),
        Err(why) => {
            *failed += 1;
            println!("FAIL {id:>2} {title}: {why} ({secs:.1}s)");
        }
    }
}

fn main() {
    let mut failed = 0;
    let t = Instant::now();
    report(&mut failed, 1, "constants", t, constants_match());
    let t = Instant::now();
    report(&mut failed, 2, "worked overlap example", t, worked_overlap());
    let t = Instant::now();
    report(&mut failed, 3, "tarhio covers", t, tarhio_covers());
    let t = Instant::now();
    report(&mut failed, 4, "blum greedy lengths", t, blum_ratios());
    let t = Instant::now();
    report(&mut failed, 5, "mgreedy cover is minimum", t, mgreedy_is_optimal());

    let t = Instant::now();
    let sweep = run_suites(&random_spec(), &[Suite::All])
        .and_then(|r| Ok([r, run_suites(&periodic_spec(2_000, PERIODIC_SEED), &[Suite::All])?]));
    if let Ok([r, p]) = &sweep {
        let secs = t.elapsed().as_secs_f64();
        println!(
            "        sweep: {} random + {} periodic instances in {secs:.1}s",
            r.instances.len(),
            p.instances.len()
        );
    }
    let over_sweep = |f: &dyn Fn(&[&Report]) -> Outcome| -> Outcome {
        match &sweep {
            Ok([r, p]) => f(&[r, p]),
            Err(e) => Err(format!("sweep failed: {e}")),
        }
    };

    let t = Instant::now();
    let main = over_sweep(&|both| {
        let small = both[1]
            .instances
            .iter()
            .filter(|r| r.bounds.cover.as_ref().is_some_and(|c| c.small > 0))
            .count();
        let d = with_witness(both, "main.")?;
        ensure(small > 0, "no periodic instance has a small cycle")?;
        Ok(format!("{d}, {small} periodic instances with small cycles"))
    });
    report(&mut failed, 6, "main bound", t, main);

    let t = Instant::now();
    let culprits = over_sweep(&|both| {
        let with_culprits = both
            .iter()
            .flat_map(|r| &r.instances)
            .filter(|r| r.bounds.culprits.as_ref().is_some_and(|c| c.culprits > 0))
            .count();
        let d = with_witness(both, "culprit.")?;
        ensure(with_culprits > 0, "no instance has culprits")?;
        Ok(format!("{d}, {with_culprits} instances with culprits"))
    });
    report(&mut failed, 7, "culprit bounds", t, culprits);

    let t = Instant::now();
    let bounds = over_sweep(&|both| {
        let a = with_witness(both, "first.")?;
        let b = with_witness(both, "second.")?;
        Ok(format!("first {a}, second {b}"))
    });
    report(&mut failed, 8, "first and second bounds", t, bounds);

    let t = Instant::now();
    let mixed = run_suites(
        &GenSpec {
            count: 1_000,
            seed: MIXED_SEED,
            ..random_spec()
        },
        &[Suite::Transform],
    )
    .and_then(|r| Ok((r, run_suites(&periodic_spec(1_000, MIXED_SEED), &[Suite::Transform])?)));
    let transform = mixed.and_then(|(r, p)| {
        let steps: usize = [&r, &p]
            .iter()
            .flat_map(|x| &x.instances)
            .filter_map(|i| i.bounds.transform.as_ref())
            .map(|t| t.steps.len())
            .sum();
        let d = with_witness(&[&r, &p], "transform.")?;
        ensure(steps > 0, "no transform steps taken")?;
        Ok(format!("{d}, {steps} swap steps"))
    });
    report(&mut failed, 9, "transform certification", t, transform);

    let t = Instant::now();
    report(&mut failed, 10, "lemma suite", t, over_sweep(&lemma_checks));

    let t = Instant::now();
    report(
        &mut failed,
        11,
        "ratio ceilings",
        t,
        over_sweep(&|both| with_witness(both, "ratio.")),
    );

    let t = Instant::now();
    report(&mut failed, 12, "determinism", t, determinism());

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
