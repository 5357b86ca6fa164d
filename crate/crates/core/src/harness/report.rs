//! Machine-readable run reports: one JSON document per run, plus a flat CSV
//! with one row per instance sorted by fingerprint.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::gen::GenSpec;
use crate::algos::Algorithm;
use crate::error::{Error, Result};
use crate::lab::{BoundReport, Suite, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

/// Where the instances of a run came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Source {
    Generated(GenSpec),
    File { path: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub seed: Option<u64>,
    pub k: Option<usize>,
    pub fingerprint: String,
    pub words: Vec<String>,
    /// Input words removed by the substring-free reduction.
    pub dropped: usize,
    pub bounds: BoundReport,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: BTreeMap<String, CheckSummary>,
}

/// A failing instance with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Falsification {
    pub index: usize,
    pub seed: Option<u64>,
    pub fingerprint: String,
    pub words: Vec<String>,
    pub failed: Vec<String>,
}

/// Wall-clock times; the only part of a report that varies between runs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub per_instance_ms: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub source: Source,
    pub suites: Vec<Suite>,
    pub max_m: usize,
    pub summary: Summary,
    pub falsifications: Vec<Falsification>,
    pub instances: Vec<InstanceReport>,
    pub timings: Timings,
}

fn summarize(instances: &[InstanceReport]) -> (Summary, Vec<Falsification>) {
    let mut summary = Summary {
        instances: instances.len(),
        ..Default::default()
    };
    let mut falsifications = Vec::new();
    for r in instances {
        for v in &r.verdicts {
            let c = summary.checks.entry(v.check.clone()).or_default();
            c.checked += 1;
            c.failed += usize::from(!v.holds);
        }
        if r.passed {
            summary.passed += 1;
        } else {
            summary.failed += 1;
            falsifications.push(Falsification {
                index: r.index,
                seed: r.seed,
                fingerprint: r.fingerprint.clone(),
                words: r.words.clone(),
                failed: r
                    .verdicts
                    .iter()
                    .filter(|v| !v.holds)
                    .map(|v| v.check.clone())
                    .collect(),
            });
        }
    }
    (summary, falsifications)
}

impl Report {
    pub fn new(
        source: Source,
        suites: Vec<Suite>,
        max_m: usize,
        instances: Vec<InstanceReport>,
        timings: Timings,
    ) -> Self {
        let (summary, falsifications) = summarize(&instances);
        Report {
            schema_version: SCHEMA_VERSION,
            source,
            suites,
            max_m,
            summary,
            falsifications,
            instances,
            timings,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Re-derives every verdict from the stored numbers. Returns the report
    /// as it should read, and the checks whose stored verdict disagreed.
    pub fn recompute(&self) -> (Report, Vec<String>) {
        let mut mismatches = Vec::new();
        let instances: Vec<InstanceReport> = self
            .instances
            .iter()
            .map(|r| {
                let verdicts = r.bounds.verdicts();
                if verdicts != r.verdicts {
                    mismatches.push(format!("instance {} ({})", r.index, r.fingerprint));
                }
                InstanceReport {
                    passed: verdicts.iter().all(|v| v.holds),
                    verdicts,
                    ..r.clone()
                }
            })
            .collect();
        let fresh = Report::new(
            self.source.clone(),
            self.suites.clone(),
            self.max_m,
            instances,
            self.timings.clone(),
        );
        if fresh.summary != self.summary {
            mismatches.push("summary".into());
        }
        (fresh, mismatches)
    }

    /// The JSON document without its timing field.
    pub fn deterministic_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        v.as_object_mut().expect("report is an object").remove("timings");
        Ok(serde_json::to_string_pretty(&v)?)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut rows: Vec<&InstanceReport> = self.instances.iter().collect();
        rows.sort_by(|a, b| (&a.fingerprint, a.index).cmp(&(&b.fingerprint, b.index)));
        let mut w = csv::Writer::from_path(path)?;
        w.write_record([
            "fingerprint",
            "index",
            "seed",
            "m",
            "total_len",
            "n",
            "w",
            "o",
            "greedy",
            "mgreedy",
            "tgreedy",
            "pipeline_exact",
            "passed",
            "failed_checks",
        ])?;
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in rows {
            let b = &r.bounds;
            let l = b.lengths.as_ref();
            let failed: Vec<&str> = r
                .verdicts
                .iter()
                .filter(|v| !v.holds)
                .map(|v| v.check.as_str())
                .collect();
            w.write_record([
                r.fingerprint.clone(),
                r.index.to_string(),
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
                b.m.to_string(),
                b.total_len.to_string(),
                opt(b.n),
                opt(b.cover.as_ref().map(|c| c.w)),
                opt(b.cover.as_ref().map(|c| c.o)),
                opt(l.map(|l| l.greedy)),
                opt(l.map(|l| l.mgreedy)),
                opt(l.map(|l| l.tgreedy)),
                opt(l.map(|l| l.pipeline_exact)),
                r.passed.to_string(),
                failed.join(";"),
            ])?;
        }
        w.flush().map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Lengths of several algorithms on one instance next to the optimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRow {
    pub index: usize,
    pub seed: Option<u64>,
    pub k: Option<usize>,
    pub fingerprint: String,
    pub m: usize,
    pub n: usize,
    pub lengths: BTreeMap<Algorithm, usize>,
    /// Algorithms whose length exceeds their proven ceiling.
    pub over_ceiling: Vec<Algorithm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub source: Source,
    pub algorithms: Vec<Algorithm>,
    pub max_m: usize,
    pub rows: Vec<RatioRow>,
    /// Largest observed length/n per algorithm.
    pub worst_ratio: BTreeMap<Algorithm, f64>,
    pub timings: Timings,
}

impl SweepReport {
    pub fn new(
        source: Source,
        algorithms: Vec<Algorithm>,
        max_m: usize,
        rows: Vec<RatioRow>,
        timings: Timings,
    ) -> Self {
        let mut worst_ratio = BTreeMap::new();
        for r in &rows {
            for (&a, &len) in &r.lengths {
                let ratio = len as f64 / r.n as f64;
                let e = worst_ratio.entry(a).or_insert(ratio);
                *e = f64::max(*e, ratio);
            }
        }
        SweepReport {
            schema_version: SCHEMA_VERSION,
            source,
            algorithms,
            max_m,
            rows,
            worst_ratio,
            timings,
        }
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.over_ceiling.is_empty())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut rows: Vec<&RatioRow> = self.rows.iter().collect();
        rows.sort_by(|a, b| (&a.fingerprint, a.index).cmp(&(&b.fingerprint, b.index)));
        let mut w = csv::Writer::from_path(path)?;
        let mut header: Vec<String> = ["fingerprint", "index", "seed", "k", "m", "n"].map(String::from).into();
        for a in &self.algorithms {
            header.push(a.name().to_string());
            header.push(format!("{}_ratio", a.name()));
        }
        w.write_record(&header)?;
        for r in rows {
            let mut rec = vec![
                r.fingerprint.clone(),
                r.index.to_string(),
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
                r.k.map(|k| k.to_string()).unwrap_or_default(),
                r.m.to_string(),
                r.n.to_string(),
            ];
            for a in &self.algorithms {
                let len = r.lengths[a];
                rec.push(len.to_string());
                rec.push(format!("{:.6}", len as f64 / r.n as f64));
            }
            w.write_record(&rec)?;
        }
        w.flush().map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_report(path: &Path) -> Result<Report> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}
