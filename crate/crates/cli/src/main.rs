use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use superstring::harness::{
    self, format_instance, generate, load_instance, read_report, save_instance, verify_batch, write_json, Family,
    GenSpec, Generated, Report, Source, Span,
};
use superstring::lab::Suite;
use superstring::{algos, Algorithm, OracleLimits};

/// Largest oracle size allowed without `--unsafe-m`.
const SAFE_M: usize = 12;

#[derive(Parser)]
#[command(
    name = "superstring",
    version,
    about = "Greedy shortest-superstring algorithms and bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        /// Output file (one instance) or directory (several).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a superstring.
    Solve {
        #[arg(long, value_parser = parse_algo)]
        algo: Algorithm,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        limits: LimitArgs,
        /// Write the results as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the bounds on instances.
    Verify {
        /// Suites to run, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "all", value_parser = parse_suite)]
        suite: Vec<Suite>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare algorithm lengths with the optimum.
    Sweep {
        /// Algorithms, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "greedy,mgreedy,tgreedy,pipeline-exact,exact", value_parser = parse_algo)]
        algos: Vec<Algorithm>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-judge a stored verify report from its numbers.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the re-judged report.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, alias = "gen", default_value = "random", value_parser = parse_family)]
    family: Family,
    /// Words per instance, N or LO..HI.
    #[arg(long, default_value = "2..8", value_parser = parse_span)]
    m: Span,
    /// Word lengths, N or LO..HI.
    #[arg(long, default_value = "2..9", value_parser = parse_span)]
    len: Span,
    /// Alphabet size, N or LO..HI.
    #[arg(long, default_value = "2..4", value_parser = parse_span)]
    alphabet: Span,
    /// Family parameter for tarhio and blum, N or LO..HI.
    #[arg(long, default_value = "2..8", value_parser = parse_span)]
    k: Span,
    /// Base length for the periodic family.
    #[arg(long, default_value = "2..4", value_parser = parse_span)]
    base: Span,
    /// Distinct bases per periodic instance.
    #[arg(long, default_value = "1..2", value_parser = parse_span)]
    groups: Span,
    /// Genome length for the fragments family.
    #[arg(long, default_value_t = 40)]
    genome: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        GenSpec {
            family: self.family,
            m: self.m,
            len: self.len,
            alphabet: self.alphabet,
            k: self.k,
            base: self.base,
            groups: self.groups,
            genome: self.genome,
            count: self.count,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Instance file; otherwise instances are generated.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[command(flatten)]
    gen: GenArgs,
}

impl InputArgs {
    fn load(&self) -> Result<(Vec<Generated>, Source)> {
        match &self.input {
            Some(path) => {
                let reduction = load_instance(path)?;
                let dropped = reduction.dropped().count();
                if dropped > 0 {
                    eprintln!("note: {dropped} word(s) dropped as duplicates or substrings of other words");
                }
                let item = Generated {
                    index: 0,
                    seed: 0,
                    k: None,
                    instance: reduction.instance,
                    dropped,
                };
                let source = Source::File {
                    path: path.display().to_string(),
                };
                Ok((vec![item], source))
            }
            None => {
                let spec = self.gen.spec();
                Ok((generate(&spec)?, Source::Generated(spec)))
            }
        }
    }
}

#[derive(Args)]
struct LimitArgs {
    /// Largest instance handed to the exact oracles.
    #[arg(long, default_value_t = SAFE_M)]
    max_m: usize,
    /// Allow --max-m above 12 (up to 20).
    #[arg(long)]
    unsafe_m: bool,
    /// Time budget per oracle call, in seconds.
    #[arg(long, default_value_t = 60)]
    budget: u64,
}

impl LimitArgs {
    fn limits(&self) -> Result<OracleLimits> {
        if self.max_m > SAFE_M && !self.unsafe_m {
            bail!("--max-m {} is above {SAFE_M}; pass --unsafe-m to allow it", self.max_m);
        }
        Ok(OracleLimits::new(self.max_m, Duration::from_secs(self.budget))?)
    }
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: superstring::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: superstring::Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: superstring::Error| e.to_string())
}

fn parse_span(s: &str) -> Result<Span, String> {
    s.parse().map_err(|e: superstring::Error| e.to_string())
}

enum Outcome {
    Pass,
    Falsified,
}

fn run_gen(gen: &GenArgs, out: Option<&Path>) -> Result<Outcome> {
    let items = generate(&gen.spec())?;
    match out {
        None => {
            for (i, g) in items.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", String::from_utf8_lossy(&format_instance(&g.instance)));
            }
        }
        Some(path) if items.len() == 1 => save_instance(&items[0].instance, path)?,
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for g in &items {
                save_instance(&g.instance, &dir.join(format!("{:05}.txt", g.index)))?;
            }
        }
    }
    Ok(Outcome::Pass)
}

fn run_solve(algo: Algorithm, input: &InputArgs, limits: &LimitArgs, json: Option<&Path>) -> Result<Outcome> {
    let limits = limits.limits()?;
    let (items, _) = input.load()?;
    let mut results = Vec::new();
    for g in &items {
        let r = algos::run(algo, &g.instance, &limits)?;
        if !superstring::strings::is_superstring(&r.text, &g.instance) {
            bail!("{} produced a string that misses an input word", algo.name());
        }
        println!("{}", r.text);
        println!("length: {}", r.length);
        results.push(r);
    }
    if let Some(path) = json {
        write_json(&results, path)?;
    }
    Ok(Outcome::Pass)
}

fn print_report(report: &Report) {
    let suites: Vec<&str> = report.suites.iter().map(|s| s.name()).collect();
    println!(
        "verified {} instance(s) [{}]: {} passed, {} failed",
        report.summary.instances,
        suites.join(","),
        report.summary.passed,
        report.summary.failed
    );
    for (name, c) in &report.summary.checks {
        if c.failed > 0 {
            println!("  {name}: {} of {} failed", c.failed, c.checked);
        }
    }
    for f in &report.falsifications {
        let seed = f.seed.map(|s| format!(" seed {s}")).unwrap_or_default();
        println!(
            "falsified: instance {}{seed} {} {:?}: {}",
            f.index,
            f.fingerprint,
            f.words,
            f.failed.join(", ")
        );
    }
}

fn write_outputs(report: &Report, json: Option<&Path>, csv: Option<&Path>) -> Result<()> {
    if let Some(path) = json {
        write_json(report, path)?;
    }
    if let Some(path) = csv {
        report.write_csv(path)?;
    }
    Ok(())
}

fn outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Falsified
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Gen { gen, out } => run_gen(&gen, out.as_deref()),
        Command::Solve {
            algo,
            input,
            limits,
            json,
        } => run_solve(algo, &input, &limits, json.as_deref()),
        Command::Verify {
            suite,
            input,
            limits,
            json,
            csv,
        } => {
            let limits = limits.limits()?;
            let (items, source) = input.load()?;
            let report = verify_batch(&items, source, &suite, &limits)?;
            write_outputs(&report, json.as_deref(), csv.as_deref())?;
            print_report(&report);
            Ok(outcome(report.passed()))
        }
        Command::Sweep {
            algos,
            input,
            limits,
            json,
            csv,
        } => {
            let limits = limits.limits()?;
            let (items, source) = input.load()?;
            let report = harness::sweep_batch(&items, source, &algos, &limits)?;
            if let Some(path) = json {
                write_json(&report, &path)?;
            }
            if let Some(path) = csv {
                report.write_csv(&path)?;
            }
            println!("swept {} instance(s)", report.rows.len());
            for (a, r) in &report.worst_ratio {
                println!("  {:<15} worst ratio {r:.4}", a.name());
            }
            for row in report.rows.iter().filter(|r| !r.over_ceiling.is_empty()) {
                let names: Vec<&str> = row.over_ceiling.iter().map(|a| a.name()).collect();
                println!(
                    "falsified: instance {} {} above ceiling: {}",
                    row.index,
                    row.fingerprint,
                    names.join(", ")
                );
            }
            Ok(outcome(report.passed()))
        }
        Command::Report { input, json, csv } => {
            let stored = read_report(&input)?;
            let (fresh, mismatches) = stored.recompute();
            write_outputs(&fresh, json.as_deref(), csv.as_deref())?;
            print_report(&fresh);
            for m in &mismatches {
                println!("stored verdicts disagree with the numbers: {m}");
            }
            Ok(outcome(fresh.passed() && mismatches.is_empty()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Falsified) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
