//! Command-line front end.
//!
//! Every invocation prints one JSON document on stdout (except `generate`
//! without `--out`, which prints the `.bases` text) and diagnostics on stderr.
//! Exit codes: 0 success, 1 failed precondition or failed check, 2 parse error.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bounds::{binom_bounds, kappa_count_upper, knuth_lower};
use crate::brackets;
use crate::catalog::catalog;
use crate::cover::{kappa_exact, mu_integer};
use crate::io::{parse_bases, write_bases};
use crate::johnson::{best_class, gs_class, sample_class_matroid, spike, spike_conditions_hold, SetSystem};
use crate::lp::{kappa_star, serialize_rational};
use crate::matroid::Matroid;
use crate::minors::has_minor;
use crate::subset::Subset;
use crate::verify::{run_suite, Suite, DEFAULT_MAX_N};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "matroid-cover", version, about = "Exact flat covers of matroids")]
pub struct Cli {
    /// Omit the `meta` block (timestamp, elapsed time) so output is byte-reproducible.
    #[arg(long, global = true)]
    pub no_meta: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute an invariant of a matroid.
    #[command(subcommand)]
    Compute(ComputeCommand),
    /// Write generated matroids in `.bases` form.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Run the invariant suites.
    Verify(VerifyArgs),
    /// Print the counting-bound table.
    Bounds(BoundsArgs),
}

#[derive(Debug, Subcommand)]
pub enum ComputeCommand {
    /// Minimum flat cover with an optimality certificate when one exists.
    Kappa(InputArgs),
    /// Fractional cover complexity with primal and dual solutions.
    KappaStar(InputArgs),
    /// Largest set of non-bases no flat covers two of.
    Mu(InputArgs),
    /// Minor search.
    Minor(MinorArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// A `.bases` file or `catalog:NAME`.
    #[arg(long)]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct MinorArgs {
    #[arg(long)]
    pub host: String,
    #[arg(long)]
    pub pattern: String,
}

#[derive(Debug, Subcommand)]
pub enum GenerateCommand {
    /// A matroid from a Graham–Sloane class.
    Johnson(JohnsonArgs),
    /// The spike of a set system.
    Spike(SpikeArgs),
}

/// A class index or `best` for a largest class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassChoice {
    Index(usize),
    Best,
}

impl FromStr for ClassChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "best" {
            return Ok(ClassChoice::Best);
        }
        s.parse().map(ClassChoice::Index).map_err(|_| format!("expected an integer or `best`, got `{s}`"))
    }
}

#[derive(Debug, Args)]
pub struct JohnsonArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub k: ClassChoice,
    /// Probability that a class member becomes a non-basis.
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A set-system file or `all-K-subsets`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemSource {
    AllSubsets(usize),
    File(PathBuf),
}

impl FromStr for SystemSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = s.strip_prefix("all-").and_then(|rest| rest.strip_suffix("-subsets"));
        match k {
            Some(k) => k.parse().map(SystemSource::AllSubsets).map_err(|_| format!("bad subset size in `{s}`")),
            None => Ok(SystemSource::File(PathBuf::from(s))),
        }
    }
}

#[derive(Debug, Args)]
pub struct SpikeArgs {
    #[arg(long)]
    pub n: usize,
    /// `all-K-subsets` or a file with one set of 1-based labels per line (`{}` for the empty set).
    #[arg(long)]
    pub d: SystemSource,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
}

/// Largest `n` in the bounds table.
pub const BOUNDS_MAX_N: u64 = 20;

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..=BOUNDS_MAX_N))]
    pub max_n: u64,
    /// Fixed `kmax` for every row instead of `⌈2^n / n⌉`.
    #[arg(long)]
    pub kmax: Option<u64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 1,
        }
    }
}

fn precondition(e: impl std::fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Loads `catalog:NAME` or a `.bases` file.
pub fn load_matroid(source: &str) -> Result<Matroid, CliError> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return catalog(name).map_err(|e| CliError::Parse(e.to_string()));
    }
    let text = fs::read_to_string(source).map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
    parse_bases(&text).map_err(|e| CliError::Parse(format!("{source}: {e}")))
}

/// Parses a set-system file: one set per line as 1-based labels separated by
/// spaces or commas, optional braces, `#` comments, `{}` for the empty set.
pub fn parse_set_system(n: usize, text: &str) -> Result<SetSystem, CliError> {
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cleaned = line.replace(['{', '}', ','], " ");
        let mut labels = Vec::new();
        for token in cleaned.split_whitespace() {
            match token.parse::<usize>() {
                Ok(l) if (1..=n).contains(&l) => labels.push(l),
                _ => return Err(CliError::Parse(format!("line {}: bad label `{token}`", i + 1))),
            }
        }
        sets.push(Subset::from_labels(labels));
    }
    SetSystem::new(n, sets).map_err(precondition)
}

fn matroid_inputs(source: &str, m: &Matroid) -> Value {
    json!({ "input": source, "n": m.len(), "r": m.rank() })
}

fn compute(cmd: &ComputeCommand) -> Result<(&'static str, Value, Value), CliError> {
    match cmd {
        ComputeCommand::Kappa(a) => {
            let m = load_matroid(&a.input)?;
            let result = kappa_exact(&m).map_err(precondition)?;
            Ok(("compute kappa", matroid_inputs(&a.input, &m), json!(result)))
        }
        ComputeCommand::KappaStar(a) => {
            let m = load_matroid(&a.input)?;
            let result = kappa_star(&m).map_err(precondition)?;
            let mut value = json!(result);
            value["approx"] = json!(brackets::to_f64(&result.value));
            Ok(("compute kappa-star", matroid_inputs(&a.input, &m), value))
        }
        ComputeCommand::Mu(a) => {
            let m = load_matroid(&a.input)?;
            let (value, non_bases) = mu_integer(&m).map_err(precondition)?;
            Ok(("compute mu", matroid_inputs(&a.input, &m), json!({ "value": value, "non_bases": non_bases })))
        }
        ComputeCommand::Minor(a) => {
            let host = load_matroid(&a.host)?;
            let pattern = load_matroid(&a.pattern)?;
            let witness = has_minor(&host, &pattern);
            let mut results = json!({ "present": witness.is_some() });
            if let Some(w) = witness {
                results["witness"] = json!(w);
            }
            let inputs = json!({ "host": a.host, "pattern": a.pattern });
            Ok(("compute minor", inputs, results))
        }
    }
}

/// Either the `.bases` text for stdout, or the JSON results after writing `--out`.
enum Generated {
    Text(String),
    Json(&'static str, Value, Value),
}

fn emit_bases(
    command: &'static str,
    inputs: Value,
    mut results: Value,
    text: String,
    out: &Option<PathBuf>,
) -> Result<Generated, CliError> {
    match out {
        None => Ok(Generated::Text(text)),
        Some(path) => {
            fs::write(path, text).map_err(|e| precondition(format!("{}: {e}", path.display())))?;
            results["path"] = json!(path.display().to_string());
            Ok(Generated::Json(command, inputs, results))
        }
    }
}

fn generate(cmd: &GenerateCommand) -> Result<Generated, CliError> {
    match cmd {
        GenerateCommand::Johnson(a) => {
            let k = match a.k {
                ClassChoice::Index(k) => k,
                ClassChoice::Best => best_class(a.n, a.r).map_err(precondition)?.0,
            };
            let class = gs_class(a.n, a.r, k).map_err(precondition)?;
            let m = sample_class_matroid(a.n, a.r, k, a.p, a.seed).map_err(precondition)?;
            let non_bases = m.non_bases();
            let mut comments = vec![
                format!("generate johnson --n {} --r {} --k {} --p {} --seed {}", a.n, a.r, k, a.p, a.seed),
                format!("class size: {}", class.members.len()),
                format!("non-bases: {}", non_bases.len()),
            ];
            comments.extend(non_bases.iter().map(|x| format!("non-basis {x}")));
            let inputs = json!({ "n": a.n, "r": a.r, "k": k, "p": a.p, "seed": a.seed });
            let results = json!({
                "class_size": class.members.len(),
                "non_bases": non_bases,
                "bases": m.bases().len(),
            });
            emit_bases("generate johnson", inputs, results, write_bases(&m, &comments), &a.out)
        }
        GenerateCommand::Spike(a) => {
            let (system, source) = match &a.d {
                SystemSource::AllSubsets(k) => {
                    if *k > a.n {
                        return Err(precondition(format!("subset size {k} exceeds n = {}", a.n)));
                    }
                    (SetSystem::all_k_subsets(a.n, *k).map_err(precondition)?, format!("all-{k}-subsets"))
                }
                SystemSource::File(path) => {
                    let text =
                        fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                    (parse_set_system(a.n, &text)?, path.display().to_string())
                }
            };
            let m = spike(&system).map_err(precondition)?;
            if !spike_conditions_hold(&m, &system) {
                return Err(precondition("spike conditions fail"));
            }
            let comments = vec![
                format!("generate spike --n {} --d {source}", a.n),
                format!("dependent transversals: {}", system.sets.len()),
            ];
            let inputs = json!({ "n": a.n, "d": source });
            let results = json!({ "bases": m.bases().len(), "dependent_transversals": system.sets });
            emit_bases("generate spike", inputs, results, write_bases(&m, &comments), &a.out)
        }
    }
}

fn bounds_table(args: &BoundsArgs) -> Result<(Value, Value, bool), CliError> {
    let mut rows = Vec::new();
    let mut all_hold = true;
    for n in 1..=args.max_n {
        let kmax = args.kmax.unwrap_or_else(|| (1u64 << n).div_ceil(n));
        let upper = kappa_count_upper(n as u32, kmax).map_err(precondition)?;
        let knuth = knuth_lower(n);
        let mut binomial_ok = true;
        for r in 1..=n {
            binomial_ok &= binom_bounds(n, r).map_err(precondition)?.holds();
        }
        let central = binom_bounds(n, n / 2 + n % 2).map_err(precondition)?;
        let mut checks = json!({ "binomial_bounds": binomial_ok });
        let mut row_ok = binomial_ok;
        if n >= 2 {
            let (_, size) = best_class(n as usize, n as usize / 2).map_err(precondition)?;
            let class_ok = num_rational::BigRational::from_integer(size.into()) >= knuth;
            checks["best_class_size"] = json!(size);
            checks["class_at_least_knuth"] = json!(class_ok);
            row_ok &= class_ok;
        }
        all_hold &= row_ok;
        rows.push(json!({
            "n": n,
            "knuth_lower": RationalField(&knuth),
            "knuth_lower_approx": brackets::to_f64(&knuth),
            "kmax": kmax,
            "kappa_count_upper": upper,
            "central_ratio": central.central_ratio,
            "checks": checks,
        }));
    }
    let inputs = json!({ "max_n": args.max_n, "kmax": args.kmax });
    Ok((inputs, json!(rows), all_hold))
}

struct RationalField<'a>(&'a num_rational::BigRational);

impl serde::Serialize for RationalField<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_rational(self.0, s)
    }
}

fn document(command: &str, inputs: Value, body_key: &str, body: Value) -> Value {
    json!({
        "tool_version": TOOL_VERSION,
        "command": command,
        "inputs": inputs,
        body_key: body,
    })
}

fn finish(mut doc: Value, no_meta: bool, start: Instant) -> String {
    if !no_meta {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        doc["meta"] = json!({ "timestamp": timestamp, "elapsed_ms": start.elapsed().as_millis() as u64 });
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    text.push('\n');
    text
}

fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let start = Instant::now();
    match &cli.command {
        Command::Compute(cmd) => {
            let (command, inputs, results) = compute(cmd)?;
            Ok((finish(document(command, inputs, "results", results), cli.no_meta, start), 0))
        }
        Command::Generate(cmd) => match generate(cmd)? {
            Generated::Text(text) => Ok((text, 0)),
            Generated::Json(command, inputs, results) => {
                Ok((finish(document(command, inputs, "results", results), cli.no_meta, start), 0))
            }
        },
        Command::Verify(a) => {
            let report = run_suite(a.suite, a.seed, a.max_n);
            let inputs = json!({ "suite": a.suite, "seed": a.seed, "max_n": a.max_n });
            let mut doc = document("verify", inputs, "checks", json!(report.checks));
            doc["suite"] = json!(report.suite);
            doc["seed"] = json!(report.seed);
            doc["passed"] = json!(report.passed());
            Ok((finish(doc, cli.no_meta, start), if report.passed() { 0 } else { 1 }))
        }
        Command::Bounds(a) => {
            let (inputs, rows, all_hold) = bounds_table(a)?;
            let mut doc = document("bounds", inputs, "results", rows);
            doc["passed"] = json!(all_hold);
            Ok((finish(doc, cli.no_meta, start), if all_hold { 0 } else { 1 }))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli) {
        Ok((stdout, code)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_parsing() {
        assert_eq!("all-2-subsets".parse::<SystemSource>().unwrap(), SystemSource::AllSubsets(2));
        assert_eq!("d.txt".parse::<SystemSource>().unwrap(), SystemSource::File("d.txt".into()));
        assert!("all-x-subsets".parse::<SystemSource>().is_err());
        assert_eq!("best".parse::<ClassChoice>().unwrap(), ClassChoice::Best);
        assert_eq!("3".parse::<ClassChoice>().unwrap(), ClassChoice::Index(3));
    }

    #[test]
    fn set_system_files() {
        let s = parse_set_system(4, "# D\n{1,2}\n3 4\n{}\n").unwrap();
        assert_eq!(s.sets.len(), 3);
        assert!(s.sets.contains(&Subset::EMPTY));
        assert!(matches!(parse_set_system(4, "1 9\n"), Err(CliError::Parse(_))));
        assert!(matches!(parse_set_system(4, "1 2\n1 2 3\n"), Err(CliError::Precondition(_))));
    }
}
