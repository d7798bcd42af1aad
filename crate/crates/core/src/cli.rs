//! Command-line front end.
//!
//! Exit codes: 0 when every check passed, 1 when a mathematical check
//! failed (or a cache file violates the Bernoulli invariants), 2 for usage
//! and I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bernoulli::{bernoulli_polynomial, bernoulli_sequence, BernoulliCache, BernoulliMethod};
use crate::error::Error;
use crate::identities::{verify_grid, IdentityName, IdentityReport};
use crate::numkit::{fraction_string, Polynomial, Rational};
use crate::umbral::{replay_proof, IdentityParams, ProofTrace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Exact Bernoulli numbers, proof replay and identity verification.
#[derive(Debug, Parser)]
#[command(name = "bernkit", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Bernoulli cache file; used as a warm start where a table is needed.
    #[arg(long, global = true, env = "BERNOULLI_CACHE")]
    pub cache: Option<PathBuf>,

    #[arg(long, global = true, default_value = "recurrence")]
    pub method: BernoulliMethod,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print B_n.
    Bernoulli { n: usize },
    /// Print the Bernoulli polynomial B_n(x).
    Bpoly { n: usize },
    /// Replay the proof of the generalized identity for (m, n, q).
    Prove { m: usize, n: usize, q: usize },
    /// Check an identity at every point of a parameter grid.
    Verify {
        identity: IdentityName,
        #[arg(long, default_value_t = 10)]
        m_max: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        q_max: usize,
    },
    /// Time the Bernoulli algorithms on B_0..=B_{n_max} from a cold start.
    Bench {
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_values = ["recurrence", "series", "akiyama_tanigawa"])]
        methods: Vec<BernoulliMethod>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        repetitions: u32,
    },
    /// Save, load or inspect a cache file.
    Cache {
        action: CacheAction,
        /// Defaults to --cache / BERNOULLI_CACHE.
        path: Option<PathBuf>,
        /// Highest index written by `save`.
        #[arg(long, default_value_t = 100)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    Save,
    Load,
    Info,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::CacheFormat { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32, Error> {
    let json = config.format == OutputFormat::Json;
    match &config.command {
        Command::Bernoulli { n } => {
            let value = match config.method {
                BernoulliMethod::Recurrence => warm_cache(config, *n)?.get(*n)?.clone(),
                method => crate::bernoulli::bernoulli_number(*n, method),
            };
            if json {
                emit_json(
                    out,
                    &BernoulliJson {
                        n: *n,
                        value: fraction_string(&value),
                    },
                )?;
            } else {
                writeln!(out, "{value}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Bpoly { n } => {
            let cache = warm_cache(config, *n)?;
            let poly = bernoulli_polynomial(*n, &cache)?;
            if json {
                emit_json(
                    out,
                    &BpolyJson {
                        n: *n,
                        coeffs: coeff_strings(&poly),
                    },
                )?;
            } else {
                writeln!(out, "{poly}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Prove { m, n, q } => {
            let params = IdentityParams::new(*m, *n, *q);
            let cache = warm_cache(config, params.max_bernoulli_index())?;
            let trace = replay_proof(params, &cache)?;
            if json {
                emit_json(out, &ProveJson::from(&trace))?;
            } else {
                render_trace(out, &trace)?;
            }
            Ok(if trace.holds() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Verify {
            identity,
            m_max,
            n_max,
            q_max,
        } => {
            let mut cache = warm_cache(config, 0)?;
            let report = verify_grid(*identity, *m_max, *n_max, *q_max, &mut cache);
            if json {
                emit_json(out, &ReportJson::from(&report))?;
            } else {
                render_report(out, &report)?;
            }
            Ok(if report.all_zero {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Bench {
            n_max,
            methods,
            repetitions,
        } => {
            let runners: Vec<BenchMethod<'_>> = methods
                .iter()
                .map(|&m| BenchMethod {
                    name: m.name().to_string(),
                    compute: Box::new(move |n| bernoulli_sequence(n, m)),
                })
                .collect();
            bench_command(out, *n_max, *repetitions, &runners, json)
        }
        Command::Cache {
            action,
            path,
            n_max,
        } => {
            let path = path.as_deref().or(config.cache.as_deref()).ok_or_else(|| {
                std::io::Error::new(
                    std::io::ErrorKind::InvalidInput,
                    "no cache path given (argument, --cache or BERNOULLI_CACHE)",
                )
            })?;
            cache_command(out, *action, path, *n_max, json)
        }
    }
}

/// Loads the configured cache file when one exists, then extends it to
/// `n_max`. A missing file is not an error; a malformed one is.
fn warm_cache(config: &RunConfig, n_max: usize) -> Result<BernoulliCache, Error> {
    let mut cache = match &config.cache {
        Some(path) if path.exists() => BernoulliCache::load(path)?,
        _ => BernoulliCache::new(),
    };
    cache.extend_to(n_max);
    Ok(cache)
}

fn coeff_strings(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(fraction_string).collect()
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Error> {
    let s = serde_json::to_string(value).expect("plain data serializes");
    writeln!(out, "{s}")?;
    Ok(())
}

#[derive(Serialize)]
struct BernoulliJson {
    n: usize,
    value: String,
}

#[derive(Serialize)]
struct BpolyJson {
    n: usize,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct ProveJson {
    m: usize,
    n: usize,
    q: usize,
    p: Vec<String>,
    antisymmetry_residual: Vec<String>,
    pq: Vec<String>,
    pq_antisymmetry_residual: Vec<String>,
    odd_in_shifted: bool,
    expansion_match: bool,
    l_value: String,
    degenerate: bool,
    holds: bool,
}

impl From<&ProofTrace> for ProveJson {
    fn from(t: &ProofTrace) -> Self {
        Self {
            m: t.params.m,
            n: t.params.n,
            q: t.params.q,
            p: coeff_strings(&t.p),
            antisymmetry_residual: coeff_strings(&t.antisymmetry_residual),
            pq: coeff_strings(&t.pq),
            pq_antisymmetry_residual: coeff_strings(&t.pq_antisymmetry_residual),
            odd_in_shifted: t.odd_in_shifted,
            expansion_match: t.expansion_match,
            l_value: fraction_string(&t.l_value),
            degenerate: t.is_degenerate(),
            holds: t.holds(),
        }
    }
}

fn render_trace(out: &mut dyn Write, t: &ProofTrace) -> Result<(), Error> {
    let IdentityParams { m, n, q } = t.params;
    writeln!(out, "params: m={m} n={n} q={q}")?;
    writeln!(out, "p: {}", t.p)?;
    writeln!(out, "antisymmetry_residual: {}", t.antisymmetry_residual)?;
    writeln!(out, "pq: {}", t.pq)?;
    writeln!(
        out,
        "pq_antisymmetry_residual: {}",
        t.pq_antisymmetry_residual
    )?;
    writeln!(out, "odd_in_shifted: {}", t.odd_in_shifted)?;
    writeln!(out, "expansion_match: {}", t.expansion_match)?;
    writeln!(out, "l_value: {}", t.l_value)?;
    writeln!(out, "degenerate: {}", t.is_degenerate())?;
    writeln!(out, "holds: {}", t.holds())?;
    Ok(())
}

#[derive(Serialize)]
struct FailureJson {
    m: usize,
    n: usize,
    q: usize,
    residual: String,
}

#[derive(Serialize)]
struct ReportJson {
    identity: String,
    checked: usize,
    failures: Vec<FailureJson>,
    all_zero: bool,
}

impl From<&IdentityReport> for ReportJson {
    fn from(r: &IdentityReport) -> Self {
        Self {
            identity: r.identity.name().to_string(),
            checked: r.checked,
            failures: r
                .failures
                .iter()
                .map(|f| FailureJson {
                    m: f.params.m,
                    n: f.params.n,
                    q: f.params.q,
                    residual: fraction_string(&f.residual),
                })
                .collect(),
            all_zero: r.all_zero,
        }
    }
}

fn render_report(out: &mut dyn Write, r: &IdentityReport) -> Result<(), Error> {
    writeln!(out, "identity: {}", r.identity)?;
    writeln!(out, "grid: {}", r.grid)?;
    writeln!(out, "checked: {}", r.checked)?;
    writeln!(out, "failures: {}", r.failures.len())?;
    for f in &r.failures {
        writeln!(out, "  {} residual {}", f.params, f.residual)?;
    }
    writeln!(out, "all_zero: {}", r.all_zero)?;
    Ok(())
}

/// A Bernoulli algorithm under benchmark: maps `n_max` to `B_0..=B_{n_max}`.
pub struct BenchMethod<'a> {
    pub name: String,
    pub compute: Box<dyn Fn(usize) -> Vec<Rational> + 'a>,
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub method: String,
    pub median: Duration,
    pub last_value: Rational,
}

#[derive(Debug)]
pub struct BenchMismatch {
    pub method: String,
    pub reference: String,
    pub index: usize,
}

/// Times each method `repetitions` times and cross-checks every returned
/// sequence against the first method's.
pub fn run_bench(
    n_max: usize,
    repetitions: u32,
    methods: &[BenchMethod<'_>],
) -> Result<Vec<BenchRow>, BenchMismatch> {
    let mut rows = Vec::with_capacity(methods.len());
    let mut reference: Option<(&str, Vec<Rational>)> = None;
    for method in methods {
        let mut times = Vec::with_capacity(repetitions as usize);
        let mut values = Vec::new();
        for _ in 0..repetitions {
            let start = Instant::now();
            values = (method.compute)(n_max);
            times.push(start.elapsed());
        }
        times.sort();
        let median = times[times.len() / 2];
        match &reference {
            None => reference = Some((&method.name, values.clone())),
            Some((ref_name, ref_values)) => {
                let mismatch = (0..=n_max).find(|&i| values.get(i) != ref_values.get(i));
                if let Some(index) = mismatch {
                    return Err(BenchMismatch {
                        method: method.name.clone(),
                        reference: ref_name.to_string(),
                        index,
                    });
                }
            }
        }
        rows.push(BenchRow {
            method: method.name.clone(),
            median,
            last_value: values.get(n_max).cloned().unwrap_or_default(),
        });
    }
    Ok(rows)
}

#[derive(Serialize)]
struct BenchRowJson {
    method: String,
    median_seconds: f64,
    last_value: String,
}

#[derive(Serialize)]
struct BenchJson {
    n_max: usize,
    repetitions: u32,
    rows: Vec<BenchRowJson>,
    values_agree: bool,
}

pub fn bench_command(
    out: &mut dyn Write,
    n_max: usize,
    repetitions: u32,
    methods: &[BenchMethod<'_>],
    json: bool,
) -> Result<i32, Error> {
    let rows = match run_bench(n_max, repetitions, methods) {
        Ok(rows) => rows,
        Err(m) => {
            writeln!(
                out,
                "mismatch: {} disagrees with {} at B_{}",
                m.method, m.reference, m.index
            )?;
            return Ok(EXIT_CHECK_FAILED);
        }
    };
    if json {
        let doc = BenchJson {
            n_max,
            repetitions,
            rows: rows
                .iter()
                .map(|r| BenchRowJson {
                    method: r.method.clone(),
                    median_seconds: r.median.as_secs_f64(),
                    last_value: fraction_string(&r.last_value),
                })
                .collect(),
            values_agree: true,
        };
        emit_json(out, &doc)?;
    } else {
        writeln!(out, "{:<18} {:>14}  B_{}", "method", "median_ms", n_max)?;
        for r in &rows {
            writeln!(
                out,
                "{:<18} {:>14.3}  {}",
                r.method,
                r.median.as_secs_f64() * 1e3,
                r.last_value
            )?;
        }
        writeln!(out, "values agree across {} method(s)", rows.len())?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CacheJson<'a> {
    action: &'a str,
    path: String,
    max_index: Option<usize>,
}

fn cache_command(
    out: &mut dyn Write,
    action: CacheAction,
    path: &Path,
    n_max: usize,
    json: bool,
) -> Result<i32, Error> {
    let (label, cache) = match action {
        CacheAction::Save => {
            let cache = BernoulliCache::up_to(n_max);
            cache.save(path)?;
            ("save", cache)
        }
        CacheAction::Load => ("load", BernoulliCache::load(path)?),
        CacheAction::Info => ("info", BernoulliCache::load(path)?),
    };
    let max_index = cache.max_index();
    if json {
        emit_json(
            out,
            &CacheJson {
                action: label,
                path: path.display().to_string(),
                max_index,
            },
        )?;
    } else {
        let shown = max_index.map_or_else(|| "empty".to_string(), |i| i.to_string());
        match action {
            CacheAction::Save => writeln!(out, "saved {} max_index {shown}", path.display())?,
            CacheAction::Load => writeln!(out, "loaded {} max_index {shown}", path.display())?,
            CacheAction::Info => writeln!(out, "{shown}")?,
        }
    }
    Ok(EXIT_OK)
}
