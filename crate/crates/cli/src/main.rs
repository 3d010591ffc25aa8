//! `cocycle`: slope tables of Hecke operators on harmonic cocycles.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::Parser;
use cocycle_core::pipeline::{Computation, Engine};
use cocycle_core::representation::ActionCache;
use cocycle_core::slopes::{format_tables, Format};
use cocycle_core::{verify, GaloisField, Level};
use rayon::prelude::*;

const MAX_Q: u32 = 9;
const CACHE_ENV: &str = "COCYCLE_CACHE_DIR";
const DEFAULT_CHARPOLY: &str = "charpoly.json";
const VERIFY_SEED: u64 = 0x5eed_2024;

#[derive(Parser, Debug, Default)]
#[command(name = "cocycle", version, about = "Newton slopes of Hecke operators on harmonic cocycles for GL_3 over F_q(t)")]
struct Args {
    /// Field size, a prime power up to 9.
    #[arg(long)]
    q: Option<u32>,
    /// Weight `k` or an inclusive range `a..b`.
    #[arg(long)]
    k: Option<String>,
    /// Comma list of u1, u2, t1, t2.
    #[arg(long)]
    op: Option<String>,
    /// Comma list of gamma1, gamma0, p0, p2, gl3 (default: every level valid for the operators).
    #[arg(long)]
    level: Option<String>,
    /// md, csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also run the property suites; exit 1 if any fails.
    #[arg(long)]
    verify: bool,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write characteristic polynomial coefficients as JSON.
    #[arg(long, num_args = 0..=1, default_missing_value = DEFAULT_CHARPOLY)]
    emit_charpoly: Option<PathBuf>,
    /// Directory for the action matrix cache (overridden by COCYCLE_CACHE_DIR).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// key=value file with the same keys as the long flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug)]
struct RunConfig {
    q: u32,
    ks: Vec<usize>,
    units: Vec<(usize, u8, Level)>,
    format: Format,
    out: Option<PathBuf>,
    verify: bool,
    jobs: Option<usize>,
    emit_charpoly: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
}

fn read_config_file(path: &Path) -> anyhow::Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), n + 1))?;
        map.insert(key.trim().replace('_', "-"), value.trim().to_string());
    }
    Ok(map)
}

fn parse_bool(s: &str) -> anyhow::Result<bool> {
    match s.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => bail!("not a boolean: {s}"),
    }
}

/// Fill unset flags from the config file.
fn merge(mut args: Args) -> anyhow::Result<Args> {
    let Some(path) = args.config.clone() else { return Ok(args) };
    for (key, value) in read_config_file(&path)? {
        match key.as_str() {
            "q" => args.q = args.q.or(Some(value.parse().with_context(|| format!("q = {value}"))?)),
            "k" => args.k = args.k.or(Some(value)),
            "op" => args.op = args.op.or(Some(value)),
            "level" => args.level = args.level.or(Some(value)),
            "format" => args.format = args.format.or(Some(value)),
            "out" => args.out = args.out.or(Some(value.into())),
            "verify" => args.verify |= parse_bool(&value)?,
            "jobs" => args.jobs = args.jobs.or(Some(value.parse().with_context(|| format!("jobs = {value}"))?)),
            "emit-charpoly" => args.emit_charpoly = args.emit_charpoly.or(Some(value.into())),
            "cache-dir" => args.cache_dir = args.cache_dir.or(Some(value.into())),
            other => bail!("unknown config key `{other}`"),
        }
    }
    Ok(args)
}

fn parse_k(s: &str) -> anyhow::Result<Vec<usize>> {
    let parse = |x: &str| x.trim().parse::<usize>().with_context(|| format!("bad weight `{x}`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                bail!("empty weight range {s}");
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![parse(s)?]),
    }
}

fn list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

/// `u_i` live below `GL_3(A)`, `t_i` only at it.
fn valid_levels(op: &str) -> &'static [Level] {
    if op.starts_with('t') {
        &[Level::Gl3]
    } else {
        &[Level::Gamma1, Level::Gamma0, Level::P0, Level::P2]
    }
}

fn build_config(args: Args) -> anyhow::Result<RunConfig> {
    let args = merge(args)?;
    let q = args.q.ok_or_else(|| anyhow!("--q is required"))?;
    if q > MAX_Q {
        bail!("q = {q} exceeds the supported ceiling {MAX_Q}");
    }
    GaloisField::new(q)?;
    let ks = parse_k(args.k.as_deref().ok_or_else(|| anyhow!("--k is required"))?)?;
    let ops: Vec<&str> = list(args.op.as_deref().unwrap_or("u1,u2,t1,t2")).collect();
    if ops.is_empty() {
        bail!("no operators requested");
    }
    let requested: Option<Vec<Level>> = args
        .level
        .as_deref()
        .map(|s| list(s).map(str::parse).collect::<Result<_, _>>())
        .transpose()?;
    let mut units = Vec::new();
    for op in &ops {
        let i = match *op {
            "u1" | "t1" => 1,
            "u2" | "t2" => 2,
            other => bail!("unknown operator `{other}`"),
        };
        let valid = valid_levels(op);
        let levels: Vec<Level> = match &requested {
            Some(r) => r.iter().copied().filter(|l| valid.contains(l)).collect(),
            None => valid.to_vec(),
        };
        if levels.is_empty() {
            bail!("operator {op} has no valid level among those requested");
        }
        for &k in &ks {
            units.extend(levels.iter().map(|&l| (k, i, l)));
        }
    }
    units.sort();
    units.dedup();
    let format = match args.format.as_deref() {
        Some(s) => s.parse()?,
        None => Format::Md,
    };
    if args.jobs == Some(0) {
        bail!("--jobs must be positive");
    }
    let cache_dir = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from).or(args.cache_dir);
    Ok(RunConfig {
        q,
        ks,
        units,
        format,
        out: args.out,
        verify: args.verify,
        jobs: args.jobs,
        emit_charpoly: args.emit_charpoly,
        cache_dir,
    })
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cfg: RunConfig) -> anyhow::Result<bool> {
    let start = Instant::now();
    let cache = Arc::new(ActionCache::new());
    if let Some(dir) = &cfg.cache_dir {
        let n = cache.load(dir)?;
        eprintln!("cache: loaded {n} action matrices from {}", dir.display());
    }
    let engine = Engine::with_cache(cfg.q, cache.clone())?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build()?;
    let results: Vec<Computation> = pool.install(|| {
        cfg.units
            .par_iter()
            .map(|&(k, i, level)| engine.compute(i, level, k))
            .collect::<Result<_, _>>()
    })?;
    let tables: Vec<_> = results.iter().map(|c| c.table.clone()).collect();
    write_output(cfg.out.as_deref(), &format_tables(&tables, cfg.format))?;
    if let Some(path) = &cfg.emit_charpoly {
        let arr: Vec<_> = results.iter().map(Computation::charpoly_json).collect();
        std::fs::write(path, serde_json::to_string_pretty(&arr)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let stats = cache.stats();
    eprintln!(
        "cache: {} hits, {} misses, {} entries; {} units for k in {}..{} in {:.2?}",
        stats.hits,
        stats.misses,
        stats.entries,
        cfg.units.len(),
        cfg.ks.first().unwrap(),
        cfg.ks.last().unwrap(),
        start.elapsed()
    );
    if let Some(dir) = &cfg.cache_dir {
        cache.save(dir)?;
    }
    let mut ok = true;
    if cfg.verify {
        for report in verify::run_all(VERIFY_SEED) {
            eprintln!("{report}");
            for f in report.failures.iter().take(5) {
                eprintln!("    {f}");
            }
            ok &= report.passed;
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cfg = match build_config(Args::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match run(cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
