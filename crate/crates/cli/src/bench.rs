//! Grid benchmarks over random instances, one CSV row per engine run.

use std::path::PathBuf;
use std::time::Instant;

use antisim_core::generate::{generate_random_fa, generate_random_ta};
use antisim_engine::{fa_inclusion, fa_universality, ta_inclusion, ta_universality, Engine, Verdict};
use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;

use crate::grid::Grid;
use crate::{parse_engine, parse_ranked, CheckKind};

pub const HEADER: [&str; 12] =
    ["kind", "engine", "n_a", "n_b", "sym", "td", "fd", "seed", "result", "generated", "stored_peak", "time_ms"];

/// Seed offset for the right-hand automaton of an inclusion run.
const B_SEED_OFFSET: u64 = 0x9E37_79B9;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Univ,
    Incl,
}

#[derive(Args)]
pub struct BenchArgs {
    /// `td=LIST;fd=LIST;seeds=N`, LIST being `x,y,..` or `start:end:step`.
    #[arg(long)]
    grid: Grid,
    #[arg(long, value_enum, default_value = "fa")]
    kind: CheckKind,
    #[arg(long, value_enum, default_value = "univ")]
    op: Op,
    #[arg(long, default_value_t = 20)]
    states: usize,
    #[arg(long, default_value_t = 2)]
    symbols: usize,
    #[arg(long, default_value = "a:0,b:0,f:2")]
    ranked: String,
    /// Comma-separated engines.
    #[arg(long, value_delimiter = ',', default_value = "classical,antichain,antichain-sim", value_parser = parse_engine)]
    engines: Vec<Engine>,
    /// Output file; standard output when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

struct Row {
    key: (usize, usize, u64, usize),
    fields: Vec<String>,
}

fn timed(f: impl FnOnce() -> Result<Verdict>) -> Result<(Verdict, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64() * 1e3))
}

fn cell(args: &BenchArgs, ti: usize, fi: usize, seed: u64) -> Result<Vec<Row>> {
    let (td, fd) = (args.grid.td[ti], args.grid.fd[fi]);
    let n = args.states;
    let b_seed = seed.wrapping_add(B_SEED_OFFSET);
    let mut rows = Vec::new();
    let kind = match (args.kind, args.op) {
        (CheckKind::Fa, Op::Univ) => "fa-univ",
        (CheckKind::Fa, Op::Incl) => "fa-incl",
        (CheckKind::Ta, Op::Univ) => "ta-univ",
        (CheckKind::Ta, Op::Incl) => "ta-incl",
    };
    let symbols = match args.kind {
        CheckKind::Fa => None,
        CheckKind::Ta => Some(parse_ranked(&args.ranked)?),
    };
    let sym = symbols.as_ref().map_or(args.symbols, Vec::len);
    for (ei, &engine) in args.engines.iter().enumerate() {
        let (v, ms) = match (&symbols, args.op) {
            (None, Op::Univ) => {
                let a = generate_random_fa(n, args.symbols, td, fd, seed)?;
                timed(|| Ok(fa_universality(&a, engine, None)?))?
            }
            (None, Op::Incl) => {
                let a = generate_random_fa(n, args.symbols, td, fd, seed)?;
                let b = generate_random_fa(n, args.symbols, td, fd, b_seed)?;
                timed(|| Ok(fa_inclusion(&a, &b, engine, None)?))?
            }
            (Some(s), Op::Univ) => {
                let a = generate_random_ta(n, s, td, fd, seed)?;
                timed(|| Ok(ta_universality(&a, engine, None)?))?
            }
            (Some(s), Op::Incl) => {
                let a = generate_random_ta(n, s, td, fd, seed)?;
                let b = generate_random_ta(n, s, td, fd, b_seed)?;
                timed(|| Ok(ta_inclusion(&a, &b, engine, None)?))?
            }
        };
        let n_b = if args.op == Op::Incl { n.to_string() } else { String::new() };
        rows.push(Row {
            key: (ti, fi, seed, ei),
            fields: vec![
                kind.to_string(),
                engine.name().to_string(),
                n.to_string(),
                n_b,
                sym.to_string(),
                td.to_string(),
                fd.to_string(),
                seed.to_string(),
                v.holds.to_string(),
                v.stats.generated.to_string(),
                v.stats.stored_peak.to_string(),
                format!("{ms:.3}"),
            ],
        });
    }
    Ok(rows)
}

pub fn run(args: &BenchArgs) -> Result<()> {
    let jobs: Vec<(usize, usize, u64)> = (0..args.grid.td.len())
        .flat_map(|ti| (0..args.grid.fd.len()).flat_map(move |fi| args.grid.seeds.clone().map(move |s| (ti, fi, s))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.threads).build()?;
    let results: Vec<Result<Vec<Row>>> =
        pool.install(|| jobs.par_iter().map(|&(ti, fi, s)| cell(args, ti, fi, s)).collect());
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    rows.sort_by_key(|r| r.key);

    let sink: Box<dyn std::io::Write> = match &args.csv {
        Some(path) => {
            Box::new(std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?)
        }
        None => Box::new(std::io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(HEADER)?;
    for row in rows {
        writer.write_record(&row.fields)?;
    }
    writer.flush()?;
    Ok(())
}
