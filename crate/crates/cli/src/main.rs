//! `antisim`: simulation preorders, antichain universality and inclusion
//! checks, automaton reduction, random instances and benchmarks.

mod bench;
mod grid;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use antisim_core::format::{
    parse_aba, parse_fa, parse_lts, parse_timbuk, serialize_aba, serialize_fa, serialize_lts, serialize_timbuk,
};
use antisim_core::generate::{
    generate_random_aba, generate_random_fa, generate_random_lts, generate_random_ta, AbaParams,
};
use antisim_core::{normalize_aba, RankedSymbol, StateRelation};
use antisim_engine::lts_sim::maximal_simulation;
use antisim_engine::{
    aba_backward_simulation, aba_forward_simulation, fa_forward_simulation, fa_inclusion, fa_universality,
    is_ambiguous, mediated_preorder, quotient_aba, quotient_nfa, remove_ambiguity, ta_inclusion, ta_universality,
    ta_upward_simulation, Engine, Verdict,
};
use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "antisim",
    version,
    about = "Simulation-based antichain checks for finite, tree and alternating automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a maximal simulation as `p <= q` lines.
    Sim {
        #[arg(long, value_enum)]
        kind: SimKind,
        input: PathBuf,
    },
    /// Check universality. Exit 0 if universal, 1 if not.
    Univ {
        input: PathBuf,
        #[arg(long, default_value = "antichain-sim", value_parser = parse_engine)]
        engine: Engine,
        #[arg(long, value_enum, default_value = "fa")]
        kind: CheckKind,
    },
    /// Check language inclusion L(A) ⊆ L(B). Exit 0 if it holds, 1 if not.
    Incl {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "antichain-sim", value_parser = parse_engine)]
        engine: Engine,
        #[arg(long, value_enum, default_value = "fa")]
        kind: CheckKind,
    },
    /// Quotient an automaton by a simulation equivalence.
    Reduce {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: ReduceKind,
        #[arg(long, value_enum, default_value = "forward")]
        relation: RelationKind,
        #[arg(short, long)]
        output: PathBuf,
        /// Remove forward ambiguity before a mediated reduction.
        #[arg(long)]
        disambiguate: bool,
        /// Reduce ambiguous input anyway; the language may grow.
        #[arg(long)]
        force: bool,
    },
    /// Generate a random automaton.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        symbols: usize,
        /// Ranked alphabet for tree automata, e.g. `a:0,b:0,f:2`.
        #[arg(long, default_value = "a:0,b:0,f:2")]
        ranked: String,
        #[arg(long)]
        td: f64,
        #[arg(long)]
        fd: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest conjunct of a random ABA transition.
        #[arg(long, default_value_t = 2)]
        max_conjunct: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run engines over a density grid of random instances and write CSV.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SimKind {
    Lts,
    FaForward,
    TaUpward,
    AbaForward,
    AbaBackward,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum CheckKind {
    Fa,
    Ta,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Fa,
    Aba,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationKind {
    Forward,
    Mediated,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Lts,
    Fa,
    Ta,
    Aba,
}

pub(crate) fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse()
}

pub(crate) fn parse_ranked(spec: &str) -> Result<Vec<RankedSymbol>> {
    spec.split(',')
        .map(|item| {
            let (name, arity) =
                item.trim().split_once(':').with_context(|| format!("ranked symbol `{item}` is not `name:arity`"))?;
            let arity = arity.parse().with_context(|| format!("bad arity in `{item}`"))?;
            Ok(RankedSymbol::new(name, arity))
        })
        .collect()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn print_relation(names: &[String], rel: &StateRelation) {
    let mut out = std::io::stdout().lock();
    for (p, q) in rel.pairs() {
        let _ = writeln!(out, "{} <= {}", names[p], names[q]);
    }
}

fn cmd_sim(kind: SimKind, input: &Path) -> Result<()> {
    let text = read(input)?;
    match kind {
        SimKind::Lts => {
            let lts = parse_lts(&text)?;
            let sim = maximal_simulation(&lts, &StateRelation::full(lts.num_states()))?;
            print_relation(lts.state_names(), &sim);
        }
        SimKind::FaForward => {
            let nfa = parse_fa(&text)?;
            print_relation(nfa.state_names(), &fa_forward_simulation(&nfa));
        }
        SimKind::TaUpward => {
            let ta = parse_timbuk(&text)?;
            print_relation(ta.state_names(), &ta_upward_simulation(&ta));
        }
        SimKind::AbaForward => {
            let aba = normalize_aba(&parse_aba(&text)?);
            print_relation(aba.state_names(), &aba_forward_simulation(&aba));
        }
        SimKind::AbaBackward => {
            let aba = normalize_aba(&parse_aba(&text)?);
            let fwd = aba_forward_simulation(&aba);
            print_relation(aba.state_names(), &aba_backward_simulation(&aba, &fwd)?);
        }
    }
    Ok(())
}

fn report(v: &Verdict, yes: &str, no: &str, alphabet: Option<&[String]>) -> bool {
    println!("{}", if v.holds { yes } else { no });
    if let (Some(word), Some(alphabet)) = (&v.witness, alphabet) {
        let letters: Vec<&str> = word.iter().map(|&a| alphabet[a].as_str()).collect();
        println!("witness: {}", if letters.is_empty() { "ε".to_string() } else { letters.join(" ") });
    }
    println!("generated={} stored_peak={}", v.stats.generated, v.stats.stored_peak);
    v.holds
}

fn cmd_univ(input: &Path, engine: Engine, kind: CheckKind) -> Result<bool> {
    let text = read(input)?;
    Ok(match kind {
        CheckKind::Fa => {
            let nfa = parse_fa(&text)?;
            let v = fa_universality(&nfa, engine, None)?;
            report(&v, "UNIVERSAL", "NOT UNIVERSAL", Some(nfa.alphabet()))
        }
        CheckKind::Ta => {
            let v = ta_universality(&parse_timbuk(&text)?, engine, None)?;
            report(&v, "UNIVERSAL", "NOT UNIVERSAL", None)
        }
    })
}

fn cmd_incl(a: &Path, b: &Path, engine: Engine, kind: CheckKind) -> Result<bool> {
    let (ta, tb) = (read(a)?, read(b)?);
    Ok(match kind {
        CheckKind::Fa => {
            let (a, b) = (parse_fa(&ta)?, parse_fa(&tb)?);
            let v = fa_inclusion(&a, &b, engine, None)?;
            report(&v, "INCLUDED", "NOT INCLUDED", Some(a.alphabet()))
        }
        CheckKind::Ta => {
            let v = ta_inclusion(&parse_timbuk(&ta)?, &parse_timbuk(&tb)?, engine, None)?;
            report(&v, "INCLUDED", "NOT INCLUDED", None)
        }
    })
}

fn cmd_reduce(
    input: &Path,
    kind: ReduceKind,
    relation: RelationKind,
    output: &Path,
    disambiguate: bool,
    force: bool,
) -> Result<()> {
    let text = read(input)?;
    let (before, after, serialized) = match (kind, relation) {
        (ReduceKind::Fa, RelationKind::Mediated) => bail!("the mediated preorder is defined for ABAs only"),
        (ReduceKind::Fa, RelationKind::Forward) => {
            let nfa = parse_fa(&text)?;
            let q = quotient_nfa(&nfa, &fa_forward_simulation(&nfa).symmetric_core())?;
            ((nfa.num_states(), nfa.transitions().len()), (q.num_states(), q.transitions().len()), serialize_fa(&q))
        }
        (ReduceKind::Aba, relation) => {
            let aba = normalize_aba(&parse_aba(&text)?);
            let mut work = aba.clone();
            let mut fwd = aba_forward_simulation(&work);
            let equiv = match relation {
                RelationKind::Forward => fwd.symmetric_core(),
                RelationKind::Mediated => {
                    if disambiguate {
                        work = remove_ambiguity(&work, &fwd)?;
                        fwd = aba_forward_simulation(&work);
                    } else if is_ambiguous(&work, &fwd) && !force {
                        bail!("ambiguous input: rerun with --disambiguate, or --force to reduce anyway");
                    }
                    let bwd = aba_backward_simulation(&work, &fwd)?;
                    mediated_preorder(&fwd, &bwd)?.symmetric_core()
                }
            };
            let q = quotient_aba(&work, &equiv)?;
            ((aba.num_states(), aba.num_transitions()), (q.num_states(), q.num_transitions()), serialize_aba(&q))
        }
    };
    fs::write(output, serialized).with_context(|| format!("cannot write {}", output.display()))?;
    println!("states: {} -> {}", before.0, after.0);
    println!("transitions: {} -> {}", before.1, after.1);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    kind: GenKind,
    states: usize,
    symbols: usize,
    ranked: &str,
    td: f64,
    fd: f64,
    seed: u64,
    max_conjunct: usize,
    output: Option<&Path>,
) -> Result<()> {
    let text = match kind {
        GenKind::Lts => serialize_lts(&generate_random_lts(states, symbols, td, seed)?),
        GenKind::Fa => serialize_fa(&generate_random_fa(states, symbols, td, fd, seed)?),
        GenKind::Ta => serialize_timbuk(&generate_random_ta(states, &parse_ranked(ranked)?, td, fd, seed)?),
        GenKind::Aba => {
            let params = AbaParams { states, symbols, td, fd, max_conjunct, empty_conjunct: 0.0 };
            serialize_aba(&generate_random_aba(&params, seed)?)
        }
    };
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sim { kind, input } => cmd_sim(kind, &input).map(|_| true),
        Command::Univ { input, engine, kind } => cmd_univ(&input, engine, kind),
        Command::Incl { a, b, engine, kind } => cmd_incl(&a, &b, engine, kind),
        Command::Reduce { input, kind, relation, output, disambiguate, force } => {
            cmd_reduce(&input, kind, relation, &output, disambiguate, force).map(|_| true)
        }
        Command::Gen { kind, states, symbols, ranked, td, fd, seed, max_conjunct, output } => {
            cmd_gen(kind, states, symbols, &ranked, td, fd, seed, max_conjunct, output.as_deref()).map(|_| true)
        }
        Command::Bench(args) => bench::run(&args).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
