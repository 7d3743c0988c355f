//! `lmc`: lower bounds, exact sizes and constructions for CNOT circuits.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lmc::{BoundOptions, ConstructionId, MiddleRounding, TransposeRule};

use commands::Verdict;

#[derive(Parser)]
#[command(
    name = "lmc",
    version,
    about = "Link/middle/cut bounds for CNOT circuit size"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the LMC lower bound and its ingredients.
    Bound {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        opts: BoundFlags,
    },
    /// Print v(M), e(M) and both component partitions.
    Connectivity { matrix: PathBuf },
    /// Print M ∧ M⁻ᵀ + I, Emp, Dup and c_perfect.
    Cperfect { matrix: PathBuf },
    /// List every river in one-line notation (n <= 8).
    Rivers { matrix: PathBuf },
    /// Label each gate of a synthesis as link, middle or cut.
    Classify { synthesis: PathBuf },
    /// Build a 3(n - k) synthesis of a permutation given in cycle notation.
    SynthPerm {
        /// Cycles over 1-indexed qubits, e.g. "(1 3 5)(2 4)".
        cycles: String,
        #[arg(long, default_value = "row1")]
        construction: ConstructionId,
        /// Number of qubits; defaults to the largest label.
        #[arg(long)]
        n: Option<usize>,
        /// Write the synthesis here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a connected matrix has an all-link synthesis.
    Linkable { matrix: PathBuf },
    /// Exhaustive census of bound against exact size.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        n: u8,
        /// Directory for the CSV and JSON reports; stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Size-table cache file, read if present and written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Report wall-clock timings on stderr.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        opts: BoundFlags,
    },
    /// Check a synthesis against a matrix and compare its length to the bound.
    Verify { matrix: PathBuf, synthesis: PathBuf },
}

#[derive(Args, Clone, Copy)]
struct BoundFlags {
    /// Take the maximum over M, Mᵀ, M⁻¹ and M⁻ᵀ.
    #[arg(long)]
    strengthen: bool,
    /// Use the rational c_perfect instead of its floor.
    #[arg(long)]
    no_floor: bool,
    #[arg(long, value_enum, default_value = "weaker")]
    transpose: TransposeArg,
    /// Do not cap c_perfect by the nullity of M'.
    #[arg(long)]
    no_nullity_cap: bool,
}

#[derive(ValueEnum, Clone, Copy)]
enum TransposeArg {
    Weaker,
    Stronger,
}

impl From<BoundFlags> for BoundOptions {
    fn from(f: BoundFlags) -> Self {
        BoundOptions {
            rounding: if f.no_floor {
                MiddleRounding::Exact
            } else {
                MiddleRounding::Floor
            },
            transpose: match f.transpose {
                TransposeArg::Weaker => TransposeRule::Weaker,
                TransposeArg::Stronger => TransposeRule::Stronger,
            },
            nullity_cap: !f.no_nullity_cap,
            strengthen: f.strengthen,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    match cli.command {
        Command::Bound { matrix, json, opts } => commands::bound(&matrix, json, opts.into()),
        Command::Connectivity { matrix } => commands::connectivity(&matrix),
        Command::Cperfect { matrix } => commands::cperfect(&matrix),
        Command::Rivers { matrix } => commands::rivers(&matrix),
        Command::Classify { synthesis } => commands::classify(&synthesis),
        Command::SynthPerm {
            cycles,
            construction,
            n,
            out,
        } => commands::synth_perm(&cycles, construction, n, out.as_deref()),
        Command::Linkable { matrix } => commands::linkable(&matrix),
        Command::Census {
            n,
            out,
            cache,
            threads,
            timings,
            opts,
        } => {
            let cache = cache.or_else(|| {
                std::env::var_os("LMC_CACHE_DIR")
                    .map(|dir| PathBuf::from(dir).join(format!("sizes_n{n}.lmc1")))
            });
            let census = commands::CensusArgs {
                n: n as usize,
                out,
                cache,
                timings,
                opts: opts.into(),
            };
            match threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()?
                    .install(|| commands::census(&census)),
                None => commands::census(&census),
            }
        }
        Command::Verify { matrix, synthesis } => commands::verify(&matrix, &synthesis),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
