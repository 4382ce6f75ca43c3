use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypercheck::properties::DEFAULT_SEED;
use hypercheck::report::{self, Report, RunOptions, LIE_RANKS, LIFT_MS};
use hypercheck::sequences::{SequenceProblem, WallData};

/// Exact verification of the 120-cell, Davis manifold, coadjoint orbit,
/// Chern class and exact sequence computations.
#[derive(Parser)]
#[command(name = "hypercheck", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Bits for certified interval enclosures.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(8..))]
    precision: u32,
    /// Bound on Coxeter group enumeration.
    #[arg(long, global = true, default_value_t = 20_000)]
    max_order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// [5,3,3] group, 120-cell face lattice and its hyperbolic realization.
    Polytope,
    /// Davis manifold from the 120-cell and its involution.
    Davis {
        #[command(subcommand)]
        which: DavisCmd,
    },
    /// Coadjoint orbit of so(2n,1).
    Lie {
        #[command(subcommand)]
        which: LieCmd,
    },
    /// Cyclic quotient singularities and their resolutions.
    Singularity {
        #[command(subcommand)]
        which: SingularityCmd,
    },
    /// Chern class bookkeeping.
    Chern {
        #[command(subcommand)]
        which: ChernCmd,
    },
    /// Homology from exact sequences.
    Seq {
        #[command(subcommand)]
        which: SeqCmd,
    },
    /// Wall classification of simply connected 6-manifolds.
    Wall {
        #[command(subcommand)]
        which: WallCmd,
    },
    /// Every suite plus the randomized property families.
    Selftest {
        /// Cases per property family.
        #[arg(long, default_value_t = 2_000)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum DavisCmd {
    /// Glue, compute homology, the involution and the resolution bookkeeping.
    All,
}

#[derive(Subcommand)]
enum LieCmd {
    /// Stabilizer and isotropy summands of so(2n,1) at ξ.
    Decompose {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Invariant 2-forms and the Kirillov form.
    Forms {
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SingularityCmd {
    /// Fixed locus of the lifted action and the conifold check.
    FixedLocus {
        #[arg(long)]
        m: Option<u32>,
    },
    /// Order of the lifted generator.
    LiftOrder {
        #[arg(long)]
        m: Option<u32>,
    },
}

#[derive(Subcommand)]
enum ChernCmd {
    /// Coefficient of [ω] in c1 of the twistor space.
    Twistor {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Chern and Pontryagin numbers along the exceptional divisor.
    ResolutionCheck,
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Solve an exact-sequence problem file.
    Solve { file: PathBuf },
    /// Homology of the resolved knot threefold.
    KnotThreefold,
    /// Orbifold homology via Mayer–Vietoris.
    OrbifoldMv,
}

#[derive(Subcommand)]
enum WallCmd {
    /// Match Wall invariants against connected sums.
    Match { file: PathBuf },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: &Cli) -> Result<Report, String> {
    let g = &cli.global;
    let opts = RunOptions { seed: g.seed, precision: g.precision, max_order: g.max_order, ..RunOptions::default() };
    let ns = |n: &Option<usize>| n.map_or(LIE_RANKS.to_vec(), |n| vec![n]);
    let ms = |m: &Option<u32>| m.map_or(LIFT_MS.to_vec(), |m| vec![m]);
    Ok(match &cli.command {
        Command::Polytope => report::polytope_report(&opts),
        Command::Davis { which: DavisCmd::All } => report::davis_report(&opts),
        Command::Lie { which: LieCmd::Decompose { n } } => report::lie_report(&ns(n), true, false),
        Command::Lie { which: LieCmd::Forms { n } } => report::lie_report(&ns(n), false, true),
        Command::Singularity { which: SingularityCmd::FixedLocus { m } } => report::fixed_locus_report(&ms(m), &opts),
        Command::Singularity { which: SingularityCmd::LiftOrder { m } } => report::lift_order_report(&ms(m)),
        Command::Chern { which: ChernCmd::Twistor { n } } => report::twistor_report(&ns(n)),
        Command::Chern { which: ChernCmd::ResolutionCheck } => report::resolution_report(),
        Command::Seq { which: SeqCmd::Solve { file } } => report::solve_report(&read_json::<SequenceProblem>(file)?),
        Command::Seq { which: SeqCmd::KnotThreefold } => report::knot_threefold_report(),
        Command::Seq { which: SeqCmd::OrbifoldMv } => report::orbifold_report(),
        Command::Wall { which: WallCmd::Match { file } } => report::wall_report(&read_json::<WallData>(file)?),
        Command::Selftest { cases } => report::selftest_report(&RunOptions { property_cases: *cases, ..opts }),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    println!("{report}");
    if let Some(path) = &cli.global.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
