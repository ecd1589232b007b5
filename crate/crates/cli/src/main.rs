use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;
use walg_core::catalogue;
use walg_core::report::{to_json, to_text};
use walg_core::rootsystem::LieType;
use walg_core::sl2grading::DynkinLabels;
use walg_core::{run, Mode, RunConfig, WalgError};

/// Presentations and one-dimensional representations of finite W-algebras.
///
/// Examples:
///   walg present G 2 --orbit A1~
///   walg onedim-fast F 4 --orbit A1
///   walg G 2 --labels 1,0 --out reports/
#[derive(Parser, Debug)]
#[command(name = "walg", version, verbatim_doc_comment)]
struct Cli {
    /// [MODE] TYPE RANK, e.g. `present G 2` or `F 4`.
    #[arg(num_args = 2..=3, value_name = "ARGS", required_unless_present = "list_orbits")]
    target: Vec<String>,

    /// Weighted Dynkin diagram, comma separated, Bourbaki numbering.
    #[arg(long, conflicts_with = "orbit")]
    labels: Option<String>,

    /// Name of a catalogued rigid orbit, e.g. `A1`, `A1~`, `A2~+A1`.
    #[arg(long)]
    orbit: Option<String>,

    /// present | generators-only | onedim-fast
    #[arg(long)]
    mode: Option<String>,

    /// Output directory for report.json and report.txt.
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Worker threads (default: available cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Largest candidate set solved directly for one generator.
    #[arg(long, default_value_t = walg_core::generators::DEFAULT_MAX_CANDIDATES)]
    max_candidates: usize,

    /// Degree bound for the elimination in the one-dimensional solver.
    #[arg(long)]
    solver_degree_bound: Option<u32>,

    /// Root vector signs: `reference`, `none`, or a comma list of ±1.
    #[arg(long, default_value = "reference")]
    root_signs: String,

    /// List the orbit catalogue and exit.
    #[arg(long)]
    list_orbits: bool,
}

enum Failure {
    Input(anyhow::Error),
    Core(WalgError),
    Io(anyhow::Error),
}

impl From<WalgError> for Failure {
    fn from(e: WalgError) -> Self {
        Failure::Core(e)
    }
}

fn parse_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let (mode_pos, type_s, rank_s) = match cli.target.as_slice() {
        [t, r] => (None, t, r),
        [m, t, r] => (Some(m.as_str()), t, r),
        _ => bail!("expected [MODE] TYPE RANK"),
    };
    let mode = match (mode_pos, cli.mode.as_deref()) {
        (Some(a), Some(b)) if a != b => bail!("mode given twice: {a} and {b}"),
        (Some(m), _) | (None, Some(m)) => m.parse::<Mode>()?,
        (None, None) => Mode::Present,
    };
    let lie_type: LieType = type_s.parse()?;
    let rank: usize = rank_s.parse().with_context(|| format!("rank {rank_s:?}"))?;
    let mut config = match (&cli.labels, &cli.orbit) {
        (Some(l), None) => {
            let labels: DynkinLabels = l.parse()?;
            let mut c = RunConfig::new(lie_type, rank, labels);
            c.orbit = catalogue::name_of(lie_type, rank, c.labels.as_slice()).map(str::to_string);
            c
        }
        (None, Some(o)) => RunConfig::for_orbit(lie_type, rank, o)?,
        _ => bail!("give exactly one of --labels or --orbit"),
    };
    config.mode = mode;
    config.threads = cli.threads;
    config.max_candidates = cli.max_candidates;
    config.solver_degree_bound = cli.solver_degree_bound;
    config.signs = match cli.root_signs.as_str() {
        "reference" => None,
        "none" => Some(vec![1; num_positive(lie_type, rank)?]),
        list => Some(
            list.split(',')
                .map(|s| s.trim().parse::<i8>().with_context(|| format!("sign {s:?}")))
                .collect::<anyhow::Result<_>>()?,
        ),
    };
    Ok(config)
}

fn num_positive(t: LieType, rank: usize) -> anyhow::Result<usize> {
    Ok(walg_core::rootsystem::RootSystem::new(t, rank)?.num_positive())
}

fn list_orbits() {
    for e in catalogue::CATALOGUE {
        let labels: Vec<String> = e.labels.iter().map(|l| l.to_string()).collect();
        println!(
            "{}{} {:<8} labels {:<14} dim g^e {:>3}  1-dim reps {}{}",
            e.lie_type,
            e.rank,
            e.name,
            labels.join(","),
            e.centralizer_dim,
            e.onedim_count,
            if e.extended_runtime { "  (extended runtime)" } else { "" }
        );
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let config = parse_config(cli).map_err(Failure::Input)?;
    let res = run(&config)?;
    fs::create_dir_all(&cli.out)
        .with_context(|| format!("creating {}", cli.out.display()))
        .map_err(Failure::Io)?;
    let json_path = cli.out.join("report.json");
    let text_path = cli.out.join("report.txt");
    let text = to_text(&res);
    fs::write(&json_path, to_json(&res))
        .with_context(|| format!("writing {}", json_path.display()))
        .map_err(Failure::Io)?;
    fs::write(&text_path, &text)
        .with_context(|| format!("writing {}", text_path.display()))
        .map_err(Failure::Io)?;
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_orbits {
        list_orbits();
        return ExitCode::SUCCESS;
    }
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(4)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                WalgError::InvalidInput(_) | WalgError::InvalidLabels(_) => 2,
                WalgError::Undecided(_) => 3,
                WalgError::Invariant { .. } | WalgError::MissingRelation(..) => 4,
            })
        }
    }
}
