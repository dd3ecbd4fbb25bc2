use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use motif_cli::commands::{self, ConstructKind, Engine, MaximizeOptions, Mode, COUNT_LIMIT};
use motif_cli::{digest_inputs, fixtures, CliError, Field, Format, RunReport};
use motif_core::construct::MAX_CONSTRUCTION_POINTS;
use motif_core::search::DEFAULT_BUDGET;
use motif_core::{MotifSpec, PointSet};

#[derive(Parser)]
#[command(
    name = "motifs",
    version,
    about = "Count motifs and build extremal point sets"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for counting and exhaustive search.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Grid,
    Matching,
    Lines,
}

#[derive(Subcommand)]
enum Command {
    /// Classification, hypergraph, LP optima and certificates of a spec.
    Analyze { spec: PathBuf },
    /// Count the motifs of a point set and check the upper bound.
    Count {
        spec: PathBuf,
        points: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Join)]
        engine: Engine,
    },
    /// Build an extremal point set.
    Construct {
        spec: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Values per coordinate group (grid).
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Blow-up base (matching).
        #[arg(long)]
        m: Option<u64>,
        /// Number of points (lines).
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = MAX_CONSTRUCTION_POINTS)]
        max_points: usize,
        /// Write the point set here instead of into the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search `{0..s-1}^p` for r-point sets with the most motifs.
    Maximize {
        spec: PathBuf,
        /// Side length `s` of the integer box.
        #[arg(long)]
        universe: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Start-set seed (local mode).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relocation moves (local mode).
        #[arg(long, default_value_t = 100)]
        iters: usize,
        /// Write one point file per maximizer here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Centers, hypercenters and line cover of a point set.
    Structure { spec: PathBuf, points: PathBuf },
    /// Rerun the bundled examples.
    Reproduce,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_spec(path: &Path, inputs: &mut Vec<Vec<u8>>) -> Result<MotifSpec, CliError> {
    let bytes = read(path)?;
    let text = String::from_utf8_lossy(&bytes).into_owned();
    inputs.push(bytes);
    motif_cli::parse_spec(&text).map_err(|source| CliError::SpecFile {
        path: path.to_path_buf(),
        source,
    })
}

fn load_points(path: &Path, inputs: &mut Vec<Vec<u8>>) -> Result<PointSet, CliError> {
    let bytes = read(path)?;
    let text = String::from_utf8_lossy(&bytes).into_owned();
    inputs.push(bytes);
    motif_cli::parse_points(&text).map_err(|source| CliError::PointFile {
        path: path.to_path_buf(),
        source,
    })
}

fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut inputs = Vec::new();
    let outputs = match &cli.command {
        Command::Analyze { spec } => commands::analyze(&load_spec(spec, &mut inputs)?)?,
        Command::Count {
            spec,
            points,
            engine,
        } => {
            let spec = load_spec(spec, &mut inputs)?;
            let set = load_points(points, &mut inputs)?;
            commands::count(&spec, &set, *engine, cli.threads)?
        }
        Command::Construct {
            spec,
            kind,
            sizes,
            m,
            r,
            max_points,
            out,
        } => {
            let spec = load_spec(spec, &mut inputs)?;
            let need = |what: &str| CliError::Usage(format!("--kind needs --{what}"));
            let kind = match kind {
                Kind::Grid if sizes.is_empty() => return Err(need("sizes")),
                Kind::Grid => ConstructKind::Grid {
                    sizes: sizes.clone(),
                },
                Kind::Matching => ConstructKind::Matching {
                    m: m.ok_or_else(|| need("m"))?,
                    max_points: *max_points,
                },
                Kind::Lines => ConstructKind::Lines {
                    r: r.ok_or_else(|| need("r"))?,
                },
            };
            let (set, mut section) = commands::construct(&spec, &kind)?;
            match out {
                Some(path) => {
                    write(path, &motif_cli::write_points(&set))?;
                    section.text("written", path.display());
                }
                None if set.len() <= COUNT_LIMIT => {
                    section.put("points", Field::list(set.iter()));
                }
                None => {}
            }
            section
        }
        Command::Maximize {
            spec,
            universe,
            r,
            mode,
            budget,
            seed,
            iters,
            out_dir,
        } => {
            let spec = load_spec(spec, &mut inputs)?;
            let opts = MaximizeOptions {
                side: *universe,
                r: *r,
                mode: *mode,
                budget: *budget,
                seed: *seed,
                iters: *iters,
            };
            let (res, mut section) = commands::maximize(&spec, &opts, cli.threads)?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
                for (i, m) in res.maximizers.iter().enumerate() {
                    write(
                        &dir.join(format!("maximizer_{i:03}.pts")),
                        &motif_cli::write_points(m),
                    )?;
                }
                section.text("written", dir.display());
            }
            section
        }
        Command::Structure { spec, points } => {
            let spec = load_spec(spec, &mut inputs)?;
            let set = load_points(points, &mut inputs)?;
            commands::structure_section(&spec, &set)?
        }
        Command::Reproduce => {
            inputs.push(fixtures::K4_SPEC.as_bytes().to_vec());
            inputs.push(fixtures::CORNER_SPEC.as_bytes().to_vec());
            commands::reproduce(cli.threads)?
        }
    };
    Ok(RunReport {
        command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        inputs_digest: digest_inputs(inputs.iter().map(Vec::as_slice)),
        outputs,
        timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
