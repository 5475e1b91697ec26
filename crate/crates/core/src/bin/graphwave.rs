use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use graphwave::closed_form::StarGeometry;
use graphwave::control::{optimal_time, solve_controls_at, verify_control};
use graphwave::experiment::{measure_transmission, run_tables};
use graphwave::graph::{GraphSpec, VertexId};
use graphwave::io as csvio;
use graphwave::lattice::{simulate, ConditionKind, ControlSignal, NodeCondition};
use graphwave::{Error, Result};

#[derive(Parser)]
#[command(name = "graphwave", version, about = "Discrete wave equation on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time-step a graph from rest and write the trajectory as CSV.
    Simulate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "matched")]
        condition: ConditionKind,
        /// `VERTEX=PATH` for each control vertex, PATH holding `t,value` rows.
        #[arg(long, num_args = 0..)]
        controls: Vec<String>,
        #[arg(long, allow_negative_numbers = true)]
        horizon: i64,
        /// Output file, `-` for stdout.
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Print the impulse scattering tables of the 3-star.
    Tables,
    /// Measure transmission and reflection of a unit pulse at the center of S_k.
    Transmit {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "matched")]
        condition: ConditionKind,
    },
    /// Solve the shape control problem on the 3-star.
    Control {
        /// Edge lengths `N1,N2,N3`.
        #[arg(long, value_delimiter = ',', required = true)]
        geom: Vec<usize>,
        #[arg(long)]
        target: PathBuf,
        /// Control time; defaults to the optimal time.
        #[arg(long)]
        time: Option<usize>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// Re-simulate and check the final shape.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Residual report CSV (with `--verify`).
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn output(path: &Path) -> Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufWriter::new(std::io::stdout())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

fn parse_control(arg: &str) -> Result<ControlSignal> {
    let (vertex, path) = arg
        .split_once('=')
        .ok_or_else(|| Error::Format(format!("control '{arg}' is not VERTEX=PATH")))?;
    let vertex: usize = vertex
        .trim()
        .parse()
        .map_err(|_| Error::Format(format!("invalid vertex '{vertex}'")))?;
    let values = csvio::read_control(File::open(path)?)?;
    Ok(ControlSignal::new(VertexId(vertex), values))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate {
            graph,
            condition,
            controls,
            horizon,
            out,
        } => {
            if horizon < 0 {
                return Err(Error::NegativeHorizon(horizon));
            }
            let graph = std::fs::read_to_string(graph)?.parse::<GraphSpec>()?.build()?;
            let condition: NodeCondition = condition.resolve(&graph);
            let signals = controls.iter().map(|c| parse_control(c)).collect::<Result<Vec<_>>>()?;
            let traj = simulate(&graph, &condition, &signals, horizon as usize)?;
            csvio::write_trajectory(&traj, output(&out)?)
        }
        Command::Tables => {
            let mut stdout = std::io::stdout().lock();
            for table in run_tables()? {
                writeln!(stdout, "{table}")?;
                writeln!(stdout, "{}", table.decimal())?;
            }
            Ok(())
        }
        Command::Transmit { k, n, condition } => {
            print!("{}", measure_transmission(k, n, condition)?);
            Ok(())
        }
        Command::Control {
            geom,
            target,
            time,
            out,
            verify,
            tol,
            report,
        } => {
            let &[n1, n2, n3] = geom.as_slice() else {
                return Err(Error::InvalidGeometry(geom));
            };
            let geom = StarGeometry::new(n1, n2, n3)?;
            let target = csvio::read_target(File::open(target)?, &geom)?;
            let horizon = time.unwrap_or_else(|| optimal_time(&geom));
            let pair = solve_controls_at(&target, &geom, horizon)?;
            csvio::write_controls(&pair, output(&out)?)?;
            if verify {
                let check = verify_control(&pair, &target, &geom, &NodeCondition::matched(&geom.graph()))?;
                if let Some(path) = report {
                    csvio::write_residuals(&check, output(&path)?)?;
                }
                eprintln!("horizon {horizon}, max residual {:e}", check.max_residual);
                if check.max_residual > tol {
                    return Err(Error::ResidualTooLarge {
                        residual: check.max_residual,
                        tolerance: tol,
                    });
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("graphwave: {e}");
            ExitCode::FAILURE
        }
    }
}
