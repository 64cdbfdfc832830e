// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use bcn_track::cli::{self, CliError, SynthesisRequest, EXIT_OK, EXIT_ORACLE_MISMATCH, EXIT_USAGE};
use bcn_track::finite::{Policy, DEFAULT_ENUMERATION_LIMIT};
use bcn_track::io::{format_network, format_trajectory, TrajectoryFile};
use bcn_track::oracle::{random_instance, InstanceRanges};
use bcn_track::report::Mode;

#[derive(Parser)]
#[command(name = "bcn-track", version, about = "Output tracking for Boolean control networks")]
struct Args {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Finite,
    Periodic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Finite => Mode::Finite,
            ModeArg::Periodic => Mode::Periodic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Min,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Decide from which initial states the reference can be tracked.
    Check {
        network: PathBuf,
        trajectory: PathBuf,
        /// Overrides the `periodic` line of the trajectory file.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Produce input sequences tracking the reference from one initial state.
    Synthesize {
        network: PathBuf,
        trajectory: PathBuf,
        #[arg(long)]
        x0: usize,
        /// Number of steps (periodic mode only; defaults to one period).
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, value_enum, default_value_t = PolicyArg::Min)]
        policy: PolicyArg,
        /// Maximum number of sequences listed with `--policy all`.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Run the network from an initial state under a list of inputs.
    Simulate {
        network: PathBuf,
        #[arg(long)]
        x0: usize,
        /// Comma-separated 1-based input indices.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        inputs: Vec<usize>,
    },
    /// Compare the solver with the brute-force oracle.
    #[command(hide = true)]
    Oracle {
        network: Option<PathBuf>,
        trajectory: Option<PathBuf>,
        /// Seed for a random instance when no files are given.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn name(path: &Path) -> String {
    path.display().to_string()
}

fn run(args: Args) -> Result<i32, CliError> {
    let machine = matches!(args.format, Format::Machine);
    match args.command {
        Command::Check {
            network,
            trajectory,
            mode,
        } => {
            let bcn = cli::load_network(&name(&network), &read(&network)?)?;
            let traj = cli::load_trajectory(&name(&trajectory), &read(&trajectory)?, &bcn)?;
            let mode = cli::resolve_mode(mode.map(Mode::from), &traj);
            let (report, code) = cli::cmd_check(&bcn, &traj, mode)?;
            print!("{}", if machine { report.to_machine() } else { report.to_text() });
            Ok(code)
        }
        Command::Synthesize {
            network,
            trajectory,
            x0,
            horizon,
            policy,
            limit,
            mode,
        } => {
            let bcn = cli::load_network(&name(&network), &read(&network)?)?;
            let traj = cli::load_trajectory(&name(&trajectory), &read(&trajectory)?, &bcn)?;
            let mode = cli::resolve_mode(mode.map(Mode::from), &traj);
            let policy = match policy {
                PolicyArg::Min => Policy::MinIndex,
                PolicyArg::All => Policy::EnumerateAll { limit },
            };
            let request = SynthesisRequest { x0, horizon, policy };
            let (report, code) = cli::cmd_synthesize(&bcn, &traj, mode, request)?;
            print!("{}", if machine { report.to_machine() } else { report.to_text() });
            if code != EXIT_OK {
                eprintln!(
                    "no tracking input sequence from x0 = {x0}; feasible initial states: {:?}",
                    report.x0_set
                );
            }
            Ok(code)
        }
        Command::Simulate { network, x0, inputs } => {
            let bcn = cli::load_network(&name(&network), &read(&network)?)?;
            let report = cli::cmd_simulate(&bcn, x0, &inputs)?;
            print!("{}", if machine { report.to_machine() } else { report.to_text() });
            Ok(EXIT_OK)
        }
        Command::Oracle {
            network,
            trajectory,
            seed,
            mode,
        } => {
            let (bcn, traj) = match (network, trajectory) {
                (Some(n), Some(t)) => {
                    let bcn = cli::load_network(&name(&n), &read(&n)?)?;
                    let traj = cli::load_trajectory(&name(&t), &read(&t)?, &bcn)?;
                    (bcn, traj)
                }
                (None, None) => {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    let inst = random_instance(&mut rng, &InstanceRanges::default());
                    let traj = TrajectoryFile {
                        periodic: matches!(mode, Some(ModeArg::Periodic)),
                        outputs: inst.reference,
                    };
                    println!("# seed {seed}");
                    print!("{}", format_network(&inst.bcn));
                    print!("{}", format_trajectory(&traj));
                    (inst.bcn, traj)
                }
                _ => {
                    return Err(CliError::Usage(
                        "give both a network and a trajectory file, or neither".into(),
                    ))
                }
            };
            let mode = cli::resolve_mode(mode.map(Mode::from), &traj);
            let cmp = cli::cmd_oracle(&bcn, &traj, mode)?;
            print!("{}", cmp.to_text());
            Ok(if cmp.agrees() { EXIT_OK } else { EXIT_ORACLE_MISMATCH })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let code = match run(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    ExitCode::from(code as u8)
}
