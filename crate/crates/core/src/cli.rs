// SPDX-License-Identifier: Apache-2.0

//! Command implementations behind the `bcn-track` binary. Each command takes
//! file contents rather than paths and returns a report plus an exit code:
//! 0 universal/feasible, 2 partial or infeasible from the given state,
//! 3 incompatible, 1 usage or parse error.

use thiserror::Error;

use crate::error::Error;
use crate::finite::{compatible_pairs, solve_finite, synthesize_finite, Policy, ReferenceTrajectory, Synthesis};
use crate::io::{parse_network, parse_trajectory, ParseError, TrajectoryFile};
use crate::model::Bcn;
use crate::oracle;
use crate::periodic::{periodic_controller, solve_periodic, synthesize_periodic, PeriodicReference};
use crate::report::{AnalysisReport, ControllerReport, Mode, Run, SimulationReport, SynthesisReport};
use crate::Verdict;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_INCOMPATIBLE: i32 = 3;
pub const EXIT_ORACLE_MISMATCH: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}: {source}")]
    Parse {
        file: String,
        #[source]
        source: ParseError,
    },
    #[error("reference output {index} exceeds the network's output count P = {outputs}")]
    OutputMismatch { index: usize, outputs: usize },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] Error),
}

pub fn load_network(name: &str, src: &str) -> Result<Bcn, CliError> {
    parse_network(src).map_err(|source| CliError::Parse {
        file: name.to_string(),
        source,
    })
}

pub fn load_trajectory(name: &str, src: &str, bcn: &Bcn) -> Result<TrajectoryFile, CliError> {
    let traj = parse_trajectory(src).map_err(|source| CliError::Parse {
        file: name.to_string(),
        source,
    })?;
    if let Some(&index) = traj.outputs.iter().find(|&&y| y > bcn.n_outputs()) {
        return Err(CliError::OutputMismatch {
            index,
            outputs: bcn.n_outputs(),
        });
    }
    Ok(traj)
}

/// An explicit mode wins over the `periodic` line of the trajectory file.
pub fn resolve_mode(requested: Option<Mode>, traj: &TrajectoryFile) -> Mode {
    requested.unwrap_or(if traj.periodic { Mode::Periodic } else { Mode::Finite })
}

pub fn cmd_check(bcn: &Bcn, traj: &TrajectoryFile, mode: Mode) -> Result<(AnalysisReport, i32), CliError> {
    let report = analyze(bcn, traj, mode)?;
    let code = report.verdict.exit_code();
    Ok((report, code))
}

fn analyze(bcn: &Bcn, traj: &TrajectoryFile, mode: Mode) -> Result<AnalysisReport, CliError> {
    Ok(match mode {
        Mode::Finite => {
            let reference = ReferenceTrajectory::new(traj.outputs.clone())?;
            let solution = solve_finite(bcn, &reference)?;
            let table = compatible_pairs(bcn, &solution.beta)?;
            AnalysisReport::finite(&traj.outputs, &solution, &table)
        }
        Mode::Periodic => {
            let reference = PeriodicReference::new(traj.outputs.clone())?;
            let solution = solve_periodic(bcn, &reference)?;
            AnalysisReport::periodic(&traj.outputs, &solution)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisRequest {
    pub x0: usize,
    pub horizon: Option<usize>,
    pub policy: Policy,
}

pub fn cmd_synthesize(
    bcn: &Bcn,
    traj: &TrajectoryFile,
    mode: Mode,
    request: SynthesisRequest,
) -> Result<(AnalysisReport, i32), CliError> {
    let SynthesisRequest { x0, horizon, policy } = request;
    if x0 == 0 || x0 > bcn.n_states() {
        return Err(CliError::Usage(format!("--x0 {x0} outside [1, {}]", bcn.n_states())));
    }
    let period = traj.outputs.len();
    let horizon = match (mode, horizon) {
        (_, Some(0)) => return Err(CliError::Usage("--horizon must be at least 1".into())),
        (Mode::Finite, Some(h)) if h != period => {
            return Err(CliError::Usage(format!(
                "finite mode tracks exactly T = {period} steps; --horizon {h} is not allowed"
            )))
        }
        (_, Some(h)) => h,
        (_, None) => period,
    };

    let mut report = analyze(bcn, traj, mode)?;
    let result: Result<(Synthesis, Option<ControllerReport>), Error> = match mode {
        Mode::Finite => {
            let reference = ReferenceTrajectory::new(traj.outputs.clone())?;
            let solution = solve_finite(bcn, &reference)?;
            let table = compatible_pairs(bcn, &solution.beta)?;
            synthesize_finite(bcn, &table, x0, policy).map(|s| (s, None))
        }
        Mode::Periodic => {
            let reference = PeriodicReference::new(traj.outputs.clone())?;
            let solution = solve_periodic(bcn, &reference)?;
            synthesize_periodic(bcn, &solution, x0, horizon, policy).and_then(|s| {
                let controller = match policy {
                    Policy::MinIndex => Some(ControllerReport::from(&periodic_controller(bcn, &solution, x0)?)),
                    Policy::EnumerateAll { .. } => None,
                };
                Ok((s, controller))
            })
        }
    };

    let policy_name = match policy {
        Policy::MinIndex => "min".to_string(),
        Policy::EnumerateAll { limit } => format!("all (limit {limit})"),
    };
    let (synthesis, controller, code) = match result {
        Ok((s, c)) => (Some(s), c, EXIT_OK),
        Err(Error::Infeasible { .. }) => {
            let code = match report.verdict {
                Verdict::Incompatible => EXIT_INCOMPATIBLE,
                _ => EXIT_PARTIAL,
            };
            (None, None, code)
        }
        Err(e) => return Err(e.into()),
    };
    let runs = match &synthesis {
        Some(s) => s
            .sequences
            .iter()
            .map(|seq| bcn.simulate_indices(x0, seq).map(|t| Run::from(&t)))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    report.synthesized = Some(SynthesisReport {
        x0,
        horizon,
        policy: policy_name,
        feasible: synthesis.is_some(),
        truncated: synthesis.as_ref().is_some_and(|s| s.truncated),
        runs,
        controller,
    });
    Ok((report, code))
}

pub fn cmd_simulate(bcn: &Bcn, x0: usize, inputs: &[usize]) -> Result<SimulationReport, CliError> {
    let trace = bcn.simulate_indices(x0, inputs)?;
    Ok(SimulationReport {
        x0,
        run: Run::from(&trace),
    })
}

/// Side-by-side comparison of the solver and the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleComparison {
    pub mode: Mode,
    pub solver: Vec<usize>,
    pub oracle: Vec<usize>,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.solver == self.oracle
    }

    pub fn to_text(&self) -> String {
        format!(
            "solver {:?}\noracle {:?}\n{}\n",
            self.solver,
            self.oracle,
            if self.agrees() { "agree" } else { "MISMATCH" }
        )
    }
}

pub fn cmd_oracle(bcn: &Bcn, traj: &TrajectoryFile, mode: Mode) -> Result<OracleComparison, CliError> {
    let report = analyze(bcn, traj, mode)?;
    let oracle_set = match mode {
        Mode::Finite => {
            let mut set = Vec::new();
            for x0 in 1..=bcn.n_states() {
                if oracle::brute_finite_trackable(bcn, &traj.outputs, x0, oracle::DEFAULT_BUDGET)? {
                    set.push(x0);
                }
            }
            set
        }
        Mode::Periodic => oracle::brute_periodic_trackable_set(bcn, &traj.outputs, oracle::DEFAULT_BUDGET)?,
    };
    Ok(OracleComparison {
        mode,
        solver: report.x0_set,
        oracle: oracle_set,
    })
}
