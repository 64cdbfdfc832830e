// SPDX-License-Identifier: Apache-2.0

//! Serializable analysis reports. Sets are sorted and every index is 1-based.

use std::fmt::Write as _;

use serde::Serialize;

use crate::finite::{FiniteTrackingSolution, PairTable};
use crate::model::Trajectory;
use crate::periodic::{PeriodicController, PeriodicSolution};
use crate::stp::BooleanVector;
use crate::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Finite,
    Periodic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Run {
    pub inputs: Vec<usize>,
    pub states: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl From<&Trajectory> for Run {
    fn from(t: &Trajectory) -> Self {
        Run {
            inputs: t.input_indices(),
            states: t.state_indices(),
            outputs: t.output_indices(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ControllerReport {
    /// (state, input) pairs applied once.
    pub prefix: Vec<[usize; 2]>,
    /// (state, input) pairs repeated forever after the prefix.
    pub cycle: Vec<[usize; 2]>,
}

impl From<&PeriodicController> for ControllerReport {
    fn from(c: &PeriodicController) -> Self {
        let pairs = |steps: &[crate::periodic::ControlStep]| steps.iter().map(|s| [s.state, s.input]).collect();
        ControllerReport {
            prefix: pairs(&c.prefix),
            cycle: pairs(&c.cycle),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynthesisReport {
    pub x0: usize,
    pub horizon: usize,
    pub policy: String,
    pub feasible: bool,
    pub truncated: bool,
    pub runs: Vec<Run>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub controller: Option<ControllerReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub mode: Mode,
    pub verdict: Verdict,
    pub n_states: usize,
    pub reference: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_star: Option<usize>,
    pub x1_set: Vec<usize>,
    /// Initial states from which the reference is trackable.
    pub x0_set: Vec<usize>,
    /// Supports of β(1..T) (finite) or β_{k*}(1..T+1) (periodic).
    pub beta_supports: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_beta_supports: Option<Vec<Vec<usize>>>,
    /// (state, input) pairs per time step t = 0, 1, ….
    pub pair_tables: Vec<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synthesized: Option<SynthesisReport>,
}

fn supports(v: &[BooleanVector]) -> Vec<Vec<usize>> {
    v.iter().map(BooleanVector::support).collect()
}

fn pairs(table: &PairTable) -> Vec<Vec<[usize; 2]>> {
    table
        .tables()
        .iter()
        .map(|t| t.iter().map(|&(x, u)| [x, u]).collect())
        .collect()
}

impl AnalysisReport {
    pub fn finite(reference: &[usize], solution: &FiniteTrackingSolution, table: &PairTable) -> Self {
        AnalysisReport {
            mode: Mode::Finite,
            verdict: solution.verdict(),
            n_states: solution.beta[0].dim(),
            reference: reference.to_vec(),
            k_star: None,
            x1_set: solution.x1_set.clone(),
            x0_set: solution.x0_set.clone(),
            beta_supports: supports(&solution.beta),
            initial_beta_supports: None,
            pair_tables: pairs(table),
            synthesized: None,
        }
    }

    pub fn periodic(reference: &[usize], solution: &PeriodicSolution) -> Self {
        AnalysisReport {
            mode: Mode::Periodic,
            verdict: solution.verdict(),
            n_states: solution.n_states,
            reference: reference.to_vec(),
            k_star: Some(solution.k_star),
            x1_set: solution.x1_set.clone(),
            x0_set: solution.x0p_set.clone(),
            beta_supports: supports(&solution.beta_final),
            initial_beta_supports: Some(supports(&solution.beta_initial)),
            pair_tables: pairs(&solution.pair_table),
            synthesized: None,
        }
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let set = |v: &[usize]| format!("{{{}}}", v.iter().map(usize::to_string).collect::<Vec<_>>().join(", "));
        let mode = match self.mode {
            Mode::Finite => "finite",
            Mode::Periodic => "periodic",
        };
        writeln!(s, "mode        {mode}").unwrap();
        writeln!(s, "reference   {:?}", self.reference).unwrap();
        writeln!(s, "verdict     {}", self.verdict).unwrap();
        if let Some(k) = self.k_star {
            writeln!(s, "k*          {k}").unwrap();
        }
        writeln!(s, "X1          {}", set(&self.x1_set)).unwrap();
        writeln!(s, "X0          {}", set(&self.x0_set)).unwrap();
        if let Some(initial) = &self.initial_beta_supports {
            writeln!(s, "\nfirst-round supports").unwrap();
            for (t, b) in initial.iter().enumerate() {
                writeln!(s, "  t={:<3} {}", t + 1, set(b)).unwrap();
            }
        }
        writeln!(s, "\nsupports").unwrap();
        for (t, b) in self.beta_supports.iter().enumerate() {
            writeln!(s, "  t={:<3} {}", t + 1, set(b)).unwrap();
        }
        writeln!(s, "\nstate/input pairs").unwrap();
        for (t, p) in self.pair_tables.iter().enumerate() {
            let items: Vec<String> = p.iter().map(|[x, u]| format!("({x},{u})")).collect();
            writeln!(s, "  t={:<3} {}", t, items.join(" ")).unwrap();
        }
        if let Some(syn) = &self.synthesized {
            writeln!(
                s,
                "\nsynthesis from x0={} over {} steps ({})",
                syn.x0, syn.horizon, syn.policy
            )
            .unwrap();
            if !syn.feasible {
                writeln!(s, "  infeasible; feasible initial states {}", set(&self.x0_set)).unwrap();
            }
            for (k, run) in syn.runs.iter().enumerate() {
                writeln!(s, "  run {}", k + 1).unwrap();
                writeln!(s, "    inputs  {:?}", run.inputs).unwrap();
                writeln!(s, "    states  {:?}", run.states).unwrap();
                writeln!(s, "    outputs {:?}", run.outputs).unwrap();
            }
            if syn.truncated {
                writeln!(s, "  (enumeration truncated at {} sequences)", syn.runs.len()).unwrap();
            }
            if let Some(c) = &syn.controller {
                let fmt = |v: &[[usize; 2]]| match v.is_empty() {
                    true => "-".to_string(),
                    false => v
                        .iter()
                        .map(|[x, u]| format!("({x},{u})"))
                        .collect::<Vec<_>>()
                        .join(" "),
                };
                writeln!(s, "  controller prefix {}", fmt(&c.prefix)).unwrap();
                writeln!(s, "  controller cycle  {}", fmt(&c.cycle)).unwrap();
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub x0: usize,
    #[serde(flatten)]
    pub run: Run,
}

impl SimulationReport {
    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("t    state  output  input\n");
        for (t, (x, y)) in self.run.states.iter().zip(&self.run.outputs).enumerate() {
            let u = self
                .run
                .inputs
                .get(t)
                .map(usize::to_string)
                .unwrap_or_else(|| "-".into());
            writeln!(s, "{t:<4} {x:<6} {y:<7} {u}").unwrap();
        }
        s
    }
}
