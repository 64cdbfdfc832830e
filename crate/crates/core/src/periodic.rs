// SPDX-License-Identifier: Apache-2.0

//! Tracking of periodic reference outputs.
//!
//! The forward sweep runs over one period extended by a single step, so that
//! the last vector describes the states that re-enter the class of y_r(1).
//! Those end states are then repeatedly intersected with the surviving
//! start states, and the sequence is pruned backward again, until every end
//! state is itself a valid start state or nothing survives.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finite::{
    alpha_for_outputs, backward_prune, compatible_pairs, solve_finite, walk_table, PairTable, Policy,
    ReferenceTrajectory, Synthesis,
};
use crate::model::{check_index, Bcn};
use crate::stp::BooleanVector;
use crate::Verdict;

/// One period y_r(1), …, y_r(T) of a periodic reference, as 1-based output
/// indices. The period is not required to be minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicReference {
    outputs: Vec<usize>,
}

impl PeriodicReference {
    pub fn new(outputs: Vec<usize>) -> Result<Self> {
        // same validation as a finite reference
        let r = ReferenceTrajectory::new(outputs)?;
        Ok(PeriodicReference {
            outputs: r.outputs().to_vec(),
        })
    }

    pub fn period(&self) -> usize {
        self.outputs.len()
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// y_r(t) for any t ≥ 1.
    pub fn at(&self, t: usize) -> usize {
        self.outputs[(t - 1) % self.outputs.len()]
    }

    /// Smallest d dividing T such that the sequence repeats with period d.
    pub fn minimal_period(&self) -> usize {
        let t = self.period();
        (1..=t)
            .filter(|d| t.is_multiple_of(*d))
            .find(|&d| (0..t).all(|i| self.outputs[i] == self.outputs[i % d]))
            .unwrap_or(t)
    }

    /// The restriction to a single period.
    pub fn one_period(&self) -> ReferenceTrajectory {
        ReferenceTrajectory::new(self.outputs.clone()).expect("validated on construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicSolution {
    pub period: usize,
    pub n_states: usize,
    /// Number of states producing y_r(1).
    pub first_class_size: usize,
    pub k_star: usize,
    /// β_1(1..T+1), before any re-entry pruning.
    pub beta_initial: Vec<BooleanVector>,
    /// β_{k*}(1..T+1).
    pub beta_final: Vec<BooleanVector>,
    pub x1_set: Vec<usize>,
    /// Support of β_{k*}(T+1).
    pub x_end_set: Vec<usize>,
    pub x0p_set: Vec<usize>,
    pub compatible: bool,
    pub solvable_everywhere: bool,
    /// 𝒯ₓᵤ(t) for t ∈ [0, T-1]; the table at T is contained in the one at 0.
    pub pair_table: PairTable,
}

impl PeriodicSolution {
    pub fn verdict(&self) -> Verdict {
        Verdict::classify(self.compatible, self.solvable_everywhere)
    }
}

pub fn solve_periodic(bcn: &Bcn, reference: &PeriodicReference) -> Result<PeriodicSolution> {
    reference.one_period().validate_for(bcn)?;
    let period = reference.period();
    let minimal = reference.minimal_period();
    if minimal < period {
        log::warn!("reference repeats with period {minimal}, shorter than the stated period {period}");
    }

    let mut extended = reference.outputs().to_vec();
    extended.push(reference.outputs()[0]);
    let alpha = alpha_for_outputs(bcn, &extended)?;
    let beta_initial = backward_prune(bcn, &alpha)?;

    let mut k = 1;
    let mut prev = beta_initial.clone();
    loop {
        let start = &prev[0];
        let end = &prev[period];
        if start.is_zero() || end.is_subset(start) {
            break;
        }
        k += 1;
        let mut next = prev.clone();
        next[period] = end.hadamard(start)?;
        for t in (0..period).rev() {
            next[t] = prev[t].hadamard(&bcn.pre_image(&next[t + 1])?)?;
        }
        prev = next;
    }
    let beta_final = prev;

    let compatible = !beta_final[0].is_zero();
    let reach = bcn.pre_image(&beta_final[0])?;
    let solvable_everywhere = compatible && reach.is_all_ones();
    let mut pair_table = compatible_pairs(bcn, &beta_final)?;
    pair_table.truncate(period);

    Ok(PeriodicSolution {
        period,
        n_states: bcn.n_states(),
        first_class_size: alpha[0].count_ones(),
        k_star: k,
        x1_set: beta_final[0].support(),
        x_end_set: beta_final[period].support(),
        x0p_set: reach.support(),
        beta_initial,
        beta_final,
        compatible,
        solvable_everywhere,
        pair_table,
    })
}

/// Whether the periodic reference is trackable from every initial state,
/// decided on a single period with the finite-horizon solver.
pub fn check_universal_periodic(bcn: &Bcn, reference: &PeriodicReference) -> Result<bool> {
    let universal = solve_finite(bcn, &reference.one_period())?.solvable_everywhere;
    debug_assert_eq!(
        universal,
        solve_periodic(bcn, reference)?.solvable_everywhere,
        "single-period and periodic universality disagree"
    );
    Ok(universal)
}

pub fn trackable_from(solution: &PeriodicSolution, x0: usize) -> Result<bool> {
    check_index("state", x0, solution.n_states)?;
    Ok(solution.compatible && solution.x0p_set.binary_search(&x0).is_ok())
}

/// Input sequences u(0), …, u(horizon-1) tracking the periodic reference from
/// `x0`, choosing at time t among the inputs admissible at phase t mod T.
pub fn synthesize_periodic(
    bcn: &Bcn,
    solution: &PeriodicSolution,
    x0: usize,
    horizon: usize,
    policy: Policy,
) -> Result<Synthesis> {
    if horizon == 0 {
        return Err(Error::ZeroSteps);
    }
    if !trackable_from(solution, x0)? {
        return Err(Error::Infeasible {
            x0,
            feasible: solution.x0p_set.clone(),
        });
    }
    let period = solution.period;
    walk_table(bcn, &solution.pair_table, x0, horizon, |t| t % period, policy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControlStep {
    pub state: usize,
    pub input: usize,
}

/// The infinite input sequence chosen by the smallest-index rule, written as a
/// finite prefix followed by a cycle that repeats forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicController {
    pub prefix: Vec<ControlStep>,
    pub cycle: Vec<ControlStep>,
}

impl PeriodicController {
    /// The first `horizon` inputs of the infinite sequence.
    pub fn inputs(&self, horizon: usize) -> Vec<usize> {
        self.prefix
            .iter()
            .map(|s| s.input)
            .chain(self.cycle.iter().map(|s| s.input).cycle())
            .take(horizon)
            .collect()
    }
}

/// Follows the smallest-index rule until a (state, t mod T) pair repeats.
/// Since the rule depends only on that pair, the run is periodic from there on.
pub fn periodic_controller(bcn: &Bcn, solution: &PeriodicSolution, x0: usize) -> Result<PeriodicController> {
    if !trackable_from(solution, x0)? {
        return Err(Error::Infeasible {
            x0,
            feasible: solution.x0p_set.clone(),
        });
    }
    let period = solution.period;
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut steps = Vec::new();
    let mut x = x0;
    loop {
        let t = steps.len();
        if let Some(&start) = seen.get(&(x, t % period)) {
            let cycle = steps.split_off(start);
            return Ok(PeriodicController { prefix: steps, cycle });
        }
        seen.insert((x, t % period), t);
        let input = solution
            .pair_table
            .at(t % period)?
            .iter()
            .find(|&&(s, _)| s == x)
            .map(|&(_, i)| i)
            .ok_or(Error::Infeasible {
                x0,
                feasible: solution.x0p_set.clone(),
            })?;
        steps.push(ControlStep { state: x, input });
        x = bcn.next_state(x, input);
    }
}
