// SPDX-License-Identifier: Apache-2.0

//! Trackability of a finite-length reference output trajectory and synthesis
//! of the input sequences that track it.
//!
//! The forward sweep marks, at every time t, the states of the class of
//! y_r(t) that can be reached along an output-compatible path (`alpha`). The
//! backward sweep removes the states with no compatible continuation (`beta`).
//! The supports of `beta` are the sets of states visited by compatible state
//! trajectories, and the state/input pairs that keep a trajectory inside them
//! are collected in a [`PairTable`].

use crate::error::{Error, Result};
use crate::model::{check_index, Bcn};
use crate::stp::BooleanVector;

/// Default cap on the number of sequences returned by [`Policy::EnumerateAll`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 10_000;

/// Reference outputs y_r(1), …, y_r(T) as 1-based output indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceTrajectory {
    outputs: Vec<usize>,
}

impl ReferenceTrajectory {
    pub fn new(outputs: Vec<usize>) -> Result<Self> {
        if outputs.is_empty() {
            return Err(Error::EmptyReference);
        }
        if let Some(&bad) = outputs.iter().find(|&&i| i == 0) {
            return Err(Error::IndexOutOfRange {
                what: "output",
                index: bad,
                bound: usize::MAX,
            });
        }
        Ok(ReferenceTrajectory { outputs })
    }

    pub fn horizon(&self) -> usize {
        self.outputs.len()
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// y_r(t) for t in [1, T].
    pub fn at(&self, t: usize) -> usize {
        self.outputs[t - 1]
    }

    pub(crate) fn validate_for(&self, bcn: &Bcn) -> Result<()> {
        self.outputs.iter().try_for_each(|&i| bcn.check_output(i))
    }
}

/// Outcome of the finite-horizon analysis. All sets hold sorted 1-based state
/// indices; `alpha[t-1]` and `beta[t-1]` hold the vectors at time t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTrackingSolution {
    pub alpha: Vec<BooleanVector>,
    pub beta: Vec<BooleanVector>,
    pub x_sets: Vec<Vec<usize>>,
    pub x1_set: Vec<usize>,
    /// The reference is produced by at least one state trajectory.
    pub compatible: bool,
    /// The reference can be tracked from every initial state.
    pub solvable_everywhere: bool,
    /// Initial states from which the reference can be tracked.
    pub x0_set: Vec<usize>,
}

/// Indicator of the states whose output is δ_P^i. Zero if no state produces it.
pub fn indistinguishability_vector(bcn: &Bcn, i: usize) -> Result<BooleanVector> {
    bcn.check_output(i)?;
    let mut v = BooleanVector::zeros(bcn.n_states());
    for (j, &y) in bcn.h().col_index().iter().enumerate() {
        if y == i {
            v.insert(j + 1);
        }
    }
    Ok(v)
}

/// Forward sweep over an arbitrary output sequence (the periodic solver calls
/// this with the period extended by one step).
pub(crate) fn alpha_for_outputs(bcn: &Bcn, outputs: &[usize]) -> Result<Vec<BooleanVector>> {
    let mut alpha: Vec<BooleanVector> = Vec::with_capacity(outputs.len());
    for &y in outputs {
        let v = indistinguishability_vector(bcn, y)?;
        let next = match alpha.last() {
            None => v,
            Some(prev) => v.hadamard(&bcn.post_image(prev)?)?,
        };
        alpha.push(next);
    }
    Ok(alpha)
}

pub fn alpha_sequence(bcn: &Bcn, reference: &ReferenceTrajectory) -> Result<Vec<BooleanVector>> {
    reference.validate_for(bcn)?;
    alpha_for_outputs(bcn, reference.outputs())
}

/// Backward pruning of a forward sweep. Returns all zeros when the last
/// vector of `alpha` is zero.
pub(crate) fn backward_prune(bcn: &Bcn, alpha: &[BooleanVector]) -> Result<Vec<BooleanVector>> {
    let n = bcn.n_states();
    let last = alpha.len() - 1;
    let mut beta = vec![BooleanVector::zeros(n); alpha.len()];
    beta[last] = alpha[last].clone();
    if beta[last].is_zero() {
        return Ok(beta);
    }
    for t in (0..last).rev() {
        beta[t] = alpha[t].hadamard(&bcn.pre_image(&beta[t + 1])?)?;
    }
    Ok(beta)
}

pub fn solve_finite(bcn: &Bcn, reference: &ReferenceTrajectory) -> Result<FiniteTrackingSolution> {
    let alpha = alpha_sequence(bcn, reference)?;
    let beta = backward_prune(bcn, &alpha)?;
    let x_sets: Vec<Vec<usize>> = beta.iter().map(BooleanVector::support).collect();
    let x1_set = x_sets[0].clone();
    let compatible = !beta[beta.len() - 1].is_zero();
    let reach_x1 = bcn.pre_image(&beta[0])?;
    let solvable_everywhere = compatible && reach_x1.is_all_ones();
    Ok(FiniteTrackingSolution {
        alpha,
        beta,
        x_sets,
        x1_set,
        compatible,
        solvable_everywhere,
        x0_set: reach_x1.support(),
    })
}

/// State/input pairs consistent with the reference, one set per time
/// t ∈ [0, len-1]. Pairs are `(state, input)`, 1-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable {
    tables: Vec<Vec<(usize, usize)>>,
}

impl PairTable {
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn at(&self, t: usize) -> Result<&[(usize, usize)]> {
        self.tables.get(t).map(Vec::as_slice).ok_or(Error::TimeOutOfRange {
            time: t,
            last: self.tables.len().saturating_sub(1),
        })
    }

    pub fn tables(&self) -> &[Vec<(usize, usize)>] {
        &self.tables
    }

    pub(crate) fn truncate(&mut self, len: usize) {
        self.tables.truncate(len);
    }

    /// Distinct states appearing in the pairs at time t.
    pub fn states_at(&self, t: usize) -> Result<Vec<usize>> {
        let mut s: Vec<usize> = self.at(t)?.iter().map(|&(x, _)| x).collect();
        s.dedup();
        Ok(s)
    }
}

/// Builds the pair table from a backward-pruned sequence β(1), …, β(K).
///
/// At t = 0 every state is considered; at t ≥ 1 only the states marked in
/// β(t). A pair (j, i) is kept when L ⋉ δ_M^i ⋉ δ_N^j is marked in β(t+1).
pub fn compatible_pairs(bcn: &Bcn, beta: &[BooleanVector]) -> Result<PairTable> {
    if beta.is_empty() {
        return Err(Error::EmptyBeta);
    }
    if let Some(b) = beta.iter().find(|b| b.dim() != bcn.n_states()) {
        return Err(Error::DimensionMismatch {
            context: "beta vector",
            expected: bcn.n_states(),
            found: b.dim(),
        });
    }
    let mut tables = Vec::with_capacity(beta.len());
    for t in 0..beta.len() {
        let candidates: Vec<usize> = if t == 0 {
            (1..=bcn.n_states()).collect()
        } else {
            beta[t - 1].support()
        };
        let next = &beta[t];
        let mut pairs = Vec::new();
        for j in candidates {
            for i in 1..=bcn.n_inputs() {
                if next.contains(bcn.next_state(j, i)) {
                    pairs.push((j, i));
                }
            }
        }
        tables.push(pairs);
    }
    Ok(PairTable { tables })
}

/// Inputs admissible in state `x` at time `t`.
pub fn admissible_inputs(table: &PairTable, t: usize, x: usize) -> Result<Vec<usize>> {
    Ok(table.at(t)?.iter().filter(|&&(s, _)| s == x).map(|&(_, i)| i).collect())
}

/// How an input is picked from the admissible set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// Always the smallest admissible input index.
    MinIndex,
    /// Every admissible sequence, in lexicographic order, up to `limit`.
    EnumerateAll { limit: usize },
}

impl Policy {
    pub fn enumerate_all() -> Self {
        Policy::EnumerateAll {
            limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesis {
    /// Input index sequences u(0), …, u(h-1), sorted lexicographically.
    pub sequences: Vec<Vec<usize>>,
    /// Set when the enumeration limit cut the result short.
    pub truncated: bool,
}

/// Walks the pair table from `x0` for `horizon` steps, consulting the table at
/// `phase(t)` at time t.
pub(crate) fn walk_table(
    bcn: &Bcn,
    table: &PairTable,
    x0: usize,
    horizon: usize,
    phase: impl Fn(usize) -> usize,
    policy: Policy,
) -> Result<Synthesis> {
    bcn.check_state(x0)?;
    let infeasible = || Error::Infeasible {
        x0,
        feasible: table.states_at(0).unwrap_or_default(),
    };
    if admissible_inputs(table, phase(0), x0)?.is_empty() {
        return Err(infeasible());
    }
    match policy {
        Policy::MinIndex => {
            let mut x = x0;
            let mut seq = Vec::with_capacity(horizon);
            for t in 0..horizon {
                let u = *admissible_inputs(table, phase(t), x)?.first().ok_or_else(infeasible)?;
                seq.push(u);
                x = bcn.next_state(x, u);
            }
            Ok(Synthesis {
                sequences: vec![seq],
                truncated: false,
            })
        }
        Policy::EnumerateAll { limit } => {
            let mut out = Synthesis {
                sequences: Vec::new(),
                truncated: false,
            };
            let mut prefix = Vec::with_capacity(horizon);
            enumerate(bcn, table, &phase, horizon, x0, &mut prefix, limit, &mut out)?;
            Ok(out)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    bcn: &Bcn,
    table: &PairTable,
    phase: &impl Fn(usize) -> usize,
    horizon: usize,
    x: usize,
    prefix: &mut Vec<usize>,
    limit: usize,
    out: &mut Synthesis,
) -> Result<()> {
    if prefix.len() == horizon {
        if out.sequences.len() >= limit {
            out.truncated = true;
        } else {
            out.sequences.push(prefix.clone());
        }
        return Ok(());
    }
    for u in admissible_inputs(table, phase(prefix.len()), x)? {
        if out.truncated {
            break;
        }
        prefix.push(u);
        enumerate(bcn, table, phase, horizon, bcn.next_state(x, u), prefix, limit, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Input sequences of length T that track the reference from `x0`, read out
/// of the pair table one step at a time.
pub fn synthesize_finite(bcn: &Bcn, table: &PairTable, x0: usize, policy: Policy) -> Result<Synthesis> {
    check_index("state", x0, bcn.n_states())?;
    walk_table(bcn, table, x0, table.len(), |t| t, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::example;

    fn one_period() -> ReferenceTrajectory {
        ReferenceTrajectory::new(vec![1, 1, 2]).unwrap()
    }

    #[test]
    fn reference_validation() {
        assert_eq!(ReferenceTrajectory::new(vec![]), Err(Error::EmptyReference));
        assert!(ReferenceTrajectory::new(vec![1, 0]).is_err());
        let bcn = example();
        let r = ReferenceTrajectory::new(vec![1, 3]).unwrap();
        assert!(solve_finite(&bcn, &r).is_err());
    }

    #[test]
    fn indistinguishability_vectors() {
        let bcn = example();
        assert_eq!(
            indistinguishability_vector(&bcn, 1).unwrap().to_bits(),
            vec![1, 1, 0, 1, 0, 1]
        );
        assert_eq!(
            indistinguishability_vector(&bcn, 2).unwrap().to_bits(),
            vec![0, 0, 1, 0, 1, 0]
        );
        assert!(indistinguishability_vector(&bcn, 3).is_err());

        let unused = Bcn::from_indices(3, 1, 3, vec![1, 2, 3], vec![1, 1, 3]).unwrap();
        assert!(indistinguishability_vector(&unused, 2).unwrap().is_zero());
    }

    #[test]
    fn alpha_of_example() {
        let bcn = example();
        let alpha = alpha_sequence(&bcn, &one_period()).unwrap();
        let supports: Vec<_> = alpha.iter().map(BooleanVector::support).collect();
        assert_eq!(supports, vec![vec![1, 2, 4, 6], vec![2, 4], vec![3, 5]]);

        let single = alpha_sequence(&bcn, &ReferenceTrajectory::new(vec![2]).unwrap()).unwrap();
        assert_eq!(single, vec![indistinguishability_vector(&bcn, 2).unwrap()]);
    }

    #[test]
    fn unproducible_first_output_zeroes_everything() {
        let bcn = Bcn::from_indices(3, 2, 3, vec![1, 2, 3, 2, 3, 1], vec![1, 1, 3]).unwrap();
        let r = ReferenceTrajectory::new(vec![2, 1, 1]).unwrap();
        let alpha = alpha_sequence(&bcn, &r).unwrap();
        assert!(alpha.iter().all(BooleanVector::is_zero));
        let sol = solve_finite(&bcn, &r).unwrap();
        assert!(sol.beta.iter().all(BooleanVector::is_zero));
        assert!(sol.x1_set.is_empty());
        assert!(!sol.compatible);
        assert!(!sol.solvable_everywhere);
        assert!(sol.x0_set.is_empty());
    }

    #[test]
    fn solve_example_one_period() {
        let bcn = example();
        let sol = solve_finite(&bcn, &one_period()).unwrap();
        assert_eq!(sol.x_sets, vec![vec![1, 2, 4], vec![2, 4], vec![3, 5]]);
        assert_eq!(sol.x1_set, vec![1, 2, 4]);
        assert!(sol.compatible);
        assert!(!sol.solvable_everywhere);
        assert_eq!(sol.x0_set, vec![1, 2, 3, 4]);
        for (a, b) in sol.alpha.iter().zip(&sol.beta) {
            assert!(b.is_subset(a));
        }
    }

    #[test]
    fn universal_when_every_state_emits_the_reference() {
        let bcn = Bcn::from_indices(4, 2, 2, vec![2, 3, 4, 1, 1, 1, 2, 2], vec![1; 4]).unwrap();
        let sol = solve_finite(&bcn, &ReferenceTrajectory::new(vec![1, 1, 1]).unwrap()).unwrap();
        assert!(sol.solvable_everywhere);
        assert_eq!(sol.x0_set, vec![1, 2, 3, 4]);
    }

    #[test]
    fn pair_table_and_admissible_inputs() {
        let bcn = example();
        let sol = solve_finite(&bcn, &one_period()).unwrap();
        let table = compatible_pairs(&bcn, &sol.beta).unwrap();
        assert_eq!(table.len(), 3);
        assert_eq!(table.at(0).unwrap(), &[(1, 1), (1, 2), (2, 1), (3, 1), (3, 2), (4, 2)]);
        assert_eq!(table.at(1).unwrap(), &[(1, 1), (1, 2), (2, 1), (4, 2)]);
        assert_eq!(table.at(2).unwrap(), &[(2, 2), (4, 1)]);
        assert_eq!(admissible_inputs(&table, 0, 1).unwrap(), vec![1, 2]);
        assert!(admissible_inputs(&table, 2, 5).unwrap().is_empty());
        assert_eq!(admissible_inputs(&table, 1, 4).unwrap(), vec![2]);
        assert!(matches!(
            admissible_inputs(&table, 3, 1),
            Err(Error::TimeOutOfRange { time: 3, last: 2 })
        ));
        assert_eq!(compatible_pairs(&bcn, &[]), Err(Error::EmptyBeta));
    }

    #[test]
    fn synthesis_walks_the_table() {
        let bcn = example();
        let r = one_period();
        let sol = solve_finite(&bcn, &r).unwrap();
        let table = compatible_pairs(&bcn, &sol.beta).unwrap();

        let s = synthesize_finite(&bcn, &table, 3, Policy::MinIndex).unwrap();
        assert_eq!(s.sequences, vec![vec![1, 2, 2]]);
        let run = bcn.simulate_indices(3, &s.sequences[0]).unwrap();
        assert_eq!(&run.output_indices()[1..], r.outputs());

        match synthesize_finite(&bcn, &table, 5, Policy::MinIndex) {
            Err(Error::Infeasible { x0, feasible }) => {
                assert_eq!(x0, 5);
                assert_eq!(feasible, vec![1, 2, 3, 4]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }

        let all = synthesize_finite(&bcn, &table, 1, Policy::enumerate_all()).unwrap();
        assert!(!all.truncated);
        assert!(!all.sequences.is_empty());
        for seq in &all.sequences {
            let run = bcn.simulate_indices(1, seq).unwrap();
            assert_eq!(&run.output_indices()[1..], r.outputs());
        }
        let mut sorted = all.sequences.clone();
        sorted.sort();
        assert_eq!(sorted, all.sequences);
    }

    #[test]
    fn enumeration_limit_reports_truncation() {
        let bcn = Bcn::from_indices(2, 3, 1, vec![1, 2, 2, 1, 1, 1], vec![1, 1]).unwrap();
        let r = ReferenceTrajectory::new(vec![1; 4]).unwrap();
        let sol = solve_finite(&bcn, &r).unwrap();
        let table = compatible_pairs(&bcn, &sol.beta).unwrap();
        let full = synthesize_finite(&bcn, &table, 1, Policy::enumerate_all()).unwrap();
        assert_eq!(full.sequences.len(), 81);
        assert!(!full.truncated);
        let capped = synthesize_finite(&bcn, &table, 1, Policy::EnumerateAll { limit: 10 }).unwrap();
        assert_eq!(capped.sequences.len(), 10);
        assert!(capped.truncated);
        assert_eq!(capped.sequences[..], full.sequences[..10]);
    }
}
