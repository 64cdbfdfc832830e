// SPDX-License-Identifier: Apache-2.0

//! A Boolean control network in algebraic form:
//! x(t+1) = L ⋉ u(t) ⋉ x(t), y(t) = H x(t).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::stp::{stp_logical, BooleanMatrix, BooleanVector, LogicalMatrix, LogicalVector};

/// The pair (L, H) with N states, M inputs and P outputs.
///
/// `L` is N × NM, made of the blocks L_1 | … | L_M, and `H` is P × N.
/// The union of all one-step transitions, L_tot, is computed on construction.
pub struct Bcn {
    n_states: usize,
    n_inputs: usize,
    n_outputs: usize,
    l: LogicalMatrix,
    h: LogicalMatrix,
    l_tot: BooleanMatrix,
    l_tot_t: BooleanMatrix,
    powers: Mutex<HashMap<usize, Arc<BooleanMatrix>>>,
}

impl Clone for Bcn {
    fn clone(&self) -> Self {
        Bcn {
            n_states: self.n_states,
            n_inputs: self.n_inputs,
            n_outputs: self.n_outputs,
            l: self.l.clone(),
            h: self.h.clone(),
            l_tot: self.l_tot.clone(),
            l_tot_t: self.l_tot_t.clone(),
            powers: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for Bcn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Bcn")
            .field("n_states", &self.n_states)
            .field("n_inputs", &self.n_inputs)
            .field("n_outputs", &self.n_outputs)
            .field("l", &self.l.col_index())
            .field("h", &self.h.col_index())
            .finish()
    }
}

impl PartialEq for Bcn {
    fn eq(&self, other: &Self) -> bool {
        self.n_inputs == other.n_inputs && self.l == other.l && self.h == other.h
    }
}

impl Eq for Bcn {}

/// A state/input/output run of the network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub states: Vec<LogicalVector>,
    pub inputs: Vec<LogicalVector>,
    pub outputs: Vec<LogicalVector>,
}

impl Trajectory {
    pub fn state_indices(&self) -> Vec<usize> {
        self.states.iter().map(LogicalVector::index).collect()
    }

    pub fn input_indices(&self) -> Vec<usize> {
        self.inputs.iter().map(LogicalVector::index).collect()
    }

    pub fn output_indices(&self) -> Vec<usize> {
        self.outputs.iter().map(LogicalVector::index).collect()
    }
}

impl Bcn {
    pub fn new(n_states: usize, n_inputs: usize, n_outputs: usize, l: LogicalMatrix, h: LogicalMatrix) -> Result<Self> {
        if n_states == 0 || n_inputs == 0 || n_outputs == 0 {
            return Err(Error::ZeroDimension);
        }
        let checks = [
            ("L rows", n_states, l.rows()),
            ("L columns", n_states * n_inputs, l.cols()),
            ("H rows", n_outputs, h.rows()),
            ("H columns", n_states, h.cols()),
        ];
        for (context, expected, found) in checks {
            if expected != found {
                return Err(Error::DimensionMismatch {
                    context,
                    expected,
                    found,
                });
            }
        }
        let mut l_tot = BooleanMatrix::zeros(n_states, n_states);
        for (c, &r) in l.col_index().iter().enumerate() {
            l_tot.set(r, c % n_states + 1);
        }
        let l_tot_t = l_tot.transpose();
        Ok(Bcn {
            n_states,
            n_inputs,
            n_outputs,
            l,
            h,
            l_tot,
            l_tot_t,
            powers: Mutex::new(HashMap::new()),
        })
    }

    /// Builds a network from raw 1-based column indices of L and H.
    pub fn from_indices(
        n_states: usize,
        n_inputs: usize,
        n_outputs: usize,
        l: Vec<usize>,
        h: Vec<usize>,
    ) -> Result<Self> {
        let l = LogicalMatrix::new(n_states, l)?;
        let h = LogicalMatrix::new(n_outputs, h)?;
        Self::new(n_states, n_inputs, n_outputs, l, h)
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn l(&self) -> &LogicalMatrix {
        &self.l
    }

    pub fn h(&self) -> &LogicalMatrix {
        &self.h
    }

    pub fn l_tot(&self) -> &BooleanMatrix {
        &self.l_tot
    }

    pub fn l_tot_transpose(&self) -> &BooleanMatrix {
        &self.l_tot_t
    }

    pub(crate) fn check_state(&self, j: usize) -> Result<()> {
        check_index("state", j, self.n_states)
    }

    pub(crate) fn check_input(&self, i: usize) -> Result<()> {
        check_index("input", i, self.n_inputs)
    }

    pub(crate) fn check_output(&self, i: usize) -> Result<()> {
        check_index("output", i, self.n_outputs)
    }

    /// The block L_i (columns (i-1)N+1 … iN of L).
    pub fn subsystem(&self, i: usize) -> Result<LogicalMatrix> {
        self.check_input(i)?;
        let n = self.n_states;
        LogicalMatrix::new(n, self.l.col_index()[(i - 1) * n..i * n].to_vec())
    }

    /// Index of L ⋉ δ_M^input ⋉ δ_N^state. Both indices must be in range.
    pub fn next_state(&self, state: usize, input: usize) -> usize {
        debug_assert!(state >= 1 && state <= self.n_states);
        debug_assert!(input >= 1 && input <= self.n_inputs);
        self.l.col_index()[(input - 1) * self.n_states + state - 1]
    }

    /// Index of H δ_N^state.
    pub fn output_of(&self, state: usize) -> usize {
        self.h.col_index()[state - 1]
    }

    pub fn successors(&self, j: usize) -> Result<Vec<usize>> {
        self.check_state(j)?;
        Ok(self.l_tot.column(j).support())
    }

    pub fn predecessors(&self, j: usize) -> Result<Vec<usize>> {
        self.check_state(j)?;
        Ok(self.l_tot_t.column(j).support())
    }

    /// Vector of states with at least one successor marked in `set`, i.e. the
    /// support of L_totᵀ `set`.
    pub fn pre_image(&self, set: &BooleanVector) -> Result<BooleanVector> {
        self.l_tot_t.matvec(set)
    }

    /// Vector of states that are one-step successors of some state in `set`.
    pub fn post_image(&self, set: &BooleanVector) -> Result<BooleanVector> {
        self.l_tot.matvec(set)
    }

    /// Boolean power L_tot^k, memoized per exponent.
    pub fn l_tot_power(&self, k: usize) -> Result<Arc<BooleanMatrix>> {
        if k == 0 {
            return Err(Error::ZeroSteps);
        }
        let mut cache = self.powers.lock().expect("power cache poisoned");
        if let Some(p) = cache.get(&k) {
            return Ok(Arc::clone(p));
        }
        // Reuse the largest cached exponent below k.
        let (mut exp, mut acc) = cache
            .iter()
            .filter(|(&e, _)| e < k)
            .max_by_key(|(&e, _)| e)
            .map(|(&e, m)| (e, (**m).clone()))
            .unwrap_or((1, self.l_tot.clone()));
        while exp < k {
            acc = acc.matmul(&self.l_tot)?;
            exp += 1;
            cache.insert(exp, Arc::new(acc.clone()));
        }
        let p = Arc::new(acc);
        cache.insert(k, Arc::clone(&p));
        Ok(p)
    }

    /// Whether `target` can be reached from `source` in exactly `k` steps.
    pub fn reachable_in_k(&self, target: usize, source: usize, k: usize) -> Result<bool> {
        self.check_state(target)?;
        Ok(self.k_step_image(source, k)?.contains(target))
    }

    /// Whether some state of `targets` can be reached from `source` in exactly
    /// `k` steps.
    pub fn set_reachable_in_k(&self, targets: &[usize], source: usize, k: usize) -> Result<bool> {
        if targets.is_empty() {
            return Err(Error::EmptyTargets);
        }
        let targets = BooleanVector::from_support(self.n_states, targets)?;
        Ok(self.k_step_image(source, k)?.intersects(&targets))
    }

    fn k_step_image(&self, source: usize, k: usize) -> Result<BooleanVector> {
        self.check_state(source)?;
        if k == 0 {
            return Err(Error::ZeroSteps);
        }
        let mut frontier = BooleanVector::from_support(self.n_states, &[source])?;
        for _ in 0..k {
            frontier = self.l_tot.matvec(&frontier)?;
        }
        Ok(frontier)
    }

    /// Runs the network from `x0` under `inputs`, recording the output at
    /// every step including t = 0.
    pub fn simulate(&self, x0: &LogicalVector, inputs: &[LogicalVector]) -> Result<Trajectory> {
        if x0.dim() != self.n_states {
            return Err(Error::DimensionMismatch {
                context: "initial state",
                expected: self.n_states,
                found: x0.dim(),
            });
        }
        let mut states = Vec::with_capacity(inputs.len() + 1);
        let mut outputs = Vec::with_capacity(inputs.len() + 1);
        states.push(*x0);
        outputs.push(self.h.apply(x0)?);
        let mut x = *x0;
        for u in inputs {
            if u.dim() != self.n_inputs {
                return Err(Error::DimensionMismatch {
                    context: "input",
                    expected: self.n_inputs,
                    found: u.dim(),
                });
            }
            x = stp_logical(&self.l, u, &x)?;
            states.push(x);
            outputs.push(self.h.apply(&x)?);
        }
        Ok(Trajectory {
            states,
            inputs: inputs.to_vec(),
            outputs,
        })
    }

    /// [`Bcn::simulate`] with 1-based indices instead of canonical vectors.
    pub fn simulate_indices(&self, x0: usize, inputs: &[usize]) -> Result<Trajectory> {
        let x0 = LogicalVector::new(self.n_states, x0).map_err(|_| Error::IndexOutOfRange {
            what: "state",
            index: x0,
            bound: self.n_states,
        })?;
        let inputs = inputs
            .iter()
            .map(|&i| {
                self.check_input(i)?;
                LogicalVector::new(self.n_inputs, i)
            })
            .collect::<Result<Vec<_>>>()?;
        self.simulate(&x0, &inputs)
    }
}

pub(crate) fn check_index(what: &'static str, index: usize, bound: usize) -> Result<()> {
    if index == 0 || index > bound {
        return Err(Error::IndexOutOfRange { what, index, bound });
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::stp::DenseMatrix;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    pub(crate) fn example() -> Bcn {
        Bcn::from_indices(
            6,
            2,
            2,
            vec![2, 2, 4, 5, 5, 5, 4, 3, 1, 2, 6, 5],
            vec![1, 1, 2, 1, 2, 1],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            Bcn::from_indices(6, 2, 2, vec![1; 11], vec![1; 6]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            Bcn::from_indices(6, 2, 2, vec![1; 12], vec![1; 5]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Bcn::from_indices(6, 2, 2, vec![7; 12], vec![1; 6]).is_err());
        assert_eq!(
            Bcn::from_indices(0, 2, 2, vec![], vec![]).unwrap_err(),
            Error::ZeroDimension
        );
    }

    #[test]
    fn subsystems_of_example() {
        let bcn = example();
        assert_eq!(bcn.subsystem(1).unwrap().col_index(), &[2, 2, 4, 5, 5, 5]);
        assert_eq!(bcn.subsystem(2).unwrap().col_index(), &[4, 3, 1, 2, 6, 5]);
        assert!(bcn.subsystem(3).is_err());
        assert!(bcn.subsystem(0).is_err());
    }

    #[test]
    fn single_input_block_is_l() {
        let bcn = Bcn::from_indices(3, 1, 2, vec![2, 3, 1], vec![1, 2, 2]).unwrap();
        assert_eq!(bcn.subsystem(1).unwrap(), *bcn.l());
        assert_eq!(*bcn.l_tot(), BooleanMatrix::from_logical(bcn.l()));
    }

    #[test]
    fn l_tot_of_example() {
        let bcn = example();
        assert_eq!(bcn.l_tot().column(1).support(), vec![2, 4]);
        assert_eq!(bcn.l_tot().column(5).support(), vec![5, 6]);
        let by_blocks = BooleanMatrix::from_logical(&bcn.subsystem(1).unwrap())
            .or(&BooleanMatrix::from_logical(&bcn.subsystem(2).unwrap()))
            .unwrap();
        assert_eq!(*bcn.l_tot(), by_blocks);
    }

    #[test]
    fn successor_and_predecessor_queries() {
        let bcn = example();
        assert_eq!(bcn.successors(3).unwrap(), vec![1, 4]);
        assert_eq!(bcn.successors(6).unwrap(), vec![5]);
        assert_eq!(bcn.successors(2).unwrap(), vec![2, 3]);
        assert_eq!(bcn.predecessors(2).unwrap(), vec![1, 2, 4]);
        assert_eq!(bcn.predecessors(4).unwrap(), vec![1, 3]);
        assert!(bcn.successors(7).is_err());

        let isolated = Bcn::from_indices(3, 1, 1, vec![2, 2, 1], vec![1, 1, 1]).unwrap();
        assert!(isolated.predecessors(3).unwrap().is_empty());
    }

    #[test]
    fn k_step_reachability() {
        let bcn = example();
        assert!(bcn.reachable_in_k(3, 1, 2).unwrap());
        assert!(!bcn.reachable_in_k(1, 5, 2).unwrap());
        assert_eq!(bcn.reachable_in_k(1, 1, 0), Err(Error::ZeroSteps));
        for s in 1..=6 {
            let succ = bcn.successors(s).unwrap();
            for t in 1..=6 {
                assert_eq!(bcn.reachable_in_k(t, s, 1).unwrap(), succ.contains(&t));
            }
        }
    }

    #[test]
    fn set_reachability() {
        let bcn = example();
        let all: Vec<usize> = (1..=6).collect();
        for s in 1..=6 {
            assert!(bcn.set_reachable_in_k(&all, s, 1).unwrap());
        }
        assert!(!bcn.set_reachable_in_k(&[1, 2, 4], 5, 1).unwrap());
        assert!(bcn.set_reachable_in_k(&[1, 2, 4], 3, 1).unwrap());
        assert_eq!(bcn.set_reachable_in_k(&[], 3, 1), Err(Error::EmptyTargets));
    }

    #[test]
    fn simulation_examples() {
        let bcn = example();
        let empty = bcn.simulate_indices(4, &[]).unwrap();
        assert_eq!(empty.state_indices(), vec![4]);
        assert_eq!(empty.output_indices(), vec![1]);

        let run = bcn.simulate_indices(3, &[1, 1, 2]).unwrap();
        assert_eq!(run.state_indices(), vec![3, 4, 5, 6]);
        assert_eq!(run.output_indices(), vec![2, 1, 2, 1]);

        let run = bcn.simulate_indices(1, &[1]).unwrap();
        assert_eq!(run.state_indices(), vec![1, 2]);
        assert_eq!(run.output_indices(), vec![1, 1]);

        assert!(bcn.simulate_indices(1, &[3]).is_err());
        assert!(bcn.simulate_indices(7, &[]).is_err());
    }

    #[test]
    fn power_memo_matches_repeated_products() {
        let bcn = example();
        let p3 = bcn.l_tot_power(3).unwrap();
        let manual = bcn.l_tot().matmul(bcn.l_tot()).unwrap().matmul(bcn.l_tot()).unwrap();
        assert_eq!(*p3, manual);
        let p2 = bcn.l_tot_power(2).unwrap();
        assert_eq!(*p2, bcn.l_tot().matmul(bcn.l_tot()).unwrap());
        assert!(bcn.l_tot_power(0).is_err());
    }

    fn bfs_k_step(bcn: &Bcn, source: usize, k: usize) -> HashSet<usize> {
        // layered BFS over explicit (state, depth) pairs
        let n = bcn.n_states();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(source, 0usize)]);
        let mut at_k = HashSet::new();
        while let Some((s, d)) = queue.pop_front() {
            if d == k {
                at_k.insert(s);
                continue;
            }
            for c in 0..bcn.n_inputs() {
                let next = bcn.l().col_index()[c * n + s - 1];
                if seen.insert((next, d + 1)) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        at_k
    }

    pub(crate) fn bcn_strategy(max_n: usize, max_m: usize, max_p: usize) -> impl Strategy<Value = Bcn> {
        (1..=max_n, 1..=max_m, 1..=max_p).prop_flat_map(|(n, m, p)| {
            (
                proptest::collection::vec(1..=n, n * m),
                proptest::collection::vec(1..=p, n),
            )
                .prop_map(move |(l, h)| Bcn::from_indices(n, m, p, l, h).unwrap())
        })
    }

    proptest! {
        #[test]
        fn l_tot_column_counts(bcn in bcn_strategy(16, 4, 4)) {
            for j in 1..=bcn.n_states() {
                let c = bcn.l_tot().column(j).count_ones();
                prop_assert!(c >= 1 && c <= bcn.n_inputs());
            }
            for i in 1..=bcn.n_inputs() {
                prop_assert_eq!(bcn.subsystem(i).unwrap().cols(), bcn.n_states());
            }
        }

        #[test]
        fn reachability_agrees_with_bfs(bcn in bcn_strategy(16, 3, 2), k in 1usize..=8) {
            for s in 1..=bcn.n_states() {
                let expected = bfs_k_step(&bcn, s, k);
                let power = bcn.l_tot_power(k).unwrap();
                for t in 1..=bcn.n_states() {
                    prop_assert_eq!(bcn.reachable_in_k(t, s, k).unwrap(), expected.contains(&t));
                    prop_assert_eq!(power.get(t, s), expected.contains(&t));
                }
            }
        }

        #[test]
        fn simulation_matches_dense_chain(
            (bcn, x0, inputs) in bcn_strategy(8, 3, 3).prop_flat_map(|b| {
                let (n, m) = (b.n_states(), b.n_inputs());
                (Just(b), 1..=n, proptest::collection::vec(1..=m, 0..6))
            })
        ) {
            let run = bcn.simulate_indices(x0, &inputs).unwrap();
            let l = bcn.l().to_dense();
            let h = bcn.h().to_dense();
            let mut x = LogicalVector::new(bcn.n_states(), x0).unwrap().to_dense();
            prop_assert_eq!(h.stp(&x).unwrap(), run.outputs[0].to_dense());
            for (t, &u) in inputs.iter().enumerate() {
                let u = LogicalVector::new(bcn.n_inputs(), u).unwrap().to_dense();
                x = l.stp(&u).unwrap().stp(&x).unwrap();
                let expected: DenseMatrix = h.stp(&x).unwrap();
                prop_assert_eq!(expected, run.outputs[t + 1].to_dense());
                prop_assert_eq!(&x, &run.states[t + 1].to_dense());
            }
        }
    }
}
