// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference answers used to cross-check the solvers.
//!
//! Nothing here touches the forward/backward vector sweeps: the finite check
//! enumerates every input sequence and the periodic check prunes dead ends of
//! an explicit (state, phase) graph. Transitions are read straight from the
//! column array of L.

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{check_index, Bcn};

/// Default bound on the number of input sequences (or product nodes) the
/// oracle is willing to visit.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

fn successor(bcn: &Bcn, state: usize, input: usize) -> usize {
    bcn.l().col_index()[(input - 1) * bcn.n_states() + (state - 1)]
}

fn output(bcn: &Bcn, state: usize) -> usize {
    bcn.h().col_index()[state - 1]
}

/// Whether some input sequence of length T drives `x0` through states whose
/// outputs equal `reference` at t = 1..T. Enumerates all M^T sequences.
pub fn brute_finite_trackable(bcn: &Bcn, reference: &[usize], x0: usize, budget: u128) -> Result<bool> {
    check_index("state", x0, bcn.n_states())?;
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let m = bcn.n_inputs();
    let horizon = reference.len();
    let required = (m as u128).checked_pow(horizon as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    // odometer over {1..M}^T
    let mut inputs = vec![1usize; horizon];
    loop {
        let mut x = x0;
        let mut ok = true;
        for (t, &u) in inputs.iter().enumerate() {
            x = successor(bcn, x, u);
            if output(bcn, x) != reference[t] {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
        let mut pos = horizon;
        loop {
            if pos == 0 {
                return Ok(false);
            }
            pos -= 1;
            if inputs[pos] < m {
                inputs[pos] += 1;
                for later in &mut inputs[pos + 1..] {
                    *later = 1;
                }
                break;
            }
        }
    }
}

/// Initial states from which the periodic reference (one period given) can be
/// tracked forever.
///
/// Nodes are (state, phase) with phase = t mod T. An edge (s, φ) → (s', φ+1
/// mod T) exists when some input maps s to s' and s' emits y_r(φ+1). Nodes
/// without an edge into the surviving set are removed until nothing changes;
/// x0 is trackable when it has an edge from phase 0 into a survivor.
pub fn brute_periodic_trackable_set(bcn: &Bcn, reference: &[usize], budget: u128) -> Result<Vec<usize>> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let n = bcn.n_states();
    let period = reference.len();
    let required = (n as u128) * (period as u128);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let node = |s: usize, phase: usize| (s - 1) * period + phase;
    let edges = |s: usize, phase: usize| {
        let target = reference[phase];
        (1..=bcn.n_inputs())
            .map(move |u| successor(bcn, s, u))
            .filter(move |&s2| output(bcn, s2) == target)
            .map(move |s2| (s2, (phase + 1) % period))
    };

    let mut alive = vec![true; n * period];
    let mut rounds = 0;
    loop {
        let mut changed = false;
        for s in 1..=n {
            for phase in 0..period {
                if !alive[node(s, phase)] {
                    continue;
                }
                if !edges(s, phase).any(|(s2, p2)| alive[node(s2, p2)]) {
                    alive[node(s, phase)] = false;
                    changed = true;
                }
            }
        }
        rounds += 1;
        if !changed {
            break;
        }
    }
    debug_assert!(rounds <= n * period + 1);

    Ok((1..=n)
        .filter(|&x0| edges(x0, 0).any(|(s2, p2)| alive[node(s2, p2)]))
        .collect())
}

/// Parameter ranges (inclusive) for random instances.
#[derive(Debug, Clone)]
pub struct InstanceRanges {
    pub states: (usize, usize),
    pub inputs: (usize, usize),
    pub outputs: (usize, usize),
    pub horizon: (usize, usize),
}

impl Default for InstanceRanges {
    fn default() -> Self {
        InstanceRanges {
            states: (2, 12),
            inputs: (1, 3),
            outputs: (2, 4),
            horizon: (1, 5),
        }
    }
}

/// A random network with a random reference over its outputs.
#[derive(Debug, Clone)]
pub struct Instance {
    pub bcn: Bcn,
    pub reference: Vec<usize>,
}

/// Draws L and H column-wise uniformly. Half of the references are read off a
/// random run of the network (so they are produced by at least one state
/// trajectory), the other half are uniform over the outputs.
pub fn random_instance<R: Rng>(rng: &mut R, ranges: &InstanceRanges) -> Instance {
    let n = rng.gen_range(ranges.states.0..=ranges.states.1);
    let m = rng.gen_range(ranges.inputs.0..=ranges.inputs.1);
    let p = rng.gen_range(ranges.outputs.0..=ranges.outputs.1);
    let t = rng.gen_range(ranges.horizon.0..=ranges.horizon.1);
    let l: Vec<usize> = (0..n * m).map(|_| rng.gen_range(1..=n)).collect();
    let h: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=p)).collect();
    let bcn = Bcn::from_indices(n, m, p, l, h).expect("generated shapes are consistent");
    let reference = if rng.gen_bool(0.5) {
        let mut x = rng.gen_range(1..=n);
        (0..t)
            .map(|_| {
                x = successor(&bcn, x, rng.gen_range(1..=m));
                output(&bcn, x)
            })
            .collect()
    } else {
        (0..t).map(|_| rng.gen_range(1..=p)).collect()
    };
    Instance { bcn, reference }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::example;

    #[test]
    fn finite_example() {
        let bcn = example();
        assert!(!brute_finite_trackable(&bcn, &[1, 1, 2], 5, DEFAULT_BUDGET).unwrap());
        assert!(brute_finite_trackable(&bcn, &[1, 1, 2], 1, DEFAULT_BUDGET).unwrap());
        let feasible: Vec<usize> = (1..=6)
            .filter(|&x| brute_finite_trackable(&bcn, &[1, 1, 2], x, DEFAULT_BUDGET).unwrap())
            .collect();
        assert_eq!(feasible, vec![1, 2, 3, 4]);
    }

    #[test]
    fn single_step_reference() {
        let bcn = example();
        for x0 in 1..=6 {
            for s in bcn.successors(x0).unwrap() {
                let y = bcn.output_of(s);
                assert!(brute_finite_trackable(&bcn, &[y], x0, DEFAULT_BUDGET).unwrap());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let bcn = example();
        assert!(matches!(
            brute_finite_trackable(&bcn, &[1; 21], 1, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            brute_periodic_trackable_set(&bcn, &[1, 1, 2], 17),
            Err(Error::BudgetExceeded {
                required: 18,
                budget: 17
            })
        ));
    }

    #[test]
    fn periodic_example() {
        let bcn = example();
        assert_eq!(
            brute_periodic_trackable_set(&bcn, &[1, 1, 2], DEFAULT_BUDGET).unwrap(),
            vec![1, 2, 3, 4]
        );
    }

    #[test]
    fn periodic_constant_output() {
        let bcn = Bcn::from_indices(4, 1, 2, vec![2, 3, 4, 1], vec![1; 4]).unwrap();
        assert_eq!(
            brute_periodic_trackable_set(&bcn, &[1, 1], DEFAULT_BUDGET).unwrap(),
            vec![1, 2, 3, 4]
        );
    }

    #[test]
    fn periodic_unproducible_output() {
        let bcn = Bcn::from_indices(3, 2, 3, vec![1, 2, 3, 2, 3, 1], vec![1, 1, 3]).unwrap();
        assert!(brute_periodic_trackable_set(&bcn, &[1, 2], DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn generator_respects_ranges() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let ranges = InstanceRanges::default();
        for _ in 0..200 {
            let inst = random_instance(&mut rng, &ranges);
            let b = &inst.bcn;
            assert!((2..=12).contains(&b.n_states()));
            assert!((1..=3).contains(&b.n_inputs()));
            assert!((2..=4).contains(&b.n_outputs()));
            assert!((1..=5).contains(&inst.reference.len()));
            assert!(inst.reference.iter().all(|&y| y >= 1 && y <= b.n_outputs()));
        }
    }
}
