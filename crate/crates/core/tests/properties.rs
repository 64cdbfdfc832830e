// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bcn_track::oracle::{brute_periodic_trackable_set, random_instance, Instance, InstanceRanges, DEFAULT_BUDGET};
use bcn_track::{compatible_pairs, solve_finite, solve_periodic, PeriodicReference, ReferenceTrajectory};

fn instance(seed: u64) -> Instance {
    let ranges = InstanceRanges {
        states: (1, 10),
        inputs: (1, 3),
        outputs: (1, 3),
        horizon: (1, 4),
    };
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), &ranges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pruning_only_removes_states(seed in any::<u64>()) {
        let Instance { bcn, reference } = instance(seed);
        let sol = solve_periodic(&bcn, &PeriodicReference::new(reference).unwrap()).unwrap();
        prop_assert_eq!(sol.beta_initial.len(), sol.beta_final.len());
        for (first, last) in sol.beta_initial.iter().zip(&sol.beta_final) {
            prop_assert!(last.is_subset(first));
        }
    }

    #[test]
    fn final_sets_close_the_cycle(seed in any::<u64>()) {
        let Instance { bcn, reference } = instance(seed);
        let sol = solve_periodic(&bcn, &PeriodicReference::new(reference).unwrap()).unwrap();
        prop_assert!(sol.x1_set.is_empty() || sol.x_end_set.iter().all(|x| sol.x1_set.contains(x)));
        prop_assert_eq!(sol.x0p_set.is_empty(), sol.x1_set.is_empty());
    }

    #[test]
    fn periodic_pairs_stay_on_track(seed in any::<u64>()) {
        let Instance { bcn, reference } = instance(seed);
        let period = reference.len();
        let sol = solve_periodic(&bcn, &PeriodicReference::new(reference.clone()).unwrap()).unwrap();
        let table = &sol.pair_table;
        prop_assert_eq!(table.len(), period);
        for t in 0..period {
            for &(x, u) in table.at(t).unwrap() {
                let next = bcn.next_state(x, u);
                prop_assert_eq!(bcn.output_of(next), reference[t % period]);
                let following = table.states_at((t + 1) % period).unwrap();
                prop_assert!(following.contains(&next), "t={} pair ({},{}) leads to {}", t, x, u, next);
            }
        }
    }

    #[test]
    fn finite_pairs_stay_on_track(seed in any::<u64>()) {
        let Instance { bcn, reference } = instance(seed);
        let horizon = reference.len();
        let sol = solve_finite(&bcn, &ReferenceTrajectory::new(reference.clone()).unwrap()).unwrap();
        let table = compatible_pairs(&bcn, &sol.beta).unwrap();
        let start: Vec<usize> = table.states_at(0).unwrap();
        prop_assert_eq!(start, sol.x0_set.clone());
        for (t, &y) in reference.iter().enumerate() {
            for &(x, u) in table.at(t).unwrap() {
                let next = bcn.next_state(x, u);
                prop_assert_eq!(bcn.output_of(next), y);
                if t + 1 < horizon {
                    prop_assert!(table.states_at(t + 1).unwrap().contains(&next));
                }
            }
        }
    }

    #[test]
    fn universal_iff_oracle_covers_everything(seed in any::<u64>()) {
        let Instance { bcn, reference } = instance(seed);
        let sol = solve_periodic(&bcn, &PeriodicReference::new(reference.clone()).unwrap()).unwrap();
        let oracle = brute_periodic_trackable_set(&bcn, &reference, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(sol.solvable_everywhere, oracle.len() == bcn.n_states());
    }
}
