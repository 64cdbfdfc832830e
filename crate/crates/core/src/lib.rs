// SPDX-License-Identifier: Apache-2.0

//! Output tracking for Boolean control networks in algebraic form.
//!
//! Given a network x(t+1) = L ⋉ u(t) ⋉ x(t), y(t) = H x(t) and a reference
//! output sequence, the crate decides from which initial states the reference
//! can be tracked exactly and produces every admissible input sequence.
//! Both finite-length and periodic references are supported.
//!
//! ```
//! use bcn_track::{Bcn, PeriodicReference, solve_periodic};
//!
//! let bcn = Bcn::from_indices(
//!     6, 2, 2,
//!     vec![2, 2, 4, 5, 5, 5, 4, 3, 1, 2, 6, 5],
//!     vec![1, 1, 2, 1, 2, 1],
//! ).unwrap();
//! let reference = PeriodicReference::new(vec![1, 1, 2]).unwrap();
//! let solution = solve_periodic(&bcn, &reference).unwrap();
//! assert_eq!(solution.x0p_set, vec![1, 2, 3, 4]);
//! ```

pub mod cli;
pub mod error;
pub mod finite;
pub mod io;
pub mod model;
pub mod oracle;
pub mod periodic;
pub mod report;
pub mod stp;

pub use error::{Error, Result};
pub use finite::{
    admissible_inputs, alpha_sequence, compatible_pairs, indistinguishability_vector, solve_finite, synthesize_finite,
    FiniteTrackingSolution, PairTable, Policy, ReferenceTrajectory, Synthesis,
};
pub use model::{Bcn, Trajectory};
pub use periodic::{
    check_universal_periodic, periodic_controller, solve_periodic, synthesize_periodic, trackable_from,
    PeriodicController, PeriodicReference, PeriodicSolution,
};
pub use stp::{BooleanMatrix, BooleanVector, LogicalMatrix, LogicalVector};

use serde::Serialize;

/// Overall answer of an analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Trackable from every initial state.
    Universal,
    /// Produced by some state trajectory but not trackable from every state.
    Partial,
    /// No state trajectory produces the reference.
    Incompatible,
}

impl Verdict {
    pub fn classify(compatible: bool, everywhere: bool) -> Self {
        match (compatible, everywhere) {
            (false, _) => Verdict::Incompatible,
            (true, true) => Verdict::Universal,
            (true, false) => Verdict::Partial,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Universal => 0,
            Verdict::Partial => 2,
            Verdict::Incompatible => 3,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Universal => "universal",
            Verdict::Partial => "partial",
            Verdict::Incompatible => "incompatible",
        })
    }
}

impl FiniteTrackingSolution {
    pub fn verdict(&self) -> Verdict {
        Verdict::classify(self.compatible, self.solvable_everywhere)
    }
}
