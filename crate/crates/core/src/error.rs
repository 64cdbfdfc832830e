// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimensions must be positive")]
    ZeroDimension,

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{what} index {index} out of range [1, {bound}]")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("entry {0} is not a Boolean value (expected 0 or 1)")]
    NotBoolean(i64),

    #[error("reference trajectory must contain at least one output")]
    EmptyReference,

    #[error("target set must be nonempty")]
    EmptyTargets,

    #[error("step count must be at least 1")]
    ZeroSteps,

    #[error("beta sequence is empty")]
    EmptyBeta,

    #[error("time {time} outside the pair table range [0, {last}]")]
    TimeOutOfRange { time: usize, last: usize },

    #[error("no tracking input sequence exists from state {x0}; feasible initial states: {feasible:?}")]
    Infeasible { x0: usize, feasible: Vec<usize> },

    #[error("search space of {required} exceeds the configured budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
}
