//! Exact evaluation on finite cyclic flows, plus a classical LTL oracle.
//!
//! Time is `0..period` with the successor `t + 1 mod period`. Infima over the
//! future or past need one period; U and S take their supremum over two
//! periods by default, after which the prefix minima are periodic.

mod bi;
mod ltl;
mod real;

pub use bi::{eval_bi, eval_bi_with, PeriodicBiModel};
pub use ltl::{crisp_shadow, crispify, ltl_eval, ltl_valid, LtlModel};
pub use real::{eval_real, eval_real_with, PeriodicRealModel};

use num_rational::Rational64;

pub type Value = Rational64;

/// Evaluation knobs shared by both evaluators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Reject variables missing from the model instead of reading them as
    /// false.
    pub strict: bool,
    /// Horizon for U and S, in periods.
    pub horizon: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { strict: false, horizon: 2 }
    }
}

/// `t + n` on the cycle, for possibly negative `n`.
pub(crate) fn shift(t: usize, n: i64, k: usize) -> usize {
    (t as i64 + n).rem_euclid(k as i64) as usize
}
