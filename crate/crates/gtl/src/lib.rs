//! Goedel temporal logic toolkit.
//!
//! Formulas over the propositional Goedel connectives (with co-implication)
//! and the past/future temporal operators `X Y G H U S`. The crate decides
//! validity by searching for small falsifiability witnesses, evaluates
//! formulas on periodic real-valued and bi-relational models, builds
//! quotient quasimodels and checks Hilbert-style proofs.

// index loops over relation matrices read better than iterator chains here
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod cli;
pub mod error;
pub mod formula;
pub mod proofcheck;
pub mod quasimodel;
pub mod semantics;
pub mod solver;
pub mod typespace;
pub mod witness;

pub use error::{Error, Result};
pub use formula::{parse, Formula, SigmaSet};
