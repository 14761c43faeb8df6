//! Falsifiability by search for a small witness, plus an independent
//! brute-force oracle for tiny formulas.

mod brute;
mod engine;

pub use brute::{brute_force_falsifiable, BruteBounds};

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::formula::Formula;
use crate::typespace::DEFAULT_TYPE_CAP;
use crate::witness::Witness;
use crate::{Error, Result};
use engine::{Ctx, Engine};

/// Caps on the search. The defaults never bite, so a `Valid` verdict under
/// them is a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_segment_length: usize,
    pub max_loop_length: usize,
    pub max_states: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_segment_length: usize::MAX, max_loop_length: usize::MAX, max_states: usize::MAX }
    }
}

impl SearchLimits {
    /// Defaults, with `max_states` taken from `GTL_MAX_STATES` when set.
    pub fn from_env() -> Self {
        let mut l = Self::default();
        if let Some(n) = std::env::var("GTL_MAX_STATES").ok().and_then(|s| s.trim().parse().ok()) {
            l.max_states = n;
        }
        l
    }

    /// Length caps below infinity can hide witnesses even when the state
    /// budget never runs out.
    fn exact(&self) -> bool {
        self.max_segment_length == usize::MAX && self.max_loop_length == usize::MAX
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Falsifiable(Box<Witness>),
    ResourceExhausted(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Falsifiable(w) => Some(w),
            _ => None,
        }
    }
}

/// Single-threaded search.
pub fn falsifiable(f: &Formula, limits: SearchLimits) -> Result<Verdict> {
    falsifiable_jobs(f, limits, 1)
}

/// Search with `jobs` workers over the initial moments. The verdict and
/// witness do not depend on `jobs`, except that state budgets are counted
/// per worker.
pub fn falsifiable_jobs(f: &Formula, limits: SearchLimits, jobs: usize) -> Result<Verdict> {
    let ctx = Ctx::new(f, DEFAULT_TYPE_CAP)?;
    let starts: Vec<Vec<u32>> = ctx.all_moments().into_iter().filter(|m| ctx.refutes_root(m)).collect();
    let exhausted = AtomicBool::new(false);
    let reason = std::sync::Mutex::new(String::new());
    let note = |e: engine::Exhausted| {
        exhausted.store(true, Ordering::Relaxed);
        *reason.lock().unwrap() = e.0;
    };

    // Which start succeeds first does not depend on search history, but the
    // witness a warmed-up engine finds does; it is rebuilt from scratch below.
    let first = if jobs <= 1 {
        let mut eng = Engine::new(&ctx, limits);
        let mut hit = None;
        for (i, m0) in starts.iter().enumerate() {
            match eng.attempt(m0) {
                Ok(Some(_)) => {
                    hit = Some(i);
                    break;
                }
                Ok(None) => {}
                Err(e) => note(e),
            }
        }
        hit
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(|| {
            starts
                .par_iter()
                .enumerate()
                .map_init(
                    || Engine::new(&ctx, limits),
                    |eng, (i, m0)| match eng.attempt(m0) {
                        Ok(w) => w.map(|_| i),
                        Err(e) => {
                            note(e);
                            None
                        }
                    },
                )
                .find_first(|w| w.is_some())
                .flatten()
        })
    };
    let found = match first {
        None => None,
        Some(i) => match Engine::new(&ctx, limits).attempt(&starts[i]) {
            Ok(w) => w,
            Err(e) => {
                note(e);
                None
            }
        },
    };
    Ok(match found {
        Some(w) => {
            debug_assert!(crate::witness::certify_witness(&w).ok());
            Verdict::Falsifiable(Box::new(w))
        }
        None if exhausted.load(Ordering::Relaxed) => Verdict::ResourceExhausted(reason.into_inner().unwrap()),
        // a truncated search proves nothing
        None if !limits.exact() => Verdict::ResourceExhausted("no witness within the given length limits".into()),
        None => Verdict::Valid,
    })
}

/// Validity under the default limits. An exhausted search is reported as an
/// error rather than guessed.
pub fn valid(f: &Formula) -> Result<bool> {
    match falsifiable(f, SearchLimits::from_env())? {
        Verdict::Valid => Ok(true),
        Verdict::Falsifiable(_) => Ok(false),
        Verdict::ResourceExhausted(why) => Err(Error::Exhausted(why)),
    }
}
