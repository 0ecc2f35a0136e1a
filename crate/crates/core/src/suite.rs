//! Shared plumbing for the verification suites.

use crate::error::{LoopError, Result};
use crate::identity::{minverse_suite, sweep, Mode, DEFAULT_SAMPLES, EXHAUSTIVE_LIMIT};
use crate::report::{Outcome, Record, Report};
use crate::table::{CayleyTable, Elem};

/// How a suite chooses between exhaustive and sampled sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Sweeps with at most this many tuples run exhaustively.
    pub exhaustive_limit: u128,
    pub seed: u64,
    pub samples: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { exhaustive_limit: EXHAUSTIVE_LIMIT, seed: 1, samples: DEFAULT_SAMPLES }
    }
}

impl SuiteOptions {
    /// Exhaustive up to `2^24` tuples, a million samples beyond.
    pub fn fast() -> Self {
        SuiteOptions { exhaustive_limit: 1 << 24, seed: 1, samples: 1_000_000 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn mode(&self, n: usize, arity: usize) -> Mode {
        if (n as u128).pow(arity as u32) <= self.exhaustive_limit {
            Mode::Exhaustive
        } else {
            Mode::Sampled { samples: self.samples, seed: self.seed }
        }
    }
}

/// Sweeps `pred` over `A`-tuples of `points` and records the outcome. The
/// witness is reported in terms of the points, not their indices.
pub(crate) fn sweep_record<const A: usize, F>(id: &str, description: &str, points: &[Elem], mode: Mode, pred: F) -> Record
where
    F: Fn([Elem; A]) -> bool + Sync,
{
    Record::run(id, description, mode, || {
        let (w, evals) = sweep::<A, _>(points.len(), mode, |idx| pred(idx.map(|i| points[i])));
        Outcome::from_witness(w.map(|w| w.map(|i| points[i]))).with_detail(format!("{evals} evaluations"))
    })
}

/// The same over the whole element set `0..n`.
pub(crate) fn sweep_all<const A: usize, F>(id: &str, description: &str, n: usize, mode: Mode, pred: F) -> Record
where
    F: Fn([Elem; A]) -> bool + Sync,
{
    Record::run(id, description, mode, || {
        let (w, evals) = sweep::<A, _>(n, mode, pred);
        Outcome::from_witness(w).with_detail(format!("{evals} evaluations"))
    })
}

/// The `m`-inverse consequences as a report. A loop that is not
/// `m`-inverse gives a single failing record.
pub fn minverse_report(t: &CayleyTable, m: i64) -> Result<Report> {
    let mut r = Report::new(t.label());
    let ex = Mode::Exhaustive;
    let start = std::time::Instant::now();
    let s = match minverse_suite(t, m) {
        Ok(s) => s,
        Err(LoopError::NotMInverse { witness, .. }) => {
            r.push(Record::run("minverse.holds", &format!("the loop is {m}-inverse"), ex, || Outcome::fail(format!("{witness:?}"))));
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let ms = start.elapsed().as_millis() as u64;
    let mut push = |id: &str, desc: String, ok: bool| {
        let mut rec = Record::run(id, &desc, ex, || Outcome::from_bool(ok));
        rec.timing_ms = Some(ms);
        r.push(rec);
    };
    push("minverse.holds", format!("the loop is {m}-inverse"), true);
    push("minverse.dual", format!("hence {}-inverse", s.dual_m), s.dual_holds);
    push("minverse.inverse_power_automorphism", format!("I^{} is an automorphism", s.automorphism_power), s.automorphism_holds);
    if let Some((e, ok)) = s.power_of_two.filter(|&(e, _)| 1i64 << e != s.automorphism_power) {
        push("minverse.power_of_two_automorphism", format!("I^{} is an automorphism", 1u64 << e), ok);
    }
    Ok(r)
}
