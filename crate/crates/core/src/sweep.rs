//! Range sweeps: ordered partitioning across worker threads, the report
//! they produce, and the shared descent memo.
//!
//! A range is cut into contiguous chunks, each chunk is processed on a
//! dedicated rayon pool, and the per-chunk tallies are merged in range
//! order. Reports therefore do not depend on the worker count.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{step_u64, Word};
use crate::serde_nat;
use crate::Nat;

/// Aggregate outcome of a range verification.
///
/// `max_orbit_value` and `max_steps_seen` range over the orbits that were
/// certified to reach 1; `max_steps_seen` counts applications of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    #[serde(with = "serde_nat::one")]
    pub range_start: Nat,
    #[serde(with = "serde_nat::one")]
    pub range_end: Nat,
    pub checked: u64,
    pub succeeded: u64,
    #[serde(with = "serde_nat::many")]
    pub failures: Vec<Nat>,
    #[serde(with = "serde_nat::one")]
    pub max_orbit_value: Nat,
    pub max_steps_seen: u64,
    /// Wall time of the sweep; `None` once stripped for reproducible output.
    #[serde(with = "serde_nat::seconds")]
    pub elapsed: Option<Duration>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    /// Drops the wall time so that reports compare and serialize identically.
    pub fn without_timing(mut self) -> Self {
        self.elapsed = None;
        self
    }
}

/// Per-chunk accumulator, merged in range order.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub(crate) checked: u64,
    pub(crate) succeeded: u64,
    pub(crate) failures: Vec<Nat>,
    pub(crate) max_orbit_value: Option<Word>,
    pub(crate) max_steps_seen: u64,
}

impl Tally {
    pub(crate) fn success(&mut self) {
        self.checked += 1;
        self.succeeded += 1;
    }

    pub(crate) fn failure(&mut self, n: Nat) {
        self.checked += 1;
        self.failures.push(n);
    }

    pub(crate) fn observe(&mut self, peak: Word, steps: u64) {
        self.max_steps_seen = self.max_steps_seen.max(steps);
        if self.max_orbit_value.as_ref().is_none_or(|m| &peak > m) {
            self.max_orbit_value = Some(peak);
        }
    }

    pub(crate) fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.succeeded += other.succeeded;
        self.failures.extend(other.failures);
        self.max_steps_seen = self.max_steps_seen.max(other.max_steps_seen);
        if let Some(peak) = other.max_orbit_value {
            if self.max_orbit_value.as_ref().is_none_or(|m| &peak > m) {
                self.max_orbit_value = Some(peak);
            }
        }
        self
    }

    pub(crate) fn into_report(self, start: &Nat, end: &Nat, elapsed: Duration) -> SweepReport {
        SweepReport {
            range_start: start.clone(),
            range_end: end.clone(),
            checked: self.checked,
            succeeded: self.succeeded,
            failures: self.failures,
            max_orbit_value: self.max_orbit_value.map(|w| w.to_nat()).unwrap_or_default(),
            max_steps_seen: self.max_steps_seen,
            elapsed: Some(elapsed),
        }
    }
}

/// A contiguous piece of the range.
#[derive(Debug, Clone)]
pub(crate) struct Chunk {
    pub(crate) start: Nat,
    pub(crate) len: u64,
}

impl Chunk {
    /// Visits every value in the chunk; values that fit in a machine word
    /// are passed without allocation.
    pub(crate) fn for_each(&self, mut f: impl FnMut(Candidate<'_>)) {
        let small = self
            .start
            .to_u64()
            .filter(|s| s.checked_add(self.len).is_some());
        match small {
            Some(s) => (s..s + self.len).for_each(|n| f(Candidate::Small(n))),
            None => {
                let mut n = self.start.clone();
                for _ in 0..self.len {
                    f(Candidate::Big(&n));
                    n += 1u32;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Candidate<'a> {
    Small(u64),
    Big(&'a Nat),
}

impl Candidate<'_> {
    pub(crate) fn to_nat(self) -> Nat {
        match self {
            Candidate::Small(n) => Nat::from(n),
            Candidate::Big(n) => n.clone(),
        }
    }
}

/// Validates `1 <= start <= end` and returns the number of values.
pub(crate) fn range_len(start: &Nat, end: &Nat) -> Result<u64> {
    let invalid = || Error::InvalidRange {
        start: start.clone(),
        end: end.clone(),
    };
    if start < &Nat::one() || start > end {
        return Err(invalid());
    }
    (end - start)
        .to_u64()
        .and_then(|d| d.checked_add(1))
        .ok_or_else(invalid)
}

fn chunks(start: &Nat, len: u64, workers: usize) -> Vec<Chunk> {
    let target = (len / (workers as u64 * 16)).clamp(1, 1 << 14);
    let mut out = Vec::with_capacity((len / target + 1) as usize);
    let mut offset = 0u64;
    while offset < len {
        let this = target.min(len - offset);
        out.push(Chunk {
            start: start + offset,
            len: this,
        });
        offset += this;
    }
    out
}

/// Runs `work` over every chunk of `[start, start + len)` on `workers`
/// threads; results come back in range order.
pub(crate) fn map_chunks<T, F>(start: &Nat, len: u64, workers: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Chunk) -> T + Sync,
{
    let workers = workers.max(1);
    let pieces = chunks(start, len, workers);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| pieces.par_iter().map(&work).collect())
}

const STEP_BITS: u32 = 20;
const PEAK_LIMIT: u64 = 1 << (64 - STEP_BITS);

/// Largest number of memo slots a sweep allocates.
pub(crate) const MEMO_CAPACITY_LIMIT: usize = 1 << 23;

/// Certified descents for small values: slot `v` packs the step count to 1
/// and the orbit peak, zero meaning unknown.
///
/// Every stored entry is an exact fact about `v`, so concurrent writers can
/// only ever store the same word and relaxed ordering is enough.
pub(crate) struct DescentMemo {
    slots: Vec<AtomicU64>,
}

impl DescentMemo {
    pub(crate) fn new(capacity: usize) -> Self {
        let capacity = capacity.clamp(2, MEMO_CAPACITY_LIMIT);
        DescentMemo {
            slots: (0..capacity).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    fn get(&self, v: u64) -> Option<(u64, u64)> {
        let packed = self.slots.get(v as usize)?.load(Ordering::Relaxed);
        (packed != 0).then_some((packed & ((1 << STEP_BITS) - 1), packed >> STEP_BITS))
    }

    fn put(&self, v: u64, steps: u64, peak: u64) {
        if steps >= 1 << STEP_BITS || peak >= PEAK_LIMIT {
            return;
        }
        if let Some(slot) = self.slots.get(v as usize) {
            slot.store((peak << STEP_BITS) | steps, Ordering::Relaxed);
        }
    }

    /// Step count and peak of the descent of `x` to 1, when it completes
    /// within `max_steps` without leaving `u64`. `path` is scratch space.
    pub(crate) fn descend(
        &self,
        x: u64,
        max_steps: u64,
        path: &mut Vec<u64>,
    ) -> Option<(u64, u64)> {
        path.clear();
        let mut v = x;
        let (mut steps, mut peak) = loop {
            if v == 1 {
                break (0, 1);
            }
            if let Some(known) = self.get(v) {
                break known;
            }
            if path.len() as u64 >= max_steps {
                return None;
            }
            path.push(v);
            v = step_u64(v)?;
        };
        for &p in path.iter().rev() {
            steps += 1;
            peak = peak.max(p);
            self.put(p, steps, peak);
        }
        (steps <= max_steps).then_some((steps, peak))
    }
}

/// Worker count used when none is given: the available parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
