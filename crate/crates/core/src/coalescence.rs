//! Orbit coalescence: whether two forward orbits share a value, and a range
//! sweep of the hypothesis that every `n` outside `{2, 4, 8, ...}` coalesces
//! with `3n + 2`.
//!
//! Orbits are expanded in lockstep, one step left then one step right, and
//! the first value seen in both is the meet. An orbit stops growing once it
//! reaches 1 or would revisit one of its own values, so `O+(1)` is
//! `1, 4, 2`.

use std::collections::HashMap;
use std::time::Instant;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{is_power_of_two, Descent, Word};
use crate::serde_nat;
use crate::sweep::{self, Candidate, Chunk, DescentMemo, SweepReport, Tally};
use crate::Nat;

/// First contact between two orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoalescenceResult {
    pub met: bool,
    #[serde(with = "serde_nat::opt")]
    pub meet_value: Option<Nat>,
    /// Position of `meet_value` in the left orbit; 0 when not met.
    pub index_left: u64,
    /// Position of `meet_value` in the right orbit; 0 when not met.
    pub index_right: u64,
    /// Set when the orbits did not meet and at least one ran out of budget.
    pub budget_hit: bool,
}

impl CoalescenceResult {
    fn met(value: &Word, index_left: u64, index_right: u64) -> Self {
        CoalescenceResult {
            met: true,
            meet_value: Some(value.to_nat()),
            index_left,
            index_right,
            budget_hit: false,
        }
    }
}

struct Orbit {
    last: Word,
    index: HashMap<Word, u64>,
    len: u64,
    done: bool,
    exhausted: bool,
}

impl Orbit {
    fn new(start: &Nat) -> Self {
        let last = Word::from_nat(start);
        let mut index = HashMap::new();
        index.insert(last.clone(), 0);
        Orbit {
            last,
            index,
            len: 1,
            done: false,
            exhausted: false,
        }
    }

    /// Appends the next value and returns its position, or `None` once the
    /// orbit has stopped.
    fn advance(&mut self, max_steps: u64) -> Option<u64> {
        if self.done {
            return None;
        }
        if self.len > 1 && self.last.is_one() {
            self.done = true;
            return None;
        }
        if self.len > max_steps {
            self.done = true;
            self.exhausted = true;
            return None;
        }
        let mut next = self.last.clone();
        next.step();
        if self.index.contains_key(&next) {
            self.done = true;
            return None;
        }
        let position = self.len;
        self.index.insert(next.clone(), position);
        self.last = next;
        self.len += 1;
        Some(position)
    }
}

fn check_domain(n: &Nat) -> Result<()> {
    if n.is_zero() {
        Err(Error::Domain(n.clone()))
    } else {
        Ok(())
    }
}

/// Lockstep search for the first common value of `O+(n1)` and `O+(n2)`,
/// each orbit limited to `max_steps` steps.
pub fn coalesce(n1: &Nat, n2: &Nat, max_steps: u64) -> Result<CoalescenceResult> {
    check_domain(n1)?;
    check_domain(n2)?;
    let mut left = Orbit::new(n1);
    let mut right = Orbit::new(n2);
    if left.last == right.last {
        return Ok(CoalescenceResult::met(&left.last, 0, 0));
    }
    loop {
        let mut progressed = false;
        if let Some(i) = left.advance(max_steps) {
            progressed = true;
            if let Some(&j) = right.index.get(&left.last) {
                return Ok(CoalescenceResult::met(&left.last, i, j));
            }
        }
        if let Some(j) = right.advance(max_steps) {
            progressed = true;
            if let Some(&i) = left.index.get(&right.last) {
                return Ok(CoalescenceResult::met(&right.last, i, j));
            }
        }
        if !progressed {
            return Ok(CoalescenceResult {
                met: false,
                meet_value: None,
                index_left: 0,
                index_right: 0,
                budget_hit: left.exhausted || right.exhausted,
            });
        }
    }
}

/// `coalesce(n, 3n + 2)` for `n` outside `{2, 4, 8, ...}`.
pub fn hypothesis_check(n: &Nat, max_steps: u64) -> Result<CoalescenceResult> {
    check_domain(n)?;
    if is_power_of_two(n) {
        return Err(Error::DomainExcluded(n.clone()));
    }
    coalesce(n, &partner(n), max_steps)
}

fn partner(n: &Nat) -> Nat {
    n * 3u32 + 2u32
}

/// Knobs for [`hypothesis_sweep_with`].
#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub max_steps: u64,
    pub workers: usize,
    /// Certify a pair as soon as both orbits are known to reach 1, using a
    /// shared memo of descents; falls back to the lockstep search otherwise.
    pub memoize: bool,
}

/// Checks the hypothesis for every non-power-of-two in `[start, end]`.
///
/// A check that does not meet within budget lands in `failures`; sweeps
/// never fail on data.
pub fn hypothesis_sweep(
    start: &Nat,
    end: &Nat,
    max_steps: u64,
    workers: usize,
) -> Result<SweepReport> {
    hypothesis_sweep_with(
        start,
        end,
        SweepConfig {
            max_steps,
            workers,
            memoize: true,
        },
    )
}

pub fn hypothesis_sweep_with(start: &Nat, end: &Nat, config: SweepConfig) -> Result<SweepReport> {
    let clock = Instant::now();
    let len = sweep::range_len(start, end)?;
    let memo = config.memoize.then(|| {
        let span = end.to_u64().map_or(usize::MAX, |e| {
            e.saturating_mul(3).saturating_add(3) as usize
        });
        DescentMemo::new(span)
    });
    let tally = sweep::map_chunks(start, len, config.workers, |chunk| {
        sweep_chunk(chunk, config.max_steps, memo.as_ref())
    })
    .into_iter()
    .fold(Tally::default(), Tally::merge);
    Ok(tally.into_report(start, end, clock.elapsed()))
}

fn sweep_chunk(chunk: &Chunk, max_steps: u64, memo: Option<&DescentMemo>) -> Tally {
    let mut tally = Tally::default();
    let mut path = Vec::new();
    chunk.for_each(|candidate| {
        if let Candidate::Small(n) = candidate {
            if n.is_power_of_two() && n > 1 {
                return;
            }
            if let (Some(memo), Some(m)) = (memo, n.checked_mul(3).and_then(|x| x.checked_add(2))) {
                let left = memo.descend(n, max_steps, &mut path);
                let right = left.and_then(|_| memo.descend(m, max_steps, &mut path));
                if let (Some((ls, lp)), Some((rs, rp))) = (left, right) {
                    tally.success();
                    tally.observe(Word::Small(lp.max(rp)), ls.max(rs));
                    return;
                }
            }
        }
        let n = candidate.to_nat();
        if is_power_of_two(&n) {
            return;
        }
        check_slow(&n, max_steps, &mut tally);
    });
    tally
}

fn check_slow(n: &Nat, max_steps: u64, tally: &mut Tally) {
    let m = partner(n);
    let result = coalesce(n, &m, max_steps).expect("n >= 1");
    if !result.met {
        tally.failure(n.clone());
        return;
    }
    tally.success();
    if let (Some(left), Some(right)) = (Descent::walk(n, max_steps), Descent::walk(&m, max_steps)) {
        let steps = left.steps().max(right.steps());
        tally.observe(left.peak.max(right.peak), steps);
    }
}
