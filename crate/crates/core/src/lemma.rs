//! Executable checks for the inequality and iteration claims used to argue
//! that coalescence of `n` with `3n + 2` implies representability, plus
//! the range sweep of the representability conclusion itself.
//!
//! All comparisons are exact integer arithmetic. Half-integer powers of 3
//! are compared through their squares.

use std::time::Instant;

use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{nu2, Descent, Word};
use crate::representation::{decode, encode_parities};
use crate::serde_nat;
use crate::sweep::{self, Chunk, SweepReport, Tally};
use crate::Nat;

fn pow3(e: u64) -> Nat {
    Pow::pow(Nat::from(3u32), e)
}

fn pow2(e: u64) -> Nat {
    Nat::one() << e
}

/// `3^(a/2 + 1) + 2 < 2^a + 1`, decided as `3^(a+2) < (2^a - 1)^2`.
pub fn lemma2_check(a: u64) -> bool {
    let base = pow2(a) - 1u32;
    pow3(a + 2) < &base * &base
}

/// `3^(floor(a/2) + 1) + 2 < 2^a + 1`.
pub fn floor_form_check(a: u64) -> bool {
    pow3(a / 2 + 1) + 2u32 < pow2(a) + 1u32
}

/// One row of [`case3_inequality_audit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub a: u64,
    pub lemma2: bool,
    pub floor_form: bool,
}

/// Both inequalities for every `a` in `[1, a_max]`; `a_max` must be at least 8.
pub fn case3_inequality_audit(a_max: u64) -> Result<Vec<AuditRow>> {
    if a_max < 8 {
        return Err(Error::InvalidArgument(format!(
            "audit bound must be at least 8, got {a_max}"
        )));
    }
    Ok((1..=a_max)
        .map(|a| AuditRow {
            a,
            lemma2: lemma2_check(a),
            floor_form: floor_form_check(a),
        })
        .collect())
}

/// Where the orbit of `n + 1` lands for even `n = 2^epsilon * odd_part`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma3Outcome {
    #[serde(with = "serde_nat::one")]
    pub n: Nat,
    pub epsilon: u64,
    #[serde(with = "serde_nat::one")]
    pub odd_part: Nat,
    #[serde(with = "serde_nat::one")]
    pub target: Nat,
    /// Least `k` with `T^k(n + 1) = target`.
    pub k_found: u64,
    /// `3 epsilon / 2` for even epsilon, `3 (epsilon - 1) / 2 + 2` for odd.
    pub k_predicted: u64,
}

impl Lemma3Outcome {
    pub fn prediction_holds(&self) -> bool {
        self.k_found == self.k_predicted
    }
}

/// Search bound used when none is given: `64 + 3 epsilon`.
pub fn default_k_max(epsilon: u64) -> u64 {
    64 + 3 * epsilon
}

/// `3^(e/2) m + 1` for even `e`, `3^(floor(e/2) + 1) m + 2` for odd `e`.
pub fn lemma3_target(epsilon: u64, odd_part: &Nat) -> Nat {
    if epsilon.is_multiple_of(2) {
        pow3(epsilon / 2) * odd_part + 1u32
    } else {
        pow3(epsilon / 2 + 1) * odd_part + 2u32
    }
}

pub fn lemma3_predicted_steps(epsilon: u64) -> u64 {
    if epsilon.is_multiple_of(2) {
        3 * epsilon / 2
    } else {
        3 * (epsilon - 1) / 2 + 2
    }
}

/// Searches `k` in `[0, k_max]` for the least `T^k(n + 1)` equal to the
/// case formula.
pub fn lemma3_check(n: &Nat, k_max: u64) -> Result<Lemma3Outcome> {
    let factored = nu2(n)?;
    let target = lemma3_target(factored.epsilon, &factored.odd_part);
    let start = n + 1u32;
    let goal = Word::from_nat(&target);
    let mut w = Word::from_nat(&start);
    for k in 0..=k_max {
        if w == goal {
            return Ok(Lemma3Outcome {
                n: n.clone(),
                epsilon: factored.epsilon,
                odd_part: factored.odd_part,
                target,
                k_found: k,
                k_predicted: lemma3_predicted_steps(factored.epsilon),
            });
        }
        w.step();
    }
    Err(Error::NotFound {
        start,
        target,
        k_max,
    })
}

/// [`lemma3_check`] at `n = 2^a`.
pub fn lemma4_check(a: u64, k_max: u64) -> Result<Lemma3Outcome> {
    if a == 0 {
        return Err(Error::InvalidArgument("a must be at least 1".into()));
    }
    lemma3_check(&pow2(a), k_max)
}

/// Per-value outcome of [`theorem1_sweep`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSweepRecord {
    #[serde(with = "serde_nat::one")]
    pub n: Nat,
    /// The canonical encoding exists and decodes back to `n`.
    pub encoded: bool,
    pub power_of_two: bool,
    /// Length of the canonical sequence; 0 when not encoded.
    pub sequence_length: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSweep {
    pub records: Vec<TheoremSweepRecord>,
    pub report: SweepReport,
}

/// Encodes every `n` in `[start, end]` and certifies each encoding by
/// decoding it again.
pub fn theorem1_sweep(
    start: &Nat,
    end: &Nat,
    max_steps: u64,
    workers: usize,
) -> Result<TheoremSweep> {
    let clock = Instant::now();
    let len = sweep::range_len(start, end)?;
    let parts = sweep::map_chunks(start, len, workers, |chunk| theorem_chunk(chunk, max_steps));
    let mut records = Vec::with_capacity(len as usize);
    let mut tally = Tally::default();
    for (chunk_records, chunk_tally) in parts {
        records.extend(chunk_records);
        tally = tally.merge(chunk_tally);
    }
    Ok(TheoremSweep {
        records,
        report: tally.into_report(start, end, clock.elapsed()),
    })
}

fn theorem_chunk(chunk: &Chunk, max_steps: u64) -> (Vec<TheoremSweepRecord>, Tally) {
    let mut records = Vec::with_capacity(chunk.len as usize);
    let mut tally = Tally::default();
    chunk.for_each(|candidate| {
        let n = candidate.to_nat();
        let record = match Descent::walk(&n, max_steps) {
            Some(descent) => {
                let encoded = encode_parities(&descent.odd_steps);
                let round_trip = decode(&encoded.sequence) == n;
                if round_trip {
                    tally.success();
                    tally.observe(descent.peak.clone(), descent.steps());
                } else {
                    tally.failure(n.clone());
                }
                TheoremSweepRecord {
                    power_of_two: encoded.power_of_two_input,
                    sequence_length: if round_trip {
                        encoded.sequence.len() as u64
                    } else {
                        0
                    },
                    encoded: round_trip,
                    n,
                }
            }
            None => {
                tally.failure(n.clone());
                TheoremSweepRecord {
                    power_of_two: crate::numeric::is_power_of_two(&n),
                    encoded: false,
                    sequence_length: 0,
                    n,
                }
            }
        };
        records.push(record);
    });
    (records, tally)
}
