//! The unaccelerated Collatz map `T(n) = n/2` (even), `3n + 1` (odd) on the
//! positive integers, its iterates and bounded forward orbits, plus 2-adic
//! helpers.
//!
//! Every orbit computation takes an explicit step budget. Values are walked
//! in a `u64` fast path and promoted to [`Nat`] only when `3n + 1` would
//! overflow, so results are bit-identical to pure big-integer arithmetic.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_nat;

/// Arbitrary-precision nonnegative integer.
pub type Nat = BigUint;

/// An orbit value. `Big` only ever holds values above `u64::MAX`, so the
/// derived `Eq`, `Hash` and `Ord` agree with numeric equality and order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Word {
    Small(u64),
    Big(BigUint),
}

impl Word {
    pub(crate) fn from_nat(n: &Nat) -> Self {
        match n.to_u64() {
            Some(v) => Word::Small(v),
            None => Word::Big(n.clone()),
        }
    }

    pub(crate) fn to_nat(&self) -> Nat {
        match self {
            Word::Small(v) => Nat::from(*v),
            Word::Big(b) => b.clone(),
        }
    }

    pub(crate) fn is_one(&self) -> bool {
        matches!(self, Word::Small(1))
    }

    pub(crate) fn is_odd(&self) -> bool {
        match self {
            Word::Small(v) => v & 1 == 1,
            Word::Big(b) => b.is_odd(),
        }
    }

    /// Applies `T` in place.
    pub(crate) fn step(&mut self) {
        let next = match self {
            Word::Small(v) => match step_u64(*v) {
                Some(n) => Word::Small(n),
                None => Word::Big(Nat::from(*v) * 3u32 + 1u32),
            },
            Word::Big(b) => {
                if b.is_odd() {
                    *b *= 3u32;
                    *b += 1u32;
                    return;
                }
                *b >>= 1u32;
                match b.to_u64() {
                    Some(v) => Word::Small(v),
                    None => return,
                }
            }
        };
        *self = next;
    }
}

/// `T` on a machine word; `None` when `3v + 1` overflows.
#[inline]
pub(crate) fn step_u64(v: u64) -> Option<u64> {
    if v & 1 == 0 {
        Some(v >> 1)
    } else {
        v.checked_mul(3)?.checked_add(1)
    }
}

fn check_domain(n: &Nat) -> Result<()> {
    if n.is_zero() {
        Err(Error::Domain(n.clone()))
    } else {
        Ok(())
    }
}

/// How a bounded orbit computation ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrajectoryStatus {
    ReachedOne,
    BudgetExhausted,
}

/// A prefix of the forward orbit `n, T(n), T^2(n), ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    #[serde(with = "serde_nat::one")]
    pub start: Nat,
    #[serde(with = "serde_nat::many")]
    pub values: Vec<Nat>,
    pub status: TrajectoryStatus,
}

impl Trajectory {
    /// Number of applications of `T` recorded.
    pub fn steps(&self) -> u64 {
        self.values.len() as u64 - 1
    }
}

/// An even number split as `2^epsilon * odd_part`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredEven {
    pub epsilon: u64,
    #[serde(with = "serde_nat::one")]
    pub odd_part: Nat,
}

impl FactoredEven {
    pub fn reconstruct(&self) -> Nat {
        &self.odd_part << self.epsilon
    }
}

pub fn collatz_step(n: &Nat) -> Result<Nat> {
    check_domain(n)?;
    let mut w = Word::from_nat(n);
    w.step();
    Ok(w.to_nat())
}

/// `T^k(n)`; `k = 0` returns `n`.
pub fn collatz_iterate(n: &Nat, k: u64) -> Result<Nat> {
    check_domain(n)?;
    let mut w = Word::from_nat(n);
    let mut remaining = k;
    while remaining > 0 {
        if w.is_one() {
            // 1 -> 4 -> 2 -> 1 has period 3.
            remaining %= 3;
            for _ in 0..remaining {
                w.step();
            }
            break;
        }
        w.step();
        remaining -= 1;
    }
    Ok(w.to_nat())
}

/// Orbit prefix of `n`, stopping at the first 1 or after `max_steps` steps.
pub fn trajectory(n: &Nat, max_steps: u64) -> Result<Trajectory> {
    check_domain(n)?;
    let mut w = Word::from_nat(n);
    let mut values = vec![n.clone()];
    let mut status = TrajectoryStatus::BudgetExhausted;
    if w.is_one() {
        status = TrajectoryStatus::ReachedOne;
    } else {
        for _ in 0..max_steps {
            w.step();
            values.push(w.to_nat());
            if w.is_one() {
                status = TrajectoryStatus::ReachedOne;
                break;
            }
        }
    }
    Ok(Trajectory {
        start: n.clone(),
        values,
        status,
    })
}

/// Least `k` with `T^k(n) = 1`, or `None` if it exceeds `max_steps`.
pub fn total_stopping_steps(n: &Nat, max_steps: u64) -> Result<Option<u64>> {
    check_domain(n)?;
    Ok(Descent::walk(n, max_steps).map(|d| d.steps()))
}

/// 2-adic valuation and odd part of an even `n >= 2`.
pub fn nu2(n: &Nat) -> Result<FactoredEven> {
    if n.is_zero() || n.is_odd() {
        return Err(Error::NotEven(n.clone()));
    }
    // n != 0, so trailing_zeros is Some
    let epsilon = n.trailing_zeros().unwrap_or(0);
    Ok(FactoredEven {
        epsilon,
        odd_part: n >> epsilon,
    })
}

/// Membership in `{2, 4, 8, ...}`; 1 is not a member.
pub fn is_power_of_two(n: &Nat) -> bool {
    n > &Nat::one() && n.count_ones() == 1
}

/// A complete descent to 1: the parity of every value visited before 1
/// (true marks a `3x + 1` step) and the largest value seen.
#[derive(Debug, Clone)]
pub(crate) struct Descent {
    pub(crate) odd_steps: Vec<bool>,
    pub(crate) peak: Word,
}

impl Descent {
    pub(crate) fn walk(n: &Nat, max_steps: u64) -> Option<Descent> {
        let mut w = Word::from_nat(n);
        let mut peak = w.clone();
        let mut odd_steps = Vec::new();
        while !w.is_one() {
            if odd_steps.len() as u64 >= max_steps {
                return None;
            }
            odd_steps.push(w.is_odd());
            w.step();
            if w > peak {
                peak = w.clone();
            }
        }
        Some(Descent { odd_steps, peak })
    }

    pub(crate) fn steps(&self) -> u64 {
        self.odd_steps.len() as u64
    }
}
