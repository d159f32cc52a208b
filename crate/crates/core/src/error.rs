use thiserror::Error;

use crate::Nat;

/// Everything that can go wrong across the crate.
///
/// Verification outcomes that a sweep is expected to observe (an orbit that
/// does not reach 1 in budget, a lemma that fails for some input) are
/// reported as data in the sweep reports; they only surface here when a
/// single-value operation cannot produce its result.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is outside the domain n >= 1")]
    Domain(Nat),

    #[error("{0} is not an even number >= 2")]
    NotEven(Nat),

    #[error("{0} is a power of two and excluded from the hypothesis")]
    DomainExcluded(Nat),

    #[error("orbit of {start} did not reach 1 within {max_steps} steps")]
    BudgetExhausted { start: Nat, max_steps: u64 },

    #[error("exponents are not nondecreasing at position {index}")]
    NotMonotone { index: usize },

    #[error("a representation needs at least 2 exponents, got {len}")]
    TooShort { len: usize },

    #[error("numerator is not divisible by 3^{power}")]
    NotDivisible { power: usize },

    #[error("numerator is not positive")]
    NonPositive,

    #[error("exponent {exponent} exceeds the supported maximum {max}")]
    ExponentTooLarge { exponent: u64, max: u64 },

    #[error("odd-inverse needs a value congruent to 2 mod 3, got {value}")]
    NotApplicable { value: Nat },

    #[error("no k <= {k_max} with T^k({start}) = {target}")]
    NotFound { start: Nat, target: Nat, k_max: u64 },

    #[error("invalid range [{start}, {end}]")]
    InvalidRange { start: Nat, end: Nat },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
