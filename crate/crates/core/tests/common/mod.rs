//! Oracles shared by the integration suites. Nothing here calls into the
//! code paths it is used to check.
#![allow(dead_code)]

use collatz_core::Nat;
use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};
use proptest::prelude::*;

/// Term-by-term evaluation of the representation formula in signed
/// arithmetic: `None` when the quotient is not a positive integer.
pub fn decode_oracle(exponents: &[u64]) -> Option<Nat> {
    let k = exponents.len().checked_sub(2)?;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let mut numerator = Pow::pow(&two, exponents[k + 1]);
    for (i, &a) in exponents[..=k].iter().enumerate() {
        numerator -= Pow::pow(&two, a) * Pow::pow(&three, (k - i) as u64);
    }
    let denominator = Pow::pow(&three, (k + 1) as u64);
    if !numerator.is_positive() || !(&numerator % &denominator).is_zero() {
        return None;
    }
    (numerator / denominator).to_biguint()
}

/// Plain `u128` Collatz step; panics on overflow.
pub fn step_oracle(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        n / 2
    } else {
        3 * n + 1
    }
}

pub fn stopping_steps_oracle(mut n: u128) -> u64 {
    let mut k = 0;
    while n != 1 {
        n = step_oracle(n);
        k += 1;
    }
    k
}

/// Completes a nondecreasing prefix `(a_0..a_k)` with the least `a_{k+1}`
/// that makes the formula a positive integer. 2 generates the units mod
/// `3^(k+1)` and the prefix sum is a unit, so a solution always exists.
pub fn complete_sequence(prefix: &[u64]) -> Vec<u64> {
    let k = prefix.len() - 1;
    let modulus = 3u128.pow(k as u32 + 1);
    let mut sum: u128 = 0;
    for &a in prefix {
        sum = sum * 3 + (1u128 << a);
    }
    let mut e = prefix[k];
    let mut pow = (1u128 << e) % modulus;
    loop {
        if pow == sum % modulus && (e >= 127 || (1u128 << e) > sum) {
            let mut out = prefix.to_vec();
            out.push(e);
            return out;
        }
        e += 1;
        pow = pow * 2 % modulus;
    }
}

/// Random valid exponent sequences built without the codec under test.
pub fn valid_sequence() -> impl Strategy<Value = Vec<u64>> {
    (0u64..8, prop::collection::vec(0u64..5, 0..6)).prop_map(|(first, steps)| {
        let mut prefix = vec![first];
        for s in steps {
            let last = *prefix.last().unwrap();
            prefix.push(last + s);
        }
        complete_sequence(&prefix)
    })
}

/// Every valid sequence whose exponents are all at most `max_exponent`.
/// Positivity forces `3^k < 2^max_exponent`, which bounds the length.
pub fn all_valid_sequences(max_exponent: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn extend(prefix: &mut Vec<u64>, max_exponent: u64, out: &mut Vec<Vec<u64>>) {
        let floor = prefix.last().copied().unwrap_or(0);
        for a in floor..=max_exponent {
            prefix.push(a);
            if prefix.len() >= 2 && decode_oracle(prefix).is_some() {
                out.push(prefix.clone());
            }
            // the subtracted sum alone already exceeds 2^max_exponent
            let k = prefix.len() - 1;
            if 3u128.pow(k as u32) < (1u128 << max_exponent) {
                extend(prefix, max_exponent, out);
            }
            prefix.pop();
        }
    }
    extend(&mut prefix, max_exponent, &mut out);
    out
}
