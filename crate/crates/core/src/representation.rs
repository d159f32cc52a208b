//! Exponent-sequence representations
//!
//! ```text
//! m = (2^a_{k+1} - sum_{i=0..=k} 2^a_i * 3^(k-i)) / 3^(k+1),   a_0 <= a_1 <= ... <= a_{k+1}
//! ```
//!
//! together with the two closure transforms that generate them from 1:
//! doubling (`m -> 2m`, every exponent plus one) and the odd inverse
//! (`m -> (2m - 1)/3`, double then prepend a zero exponent).
//!
//! Representations are not unique: `(0,4)` and `(0,4,6)` both give 5.
//! [`encode`] picks one canonical form by walking the forward orbit backwards
//! from 1.
//!
//! Powers of two are representable under the definition as written:
//! `(j, j+2)` decodes to `2^j`. [`encode`] uses that form and flags it.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Descent;
use crate::Nat;

/// Largest exponent accepted from untrusted input.
pub const MAX_EXPONENT: u64 = 1 << 20;

/// A validated, nondecreasing exponent sequence `(a_0, ..., a_{k+1})` that
/// decodes to a positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct RSequence {
    exponents: Vec<u64>,
}

impl RSequence {
    /// Callers guarantee every invariant.
    fn from_trusted(exponents: Vec<u64>) -> Self {
        debug_assert!(exponents.len() >= 2);
        debug_assert!(exponents.windows(2).all(|w| w[0] <= w[1]));
        RSequence { exponents }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `k + 2`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `k` in the representation formula.
    pub fn k(&self) -> usize {
        self.exponents.len() - 2
    }

    pub fn value(&self) -> Nat {
        decode(self)
    }
}

impl fmt::Display for RSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Parses `a0,a1,...` (whitespace ignored) and validates the result.
impl FromStr for RSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        validate(&parse_exponents(s)?)
    }
}

impl TryFrom<Vec<u64>> for RSequence {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        validate(&v)
    }
}

impl From<RSequence> for Vec<u64> {
    fn from(s: RSequence) -> Self {
        s.exponents
    }
}

/// Splits the comma-separated text form into raw exponents without
/// checking any representation invariant.
pub fn parse_exponents(s: &str) -> Result<Vec<u64>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    compact
        .split(',')
        .map(|tok| {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse {
                    input: s.to_string(),
                    reason: format!("{tok:?} is not a decimal exponent"),
                });
            }
            tok.parse::<u64>().map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

/// Result of [`encode`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodeResult {
    pub sequence: RSequence,
    /// The input was `2^j` with `j >= 1` and took the `(j, j+2)` form.
    pub power_of_two_input: bool,
}

fn evaluate(exponents: &[u64]) -> Result<Nat> {
    let (last, terms) = exponents.split_last().ok_or(Error::TooShort { len: 0 })?;
    let mut subtrahend = Nat::zero();
    for &a in terms {
        subtrahend = subtrahend * 3u32 + (Nat::one() << a);
    }
    let top = Nat::one() << *last;
    if top <= subtrahend {
        return Err(Error::NonPositive);
    }
    let power = terms.len();
    let (q, r) = (top - subtrahend).div_rem(&Nat::from(3u32).pow(power as u32));
    if !r.is_zero() {
        return Err(Error::NotDivisible { power });
    }
    Ok(q)
}

/// Checks a raw exponent list against every representation invariant.
pub fn validate(exponents: &[u64]) -> Result<RSequence> {
    if exponents.len() < 2 {
        return Err(Error::TooShort {
            len: exponents.len(),
        });
    }
    if let Some(i) = exponents.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::NotMonotone { index: i + 1 });
    }
    let largest = exponents[exponents.len() - 1];
    if largest > MAX_EXPONENT {
        return Err(Error::ExponentTooLarge {
            exponent: largest,
            max: MAX_EXPONENT,
        });
    }
    evaluate(exponents)?;
    Ok(RSequence::from_trusted(exponents.to_vec()))
}

/// The integer a sequence represents.
pub fn decode(s: &RSequence) -> Nat {
    evaluate(&s.exponents).expect("RSequence always decodes")
}

/// Every exponent plus one; the decoded value doubles.
pub fn double_transform(s: &RSequence) -> RSequence {
    RSequence::from_trusted(s.exponents.iter().map(|a| a + 1).collect())
}

/// `(0, a_0 + 1, ..., a_{k+1} + 1)`, decoding to `(2m - 1)/3` for `m = decode(s)`.
/// Only defined when `m ≡ 2 (mod 3)`.
pub fn odd_inverse_transform(s: &RSequence) -> Result<RSequence> {
    let value = decode(s);
    if (&value % 3u32) != Nat::from(2u32) {
        return Err(Error::NotApplicable { value });
    }
    let mut out = Vec::with_capacity(s.len() + 1);
    out.push(0);
    out.extend(s.exponents.iter().map(|a| a + 1));
    Ok(RSequence::from_trusted(out))
}

/// Applies the closure transforms in O(1) each by keeping a global shift.
/// Exponents are stored back to front as `exponent - shift`.
struct ReverseBuilder {
    stored: Vec<i64>,
    shift: i64,
}

impl ReverseBuilder {
    /// `(0, doublings)`, i.e. `(2^doublings - 1)/3`.
    fn seed(doublings: u64) -> Self {
        ReverseBuilder {
            stored: vec![doublings as i64, 0],
            shift: 0,
        }
    }

    fn double(&mut self) {
        self.shift += 1;
    }

    fn odd_inverse(&mut self) {
        self.shift += 1;
        self.stored.push(-self.shift);
    }

    fn finish(self) -> Vec<u64> {
        let shift = self.shift;
        self.stored
            .iter()
            .rev()
            .map(|s| (s + shift) as u64)
            .collect()
    }
}

/// Canonical representation from the parities of a descent to 1 (`true`
/// marks a `3x + 1` step).
///
/// Walking the orbit backwards from 1, doublings accumulate until the first
/// odd inverse, which seeds `(0, c)`. After that each reverse doubling is a
/// [`double_transform`] and each reverse `x -> (x - 1)/3` together with the
/// doubling in front of it is one [`odd_inverse_transform`].
pub(crate) fn encode_parities(odd_steps: &[bool]) -> EncodeResult {
    let mut builder: Option<ReverseBuilder> = None;
    let mut doublings = 0u64;
    for j in (0..odd_steps.len()).rev() {
        if odd_steps[j] {
            match builder.as_mut() {
                None => builder = Some(ReverseBuilder::seed(doublings)),
                Some(b) => b.odd_inverse(),
            }
        } else {
            let feeds_odd_inverse = j > 0 && odd_steps[j - 1];
            match builder.as_mut() {
                None => doublings += 1,
                Some(b) if !feeds_odd_inverse => b.double(),
                Some(_) => {}
            }
        }
    }
    match builder {
        Some(b) => EncodeResult {
            sequence: RSequence::from_trusted(b.finish()),
            power_of_two_input: false,
        },
        None => EncodeResult {
            sequence: RSequence::from_trusted(vec![doublings, doublings + 2]),
            power_of_two_input: doublings > 0,
        },
    }
}

/// Canonical representation of `n`, found from its orbit.
///
/// Fails with `BudgetExhausted` if the orbit does not reach 1 within
/// `max_steps`.
pub fn encode(n: &Nat, max_steps: u64) -> Result<EncodeResult> {
    if n.is_zero() {
        return Err(Error::Domain(n.clone()));
    }
    let descent = Descent::walk(n, max_steps).ok_or_else(|| Error::BudgetExhausted {
        start: n.clone(),
        max_steps,
    })?;
    Ok(encode_parities(&descent.odd_steps))
}
