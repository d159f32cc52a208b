//! Exact machinery for the 3x+1 map.
//!
//! * [`numeric`]: single steps, iterates, bounded orbits, 2-adic helpers.
//! * [`representation`]: the codec between integers and exponent sequences
//!   `(2^a_{k+1} - sum 2^a_i 3^(k-i)) / 3^(k+1)` and its closure transforms.
//! * [`coalescence`]: orbit intersection and the `n ~ 3n + 2` range sweep.
//! * [`lemma`]: verifiers for the supporting inequalities and iteration
//!   formulas, and the representability sweep.
//! * [`cli`]: the `collatz` command-line front end.
//!
//! ```
//! use collatz_core::{encode, decode, Nat};
//!
//! let e = encode(&Nat::from(11u32), 1000).unwrap();
//! assert_eq!(e.sequence.to_string(), "0,1,3,6,10");
//! assert_eq!(decode(&e.sequence), Nat::from(11u32));
//! ```

pub mod cli;
pub mod coalescence;
pub mod error;
pub mod lemma;
pub mod numeric;
pub mod representation;
mod serde_nat;
pub mod sweep;

pub use coalescence::{
    coalesce, hypothesis_check, hypothesis_sweep, hypothesis_sweep_with, CoalescenceResult,
    SweepConfig,
};
pub use error::{Error, Result};
pub use lemma::{
    case3_inequality_audit, lemma2_check, lemma3_check, lemma4_check, theorem1_sweep, AuditRow,
    Lemma3Outcome, TheoremSweep, TheoremSweepRecord,
};
pub use numeric::{
    collatz_iterate, collatz_step, is_power_of_two, nu2, total_stopping_steps, trajectory,
    FactoredEven, Nat, Trajectory, TrajectoryStatus,
};
pub use representation::{
    decode, double_transform, encode, odd_inverse_transform, validate, EncodeResult, RSequence,
};
pub use sweep::SweepReport;
