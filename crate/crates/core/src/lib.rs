//! Deciding and certifying the coexistence (joint measurability) of quantum
//! effects on `C^d`.
//!
//! The crate implements five sufficient conditions for two effects to be
//! coexistent (commutativity, comparability, the infimum condition, Jordan
//! positivity and generalized-infimum positivity), the `n`-effect Jordan
//! condition, and an alternating-projection oracle that searches for an
//! explicit joint measurement.
//!
//! ```
//! use coexist::exemplars::qubit_effect;
//! use coexist::conditions::{check_ginf, DEFAULT_TOL};
//!
//! let e = qubit_effect(1.0, [0.7, 0.0, 0.0]).unwrap();
//! let f = qubit_effect(1.0, [0.0, 0.7, 0.0]).unwrap();
//! assert!(check_ginf(&e, &f, DEFAULT_TOL).unwrap().holds());
//! ```

pub mod conditions;
pub mod effects;
pub mod error;
pub mod exemplars;
pub mod hermitian;
pub mod oracle;
pub mod survey;

#[cfg(test)]
mod testutil;

pub use conditions::{
    check_comp, check_commu, check_ginf, check_inf, check_jor, check_jor_multi, full_report,
    jordan_general, verify_witness, CoexWitness, Condition, ConditionVerdict, PairReport, Status,
};
pub use effects::{infimum, Effect, InfimumKind, InfimumResult, Projection};
pub use error::{Error, Result};
pub use hermitian::{Complex64, EigenDecomposition, GeneralMatrix, HermitianMatrix, PsdCheck};
pub use oracle::{decide_pair, OracleKind, OracleOutcome, OracleParams};
