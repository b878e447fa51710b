//! Exact counts of δ-complementary-dual cyclic F_q-linear F_{q^t}-codes.
//!
//! The closed-form census lives in [`counting`] and [`census`]; [`formed_oracle`]
//! and the code-level enumerators in [`census`] recompute the same quantities by
//! exhaustive search so that each formula can be checked at small sizes.

pub mod census;
pub mod counting;
pub mod cyclotomic;
pub mod error;
pub mod formed_oracle;
pub mod gf_tower;
pub mod linalg;

pub use error::{Error, Result};
pub use gf_tower::PrimePower;

/// Default ceiling on the number of subspace representatives an oracle may visit.
pub const DEFAULT_WORK_BOUND: u64 = 10_000_000;

/// Environment variable that overrides [`DEFAULT_WORK_BOUND`].
pub const WORK_BOUND_ENV: &str = "LCD_WORK_BOUND";

/// The work bound in effect: the environment override if set and valid,
/// the default otherwise.
pub fn work_bound_from_env() -> u64 {
    std::env::var(WORK_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_WORK_BOUND)
}
