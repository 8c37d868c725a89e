//! Exact truncated Laurent series over Q(zeta_12), q-series building blocks,
//! WP-Bailey pairs, and a bank of q-series identities checked by exact
//! coefficient comparison under random rational specializations.

pub mod bank;
pub mod coeff;
pub mod error;
pub mod fps;
pub mod mono;
pub mod qkit;
pub mod verify;
pub mod wppairs;

pub use coeff::{CycNumber, Rational};
pub use error::{Error, Result};
pub use fps::{LaurentSeries, ValuationBound};
pub use mono::Mono;
pub use bank::{bank, IdentityCase, Specialization};
pub use verify::{random_spec, verify, Status, VerificationReport};
pub use wppairs::PairKind;
