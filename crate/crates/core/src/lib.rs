//! Exact q-series and lattice machinery for positive ternary quadratic forms.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated power series in `q` with checked `i64` coefficients,
//!   plus a bounded Laurent layer in a second variable used for the quintuple
//!   product.
//! - [`theta`]: Euler's product, Ramanujan's `f(a, b)`, the classical theta
//!   constants, the Borwein cubic sums and character-weighted square sums, each
//!   available from a sum construction and a product construction.
//! - [`lattice`]: ternary and binary forms, exact lattice enumeration, and
//!   congruence-restricted theta sums.
//! - [`arith`]: Kronecker symbols, trial-division factorization and the
//!   Hurwitz-type closed forms for representations of squares.
//! - [`classify`]: excluded-set predicates for the catalogued forms, the
//!   genus-mate comparison and the clause checks for the two discriminant
//!   16384 forms.
//! - [`registry`]: a named catalog of series identities verified
//!   coefficient by coefficient.

pub mod arith;
pub mod classify;
mod error;
pub mod lattice;
pub mod registry;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
pub use series::QSeries;
