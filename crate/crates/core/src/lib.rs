//! Exact and certified-numeric verification of symmetric identities for
//! Carlitz-type q-Euler numbers and polynomials.
//!
//! * [`algebra`]: exact arithmetic in `Q[q]`, `Q(q)` and `Q(q)[X^±, Y^±]`.
//! * [`qeuler`]: q-brackets, q-Euler numbers and polynomials.
//! * [`zeta`]: the alternating q-zeta series with certified truncation.
//! * [`verify`]: the symmetric identities and their checks.

pub mod algebra;
pub mod error;
pub mod qeuler;
pub mod real;
pub mod report;
pub mod series;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
