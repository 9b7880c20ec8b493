//! Exact arithmetic: big rationals, polynomials and rational functions in
//! `q`, and Laurent polynomials in `X = q^x`, `Y = q^y` over `Q(q)`.

mod laurent;
mod modp;
mod poly;
mod ratfun;
pub mod rational;
mod zpoly;

pub use laurent::{LaurentXY, RingOp, Var};
pub use poly::PolyQ;
pub use ratfun::{FieldOp, RatQ};
pub use rational::BigRat;
