//! Exact arithmetic in Q(i)(s, w, x), with `t = s^2`.

pub mod constants;
pub mod gaussian;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod rational;

pub use constants::{named_constant, NamedConstant};
pub use gaussian::GaussianRational;
pub use parse::parse_rational;
pub use poly::{Monomial, Polynomial, Var};
pub use rational::{RationalFunction, VarNames};
