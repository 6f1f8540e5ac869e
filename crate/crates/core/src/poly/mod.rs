//! Exact coefficient arithmetic and sparse multivariate polynomials.

mod coeff;
mod eps;
mod fp;
mod monomial;
mod multipoly;
mod parse;

pub use coeff::{rat, ratio, Field, Rational, Ring};
pub use eps::{EpsPoly, EpsRationalFn};
pub use fp::Fp;
pub use monomial::{Monomial, MonomialOrder, SortKey, MAX_VARS};
pub use multipoly::MultiPoly;
pub use parse::{max_variable_index, parse_eps_poly, parse_eps_scalar, parse_poly};
