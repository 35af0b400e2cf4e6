//! Exact bivariate Laurent polynomial arithmetic over the rationals.

mod factor;
pub mod modp;
mod parse;
mod poly;
pub mod rational;
mod univariate;

pub use factor::{irreducibility_check, univariate_irreducible, Irreducibility};
pub use parse::{format_poly_file, parse_poly, parse_poly_file, PolyFile};
pub use poly::{rational_pow, Exponent, LaurentPoly2, Substitution, Var, Vars, MAX_EXPONENT};
pub use rational::Rational;
pub use univariate::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable {name:?} at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent {0} exceeds the supported range")]
    ExponentOverflow(i64),
    #[error("missing `vars:` header line")]
    MissingHeader,
    #[error("variable labels differ: ({left}) vs ({right})")]
    VarMismatch { left: String, right: String },
    #[error("negative power of a non-monomial")]
    NonMonomialInverse,
    #[error("scaling constant must be nonzero")]
    ZeroScale,
    #[error("zero coordinate where a negative exponent occurs")]
    ZeroWithNegativeExponent,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation needs nonnegative exponents; normalize first")]
    NegativeExponent,
    #[error("polynomial is constant")]
    Constant,
}
