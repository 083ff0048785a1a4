//! Exact arithmetic: rationals, sparse multivariate polynomials, reduced
//! rational functions, gcds and squarefree decompositions.

mod field;
mod gcd;
mod heugcd;
mod monomial;
mod poly;
mod ratfunc;
mod roots;
mod sqfree;

pub use field::FieldSpec;
pub use gcd::{
    content_in, gcd, gcd_all, lcm, monomial_content, prem, prim_gcd_in, primitive_part_in,
    split_content_in,
};
pub use monomial::{Monomial, Var, MAX_VARS, X, Y};
pub use poly::{default_var_name, Poly};
pub use ratfunc::RatFunc;
pub use roots::rational_roots;
pub use sqfree::{squarefree_decomposition, squarefree_part, SquarefreeDecomposition};

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("inexact division")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no decomposition")]
    ZeroPolynomial,
    #[error("{0}")]
    Field(String),
}

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
