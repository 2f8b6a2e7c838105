//! Exact sparse multivariate polynomials.

mod eval;
mod monomial;
mod poly;

pub use eval::IntegerEvaluator;
pub use monomial::Monomial;
pub use poly::{Degree, SparsePoly};
