//! Polynomial maps of R^n: reduction to cubic normal forms, pairing, symmetrization,
//! equivalence certificates and fiber attributes, all in exact arithmetic.

pub mod attrlab;
pub mod budget;
pub mod certlab;
pub mod elimination;
pub mod error;
pub mod gzpair;
pub mod linalg;
pub mod polycore;
pub mod polymap;
pub mod reducer;
pub mod rng;
pub mod scalar;
pub mod shell;

pub use elimination::UniPoly;
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use polycore::{Degree, Monomial, SparsePoly};
pub use polymap::PolyMap;
pub use budget::Budget;

pub type Rational = num_rational::BigRational;
pub type Poly = SparsePoly<Rational>;
pub type PolyF64 = SparsePoly<f64>;
pub type PolyF32 = SparsePoly<f32>;
pub type PolyZ = SparsePoly<num_bigint::BigInt>;
pub type QUniPoly = UniPoly<Rational>;
pub type RatMatrix = Matrix<Rational>;
pub type PolyMatrix = Matrix<Poly>;
