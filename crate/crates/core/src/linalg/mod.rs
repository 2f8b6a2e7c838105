//! Dense matrices over rings and fields, and sparse elimination mod p.

mod matrix;
pub mod modp;

pub use matrix::Matrix;
