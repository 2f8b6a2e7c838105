//! Univariate polynomials, subresultant resultants, squarefree parts and
//! Sturm-sequence real-root counting.

mod resultant;
mod sturm;
mod unipoly;

pub use resultant::{resultant, subresultant_prs, Prs};
pub use sturm::{
    cauchy_bound, count_real_roots, isolate_real_roots, refine, squarefree_part, sturm_count,
    sturm_sequence, Bound, IsolatingInterval,
};
pub use unipoly::{to_bivariate, to_univariate_over, UniPoly};
