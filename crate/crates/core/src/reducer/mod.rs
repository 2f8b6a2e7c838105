//! Reduction of polynomial maps to cubic homogeneous form by stable
//! equivalences and one Segre extension, plus gradient symmetrization.

mod lower;
mod meng;
mod pipeline;
mod steps;

pub use lower::{lower_degree, lower_degree_with, LowerOptions, Lowering, SplitStrategy};
pub use meng::{meng_symmetrize, Symmetrized};
pub use pipeline::{to_yagzhev, to_yagzhev_with, ReductionTrace, StageRecord, REFERENCE_CUBIC_DIM, REFERENCE_YAGZHEV_DIM};
pub use steps::{eliminate_quadratic, normalize, normalized_parts, segre_extend, segre_identity, segre_step, Normalized, SegreResult};
