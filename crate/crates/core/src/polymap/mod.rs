//! Polynomial maps, Jacobians, classification and normal-form predicates.

mod classify;
mod jacobian;
mod map;
mod nilpotent;
mod structure;

pub use classify::{classify, jacobian_degree_bound, sample_nonsingularity, Classification, SampleVerdict, Tri};
pub use jacobian::{
    det_at, det_mod_p_at, jacobian, jacobian_at, jacobian_composed, jacobian_det, jacobian_mod_p, linear_part,
    Computed,
};
pub use map::PolyMap;
pub use nilpotent::{is_nilpotent, jh_nilpotency, krylov_refutes, nonlinear_jacobian, Nilpotency};
pub use structure::{is_druzkowski, is_yagzhev, recognize_cube, CubeForm, DruzkowskiCheck, ShapeWitness, YagzhevCheck};
