//! Gorni-Zampieri pairing between cubic linear and cubic homogeneous maps.

mod cubes;
mod pairing;

pub use cubes::{decompose_cubes, reassemble};
pub use pairing::{
    cubic_linear, linear_map, pair_down, pair_up, pairing_to_equivalence, verify_pairing, GzPairing, PairingVerdict,
};
