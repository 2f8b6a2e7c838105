//! Stable-equivalence certificates: elementary moves, replay verification
//! and sampled fiber transport.

mod automorphism;
mod certificate;
mod rational;
mod transport;

pub use automorphism::{Automorphism, Verification};
pub use certificate::{apply_kind, apply_move, verify_certificate, CertVerdict, Certificate, CertificateBuilder, Move, MoveKind};
pub use rational::{NowhereZero, RationalMap};
pub use transport::{fiber_transport_check, fiber_transport_check_with, SegreParameter, TransportReport};
