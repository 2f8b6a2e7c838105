//! Serializable command reports. Each has a JSON schema under `schemas/`.

use serde::{Deserialize, Serialize};

use super::json::PairingJson;
use crate::attrlab::AttributeReport;
use crate::certlab::{CertVerdict, NowhereZero, TransportReport};
use crate::gzpair::PairingVerdict;
use crate::polymap::{Classification, Nilpotency};
use crate::reducer::StageRecord;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub dim: usize,
    pub degree: Option<u32>,
    pub classification: Classification,
    pub yagzhev: bool,
    pub druzkowski: bool,
    /// Nilpotency of `J(H)`, for maps of the form `X + H`.
    pub jh_nilpotency: Option<Nilpotency>,
    /// Fiber attributes, for plane maps.
    pub attributes: Option<AttributeReport>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReduceReport {
    /// `cubic` or `yagzhev`.
    pub to: String,
    pub input_dim: usize,
    pub output_dim: usize,
    pub output_degree: Option<u32>,
    pub stages: Vec<StageRecord>,
    /// `(degree, terms of that degree)` before each lowering round.
    pub potentials: Vec<(u32, usize)>,
    pub moves: usize,
    pub yagzhev: bool,
    pub segre_identity: Option<bool>,
    pub base_point: Vec<String>,
    pub reference_cubic_dim: usize,
    pub reference_yagzhev_dim: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: CertVerdict,
    pub transport: Option<TransportReport>,
}

impl VerifyReport {
    pub fn valid(&self) -> bool {
        self.verdict.valid && self.transport.as_ref().is_none_or(|t| t.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub pairing: PairingJson,
    pub verdict: PairingVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetrizeReport {
    pub dim: usize,
    pub map: String,
    pub potential: String,
    pub jacobian_symmetric: bool,
    pub inverse_status: NowhereZero,
    pub moves: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegreReport {
    pub dim: usize,
    pub map: String,
    /// `j(G)(x, t) = j(F)(t x)`, when the determinants fit the budget.
    pub identity_holds: Option<bool>,
}

pub const SCHEMAS: &[(&str, &str)] = &[
    ("analyze", include_str!("../../schemas/analyze.schema.json")),
    ("attributes", include_str!("../../schemas/attributes.schema.json")),
    ("certificate", include_str!("../../schemas/certificate.schema.json")),
    ("pair", include_str!("../../schemas/pair.schema.json")),
    ("reduce", include_str!("../../schemas/reduce.schema.json")),
    ("segre", include_str!("../../schemas/segre.schema.json")),
    ("symmetrize", include_str!("../../schemas/symmetrize.schema.json")),
    ("verify", include_str!("../../schemas/verify.schema.json")),
];

pub fn schema(name: &str) -> Option<&'static str> {
    SCHEMAS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
