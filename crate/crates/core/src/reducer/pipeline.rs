use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::lower::{lower_degree_with, LowerOptions};
use super::steps::{eliminate_quadratic, normalize, segre_step};
use crate::budget::Budget;
use crate::certlab::Certificate;
use crate::error::Result;
use crate::{PolyMap, Rational};

/// Reference trajectory for the Pinchuk map from the literature: a cubic
/// map in dimension 101, then a cubic homogeneous one in dimension 203.
pub const REFERENCE_CUBIC_DIM: usize = 101;
pub const REFERENCE_YAGZHEV_DIM: usize = 203;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub name: String,
    pub dim: usize,
    pub moves: usize,
    pub millis: u64,
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub certificate: Certificate,
    pub stages: Vec<StageRecord>,
    pub potentials: Vec<(u32, usize)>,
    pub base_point: Vec<Rational>,
    /// Exact Segre identity, when the determinants fit the budget.
    pub segre_identity: Option<bool>,
    pub elapsed_ms: u64,
}

impl ReductionTrace {
    pub fn stage_names(&self) -> Vec<&str> {
        self.stages.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn stage_dims(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.dim).collect()
    }
}

struct Recorder {
    stages: Vec<StageRecord>,
    clock: Instant,
}

impl Recorder {
    fn record(&mut self, name: &str, dim: usize, moves: usize) {
        self.stages.push(StageRecord {
            name: name.into(),
            dim,
            moves,
            millis: self.clock.elapsed().as_millis() as u64,
        });
        self.clock = Instant::now();
    }
}

/// Degree lowering, normalization, Segre extension and quadratic
/// elimination, chained into one certificate.
pub fn to_yagzhev(f: &PolyMap, seed: u64, budget: &Budget) -> Result<(PolyMap, ReductionTrace)> {
    to_yagzhev_with(f, seed, budget, LowerOptions::default())
}

pub fn to_yagzhev_with(
    f: &PolyMap,
    seed: u64,
    budget: &Budget,
    options: LowerOptions,
) -> Result<(PolyMap, ReductionTrace)> {
    f.check_square()?;
    let budget = budget.clone().started();
    let start = Instant::now();
    let mut rec = Recorder {
        stages: Vec::new(),
        clock: Instant::now(),
    };
    rec.record("input", f.nvars(), 0);

    let lowered = lower_degree_with(f, options)?;
    let n1 = lowered.map.nvars();
    rec.record("step1_lower_degree", n1, lowered.certificate.moves.len());
    budget.check_dim(2 * n1 + 1, "quadratic elimination")?;
    budget.check_time("degree lowering")?;

    let normalized = normalize(&lowered.map, seed)?;
    rec.record("step2_normalize", n1, normalized.certificate.moves.len());
    budget.check_time("normalization")?;

    let segre = segre_step(&normalized.map, &budget)?;
    rec.record("step3_segre", segre.map.nvars(), 1);
    budget.check_time("Segre extension")?;

    let (out, elim) = eliminate_quadratic(&segre.map)?;
    rec.record("step4_eliminate_quadratic", out.nvars(), elim.moves.len());
    budget.check_time("quadratic elimination")?;

    let certificate = lowered
        .certificate
        .then(normalized.certificate)?
        .then(segre.certificate)?
        .then(elim)?;
    Ok((
        out,
        ReductionTrace {
            certificate,
            stages: rec.stages,
            potentials: lowered.potentials,
            base_point: normalized.base_point,
            segre_identity: segre.identity_holds,
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certlab::verify_certificate;
    use crate::polymap::is_yagzhev;

    #[test]
    fn identity_pipeline() {
        let (g, trace) = to_yagzhev(&PolyMap::identity(2), 0, &Budget::default()).unwrap();
        assert_eq!(g.nvars(), 5);
        assert!(is_yagzhev(&g).holds);
        assert!(verify_certificate(&trace.certificate).valid);
        assert_eq!(trace.stage_dims(), vec![2, 2, 2, 3, 5]);
    }
}
