//! Resource limits shared by the exact algorithms.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Exact Jacobian determinants are always attempted up to this dimension.
    pub exact_det_dim: usize,
    /// Above `exact_det_dim`, an exact determinant is attempted under this cap
    /// on metered term operations.
    pub exact_det_term_ops: u64,
    /// Exact nilpotency (repeated exact multiplication) up to this dimension.
    pub exact_nilpotent_dim: usize,
    /// Largest map dimension the reducer may produce.
    pub max_dim: usize,
    /// Wall-clock limit for a pipeline run, in milliseconds.
    pub max_ms: u64,
    /// Random evaluation points for sampled checks.
    pub samples: usize,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exact_det_dim: 12,
            exact_det_term_ops: 100_000,
            exact_nilpotent_dim: 24,
            max_dim: 2000,
            max_ms: 300_000,
            samples: 64,
            started: None,
        }
    }
}

impl Budget {
    /// Starts the wall clock; later `check_time` calls measure from here.
    pub fn started(mut self) -> Self {
        self.started = Some(Instant::now());
        self
    }

    pub fn elapsed(&self) -> Duration {
        self.started.map_or(Duration::ZERO, |s| s.elapsed())
    }

    pub fn check_time(&self, what: &str) -> Result<()> {
        if self.elapsed() > Duration::from_millis(self.max_ms) {
            return Err(Error::BudgetExceeded(format!("{what}: time limit of {} ms", self.max_ms)));
        }
        Ok(())
    }

    pub fn check_dim(&self, dim: usize, what: &str) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::BudgetExceeded(format!(
                "{what}: dimension {dim} exceeds cap {}",
                self.max_dim
            )));
        }
        Ok(())
    }

    /// Metered-operation cap for an exact determinant of size `n`, or
    /// `None` for unlimited.
    pub fn det_cap(&self, n: usize) -> Option<u64> {
        (n > self.exact_det_dim).then_some(self.exact_det_term_ops)
    }
}
