use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::automorphism::Automorphism;
use super::rational::{NowhereZero, RationalMap};
use crate::error::{Error, Result};
use crate::{Poly, PolyMap};

#[derive(Clone, Debug, PartialEq)]
pub enum MoveKind {
    ExtendFreshVars { count: usize },
    PostCompose(Automorphism),
    PreCompose(Automorphism),
    SegreExtend,
}

impl MoveKind {
    pub fn name(&self) -> &'static str {
        match self {
            MoveKind::ExtendFreshVars { .. } => "extend_fresh_vars",
            MoveKind::PostCompose(_) => "post_compose",
            MoveKind::PreCompose(_) => "pre_compose",
            MoveKind::SegreExtend => "segre_extend",
        }
    }

    pub fn automorphism(&self) -> Option<&Automorphism> {
        match self {
            MoveKind::PostCompose(a) | MoveKind::PreCompose(a) => Some(a),
            _ => None,
        }
    }

    fn after_dim(&self, before: usize) -> usize {
        match self {
            MoveKind::ExtendFreshVars { count } => before + count,
            MoveKind::SegreExtend => before + 1,
            _ => before,
        }
    }
}

/// One elementary step together with the map it produces.
#[derive(Clone, Debug, PartialEq)]
pub struct Move {
    pub kind: MoveKind,
    pub before_dim: usize,
    pub after_dim: usize,
    pub result: PolyMap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub source: PolyMap,
    pub target: PolyMap,
    pub moves: Vec<Move>,
}

impl Certificate {
    pub fn empty(source: PolyMap) -> Self {
        Certificate {
            target: source.clone(),
            source,
            moves: Vec::new(),
        }
    }

    /// `self` followed by `next`; `next.source` must equal `self.target`.
    pub fn then(mut self, next: Certificate) -> Result<Certificate> {
        if next.source != self.target {
            return Err(Error::DimensionMismatch(
                "certificates do not chain: source differs from previous target".into(),
            ));
        }
        self.moves.extend(next.moves);
        self.target = next.target;
        Ok(self)
    }

    /// Map before move `k`.
    pub fn before(&self, k: usize) -> &PolyMap {
        if k == 0 {
            &self.source
        } else {
            &self.moves[k - 1].result
        }
    }

    pub fn weakest_status(&self) -> NowhereZero {
        self.moves
            .iter()
            .filter_map(|m| m.kind.automorphism())
            .map(Automorphism::status)
            .min()
            .unwrap_or(NowhereZero::ProvenConstant)
    }
}

/// Records moves while applying them.
#[derive(Clone, Debug)]
pub struct CertificateBuilder {
    source: PolyMap,
    current: PolyMap,
    moves: Vec<Move>,
}

impl CertificateBuilder {
    pub fn new(source: PolyMap) -> Self {
        CertificateBuilder {
            current: source.clone(),
            source,
            moves: Vec::new(),
        }
    }

    pub fn current(&self) -> &PolyMap {
        &self.current
    }

    pub fn push(&mut self, kind: MoveKind) -> Result<&PolyMap> {
        let before = self.current.nvars();
        let result = apply_kind(&self.current, &kind)?;
        self.moves.push(Move {
            after_dim: kind.after_dim(before),
            before_dim: before,
            kind,
            result: result.clone(),
        });
        self.current = result;
        Ok(&self.current)
    }

    pub fn extend(&mut self, count: usize) -> Result<&PolyMap> {
        self.push(MoveKind::ExtendFreshVars { count })
    }

    pub fn post(&mut self, a: Automorphism) -> Result<&PolyMap> {
        self.push(MoveKind::PostCompose(a))
    }

    pub fn pre(&mut self, b: Automorphism) -> Result<&PolyMap> {
        self.push(MoveKind::PreCompose(b))
    }

    pub fn segre(&mut self) -> Result<&PolyMap> {
        self.push(MoveKind::SegreExtend)
    }

    pub fn finish(self) -> Certificate {
        Certificate {
            source: self.source,
            target: self.current,
            moves: self.moves,
        }
    }
}

/// Checks the move's dimension constraints and applies it.
pub fn apply_move(f: &PolyMap, m: &Move) -> Result<PolyMap> {
    if m.before_dim != f.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "move expects dimension {}, map has {}",
            m.before_dim,
            f.nvars()
        )));
    }
    if m.after_dim != m.kind.after_dim(m.before_dim) {
        return Err(Error::DimensionMismatch(format!(
            "{} from dimension {} cannot reach {}",
            m.kind.name(),
            m.before_dim,
            m.after_dim
        )));
    }
    apply_kind(f, &m.kind)
}

pub fn apply_kind(f: &PolyMap, kind: &MoveKind) -> Result<PolyMap> {
    f.check_square()?;
    let n = f.nvars();
    match kind {
        MoveKind::ExtendFreshVars { count } => Ok(f.extend_fresh(*count)),
        MoveKind::PostCompose(a) => {
            check_aut_dim(a, n)?;
            polynomial_result(a.forward().compose(&RationalMap::polynomial(f))?)
        }
        MoveKind::PreCompose(b) => {
            check_aut_dim(b, n)?;
            polynomial_result(RationalMap::polynomial(f).compose(b.forward())?)
        }
        MoveKind::SegreExtend => segre(f),
    }
}

fn check_aut_dim(a: &Automorphism, n: usize) -> Result<()> {
    if a.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "automorphism of dimension {} applied to a map of dimension {n}",
            a.dim()
        )));
    }
    Ok(())
}

fn polynomial_result(r: RationalMap) -> Result<PolyMap> {
    r.as_polymap().ok_or(Error::NonPolynomialComposition)
}

/// `(F(tx)/t, t)`, requiring `F(0) = 0`.
fn segre(f: &PolyMap) -> Result<PolyMap> {
    if f.components().iter().any(|p| !p.constant_term().is_zero()) {
        return Err(Error::SegreNotAtOrigin);
    }
    let n = f.nvars();
    let t = Poly::var(n + 1, n);
    let images: Vec<Poly> = (0..n).map(|i| &t * &Poly::var(n + 1, i)).collect();
    let mut comps = f
        .components()
        .iter()
        .map(|p| p.substitute(&images)?.exact_divide(&t))
        .collect::<Result<Vec<_>>>()?;
    comps.push(t);
    PolyMap::new(n + 1, comps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertVerdict {
    pub valid: bool,
    pub moves: usize,
    /// Index of the first failing move; `moves` itself flags a target mismatch.
    pub first_failing_move: Option<usize>,
    pub reason: Option<String>,
    pub weakest_status: NowhereZero,
}

fn check_move(c: &Certificate, k: usize) -> Result<(), String> {
    let m = &c.moves[k];
    let before = c.before(k);
    if let Some(a) = m.kind.automorphism() {
        a.verify().map_err(|e| format!("automorphism check failed: {e}"))?;
    }
    let replayed = apply_move(before, m).map_err(|e| e.to_string())?;
    if m.result.nvars() != m.after_dim {
        return Err(format!(
            "recorded result has dimension {}, move declares {}",
            m.result.nvars(),
            m.after_dim
        ));
    }
    if replayed != m.result {
        return Err("replayed map differs from the recorded intermediate".into());
    }
    Ok(())
}

/// Replays every move and checks every automorphism, in parallel.
pub fn verify_certificate(c: &Certificate) -> CertVerdict {
    let failures: Vec<Option<String>> = (0..c.moves.len())
        .into_par_iter()
        .map(|k| check_move(c, k).err())
        .collect();
    let mut first = failures
        .into_iter()
        .enumerate()
        .find_map(|(k, e)| e.map(|e| (k, e)));
    if first.is_none() {
        let last = c.before(c.moves.len());
        if *last != c.target {
            first = Some((c.moves.len(), "target differs from the replayed result".into()));
        }
    }
    CertVerdict {
        valid: first.is_none(),
        moves: c.moves.len(),
        first_failing_move: first.as_ref().map(|(k, _)| *k),
        reason: first.map(|(_, e)| e),
        weakest_status: c.weakest_status(),
    }
}
