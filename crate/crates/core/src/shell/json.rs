//! JSON forms of certificates and pairings. Maps travel as strings in the
//! line format.

use serde::{Deserialize, Serialize};

use super::document::{default_var_names, MapDocument};
use super::text::{parse_map, parse_poly, print_map, print_poly};
use crate::certlab::{apply_kind, Automorphism, Certificate, Move, MoveKind, NowhereZero, RationalMap, Verification};
use crate::error::{Error, Result};
use crate::gzpair::GzPairing;
use crate::{PolyMap, RatMatrix, Rational};

pub const CERTIFICATE_FORMAT: &str = "keller-certificate/1";
pub const PAIRING_FORMAT: &str = "keller-pairing/1";

pub fn map_to_text(f: &PolyMap) -> String {
    print_map(&MapDocument::from_map(f))
}

pub fn map_from_text(text: &str) -> Result<PolyMap> {
    parse_map(text)?.to_map()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalMapJson {
    /// Numerators as a map document.
    pub numerators: String,
    pub denominator: String,
    pub status: NowhereZero,
}

impl RationalMapJson {
    pub fn from_map(r: &RationalMap) -> Self {
        let num = PolyMap::new(r.nvars(), r.numerators().to_vec()).expect("numerators share variables");
        RationalMapJson {
            numerators: map_to_text(&num),
            denominator: print_poly(r.denominator(), &default_var_names(r.nvars())),
            status: r.status(),
        }
    }

    pub fn to_map(&self) -> Result<RationalMap> {
        let num = map_from_text(&self.numerators)?;
        let den = parse_poly(&self.denominator, &default_var_names(num.nvars()))?;
        RationalMap::new(num.nvars(), num.into_components(), den, self.status)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoveJson {
    /// `extend`, `pre`, `post` or `segre`.
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count: Option<usize>,
    pub before_dim: usize,
    pub after_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub forward: Option<RationalMapJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inverse: Option<RationalMapJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification: Option<Verification>,
}

/// Certificates store the source, the moves and the claimed target;
/// intermediate maps are recomputed on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub format: String,
    pub source: String,
    pub target: String,
    pub moves: Vec<MoveJson>,
}

impl CertificateJson {
    pub fn from_certificate(c: &Certificate) -> Self {
        let moves = c
            .moves
            .iter()
            .map(|m| {
                let (kind, count, aut) = match &m.kind {
                    MoveKind::ExtendFreshVars { count } => ("extend", Some(*count), None),
                    MoveKind::PreCompose(a) => ("pre", None, Some(a)),
                    MoveKind::PostCompose(a) => ("post", None, Some(a)),
                    MoveKind::SegreExtend => ("segre", None, None),
                };
                MoveJson {
                    kind: kind.into(),
                    count,
                    before_dim: m.before_dim,
                    after_dim: m.after_dim,
                    forward: aut.map(|a| RationalMapJson::from_map(a.forward())),
                    inverse: aut.map(|a| RationalMapJson::from_map(a.inverse())),
                    verification: aut.map(Automorphism::verification),
                }
            })
            .collect();
        CertificateJson {
            format: CERTIFICATE_FORMAT.into(),
            source: map_to_text(&c.source),
            target: map_to_text(&c.target),
            moves,
        }
    }

    /// Rebuilds the certificate, replaying moves to recover intermediate maps.
    /// Automorphisms are loaded unchecked; `verify_certificate` checks them.
    pub fn to_certificate(&self) -> Result<Certificate> {
        if self.format != CERTIFICATE_FORMAT {
            return Err(Error::Format(format!("unsupported certificate format `{}`", self.format)));
        }
        let source = map_from_text(&self.source)?;
        let target = map_from_text(&self.target)?;
        let mut current = source.clone();
        let mut moves = Vec::with_capacity(self.moves.len());
        for (i, mj) in self.moves.iter().enumerate() {
            let aut = || -> Result<Automorphism> {
                let (Some(fw), Some(inv), Some(ver)) = (&mj.forward, &mj.inverse, mj.verification) else {
                    return Err(Error::Format(format!("move {i}: automorphism missing")));
                };
                Ok(Automorphism::from_parts_unchecked(fw.to_map()?, inv.to_map()?, ver))
            };
            let kind = match mj.kind.as_str() {
                "extend" => MoveKind::ExtendFreshVars {
                    count: mj.count.ok_or_else(|| Error::Format(format!("move {i}: count missing")))?,
                },
                "pre" => MoveKind::PreCompose(aut()?),
                "post" => MoveKind::PostCompose(aut()?),
                "segre" => MoveKind::SegreExtend,
                other => return Err(Error::Format(format!("move {i}: unknown kind `{other}`"))),
            };
            let result = apply_kind(&current, &kind)?;
            if result.nvars() != mj.after_dim || current.nvars() != mj.before_dim {
                return Err(Error::Format(format!("move {i}: recorded dimensions disagree with replay")));
            }
            moves.push(Move {
                kind,
                before_dim: current.nvars(),
                after_dim: result.nvars(),
                result: result.clone(),
            });
            current = result;
        }
        Ok(Certificate { source, target, moves })
    }
}

fn matrix_json(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect()
}

pub fn matrix_from_json(rows: &[Vec<String>]) -> Result<RatMatrix> {
    let parsed = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| s.trim().parse::<Rational>().map_err(|_| Error::Format(format!("bad matrix entry `{s}`"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(parsed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingJson {
    pub format: String,
    pub n: usize,
    pub m: usize,
    pub a: Vec<Vec<String>>,
    pub b: Vec<Vec<String>>,
    pub c: Vec<Vec<String>>,
    pub f: String,
    pub g: String,
}

impl PairingJson {
    pub fn from_pairing(p: &GzPairing) -> Self {
        PairingJson {
            format: PAIRING_FORMAT.into(),
            n: p.n(),
            m: p.m(),
            a: matrix_json(&p.a),
            b: matrix_json(&p.b),
            c: matrix_json(&p.c),
            f: map_to_text(&p.f),
            g: map_to_text(&p.g),
        }
    }

    pub fn to_pairing(&self) -> Result<GzPairing> {
        Ok(GzPairing {
            a: matrix_from_json(&self.a)?,
            b: matrix_from_json(&self.b)?,
            c: matrix_from_json(&self.c)?,
            f: map_from_text(&self.f)?,
            g: map_from_text(&self.g)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certlab::verify_certificate;
    use crate::reducer::meng_symmetrize;
    use crate::Poly;

    #[test]
    fn certificate_round_trip() {
        let w = Poly::var(1, 0);
        let f = PolyMap::square(vec![&w + &w.pow(2)]).unwrap();
        // rational inverse with status `Assumed` survives the trip
        let s = meng_symmetrize(&f, 1).unwrap();
        let j = CertificateJson::from_certificate(&s.certificate);
        let text = serde_json::to_string(&j).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        let c = back.to_certificate().unwrap();
        assert_eq!(c, s.certificate);
        assert!(verify_certificate(&c).valid);
    }
}
