use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cubes::{form_to_poly, CubePool};
use crate::certlab::{Automorphism, Certificate, CertificateBuilder};
use crate::error::{Error, Result};
use crate::polymap::is_yagzhev;
use crate::{Poly, PolyMap, RatMatrix, Rational};

/// Matrices `B`, `C` with `BC = I` and `ker B = ker A`, linking a cubic
/// linear `F = X + (AX)^{*3}` in dimension `n` with the cubic homogeneous
/// `G(x) = B F(C x)` in dimension `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct GzPairing {
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub c: RatMatrix,
    pub f: PolyMap,
    pub g: PolyMap,
}

impl GzPairing {
    pub fn n(&self) -> usize {
        self.f.nvars()
    }

    pub fn m(&self) -> usize {
        self.g.nvars()
    }
}

/// `x -> M x` as a polynomial map.
pub fn linear_map(m: &RatMatrix) -> PolyMap {
    let comps = (0..m.rows()).map(|i| form_to_poly(m.row(i))).collect();
    PolyMap::new(m.cols(), comps).expect("consistent")
}

/// `X + (A X)^{*3}`.
pub fn cubic_linear(a: &RatMatrix) -> PolyMap {
    let n = a.cols();
    let comps = (0..a.rows())
        .map(|i| &Poly::var(n, i) + &form_to_poly(a.row(i)).pow(3))
        .collect();
    PolyMap::new(n, comps).expect("consistent")
}

/// `B F(C x)`.
fn pull_back(b: &RatMatrix, f: &PolyMap, c: &RatMatrix) -> Result<PolyMap> {
    linear_map(b).compose(&f.compose(&linear_map(c))?)
}

/// Cubic homogeneous partner of a cubic linear map.
pub fn pair_down(f: &PolyMap, a: &RatMatrix) -> Result<GzPairing> {
    f.check_square()?;
    if a.rows() != f.nvars() || a.cols() != f.nvars() {
        return Err(Error::DimensionMismatch("A must be n x n for an n-dimensional map".into()));
    }
    if cubic_linear(a) != *f {
        return Err(Error::Precondition("F is not X + (AX)^{*3} for the given A".into()));
    }
    let (r, pivots) = a.rref();
    let m = pivots.len();
    if m == 0 {
        return Err(Error::Precondition("A has rank 0; a partner needs rank at least 1".into()));
    }
    let n = a.cols();
    let b = RatMatrix::from_fn(m, n, |i, j| r.get(i, j).clone());
    let c = RatMatrix::from_fn(n, m, |i, j| if pivots[j] == i { Rational::one() } else { Rational::zero() });
    let g = pull_back(&b, f, &c)?;
    Ok(GzPairing {
        a: a.clone(),
        b,
        c,
        f: f.clone(),
        g,
    })
}

/// Cubic linear partner of a cubic homogeneous map `G = X + H`.
///
/// Each `H_i` is written as `sum_j P_ij l_j^3` over a shared pool of forms,
/// padded with coordinate forms until the stacked forms `Q` have rank `m`.
/// Then `n = m + r`, `A = [[0, 0], [Q, QP]]`, `B = [I | P]`, `C = [I; 0]`.
pub fn pair_up(g: &PolyMap) -> Result<GzPairing> {
    let shape = is_yagzhev(g);
    if !shape.holds {
        return Err(Error::Precondition(format!(
            "pair_up needs a cubic homogeneous map; failing at {:?}",
            shape.witness
        )));
    }
    let m = g.nvars();
    let h = g.nonlinear_remainder()?;
    let mut pool = CubePool::default();
    let mut coeffs = Vec::with_capacity(m);
    for hi in &h {
        coeffs.push(pool.decompose(hi)?);
    }
    let q_of = |pool: &CubePool| RatMatrix::from_fn(pool.forms.len(), m, |j, k| pool.forms[j][k].clone());
    let mut rank = q_of(&pool).rank();
    for k in 0..m {
        if rank == m {
            break;
        }
        let mut e = vec![Rational::zero(); m];
        e[k] = Rational::one();
        if pool.contains(&e) {
            continue;
        }
        let row = RatMatrix::from_fn(1, m, |_, j| e[j].clone());
        let grown = q_of(&pool).vstack(&row)?.rank();
        if grown > rank {
            pool.insert(&e);
            rank = grown;
        }
    }
    let r = pool.forms.len();
    let n = m + r;
    let q = q_of(&pool);
    let p = RatMatrix::from_fn(m, r, |i, j| coeffs[i].get(&j).cloned().unwrap_or_else(Rational::zero));
    let qp = q.mul(&p)?;
    let a = RatMatrix::from_fn(n, n, |i, j| {
        if i < m {
            Rational::zero()
        } else if j < m {
            q.get(i - m, j).clone()
        } else {
            qp.get(i - m, j - m).clone()
        }
    });
    let b = RatMatrix::from_fn(m, n, |i, j| {
        if j < m {
            Rational::from_integer(((i == j) as i64).into())
        } else {
            p.get(i, j - m).clone()
        }
    });
    let c = RatMatrix::from_fn(n, m, |i, j| Rational::from_integer(((i == j) as i64).into()));
    let pairing = GzPairing {
        f: cubic_linear(&a),
        a,
        b,
        c,
        g: g.clone(),
    };
    let v = verify_pairing(&pairing);
    if !v.valid {
        return Err(Error::Precondition(format!("constructed pairing fails: {:?}", v.reason)));
    }
    Ok(pairing)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingVerdict {
    pub valid: bool,
    /// 1: `BC = I`; 2: `ker B = ker A`; 3: `G = B F(C x)`; 4: `F = X + (AX)^{*3}`.
    pub failed_axiom: Option<u8>,
    pub reason: Option<String>,
}

pub fn verify_pairing(p: &GzPairing) -> PairingVerdict {
    let fail = |k: u8, why: &str| PairingVerdict {
        valid: false,
        failed_axiom: Some(k),
        reason: Some(why.into()),
    };
    let (n, m) = (p.f.nvars(), p.g.nvars());
    if p.a.rows() != n || p.a.cols() != n || p.b.rows() != m || p.b.cols() != n || p.c.rows() != n || p.c.cols() != m {
        return fail(1, "matrix shapes do not match the map dimensions");
    }
    match p.b.mul(&p.c) {
        Ok(bc) if bc == RatMatrix::scalar_identity(m) => {}
        _ => return fail(1, "BC is not the identity"),
    }
    let (ra, rb) = (p.a.rank(), p.b.rank());
    let stacked = p.a.vstack(&p.b).expect("same column count").rank();
    if ra != rb || ra != stacked {
        return fail(2, "kernels of A and B differ");
    }
    if ra != m {
        return fail(2, "rank of A differs from the partner dimension");
    }
    match pull_back(&p.b, &p.f, &p.c) {
        Ok(g) if g == p.g => {}
        _ => return fail(3, "G differs from B F(C x)"),
    }
    if cubic_linear(&p.a) != p.f {
        return fail(4, "F is not X + (AX)^{*3}");
    }
    PairingVerdict {
        valid: true,
        failed_axiom: None,
        reason: None,
    }
}

/// Stable equivalence from `G` to `F`.
///
/// With `D` a basis of `ker B`, `C' = [C | D]` and `B' = C'^{-1}`:
/// `B' F C' (x, z) = (G(x), z + H'(x))` where `H'(x) = E (ACx)^{*3}` and
/// `E` is the lower block of `B'`. The moves extend `G` by `z`, shear,
/// post-compose with `C'` and pre-compose with `B'`.
pub fn pairing_to_equivalence(p: &GzPairing) -> Result<Certificate> {
    let v = verify_pairing(p);
    if !v.valid {
        return Err(Error::Precondition(format!("invalid pairing: {:?}", v.reason)));
    }
    let (n, m) = (p.n(), p.m());
    let d = p.b.kernel();
    let c_full = p.c.hstack(&d)?;
    let b_full = c_full.inverse()?;
    let e = RatMatrix::from_fn(n - m, n, |i, j| b_full.get(m + i, j).clone());

    let mut builder = CertificateBuilder::new(p.g.clone());
    if n > m {
        builder.extend(n - m)?;
    }
    // H'(x) = E (A C x)^{*3}
    let ac = p.a.mul(&p.c)?;
    let cubes: Vec<Poly> = (0..n)
        .map(|i| form_to_poly(ac.row(i)).pow(3).with_nvars(n))
        .collect::<Result<_>>()?;
    let h: Vec<Poly> = (0..n - m)
        .map(|i| {
            let mut s = Poly::zero(n);
            for (j, cube) in cubes.iter().enumerate() {
                if !e.get(i, j).is_zero() {
                    s += &cube.scale(e.get(i, j));
                }
            }
            s
        })
        .collect();
    if h.iter().any(|p| !p.is_zero()) {
        let mut fwd: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        let mut inv = fwd.clone();
        for (i, hi) in h.iter().enumerate() {
            fwd[m + i] = &fwd[m + i] + hi;
            inv[m + i] = &inv[m + i] - hi;
        }
        builder.pre(Automorphism::polynomial(PolyMap::new(n, fwd)?, PolyMap::new(n, inv)?)?)?;
    }
    builder.post(Automorphism::linear(&c_full)?)?;
    builder.pre(Automorphism::linear(&b_full)?)?;
    let cert = builder.finish();
    if cert.target != p.f {
        return Err(Error::Precondition("equivalence does not reach F".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certlab::verify_certificate;
    use crate::scalar::int;

    fn dim2() -> (RatMatrix, PolyMap) {
        let a = RatMatrix::from_rows(vec![vec![int(0), int(0)], vec![int(1), int(1)]]).unwrap();
        (a.clone(), cubic_linear(&a))
    }

    #[test]
    fn pair_down_example() {
        let (a, f) = dim2();
        let (u, v) = (Poly::var(2, 0), Poly::var(2, 1));
        assert_eq!(f.components(), &[u.clone(), &v + &(&u + &v).pow(3)]);
        let p = pair_down(&f, &a).unwrap();
        assert_eq!(p.b, RatMatrix::from_rows(vec![vec![int(1), int(1)]]).unwrap());
        assert_eq!(p.c, RatMatrix::from_rows(vec![vec![int(1)], vec![int(0)]]).unwrap());
        let x = Poly::var(1, 0);
        assert_eq!(p.g.components(), &[&x + &x.pow(3)]);
        assert!(pair_down(&PolyMap::identity(2), &RatMatrix::scalar_zeros(2, 2)).is_err());
    }

    #[test]
    fn pair_up_round_trip() {
        let x = Poly::var(1, 0);
        let g = PolyMap::square(vec![&x + &x.pow(3)]).unwrap();
        let p = pair_up(&g).unwrap();
        let (a, f) = dim2();
        assert_eq!(p.a, a);
        assert_eq!(p.f, f);
        assert_eq!(pair_down(&p.f, &p.a).unwrap().g, g);
        let cert = pairing_to_equivalence(&p).unwrap();
        assert!(verify_certificate(&cert).valid);
    }

    #[test]
    fn negative_controls() {
        let x = Poly::var(1, 0);
        let p = pair_up(&PolyMap::square(vec![&x + &x.pow(3)]).unwrap()).unwrap();
        let mut k = p.clone();
        k.b = RatMatrix::from_rows(vec![vec![int(1), int(0)]]).unwrap();
        assert_eq!(verify_pairing(&k).failed_axiom, Some(2));
        let mut t = p;
        t.c = RatMatrix::from_rows(vec![vec![int(2)], vec![int(0)]]).unwrap();
        assert_eq!(verify_pairing(&t).failed_axiom, Some(1));
    }

    #[test]
    fn identity_partner() {
        let p = pair_up(&PolyMap::identity(2)).unwrap();
        assert_eq!(p.n(), 4);
        assert!(verify_pairing(&p).valid);
        assert!(verify_certificate(&pairing_to_equivalence(&p).unwrap()).valid);
    }
}
