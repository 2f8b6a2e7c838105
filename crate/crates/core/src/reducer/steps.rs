use num_traits::Zero;

use crate::budget::Budget;
use crate::certlab::{Automorphism, Certificate, CertificateBuilder};
use crate::error::{Error, Result};
use crate::linalg::modp::P61;
use crate::polymap::{det_at, det_mod_p_at, is_yagzhev, jacobian_at, jacobian_det, Computed};
use crate::{rng, Poly, PolyMap, Rational};

/// Dimension up to which base points are accepted by an exact rational
/// determinant; above it a nonzero residue modulo a prime is used, which
/// also proves the rational value nonzero.
const EXACT_BASE_POINT_DIM: usize = 60;
const BASE_POINT_TRIES: u64 = 64;

#[derive(Clone, Debug)]
pub struct Normalized {
    pub map: PolyMap,
    pub certificate: Certificate,
    pub base_point: Vec<Rational>,
}

fn nonzero_det_at(f: &PolyMap, pt: &[Rational]) -> Result<bool> {
    if f.nvars() <= EXACT_BASE_POINT_DIM {
        return Ok(!det_at(f, pt)?.is_zero());
    }
    Ok(matches!(det_mod_p_at(f, pt, P61)?, Some(v) if v != 0))
}

/// Seeded integer points in boxes of growing half-width, the origin first.
fn find_base_point(f: &PolyMap, seed: u64) -> Result<Vec<Rational>> {
    let n = f.nvars();
    let origin = vec![Rational::zero(); n];
    if nonzero_det_at(f, &origin)? {
        return Ok(origin);
    }
    for i in 0..BASE_POINT_TRIES {
        let half = 1i64 << (i / 8).min(20);
        let mut r = rng::stream(seed ^ 0x6261_7365, i);
        let pt = rng::int_point(&mut r, n, half);
        if nonzero_det_at(f, &pt)? {
            return Ok(pt);
        }
    }
    Err(Error::Degenerate)
}

/// Moves a point with `j(F)(x0) != 0` to the origin and makes the linear
/// part the identity: `G(x) = J(F)(x0)^{-1} (F(x + x0) - F(x0))`.
pub fn normalize(f: &PolyMap, seed: u64) -> Result<Normalized> {
    f.check_square()?;
    let n = f.nvars();
    let x0 = find_base_point(f, seed)?;
    let mut b = CertificateBuilder::new(f.clone());
    if x0.iter().any(|c| !c.is_zero()) {
        b.pre(Automorphism::translation(&x0))?;
    }
    let fx0 = f.eval(&x0)?;
    if fx0.iter().any(|c| !c.is_zero()) {
        let minus: Vec<Rational> = fx0.iter().map(|c| -c.clone()).collect();
        b.post(Automorphism::translation(&minus))?;
    }
    let j0 = jacobian_at(f, &x0);
    if j0 != crate::RatMatrix::scalar_identity(n) {
        b.post(Automorphism::linear(&j0.inverse()?)?)?;
    }
    let certificate = b.finish();
    Ok(Normalized {
        map: certificate.target.clone(),
        certificate,
        base_point: x0,
    })
}

/// Splits `F = X + Q + C` into its quadratic and cubic parts, or explains
/// why `F` does not have that shape.
pub fn normalized_parts(f: &PolyMap) -> Result<(Vec<Poly>, Vec<Poly>)> {
    f.check_square()?;
    let h = f.nonlinear_remainder()?;
    let mut q = Vec::with_capacity(h.len());
    let mut c = Vec::with_capacity(h.len());
    for (i, hi) in h.iter().enumerate() {
        if let Some((m, _)) = hi.terms().find(|(m, _)| !(2..=3).contains(&m.degree())) {
            return Err(Error::Precondition(format!(
                "component {i} has a term of degree {} outside the quadratic and cubic parts",
                m.degree()
            )));
        }
        q.push(hi.homogeneous_part(2));
        c.push(hi.homogeneous_part(3));
    }
    Ok((q, c))
}

#[derive(Clone, Debug)]
pub struct SegreResult {
    pub map: PolyMap,
    pub certificate: Certificate,
    /// `j(G)(x, t) = j(F)(t x)`; `None` when a determinant exceeded the budget.
    pub identity_holds: Option<bool>,
}

/// Checks `j(G)(x, t) = j(F)(t x)` exactly when both determinants fit the budget.
pub fn segre_identity(f: &PolyMap, g: &PolyMap, budget: &Budget) -> Result<Option<bool>> {
    let (Computed::Exact(jf), Computed::Exact(jg)) = (jacobian_det(f, budget)?, jacobian_det(g, budget)?) else {
        return Ok(None);
    };
    let n = f.nvars();
    let t = Poly::var(n + 1, n);
    let images: Vec<Poly> = (0..n).map(|i| &t * &Poly::var(n + 1, i)).collect();
    Ok(Some(jf.substitute(&images)? == jg))
}

/// `F = X + Q + C` to `(X + tQ + t^2 C, t)` by one Segre extension.
pub fn segre_step(f: &PolyMap, budget: &Budget) -> Result<SegreResult> {
    normalized_parts(f)?;
    segre_extend(f, budget)
}

/// `(F(tx)/t, t)` for any square `F` with `F(0) = 0`.
pub fn segre_extend(f: &PolyMap, budget: &Budget) -> Result<SegreResult> {
    let mut b = CertificateBuilder::new(f.clone());
    b.segre()?;
    let certificate = b.finish();
    let identity_holds = if f.nvars() <= budget.exact_det_dim {
        segre_identity(f, &certificate.target, budget)?
    } else {
        None
    };
    Ok(SegreResult {
        map: certificate.target.clone(),
        certificate,
        identity_holds,
    })
}

/// Reads `(X + tQ + t^2 C, t)` with `t` the last variable.
fn segre_parts(f: &PolyMap) -> Result<(Vec<Poly>, Vec<Poly>)> {
    f.check_square()?;
    let m = f.nvars();
    if m == 0 {
        return Err(Error::Precondition("empty map".into()));
    }
    let n = m - 1;
    if *f.component(n) != Poly::var(m, n) {
        return Err(Error::Precondition("last component is not the Segre variable".into()));
    }
    let mut q = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let rest = f.component(i) - &Poly::var(m, i);
        let (mut qi, mut ci) = (Poly::zero(n), Poly::zero(n));
        for (mono, coef) in rest.terms() {
            let (et, mx) = mono.split_off(n);
            match (et, mx.degree()) {
                (1, 2) => qi.add_term(mx, coef.clone()),
                (2, 3) => ci.add_term(mx, coef.clone()),
                _ => {
                    return Err(Error::Precondition(format!(
                        "component {i} is not of the form x + tQ + t^2 C"
                    )))
                }
            }
        }
        q.push(qi);
        c.push(ci);
    }
    Ok((q, c))
}

/// `(X + tQ + t^2 C, t)` to `(X - t^2 Y + tQ, Y + C, t)` in variables `(X, Y, t)`.
pub fn eliminate_quadratic(f: &PolyMap) -> Result<(PolyMap, Certificate)> {
    let (_, c) = segre_parts(f)?;
    let n = c.len();
    let m = 2 * n + 1;
    let var = |i: usize| Poly::var(m, i);
    let cubic: Vec<Poly> = c.iter().map(|p| p.with_nvars(m)).collect::<Result<_>>()?;

    let mut b = CertificateBuilder::new(f.clone());
    b.extend(n)?;
    // domain (X, Y, t) -> (X, t, Y + C(X))
    let mut fwd: Vec<Poly> = (0..n).map(var).collect();
    fwd.push(var(2 * n));
    fwd.extend((0..n).map(|k| &var(n + k) + &cubic[k]));
    // (X, t, Y) -> (X, Y - C(X), t)
    let mut inv: Vec<Poly> = (0..n).map(var).collect();
    inv.extend((0..n).map(|k| &var(n + 1 + k) - &cubic[k]));
    inv.push(var(n));
    b.pre(Automorphism::polynomial(PolyMap::new(m, fwd)?, PolyMap::new(m, inv)?)?)?;

    // codomain (W, s, V) -> (W - s^2 V, V, s)
    let s2 = var(n).pow(2);
    let mut fwd: Vec<Poly> = (0..n).map(|i| &var(i) - &(&s2 * &var(n + 1 + i))).collect();
    fwd.extend((0..n).map(|k| var(n + 1 + k)));
    fwd.push(var(n));
    let u2 = var(2 * n).pow(2);
    let mut inv: Vec<Poly> = (0..n).map(|i| &var(i) + &(&u2 * &var(n + i))).collect();
    inv.push(var(2 * n));
    inv.extend((0..n).map(|k| var(n + k)));
    b.post(Automorphism::polynomial(PolyMap::new(m, fwd)?, PolyMap::new(m, inv)?)?)?;

    let certificate = b.finish();
    let check = is_yagzhev(&certificate.target);
    if !check.holds {
        return Err(Error::Precondition(format!(
            "quadratic elimination did not produce a cubic homogeneous map ({:?})",
            check.witness
        )));
    }
    Ok((certificate.target.clone(), certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certlab::verify_certificate;
    use crate::scalar::{int, rat};

    #[test]
    fn normalize_examples() {
        let x = Poly::var(1, 0);
        let f = PolyMap::square(vec![&(&x.pow(2) + &x.scale(&int(2))) + &Poly::one(1)]).unwrap();
        let r = normalize(&f, 1).unwrap();
        assert_eq!(r.base_point, vec![int(0)]);
        assert_eq!(r.map.component(0), &(&x + &x.pow(2).scale(&rat(1, 2))));
        assert!(verify_certificate(&r.certificate).valid);

        let (a, b) = (Poly::var(2, 0), Poly::var(2, 1));
        let g = PolyMap::square(vec![&a.pow(2) + &b, &b.pow(2) + &a]).unwrap();
        // j = 2a + b vanishes at the origin
        let h = PolyMap::square(vec![&a.pow(2) + &(&a * &b), b.clone()]).unwrap();
        let r = normalize(&h, 3).unwrap();
        assert_ne!(r.base_point, vec![int(0), int(0)]);
        let jac = jacobian_at(&r.map, &[int(0), int(0)]);
        assert_eq!(jac, crate::RatMatrix::scalar_identity(2));
        assert!(verify_certificate(&r.certificate).valid);
        assert_eq!(normalize(&g, 0).unwrap().base_point, vec![int(0), int(0)]);
    }

    #[test]
    fn segre_examples() {
        let b = Budget::default();
        let x = Poly::var(1, 0);
        let r = segre_step(&PolyMap::square(vec![&x + &x.pow(2)]).unwrap(), &b).unwrap();
        let (x2, t2) = (Poly::var(2, 0), Poly::var(2, 1));
        assert_eq!(r.map.components(), &[&x2 + &(&t2 * &x2.pow(2)), t2.clone()]);
        assert_eq!(r.identity_holds, Some(true));

        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let r = segre_step(&PolyMap::square(vec![&x + &y.pow(3), y]).unwrap(), &b).unwrap();
        let (x3, y3, t3) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
        assert_eq!(r.map.components(), &[&x3 + &(&t3.pow(2) * &y3.pow(3)), y3, t3]);

        let r = segre_step(&PolyMap::identity(2), &b).unwrap();
        assert_eq!(r.map, PolyMap::identity(3));
    }

    #[test]
    fn eliminate_quadratic_example() {
        let (x, t) = (Poly::var(2, 0), Poly::var(2, 1));
        let f = PolyMap::square(vec![&x + &(&t * &x.pow(2)), t]).unwrap();
        let (g, cert) = eliminate_quadratic(&f).unwrap();
        let (x, y, t) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
        let expected = vec![&(&x - &(&t.pow(2) * &y)) + &(&t * &x.pow(2)), y, t];
        assert_eq!(g.components(), expected.as_slice());
        assert!(verify_certificate(&cert).valid);

        let (g, _) = eliminate_quadratic(&PolyMap::identity(3)).unwrap();
        let v = |i| Poly::var(5, i);
        assert_eq!(g.component(0), &(&v(0) - &(&v(4).pow(2) * &v(2))));
        assert_eq!(g.component(2), &v(2));
    }
}
