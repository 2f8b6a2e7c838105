use crate::certlab::{Automorphism, Certificate, CertificateBuilder, NowhereZero, RationalMap};
use crate::error::Result;
use crate::polymap::sample_nonsingularity;
use crate::{Poly, PolyMap, PolyMatrix};

#[derive(Clone, Debug)]
pub struct Symmetrized {
    /// `G(x, v) = (F(v), x J(F)(v))`, variables `x` first.
    pub map: PolyMap,
    pub certificate: Certificate,
    /// `h = x . F(v)` with `G = grad h`.
    pub potential: Poly,
    /// Denominator status of the shear inverse, which involves `1 / j(F)`.
    pub inverse_status: NowhereZero,
}

/// Transpose of the cofactor matrix.
fn adjugate(m: &PolyMatrix) -> Result<PolyMatrix> {
    let n = m.rows();
    let zero = Poly::zero(m.get(0, 0).nvars());
    if n == 1 {
        return Ok(PolyMatrix::identity(1, zero));
    }
    let mut adj = PolyMatrix::zeros(n, n, zero);
    for r in 0..n {
        for c in 0..n {
            let minor = PolyMatrix::from_fn(n - 1, n - 1, |i, j| {
                let i = if i < r { i } else { i + 1 };
                let j = if j < c { j } else { j + 1 };
                m.get(i, j).clone()
            });
            let d = minor.det_bareiss(None)?;
            adj.set(c, r, if (r + c) % 2 == 0 { d } else { -&d });
        }
    }
    Ok(adj)
}

/// Meng's symmetrization `G = grad_{(x, v)} (x . F(v))`.
///
/// The certificate is `(F(x), v) ∘ (x, v J(F)(x)) ∘ (v, x)`. The inverse of
/// the middle shear is `(x, w J(F)(x)^{-1})`, polynomial exactly when
/// `j(F)` is constant.
pub fn meng_symmetrize(f: &PolyMap, seed: u64) -> Result<Symmetrized> {
    f.check_square()?;
    let n = f.nvars();
    let m = 2 * n;
    let x = |i: usize| Poly::var(m, i);
    let v_of = |p: &Poly| p.remap(m, |i| n + i);

    let fv: Vec<Poly> = f.components().iter().map(v_of).collect();
    let jac = f.jacobian();
    let mut comps = fv.clone();
    for k in 0..n {
        let mut g = Poly::zero(m);
        for i in 0..n {
            g += &(&x(i) * &v_of(jac.get(i, k)));
        }
        comps.push(g);
    }
    let map = PolyMap::new(m, comps)?;
    let mut potential = Poly::zero(m);
    for (i, fi) in fv.iter().enumerate() {
        potential += &(&x(i) * fi);
    }

    // shear (x, v) -> (x, v J(F)(x)) on the extended map's variables
    let lift = |p: &Poly| p.with_nvars(m);
    let mut fwd: Vec<Poly> = (0..n).map(x).collect();
    for k in 0..n {
        let mut s = Poly::zero(m);
        for i in 0..n {
            s += &(&x(n + i) * &lift(jac.get(i, k))?);
        }
        fwd.push(s);
    }
    let j = if n == 0 {
        Poly::one(m)
    } else {
        lift(&jac.det_bareiss(None)?)?
    };
    let adj = if n == 0 { PolyMatrix::zeros(0, 0, Poly::zero(m)) } else { adjugate(jac)? };
    let mut nums: Vec<Poly> = (0..n).map(|i| &x(i) * &j).collect();
    for k in 0..n {
        let mut s = Poly::zero(m);
        for i in 0..n {
            s += &(&x(n + i) * &lift(adj.get(i, k))?);
        }
        nums.push(s);
    }
    let status = if j.is_constant() {
        NowhereZero::ProvenConstant
    } else if sample_nonsingularity(f, None, seed, 64).pass {
        NowhereZero::Sampled
    } else {
        NowhereZero::Assumed
    };
    let shear = Automorphism::new(
        RationalMap::polynomial(&PolyMap::new(m, fwd)?),
        RationalMap::new(m, nums, j, status)?,
    )?;
    let swap: Vec<usize> = (0..m).map(|i| (i + n) % m.max(1)).collect();

    let mut b = CertificateBuilder::new(f.clone());
    b.extend(n)?;
    b.pre(shear.clone())?;
    b.pre(Automorphism::permutation(&swap)?)?;
    let certificate = b.finish();
    debug_assert_eq!(certificate.target, map);
    Ok(Symmetrized {
        map,
        certificate,
        potential,
        inverse_status: shear.status(),
    })
}
