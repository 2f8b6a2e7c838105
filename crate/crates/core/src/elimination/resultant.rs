use super::unipoly::{to_univariate_over, UniPoly};
use crate::error::{Error, Result};
use crate::polycore::SparsePoly;
use crate::scalar::{Ring, Scalar};

/// Output of a subresultant remainder sequence.
#[derive(Clone, Debug)]
pub struct Prs<R: Ring> {
    pub resultant: R,
    /// The remainders produced after the two inputs, in order. Each is a
    /// polynomial combination of the inputs.
    pub members: Vec<UniPoly<R>>,
}

/// Resultant of `a` and `b` by the subresultant PRS.
///
/// Coefficients only ever need exact division, so this runs over any
/// integral domain: rationals, multivariate polynomials, nested univariates.
pub fn subresultant_prs<R: Ring>(a: &UniPoly<R>, b: &UniPoly<R>) -> Prs<R> {
    let zero = a.zero_coeff().zero_like();
    let one = zero.one_like();
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Prs {
            resultant: zero,
            members: Vec::new(),
        };
    };
    let (mut a, mut b, mut s) = if da < db {
        let s = if (da * db) % 2 == 1 { one.rneg() } else { one.clone() };
        (b.clone(), a.clone(), s)
    } else {
        (a.clone(), b.clone(), one.clone())
    };
    let mut members = Vec::new();
    if b.degree() == Some(0) {
        let dega = a.degree().expect("nonzero") as u32;
        let res = b.lc().expect("nonzero").rpow(dega);
        return Prs {
            resultant: s.rmul(&res),
            members,
        };
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let dega = a.degree().expect("nonzero");
        let degb = b.degree().expect("nonzero");
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            s = s.rneg();
        }
        let r = a.prem(&b).expect("nonzero divisor");
        a = b;
        let divisor = g.rmul(&h.rpow(delta as u32));
        b = UniPoly::new(
            r.coeffs()
                .iter()
                .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
                .collect(),
            zero.clone(),
        );
        g = a.lc().expect("nonzero").clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .rpow(delta as u32)
                .div_exact(&h.rpow(delta as u32 - 1))
                .expect("subresultant division is exact"),
        };
        members.push(b.clone());
        match b.degree() {
            None => {
                return Prs {
                    resultant: zero,
                    members,
                }
            }
            Some(0) => {
                let dega = a.degree().expect("nonzero") as u32;
                let t = b.lc().expect("nonzero").rpow(dega);
                let hh = if dega == 0 {
                    h.clone()
                } else {
                    t.div_exact(&h.rpow(dega - 1)).expect("subresultant division is exact")
                };
                return Prs {
                    resultant: s.rmul(&hh),
                    members,
                };
            }
            Some(_) => {}
        }
    }
}

/// `Res_{x_var}(p, q)` as a polynomial in the remaining variables (same
/// variable count, `x_var` absent).
pub fn resultant<S: Scalar>(p: &SparsePoly<S>, q: &SparsePoly<S>, var: usize) -> Result<SparsePoly<S>> {
    if p.nvars() != q.nvars() {
        return Err(Error::VarcountMismatch {
            expected: p.nvars(),
            got: q.nvars(),
        });
    }
    if var >= p.nvars() {
        return Err(Error::IndexOutOfRange {
            index: var,
            nvars: p.nvars(),
        });
    }
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a = to_univariate_over(p, var);
    let b = to_univariate_over(q, var);
    Ok(subresultant_prs(&a, &b).resultant)
}
