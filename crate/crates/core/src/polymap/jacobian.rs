use serde::{Deserialize, Serialize};

use super::PolyMap;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::modp::{mul_mod, pow_mod, rational_mod, SparseModMatrix};
use crate::linalg::Matrix;
use crate::polycore::SparsePoly;
use crate::scalar::Scalar;
use crate::{Poly, PolyMatrix, RatMatrix, Rational};

/// An exact answer, or the reason none was computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Computed<T> {
    Exact(T),
    Unknown { reason: String },
}

impl<T> Computed<T> {
    pub fn exact(&self) -> Option<&T> {
        match self {
            Computed::Exact(t) => Some(t),
            Computed::Unknown { .. } => None,
        }
    }
}

pub fn jacobian<S: Scalar>(f: &PolyMap<S>) -> Matrix<SparsePoly<S>> {
    f.jacobian().clone()
}

/// `j(F)` by Bareiss elimination when the budget allows it.
pub fn jacobian_det<S: Scalar>(f: &PolyMap<S>, budget: &Budget) -> Result<Computed<SparsePoly<S>>> {
    f.check_square()?;
    let n = f.nvars();
    if n == 0 {
        return Ok(Computed::Exact(SparsePoly::one(0)));
    }
    match f.jacobian().det_bareiss(budget.det_cap(n)) {
        Ok(d) => Ok(Computed::Exact(d)),
        Err(Error::BudgetExceeded(reason)) => Ok(Computed::Unknown { reason }),
        Err(e) => Err(e),
    }
}

/// `J(F)(0)`.
pub fn linear_part(f: &PolyMap) -> Result<RatMatrix> {
    f.check_square()?;
    let zero = vec![Rational::from_integer(0.into()); f.nvars()];
    Ok(jacobian_at(f, &zero))
}

/// The Jacobian matrix evaluated at a rational point.
pub fn jacobian_at(f: &PolyMap, point: &[Rational]) -> RatMatrix {
    let mut m = RatMatrix::scalar_zeros(f.len(), f.nvars());
    for (i, p) in f.components().iter().enumerate() {
        for (mono, c) in p.terms() {
            for (k, e) in mono.factors() {
                let mut v = c.clone() * Rational::from_integer(e.into());
                for (w, ew) in mono.factors() {
                    let ew = if w == k { ew - 1 } else { ew };
                    if ew > 0 {
                        v *= num_traits::pow(point[w].clone(), ew as usize);
                    }
                }
                let cur = m.get(i, k).clone();
                m.set(i, k, cur + v);
            }
        }
    }
    m
}

/// The Jacobian matrix at a point, reduced mod `p`; `None` if some
/// coefficient or coordinate has a denominator divisible by `p`.
pub fn jacobian_mod_p(f: &PolyMap, point: &[u64], p: u64) -> Option<SparseModMatrix> {
    let mut m = SparseModMatrix::new(f.nvars(), p);
    for (i, comp) in f.components().iter().enumerate() {
        for (mono, c) in comp.terms() {
            let c = rational_mod(c, p)?;
            for (k, e) in mono.factors() {
                let mut v = mul_mod(c, e as u64 % p, p);
                for (w, ew) in mono.factors() {
                    let ew = if w == k { ew - 1 } else { ew };
                    if ew > 0 {
                        v = mul_mod(v, pow_mod(point[w], ew as u64, p), p);
                    }
                }
                m.add_entry(i, k, v);
            }
        }
    }
    Some(m)
}

/// Exact `j(F)(point)` by dense elimination of the evaluated Jacobian.
pub fn det_at(f: &PolyMap, point: &[Rational]) -> Result<Rational> {
    f.check_square()?;
    if f.nvars() == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    jacobian_at(f, point).det_gauss()
}

/// `j(F)(point) mod p` by sparse elimination.
pub fn det_mod_p_at(f: &PolyMap, point: &[Rational], p: u64) -> Result<Option<u64>> {
    f.check_square()?;
    let pt: Option<Vec<u64>> = point.iter().map(|r| rational_mod(r, p)).collect();
    Ok(pt.and_then(|pt| jacobian_mod_p(f, &pt, p)).map(|m| m.det()))
}

/// Applies `J(F)` to a column of polynomial matrices; used for chain-rule checks.
pub fn jacobian_composed(f: &PolyMap, inner: &PolyMap) -> Result<PolyMatrix> {
    let jf = f.jacobian();
    let comps = inner.components();
    let entries: Vec<Poly> = jf
        .entries()
        .iter()
        .map(|p| p.substitute(comps))
        .collect::<Result<_>>()?;
    let rows = entries.chunks(jf.cols()).map(<[Poly]>::to_vec).collect();
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn xy() -> (Poly, Poly) {
        (Poly::var(2, 0), Poly::var(2, 1))
    }

    #[test]
    fn triangular_example() {
        let (x, y) = xy();
        let f = PolyMap::square(vec![&x + &y.pow(3), y.clone()]).unwrap();
        let j = jacobian(&f);
        assert_eq!(j.get(0, 1), &y.pow(2).scale(&int(3)));
        assert!(j.get(1, 0).is_zero());
        let d = jacobian_det(&f, &Budget::default()).unwrap();
        assert_eq!(d, Computed::Exact(Poly::one(2)));
        assert_eq!(linear_part(&f).unwrap(), RatMatrix::scalar_identity(2));
    }

    #[test]
    fn diag_linear_part() {
        let (x, y) = xy();
        let f = PolyMap::square(vec![x.scale(&int(2)), y]).unwrap();
        let lp = linear_part(&f).unwrap();
        assert_eq!(lp.get(0, 0), &int(2));
        assert_eq!(lp.get(1, 1), &int(1));
    }

    #[test]
    fn chain_rule_on_quadratics() {
        let (x, y) = xy();
        let f = PolyMap::square(vec![&x + &(&x * &y), &y - &x.pow(2)]).unwrap();
        let g = PolyMap::square(vec![&x + &y.pow(2), &y + &x.scale(&int(3))]).unwrap();
        let lhs = f.compose(&g).unwrap().jacobian().clone();
        let rhs = jacobian_composed(&f, &g).unwrap().mul(g.jacobian()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn numeric_paths_agree() {
        let (x, y) = xy();
        let f = PolyMap::square(vec![&x.pow(3) + &y, &(&x * &y) - &y.pow(2)]).unwrap();
        let j = jacobian_det(&f, &Budget::default()).unwrap();
        let pt = vec![int(2), int(-3)];
        let exact = j.exact().unwrap().eval(&pt).unwrap();
        assert_eq!(det_at(&f, &pt).unwrap(), exact);
        let p = crate::linalg::modp::P61;
        assert_eq!(det_mod_p_at(&f, &pt, p).unwrap(), rational_mod(&exact, p));
    }
}
