use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, SparsePoly};
use crate::Rational;

/// Fast exact evaluation of one rational polynomial at many rational points.
///
/// Coefficients are scaled to integers once. At a point `a/b` the polynomial
/// is evaluated in homogenized integer form, so no gcd is taken until the
/// final division.
#[derive(Clone, Debug)]
pub struct IntegerEvaluator {
    nvars: usize,
    denom: BigInt,
    max_deg: Vec<u32>,
    terms: Vec<(Monomial, BigInt)>,
}

impl IntegerEvaluator {
    pub fn new(p: &SparsePoly<Rational>) -> Self {
        let mut denom = BigInt::one();
        for (_, c) in p.terms() {
            denom = denom.lcm(c.denom());
        }
        let mut max_deg = vec![0; p.nvars()];
        let terms = p
            .terms()
            .map(|(m, c)| {
                for (v, e) in m.factors() {
                    max_deg[v] = max_deg[v].max(e);
                }
                (m.clone(), c.numer() * (&denom / c.denom()))
            })
            .collect();
        IntegerEvaluator {
            nvars: p.nvars(),
            denom,
            max_deg,
            terms,
        }
    }

    /// Integer numerator `N` and positive denominator `D` with `p(point) = N / D`.
    pub fn eval_parts(&self, point: &[Rational]) -> (BigInt, BigInt) {
        assert_eq!(point.len(), self.nvars, "point length");
        let pow_table = |base: &BigInt, d: u32| {
            let mut t = Vec::with_capacity(d as usize + 1);
            t.push(BigInt::one());
            for k in 1..=d as usize {
                let next = &t[k - 1] * base;
                t.push(next);
            }
            t
        };
        let nums: Vec<Vec<BigInt>> = point
            .iter()
            .zip(&self.max_deg)
            .map(|(r, &d)| pow_table(r.numer(), d))
            .collect();
        let dens: Vec<Vec<BigInt>> = point
            .iter()
            .zip(&self.max_deg)
            .map(|(r, &d)| pow_table(r.denom(), d))
            .collect();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..self.nvars {
                let e = m.exponent(v);
                let d = self.max_deg[v];
                if e > 0 {
                    t *= &nums[v][e as usize];
                }
                if d > e {
                    t *= &dens[v][(d - e) as usize];
                }
            }
            acc += t;
        }
        let mut den = self.denom.clone();
        for v in 0..self.nvars {
            den *= &dens[v][self.max_deg[v] as usize];
        }
        (acc, den)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let (n, d) = self.eval_parts(point);
        Rational::new(n, d)
    }

    /// Sign of `p(point)` as -1, 0 or 1.
    pub fn sign(&self, point: &[Rational]) -> i32 {
        let (n, _) = self.eval_parts(point);
        if n.is_zero() {
            0
        } else if n.is_positive() {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::Poly;

    #[test]
    fn agrees_with_generic_eval() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let p = &(&x.pow(5).scale(&rat(3, 7)) - &(&x * &y.pow(2)).scale(&rat(-5, 2))) + &Poly::constant(2, rat(1, 3));
        let ev = IntegerEvaluator::new(&p);
        for pt in [[rat(1, 2), rat(-3, 5)], [int(0), int(0)], [int(7), rat(2, 9)]] {
            assert_eq!(ev.eval(&pt), p.eval(&pt).unwrap());
        }
        assert_eq!(ev.sign(&[int(-1), int(0)]), -1);
    }
}
