use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certlab::{Automorphism, Certificate, CertificateBuilder};
use crate::error::Result;
use crate::polycore::Monomial;
use crate::{Degree, Poly, PolyMap, Rational};

/// How a top-degree monomial is split into two factors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitStrategy {
    /// Balanced split; among balanced splits, prefer factors that already
    /// have a fresh variable, and reuse it.
    #[default]
    Pooled,
    /// Balanced split into two brand-new variables for every term.
    Paired,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerOptions {
    pub strategy: SplitStrategy,
    /// Split off the common monomial factor of several top-degree terms of
    /// one component at once.
    pub group_common_factors: bool,
}

#[derive(Clone, Debug)]
pub struct Lowering {
    pub map: PolyMap,
    pub certificate: Certificate,
    /// `(max degree, number of terms of that degree)` before every split and
    /// after the last one.
    pub potentials: Vec<(u32, usize)>,
    pub splits: usize,
    pub rounds: usize,
}

type Key = Vec<(Monomial, Rational)>;

fn key_of(p: &Poly) -> Key {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn max_degree(f: &PolyMap) -> u32 {
    match f.degree() {
        Degree::Finite(d) => d,
        Degree::NegInfinity => 0,
    }
}

fn potential(f: &PolyMap) -> (u32, usize) {
    let d = max_degree(f);
    let count = f
        .components()
        .iter()
        .map(|p| p.terms().filter(|(m, _)| m.degree() == d).count())
        .sum();
    (d, count)
}

/// One subtraction `w_target -= coeff * w_a * w_b`.
struct Split {
    target: usize,
    coeff: Rational,
    a: usize,
    b: usize,
}

struct Planner<'a> {
    nvars: usize,
    pool: &'a mut BTreeMap<Key, usize>,
    fresh: Vec<Poly>,
    options: LowerOptions,
}

impl Planner<'_> {
    fn var_for(&mut self, factor: Poly) -> usize {
        let key = key_of(&factor);
        if self.options.strategy == SplitStrategy::Pooled {
            if let Some(&v) = self.pool.get(&key) {
                return v;
            }
        }
        let v = self.nvars + self.fresh.len();
        if self.options.strategy == SplitStrategy::Pooled {
            self.pool.insert(key, v);
        }
        self.fresh.push(factor);
        v
    }

    fn pooled(&self, m: &Monomial) -> bool {
        self.pool.contains_key(&vec![(m.clone(), Rational::from_integer(1.into()))])
    }

    fn choose(&self, m: &Monomial) -> (Monomial, Monomial) {
        let d = m.degree();
        match self.options.strategy {
            SplitStrategy::Paired => {
                let mut left = Vec::new();
                let mut need = d.div_ceil(2);
                for (v, e) in m.factors() {
                    let k = e.min(need);
                    if k > 0 {
                        left.push((v, k));
                    }
                    need -= k;
                }
                let a = Monomial::from_pairs(left);
                let b = m.div(&a).expect("divides");
                (a, b)
            }
            SplitStrategy::Pooled => {
                let mut best: Option<((i64, u32), Monomial, Monomial)> = None;
                for a in m.divisors() {
                    let da = a.degree();
                    if da < 2 || d - da < 2 {
                        continue;
                    }
                    let b = m.div(&a).expect("divides");
                    let balance = -(2 * da as i64 - d as i64).abs();
                    let score = self.pooled(&a) as u32 + self.pooled(&b) as u32;
                    let key = (balance, score);
                    if best.as_ref().is_none_or(|(k, _, _)| key > *k) {
                        best = Some((key, a, b));
                    }
                }
                let (_, a, b) = best.expect("degree >= 4 has a split");
                (a, b)
            }
        }
    }
}

/// Lowers every component to total degree at most three.
pub fn lower_degree(f: &PolyMap) -> Result<Lowering> {
    lower_degree_with(f, LowerOptions::default())
}

/// Degree lowering in rounds. Each round removes every term of the current
/// maximal degree `d` by subtracting `c * (y_a + a)(y_b + b)` with `a b = m`,
/// where `y_a + a` is the component of a fresh variable introduced by an
/// extension followed by the shear `z -> z + a(x)`.
///
/// Factors have degree at most `d - 2`, and components of fresh variables are
/// only rewritten once the round degree reaches their own degree, so every
/// component used as a factor still equals `y + a` when it is used.
pub fn lower_degree_with(f: &PolyMap, options: LowerOptions) -> Result<Lowering> {
    f.check_square()?;
    let mut builder = CertificateBuilder::new(f.clone());
    let mut pool: BTreeMap<Key, usize> = BTreeMap::new();
    let mut potentials = vec![potential(f)];
    let (mut splits, mut rounds) = (0, 0);
    loop {
        let cur = builder.current().clone();
        let d = max_degree(&cur);
        if d <= 3 {
            break;
        }
        rounds += 1;
        let n = cur.nvars();
        let mut planner = Planner {
            nvars: n,
            pool: &mut pool,
            fresh: Vec::new(),
            options,
        };
        let mut plan: Vec<Split> = Vec::new();
        let (_, mut remaining) = potential(&cur);
        for (i, p) in cur.components().iter().enumerate() {
            let top: Vec<(Monomial, Rational)> = p
                .terms()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            if top.is_empty() {
                continue;
            }
            if options.group_common_factors && top.len() >= 2 {
                let g = top
                    .iter()
                    .skip(1)
                    .fold(top[0].0.clone(), |g, (m, _)| monomial_gcd(&g, m));
                let dg = g.degree();
                if dg >= 2 && d - dg >= 2 {
                    let rest = Poly::from_terms(n, top.iter().map(|(m, c)| (m.div(&g).expect("divides"), c.clone())));
                    let a = planner.var_for(Poly::monomial(n, g, Rational::from_integer(1.into())));
                    let b = planner.var_for(rest);
                    plan.push(Split {
                        target: i,
                        coeff: Rational::from_integer(1.into()),
                        a,
                        b,
                    });
                    remaining -= top.len();
                    splits += 1;
                    potentials.push((d, remaining));
                    continue;
                }
            }
            for (m, c) in top {
                let (ma, mb) = planner.choose(&m);
                let one = Rational::from_integer(1.into());
                let a = planner.var_for(Poly::monomial(n, ma, one.clone()));
                let b = planner.var_for(Poly::monomial(n, mb, one));
                plan.push(Split {
                    target: i,
                    coeff: c,
                    a,
                    b,
                });
                remaining -= 1;
                splits += 1;
                if remaining > 0 {
                    potentials.push((d, remaining));
                }
            }
        }
        let fresh = planner.fresh;
        let k = fresh.len();
        let total = n + k;
        if k > 0 {
            builder.extend(k)?;
            let mut fwd: Vec<Poly> = (0..total).map(|j| Poly::var(total, j)).collect();
            let mut inv = fwd.clone();
            for (j, factor) in fresh.iter().enumerate() {
                let factor = factor.with_nvars(total)?;
                fwd[n + j] = &fwd[n + j] + &factor;
                inv[n + j] = &inv[n + j] - &factor;
            }
            builder.pre(Automorphism::polynomial(
                PolyMap::new(total, fwd)?,
                PolyMap::new(total, inv)?,
            )?)?;
        }
        let mut fwd: Vec<Poly> = (0..total).map(|j| Poly::var(total, j)).collect();
        let mut inv = fwd.clone();
        for s in &plan {
            let prod = (&Poly::var(total, s.a) * &Poly::var(total, s.b)).scale(&s.coeff);
            fwd[s.target] = &fwd[s.target] - &prod;
            inv[s.target] = &inv[s.target] + &prod;
        }
        builder.post(Automorphism::polynomial(
            PolyMap::new(total, fwd)?,
            PolyMap::new(total, inv)?,
        )?)?;
        let after = potential(builder.current());
        debug_assert!(after.0 < d);
        potentials.push(after);
    }
    let certificate = builder.finish();
    Ok(Lowering {
        map: certificate.target.clone(),
        certificate,
        potentials,
        splits,
        rounds,
    })
}

fn monomial_gcd(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::from_pairs(a.factors().filter_map(|(v, e)| {
        let k = e.min(b.exponent(v));
        (k > 0).then_some((v, k))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certlab::verify_certificate;

    #[test]
    fn paired_quartic_example() {
        let x = Poly::var(1, 0);
        let f = PolyMap::square(vec![x.pow(4)]).unwrap();
        let l = lower_degree_with(
            &f,
            LowerOptions {
                strategy: SplitStrategy::Paired,
                group_common_factors: false,
            },
        )
        .unwrap();
        let (x, y, z) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
        let x2 = x.pow(2);
        let expected = vec![
            &(-&(&y * &z)) - &(&(&y + &z) * &x2),
            &y + &x2,
            &z + &x2,
        ];
        assert_eq!(l.map.components(), expected.as_slice());
        assert!(verify_certificate(&l.certificate).valid);
        assert_eq!(l.potentials, vec![(4, 1), (3, 2)]);
    }

    #[test]
    fn cubic_input_is_unchanged() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let f = PolyMap::square(vec![&x + &y.pow(3), y]).unwrap();
        let l = lower_degree(&f).unwrap();
        assert_eq!(l.map, f);
        assert!(l.certificate.moves.is_empty());
    }

    #[test]
    fn pooled_and_grouped_lowering_verify() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let f = PolyMap::square(vec![&(&x + &x.pow(7)) + &(&x.pow(3) * &y.pow(3)), &y + &x.pow(5)]).unwrap();
        for group in [false, true] {
            let l = lower_degree_with(
                &f,
                LowerOptions {
                    strategy: SplitStrategy::Pooled,
                    group_common_factors: group,
                },
            )
            .unwrap();
            assert!(max_degree(&l.map) <= 3);
            assert!(l.potentials.windows(2).all(|w| w[1] < w[0]));
            assert!(verify_certificate(&l.certificate).valid);
        }
    }
}
