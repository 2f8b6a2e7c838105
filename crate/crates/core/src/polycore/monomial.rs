use std::cmp::Ordering;
use std::fmt;

/// A monomial `x_0^e_0 * x_1^e_1 * ...`.
///
/// Only nonzero exponents are stored, as `(variable, exponent)` pairs sorted
/// by variable. Maps coming out of the reducer live in hundreds of variables
/// with three or fewer factors per term, so the dense exponent vector is
/// materialized only on request. The ambient variable count belongs to the
/// owning polynomial.
///
/// `Ord` is graded lexicographic with `x_0 > x_1 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: usize) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Monomial {
            degree: exp,
            factors: vec![(index as u32, exp)],
        }
    }

    /// From a dense exponent vector.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let factors: Vec<(u32, u32)> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i as u32, e))
            .collect();
        Self::from_sorted(factors)
    }

    /// From `(variable, exponent)` pairs in any order; repeated variables add.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut factors: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(v, e)| (v as u32, e))
            .collect();
        factors.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Self::from_sorted(merged)
    }

    fn from_sorted(factors: Vec<(u32, u32)>) -> Self {
        let degree = factors.iter().map(|&(_, e)| e).sum();
        Monomial { degree, factors }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.factors
            .binary_search_by_key(&(var as u32), |&(v, _)| v)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Dense exponent vector of length `nvars`.
    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for &(v, e) in &self.factors {
            out[v as usize] = e;
        }
        out
    }

    /// Nonzero `(variable, exponent)` pairs, ascending by variable.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.factors.iter().map(|&(v, e)| (v as usize, e))
    }

    /// Largest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.factors.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors: out,
        }
    }

    pub fn pow(&self, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial {
            degree: self.degree * exp,
            factors: self.factors.iter().map(|&(v, e)| (v, e * exp)).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 < v {
                return None;
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                let d = other.factors[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - d)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial::from_sorted(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    /// Removes variable `var`, returning its exponent and the cofactor.
    pub fn split_off(&self, var: usize) -> (u32, Monomial) {
        let e = self.exponent(var);
        if e == 0 {
            return (0, self.clone());
        }
        let factors = self
            .factors
            .iter()
            .copied()
            .filter(|&(v, _)| v as usize != var)
            .collect();
        (e, Monomial::from_sorted(factors))
    }

    /// Renames variables through `map` (old index to new index).
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Monomial {
        Monomial::from_pairs(self.factors().map(|(v, e)| (map(v), e)))
    }

    /// Every monomial dividing `self`, in a deterministic order.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        for &(v, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for base in &out {
                for k in 0..=e {
                    next.push(base.mul(&Monomial::var_pow(v as usize, k)));
                }
            }
            out = next;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (a, b) = (&self.factors, &other.factors);
            let mut i = 0;
            while i < a.len() && i < b.len() {
                let (va, ea) = a[i];
                let (vb, eb) = b[i];
                if va != vb {
                    // the side holding the smaller variable has the larger
                    // exponent at that position
                    return if va < vb { Ordering::Greater } else { Ordering::Less };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
                i += 1;
            }
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
