//! Sparse linear algebra over a prime field.
//!
//! Reducing an exact rational matrix modulo a prime gives one-sided exact
//! witnesses: two determinants that differ mod p differ over Q, and a
//! nonzero vector mod p is nonzero over Q.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::Rational;

/// The Mersenne prime 2^61 - 1.
pub const P61: u64 = (1u64 << 61) - 1;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn int_mod(n: &BigInt, p: u64) -> u64 {
    let r = (n % BigInt::from(p)).abs().to_u64().expect("reduced");
    if n.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// Image of a rational in F_p; `None` when p divides the denominator.
pub fn rational_mod(r: &Rational, p: u64) -> Option<u64> {
    let d = int_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(int_mod(r.numer(), p), inv_mod(d, p), p))
}

/// Square sparse matrix over F_p, stored by rows.
#[derive(Clone, Debug)]
pub struct SparseModMatrix {
    p: u64,
    rows: Vec<BTreeMap<usize, u64>>,
}

impl SparseModMatrix {
    pub fn new(n: usize, p: u64) -> Self {
        SparseModMatrix {
            p,
            rows: vec![BTreeMap::new(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: u64) {
        if v == 0 {
            return;
        }
        let p = self.p;
        let e = self.rows[i].entry(j).or_insert(0);
        *e = add_mod(*e, v, p);
        if *e == 0 {
            self.rows[i].remove(&j);
        }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(0, |acc, (&j, &a)| add_mod(acc, mul_mod(a, v[j], self.p), self.p))
            })
            .collect()
    }

    /// Determinant by sparse elimination with a Markowitz-style pivot choice.
    pub fn det(&self) -> u64 {
        let p = self.p;
        let n = self.dim();
        let mut rows = self.rows.clone();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (i, row) in rows.iter().enumerate() {
            for &j in row.keys() {
                col_rows[j].insert(i);
            }
        }
        let mut active: BTreeSet<usize> = (0..n).collect();
        let mut perm = vec![0usize; n];
        let mut det = 1u64;
        while let Some(&r) = active.iter().min_by_key(|&&i| (rows[i].len(), i)) {
            if rows[r].is_empty() {
                return 0;
            }
            let (&c, &pv) = rows[r]
                .iter()
                .min_by_key(|(&j, _)| (col_rows[j].len(), j))
                .expect("nonempty row");
            active.remove(&r);
            perm[r] = c;
            det = mul_mod(det, pv, p);
            let inv = inv_mod(pv, p);
            let pivot_row: Vec<(usize, u64)> = rows[r].iter().map(|(&j, &v)| (j, v)).collect();
            for &j in rows[r].keys() {
                col_rows[j].remove(&r);
            }
            let targets: Vec<usize> = col_rows[c].iter().copied().collect();
            for i in targets {
                let f = mul_mod(rows[i][&c], inv, p);
                for &(j, v) in &pivot_row {
                    let e = rows[i].entry(j).or_insert(0);
                    let was_zero = *e == 0;
                    *e = sub_mod(*e, mul_mod(f, v, p), p);
                    if *e == 0 {
                        rows[i].remove(&j);
                        col_rows[j].remove(&i);
                    } else if was_zero {
                        col_rows[j].insert(i);
                    }
                }
            }
        }
        if permutation_is_odd(&perm) {
            sub_mod(0, det, p)
        } else {
            det
        }
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::RatMatrix;

    #[test]
    fn det_matches_rational_elimination() {
        let rows: Vec<Vec<i64>> = vec![
            vec![0, 2, 0, 1, 0],
            vec![3, 0, 0, 0, 1],
            vec![0, 0, 5, 0, 0],
            vec![1, 0, 0, 0, 2],
            vec![0, 1, 0, 4, 0],
        ];
        let exact = RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
            .det_gauss()
            .unwrap();
        let mut m = SparseModMatrix::new(5, P61);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.add_entry(i, j, rational_mod(&int(v), P61).unwrap());
            }
        }
        assert_eq!(m.det(), rational_mod(&exact, P61).unwrap());
    }

    #[test]
    fn rational_reduction() {
        let h = rational_mod(&rat(1, 2), P61).unwrap();
        assert_eq!(mul_mod(h, 2, P61), 1);
        assert_eq!(rational_mod(&int(-1), P61), Some(P61 - 1));
        assert_eq!(rational_mod(&rat(1, 7), 7), None);
    }
}
