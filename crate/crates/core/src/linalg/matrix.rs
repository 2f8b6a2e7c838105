use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Ring, Scalar};

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, zero: R) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, zero: R) -> Self {
        let mut m = Self::zeros(n, n, zero.zero_like());
        for i in 0..n {
            m.set(i, i, zero.one_like());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::LengthMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_rzero)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let zero = self.zero_elem(rhs);
        let mut out = Self::zeros(self.rows, rhs.cols, zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_rzero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_rzero() {
                        let v = out.get(i, j).radd(&a.rmul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zero_elem(&self, other: &Self) -> R {
        self.data
            .first()
            .or(other.data.first())
            .map(Ring::zero_like)
            .expect("matrix with no entries has no ring witness")
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.radd(b)).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.rsub(b)).collect(),
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = v.first().map(Ring::zero_like).unwrap_or_else(|| self.get(i, 0).zero_like());
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_rzero() && !b.is_rzero() {
                        acc = acc.radd(&a.rmul(b));
                    }
                }
                acc
            })
            .collect())
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Determinant by Bareiss fraction-free elimination, with cofactor
    /// expansion for dimension three and below.
    ///
    /// `budget` caps the metered work (sum of operand size products over all
    /// ring multiplications); exceeding it returns `BudgetExceeded`.
    pub fn det_bareiss(&self, budget: Option<u64>) -> Result<R> {
        self.check_square()?;
        let n = self.rows;
        if n == 0 {
            return Err(Error::Precondition("determinant of an empty matrix".into()));
        }
        let mut meter = Meter { used: 0, cap: budget };
        if n <= 3 {
            return self.det_cofactor(&mut meter);
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = self.get(0, 0).one_like();
        for k in 0..n - 1 {
            // the sparsest nonzero pivot keeps intermediate growth down
            let pivot = (k..n)
                .filter(|&i| !m.get(i, k).is_rzero())
                .min_by_key(|&i| m.get(i, k).size_hint());
            let Some(p) = pivot else {
                return Ok(self.get(0, 0).zero_like());
            };
            if p != k {
                m.swap_rows(p, k);
                negate = !negate;
            }
            let akk = m.get(k, k).clone();
            for i in k + 1..n {
                let aik = m.get(i, k).clone();
                for j in k + 1..n {
                    let aij = m.get(i, j);
                    let mut v = meter.mul(aij, &akk)?;
                    if !aik.is_rzero() {
                        v = v.rsub(&meter.mul(&aik, m.get(k, j))?);
                    }
                    let v = v.div_exact(&prev).ok_or(Error::NotDivisible)?;
                    m.set(i, j, v);
                }
                m.set(i, k, akk.zero_like());
            }
            prev = akk;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { d.rneg() } else { d })
    }

    fn det_cofactor(&self, meter: &mut Meter) -> Result<R> {
        let a = |i, j| self.get(i, j);
        match self.rows {
            1 => Ok(a(0, 0).clone()),
            2 => Ok(meter.mul(a(0, 0), a(1, 1))?.rsub(&meter.mul(a(0, 1), a(1, 0))?)),
            3 => {
                let minor = |meter: &mut Meter, r1: usize, r2: usize, c1: usize, c2: usize| -> Result<R> {
                    Ok(meter.mul(a(r1, c1), a(r2, c2))?.rsub(&meter.mul(a(r1, c2), a(r2, c1))?))
                };
                let mut acc = a(0, 0).zero_like();
                for (j, (c1, c2)) in [(1, 2), (0, 2), (0, 1)].into_iter().enumerate() {
                    if a(0, j).is_rzero() {
                        continue;
                    }
                    let mn = minor(meter, 1, 2, c1, c2)?;
                    let t = meter.mul(a(0, j), &mn)?;
                    acc = if j == 1 { acc.rsub(&t) } else { acc.radd(&t) };
                }
                Ok(acc)
            }
            _ => unreachable!(),
        }
    }
}

struct Meter {
    used: u64,
    cap: Option<u64>,
}

impl Meter {
    fn mul<R: Ring>(&mut self, a: &R, b: &R) -> Result<R> {
        if a.is_rzero() || b.is_rzero() {
            return Ok(a.zero_like());
        }
        self.used += (a.size_hint() as u64) * (b.size_hint() as u64);
        if let Some(cap) = self.cap {
            if self.used > cap {
                return Err(Error::BudgetExceeded(format!("determinant exceeded {cap} term operations")));
            }
        }
        Ok(a.rmul(b))
    }
}

impl<S: FieldScalar> Matrix<S> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv();
            for j in c..self.cols {
                if !m.get(r, j).is_zero() {
                    let v = m.get(r, j).clone() * &inv;
                    m.set(r, j, v);
                }
            }
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..self.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det_gauss(&self) -> Result<S> {
        self.check_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(S::zero());
            };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let piv = m.get(k, k).clone();
            det = det * &piv;
            let inv = piv.inv();
            for i in k + 1..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k).clone() * &inv;
                for j in k + 1..n {
                    if m.get(k, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - f.clone() * m.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.check_square()?;
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Basis of the right kernel, as the columns of the returned matrix.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len(), S::zero());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, S::one());
            for (row, &p) in pivots.iter().enumerate() {
                k.set(p, col, -r.get(row, f).clone());
            }
        }
        k
    }

    /// Row-stacked concatenation.
    pub fn vstack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// Column-wise concatenation.
    pub fn hstack(&self, right: &Self) -> Result<Self> {
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                right.get(i, j - self.cols).clone()
            }
        }))
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn scalar_identity(n: usize) -> Self {
        Self::identity(n, S::zero())
    }

    pub fn scalar_zeros(rows: usize, cols: usize) -> Self {
        Self::zeros(rows, cols, S::zero())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::{Poly, PolyMatrix, RatMatrix};

    fn qm(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    /// Leibniz formula over all permutations.
    fn leibniz(m: &RatMatrix) -> crate::Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = int(0);
        for p in perms(n) {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let mut t = int(if inv % 2 == 0 { 1 } else { -1 });
            for (i, &pi) in p.iter().enumerate() {
                t *= m.get(i, pi);
            }
            acc += t;
        }
        acc
    }

    #[test]
    fn determinants_agree_with_leibniz() {
        let m = qm(&[&[2, 0, 1, 3, 0], &[0, 0, 4, 1, 1], &[1, 1, 0, 0, 2], &[5, 0, 0, 1, 1], &[0, 3, 1, 0, 0]]);
        let l = leibniz(&m);
        assert_eq!(m.det_gauss().unwrap(), l);
        assert_eq!(m.det_bareiss(None).unwrap(), l);
        let small = qm(&[&[1, 2, 3], &[0, 4, 5], &[1, 0, 6]]);
        assert_eq!(small.det_bareiss(None).unwrap(), leibniz(&small));
    }

    #[test]
    fn polynomial_bareiss() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let one = Poly::one(2);
        let z = Poly::zero(2);
        let m = PolyMatrix::from_rows(vec![
            vec![x.clone(), y.clone(), z.clone(), one.clone()],
            vec![one.clone(), x.clone(), y.clone(), z.clone()],
            vec![z.clone(), one.clone(), x.clone(), y.clone()],
            vec![y.clone(), z.clone(), one.clone(), x.clone()],
        ])
        .unwrap();
        let d = m.det_bareiss(None).unwrap();
        for (a, b) in [(1, 2), (-3, 5), (0, 7)] {
            let at = |p: &Poly| p.eval(&[int(a), int(b)]).unwrap();
            assert_eq!(d.eval(&[int(a), int(b)]).unwrap(), m.map(at).det_gauss().unwrap());
        }
        assert!(matches!(m.det_bareiss(Some(3)), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn inverse_kernel_rank() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::scalar_identity(2));
        let s = qm(&[&[1, 1, 0], &[2, 2, 0]]);
        assert_eq!(s.rank(), 1);
        let k = s.kernel();
        assert_eq!(k.cols(), 2);
        assert!(s.mul(&k).unwrap().is_zero());
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }
}
