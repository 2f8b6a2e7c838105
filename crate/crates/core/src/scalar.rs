//! Coefficient traits.
//!
//! Everything in `polycore`, `elimination`, `linalg` and `polymap` is written
//! against [`Ring`] / [`Scalar`] so the same code runs over exact rationals,
//! big integers, or machine floats. The reduction machinery itself only ever
//! instantiates the exact types.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, NumRef, One, Zero};

/// Commutative ring with a partial exact division, as needed by fraction-free
/// elimination (Bareiss) and subresultant sequences.
///
/// Elements carry their own "shape" (a polynomial knows its variable count),
/// so zero and one are produced from an existing element.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_rzero(&self) -> bool;
    fn radd(&self, rhs: &Self) -> Self;
    fn rsub(&self, rhs: &Self) -> Self;
    fn rmul(&self, rhs: &Self) -> Self;
    fn rneg(&self) -> Self;
    /// `Some(q)` with `q * rhs == self`, or `None` when `rhs` does not divide.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    /// Rough storage size, used to meter elimination budgets.
    fn size_hint(&self) -> usize {
        1
    }

    fn rpow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.rmul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.rmul(&base);
            }
        }
        acc
    }
}

/// A coefficient type for polynomials.
pub trait Scalar: Ring + NumRef + Neg<Output = Self> + FromPrimitive + Display {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar must represent small integers")
    }
}

/// Scalars where every nonzero element is invertible.
pub trait FieldScalar: Scalar {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Ordered fields; Sturm sequences and root isolation need sign tests.
pub trait OrderedField: FieldScalar + PartialOrd {
    fn sign(&self) -> i32 {
        if self.is_zero() {
            0
        } else if *self > Self::zero() {
            1
        } else {
            -1
        }
    }

    fn abs_val(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

macro_rules! ring_via_num {
    ($t:ty, $div:expr) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                <$t>::zero()
            }
            fn one_like(&self) -> Self {
                <$t>::one()
            }
            fn is_rzero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn radd(&self, rhs: &Self) -> Self {
                self.clone() + rhs
            }
            fn rsub(&self, rhs: &Self) -> Self {
                self.clone() - rhs
            }
            fn rmul(&self, rhs: &Self) -> Self {
                self.clone() * rhs
            }
            fn rneg(&self) -> Self {
                -self.clone()
            }
            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                let f: fn(&$t, &$t) -> Option<$t> = $div;
                f(self, rhs)
            }
        }
        impl Scalar for $t {}
    };
}

fn field_div<T: Clone + Zero + std::ops::Div<Output = T>>(a: &T, b: &T) -> Option<T> {
    if b.is_zero() {
        None
    } else {
        Some(a.clone() / b.clone())
    }
}

ring_via_num!(BigRational, field_div);
ring_via_num!(Ratio<i64>, field_div);
ring_via_num!(f64, field_div);
ring_via_num!(f32, field_div);
ring_via_num!(BigInt, |a, b| {
    if b.is_zero() {
        return None;
    }
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
});

impl FieldScalar for BigRational {}
impl FieldScalar for Ratio<i64> {}
impl FieldScalar for f64 {}
impl FieldScalar for f32 {}
impl OrderedField for BigRational {}
impl OrderedField for Ratio<i64> {}
impl OrderedField for f64 {}
impl OrderedField for f32 {}

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
