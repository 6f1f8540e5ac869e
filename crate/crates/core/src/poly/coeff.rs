//! Coefficient rings used by [`MultiPoly`](super::MultiPoly).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number with reduced numerator/denominator and positive denominator.
pub type Rational = BigRational;

/// Commutative ring with identity, operated on by reference.
pub trait Ring: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_int(value: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Whether the value prints as a single signed atom (no inner `+`/`-`).
    fn is_atomic(&self) -> bool {
        true
    }

    /// Whether the printed form starts with a minus sign that can be pulled out.
    fn is_negative_atom(&self) -> bool {
        false
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_negative_atom(&self) -> bool {
        self.is_negative()
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(value: i64) -> Rational {
    Rational::from_int(value)
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
