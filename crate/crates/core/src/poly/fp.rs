//! The prime field `Z/(2^61 - 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::coeff::{Field, Rational, Ring};

/// Element of `Z/pZ` with `p = 2^61 - 1`, stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(value: u64) -> Self {
        Fp(value % Self::MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(x: u128) -> u64 {
        let p = Self::MODULUS as u128;
        let folded = (x & p) + (x >> 61);
        let folded = (folded & p) + (folded >> 61);
        let r = folded as u64;
        if r >= Self::MODULUS {
            r - Self::MODULUS
        } else {
            r
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(x: &BigInt) -> Fp {
        let r = (x.abs() % BigInt::from(Self::MODULUS))
            .to_u64()
            .expect("reduced residue fits");
        if x.is_negative() {
            Fp(r).neg_ref()
        } else {
            Fp(r)
        }
    }

    /// Image of a rational number, or `None` if the denominator vanishes mod `p`.
    pub fn from_rational(x: &Rational) -> Option<Fp> {
        let den = Fp::from_bigint(x.denom());
        if den.is_zero() {
            return None;
        }
        Some(Fp::from_bigint(x.numer()).div_ref(&den))
    }
}

impl Ring for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add_ref(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + Self::MODULUS - other.0
        })
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Fp(Self::reduce(self.0 as u128 * other.0 as u128))
    }
    fn neg_ref(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(Self::MODULUS - self.0)
        }
    }
    fn from_int(value: i64) -> Self {
        let r = Fp(value.unsigned_abs() % Self::MODULUS);
        if value < 0 {
            r.neg_ref()
        } else {
            r
        }
    }
}

impl Field for Fp {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.pow(Self::MODULUS - 2)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
