//! Univariate polynomials and rational functions in the deformation parameter `e`.

use std::fmt;

use num_traits::Signed;


use super::coeff::{rat, Field, Rational, Ring};

/// Polynomial in `e` with rational coefficients, stored low degree first.
///
/// The highest stored coefficient is nonzero unless the polynomial is zero,
/// in which case the coefficient list is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct EpsPoly {
    coeffs: Vec<Rational>,
}

impl EpsPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EpsPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        EpsPoly::new(vec![c])
    }

    /// `c * e^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        EpsPoly::new(coeffs)
    }

    /// The parameter `e` itself.
    pub fn eps() -> Self {
        EpsPoly::monomial(rat(1), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree in `e`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `k` with `e^k` dividing `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Divide by `e^k`. The caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        EpsPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        EpsPoly { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        EpsPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn monic(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &EpsPoly) -> (EpsPoly, EpsPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (EpsPoly::default(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (EpsPoly::new(quot), EpsPoly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &EpsPoly) -> EpsPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.coeffs.is_empty() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl Ring for EpsPoly {
    fn zero() -> Self {
        EpsPoly::default()
    }
    fn one() -> Self {
        EpsPoly::constant(rat(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        EpsPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return EpsPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        EpsPoly::new(out)
    }
    fn neg_ref(&self) -> Self {
        EpsPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn from_int(value: i64) -> Self {
        EpsPoly::constant(rat(value))
    }
    fn is_atomic(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }
    fn is_negative_atom(&self) -> bool {
        self.is_atomic() && self.coeffs.last().is_some_and(|c| c.is_negative())
    }
}

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs == rat(1);
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !unit {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "e")?;
                    } else {
                        write!(f, "e^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Rational function `num / den` in `e`, kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EpsRationalFn {
    num: EpsPoly,
    den: EpsPoly,
}

impl EpsRationalFn {
    /// Panics if `den` is zero.
    pub fn new(num: EpsPoly, den: EpsPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return EpsRationalFn {
                num,
                den: EpsPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading_coeff().recip();
        EpsRationalFn {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: EpsPoly) -> Self {
        EpsRationalFn {
            num: p,
            den: EpsPoly::one(),
        }
    }

    pub fn num(&self) -> &EpsPoly {
        &self.num
    }

    pub fn den(&self) -> &EpsPoly {
        &self.den
    }

    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }
}

impl Ring for EpsRationalFn {
    fn zero() -> Self {
        EpsRationalFn::from_poly(EpsPoly::zero())
    }
    fn one() -> Self {
        EpsRationalFn::from_poly(EpsPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return EpsRationalFn::new(self.num.add_ref(&other.num), self.den.clone());
        }
        EpsRationalFn::new(
            self.num
                .mul_ref(&other.den)
                .add_ref(&other.num.mul_ref(&self.den)),
            self.den.mul_ref(&other.den),
        )
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        EpsRationalFn::new(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
    }
    fn neg_ref(&self) -> Self {
        EpsRationalFn {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
    fn from_int(value: i64) -> Self {
        EpsRationalFn::from_poly(EpsPoly::from_int(value))
    }
    fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.is_atomic()
    }
    fn is_negative_atom(&self) -> bool {
        self.den.is_one() && self.num.is_negative_atom()
    }
}

impl Field for EpsRationalFn {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        EpsRationalFn::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for EpsRationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &EpsPoly| {
            if p.is_atomic() {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
