//! Sparse multivariate polynomials over a pluggable coefficient ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::coeff::{Field, Rational, Ring};
use super::eps::{EpsPoly, EpsRationalFn};
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// Polynomial in `nvars` variables, terms sorted by the canonical monomial key.
///
/// No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: Vec<(Monomial, C)>,
}

impl<C: Ring> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, Monomial::one(), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable with zero-based `index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        Self::monomial(nvars, Monomial::var(index), C::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: C) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        debug_assert!(m.support_len() <= nvars);
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MultiPoly {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(m.support_len() <= nvars);
            match acc.get_mut(&m) {
                Some(v) => *v = v.add_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        MultiPoly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &C)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<Monomial> {
        self.leading_term(order).map(|(m, _)| *m)
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, C)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add_ref(cb);
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: out,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_poly())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn neg_poly(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.mul_ref(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(k, x)| (k.mul(m), x.mul_ref(c))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Substitute polynomial `subs[i]` (all in a common ring) for variable `i`.
    pub fn compose(&self, subs: &[MultiPoly<C>]) -> MultiPoly<C> {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        let target = subs.first().map_or(self.nvars, |s| s.nvars);
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, s) in subs.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = &t * &s.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Embed into a ring with `count` extra variables placed first.
    pub fn shift_vars_up(&self, count: usize) -> Self {
        MultiPoly::from_terms(
            self.nvars + count,
            self.terms
                .iter()
                .map(|(m, c)| (m.shift_up(count, self.nvars), c.clone())),
        )
    }

    /// Embed into a ring with `count` extra variables appended.
    pub fn extend_vars(&self, count: usize) -> Self {
        assert!(self.nvars + count <= MAX_VARS, "too many variables");
        MultiPoly {
            nvars: self.nvars + count,
            terms: self.terms.clone(),
        }
    }

    /// Drop the first `count` variables; the caller guarantees they do not occur.
    pub fn drop_leading_vars(&self, count: usize) -> Self {
        debug_assert!(self.terms.iter().all(|(m, _)| (0..count).all(|i| m.exp(i) == 0)));
        MultiPoly::from_terms(
            self.nvars - count,
            self.terms.iter().map(|(m, c)| (m.drop_leading(count), c.clone())),
        )
    }

    /// Keep only the first `nvars` variables; the caller guarantees the rest do not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Self {
        debug_assert!(self.terms.iter().all(|(m, _)| m.support_len() <= nvars));
        MultiPoly {
            nvars,
            terms: self.terms.clone(),
        }
    }

    /// New variable `i` is old variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())),
        )
    }

    pub fn uses_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(index) > 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Render with custom variable names, largest term first under `order`.
    pub fn display_with(&self, names: &[String], order: &MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms(order).iter().enumerate() {
            let mono = m.display_with(names);
            let is_const = m.degree() == 0;
            let (neg, body) = if c.is_atomic() {
                let neg = c.is_negative_atom();
                let abs = if neg { c.neg_ref() } else { c.clone() };
                let body = if is_const {
                    abs.to_string()
                } else if abs.is_one() {
                    mono
                } else {
                    format!("{abs}*{mono}")
                };
                (neg, body)
            } else if is_const {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*{mono}"))
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    pub fn var_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("z{i}")).collect()
    }
}

impl<C: Field> MultiPoly<C> {
    /// Scale so the leading coefficient under `order` is one.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }
}

impl<C: Ring> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.display_with(&Self::var_names(self.nvars), &MonomialOrder::DegRevLex)
        )
    }
}

impl<C: Ring> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl<C: Ring> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl<C: Ring> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl<C: Ring> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.neg_poly()
    }
}

impl MultiPoly<Rational> {
    /// Lift to `e`-polynomial coefficients (constant in `e`).
    pub fn to_eps_coeffs(&self) -> MultiPoly<EpsPoly> {
        self.map_coeffs(|c| EpsPoly::constant(c.clone()))
    }

    /// Interpret the last variable as `e`, producing a polynomial in one fewer variable.
    pub fn from_eps_variable(&self) -> MultiPoly<EpsPoly> {
        let n = self.nvars - 1;
        MultiPoly::from_terms(
            n,
            self.terms.iter().map(|(m, c)| {
                let k = m.exp(n) as usize;
                (m.with_exp(n, 0), EpsPoly::monomial(c.clone(), k))
            }),
        )
    }

    /// Scale to an integer polynomial with coprime coefficients and positive leading
    /// coefficient under `order`.
    pub fn primitive(&self, order: &MonomialOrder) -> Self {
        use num_integer::Integer;
        use num_traits::Signed;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = num_bigint::BigInt::from(1);
        let mut num_gcd = num_bigint::BigInt::from(0);
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut s = Rational::new(den, num_gcd);
        if self.leading_term(order).is_some_and(|(_, c)| c.is_negative()) {
            s = -s;
        }
        self.scale(&s)
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `z_i -> z_i + shift_i`.
    pub fn translate(&self, shift: &[Rational]) -> Self {
        let n = self.nvars;
        let subs: Vec<_> = (0..n)
            .map(|i| &MultiPoly::var(n, i) + &MultiPoly::constant(n, shift[i].clone()))
            .collect();
        self.compose(&subs)
    }
}

impl MultiPoly<EpsPoly> {
    /// Replace every coefficient by its constant term in `e`.
    pub fn set_eps_zero(&self) -> MultiPoly<Rational> {
        self.map_coeffs(|c| c.constant_term())
    }

    /// Specialize `e` to a rational value.
    pub fn eval_eps(&self, at: &Rational) -> MultiPoly<Rational> {
        self.map_coeffs(|c| c.eval(at))
    }

    /// Divide by the largest power `e^k` dividing every coefficient; returns `(f / e^k, k)`.
    pub fn eps_content_strip(&self) -> Result<(Self, usize)> {
        let k = self
            .terms
            .iter()
            .filter_map(|(_, c)| c.valuation())
            .min()
            .ok_or(Error::ZeroPolynomial)?;
        Ok((self.map_coeffs(|c| c.shift_down(k)), k))
    }

    /// Adjoin `e` as an extra last ring variable.
    pub fn to_eps_variable(&self) -> MultiPoly<Rational> {
        let n = self.nvars;
        assert!(n < MAX_VARS, "too many variables");
        MultiPoly::from_terms(
            n + 1,
            self.terms.iter().flat_map(|(m, c)| {
                c.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(move |(k, x)| (m.with_exp(n, k as u32), x.clone()))
            }),
        )
    }

    pub fn to_rational_fn(&self) -> MultiPoly<EpsRationalFn> {
        self.map_coeffs(|c| EpsRationalFn::from_poly(c.clone()))
    }

    /// Largest `e`-degree among the coefficients.
    pub fn eps_degree(&self) -> usize {
        self.terms
            .iter()
            .filter_map(|(_, c)| c.degree())
            .max()
            .unwrap_or(0)
    }
}

impl MultiPoly<EpsRationalFn> {
    /// Multiply through by the lcm of coefficient denominators, then strip the
    /// `e`-content. Returns the `e`-integral polynomial and the applied scale factor.
    pub fn clear_denominators(&self) -> Result<(MultiPoly<EpsPoly>, EpsRationalFn)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut lcm = EpsPoly::one();
        for (_, c) in &self.terms {
            let g = lcm.gcd(c.den());
            let (q, _) = c.den().div_rem(&g);
            lcm = lcm.mul_ref(&q);
        }
        let scaled: MultiPoly<EpsPoly> = MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let (q, r) = lcm.div_rem(c.den());
                debug_assert!(r.is_zero());
                (*m, c.num().mul_ref(&q))
            }),
        );
        let (stripped, k) = scaled.eps_content_strip()?;
        let scale = EpsRationalFn::new(lcm, EpsPoly::monomial(num_traits::One::one(), k));
        Ok((stripped, scale))
    }
}
