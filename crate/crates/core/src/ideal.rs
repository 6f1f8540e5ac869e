//! Ideals of polynomial rings: products, powers, intersections, saturation,
//! point ideals and colength.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate_basis, GroebnerBasis};
use crate::poly::{Field, Monomial, MonomialOrder, MultiPoly, Rational, Ring};

/// An ideal given by generators, with lazily computed reduced Groebner bases.
///
/// Equality compares reduced degrevlex bases.
pub struct Ideal<C> {
    nvars: usize,
    generators: Vec<MultiPoly<C>>,
    cache: RwLock<Vec<(MonomialOrder, Arc<GroebnerBasis<C>>)>>,
}

impl<C: Field> Clone for Ideal<C> {
    fn clone(&self) -> Self {
        Ideal {
            nvars: self.nvars,
            generators: self.generators.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl<C: Field> fmt::Debug for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("nvars", &self.nvars)
            .field("generators", &self.generators)
            .finish()
    }
}

impl<C: Field> fmt::Display for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl<C: Field> PartialEq for Ideal<C> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.groebner().elements() == other.groebner().elements()
    }
}

impl<C: Field> Eq for Ideal<C> {}

/// Row-reduce `gens` as vectors over the coefficient field. The result spans the
/// same vector space (hence generates the same ideal) with distinct leading monomials.
pub fn linear_basis<C: Field>(gens: &[MultiPoly<C>], order: &MonomialOrder) -> Vec<MultiPoly<C>> {
    // Pivot rows keyed by leading monomial.
    let mut rows: BTreeMap<Monomial, MultiPoly<C>> = BTreeMap::new();
    for g in gens {
        let mut f = g.clone();
        loop {
            let Some((lead, lc)) = f.leading_term(order).map(|(m, c)| (*m, c.clone())) else {
                break;
            };
            match rows.get(&lead) {
                Some(row) => f = &f - &row.scale(&lc),
                None => {
                    rows.insert(lead, f.scale(&lc.inv()));
                    break;
                }
            }
        }
    }
    let mut out: Vec<MultiPoly<C>> = rows.into_values().collect();
    out.sort_by(|a, b| {
        order.cmp(
            &a.leading_monomial(order).expect("nonzero"),
            &b.leading_monomial(order).expect("nonzero"),
        )
    });
    out
}

impl<C: Field> Ideal<C> {
    /// Ideal generated by `generators`; zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<MultiPoly<C>>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
        }
        Ok(Ideal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: RwLock::new(Vec::new()),
        })
    }

    pub fn from_basis(gb: GroebnerBasis<C>) -> Self {
        let nvars = gb.nvars();
        let generators = gb.elements().to_vec();
        Ideal {
            nvars,
            generators,
            cache: RwLock::new(vec![(gb.order().clone(), Arc::new(gb))]),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal::new(nvars, vec![MultiPoly::one(nvars)]).expect("same ring")
    }

    /// Maximal ideal of a point.
    pub fn maximal(point: &[C]) -> Self {
        let n = point.len();
        let gens = point
            .iter()
            .enumerate()
            .map(|(i, a)| &MultiPoly::var(n, i) - &MultiPoly::constant(n, a.clone()))
            .collect();
        Ideal::new(n, gens).expect("same ring")
    }

    /// The ideal generated by all variables.
    pub fn origin(nvars: usize) -> Self {
        Ideal::new(nvars, (0..nvars).map(|i| MultiPoly::var(nvars, i)).collect())
            .expect("same ring")
    }

    /// Monomial ideal from exponent vectors.
    pub fn monomial(nvars: usize, exponents: &[Vec<u32>]) -> Self {
        let gens = exponents
            .iter()
            .map(|e| MultiPoly::monomial(nvars, Monomial::from_exponents(e), C::one()))
            .collect();
        Ideal::new(nvars, gens).expect("same ring")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly<C>] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced degrevlex basis.
    pub fn groebner(&self) -> Arc<GroebnerBasis<C>> {
        self.groebner_in(&MonomialOrder::DegRevLex)
            .expect("no step budget on cached bases")
    }

    /// Reduced basis for `order`, computed once and cached.
    pub fn groebner_in(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis<C>>> {
        if let Some((_, gb)) = self
            .cache
            .read()
            .expect("cache lock")
            .iter()
            .find(|(o, _)| o == order)
        {
            return Ok(gb.clone());
        }
        let gb = if self.generators.is_empty() {
            GroebnerBasis::zero_ideal(order.clone(), self.nvars)
        } else {
            buchberger(&self.generators, order)?
        };
        let gb = Arc::new(gb);
        let mut cache = self.cache.write().expect("cache lock");
        if let Some((_, existing)) = cache.iter().find(|(o, _)| o == order) {
            return Ok(existing.clone());
        }
        cache.push((order.clone(), gb.clone()));
        Ok(gb)
    }

    pub fn contains(&self, f: &MultiPoly<C>) -> Result<bool> {
        self.groebner().contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal<C>) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    fn check_ring(&self, other: &Ideal<C>) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal<C>) -> Result<Ideal<C>> {
        self.check_ring(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.nvars, gens)
    }

    /// Ideal generated by pairwise products of generators.
    pub fn product(&self, other: &Ideal<C>) -> Result<Ideal<C>> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f * g);
            }
        }
        Ideal::new(self.nvars, linear_basis(&gens, &MonomialOrder::DegRevLex))
    }

    /// `I^p` by repeated products, generators row-reduced after each step.
    pub fn power(&self, p: u32) -> Ideal<C> {
        assert!(p >= 1, "power must be positive");
        let mut acc = Ideal::new(
            self.nvars,
            linear_basis(&self.generators, &MonomialOrder::DegRevLex),
        )
        .expect("same ring");
        let base = acc.clone();
        for _ in 1..p {
            acc = acc.product(&base).expect("same ring");
        }
        acc
    }

    /// `I ∩ J` by eliminating `t` from `t*I + (1-t)*J`.
    pub fn intersect(&self, other: &Ideal<C>) -> Result<Ideal<C>> {
        self.check_ring(other)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ideal::new(self.nvars, Vec::new());
        }
        let n = self.nvars + 1;
        let t = MultiPoly::<C>::var(n, 0);
        let one_minus_t = &MultiPoly::one(n) - &t;
        let mut gens = Vec::new();
        for f in &self.generators {
            gens.push(&t * &f.shift_vars_up(1));
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.shift_vars_up(1));
        }
        Ok(Ideal::from_basis(eliminate_basis(&gens, 1)?))
    }

    /// `I : f^∞` by eliminating `t` from `I + <1 - t*f>`.
    pub fn saturate(&self, f: &MultiPoly<C>) -> Result<Ideal<C>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: f.nvars(),
            });
        }
        let n = self.nvars + 1;
        let t = MultiPoly::<C>::var(n, 0);
        let mut gens: Vec<MultiPoly<C>> =
            self.generators.iter().map(|g| g.shift_vars_up(1)).collect();
        gens.push(&MultiPoly::one(n) - &(&t * &f.shift_vars_up(1)));
        Ok(Ideal::from_basis(eliminate_basis(&gens, 1)?))
    }

    /// True iff every variable has a pure power among the leading monomials
    /// (or the ideal is the unit ideal).
    pub fn is_zero_dimensional(&self) -> bool {
        let gb = self.groebner();
        if gb.is_unit() {
            return true;
        }
        self.pure_power_bounds_of(&gb).is_some()
    }

    fn pure_power_bounds_of(&self, gb: &GroebnerBasis<C>) -> Option<Vec<u32>> {
        let mut bounds = vec![u32::MAX; self.nvars];
        for m in gb.leading_monomials() {
            if let Some(i) = m.pure_power_var() {
                bounds[i] = bounds[i].min(m.exp(i));
            }
        }
        bounds.iter().all(|&b| b != u32::MAX).then_some(bounds)
    }

    /// For each variable, the smallest exponent of a pure-power leading monomial.
    pub fn pure_power_bounds(&self) -> Result<Vec<u32>> {
        self.pure_power_bounds_of(&self.groebner())
            .ok_or(Error::NotZeroDimensional)
    }

    /// Monomials outside the leading-term ideal of the reduced degrevlex basis.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let gb = self.groebner();
        if gb.is_unit() {
            return Ok(Vec::new());
        }
        let bounds = self
            .pure_power_bounds_of(&gb)
            .ok_or(Error::NotZeroDimensional)?;
        let leads = gb.leading_monomials();
        Ok(staircase(self.nvars, &bounds, |m| {
            !leads.iter().any(|l| l.divides(m))
        }))
    }

    /// `dim R/I` for a zero-dimensional ideal.
    pub fn colength(&self) -> Result<u64> {
        Ok(self.standard_monomials()?.len() as u64)
    }

    /// Whether `V(I)` is exactly the origin: each `z_i^l` lies in `I`, where `l` is
    /// the colength (which bounds the nilpotency index at an isolated point).
    pub fn is_supported_at_origin(&self) -> bool {
        let Ok(l) = self.colength() else {
            return false;
        };
        if l == 0 {
            return false;
        }
        let gb = self.groebner();
        (0..self.nvars).all(|i| {
            let zi = MultiPoly::monomial(self.nvars, Monomial::pure_power(i, l as u32), C::one());
            gb.contains(&zi).unwrap_or(false)
        })
    }

    /// Whether the reduced basis consists of monomials.
    pub fn is_monomial(&self) -> bool {
        self.groebner().elements().iter().all(|g| g.is_monomial())
    }

    /// Generators of the ideal that are not in the ideal generated by the others,
    /// taken from the reduced basis.
    pub fn minimal_generators(&self) -> Result<Vec<MultiPoly<C>>> {
        let mut gens: Vec<MultiPoly<C>> = self.groebner().elements().to_vec();
        let mut k = gens.len();
        while k > 0 {
            k -= 1;
            if gens.len() == 1 {
                break;
            }
            let others: Vec<_> = gens
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, g)| g.clone())
                .collect();
            if buchberger(&others, &MonomialOrder::DegRevLex)?.contains(&gens[k])? {
                gens.remove(k);
            }
        }
        Ok(gens)
    }
}

/// All monomials inside the box `x_i < bounds[i]` accepted by `keep`, assuming
/// the accepted set is closed under division.
pub(crate) fn staircase(
    nvars: usize,
    bounds: &[u32],
    keep: impl Fn(&Monomial) -> bool,
) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        nvars: usize,
        current: Monomial,
        bounds: &[u32],
        keep: &dyn Fn(&Monomial) -> bool,
        out: &mut Vec<Monomial>,
    ) {
        if idx == nvars {
            out.push(current);
            return;
        }
        for e in 0..bounds[idx] {
            let m = current.with_exp(idx, e);
            if !keep(&m) {
                break;
            }
            rec(idx + 1, nvars, m, bounds, keep, out);
        }
    }
    if keep(&Monomial::one()) {
        rec(0, nvars, Monomial::one(), bounds, &keep, &mut out);
    }
    out
}

/// Distinct rational points in affine space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<Vec<Rational>>,
}

impl PointConfiguration {
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self> {
        let n = points.first().map_or(0, |p| p.len());
        if points.is_empty() {
            return Err(Error::InvalidConfig("no points".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::InvalidConfig(format!(
                    "point {i} has {} coordinates, expected {n}",
                    p.len()
                )));
            }
            if points[..i].contains(p) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(PointConfiguration { points })
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        PointConfiguration::new(
            points
                .iter()
                .map(|p| p.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn dimension(&self) -> usize {
        self.points[0].len()
    }
}

/// Vanishing ideal of a finite point set: the intersection of its maximal ideals.
pub fn point_ideal(pts: &PointConfiguration) -> Result<Ideal<Rational>> {
    let mut acc = Ideal::maximal(&pts.points[0]);
    for p in &pts.points[1..] {
        acc = acc.intersect(&Ideal::maximal(p))?;
    }
    Ok(acc)
}
