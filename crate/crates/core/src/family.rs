//! Polynomial families of ideals in `e` and their flat limits as `e -> 0`.
//!
//! A family lives in `Q[z1..zn, e]` with `e` the last variable. Its flat limit is
//! `(J : e^inf)|_{e=0}`, and every limit is checked to have the generic colength.

use crate::error::{Error, Result};
use crate::groebner::buchberger;
use crate::ideal::Ideal;
use crate::par;
use crate::poly::{EpsPoly, EpsRationalFn, Monomial, MonomialOrder, MultiPoly, Rational, Ring};

/// `N` points whose coordinates are polynomials in `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFamily {
    n: usize,
    points: Vec<Vec<EpsPoly>>,
}

impl PointFamily {
    pub fn new(points: Vec<Vec<EpsPoly>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidConfig("a point family needs at least one point".into()));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidConfig("points need at least one coordinate".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::InvalidConfig(format!(
                    "point {} has {} coordinates, expected {n}",
                    i + 1,
                    p.len()
                )));
            }
            if let Some(j) = points[..i].iter().position(|q| q == p) {
                return Err(Error::DuplicatePointFamily(j, i));
            }
        }
        Ok(PointFamily { n, points })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<EpsPoly>] {
        &self.points
    }

    /// Positions of the points at `e = 0`.
    pub fn limit_points(&self) -> Vec<Vec<Rational>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|c| c.constant_term()).collect())
            .collect()
    }

    /// Whether all points tend to the same limit.
    pub fn is_colliding(&self) -> bool {
        let lim = self.limit_points();
        lim.iter().all(|p| *p == lim[0])
    }

    /// Shift so that the limit of the first point is the origin. Returns the
    /// shifted family and the subtracted vector.
    pub fn centered(&self) -> (PointFamily, Vec<Rational>) {
        let shift = self.limit_points().swap_remove(0);
        let points = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&shift)
                    .map(|(c, s)| c.sub_ref(&EpsPoly::constant(s.clone())))
                    .collect()
            })
            .collect();
        (PointFamily { n: self.n, points }, shift)
    }
}

/// A family of ideals `I_e` generated by polynomials with coefficients in `Q[e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFamily {
    n: usize,
    generators: Vec<MultiPoly<EpsPoly>>,
}

impl IdealFamily {
    pub fn new(n: usize, generators: Vec<MultiPoly<EpsPoly>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::VariableCountMismatch {
                    left: n,
                    right: g.nvars(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
        }
        Ok(IdealFamily { n, generators })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MultiPoly<EpsPoly>] {
        &self.generators
    }

    /// Generators as polynomials in `Q[z, e]` with `e` last.
    pub fn total_space(&self) -> Vec<MultiPoly<Rational>> {
        self.generators.iter().map(|g| g.to_eps_variable()).collect()
    }

    fn from_total_space(n: usize, gens: &[MultiPoly<Rational>]) -> Self {
        let generators = gens.iter().map(|g| g.from_eps_variable()).collect();
        IdealFamily { n, generators }
    }

    /// The family `I_e^p`.
    pub fn power(&self, p: u32) -> IdealFamily {
        let total = Ideal::new(self.n + 1, self.total_space()).expect("same ring");
        IdealFamily::from_total_space(self.n, total.power(p).generators())
    }

    /// The generic fiber as an ideal over `Q(e)`.
    pub fn generic_fiber(&self) -> Ideal<EpsRationalFn> {
        Ideal::new(
            self.n,
            self.generators.iter().map(|g| g.to_rational_fn()).collect(),
        )
        .expect("same ring")
    }

    /// Positive weights on `z` (with `e` of weight 1) for which every generator is
    /// weighted homogeneous, searching small weights only.
    pub fn grading(&self) -> Option<Vec<u32>> {
        let n = self.n;
        let max_weight: u32 = if n <= 4 { 6 } else { 2 };
        let total = self.total_space();
        let mut w = vec![1u32; n];
        loop {
            let mut full = w.clone();
            full.push(1);
            if total.iter().all(|g| is_weighted_homogeneous(g, &full)) {
                return Some(w);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return None;
                }
                if w[i] < max_weight {
                    w[i] += 1;
                    break;
                }
                w[i] = 1;
                i += 1;
            }
        }
    }
}

fn is_weighted_homogeneous(f: &MultiPoly<Rational>, weights: &[u32]) -> bool {
    let mut degs = f.terms().iter().map(|(m, _)| m.weighted_degree(weights));
    match degs.next() {
        Some(d) => degs.all(|x| x == d),
        None => true,
    }
}

/// The ideal of all polynomials vanishing on every point of the family, for
/// generic `e`. Computed in `Q[z, e]` as the intersection of the graph curves
/// `z = a_j(e)`, which is already saturated with respect to `e`.
pub fn family_from_points(pf: &PointFamily) -> Result<IdealFamily> {
    let n = pf.n;
    let curve = |p: &[EpsPoly]| -> Ideal<Rational> {
        let gens = p
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let zi = MultiPoly::<EpsPoly>::var(n, i);
                (&zi - &MultiPoly::constant(n, a.clone())).to_eps_variable()
            })
            .collect();
        Ideal::new(n + 1, gens).expect("same ring")
    };
    let mut acc = curve(&pf.points[0]);
    for p in &pf.points[1..] {
        acc = acc.intersect(&curve(p))?;
    }
    let mut gens = Vec::new();
    for g in acc.generators() {
        let (stripped, _) = g.from_eps_variable().eps_content_strip()?;
        gens.push(stripped);
    }
    IdealFamily::new(n, gens)
}

/// A flat limit together with the colength it was checked against.
#[derive(Clone, Debug)]
pub struct FlatLimit {
    pub ideal: Ideal<Rational>,
    pub generic_length: u64,
}

/// Flat limit of the family as `e -> 0`. Fails with `InternalLengthMismatch`
/// if the limit does not have the generic colength.
pub fn flat_limit(fam: &IdealFamily) -> Result<Ideal<Rational>> {
    Ok(flat_limit_checked(fam, fam.grading().as_deref())?.ideal)
}

/// Flat limit, using `grading` (weights on `z`, with `e` of weight 1) when the
/// family is weighted homogeneous for it.
pub fn flat_limit_checked(fam: &IdealFamily, grading: Option<&[u32]>) -> Result<FlatLimit> {
    let n = fam.n;
    let total = fam.total_space();
    let (limit_gens, generic_length) = match grading {
        Some(w) => {
            let mut weights = w.to_vec();
            weights.push(1);
            let order = MonomialOrder::WeightedDegRevLex { weights };
            let gb = buchberger(&total, &order)?;
            let gens: Vec<_> = gb
                .elements()
                .iter()
                .map(|g| specialize_last(&divide_last_power(g), &Rational::zero()))
                .collect();
            let fiber: Vec<_> = total
                .iter()
                .map(|g| specialize_last(g, &Rational::one()))
                .collect();
            let len = fiber_colength(n, fiber)?;
            (gens, len)
        }
        None => {
            let (gens, bounded) = projective_limit(n, &total)?;
            if bounded {
                let ideal = Ideal::from_basis(buchberger(&gens, &MonomialOrder::DegRevLex)?);
                let len = fiber_colength(n, ideal.generators().to_vec())?;
                return Ok(FlatLimit {
                    ideal,
                    generic_length: len,
                });
            }
            (gens, generic_colength(fam)?)
        }
    };
    let ideal = Ideal::from_basis(buchberger(&limit_gens, &MonomialOrder::DegRevLex)?);
    let limit_length = ideal.colength().map_err(|_| Error::InternalLengthMismatch {
        limit: u64::MAX,
        generic: generic_length,
    })?;
    if limit_length != generic_length {
        return Err(Error::InternalLengthMismatch {
            limit: limit_length,
            generic: generic_length,
        });
    }
    Ok(FlatLimit {
        ideal,
        generic_length,
    })
}

/// Saturation of a weighted homogeneous ideal by its last variable: dividing a
/// weighted degrevlex basis by the largest power of that variable gives a
/// basis of the saturation.
fn saturate_last(gens: &[MultiPoly<Rational>], weights: &[u32]) -> Result<Vec<MultiPoly<Rational>>> {
    let order = MonomialOrder::WeightedDegRevLex {
        weights: weights.to_vec(),
    };
    let gb = buchberger(gens, &order)?;
    Ok(gb.elements().iter().map(divide_last_power).collect())
}

fn swap_last_two(f: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    let k = f.nvars();
    let mut perm: Vec<usize> = (0..k).collect();
    perm.swap(k - 2, k - 1);
    MultiPoly::from_terms(k, f.terms().iter().map(|(m, c)| (m.permute(&perm), c.clone())))
}

/// Generators of the flat limit, and whether the family is certified bounded
/// as `e -> 0`.
///
/// `J` is homogenized by `h` for the grading with `z` of weight `w` and `e`, `h`
/// of weight 1. With `T = J^h : h^inf : e^inf`, `T|_(h=1)` is `J : e^inf`, so
/// `T|_(h=1, e=0)` is the limit. Points escaping to infinity as `e -> 0` tend to
/// `e = h = 0` in the weighted projective closure; if `T + <e, h>` is primary to
/// `<z>` none do, the closure is finite over the `(e : h)` line near `e = 0`,
/// and the limit has the generic colength. Branches growing like `e^k` with
/// `k >= w` as `e -> inf` also reach `e = h = 0`, so `w` is doubled until it
/// exceeds every `e`-degree before giving up.
fn projective_limit(n: usize, total: &[MultiPoly<Rational>]) -> Result<(Vec<MultiPoly<Rational>>, bool)> {
    let e_degree = total
        .iter()
        .flat_map(|g| g.terms().iter().map(|(m, _)| m.exp(n)))
        .max()
        .unwrap_or(0);
    let mut w = 2;
    loop {
        let (gens, bounded) = weighted_projective_limit(n, total, w)?;
        if bounded || w > e_degree {
            return Ok((gens, bounded));
        }
        w *= 2;
    }
}

fn weighted_projective_limit(
    n: usize,
    total: &[MultiPoly<Rational>],
    w: u32,
) -> Result<(Vec<MultiPoly<Rational>>, bool)> {
    let mut weights = vec![w; n];
    weights.extend([1, 1]);
    let homogenized: Vec<_> = total.iter().map(|g| homogenize(g, &weights)).collect();
    let by_h = saturate_last(&homogenized, &weights)?;
    let by_e = saturate_last(&by_h.iter().map(swap_last_two).collect::<Vec<_>>(), &weights)?;
    let at = |h: i64| -> Vec<MultiPoly<Rational>> {
        by_e.iter()
            .map(|g| specialize_last(&specialize_last(g, &Rational::zero()), &Rational::from_int(h)))
            .filter(|g| !g.is_zero())
            .collect()
    };
    let at_infinity = at(0);
    let bounded = !at_infinity.is_empty() && Ideal::new(n, at_infinity)?.is_zero_dimensional();
    Ok((at(1), bounded))
}

/// Weighted homogenization with a new last variable of weight 1.
fn homogenize(f: &MultiPoly<Rational>, weights: &[u32]) -> MultiPoly<Rational> {
    let k = f.nvars();
    let d = f
        .terms()
        .iter()
        .map(|(m, _)| m.weighted_degree(weights))
        .max()
        .unwrap_or(0);
    MultiPoly::from_terms(
        k + 1,
        f.terms()
            .iter()
            .map(|(m, c)| (m.with_exp(k, (d - m.weighted_degree(weights)) as u32), c.clone())),
    )
}

fn fiber_colength(n: usize, gens: Vec<MultiPoly<Rational>>) -> Result<u64> {
    Ideal::new(n, gens)?
        .colength()
        .map_err(|_| Error::NotZeroDimensionalFiber)
}

/// Colength of the generic fiber, read off a basis of `J` in an order that
/// eliminates `z` first: its leading `z`-parts span the initial ideal over `Q(e)`.
pub fn generic_colength(fam: &IdealFamily) -> Result<u64> {
    let n = fam.n;
    let gb = buchberger(&fam.total_space(), &MonomialOrder::Block { split: n })?;
    let leads: Vec<Monomial> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.with_exp(n, 0))
        .collect();
    let monomial_gens = leads
        .iter()
        .map(|m| MultiPoly::monomial(n, *m, Rational::one()))
        .collect();
    fiber_colength(n, monomial_gens)
}

/// `f / x^k` for the last variable `x` and the largest `k` with `x^k | f`.
fn divide_last_power(f: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    let e = f.nvars() - 1;
    let k = f.terms().iter().map(|(m, _)| m.exp(e)).min().unwrap_or(0);
    if k == 0 {
        return f.clone();
    }
    MultiPoly::from_terms(
        f.nvars(),
        f.terms()
            .iter()
            .map(|(m, c)| (m.with_exp(e, m.exp(e) - k), c.clone())),
    )
}

/// Substitute a value for the last variable and drop it.
fn specialize_last(f: &MultiPoly<Rational>, at: &Rational) -> MultiPoly<Rational> {
    let e = f.nvars() - 1;
    MultiPoly::from_terms(
        e,
        f.terms().iter().map(|(m, c)| {
            let k = m.exp(e);
            let v = if k == 0 {
                c.clone()
            } else {
                c * num_traits::pow(at.clone(), k as usize)
            };
            (m.with_exp(e, 0), v)
        }),
    )
}

/// Limits `I_(p)` of the powers `I_e^p` for `p = 1..=p_max`.
#[derive(Clone, Debug)]
pub struct LimitTower {
    pub p_max: u32,
    pub limits: Vec<Ideal<Rational>>,
    pub generic_lengths: Vec<u64>,
}

impl LimitTower {
    /// `I_(p)`, one-based.
    pub fn limit(&self, p: u32) -> &Ideal<Rational> {
        &self.limits[p as usize - 1]
    }

    pub fn generic_length(&self, p: u32) -> u64 {
        self.generic_lengths[p as usize - 1]
    }

    pub fn dimension(&self) -> usize {
        self.limits[0].nvars()
    }

    /// Check `I_(p) I_(q) ⊆ I_(p+q)` for every `p + q <= p_max`.
    pub fn check_graded_inclusion(&self) -> Result<()> {
        let pairs: Vec<(u32, u32)> = (1..=self.p_max)
            .flat_map(|p| (p..=self.p_max).map(move |q| (p, q)))
            .filter(|(p, q)| p + q <= self.p_max)
            .collect();
        let violations = par::map(&pairs, |&(p, q)| -> Result<bool> {
            let target = self.limit(p + q).groebner();
            for f in self.limit(p).generators() {
                for g in self.limit(q).generators() {
                    if !target.contains(&(f * g))? {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        });
        for (&(p, q), bad) in pairs.iter().zip(violations) {
            if bad? {
                return Err(Error::GradedInclusionViolation { p, q });
            }
        }
        Ok(())
    }
}

/// `I_(p) = lim I_e^p` for `p = 1..=p_max`, computed independently per `p`.
pub fn limit_tower(fam: &IdealFamily, p_max: u32) -> Result<LimitTower> {
    if p_max == 0 {
        return Err(Error::InvalidConfig("p_max must be at least 1".into()));
    }
    let grading = fam.grading();
    let results = par::map_range(p_max as usize, |i| {
        flat_limit_checked(&fam.power(i as u32 + 1), grading.as_deref())
    });
    let mut limits = Vec::with_capacity(p_max as usize);
    let mut generic_lengths = Vec::with_capacity(p_max as usize);
    for r in results {
        let fl = r?;
        limits.push(fl.ideal);
        generic_lengths.push(fl.generic_length);
    }
    let tower = LimitTower {
        p_max,
        limits,
        generic_lengths,
    };
    tower.check_graded_inclusion()?;
    Ok(tower)
}

/// Whether `f` lies in `I_(p)`.
pub fn membership_in_limit(f: &MultiPoly<Rational>, fam: &IdealFamily, p: u32) -> Result<bool> {
    if p == 0 {
        return Err(Error::InvalidConfig("p must be at least 1".into()));
    }
    flat_limit(&fam.power(p))?.contains(f)
}
