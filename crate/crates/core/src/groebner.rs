//! Buchberger's algorithm, normal forms, reduced bases and elimination.

use std::cmp::Ordering;
use std::cmp::Reverse;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::poly::{Field, Monomial, MonomialOrder, MultiPoly, SortKey};

/// Terms sorted ascending under the working order; the leading term is last.
type Terms<C> = Vec<(Monomial, C)>;

fn to_terms<C: Field>(p: &MultiPoly<C>, order: &MonomialOrder) -> Terms<C> {
    let mut t = p.terms().to_vec();
    t.sort_by(|a, b| order.cmp(&a.0, &b.0));
    t
}

fn from_terms<C: Field>(nvars: usize, t: Terms<C>) -> MultiPoly<C> {
    MultiPoly::from_terms(nvars, t)
}

fn make_monic<C: Field>(t: &mut Terms<C>) {
    if let Some((_, lc)) = t.last() {
        if !lc.is_one() {
            let inv = lc.inv();
            for (_, c) in t.iter_mut() {
                *c = c.mul_ref(&inv);
            }
        }
    }
}

/// `f - c * m * g`, all sorted ascending.
fn sub_scaled<C: Field>(
    f: &[(Monomial, C)],
    c: &C,
    m: &Monomial,
    g: &[(Monomial, C)],
    order: &MonomialOrder,
) -> Terms<C> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() && j < g.len() {
        let gm = g[j].0.mul(m);
        match order.cmp(&f[i].0, &gm) {
            Ordering::Less => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm, g[j].1.mul_ref(c).neg_ref()));
                j += 1;
            }
            Ordering::Equal => {
                let v = f[i].1.sub_ref(&g[j].1.mul_ref(c));
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    for (gm, gc) in &g[j..] {
        out.push((gm.mul(m), gc.mul_ref(c).neg_ref()));
    }
    out
}

/// Positions of the monomials of degree below a truncation bound, ascending
/// in the working order, with a direct-address lookup table.
struct DenseIndex {
    nvars: usize,
    bound: u32,
    table: Vec<u32>,
    monomials: Vec<Monomial>,
}

impl DenseIndex {
    const MAX_TABLE: usize = 1 << 22;

    fn new(nvars: usize, bound: u32, order: &MonomialOrder) -> Option<Self> {
        let size = (bound as usize).checked_pow(nvars as u32)?;
        if nvars == 0 || size > Self::MAX_TABLE {
            return None;
        }
        let mut monomials: Vec<Monomial> = (0..bound)
            .flat_map(|d| Monomial::all_of_degree(nvars, d))
            .collect();
        monomials.sort_by(|a, b| order.cmp(a, b));
        let mut index = DenseIndex {
            nvars,
            bound,
            table: vec![u32::MAX; size],
            monomials,
        };
        for k in 0..index.monomials.len() {
            let slot = index.slot(&index.monomials[k]);
            index.table[slot] = k as u32;
        }
        Some(index)
    }

    #[inline]
    fn slot(&self, m: &Monomial) -> usize {
        (0..self.nvars)
            .rev()
            .fold(0, |acc, i| acc * self.bound as usize + m.exp(i) as usize)
    }

    /// `None` for monomials at or above the bound.
    #[inline]
    fn position(&self, m: &Monomial) -> Option<usize> {
        (m.degree() < self.bound).then(|| self.table[self.slot(m)] as usize)
    }
}

struct Reducer<'a, C> {
    polys: &'a [Terms<C>],
    leads: &'a [Monomial],
    /// Usable reducers; leads that only divide truncated terms are left out.
    candidates: Vec<usize>,
    truncate: Option<u32>,
    dense: Option<&'a DenseIndex>,
}

impl<'a, C: Field> Reducer<'a, C> {
    fn new(
        polys: &'a [Terms<C>],
        leads: &'a [Monomial],
        active: &[bool],
        skip: Option<usize>,
        truncate: Option<u32>,
        dense: Option<&'a DenseIndex>,
    ) -> Self {
        let candidates = (0..leads.len())
            .filter(|&k| {
                active[k] && Some(k) != skip && truncate.is_none_or(|t| leads[k].degree() < t)
            })
            .collect();
        Reducer {
            polys,
            leads,
            candidates,
            truncate,
            dense: dense.filter(|d| truncate == Some(d.bound)),
        }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        self.candidates
            .iter()
            .copied()
            .find(|&k| self.leads[k].divides(m))
    }

    fn keeps(&self, m: &Monomial) -> bool {
        self.truncate.is_none_or(|t| m.degree() < t)
    }

    /// Full reduction, or only until the leading term is irreducible when
    /// `top_only` is set. `steps` counts single-term cancellations.
    fn reduce(
        &self,
        f: Terms<C>,
        order: &MonomialOrder,
        top_only: bool,
        steps: &mut u64,
        budget: Option<u64>,
    ) -> Result<Terms<C>> {
        if let Some(index) = self.dense {
            return self.reduce_dense(index, f, top_only, steps, budget);
        }
        let mut acc: BTreeMap<SortKey, (Monomial, C)> = f
            .into_iter()
            .filter(|(m, _)| self.keeps(m))
            .map(|(m, c)| (order.sort_key(&m), (m, c)))
            .collect();
        // Irreducible terms, collected in descending order.
        let mut done: Vec<(Monomial, C)> = Vec::new();
        while let Some((_, (m, c))) = acc.pop_last() {
            let Some(k) = self.find(&m) else {
                done.push((m, c));
                if top_only {
                    done.extend(std::mem::take(&mut acc).into_values().rev());
                }
                continue;
            };
            *steps += 1;
            if budget.is_some_and(|b| *steps > b) {
                return Err(Error::StepBudgetExceeded(budget.unwrap_or_default()));
            }
            let g = &self.polys[k];
            let q = self.leads[k].quotient_of(&m).expect("divides");
            let coef = c.div_ref(&g.last().expect("nonzero").1);
            for (gm, gc) in &g[..g.len() - 1] {
                let pm = gm.mul(&q);
                if !self.keeps(&pm) {
                    continue;
                }
                let delta = gc.mul_ref(&coef);
                match acc.entry(order.sort_key(&pm)) {
                    Entry::Vacant(e) => {
                        e.insert((pm, delta.neg_ref()));
                    }
                    Entry::Occupied(mut e) => {
                        let v = e.get().1.sub_ref(&delta);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            e.get_mut().1 = v;
                        }
                    }
                }
            }
        }
        done.reverse();
        Ok(done)
    }

    /// [`Reducer::reduce`] with a dense accumulator over the truncated
    /// monomials. New terms are always below the one being cancelled, so a
    /// single downward sweep visits every term.
    fn reduce_dense(
        &self,
        index: &DenseIndex,
        f: Terms<C>,
        top_only: bool,
        steps: &mut u64,
        budget: Option<u64>,
    ) -> Result<Terms<C>> {
        let mut acc = vec![C::zero(); index.monomials.len()];
        let mut top = 0;
        for (m, c) in f {
            if let Some(i) = index.position(&m) {
                acc[i] = c;
                top = top.max(i + 1);
            }
        }
        let mut done: Vec<(Monomial, C)> = Vec::new();
        for i in (0..top).rev() {
            if acc[i].is_zero() {
                continue;
            }
            let m = index.monomials[i];
            let c = std::mem::replace(&mut acc[i], C::zero());
            let Some(k) = self.find(&m) else {
                done.push((m, c));
                if top_only {
                    for j in (0..i).rev() {
                        if !acc[j].is_zero() {
                            done.push((index.monomials[j], std::mem::replace(&mut acc[j], C::zero())));
                        }
                    }
                    break;
                }
                continue;
            };
            *steps += 1;
            if budget.is_some_and(|b| *steps > b) {
                return Err(Error::StepBudgetExceeded(budget.unwrap_or_default()));
            }
            let g = &self.polys[k];
            let q = self.leads[k].quotient_of(&m).expect("divides");
            let coef = c.div_ref(&g.last().expect("nonzero").1);
            for (gm, gc) in &g[..g.len() - 1] {
                if let Some(j) = index.position(&gm.mul(&q)) {
                    acc[j] = acc[j].sub_ref(&gc.mul_ref(&coef));
                }
            }
        }
        done.reverse();
        Ok(done)
    }
}

/// Tuning switches for [`buchberger_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Skip pairs with coprime leading monomials.
    pub coprime_criterion: bool,
    /// Skip pairs covered by a third element whose pairs are already treated.
    pub chain_criterion: bool,
    /// Maximum number of single-term reduction steps.
    pub step_budget: Option<u64>,
    /// Work modulo all monomials of this degree: they join the generators
    /// and higher-degree terms are discarded during reduction. Required for
    /// local orders, where the monomials stay implicit.
    pub truncate_degree: Option<u32>,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            coprime_criterion: true,
            chain_criterion: true,
            step_budget: None,
            truncate_degree: None,
        }
    }
}

/// Reduced Groebner basis: monic elements, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C> {
    order: MonomialOrder,
    nvars: usize,
    elements: Vec<MultiPoly<C>>,
    sorted: Vec<Terms<C>>,
    leads: Vec<Monomial>,
    /// Set for local orders: every monomial of this degree is implicitly in the ideal.
    truncation: Option<u32>,
}

impl<C: Field> PartialEq for GroebnerBasis<C> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.nvars == other.nvars && self.elements == other.elements
    }
}

impl<C: Field> Eq for GroebnerBasis<C> {}

impl<C: Field> GroebnerBasis<C> {
    fn from_sorted(order: MonomialOrder, nvars: usize, mut sorted: Vec<Terms<C>>) -> Self {
        sorted.sort_by(|a, b| order.cmp(&a.last().expect("nonzero").0, &b.last().expect("nonzero").0));
        let leads = sorted.iter().map(|t| t.last().expect("nonzero").0).collect();
        let elements = sorted
            .iter()
            .map(|t| from_terms(nvars, t.clone()))
            .collect();
        GroebnerBasis {
            order,
            nvars,
            elements,
            sorted,
            leads,
            truncation: None,
        }
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[MultiPoly<C>] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_unit(&self) -> bool {
        self.leads.iter().any(|m| m.degree() == 0)
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        if f.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: f.nvars(),
                right: self.nvars,
            });
        }
        let active = vec![true; self.leads.len()];
        let r = Reducer::new(&self.sorted, &self.leads, &active, None, self.truncation, None);
        let mut steps = 0;
        let t = r.reduce(to_terms(f, &self.order), &self.order, false, &mut steps, None)?;
        Ok(from_terms(self.nvars, t))
    }

    pub fn contains(&self, f: &MultiPoly<C>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether a monomial lies outside the leading-term ideal.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.truncation.is_none_or(|t| m.degree() < t) && !self.leads.iter().any(|l| l.divides(m))
    }
}

/// Remainder of `f` modulo `basis`.
pub fn normal_form<C: Field>(f: &MultiPoly<C>, basis: &GroebnerBasis<C>) -> Result<MultiPoly<C>> {
    basis.normal_form(f)
}

/// Reduced Groebner basis of the ideal generated by `generators`.
pub fn buchberger<C: Field>(
    generators: &[MultiPoly<C>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis<C>> {
    buchberger_with(generators, order, &BuchbergerOptions::default())
}

/// Selection key: sugar degree, lcm, then indices. Popped smallest first.
type PairKey = Reverse<(u64, SortKey, usize, usize)>;

pub fn buchberger_with<C: Field>(
    generators: &[MultiPoly<C>],
    order: &MonomialOrder,
    opts: &BuchbergerOptions,
) -> Result<GroebnerBasis<C>> {
    let nvars = generators.first().ok_or(Error::EmptyGenerators)?.nvars();
    for g in generators {
        if g.nvars() != nvars {
            return Err(Error::VariableCountMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
    }
    let mut polys: Vec<Terms<C>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: BinaryHeap<PairKey> = BinaryHeap::new();
    // Pairs already popped; pairs never formed do not count.
    let mut treated: HashSet<(usize, usize)> = HashSet::new();
    let mut steps = 0u64;

    let mut inputs: Vec<Terms<C>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_terms(g, order))
        .collect();
    if inputs.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    // Small leading monomials first keeps the initial reductions cheap.
    inputs.sort_by(|a, b| order.cmp(&a.last().expect("nonzero").0, &b.last().expect("nonzero").0));

    let insert = |h: Terms<C>,
                      polys: &mut Vec<Terms<C>>,
                      leads: &mut Vec<Monomial>,
                      active: &mut Vec<bool>,
                      pairs: &mut BinaryHeap<PairKey>| {
        let lead = h.last().expect("nonzero").0;
        let k = polys.len();
        for i in 0..k {
            if !active[i] {
                continue;
            }
            let lcm = leads[i].lcm(&lead);
            pairs.push(Reverse((order.sugar_degree(&lcm), order.sort_key(&lcm), k, i)));
        }
        // Older elements whose lead is a multiple of the new lead stay in the
        // pair bookkeeping but are no longer used as reducers.
        for i in 0..k {
            if active[i] && lead.divides(&leads[i]) {
                active[i] = false;
            }
        }
        polys.push(h);
        leads.push(lead);
        active.push(true);
    };

    if order.is_local() && opts.truncate_degree.is_none() {
        return Err(Error::LocalOrderWithoutTruncation);
    }
    let dense = opts
        .truncate_degree
        .and_then(|t| DenseIndex::new(nvars, t, order));
    if let Some(t) = opts.truncate_degree.filter(|_| !order.is_local()) {
        for m in Monomial::all_of_degree(nvars, t) {
            insert(vec![(m, C::one())], &mut polys, &mut leads, &mut active, &mut pairs);
        }
    }
    for g in inputs {
        let r = Reducer::new(&polys, &leads, &active, None, opts.truncate_degree, dense.as_ref());
        let mut h = r.reduce(g, order, order.is_local(), &mut steps, opts.step_budget)?;
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        insert(h, &mut polys, &mut leads, &mut active, &mut pairs);
    }

    while let Some(Reverse((_, _, pj, pi))) = pairs.pop() {
        treated.insert((pi, pj));
        let pair_lcm = leads[pi].lcm(&leads[pj]);
        if opts.coprime_criterion && leads[pi].is_coprime(&leads[pj]) {
            continue;
        }
        if opts.chain_criterion {
            let covered = (0..polys.len()).any(|k| {
                k != pi
                    && k != pj
                    && leads[k].divides(&pair_lcm)
                    && treated.contains(&(pi.min(k), pi.max(k)))
                    && treated.contains(&(pj.min(k), pj.max(k)))
            });
            if covered {
                continue;
            }
        }

        let (fi, fj) = (&polys[pi], &polys[pj]);
        let mi = leads[pi].quotient_of(&pair_lcm).expect("lcm");
        let mj = leads[pj].quotient_of(&pair_lcm).expect("lcm");
        // Both inputs are monic, so the leading terms cancel.
        let a: Terms<C> = fi[..fi.len() - 1]
            .iter()
            .map(|(m, c)| (m.mul(&mi), c.clone()))
            .collect();
        let s = sub_scaled(&a, &C::one(), &mj, &fj[..fj.len() - 1], order);
        let r = Reducer::new(&polys, &leads, &active, None, opts.truncate_degree, dense.as_ref());
        let mut h = r.reduce(s, order, order.is_local(), &mut steps, opts.step_budget)?;
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h.last().expect("nonzero").0.degree() == 0 {
            return Ok(GroebnerBasis::from_sorted(
                order.clone(),
                nvars,
                vec![vec![(Monomial::one(), C::one())]],
            ));
        }
        insert(h, &mut polys, &mut leads, &mut active, &mut pairs);
    }

    let local_truncation = opts.truncate_degree.filter(|_| order.is_local());
    Ok(reduce_basis(polys, order, nvars, local_truncation, dense.as_ref()))
}

/// Minimalize and interreduce a Groebner basis.
fn reduce_basis<C: Field>(
    polys: Vec<Terms<C>>,
    order: &MonomialOrder,
    nvars: usize,
    truncation: Option<u32>,
    dense: Option<&DenseIndex>,
) -> GroebnerBasis<C> {
    let mut minimal: Vec<Terms<C>> = Vec::new();
    let mut sorted = polys;
    // Divisors come first in total degree, whatever the order.
    sorted.sort_by(|a, b| {
        let (la, lb) = (&a.last().expect("nonzero").0, &b.last().expect("nonzero").0);
        la.degree().cmp(&lb.degree()).then_with(|| order.cmp(la, lb))
    });
    for p in sorted {
        let lead = p.last().expect("nonzero").0;
        if !minimal
            .iter()
            .any(|q| q.last().expect("nonzero").0.divides(&lead))
        {
            minimal.push(p);
        }
    }
    let leads: Vec<Monomial> = minimal.iter().map(|t| t.last().expect("nonzero").0).collect();
    let active = vec![true; minimal.len()];
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.iter().enumerate() {
        let r = Reducer::new(&minimal, &leads, &active, Some(k), truncation, dense);
        let mut steps = 0;
        let mut t = r
            .reduce(p.clone(), order, false, &mut steps, None)
            .expect("no budget");
        make_monic(&mut t);
        reduced.push(t);
    }
    let mut gb = GroebnerBasis::from_sorted(order.clone(), nvars, reduced);
    gb.truncation = truncation;
    gb
}

/// Generators of the intersection of the ideal with the subring omitting the
/// first `drop_count` variables, expressed in the remaining variables.
pub fn eliminate<C: Field>(generators: &[MultiPoly<C>], drop_count: usize) -> Result<Vec<MultiPoly<C>>> {
    Ok(eliminate_basis(generators, drop_count)?.elements().to_vec())
}

/// Like [`eliminate`], returning the reduced degrevlex basis of the elimination ideal.
pub fn eliminate_basis<C: Field>(
    generators: &[MultiPoly<C>],
    drop_count: usize,
) -> Result<GroebnerBasis<C>> {
    if drop_count == 0 {
        return buchberger(generators, &MonomialOrder::DegRevLex);
    }
    let gb = buchberger(generators, &MonomialOrder::Block { split: drop_count })?;
    let nvars = gb.nvars() - drop_count;
    let kept: Vec<Terms<C>> = gb
        .elements()
        .iter()
        .filter(|g| (0..drop_count).all(|i| !g.uses_var(i)))
        .map(|g| to_terms(&g.drop_leading_vars(drop_count), &MonomialOrder::DegRevLex))
        .collect();
    if kept.is_empty() {
        return Ok(GroebnerBasis::from_sorted(MonomialOrder::DegRevLex, nvars, Vec::new()));
    }
    Ok(GroebnerBasis::from_sorted(MonomialOrder::DegRevLex, nvars, kept))
}

impl<C: Field> GroebnerBasis<C> {
    /// Empty basis of the zero ideal.
    pub fn zero_ideal(order: MonomialOrder, nvars: usize) -> Self {
        GroebnerBasis::from_sorted(order, nvars, Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Rational};

    fn polys(src: &[&str], n: usize) -> Vec<MultiPoly<Rational>> {
        src.iter().map(|s| parse_poly(s, n).unwrap()).collect()
    }

    fn gb(src: &[&str], n: usize) -> GroebnerBasis<Rational> {
        buchberger(&polys(src, n), &MonomialOrder::DegRevLex).unwrap()
    }

    fn shown(g: &GroebnerBasis<Rational>) -> Vec<String> {
        g.elements().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let g = gb(&["z1^2", "z1*z2", "z2^2"], 2);
        assert_eq!(shown(&g), vec!["z2^2", "z1*z2", "z1^2"]);
    }

    #[test]
    fn already_reduced_basis() {
        let g = gb(&["z2", "z1*(z1-1)"], 2);
        assert_eq!(shown(&g), vec!["z2", "z1^2 - z1"]);
    }

    #[test]
    fn normal_forms() {
        let g = gb(&["z1"], 2);
        assert!(g.normal_form(&parse_poly("z1^2", 2).unwrap()).unwrap().is_zero());
        let g = gb(&["z1^2", "z2^2"], 2);
        let f = parse_poly("z1*z2", 2).unwrap();
        assert_eq!(g.normal_form(&f).unwrap(), f);
    }

    #[test]
    fn unit_ideal_detected() {
        let g = gb(&["z1*z2 - 1", "z1"], 2);
        assert!(g.is_unit());
        assert_eq!(shown(&g), vec!["1"]);
    }

    #[test]
    fn elimination_intersects() {
        // <z1> ∩ <z2> via t*z1, (1-t)*z2 in (t, z1, z2)
        let gens = polys(&["z1*z2", "(1-z1)*z3"], 3);
        let e = eliminate(&gens, 1).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].to_string(), "z1*z2");
        assert_eq!(e[0].nvars(), 2);
    }

    #[test]
    fn eliminate_nothing_is_reduced_basis() {
        let gens = polys(&["z1^2 + z2", "z1*z2"], 2);
        let e = eliminate(&gens, 0).unwrap();
        assert_eq!(e, gb(&["z1^2 + z2", "z1*z2"], 2).elements().to_vec());
    }

    #[test]
    fn criteria_do_not_change_result() {
        let gens = polys(&["z1^3 - 2*z1*z2", "z1^2*z2 - 2*z2^2 + z1", "z3^2 - z1*z3"], 3);
        let all = BuchbergerOptions::default();
        let none = BuchbergerOptions {
            coprime_criterion: false,
            chain_criterion: false,
            step_budget: None,
            truncate_degree: None,
        };
        let a = buchberger_with(&gens, &MonomialOrder::DegRevLex, &all).unwrap();
        let b = buchberger_with(&gens, &MonomialOrder::DegRevLex, &none).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn step_budget_is_enforced() {
        let gens = polys(&["z1^3 - 2*z1*z2", "z1^2*z2 - 2*z2^2 + z1", "z3^2 - z1*z3"], 3);
        let opts = BuchbergerOptions {
            step_budget: Some(3),
            ..Default::default()
        };
        assert_eq!(
            buchberger_with(&gens, &MonomialOrder::DegRevLex, &opts).unwrap_err(),
            Error::StepBudgetExceeded(3)
        );
    }

    #[test]
    fn empty_generators_rejected() {
        let none: Vec<MultiPoly<Rational>> = vec![];
        assert_eq!(
            buchberger(&none, &MonomialOrder::DegRevLex).unwrap_err(),
            Error::EmptyGenerators
        );
    }

    fn truncated(t: u32) -> BuchbergerOptions {
        BuchbergerOptions {
            truncate_degree: Some(t),
            ..Default::default()
        }
    }

    #[test]
    fn truncation_matches_adding_the_power_of_the_maximal_ideal() {
        let src = ["z1^3 - 2*z1*z2 + z2", "z1^2*z2 - 2*z2^2 + z1"];
        let mut with_power = polys(&src, 2);
        with_power.extend(Monomial::all_of_degree(2, 4).into_iter().map(|m| MultiPoly::monomial(2, m, Rational::from_integer(1.into()))));
        let direct = buchberger(&with_power, &MonomialOrder::DegRevLex).unwrap();
        let cut = buchberger_with(&polys(&src, 2), &MonomialOrder::DegRevLex, &truncated(4)).unwrap();
        assert_eq!(direct, cut);
    }

    #[test]
    fn local_order_sees_only_the_origin() {
        // Zeros at (0, 0) and (1, 0); only the first is local.
        let gens = polys(&["z1 - z1^2", "z2"], 2);
        let gb = buchberger_with(&gens, &MonomialOrder::NegDegRevLex, &truncated(3)).unwrap();
        let standard: Vec<_> = (0..3)
            .flat_map(|d| Monomial::all_of_degree(2, d))
            .filter(|m| gb.is_standard(m))
            .collect();
        assert_eq!(standard, vec![Monomial::one()]);
        assert!(gb.contains(&parse_poly("z1", 2).unwrap()).unwrap());
    }

    #[test]
    fn local_length_of_a_tangency() {
        // y = x^2 meets y = 0 with multiplicity 2 at the origin; y = x^2 - x adds a
        // transverse point at x = 1 that must not count.
        let gens = polys(&["z2 - z1^2 + z1^3", "z2"], 2);
        let gb = buchberger_with(&gens, &MonomialOrder::NegDegRevLex, &truncated(6)).unwrap();
        let standard = (0..6)
            .flat_map(|d| Monomial::all_of_degree(2, d))
            .filter(|m| gb.is_standard(m))
            .count();
        assert_eq!(standard, 2);
    }

    #[test]
    fn local_order_needs_truncation() {
        let gens = polys(&["z1"], 1);
        assert_eq!(
            buchberger(&gens, &MonomialOrder::NegDegRevLex).unwrap_err(),
            Error::LocalOrderWithoutTruncation
        );
    }
}
