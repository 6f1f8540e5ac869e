//! Monomial ideals as antichains of exponent vectors.

use crate::error::{Error, Result};
use crate::ideal::{staircase, Ideal};
use crate::poly::{Field, Monomial};

/// A monomial ideal stored by its minimal generators, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), *m));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort_by_key(|m| m.exponents(crate::poly::MAX_VARS));
    out
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    pub fn from_exponents(nvars: usize, exps: &[Vec<u32>]) -> Self {
        MonomialIdeal::new(nvars, exps.iter().map(|e| Monomial::from_exponents(e)).collect())
    }

    /// The monomial ideal generated by the reduced basis, if that basis is monomial.
    pub fn from_ideal<C: Field>(ideal: &Ideal<C>) -> Result<Self> {
        let gb = ideal.groebner();
        if !gb.elements().iter().all(|g| g.is_monomial()) {
            return Err(Error::NotMonomial);
        }
        Ok(MonomialIdeal::new(ideal.nvars(), gb.leading_monomials().to_vec()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn exponents(&self) -> Vec<Vec<u32>> {
        self.gens.iter().map(|m| m.exponents(self.nvars)).collect()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn power(&self, k: u32) -> MonomialIdeal {
        assert!(k >= 1, "power must be positive");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Smallest pure-power exponent for each variable, if every variable has one.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let mut bounds = vec![u32::MAX; self.nvars];
        for g in &self.gens {
            if let Some(i) = g.pure_power_var() {
                bounds[i] = bounds[i].min(g.exp(i));
            }
        }
        bounds.iter().all(|&b| b != u32::MAX).then_some(bounds)
    }

    /// Number of monomials outside the ideal.
    pub fn colength(&self) -> Result<u64> {
        if self.gens.iter().any(|g| g.degree() == 0) {
            return Ok(0);
        }
        let bounds = self.pure_power_bounds().ok_or(Error::NotZeroDimensional)?;
        Ok(staircase(self.nvars, &bounds, |m| !self.contains(m)).len() as u64)
    }

    pub fn to_ideal<C: Field>(&self) -> Ideal<C> {
        Ideal::monomial(self.nvars, &self.exponents())
    }
}
