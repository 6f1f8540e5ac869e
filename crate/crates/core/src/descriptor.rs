//! Finite presentations of Green-function singularities: scaled generator
//! lists, residual Monge-Ampere masses and Newton polyhedra of monomial ideals.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::multiplicity::{hs_multiplicity_with, MultiplicityOptions};
use crate::poly::{Field, Monomial, MonomialOrder, MultiPoly, Rational, Ring};
use crate::staircase::MonomialIdeal;

/// `(1/p) log max |g_i| + O(1)` for generators `g_i` of `I_(p)`, with its mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityDescriptor {
    pub scale: u32,
    pub nvars: usize,
    /// Reduced degrevlex basis.
    pub generators: Vec<MultiPoly<Rational>>,
    /// `p^-n e(I)`
    pub mass: Rational,
    pub multiplicity: u64,
}

impl SingularityDescriptor {
    pub fn ideal(&self) -> Ideal<Rational> {
        Ideal::new(self.nvars, self.generators.clone()).expect("same ring")
    }
}

/// Descriptor of `I` read at scale `p`.
pub fn descriptor(ideal: &Ideal<Rational>, p: u32) -> Result<SingularityDescriptor> {
    descriptor_with(ideal, p, &MultiplicityOptions::default())
}

pub fn descriptor_with(
    ideal: &Ideal<Rational>,
    p: u32,
    opts: &MultiplicityOptions,
) -> Result<SingularityDescriptor> {
    check_origin(ideal, p)?;
    let e = hs_multiplicity_with(ideal, opts)?.multiplicity;
    descriptor_from_multiplicity(ideal, p, e)
}

/// Descriptor with a multiplicity computed elsewhere.
pub fn descriptor_from_multiplicity(
    ideal: &Ideal<Rational>,
    p: u32,
    multiplicity: u64,
) -> Result<SingularityDescriptor> {
    check_origin(ideal, p)?;
    let n = ideal.nvars();
    let scale = Rational::from_int((p as i64).pow(n as u32));
    Ok(SingularityDescriptor {
        scale: p,
        nvars: n,
        generators: ideal.groebner().elements().to_vec(),
        mass: Rational::from_int(multiplicity as i64) / scale,
        multiplicity,
    })
}

fn check_origin(ideal: &Ideal<Rational>, p: u32) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidConfig("scale must be positive".into()));
    }
    if !ideal.is_supported_at_origin() {
        return Err(Error::NotOriginSupported);
    }
    Ok(())
}

/// Minimal exponents of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonStaircase {
    pub nvars: usize,
    pub minimal_exponents: Vec<Vec<u32>>,
}

pub fn newton_staircase(ideal: &Ideal<Rational>) -> Result<NewtonStaircase> {
    let m = MonomialIdeal::from_ideal(ideal)?;
    let mut minimal_exponents = m.exponents();
    minimal_exponents.sort_by(|a, b| b.cmp(a));
    Ok(NewtonStaircase {
        nvars: m.nvars(),
        minimal_exponents,
    })
}

impl NewtonStaircase {
    fn points(&self) -> Vec<Vec<Rational>> {
        self.minimal_exponents
            .iter()
            .map(|e| e.iter().map(|&x| Rational::from_int(x as i64)).collect())
            .collect()
    }

    /// Whether `v` lies in the convex hull of the exponents plus the positive orthant.
    pub fn polyhedron_contains(&self, v: &[Rational]) -> Result<bool> {
        if self.nvars > 4 {
            return Err(Error::UnsupportedDimension(self.nvars));
        }
        if v.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: v.len(),
            });
        }
        Ok(in_newton_polyhedron(&self.points(), v))
    }

    /// Exponents that are vertices of the Newton polyhedron.
    pub fn vertices(&self) -> Result<Vec<Vec<u32>>> {
        let points = self.points();
        let mut out = Vec::new();
        for (i, e) in self.minimal_exponents.iter().enumerate() {
            let others: Vec<Vec<Rational>> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if self.nvars > 4 {
                return Err(Error::UnsupportedDimension(self.nvars));
            }
            if others.is_empty() || !in_newton_polyhedron(&others, &points[i]) {
                out.push(e.clone());
            }
        }
        Ok(out)
    }
}

/// Feasibility of `sum l_j p_j <= v`, `sum l_j = 1`, `l >= 0` by phase-one
/// simplex over the rationals with Bland's rule.
fn in_newton_polyhedron(points: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().any(|x| x.is_negative()) || points.is_empty() {
        return false;
    }
    let n = v.len();
    let m = points.len();
    let rows = n + 1;
    // Columns: m weights, n slacks, `rows` artificials, right-hand side.
    let cols = m + n + rows;
    let mut t = vec![vec![Rational::zero(); cols + 1]; rows];
    for i in 0..n {
        for (j, p) in points.iter().enumerate() {
            t[i][j] = p[i].clone();
        }
        t[i][m + i] = Rational::one();
        t[i][cols] = v[i].clone();
    }
    for x in &mut t[n][..m] {
        *x = Rational::one();
    }
    t[n][cols] = Rational::one();
    for (r, row) in t.iter_mut().enumerate() {
        row[m + n + r] = Rational::one();
    }
    let mut basis: Vec<usize> = (0..rows).map(|r| m + n + r).collect();
    let mut obj = vec![Rational::zero(); cols + 1];
    for row in &t {
        for j in 0..m + n {
            obj[j] -= &row[j];
        }
        obj[cols] -= &row[cols];
    }
    while let Some(j) = (0..cols).find(|&j| obj[j].is_negative()) {
        let mut pivot: Option<(usize, Rational)> = None;
        for (r, row) in t.iter().enumerate() {
            if !row[j].is_positive() {
                continue;
            }
            let ratio = &row[cols] / &row[j];
            let better = match &pivot {
                None => true,
                Some((pr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*pr]),
            };
            if better {
                pivot = Some((r, ratio));
            }
        }
        let Some((r, _)) = pivot else {
            break;
        };
        let inv = t[r][j].inv();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[r].clone();
        for (k, row) in t.iter_mut().enumerate() {
            if k != r && !row[j].is_zero() {
                let f = row[j].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        let f = obj[j].clone();
        for (x, y) in obj.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
        basis[r] = j;
    }
    obj[cols].is_zero()
}

/// Whether two monomial descriptors agree up to `O(1)`, i.e. whether their
/// Newton polyhedra scaled by `1/p` coincide.
pub fn descriptors_equivalent_monomial(a: &SingularityDescriptor, b: &SingularityDescriptor) -> Result<bool> {
    let sa = newton_staircase(&a.ideal())?;
    let sb = newton_staircase(&b.ideal())?;
    Ok(scaled_inside(&sa, a.scale, &sb, b.scale)? && scaled_inside(&sb, b.scale, &sa, a.scale)?)
}

/// `Γ(a)/pa ⊆ Γ(b)/pb`, checked on the generators of `a`.
fn scaled_inside(a: &NewtonStaircase, pa: u32, b: &NewtonStaircase, pb: u32) -> Result<bool> {
    let factor = Rational::new((pb as i64).into(), (pa as i64).into());
    for e in &a.minimal_exponents {
        let v: Vec<Rational> = e.iter().map(|&x| Rational::from_int(x as i64) * &factor).collect();
        if !b.polyhedron_contains(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `a_i` with `z_i^a_i` in the ideal.
pub fn pure_power_exponents(ideal: &Ideal<Rational>) -> Result<Vec<u32>> {
    let n = ideal.nvars();
    let bounds = ideal.pure_power_bounds()?;
    let limit = ideal.colength()?.max(1) as u32;
    (0..n)
        .map(|i| {
            (bounds[i]..=limit.max(bounds[i]))
                .find(|&a| {
                    ideal
                        .contains(&MultiPoly::monomial(n, Monomial::pure_power(i, a), Rational::one()))
                        .unwrap_or(false)
                })
                .ok_or(Error::NotOriginSupported)
        })
        .collect()
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(k: u32) -> String {
    k.to_string()
        .chars()
        .map(|c| SUPERSCRIPTS[c.to_digit(10).expect("digit") as usize])
        .collect()
}

fn render_monomial(m: &Monomial, n: usize) -> String {
    let mut s = String::new();
    for i in 0..n {
        match m.exp(i) {
            0 => {}
            1 => s.push_str(&format!("z{}", i + 1)),
            e => s.push_str(&format!("z{}{}", i + 1, superscript(e))),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn render_poly(f: &MultiPoly<Rational>) -> String {
    let n = f.nvars();
    let order = MonomialOrder::DegRevLex;
    let g = f.primitive(&order);
    let mut terms: Vec<&(Monomial, Rational)> = g.terms().iter().collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut s = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        if k == 0 {
            if negative {
                s.push('-');
            }
        } else {
            s.push_str(if negative { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = render_monomial(m, n);
        if a.is_one() {
            s.push_str(&mono);
        } else if m.degree() == 0 {
            s.push_str(&a.to_string());
        } else {
            s.push_str(&format!("{a}{mono}"));
        }
    }
    s
}

/// Coefficient in front of `log`: empty for one, a vulgar fraction for small
/// unit fractions, otherwise an integer or `(a/b)`.
fn render_factor(c: &Rational) -> String {
    const UNIT: [&str; 9] = ["½", "⅓", "¼", "⅕", "⅙", "⅐", "⅛", "⅑", "⅒"];
    if c.is_one() {
        return String::new();
    }
    let dot = |s: String| format!("{s}·");
    if c.is_integer() {
        return dot(c.to_string());
    }
    if *c.numer() == 1.into() {
        if let Ok(d) = usize::try_from(c.denom().clone()) {
            if (2..=10).contains(&d) {
                return dot(UNIT[d - 2].to_string());
            }
        }
    }
    dot(format!("({}/{})", c.numer(), c.denom()))
}

fn log_max(factor: &Rational, items: &[String]) -> String {
    let prefix = render_factor(factor);
    if items.len() == 1 {
        format!("{prefix}log|{}| + O(1)", items[0])
    } else {
        format!("{prefix}log max(|{}|) + O(1)", items.join("|, |"))
    }
}

/// Human-readable form `(1/p)·log max(|g_1|, ..., |g_m|) + O(1)`.
///
/// When `e(I)` equals the product of the pure-power exponents `a_i`, the
/// powers `z_i^a_i` generate a reduction of `I` and the descriptor collapses to
/// `max((a_i/p)·log|z_i|)`. Otherwise monomial ideals list their Newton
/// vertices and other ideals their minimal generators.
pub fn render(d: &SingularityDescriptor) -> String {
    let ideal = d.ideal();
    let n = d.nvars;
    let p = Rational::from_int(d.scale as i64);
    if let Ok(a) = pure_power_exponents(&ideal) {
        let product: u64 = a.iter().map(|&x| x as u64).product();
        if product == d.multiplicity {
            let weights: Vec<Rational> = a.iter().map(|&x| Rational::from_int(x as i64) / &p).collect();
            let vars: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
            if weights.iter().all(|w| *w == weights[0]) {
                return log_max(&weights[0], &vars);
            }
            let parts: Vec<String> = weights
                .iter()
                .zip(&vars)
                .map(|(w, v)| format!("{}log|{v}|", render_factor(w)))
                .collect();
            return format!("max({}) + O(1)", parts.join(", "));
        }
    }
    let scale = Rational::one() / &p;
    if let Ok(staircase) = newton_staircase(&ideal) {
        if let Ok(vertices) = staircase.vertices() {
            let items: Vec<String> = vertices
                .iter()
                .map(|e| render_monomial(&Monomial::from_exponents(e), n))
                .collect();
            return log_max(&scale, &items);
        }
    }
    let gens = ideal.minimal_generators().unwrap_or_else(|_| d.generators.clone());
    let items: Vec<String> = gens.iter().map(render_poly).collect();
    log_max(&scale, &items)
}
