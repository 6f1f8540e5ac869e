#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use greenlimit::family::{family_from_points, IdealFamily, PointFamily};
use greenlimit::ideal::Ideal;
use greenlimit::poly::{parse_eps_scalar, parse_poly, EpsPoly, MultiPoly, Rational};
use num_traits::Zero;
use rand::Rng;

pub fn ideal(src: &[&str], n: usize) -> Ideal<Rational> {
    Ideal::new(n, src.iter().map(|s| parse_poly(s, n).unwrap()).collect()).unwrap()
}

pub fn poly(src: &str, n: usize) -> MultiPoly<Rational> {
    parse_poly(src, n).unwrap()
}

pub fn point_family(rows: &[&[&str]]) -> PointFamily {
    PointFamily::new(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_eps_scalar(s).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

pub fn family(rows: &[&[&str]]) -> IdealFamily {
    family_from_points(&point_family(rows)).unwrap()
}

pub const PRESET_ROWS: [(&str, &[&[&str]]); 7] = [
    ("two-point", &[&["0", "0"], &["e", "0"]]),
    ("generic-3pt", &[&["0", "0"], &["e", "0"], &["0", "e"]]),
    ("degenerate-3pt", &[&["0", "0"], &["e^2", "0"], &["0", "e"]]),
    ("dqht-3pt", &[&["0", "0"], &["e^2", "0"], &["e^2/2", "e^3/2"]]),
    ("4pt-square", &[&["0", "0"], &["e", "0"], &["0", "e"], &["e", "e"]]),
    ("simplex-n2", &[&["0", "0"], &["e", "0"], &["0", "e"]]),
    (
        "simplex-n3",
        &[&["0", "0", "0"], &["e", "0", "0"], &["0", "e", "0"], &["0", "0", "e"]],
    ),
];

/// `N` distinct points in `n` variables with coordinates `a e + b e^2`.
pub fn random_colliding_points(rng: &mut impl Rng, n: usize, count: usize) -> PointFamily {
    loop {
        let pts: Vec<Vec<EpsPoly>> = (0..count)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let a = rng.gen_range(-3i64..=3);
                        let b = rng.gen_range(-2i64..=2);
                        EpsPoly::new(vec![Rational::zero(), Rational::from_integer(a.into()), Rational::from_integer(b.into())])
                    })
                    .collect()
            })
            .collect();
        if let Ok(pf) = PointFamily::new(pts) {
            return pf;
        }
    }
}

/// Colliding points `a_i e^(w_i)` with per-variable weights `w_i` in {1, 2}, so
/// the family is weighted homogeneous.
pub fn random_graded_points(rng: &mut impl Rng, n: usize, count: usize) -> PointFamily {
    let weights: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    loop {
        let pts: Vec<Vec<EpsPoly>> = (0..count)
            .map(|_| {
                weights
                    .iter()
                    .map(|&w| {
                        let mut c = vec![Rational::zero(); w + 1];
                        c[w] = Rational::from_integer(rng.gen_range(-3i64..=3).into());
                        EpsPoly::new(c)
                    })
                    .collect()
            })
            .collect();
        if let Ok(pf) = PointFamily::new(pts) {
            return pf;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent vectors of all monomials of degree `< d` in `n` variables.
fn monomials_below(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..d.saturating_sub(used) {
                let mut v = e.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Row space of the truncated Macaulay matrix of an ideal: all `x^a g mod m^d`.
struct Macaulay {
    columns: HashMap<Vec<u32>, usize>,
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Macaulay {
    fn new(gens: &[MultiPoly<Rational>], n: usize, d: u32) -> Self {
        let monos = monomials_below(n, d);
        let columns: HashMap<Vec<u32>, usize> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mac = Macaulay {
            columns,
            pivots: BTreeMap::new(),
        };
        for g in gens {
            let terms: Vec<(Vec<u32>, Rational)> =
                g.terms().iter().map(|(m, c)| (m.exponents(n), c.clone())).collect();
            for shift in &monos {
                let row = mac.row(terms.iter().map(|(e, c)| {
                    (e.iter().zip(shift).map(|(a, b)| a + b).collect::<Vec<u32>>(), c.clone())
                }));
                mac.insert(row);
            }
        }
        mac
    }

    fn row(&self, terms: impl Iterator<Item = (Vec<u32>, Rational)>) -> BTreeMap<usize, Rational> {
        let mut row = BTreeMap::new();
        for (e, c) in terms {
            if let Some(&i) = self.columns.get(&e) {
                *row.entry(i).or_insert_with(Rational::zero) += c;
            }
        }
        row.retain(|_, c| !c.is_zero());
        row
    }

    fn reduce(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        while let Some((&lead, c)) = row.iter().find(|(i, _)| self.pivots.contains_key(i)) {
            let c = c.clone();
            for (j, v) in &self.pivots[&lead] {
                *row.entry(*j).or_insert_with(Rational::zero) -= &c * v;
            }
            row.retain(|_, c| !c.is_zero());
        }
        row
    }

    fn insert(&mut self, row: BTreeMap<usize, Rational>) {
        let row = self.reduce(row);
        let Some((&lead, c)) = row.iter().next() else {
            return;
        };
        let inv = c.recip();
        let row: BTreeMap<usize, Rational> = row.into_iter().map(|(j, v)| (j, v * &inv)).collect();
        for other in self.pivots.values_mut() {
            if let Some(f) = other.get(&lead).cloned() {
                for (j, v) in &row {
                    *other.entry(*j).or_insert_with(Rational::zero) -= &f * v;
                }
                other.retain(|_, c| !c.is_zero());
            }
        }
        self.pivots.insert(lead, row);
    }

    fn codimension(&self) -> u64 {
        (self.columns.len() - self.pivots.len()) as u64
    }
}

/// Stable truncation degree and the Macaulay matrix there, for an ideal
/// supported only at the origin.
fn stable_macaulay(gens: &[MultiPoly<Rational>], n: usize) -> (u32, Macaulay) {
    let mut d = 1;
    let mut prev = Macaulay::new(gens, n, d);
    loop {
        let next = Macaulay::new(gens, n, d + 1);
        if next.codimension() == prev.codimension() {
            return (d, prev);
        }
        assert!(d < 40, "no stable truncation below degree 40");
        prev = next;
        d += 1;
    }
}

/// Colength of an origin-supported ideal by linear algebra in `R / m^d`.
pub fn macaulay_colength(gens: &[MultiPoly<Rational>], n: usize) -> u64 {
    stable_macaulay(gens, n).1.codimension()
}

/// Membership in an origin-supported ideal by linear algebra in `R / m^d`.
pub fn macaulay_contains(gens: &[MultiPoly<Rational>], n: usize, f: &MultiPoly<Rational>) -> bool {
    let (_, mac) = stable_macaulay(gens, n);
    let row = mac.row(f.terms().iter().map(|(m, c)| (m.exponents(n), c.clone())));
    mac.reduce(row).is_empty()
}

/// Whether `k v` is divisible by some product of `k` generators, for some `k <= k_max`.
pub fn lattice_in_closure(gens: &[Vec<u32>], v: &[u32], k_max: u32) -> bool {
    let mut sums: Vec<Vec<u32>> = vec![vec![0; v.len()]];
    for k in 1..=k_max {
        let mut next: Vec<Vec<u32>> = Vec::new();
        for s in &sums {
            for g in gens {
                let t: Vec<u32> = s.iter().zip(g).map(|(a, b)| a + b).collect();
                if !next.contains(&t) {
                    next.push(t);
                }
            }
        }
        sums = next;
        if sums
            .iter()
            .any(|s| s.iter().zip(v).all(|(a, b)| *a <= k * b))
        {
            return true;
        }
    }
    false
}
