//! Hilbert–Samuel multiplicities of zero-dimensional ideals, volumes of limit
//! towers and the stabilization index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::LimitTower;
use crate::groebner::{buchberger_with, BuchbergerOptions};
use crate::ideal::Ideal;
use crate::par;
use crate::poly::{Field, Fp, Monomial, MonomialOrder, MultiPoly, Rational, Ring};
use crate::staircase::MonomialIdeal;

/// `l(I^k)` for `k = 1..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamuelTable {
    pub entries: Vec<(u32, u64)>,
}

impl SamuelTable {
    pub fn lengths(&self) -> Vec<u64> {
        self.entries.iter().map(|&(_, l)| l).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FiniteDifferences,
    GenericSections,
    CrossChecked,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::FiniteDifferences => "finite-differences",
            Method::GenericSections => "generic-sections",
            Method::CrossChecked => "cross-checked",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub length: u64,
    pub multiplicity: u64,
    pub method: Method,
    pub complete_intersection: bool,
    /// Local colengths of the accepted generic-section trials, in trial order.
    pub section_trials: Vec<u64>,
    /// Samuel lengths used by the finite-difference method.
    pub samuel: Option<SamuelTable>,
}

/// Knobs for [`hs_multiplicity_with`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityOptions {
    /// Largest power used for finite differences; `None` means `2n + 4`.
    pub k_budget: Option<u32>,
    pub trials: u32,
    pub seed: u64,
    /// Coefficients of generic sections are drawn from `[-height, height]`.
    pub height: i64,
    /// Finite differences are skipped when the predicted `l(I^(n+2))` exceeds this
    /// and generic sections are available.
    pub difference_length_limit: u64,
}

impl Default for MultiplicityOptions {
    fn default() -> Self {
        MultiplicityOptions {
            k_budget: None,
            trials: 8,
            seed: 0x6c6f_6361_6c65_6e67,
            height: 101,
            difference_length_limit: 4000,
        }
    }
}

fn length_of_power(ideal: &Ideal<Rational>, monomial: Option<&MonomialIdeal>, k: u32) -> Result<u64> {
    match monomial {
        Some(m) => m.power(k).colength(),
        None => ideal.power(k).colength(),
    }
}

/// Exact `l(I^k)` for `k = 1..=k_max`.
pub fn samuel_table(ideal: &Ideal<Rational>, k_max: u32) -> Result<SamuelTable> {
    if !ideal.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional);
    }
    let monomial = MonomialIdeal::from_ideal(ideal).ok();
    let lengths = par::map_range(k_max as usize, |i| {
        length_of_power(ideal, monomial.as_ref(), i as u32 + 1)
    });
    let mut entries = Vec::with_capacity(k_max as usize);
    for (i, l) in lengths.into_iter().enumerate() {
        entries.push((i as u32 + 1, l?));
    }
    Ok(SamuelTable { entries })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `n`-th forward difference of `values` starting at `start`.
fn nth_difference(values: &[u64], start: usize, n: usize) -> i128 {
    (0..=n)
        .map(|i| {
            let sign = if (n - i).is_multiple_of(2) { 1 } else { -1 };
            sign * binomial(n as u64, i as u64) as i128 * values[start + i] as i128
        })
        .sum()
}

/// Multiplicity from the first two agreeing `n`-th differences of `l(I^k)`.
fn finite_differences(
    ideal: &Ideal<Rational>,
    k_budget: u32,
) -> Result<(u64, SamuelTable)> {
    let n = ideal.nvars();
    let first = (n as u32 + 2).min(k_budget);
    let mut table = samuel_table(ideal, first)?;
    let monomial = MonomialIdeal::from_ideal(ideal).ok();
    loop {
        let values = table.lengths();
        for start in 0..values.len().saturating_sub(n + 1) {
            let a = nth_difference(&values, start, n);
            let b = nth_difference(&values, start + 1, n);
            if a == b && a > 0 {
                return Ok((a as u64, table));
            }
        }
        let k = table.entries.len() as u32 + 1;
        if k > k_budget {
            return Err(Error::NoStabilization(k_budget));
        }
        table
            .entries
            .push((k, length_of_power(ideal, monomial.as_ref(), k)?));
    }
}

/// Smallest `c` with `m^c ⊆ I`.
fn origin_exponent(ideal: &Ideal<Rational>) -> Result<u32> {
    let n = ideal.nvars();
    let gb = ideal.groebner();
    let top = ideal
        .standard_monomials()?
        .iter()
        .map(|m| m.degree())
        .max()
        .unwrap_or(0);
    let limit = ideal.colength()? as u32;
    for c in top + 1..=limit.max(top + 1) {
        let all_in = Monomial::all_of_degree(n, c).iter().all(|m| {
            gb.contains(&MultiPoly::monomial(n, *m, Rational::one()))
                .unwrap_or(false)
        });
        if all_in {
            return Ok(c);
        }
    }
    Err(Error::NotOriginSupported)
}

/// Length at the origin of the ideal `J` generated by `sections`, given
/// `m^c ⊆ I` and `J ⊆ I`.
///
/// A standard basis of `J + m^t` in the local degree order, computed modulo
/// `m^t`, has the tangent cone of `J + m^t` as its leading ideal. If that
/// ideal contains every monomial of some degree `D < t`, then
/// `m^D ⊆ J + m^(D+1)`, so `m^D ⊆ J` locally (Nakayama) and the local length
/// is the number of standard monomials. `t` grows in steps of `c/2` until
/// such a `D` shows up or exceeds `c n`; failure means `J` is not a reduction of `I`.
fn local_length<C: Field>(sections: &[MultiPoly<C>], c: u32) -> Result<Option<u64>> {
    let n = sections[0].nvars();
    let cap = c * n as u32 + 1;
    let mut t = (c + 2).min(cap);
    loop {
        let opts = BuchbergerOptions {
            truncate_degree: Some(t),
            ..BuchbergerOptions::default()
        };
        let gb = buchberger_with(sections, &MonomialOrder::NegDegRevLex, &opts)?;
        let corner = (0..t).find(|&d| {
            Monomial::all_of_degree(n, d)
                .iter()
                .all(|m| !gb.is_standard(m))
        });
        if let Some(d) = corner {
            let standard = (0..d)
                .flat_map(|k| Monomial::all_of_degree(n, k))
                .filter(|m| gb.is_standard(m))
                .count();
            return Ok(Some(standard as u64));
        }
        if t == cap {
            return Ok(None);
        }
        t = (t + (c / 2).max(2)).min(cap);
    }
}

/// `n` combinations of the generators with integer coefficients drawn from
/// `[-height, height]`.
fn draw_sections<C: Field>(
    gens: &[MultiPoly<C>],
    n: usize,
    rng: &mut ChaCha8Rng,
    height: i64,
) -> Vec<MultiPoly<C>> {
    (0..n)
        .map(|_| {
            let mut f = MultiPoly::zero(gens[0].nvars());
            for g in gens {
                let c = rng.gen_range(-height..=height);
                if c != 0 {
                    f = &f + &g.scale(&C::from_int(c));
                }
            }
            f
        })
        .collect()
}

/// Minimum over random trials of the local length of `n` generic elements of `I`,
/// computed in `Z/pZ` for `p = 2^61 - 1`. Each trial bounds `e(I mod p) >= e(I)`
/// from above; a generic draw attains `e(I mod p)`, which equals `e(I)` for all
/// but finitely many primes.
fn generic_sections(ideal: &Ideal<Rational>, opts: &MultiplicityOptions) -> Result<Vec<u64>> {
    let n = ideal.nvars();
    let c = origin_exponent(ideal)?;
    let mut gens: Vec<MultiPoly<Fp>> = Vec::new();
    for g in ideal.groebner().elements() {
        let mut terms = Vec::with_capacity(g.num_terms());
        for (m, x) in g.primitive(&MonomialOrder::DegRevLex).terms() {
            terms.push((*m, Fp::from_rational(x).ok_or(Error::NoGenericSection(0))?));
        }
        gens.push(MultiPoly::from_terms(n, terms));
    }
    let results = par::map_range(opts.trials as usize, |t| -> Result<Option<u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(t as u64);
        for _ in 0..4 {
            let sections = draw_sections(&gens, n, &mut rng, opts.height);
            if sections.iter().any(|s| s.is_zero()) {
                continue;
            }
            if let Some(l) = local_length(&sections, c)? {
                return Ok(Some(l));
            }
        }
        Ok(None)
    });
    let mut values = Vec::new();
    for r in results {
        if let Some(v) = r? {
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(Error::NoGenericSection(opts.trials));
    }
    Ok(values)
}

pub fn hs_multiplicity(ideal: &Ideal<Rational>) -> Result<MultiplicityReport> {
    hs_multiplicity_with(ideal, &MultiplicityOptions::default())
}

/// Multiplicity by finite differences of the Samuel function, cross-checked by
/// generic sections when `V(I)` is the origin. Finite differences are skipped
/// when the predicted size of `I^(n+2)` exceeds the configured limit.
pub fn hs_multiplicity_with(
    ideal: &Ideal<Rational>,
    opts: &MultiplicityOptions,
) -> Result<MultiplicityReport> {
    if !ideal.is_zero_dimensional() || ideal.is_unit() {
        return Err(Error::NotZeroDimensional);
    }
    let n = ideal.nvars();
    let length = ideal.colength()?;
    let k_budget = opts.k_budget.unwrap_or(2 * n as u32 + 4);
    let monomial = MonomialIdeal::from_ideal(ideal).is_ok();
    let sections = if ideal.is_supported_at_origin() {
        Some(generic_sections(ideal, opts)?)
    } else {
        None
    };
    let section_min = sections.as_ref().map(|s| *s.iter().min().expect("nonempty"));
    let predicted = section_min.map(|e| {
        let k = n as u64 + 2;
        e * k.pow(n as u32) / (1..=n as u64).product::<u64>()
    });
    let run_differences =
        monomial || section_min.is_none() || predicted.unwrap_or(0) <= opts.difference_length_limit;
    let (multiplicity, method, samuel) = if run_differences {
        let (e, table) = finite_differences(ideal, k_budget)?;
        match section_min {
            Some(s) if s != e => {
                return Err(Error::MethodDisagreement {
                    differences: e,
                    sections: s,
                })
            }
            Some(_) => (e, Method::CrossChecked, Some(table)),
            None => (e, Method::FiniteDifferences, Some(table)),
        }
    } else {
        (section_min.expect("checked"), Method::GenericSections, None)
    };
    Ok(MultiplicityReport {
        length,
        multiplicity,
        method,
        complete_intersection: multiplicity == length,
        section_trials: sections.unwrap_or_default(),
        samuel,
    })
}

/// Multiplicity of a monomial ideal from the Samuel function of its staircase.
pub fn monomial_multiplicity(ideal: &MonomialIdeal, k_budget: u32) -> Result<u64> {
    let n = ideal.nvars();
    let mut values = Vec::new();
    for k in 1..=k_budget {
        values.push(ideal.power(k).colength()?);
        if values.len() >= n + 2 {
            let s = values.len() - n - 2;
            let a = nth_difference(&values, s, n);
            if a == nth_difference(&values, s + 1, n) && a > 0 {
                return Ok(a as u64);
            }
        }
    }
    Err(Error::NoStabilization(k_budget))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeEntry {
    pub p: u32,
    pub multiplicity: u64,
    /// `p^-n e(I_(p))`
    pub normalized: Rational,
}

/// Certified upper bound on the volume of a limit tower, with the length estimator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeBounds {
    pub per_p: Vec<VolumeEntry>,
    pub upper_bound: Rational,
    /// `n! p^-n l(I_(p))`
    pub length_estimator: Vec<Rational>,
}

fn pow_rational(p: u32, n: usize) -> Rational {
    Rational::from_int((p as i64).pow(n as u32))
}

impl VolumeBounds {
    pub fn from_values(n: usize, multiplicities: &[u64], lengths: &[u64]) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::InvalidConfig("empty tower".into()));
        }
        let per_p: Vec<VolumeEntry> = multiplicities
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let p = i as u32 + 1;
                VolumeEntry {
                    p,
                    multiplicity: e,
                    normalized: Rational::from_int(e as i64) / pow_rational(p, n),
                }
            })
            .collect();
        let upper_bound = per_p
            .iter()
            .map(|v| v.normalized.clone())
            .min()
            .expect("nonempty");
        let fact: i64 = (1..=n as i64).product();
        let length_estimator = lengths
            .iter()
            .enumerate()
            .map(|(i, &l)| Rational::from_int(fact * l as i64) / pow_rational(i as u32 + 1, n))
            .collect();
        Ok(VolumeBounds {
            per_p,
            upper_bound,
            length_estimator,
        })
    }

    /// Whether `(kp)^-n e(I_(kp)) <= p^-n e(I_(p))` on every divisibility pair.
    pub fn is_monotone_on_multiples(&self) -> bool {
        self.per_p.iter().all(|a| {
            self.per_p
                .iter()
                .filter(|b| b.p % a.p == 0)
                .all(|b| b.normalized <= a.normalized)
        })
    }
}

/// Volume bounds of a tower, with the multiplicity reports for each `I_(p)`.
pub fn graded_volume(
    tower: &LimitTower,
    opts: &MultiplicityOptions,
) -> Result<(VolumeBounds, Vec<MultiplicityReport>)> {
    let reports: Vec<MultiplicityReport> = tower
        .limits
        .iter()
        .map(|l| hs_multiplicity_with(l, opts))
        .collect::<Result<_>>()?;
    let mults: Vec<u64> = reports.iter().map(|r| r.multiplicity).collect();
    let bounds = VolumeBounds::from_values(tower.dimension(), &mults, &tower.generic_lengths)?;
    Ok((bounds, reports))
}

/// Smallest `p` with `e(I_(p)) = p^n N`, given the multiplicities of the tower.
pub fn stabilization_index(tower: &LimitTower, multiplicities: &[u64], points: u64) -> Result<Option<u32>> {
    if !tower.limit(1).is_supported_at_origin() {
        return Err(Error::NotSinglePoint);
    }
    let n = tower.dimension() as u32;
    Ok(multiplicities
        .iter()
        .enumerate()
        .map(|(i, &e)| (i as u32 + 1, e))
        .find(|&(p, e)| e == (p as u64).pow(n) * points)
        .map(|(p, _)| p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{point_ideal, PointConfiguration};
    use crate::poly::parse_poly;

    fn ideal(src: &[&str], n: usize) -> Ideal<Rational> {
        Ideal::new(n, src.iter().map(|s| parse_poly(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn samuel_tables() {
        let m = Ideal::<Rational>::origin(2);
        assert_eq!(samuel_table(&m, 4).unwrap().entries, vec![(1, 1), (2, 3), (3, 6), (4, 10)]);
        let m2 = m.power(2);
        assert_eq!(samuel_table(&m2, 3).unwrap().entries, vec![(1, 3), (2, 10), (3, 21)]);
        let three = point_ideal(&PointConfiguration::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap()).unwrap();
        assert_eq!(samuel_table(&three, 3).unwrap().lengths(), vec![3, 9, 18]);
    }

    #[test]
    fn complete_intersection_square() {
        let r = hs_multiplicity(&ideal(&["z1^2", "z2^2"], 2)).unwrap();
        assert_eq!((r.length, r.multiplicity, r.complete_intersection), (4, 4, true));
        assert_eq!(r.method, Method::CrossChecked);
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = hs_multiplicity(&ideal(&["z1^2", "z1*z2", "z2^2"], 2)).unwrap();
        assert_eq!((r.length, r.multiplicity, r.complete_intersection), (3, 4, false));
        assert!(r.section_trials.iter().all(|&t| t >= 4));
    }

    #[test]
    fn generic_three_point_second_limit() {
        let i = Ideal::<Rational>::origin(2)
            .power(4)
            .sum(&ideal(&["z1*z2*(z1+z2)"], 2))
            .unwrap();
        let r = hs_multiplicity(&i).unwrap();
        assert_eq!(r.length, 9);
        assert_eq!(r.multiplicity, 12);
    }

    #[test]
    fn bezout_count() {
        let i = ideal(&["z1^4 + z2^4", "z1*z2*(z1+z2)"], 2);
        assert_eq!(i.colength().unwrap(), 12);
        let r = hs_multiplicity(&i).unwrap();
        assert!(r.complete_intersection);
    }

    #[test]
    fn multi_point_support_uses_differences_only() {
        let three = point_ideal(&PointConfiguration::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap()).unwrap();
        let r = hs_multiplicity(&three).unwrap();
        assert_eq!((r.multiplicity, r.method), (3, Method::FiniteDifferences));
        assert!(r.section_trials.is_empty());
    }

    #[test]
    fn monomial_fast_path() {
        let i = MonomialIdeal::from_exponents(2, &[vec![4, 0], vec![2, 1], vec![0, 4]]);
        assert_eq!(monomial_multiplicity(&i, 8).unwrap(), 12);
    }

    #[test]
    fn not_zero_dimensional() {
        assert_eq!(
            hs_multiplicity(&ideal(&["z1"], 2)).unwrap_err(),
            Error::NotZeroDimensional
        );
    }

    #[test]
    fn volume_table() {
        let v = VolumeBounds::from_values(2, &[4, 12], &[3, 9]).unwrap();
        assert_eq!(v.upper_bound, Rational::from_int(3));
        assert_eq!(v.per_p[0].normalized, Rational::from_int(4));
        assert_eq!(v.length_estimator, vec![Rational::from_int(6), crate::poly::ratio(9, 2)]);
        assert!(v.is_monotone_on_multiples());
        assert!(!VolumeBounds::from_values(2, &[4, 20], &[3, 9]).unwrap().is_monotone_on_multiples());
    }
}
