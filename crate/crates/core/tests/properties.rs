mod common;

use common::*;
use greenlimit::descriptor::{descriptor_from_multiplicity, descriptors_equivalent_monomial, newton_staircase, SingularityDescriptor};
use greenlimit::family::{flat_limit_checked, generic_colength, limit_tower};
use greenlimit::groebner::{buchberger_with, BuchbergerOptions};
use greenlimit::ideal::{point_ideal, Ideal, PointConfiguration};
use greenlimit::multiplicity::{graded_volume, hs_multiplicity, MultiplicityOptions};
use greenlimit::poly::{Monomial, MonomialOrder, MultiPoly, Rational};
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_monomial_ideal(rng: &mut impl Rng, n: usize, max_exp: u32) -> Vec<Vec<u32>> {
    let mut gens: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = rng.gen_range(1..=max_exp);
            e
        })
        .collect();
    for _ in 0..rng.gen_range(0..4) {
        gens.push((0..n).map(|_| rng.gen_range(0..=max_exp)).collect());
    }
    gens.retain(|g| g.iter().any(|&x| x > 0));
    gens
}

fn random_origin_ideal(rng: &mut impl Rng, n: usize) -> Ideal<Rational> {
    let mut gens: Vec<MultiPoly<Rational>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = rng.gen_range(2..=4);
            MultiPoly::monomial(n, Monomial::from_exponents(&e), Rational::one())
        })
        .collect();
    for _ in 0..rng.gen_range(1..3) {
        let mut f = MultiPoly::zero(n);
        for _ in 0..3 {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            if e.iter().sum::<u32>() == 0 {
                continue;
            }
            let c = Rational::from_integer(rng.gen_range(-3i64..=3).into());
            f = &f + &MultiPoly::monomial(n, Monomial::from_exponents(&e), c);
        }
        if !f.is_zero() {
            gens.push(f);
        }
    }
    Ideal::new(n, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn length_of_powers_of_graded_colliding_points(seed in any::<u64>(), n in 1usize..=3, count in 1usize..=4, p in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = family_from_pf(&random_graded_points(&mut rng, n, count));
        prop_assert!(fam.grading().is_some());
        let expected = binomial((p as usize + n - 1) as u64, n as u64) * count as u64;
        let limit = flat_limit_checked(&fam.power(p), fam.grading().as_deref()).unwrap();
        prop_assert_eq!(limit.ideal.colength().unwrap(), expected);
        prop_assert_eq!(limit.generic_length, expected);
    }

    #[test]
    fn towers_are_graded(seed in any::<u64>(), n in 1usize..=3, count in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = family_from_pf(&random_graded_points(&mut rng, n, count));
        let p_max = if n == 3 { 2 } else { 3 };
        let tower = limit_tower(&fam, p_max).unwrap();
        prop_assert!(tower.check_graded_inclusion().is_ok());
        for p in 1..=p_max {
            for q in 1..=p_max - p {
                let prod = tower.limit(p).product(tower.limit(q)).unwrap();
                prop_assert!(tower.limit(p + q).contains_ideal(&prod).unwrap());
            }
        }
    }

    #[test]
    fn multiplicity_dominates_length(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_origin_ideal(&mut rng, n);
        let r = hs_multiplicity(&ideal).unwrap();
        prop_assert!(r.multiplicity >= r.length);
        prop_assert_eq!(r.complete_intersection, r.multiplicity == r.length);
        prop_assert!(r.section_trials.iter().all(|&t| t >= r.multiplicity));
    }

    #[test]
    fn colength_agrees_with_macaulay_matrix(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_origin_ideal(&mut rng, n);
        prop_assert_eq!(ideal.colength().unwrap(), macaulay_colength(ideal.generators(), n));
    }

    #[test]
    fn truncated_basis_gives_colength_of_sum_with_power_of_m(seed in any::<u64>(), n in 1usize..=3, t in 2u32..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_origin_ideal(&mut rng, n);
        let opts = BuchbergerOptions { truncate_degree: Some(t), ..BuchbergerOptions::default() };
        let gb = buchberger_with(ideal.generators(), &MonomialOrder::DegRevLex, &opts).unwrap();
        let truncated = (0..t)
            .flat_map(|d| Monomial::all_of_degree(n, d))
            .filter(|m| gb.is_standard(m))
            .count() as u64;
        let full = ideal.sum(&Ideal::origin(n).power(t)).unwrap().colength().unwrap();
        prop_assert_eq!(truncated, full);
    }

    #[test]
    fn point_ideals_have_one_standard_monomial_per_point(seed in any::<u64>(), n in 1usize..=3, count in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts: Vec<Vec<i64>> = Vec::new();
        while pts.len() < count {
            let p: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let rows: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        let ideal = point_ideal(&PointConfiguration::from_ints(&rows).unwrap()).unwrap();
        prop_assert_eq!(ideal.colength().unwrap(), count as u64);
    }

    #[test]
    fn newton_polyhedron_matches_lattice_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_monomial_ideal(&mut rng, 2, 2);
        let ideal = Ideal::<Rational>::monomial(2, &gens);
        let np = newton_staircase(&ideal).unwrap();
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let v = [Rational::from_integer(a.into()), Rational::from_integer(b.into())];
                let inside = np.polyhedron_contains(&v).unwrap();
                prop_assert_eq!(inside, lattice_in_closure(&gens, &[a, b], 6), "{:?} at {:?}", gens, (a, b));
            }
        }
    }

    #[test]
    fn newton_polyhedron_contains_lattice_closure_in_three_variables(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_monomial_ideal(&mut rng, 3, 3);
        let ideal = Ideal::<Rational>::monomial(3, &gens);
        let np = newton_staircase(&ideal).unwrap();
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for c in 0..=3u32 {
                    if lattice_in_closure(&gens, &[a, b, c], 6) {
                        let v: Vec<Rational> = [a, b, c].iter().map(|&x| Rational::from_integer(x.into())).collect();
                        prop_assert!(np.polyhedron_contains(&v).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn volume_estimator_is_monotone_on_multiples(seed in any::<u64>(), count in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = family_from_pf(&random_graded_points(&mut rng, 2, count));
        let tower = limit_tower(&fam, 4).unwrap();
        let (bounds, reports) = graded_volume(&tower, &MultiplicityOptions::default()).unwrap();
        prop_assert!(bounds.is_monotone_on_multiples());
        for r in &reports {
            prop_assert!(r.multiplicity >= r.length);
        }
        prop_assert!(bounds.upper_bound >= Rational::from_integer((count as i64).into()));
    }
}

fn family_from_pf(pf: &greenlimit::family::PointFamily) -> greenlimit::family::IdealFamily {
    greenlimit::family::family_from_points(pf).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn length_of_powers_of_colliding_points(seed in any::<u64>(), n in 1usize..=2, count in 1usize..=3, p in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = family_from_pf(&random_colliding_points(&mut rng, n, count));
        let expected = binomial((p as usize + n - 1) as u64, n as u64) * count as u64;
        let power = fam.power(p);
        let limit = flat_limit_checked(&power, fam.grading().as_deref()).unwrap();
        prop_assert_eq!(limit.ideal.colength().unwrap(), expected);
        prop_assert_eq!(limit.generic_length, expected);
        if n == 1 || p == 1 {
            prop_assert_eq!(generic_colength(&power).unwrap(), expected);
        }
    }
}

fn monomial_descriptor(exps: &[Vec<u32>], n: usize, power: u32, scale: u32) -> SingularityDescriptor {
    let gens = exps
        .iter()
        .map(|e| MultiPoly::monomial(n, Monomial::from_exponents(e), Rational::one()))
        .collect();
    let ideal = Ideal::new(n, gens).unwrap().power(power);
    let e = hs_multiplicity(&ideal).unwrap().multiplicity;
    descriptor_from_multiplicity(&ideal, scale, e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn monomial_descriptor_equivalence_is_an_equivalence_relation(seed in any::<u64>(), s in 1u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = random_monomial_ideal(&mut rng, 2, 3);
        let second = random_monomial_ideal(&mut rng, 2, 3);
        let ds = [
            monomial_descriptor(&first, 2, 1, s),
            monomial_descriptor(&first, 2, 2, 2 * s),
            monomial_descriptor(&second, 2, 1, s),
            monomial_descriptor(&second, 2, 1, 2 * s),
        ];
        let eq = |i: usize, j: usize| descriptors_equivalent_monomial(&ds[i], &ds[j]).unwrap();
        prop_assert!(eq(0, 1));
        for i in 0..4 {
            prop_assert!(eq(i, i));
            for j in 0..4 {
                prop_assert_eq!(eq(i, j), eq(j, i));
                for k in 0..4 {
                    if eq(i, j) && eq(j, k) {
                        prop_assert!(eq(i, k));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pair_criteria_do_not_change_reduced_basis(seed in any::<u64>(), n in 1usize..=3, coprime: bool, chain: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_origin_ideal(&mut rng, n);
        let plain = BuchbergerOptions { coprime_criterion: false, chain_criterion: false, ..BuchbergerOptions::default() };
        let pruned = BuchbergerOptions { coprime_criterion: coprime, chain_criterion: chain, ..BuchbergerOptions::default() };
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let a = buchberger_with(ideal.generators(), &order, &plain).unwrap();
            let b = buchberger_with(ideal.generators(), &order, &pruned).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
