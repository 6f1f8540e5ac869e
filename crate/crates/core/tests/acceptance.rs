//! End-to-end acceptance checks. Runs without the libtest harness and prints
//! one PASS/FAIL line per criterion. All comparisons are exact.

mod common;

use std::time::Instant;

use common::*;
use greenlimit::analysis::{run_preset, run_search_stabilization, preset_config, Verdict};
use greenlimit::descriptor::{descriptor_from_multiplicity, render};
use greenlimit::family::{flat_limit, flat_limit_checked, generic_colength, limit_tower, membership_in_limit};
use greenlimit::ideal::Ideal;
use greenlimit::multiplicity::{graded_volume, hs_multiplicity, MultiplicityOptions};
use greenlimit::poly::{Monomial, MultiPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn same_ideal(a: &Ideal<Rational>, b: &Ideal<Rational>) -> bool {
    a.contains_ideal(b).unwrap() && b.contains_ideal(a).unwrap()
}

fn generic_three_points() -> Outcome {
    let fam = family(&[&["0", "0"], &["e", "0"], &["0", "e"]]);
    let i1 = flat_limit(&fam).map_err(|e| e.to_string())?;
    let m2 = ideal(&["z1^2", "z1*z2", "z2^2"], 2);
    check!(i1.groebner().elements() == m2.groebner().elements(), "I_(1) = {:?}", i1.generators());
    let i2 = flat_limit(&fam.power(2)).map_err(|e| e.to_string())?;
    let expected = Ideal::origin(2)
        .power(4)
        .sum(&ideal(&["z1*z2*(z1+z2)"], 2))
        .unwrap();
    check!(i2.groebner().elements() == expected.groebner().elements(), "I_(2) differs");
    let lengths = [i1.colength().unwrap(), i2.colength().unwrap()];
    check!(lengths == [3, 9] && lengths == [binomial(2, 2) * 3, binomial(3, 2) * 3], "lengths {lengths:?}");
    let e2 = hs_multiplicity(&i2).unwrap().multiplicity;
    check!(e2 == 12, "e(I_(2)) = {e2}");
    let r = run_preset("generic-3pt", Some(2)).unwrap();
    check!(r.verdict == Verdict::StabilizedAt { p: 2 }, "verdict {}", r.verdict);
    let mass = &r.descriptor.as_ref().unwrap().mass;
    check!(mass == "3", "mass {mass}");
    Ok(format!("l = {lengths:?}, e(I_(2)) = {e2}, verdict {}, mass {mass}", r.verdict))
}

fn render_items(s: &str) -> Option<(String, Vec<String>)> {
    let open = s.find("max(")?;
    let close = s.rfind(')')?;
    let mut items: Vec<String> = s[open + 4..close].split(", ").map(str::to_string).collect();
    items.sort();
    Some((s[..open].to_string() + &s[close..], items))
}

fn degenerate_three_points() -> Outcome {
    let fam = family(&[&["0", "0"], &["e^2", "0"], &["0", "e"]]);
    let i2 = flat_limit(&fam.power(2)).unwrap();
    check!(i2.is_monomial(), "I_(2) is not monomial");
    check!(i2.contains(&poly("z1^2*z2", 2)).unwrap(), "z1^2 z2 not in I_(2)");
    check!(i2.contains_ideal(&Ideal::origin(2).power(4)).unwrap(), "m^4 not in I_(2)");
    let e2 = hs_multiplicity(&i2).unwrap().multiplicity;
    check!(e2 == 12, "e(I_(2)) = {e2}");
    let d = descriptor_from_multiplicity(&i2, 2, e2).unwrap();
    let got = render(&d);
    let want = "½·log max(|z1⁴|, |z1²z2|, |z2⁴|) + O(1)";
    check!(render_items(&got) == render_items(want), "rendered {got}");
    let r = run_preset("degenerate-3pt", Some(2)).unwrap();
    check!(r.verdict == Verdict::StabilizedAt { p: 2 }, "verdict {}", r.verdict);
    Ok(format!("e(I_(2)) = {e2}, {got}"))
}

fn dqht_three_points() -> Outcome {
    let cfg = preset_config("dqht-3pt", Some(2)).unwrap();
    let (fam, _) = cfg.family().unwrap();
    check!(membership_in_limit(&poly("z2^3", 2), &fam, 2).unwrap(), "z2^3 not in I_(2)");
    let r = run_preset("dqht-3pt", Some(2)).unwrap();
    check!(r.verdict == Verdict::StabilizedAt { p: 2 }, "verdict {}", r.verdict);
    let d = r.descriptor.unwrap();
    check!(d.rendering == "max(2·log|z1|, (3/2)·log|z2|) + O(1)", "rendered {}", d.rendering);
    check!(d.mass == "3", "mass {}", d.mass);
    Ok(format!("{}, mass {}", d.rendering, d.mass))
}

fn four_point_square() -> Outcome {
    let fam = family(&[&["0", "0"], &["e", "0"], &["0", "e"], &["e", "e"]]);
    let i1 = flat_limit(&fam).unwrap();
    check!(same_ideal(&i1, &ideal(&["z1^2", "z2^2"], 2)), "I_(1) = {:?}", i1.generators());
    let m = hs_multiplicity(&i1).unwrap();
    check!(m.length == 4 && m.multiplicity == 4, "l = {}, e = {}", m.length, m.multiplicity);
    let r = run_preset("4pt-square", None).unwrap();
    check!(r.verdict == Verdict::CompleteIntersection, "verdict {}", r.verdict);
    Ok(format!("l = e = 4, verdict {}", r.verdict))
}

fn two_points() -> Outcome {
    let fam = family(&[&["0", "0"], &["e", "0"]]);
    let i1 = flat_limit(&fam).unwrap();
    check!(same_ideal(&i1, &ideal(&["z2", "z1^2"], 2)), "I_(1) = {:?}", i1.generators());
    let m = hs_multiplicity(&i1).unwrap();
    check!(m.length == 2 && m.multiplicity == 2, "l = {}, e = {}", m.length, m.multiplicity);
    let r = run_preset("two-point", None).unwrap();
    check!(r.verdict == Verdict::CompleteIntersection, "verdict {}", r.verdict);
    Ok("l = e = 2, complete intersection".into())
}

fn admissible_exponents(vars: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for m in Monomial::all_of_degree(vars, 2 * k) {
        let e = m.exponents(vars);
        if e.iter().all(|&x| x <= k) {
            out.push(e);
        }
    }
    out
}

fn simplex_two() -> Outcome {
    let fam = family(&[&["0", "0"], &["e", "0"], &["0", "e"]]);
    check!(
        membership_in_limit(&poly("(z1+z2)*z1*z2", 2), &fam, 2).unwrap(),
        "(z1+z2) z1 z2 not in I_(2)"
    );
    for vars in 3..=4usize {
        let pairs: Vec<Vec<u32>> = (0..vars)
            .flat_map(|i| {
                (i + 1..vars).map(move |j| {
                    let mut e = vec![0; vars];
                    e[i] = 1;
                    e[j] = 1;
                    e
                })
            })
            .collect();
        let base = Ideal::<Rational>::monomial(vars, &pairs);
        for k in 1..=3 {
            let rhs = Ideal::<Rational>::monomial(vars, &admissible_exponents(vars, k));
            check!(same_ideal(&base.power(k), &rhs), "pair products, {vars} variables, k = {k}");
        }
    }
    let bezout = ideal(&["z1^4+z2^4", "z1*z2*(z1+z2)"], 2);
    let l = bezout.colength().unwrap();
    check!(l == 12, "colength {l}");
    Ok("membership, pair-product powers for 3 and 4 variables, colength 12".into())
}

const SIMPLEX_N3_MULTIPLICITIES: [u64; 6] = [8, 33, 112, 264, 505, 864];
const SIMPLEX_N3_FIRST_STABILIZING: u32 = 6;

fn simplex_three() -> Outcome {
    let rows: &[&[&str]] = &[&["0", "0", "0"], &["e", "0", "0"], &["0", "e", "0"], &["0", "0", "e"]];
    let fam = family(rows);
    check!(
        membership_in_limit(&poly("(z1+z2+z3)*z1*z2*z3", 3), &fam, 3).unwrap(),
        "(z1+z2+z3) z1 z2 z3 not in I_(3)"
    );
    let cfg = preset_config("simplex-n3", Some(6)).unwrap();
    let s = run_search_stabilization(&cfg).unwrap();
    check!(s.multiplicities == SIMPLEX_N3_MULTIPLICITIES, "e-sequence {:?}", s.multiplicities);
    check!(s.first_stabilizing == Some(SIMPLEX_N3_FIRST_STABILIZING), "first p {:?}", s.first_stabilizing);
    check!(6 % SIMPLEX_N3_FIRST_STABILIZING == 0, "first p does not divide 6");
    Ok(format!("e = {:?}, first stabilizing p = 6", s.multiplicities))
}

fn property_suites() -> Outcome {
    let opts = MultiplicityOptions::default();
    let mut checked = 0usize;
    for (name, rows) in PRESET_ROWS {
        let fam = family(rows);
        let n = fam.dimension();
        let p_max = if n == 3 { 3 } else { 4 };
        let tower = limit_tower(&fam, p_max).unwrap();
        check!(tower.check_graded_inclusion().is_ok(), "{name}: graded inclusion");
        let (bounds, reports) = graded_volume(&tower, &opts).unwrap();
        check!(bounds.is_monotone_on_multiples(), "{name}: volume estimator not monotone");
        for (i, r) in reports.iter().enumerate() {
            let p = i as u32 + 1;
            let l = tower.limit(p);
            check!(r.multiplicity >= r.length, "{name}: e < l at p = {p}");
            check!(l.colength().unwrap() == tower.generic_length(p), "{name}: length jump at p = {p}");
            check!(macaulay_colength(l.generators(), n) == r.length, "{name}: Macaulay colength at p = {p}");
            for g in l.groebner().elements() {
                check!(macaulay_contains(l.generators(), n, g), "{name}: Macaulay membership at p = {p}");
            }
            for m in l.standard_monomials().unwrap() {
                let f = MultiPoly::monomial(n, m, Rational::from_integer(1.into()));
                check!(!macaulay_contains(l.generators(), n, &f), "{name}: standard monomial inside at p = {p}");
            }
            checked += 1;
        }
    }
    let small: [(&[&str], usize); 5] = [
        (&["z1", "z2"], 2),
        (&["z1^2", "z2^3"], 2),
        (&["z1^2", "z1*z2", "z2^3"], 2),
        (&["z1^2+z2^3", "z1*z2"], 2),
        (&["z1", "z2^2", "z3"], 3),
    ];
    for (src, n) in small {
        let i = ideal(src, n);
        let e = hs_multiplicity(&i).unwrap().multiplicity;
        for k in 2..=3u32 {
            let ek = hs_multiplicity(&i.power(k)).unwrap().multiplicity;
            check!(ek == (k as u64).pow(n as u32) * e, "e(I^{k}) = {ek} for {src:?}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..24 {
        let graded = i < 16;
        let (n, count, p_max) = if graded {
            (rng.gen_range(1..=3), rng.gen_range(1..=4), 3)
        } else {
            (rng.gen_range(1..=2), rng.gen_range(1..=3), 2)
        };
        let pf = if graded {
            random_graded_points(&mut rng, n, count)
        } else {
            random_colliding_points(&mut rng, n, count)
        };
        let fam = greenlimit::family::family_from_points(&pf).unwrap();
        for p in 1..=p_max {
            let power = fam.power(p);
            let expected = binomial((p as usize + n - 1) as u64, n as u64) * count as u64;
            if n == 1 || p == 1 {
                check!(generic_colength(&power).unwrap() == expected, "generic length for {count} points in {n} variables");
            }
            let fl = flat_limit_checked(&power, fam.grading().as_deref()).unwrap();
            check!(fl.ideal.colength().unwrap() == expected, "limit length for {count} points in {n} variables");
            check!(fl.generic_length == expected, "certified generic length for {count} points in {n} variables");
        }
    }
    Ok(format!("{checked} tower levels, 5 power laws, 24 random families"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("generic three points", generic_three_points),
        ("degenerate three points", degenerate_three_points),
        ("tangent three points", dqht_three_points),
        ("four-point square", four_point_square),
        ("two points", two_points),
        ("simplex in two variables", simplex_two),
        ("simplex in three variables", simplex_three),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
