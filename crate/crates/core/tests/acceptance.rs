//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use alexmod::cyclo::CycloDivisor;
use alexmod::engine::{
    candidates_thm42, euler_product_solve, infinity_bound_curve, prop21_filter, thm41_filter,
    verify, CandidateSet, Claim,
};
use alexmod::links::{igamma_cone_circle, IGammaTable};
use alexmod::strata::{load, Flags, Mode};
use alexmod::{analyze, BrieskornData, Error, LaurentPoly, ObstructionReport};
use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_int_coeffs(c)
}

fn charpoly(e: &[u64]) -> LaurentPoly {
    BrieskornData::new(e.to_vec()).unwrap().charpoly()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    )
}

fn report_for(file: &str, mode: Mode) -> Result<ObstructionReport, String> {
    let spec = load(&corpus(file), mode).map_err(|e| format!("{file}: {e}"))?;
    analyze(&spec).map_err(|e| format!("{file}: {e}"))
}

fn forced(report: &ObstructionReport, i: u32) -> Option<LaurentPoly> {
    report.degree(i).and_then(|d| d.forced_value.clone())
}

fn criterion_1() -> Outcome {
    let expected = p(&[1, 1]) * p(&[1, 1]) * p(&[1, -1, 1]);
    let mut slowest = Duration::ZERO;
    let mut timed = |e: &[u64]| {
        let start = Instant::now();
        let out = charpoly(e);
        slowest = slowest.max(start.elapsed());
        out
    };
    let a = timed(&[2, 3, 3]);
    let b = timed(&[3, 3, 2]);
    ensure(a == expected, || format!("(2,3,3) gave {a}"))?;
    ensure(b == expected, || format!("(3,3,2) gave {b}"))?;
    for arity in [1usize, 3, 5, 7] {
        let got = timed(&vec![2; arity]);
        ensure(got == p(&[1, 1]), || {
            format!("arity {arity} of 2s gave {got}")
        })?;
    }
    ensure(slowest < Duration::from_millis(10), || {
        format!("slowest evaluation took {slowest:?}")
    })?;
    Ok(format!("slowest {slowest:?}"))
}

fn tuples_with_product_at_most(limit: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 1u64)];
    while let Some((prefix, prod)) = stack.pop() {
        for a in 2..=limit / prod {
            let mut next = prefix.clone();
            next.push(a);
            out.push(next.clone());
            stack.push((next, prod * a));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let tuples = tuples_with_product_at_most(64);
    for t in &tuples {
        let got = charpoly(t);
        let want = oracle_brieskorn_charpoly(t);
        ensure(got == want, || {
            format!("{t:?}: library {got}, oracle {want}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} tuples, 0 mismatches, {elapsed:?}",
        tuples.len()
    ))
}

fn criterion_3() -> Outcome {
    let report = report_for("example61.json", Mode::Hypersurface)?;
    ensure(forced(&report, 0) == Some(p(&[-1, 1])), || {
        "δ₀ is not t - 1".into()
    })?;
    for i in 1..=3 {
        ensure(forced(&report, i) == Some(LaurentPoly::one()), || {
            format!("δ{i} not forced to 1")
        })?;
    }
    let cited: BTreeSet<&str> = report
        .degrees
        .iter()
        .flat_map(|d| d.applied_rules.iter().map(|r| r.citation.as_str()))
        .collect();
    for c in ["Thm 4.1", "Thm 4.2", "Prop 2.1"] {
        ensure(cited.contains(c), || format!("no rule cites {c}"))?;
    }
    let d2 = report.degree(2).unwrap();
    ensure(
        d2.cites("Thm 4.1") && d2.cites("Thm 4.2") && d2.cites("Prop 2.1"),
        || "δ₂ does not carry the full rule chain".into(),
    )?;
    Ok("δ₀ ∼ t-1, δ₁ ∼ δ₂ ∼ δ₃ ∼ 1".into())
}

fn criterion_4() -> Outcome {
    let report = report_for("example62.json", Mode::Hypersurface)?;
    let d2 = report.degree(2).ok_or("no δ₂")?;
    ensure(d2.forced_value == Some(LaurentPoly::one()), || {
        "δ₂ not forced".into()
    })?;
    ensure(d2.candidate_orders.is_empty(), || {
        "candidates not empty".into()
    })?;
    Ok("δ₂ ∼ 1 forced".into())
}

fn criterion_5() -> Outcome {
    for (n, k) in [(4u32, 2u32), (6, 2)] {
        let report = report_for(&format!("example63_n{n}_k{k}.json"), Mode::Hypersurface)?;
        let top = report.degree(n - k).ok_or("missing degree")?;
        ensure(top.candidate_orders == vec![2], || {
            format!(
                "(n,k)=({n},{k}): δ_(n-k) candidates {:?}",
                top.candidate_orders
            )
        })?;
        ensure(top.forced_value.is_none(), || {
            "δ_(n-k) wrongly forced".into()
        })?;
        ensure(
            top.informational.iter().any(|v| v.poly == p(&[1, 1])),
            || "informational t + 1 missing".into(),
        )?;
        for j in 1..n - k {
            ensure(forced(&report, j) == Some(LaurentPoly::one()), || {
                format!("(n,k)=({n},{k}): δ{j} not forced to 1")
            })?;
        }
    }
    Ok("(4,2) and (6,2)".into())
}

fn criterion_6() -> Outcome {
    for d in [3u64, 4, 5] {
        let spec = load(&corpus(&format!("example64_d{d}.json")), Mode::Hypersurface)
            .map_err(|e| e.to_string())?;
        let claim = LaurentPoly::from_int_coeffs(&vec![1; d as usize]);
        let out = verify(&spec, &[Claim::new(2, claim)]).map_err(|e| e.to_string())?;
        ensure(out.all_accepted(), || {
            format!("d={d}: rejected {:?}", out.outcomes[0].rejection)
        })?;
    }
    let spec = load(&corpus("example64_d5.json"), Mode::Hypersurface).map_err(|e| e.to_string())?;
    let out = verify(&spec, &[Claim::new(2, p(&[1, -1, 1]))]).map_err(|e| e.to_string())?;
    let rejection = out.outcomes[0]
        .rejection
        .as_ref()
        .ok_or("t^2 - t + 1 accepted")?;
    ensure(rejection.citation == "Thm 4.1", || {
        format!("rejected citing {}", rejection.citation)
    })?;
    Ok("accepted for d = 3, 4, 5; Φ₆ rejected by Thm 4.1".into())
}

/// Random nonzero factor: a product of a few cyclotomic and small integer polynomials.
fn igamma_entry() -> impl Strategy<Value = LaurentPoly> {
    (
        prop::collection::vec(1u64..=24, 0..4),
        prop::collection::vec(prop::collection::vec(-3i64..=3, 1..4), 0..2),
        -2i64..=2,
    )
        .prop_map(|(orders, extras, shift)| {
            let mut acc = LaurentPoly::one();
            for e in orders {
                acc = &acc * &to_laurent(&oracle_phi(e));
            }
            for c in extras {
                let q = LaurentPoly::from_int_coeffs(&c);
                if !q.is_zero() {
                    acc = &acc * &q;
                }
            }
            acc.shift(shift)
        })
}

fn criterion_7() -> Outcome {
    let strategy = (
        1u64..=12,
        1u32..=4,
        prop::collection::vec(igamma_entry(), 4),
        -3i64..=3,
    );
    let cases = std::cell::Cell::new(0);
    runner(200)
        .run(&strategy, |(d, k, entries, unit)| {
            cases.set(cases.get() + 1);
            let mut table = BTreeMap::new();
            // any unit multiple of t - 1 is allowed in degree 0
            table.insert(0, p(&[-1, 1]).shift(unit));
            for (i, e) in entries.into_iter().enumerate().take(k as usize) {
                table.insert(i as u32 + 1, e);
            }
            let g1 = IGammaTable::new(table).unwrap();
            let g = igamma_cone_circle(d, &g1, k).unwrap();
            let zeroth = g.get(0);
            prop_assert!(
                zeroth.is_unit_equivalent(&p(&[-1, 1])),
                "entry 0 = {}",
                zeroth
            );
            let bound = to_laurent(&int_pow(&int_t_pow_minus_one(d as usize), 2));
            for (i, e) in g.entries() {
                prop_assert!(
                    e.divides(&bound).unwrap(),
                    "entry {} = {} does not divide (t^{}-1)^2",
                    i,
                    e,
                    d
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{} random tables", cases.get()))
}

fn criterion_8() -> Outcome {
    for d in 2..=6u64 {
        let got = infinity_bound_curve(d).map_err(|e| e.to_string())?;
        let want = oracle_curve_bound(d);
        ensure(got == want, || format!("d={d}: {got} vs {want}"))?;
    }
    ensure(infinity_bound_curve(1).is_err(), || "d = 1 accepted".into())?;
    Ok("d = 2..6".into())
}

/// Product of `Phi_e`, `e | d`, with the given multiplicities (oracle Phi).
fn cyclo_product(d: u64, mults: &[u32]) -> LaurentPoly {
    let divs: Vec<u64> = (1..=d).filter(|e| d.is_multiple_of(*e)).collect();
    let mut acc = LaurentPoly::one();
    for (e, m) in divs.iter().zip(mults) {
        acc = &acc * &to_laurent(&int_pow(&oracle_phi(*e), *m));
    }
    acc
}

/// Cross-multiplied identity `prod_q P_q^{(-1)^{q+1}} = (1 - t^d)^k`, evaluated
/// with plain ring operations.
fn identity_holds(polys: &[LaurentPoly], k: i64, d: u64) -> bool {
    let one_minus = to_laurent(&int_t_pow_minus_one(d as usize))
        .scale(&(-alexmod::Rational::from_integer(1.into())));
    let power = one_minus.pow(k.unsigned_abs() as u32);
    let mut lhs = if k < 0 {
        power.clone()
    } else {
        LaurentPoly::one()
    };
    let mut rhs = if k >= 0 { power } else { LaurentPoly::one() };
    for (q, pq) in polys.iter().enumerate() {
        if q % 2 == 1 {
            lhs = &lhs * pq;
        } else {
            rhs = &rhs * pq;
        }
    }
    lhs.is_unit_equivalent(&rhs)
}

fn criterion_9() -> Outcome {
    let instance = (1u32..=3, 1u64..=6).prop_flat_map(|(n, d)| {
        let ndiv = (1..=d).filter(|e| d % e == 0).count();
        (
            Just(n),
            Just(d),
            prop::collection::vec(prop::collection::vec(0u32..=2, ndiv), n as usize),
            0u32..=2,
        )
    });
    let consistent = std::cell::Cell::new(0);
    runner(50)
        .run(&instance, |(n, d, lower, slack)| {
            consistent.set(consistent.get() + 1);
            let lower: Vec<LaurentPoly> = lower.iter().map(|m| cyclo_product(d, m)).collect();
            // choose |k| so that P_n is a polynomial: every Phi_e | t^d - 1 once
            let sign_side: u32 = lower
                .iter()
                .enumerate()
                .filter(|(q, _)| (*q as u32 % 2 == 1) == (n % 2 == 1))
                .map(|(_, p)| p.span().unwrap_or(0) as u32)
                .sum();
            let mag = i64::from(sign_side + slack);
            let k = if n % 2 == 1 { mag } else { -mag };
            let chi = -k * d as i64;
            let solved = euler_product_solve(&lower, chi, d, n)
                .map_err(|e| TestCaseError::fail(format!("n={n} d={d} chi={chi}: {e}")))?;
            let mut all = lower.clone();
            all.push(solved.clone());
            prop_assert!(
                identity_holds(&all, k, d),
                "identity fails for P_n = {}",
                solved
            );
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let mut rejected = 0;
    // chi not divisible by d
    for (d, chi) in [(2u64, 1i64), (3, 4), (5, -7), (4, 2)] {
        match euler_product_solve(&[p(&[-1, 1])], chi, d, 1) {
            Err(Error::ChiNotDivisible { .. }) => rejected += 1,
            other => return Err(format!("d={d} chi={chi}: {other:?}")),
        }
    }
    // non-polynomial solutions
    let cases: Vec<(Vec<LaurentPoly>, i64, u64, u32)> = vec![
        (vec![p(&[-1, 1])], 4, 2, 1),
        (vec![p(&[-1, 1]), LaurentPoly::one()], 0, 3, 2),
        (vec![p(&[-1, 1]), p(&[1, 1, 1])], -3, 3, 2),
        (vec![p(&[-1, 1]), p(&[1, 1]), p(&[1, 0, 1])], 12, 4, 3),
    ];
    for (lower, chi, d, n) in cases {
        match euler_product_solve(&lower, chi, d, n) {
            Err(Error::Inconsistent(_)) => rejected += 1,
            other => {
                return Err(format!(
                    "expected inconsistency for n={n} d={d} chi={chi}: {other:?}"
                ))
            }
        }
    }
    Ok(format!(
        "{} consistent instances, {rejected} inconsistent rejected",
        consistent.get()
    ))
}

#[allow(clippy::eq_op)]
fn criterion_10() -> Outcome {
    const CASES: u32 = 128;
    let mut suites = Vec::new();
    let mut run = |name: &str,
                   f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>|
     -> Result<(), String> {
        let mut r = runner(CASES);
        f(&mut r).map_err(|e| format!("{name}: {e}"))?;
        suites.push(name.to_owned());
        Ok(())
    };

    run("ring laws", &mut |r| {
        r.run(&(laurent(), laurent(), laurent()), |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, LaurentPoly::zero());
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;

    run("gcd laws", &mut |r| {
        r.run(
            &(nonzero_laurent(), nonzero_laurent(), nonzero_laurent()),
            |(a, b, c)| {
                let g = a.gcd(&b).unwrap();
                prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
                prop_assert_eq!(&g, &g.normalize().unwrap());
                prop_assert!(g.is_unit_equivalent(&b.gcd(&a).unwrap()));
                // gcd(ac, bc) ~ gcd(a, b) c
                let lhs = (&a * &c).gcd(&(&b * &c)).unwrap();
                prop_assert!(lhs.is_unit_equivalent(&(&g * &c)));
                let q = (&a * &b).checked_div(&b).unwrap();
                prop_assert_eq!(q, Some(a.clone()));
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
    })?;

    run("Lambda products", &mut |r| {
        r.run(&(1u64..=12, 1u64..=12), |(a, b)| {
            let prod = &CycloDivisor::lambda(a).unwrap() * &CycloDivisor::lambda(b).unwrap();
            let g = gcd(a, b) as i64;
            let l = a / gcd(a, b) * b;
            prop_assert_eq!(prod.coeffs().clone(), BTreeMap::from([(l, g)]));
            let counts: BTreeMap<u64, u64> = prod
                .phi_multiplicities()
                .into_iter()
                .map(|(e, m)| (e, m as u64 * euler_phi(e)))
                .collect();
            prop_assert_eq!(counts, lambda_product_orders(a, b));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;

    run("filter monotonicity", &mut |r| {
        let set = prop::collection::btree_set(1u64..=60, 0..12);
        r.run(
            &(set, 1u64..=30, any::<[bool; 2]>()),
            |(orders, d, [rhm, nc1])| {
                let c = CandidateSet {
                    cyclo_orders: orders,
                    opaque: Vec::new(),
                };
                let flags = Flags {
                    rational_homology_manifold: rhm,
                    no_codim_one_sing: nc1,
                    isolated_singularities: false,
                };
                let f = thm41_filter(&c, d);
                prop_assert!(f.cyclo_orders.is_subset(&c.cyclo_orders));
                prop_assert!(f.cyclo_orders.iter().all(|e| d % e == 0));
                prop_assert_eq!(&thm41_filter(&f, d), &f);
                let g = prop21_filter(&c, flags);
                prop_assert!(g.cyclo_orders.is_subset(&c.cyclo_orders));
                prop_assert_eq!(&prop21_filter(&g, flags), &g);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
    })?;

    run("local range exclusion", &mut |r| {
        r.run(&marked_spec(), |(n, strata)| {
            let spec = load(&marked_spec_json(n, &strata), Mode::Hypersurface)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            for i in 1..=n {
                let set = candidates_thm42(&spec, i, "V").unwrap();
                for s in &strata {
                    for &(l, prime) in &s.markers {
                        let allowed = s.dim + i >= n
                            && i64::from(l)
                                >= 2 * i64::from(n) - 2 * i64::from(s.dim) - i64::from(i);
                        prop_assert_eq!(
                            set.cyclo_orders.contains(&prime),
                            allowed,
                            "n={} i={} s={} l={}",
                            n,
                            i,
                            s.dim,
                            l
                        );
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;

    Ok(format!(
        "{} suites × {CASES} cases: {}",
        suites.len(),
        suites.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Brieskorn values", criterion_1),
        ("Brieskorn oracle equivalence", criterion_2),
        ("corpus example61 end-to-end", criterion_3),
        ("corpus example62 end-to-end", criterion_4),
        ("corpus example63 end-to-end", criterion_5),
        ("corpus example64 verify mode", criterion_6),
        ("cone-circle recursion", criterion_7),
        ("curve bound", criterion_8),
        ("Euler product", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (idx, (name, f)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(f).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(note) => println!("criterion {:>2} PASS  {name} ({note})", idx + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", idx + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
