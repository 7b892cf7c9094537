//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if
//! any fails. Every comparison is exact.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{
    dense_bounded_difference, gt_counts, is_gt, is_pt, overlines, overpartitions, render, Naive,
};
use num_bigint::BigInt;
use overpart::hyper::{
    check_32_transform, check_chu, chu_grid, smallest_part_sum,
    smallest_part_sum_matches_enumeration, verify_section3_chain,
};
use overpart::maps::{phi, phi_preimages, psi, psi_preimages, solve_system};
use overpart::partitions::{
    enumerate_overpartitions, gf_from_enumeration, Bipartition, Family, Overpartition,
};
use overpart::qseries::{rhs_bounded_overpartitions, rhs_breuer_kronholm, rhs_theorem11};
use overpart::{QMonomial, QSeries, ZLaurentPoly, ZMode};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coeff(s: &QSeries, z: i64, q: i64) -> Result<BigInt, String> {
    s.coeff_zq(z, q)
        .ok_or_else(|| format!("q^{q} lies beyond the series order {}", s.order()))
}

fn overpartitions_of_three() -> Outcome {
    let got: Vec<String> = enumerate_overpartitions(3).map(|p| p.to_string()).collect();
    let want: BTreeSet<&str> =
        ["3", "3~", "2,1", "2~,1", "2,1~", "2~,1~", "1,1,1", "1~,1,1"].into();
    let got_set: BTreeSet<&str> = got.iter().map(String::as_str).collect();
    ensure(got.len() == 8 && got_set == want, || format!("got {got:?}"))?;
    Ok("8 overpartitions, as listed".into())
}

fn refined_generating_function() -> Outcome {
    let max_n = 30;
    for t in 1..=6u64 {
        let oracle = gt_counts(t, max_n);
        let series = rhs_theorem11(t as u32, true, max_n as i64 + 1).map_err(|e| e.to_string())?;
        for n in 1..=max_n {
            let poly = series.coeff(n as i64).unwrap_or_default();
            let row = &oracle[n as usize];
            ensure(poly.max_degree().unwrap_or(0) < row.len() as i64, || {
                format!("t={t} n={n}: stray z power")
            })?;
            for (m, &count) in row.iter().enumerate() {
                let c = coeff(&series, m as i64, n as i64)?;
                ensure(c == BigInt::from(count), || {
                    format!("t={t}: g_t({m},{n}) = {c}, counted {count}")
                })?;
            }
        }
    }
    Ok("t = 1..6, n <= 30, every g_t(m, n)".into())
}

fn specializations() -> Outcome {
    let order = 40;
    for t in 1..=6usize {
        let tracked = rhs_theorem11(t as u32, true, order).map_err(|e| e.to_string())?;
        for (value, direct) in [
            (0i64, rhs_breuer_kronholm(t as u32, order)),
            (1, rhs_bounded_overpartitions(t as u32, order)),
        ] {
            let direct = direct.map_err(|e| e.to_string())?;
            let specialized = tracked.specialize_z(value).map_err(|e| e.to_string())?;
            let oracle = dense_bounded_difference(t, value as i128, order as usize);
            for (n, &want) in oracle.iter().enumerate() {
                for s in [&specialized, &direct] {
                    let c = coeff(s, 0, n as i64)?;
                    ensure(c == BigInt::from(want), || {
                        format!("t={t}, z={value}, q^{n}: {c} vs {want}")
                    })?;
                }
            }
        }
    }
    Ok("z = 0 and z = 1, t = 1..6, order 40".into())
}

fn phi_golden() -> Outcome {
    let target = "3,3,3,1~,1";
    for (input, s, k) in [("7,4~", 1, 1), ("4~,4,3", 1, 0)] {
        let pi: Overpartition = input.parse().map_err(|e| format!("{e}"))?;
        let image = phi(&pi, 3).map_err(|e| e.to_string())?;
        let st = pi.stats(3);
        ensure(image.to_string() == target, || {
            format!("phi({input}) = {image}")
        })?;
        ensure((st.s, st.k) == (s, k), || {
            format!("{input}: (s, k) = ({}, {})", st.s, st.k)
        })?;
    }
    Ok("phi(7,4~) = phi(4~,4,3) = 3,3,3,1~,1 with (s, k) = (1, 1), (1, 0)".into())
}

/// Fiber-size and overline checks shared by both maps.
fn check_fiber_shape(mu: &[(u64, bool)], t: u64, members: &[(String, u64)]) -> Result<(), String> {
    let m = mu.iter().filter(|p| p.0 == t).count();
    let expected = if m == mu.len() { 2 * m } else { 2 * m + 1 };
    let o = overlines(mu);
    let extra = members.iter().filter(|(_, mo)| *mo == o + 1).count();
    let same = members.iter().filter(|(_, mo)| *mo == o).count();
    ensure(members.len() == expected, || {
        format!(
            "{}: {} preimages, expected {expected}",
            render(mu),
            members.len()
        )
    })?;
    ensure(extra == m && same + extra == members.len(), || {
        format!(
            "{}: {same} with o(mu) overlines and {extra} with one more",
            render(mu)
        )
    })
}

fn all_overpartitions(max_n: u64) -> Vec<Vec<Vec<(u64, bool)>>> {
    (0..=max_n)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                overpartitions(n)
            }
        })
        .collect()
}

fn phi_fibers() -> Outcome {
    let max_n = 20;
    let all = all_overpartitions(max_n);
    let mut targets = 0;
    for t in 1..=4u64 {
        for n in 1..=max_n {
            let mut brute: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
            for p in all[n as usize].iter().filter(|p| is_gt(p, t)) {
                let pi: Overpartition = render(p).parse().map_err(|e| format!("{e}"))?;
                let image = phi(&pi, t).map_err(|e| e.to_string())?;
                brute
                    .entry(image.to_string())
                    .or_default()
                    .insert(pi.to_string());
            }
            for mu in all[n as usize].iter().filter(|p| is_pt(p, t)) {
                targets += 1;
                let text = render(mu);
                let parsed: Overpartition = text.parse().map_err(|e| format!("{e}"))?;
                let report = phi_preimages(&parsed, t).map_err(|e| e.to_string())?;
                let listed: BTreeSet<String> =
                    report.fiber.iter().map(ToString::to_string).collect();
                let want = brute.remove(&text).unwrap_or_default();
                ensure(listed == want, || {
                    format!("t={t}, mu={text}: {listed:?} vs brute force {want:?}")
                })?;
                let members: Vec<(String, u64)> = report
                    .fiber
                    .iter()
                    .map(|p| (p.to_string(), p.num_overlined()))
                    .collect();
                check_fiber_shape(mu, t, &members)?;
            }
            ensure(brute.is_empty(), || {
                format!("t={t}: images outside P_t: {:?}", brute.keys())
            })?;
        }
    }
    let golden = [
        ("3,3,3", vec!["9", "9~", "6,3", "6,3~", "3,3,3", "3~,3,3"]),
        (
            "3,3,3,1~,1",
            vec![
                "7,4~",
                "4~,4,3",
                "4~,4,3~",
                "4,3,3,1~",
                "4,3~,3,1~",
                "3,3,3,1~,1",
                "3~,3,3,1~,1",
            ],
        ),
    ];
    for (mu, want) in golden {
        let report = phi_preimages(&mu.parse().map_err(|e| format!("{e}"))?, 3)
            .map_err(|e| e.to_string())?;
        let got: Vec<String> = report.fiber.iter().map(ToString::to_string).collect();
        ensure(got == want, || format!("fiber of {mu}: {got:?}"))?;
    }
    Ok(format!(
        "t = 1..4, {targets} targets of weight <= 20, both golden fibers"
    ))
}

fn psi_fibers() -> Outcome {
    let max_n = 20;
    let all = all_overpartitions(max_n);
    let mut targets = 0;
    for t in 1..=4u64 {
        for n in 1..=max_n {
            let mut brute: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
            for count in 0..=n / t {
                let rest = n - count * t;
                if rest == 0 {
                    continue;
                }
                for second in all[rest as usize].iter().filter(|p| p[0].0 <= t) {
                    let text = format!("[{t}^{count} | {}]", render(second));
                    let beta: Bipartition = text.parse().map_err(|e| format!("{e}"))?;
                    let image = psi(&beta, t).map_err(|e| e.to_string())?;
                    brute
                        .entry(image.to_string())
                        .or_default()
                        .insert(beta.to_string());
                }
            }
            for mu in all[n as usize].iter().filter(|p| is_pt(p, t)) {
                targets += 1;
                let text = render(mu);
                let parsed: Overpartition = text.parse().map_err(|e| format!("{e}"))?;
                let report = psi_preimages(&parsed, t).map_err(|e| e.to_string())?;
                let listed: BTreeSet<String> =
                    report.fiber.iter().map(ToString::to_string).collect();
                let want = brute.remove(&text).unwrap_or_default();
                ensure(listed == want, || {
                    format!("t={t}, mu={text}: {listed:?} vs brute force {want:?}")
                })?;
                let members: Vec<(String, u64)> = report
                    .fiber
                    .iter()
                    .map(|b| (b.to_string(), b.num_overlined()))
                    .collect();
                check_fiber_shape(mu, t, &members)?;
            }
            ensure(brute.is_empty(), || {
                format!("t={t}: images outside P_t: {:?}", brute.keys())
            })?;
        }
    }
    for input in ["[3^1 | 3,3,1~,1]", "[3^1 | 3~,3,1~,1]"] {
        let beta: Bipartition = input.parse().map_err(|e| format!("{e}"))?;
        let image = psi(&beta, 3).map_err(|e| e.to_string())?;
        ensure(image.to_string() == "3,3,3,1~,1", || {
            format!("psi({input}) = {image}")
        })?;
    }
    Ok(format!(
        "t = 1..4, {targets} targets of weight <= 20, both golden bipartitions"
    ))
}

fn fiber_aggregation() -> Outcome {
    let order = 25i64;
    let max_n = (order - 1) as u64;
    let all = all_overpartitions(max_n);
    for t in 1..=4u64 {
        // sum over P_t of ((1 - delta) + (1 + z) m) z^o q^|mu|
        let mut predicted: BTreeMap<(i64, i64), i128> = BTreeMap::new();
        for (n, level) in all.iter().enumerate() {
            for mu in level.iter().filter(|p| is_pt(p, t)) {
                let m = mu.iter().filter(|p| p.0 == t).count() as i128;
                let delta = i128::from(m == mu.len() as i128);
                let o = overlines(mu) as i64;
                *predicted.entry((n as i64, o)).or_default() += 1 - delta + m;
                *predicted.entry((n as i64, o + 1)).or_default() += m;
            }
        }
        let predicted = Naive::new(1, order, predicted);
        let counted = gt_counts(t, max_n);
        for family in [Family::Gt, Family::Bt] {
            let series = gf_from_enumeration(family, t, max_n);
            for n in 1..order {
                let max_m = counted[n as usize].len() as i64 + 1;
                for m in 0..=max_m {
                    let c = coeff(&series, m, n)?;
                    let want = predicted.coeff(n, m);
                    ensure(c == BigInt::from(want), || {
                        format!("{family:?}, t={t}, z^{m} q^{n}: {c} vs {want}")
                    })?;
                    let oracle = counted[n as usize].get(m as usize).copied().unwrap_or(0);
                    ensure(want == oracle as i128, || {
                        format!("t={t}, z^{m} q^{n}: weighted sum {want}, G_t {oracle}")
                    })?;
                }
            }
        }
    }
    Ok("t = 1..4, order 25, against G_t and B_t".into())
}

fn lemma_uniqueness() -> Outcome {
    let mut pairs = 0;
    for n in 1..=200u64 {
        for np in 0..=200u64 {
            pairs += 1;
            let mut found = Vec::new();
            for y in 0..n {
                let x = n - y;
                let mut s = 0;
                while s * x + (s + 1) * y <= np {
                    if s * x + (s + 1) * y == np {
                        found.push((x, y, s));
                    }
                    s += 1;
                }
            }
            ensure(found.len() == 1, || {
                format!("n={n}, n'={np}: {} solutions", found.len())
            })?;
            let sol = solve_system(n, np).map_err(|e| e.to_string())?;
            let closed = (n - (np - np / n * n), np - np / n * n, np / n);
            ensure(
                (sol.x, sol.y, sol.s) == found[0] && found[0] == closed,
                || {
                    format!(
                        "n={n}, n'={np}: search {:?}, solver {:?}, closed {closed:?}",
                        found[0],
                        (sol.x, sol.y, sol.s)
                    )
                },
            )?;
        }
    }
    Ok(format!("{pairs} pairs, one solution each"))
}

fn chu() -> Outcome {
    let order = 25;
    let a = QMonomial::new(-1, 1, 0);
    let c = QMonomial::new(-1, 1, 1);
    for t in 1..=5 {
        ensure(
            check_chu(&a, &c, t, order).map_err(|e| e.to_string())?,
            || format!("a=-z, c=-zq, n={t}"),
        )?;
    }
    let grid = chu_grid();
    for (a, c) in &grid {
        for n in 0..=6 {
            ensure(
                check_chu(a, c, n, order).map_err(|e| e.to_string())?,
                || format!("a={a}, c={c}, n={n}"),
            )?;
        }
    }
    Ok(format!(
        "a=-z, c=-zq for n = 1..5 and {} grid pairs with n <= 6, order 25",
        grid.len()
    ))
}

fn transformation() -> Outcome {
    for t in 1..=4i64 {
        let q = QMonomial::q_power;
        let ok = check_32_transform(
            &q(1),
            &q(1),
            &QMonomial::new(-1, 1, t + 1),
            &QMonomial::new(-1, 1, 2),
            &q(t + 2),
            30,
        )
        .map_err(|e| e.to_string())?;
        ensure(ok, || format!("t={t}"))?;
    }
    Ok("a=q, b=q, c=-zq^(t+1), d=-zq^2, e=q^(t+2), t = 1..4, order 30".into())
}

fn chain() -> Outcome {
    let order = 40;
    for t in 1..=5u64 {
        for mode in [ZMode::Tracked, ZMode::Zero, ZMode::One] {
            let report = verify_section3_chain(t, order, mode).map_err(|e| e.to_string())?;
            ensure(report.pass, || {
                format!("t={t}, z={mode}: breaks at {:?}", report.first_mismatch())
            })?;
        }
        ensure(
            smallest_part_sum_matches_enumeration(t, order).map_err(|e| e.to_string())?,
            || format!("t={t}: smallest-part sum differs from the enumerator"),
        )?;
        let leftmost = smallest_part_sum(t, order).map_err(|e| e.to_string())?;
        let oracle = gt_counts(t, (order - 1) as u64);
        for n in 1..order {
            for (m, &count) in oracle[n as usize].iter().enumerate() {
                let c = coeff(&leftmost, m as i64, n)?;
                ensure(c == BigInt::from(count), || {
                    format!("t={t}: z^{m} q^{n} is {c}, counted {count}")
                })?;
            }
        }
    }
    Ok("t = 1..5, order 40, z tracked, 0 and 1; leftmost member equals the G_t count".into())
}

fn arb_series(unit_lead: bool) -> impl Strategy<Value = Naive> {
    let coeff = prop::collection::btree_map(-2i64..3, -4i128..5, 0..3);
    (
        -3i64..4,
        1i64..8,
        prop::collection::vec(coeff, 0..8),
        any::<bool>(),
        -1i64..2,
    )
        .prop_map(move |(min, extra, body, neg, lead_z)| {
            let mut terms = Vec::new();
            if unit_lead {
                terms.push(((min, lead_z), if neg { -1 } else { 1 }));
            }
            for (i, c) in body.into_iter().enumerate() {
                let q = min + i as i64 + i64::from(unit_lead);
                terms.extend(c.into_iter().map(|(z, v)| ((q, z), v)));
            }
            let order = min + extra + i64::from(unit_lead);
            Naive::new(min, order, terms)
        })
}

fn to_series(n: &Naive) -> QSeries {
    let mut by_q: BTreeMap<i64, ZLaurentPoly> = BTreeMap::new();
    for (&(q, z), &c) in &n.terms {
        by_q.entry(q).or_default().add_term(z, BigInt::from(c));
    }
    QSeries::from_sparse(by_q, n.order)
}

/// Coefficientwise agreement of a library result with the oracle on the
/// oracle's valid range.
fn matches(s: &QSeries, n: &Naive) -> Result<(), TestCaseError> {
    prop_assert!(
        s.order() >= n.order,
        "order {} below {}",
        s.order(),
        n.order
    );
    let (zlo, zhi) = n.z_range();
    for q in n.min.min(s.min_exp())..n.order {
        let poly = s.coeff(q).unwrap_or_default();
        prop_assert!(
            poly.min_degree().is_none_or(|d| d >= zlo)
                && poly.max_degree().is_none_or(|d| d <= zhi)
        );
        for z in zlo..=zhi {
            prop_assert_eq!(
                poly.coeff(z),
                BigInt::from(n.coeff(q, z)),
                "q^{} z^{}",
                q,
                z
            );
        }
    }
    Ok(())
}

fn ring_properties() -> Outcome {
    let cases = 1000;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (
        arb_series(false),
        arb_series(false),
        arb_series(false),
        arb_series(true),
        1i64..12,
    );
    runner
        .run(&strategy, |(a, b, c, u, target)| {
            let (sa, sb, sc, su) = (to_series(&a), to_series(&b), to_series(&c), to_series(&u));
            matches(&sa.add(&sb), &a.add(&b))?;
            matches(&sa.mul(&sb), &a.mul(&b))?;
            matches(&sa.mul(&sb).mul(&sc), &a.mul(&b).mul(&c))?;
            matches(&sa.mul(&sb.add(&sc)), &a.mul(&b.add(&c)))?;

            prop_assert_eq!(sa.mul(&sb), sb.mul(&sa));
            prop_assert_eq!(sa.add(&sb), sb.add(&sa));
            prop_assert!(sa.sub(&sa).is_zero());
            prop_assert_eq!(sa.mul(&QSeries::one(sa.order() - sa.min_exp())), sa.clone());

            // u * u^-1 = 1 on the product's whole valid range
            let inv = su.invert(target).unwrap();
            let prod = su.mul(&inv);
            prop_assert_eq!(prod.order(), target.min(u.order - u.min));
            prop_assert_eq!(prod, QSeries::one(target.min(u.order - u.min)));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "{cases} random cases against schoolbook arithmetic"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("overpartitions of 3", overpartitions_of_three),
        (
            "refined generating function vs enumeration",
            refined_generating_function,
        ),
        ("z = 0 and z = 1 specializations", specializations),
        ("phi golden cases", phi_golden),
        ("phi fibers", phi_fibers),
        ("psi fibers", psi_fibers),
        ("fiber-weight aggregation", fiber_aggregation),
        ("uniqueness of the linear system", lemma_uniqueness),
        ("q-Chu-Vandermonde sum", chu),
        ("3phi2 transformation", transformation),
        ("smallest-part chain", chain),
        ("series ring properties", ring_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
