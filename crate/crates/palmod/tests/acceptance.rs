//! Acceptance checks, one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the report is always printed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use palmod::goldens::{self, Table};
use palmod::verify::par_count_pc;
use palmod_core::asymptotics::{self, phi};
use palmod_core::bijection_m2::{self, Family, TernaryWord};
use palmod_core::bijection_m3;
use palmod_core::counting::{self, fibonacci, pc_closed, pc_sequence, pell};
use palmod_core::oracle::Oracle;
use palmod_core::structural::{self, check_involution};
use palmod_core::{Composition, Modulus};
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn modulus(m: u64) -> Modulus {
    Modulus::new(m).expect("m >= 1")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set_of(v: Vec<Composition>) -> BTreeSet<Composition> {
    v.into_iter().collect()
}

fn oracle_set(oracle: &Oracle, n: u64, m: Modulus) -> Result<BTreeSet<Composition>, String> {
    oracle.list_pc(n, m).map(set_of).map_err(|e| e.to_string())
}

fn counting_cross_validation() -> Outcome {
    let oracle = Oracle::default();
    let cells: Vec<(u64, u64)> = (1..=12).flat_map(|m| (1..=18).map(move |n| (n, m))).collect();
    cells.par_iter().try_for_each(|&(n, m)| {
        let slow = par_count_pc(n, modulus(m), &oracle).map_err(|e| e.to_string())?;
        let fast = counting::pc_recurrence(n, modulus(m)).map_err(|e| e.to_string())?;
        ensure(slow == fast, || format!("pc({n},{m}): oracle {slow}, recurrence {fast}"))
    })?;
    for m in 1..=4 {
        let seq = pc_sequence(modulus(m), 200);
        for n in 1..=200u64 {
            let closed = pc_closed(n, modulus(m)).map_err(|e| e.to_string())?;
            ensure(closed == seq[n as usize], || format!("pc({n},{m}): closed {closed}, recurrence {}", seq[n as usize]))?;
        }
    }
    Ok(format!("{} oracle cells; closed = recurrence for m <= 4, n <= 200", cells.len()))
}

fn reference_constants() -> Outcome {
    let pc = |n, m| counting::pc_recurrence(n, modulus(m)).map_err(|e| e.to_string());
    ensure(pc(8, 2)? == BigUint::from(54u32), || "pc(8,2) != 54".into())?;
    ensure(pc(8, 3)? == BigUint::from(26u32), || "pc(8,3) != 26".into())?;
    let prefix = |m| pc_sequence(modulus(m), 6)[1..].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    ensure(prefix(2) == "1,2,2,6,6,18", || format!("m=2 begins {}", prefix(2)))?;
    ensure(prefix(3) == "1,2,2,4,6,10", || format!("m=3 begins {}", prefix(3)))?;
    let oracle = Oracle::default();
    ensure(oracle.count_pc(8, Modulus::TWO).map_err(|e| e.to_string())? == BigUint::from(54u32), || {
        "oracle pc(8,2) != 54".into()
    })?;
    Ok("pc(8,2)=54, pc(8,3)=26, 1,2,2,6,6,18 and 1,2,2,4,6,10".into())
}

fn golden_tables() -> Outcome {
    let mut detail = Vec::new();
    for table in [Table::Table1, Table::Table2] {
        let r = goldens::check(table, table.fixture()).map_err(|e| e.to_string())?;
        if let Some(m) = r.mismatch {
            return Err(format!("{}: {m}", table.name()));
        }
        detail.push(format!("{} {} rows/{} cells", table.name(), r.rows, r.cells));
    }
    Ok(detail.join(", "))
}

fn m2_bijection() -> Outcome {
    let oracle = Oracle::default();
    let mut pairs = 0;
    let mut total = 0;
    for n in 1..=10u64 {
        let words: Vec<TernaryWord> = TernaryWord::all(n).collect();
        let image = words
            .par_iter()
            .flat_map_iter(|w| [Family::Plain, Family::Marked].map(move |f| (w, f)))
            .map(|(w, f)| {
                let c = bijection_m2::word_to_composition(w, f);
                let back = bijection_m2::composition_to_word(&c).map_err(|e| e.to_string())?;
                ensure(back == (w.clone(), f), || format!("{w} ({f}) -> {c} -> {:?}", back))?;
                Ok(c)
            })
            .collect::<Result<Vec<_>, String>>()?;
        pairs = image.len();
        total += pairs;
        let expected = oracle_set(&oracle, 2 * n, Modulus::TWO)?;
        let image_set = set_of(image.clone());
        ensure(image_set.len() == image.len(), || format!("n={n}: not injective"))?;
        ensure(image_set == expected, || format!("n={n}: image != B_{}", 2 * n))?;
        for c in &expected {
            let (w, f) = bijection_m2::composition_to_word(c).map_err(|e| e.to_string())?;
            ensure(&bijection_m2::word_to_composition(&w, f) == c, || format!("{c} does not round trip"))?;
        }
        let odd = oracle_set(&oracle, 2 * n + 1, Modulus::TWO)?;
        let lifted = expected
            .iter()
            .map(|c| {
                let up = bijection_m2::lift_parity(c).map_err(|e| e.to_string())?;
                let down = bijection_m2::drop_parity(&up).map_err(|e| e.to_string())?;
                ensure(&down == c, || format!("drop(lift({c})) = {down}"))?;
                Ok(up)
            })
            .collect::<Result<BTreeSet<_>, String>>()?;
        ensure(lifted == odd && lifted.len() == expected.len(), || format!("lift B_{} -> B_{} not bijective", 2 * n, 2 * n + 1))?;
    }
    ensure(pairs == 39_366, || format!("{pairs} pairs at n = 10"))?;
    Ok(format!("{total} pairs for n <= 10 ({pairs} at n = 10); parity lift bijective"))
}

fn m3_bijection() -> Outcome {
    let oracle = Oracle::default();
    let sizes = (2..=18u64)
        .into_par_iter()
        .map(|n| {
            let a = bijection_m3::an_elements(n).map_err(|e| e.to_string())?;
            ensure(BigUint::from(a.len()) == BigUint::from(2u32) * fibonacci(n - 1), || format!("|A_{n}| = {}", a.len()))?;
            let mut image = BTreeSet::new();
            for w in &a {
                let b = bijection_m3::forward(w).map_err(|e| e.to_string())?;
                let back = bijection_m3::inverse(&b).map_err(|e| e.to_string())?;
                ensure(&back == w, || format!("{w} -> {b} -> {back}"))?;
                image.insert(b);
            }
            let expected = oracle_set(&oracle, n, Modulus::THREE)?;
            ensure(image == expected && image.len() == a.len(), || format!("n={n}: image != B_{n}"))?;
            for b in &expected {
                let a = bijection_m3::inverse(b).map_err(|e| e.to_string())?;
                ensure(&bijection_m3::forward(&a).map_err(|e| e.to_string())? == b, || format!("{b} does not round trip"))?;
            }
            Ok(a.len())
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(format!("2 <= n <= 18, |A_18| = {}", sizes.last().copied().unwrap_or(0)))
}

fn prop1() -> Outcome {
    let oracle = Oracle::default();
    let jobs: Vec<(u64, u64)> = [2, 4, 6, 8, 10].into_iter().flat_map(|m| (1..=9).map(move |n| (m, n))).collect();
    jobs.par_iter().try_for_each(|&(m, n)| {
        let m = modulus(m);
        let even = oracle_set(&oracle, 2 * n, m)?;
        let odd = oracle_set(&oracle, 2 * n + 1, m)?;
        let lifted = even
            .iter()
            .map(|c| structural::prop1_lift(c, m))
            .collect::<Result<BTreeSet<_>, _>>()
            .map_err(|e| e.to_string())?;
        ensure(lifted == odd && lifted.len() == even.len(), || format!("m={m}, n={n}: lift not bijective"))?;
        for c in &odd {
            let down = structural::prop1_drop(c, m).map_err(|e| e.to_string())?;
            ensure(structural::prop1_lift(&down, m).map_err(|e| e.to_string())? == *c, || format!("m={m}: {c}"))?;
        }
        ensure(even.len() == odd.len(), || format!("pc({},{m}) != pc({},{m})", 2 * n, 2 * n + 1))
    })?;
    Ok(format!("{} (m, n) pairs", jobs.len()))
}

fn prop2() -> Outcome {
    let oracle = Oracle::default();
    let jobs: Vec<(u64, u64)> = (1..=6).flat_map(|m| (2..=14).map(move |n| (n, m))).collect();
    let checked: usize = jobs
        .par_iter()
        .map(|&(n, m)| {
            let set = oracle.list_pc(n, modulus(m)).map_err(|e| e.to_string())?;
            let report = check_involution(&set, modulus(m));
            ensure(report.is_involution() && report.fixed_points == 0, || format!("n={n}, m={m}: {report:?}"))?;
            ensure(set.len() % 2 == 0, || format!("pc({n},{m}) = {} is odd", set.len()))?;
            Ok(report.checked)
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{checked} compositions, fixed-point-free involution"))
}

fn prop3() -> Outcome {
    let oracle = Oracle::default();
    let mut thresholds = Vec::new();
    for n in 1..=16u64 {
        let target = BigUint::from(1u32) << (n / 2);
        let moduli = (n.saturating_sub(1).max(1)..=n + 8).map(modulus).chain([Modulus::Infinity]);
        for m in moduli {
            let v = oracle.count_pc(n, m).map_err(|e| e.to_string())?;
            ensure(v == target, || format!("pc({n},{m}) = {v} != {target}"))?;
        }
        if n >= 4 {
            let v = oracle.count_pc(n, modulus(n - 2)).map_err(|e| e.to_string())?;
            ensure(v != target, || format!("pc({n},{}) = 2^floor(n/2)", n - 2))?;
        }
        thresholds.push(structural::stabilization_threshold(n, &oracle).map_err(|e| e.to_string())?);
    }
    let four = oracle.count_pc(4, Modulus::TWO).map_err(|e| e.to_string())?;
    ensure(four == BigUint::from(6u32), || format!("pc(4,2) = {four}"))?;
    Ok(format!("threshold m = n-1; measured {thresholds:?}"))
}

fn pell_identity() -> Outcome {
    let seq = pc_sequence(modulus(4), 61);
    for n in 1..=30usize {
        let p = BigUint::from(2u32) * pell(n as u64);
        ensure(seq[2 * n] == p && seq[2 * n + 1] == p, || format!("n={n}: {} {} vs {p}", seq[2 * n], seq[2 * n + 1]))?;
    }
    Ok("n <= 30".into())
}

fn pair_identity() -> Outcome {
    for m in 1..=10 {
        ensure(counting::verify_pair_construction(m, 200).map_err(|e| e.to_string())?, || format!("m={m}"))?;
    }
    Ok("order 200, m <= 10".into())
}

fn asymptotic_constants() -> Outcome {
    let close = |name: &str, got: f64, want: f64, tol: f64| {
        ensure((got - want).abs() < tol, || format!("{name} = {got}, expected {want} within {tol:e}"))
    };
    let (s3, s5) = (3f64.sqrt(), 5f64.sqrt());
    let p1 = asymptotics::profile(1).map_err(|e| e.to_string())?;
    let p2 = asymptotics::profile(2).map_err(|e| e.to_string())?;
    let p3 = asymptotics::profile(3).map_err(|e| e.to_string())?;
    let p4 = asymptotics::profile(4).map_err(|e| e.to_string())?;
    close("alpha_1^-1", p1.growth(), 2.0, 1e-10)?;
    close("alpha_2^-1", p2.growth(), s3, 1e-10)?;
    close("alpha_3^-1", p3.growth(), (1.0 + s5) / 2.0, 1e-10)?;
    close("c_2", p2.c, (3.0 + s3) / 9.0, 1e-9)?;
    close("d_2", p2.d, (3.0 - s3) / 9.0, 1e-9)?;
    close("c_3", p3.c, (5.0 - s5) / 5.0, 1e-9)?;
    close("d_3", p3.d, 0.0, 1e-9)?;
    close("alpha_4^-1", p4.growth(), 1.55, 5e-3)?;
    close("c_4", p4.c, 0.58, 5e-3)?;
    close("d_4", p4.d, 0.13, 5e-3)?;
    ensure(phi(p4.alpha, 4).abs() < 1e-12, || "m=4 residual".into())?;
    let mut worst: f64 = 0.0;
    for m in 2..=4 {
        let r = asymptotics::verify_asymptotics(m, 50, 60).map_err(|e| e.to_string())?;
        ensure(r.max_error < 1e-4, || format!("m={m}: max error {:e}", r.max_error))?;
        worst = worst.max(r.max_error);
    }
    Ok(format!(
        "m=4: ({:.5}, {:.5}, {:.5}); max error {worst:.1e} for 50 <= n <= 60",
        p4.growth(),
        p4.c,
        p4.d
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("counting cross-validation", counting_cross_validation),
        ("reference constants", reference_constants),
        ("golden tables", golden_tables),
        ("m=2 bijection and parity lift", m2_bijection),
        ("m=3 bijection", m3_bijection),
        ("central lift/drop for even m", prop1),
        ("pairing involution", prop2),
        ("stabilization threshold", prop3),
        ("Pell identity", pell_identity),
        ("pair-series identity", pair_identity),
        ("asymptotic constants", asymptotic_constants),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
