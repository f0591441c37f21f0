//! The property suite behind `palmod verify`.
//!
//! Every property is checked exhaustively over bounded ranges. Oracle-backed
//! checks fan out over rayon; results are aggregated in a fixed order so the
//! report is deterministic.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use palmod_core::asymptotics::{self, phi};
use palmod_core::bijection_m2::{self, Family, TernaryWord};
use palmod_core::bijection_m3;
use palmod_core::counting::{self, fibonacci, pc_closed, pc_sequence, pell};
use palmod_core::oracle::{count_pc_masks, mask_count, Oracle};
use palmod_core::structural::{self, check_involution, InvolutionReport, PairRule};
use palmod_core::{Composition, Modulus};
use rayon::prelude::*;
use serde::Serialize;

use crate::goldens::{self, Table};

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub n_max: u64,
    pub m_max: u64,
    pub oracle: Oracle,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&VerifyConfig) -> Result<String, String>;

const PROPERTIES: &[(&str, Check)] = &[
    ("oracle.cardinality", oracle_cardinality),
    ("counting.recurrence_eq_oracle", recurrence_eq_oracle),
    ("counting.closed_eq_recurrence", closed_eq_recurrence),
    ("counting.evenness_plateau_domination", evenness_plateau_domination),
    ("counting.pair_construction", pair_construction),
    ("counting.pell_identity", pell_identity),
    ("m2.bijection", m2_bijection),
    ("m2.parity_lift", m2_parity_lift),
    ("m3.bijection", m3_bijection),
    ("prop1.central_bijection", prop1_bijection),
    ("prop2.involution", prop2_involution),
    ("prop3.stabilization", prop3_stabilization),
    ("asymptotics.profile", asymptotic_profile),
    ("goldens.table1", golden_table1),
    ("goldens.table2", golden_table2),
];

pub fn run(config: &VerifyConfig) -> Vec<PropertyOutcome> {
    PROPERTIES
        .iter()
        .map(|&(name, check)| match check(config) {
            Ok(detail) => PropertyOutcome { name, passed: true, detail },
            Err(detail) => PropertyOutcome { name, passed: false, detail },
        })
        .collect()
}

/// Oracle count split across threads; equal to the sequential count.
pub fn par_count_pc(n: u64, m: Modulus, oracle: &Oracle) -> palmod_core::Result<BigUint> {
    oracle.check(n)?;
    let total = mask_count(n);
    let chunks = 64.min(total);
    let count: u64 = (0..chunks)
        .into_par_iter()
        .map(|i| count_pc_masks(n, m, i * total / chunks..(i + 1) * total / chunks))
        .sum();
    Ok(BigUint::from(count))
}

fn oracle_n_max(config: &VerifyConfig) -> u64 {
    config.n_max.min(config.oracle.cap())
}

fn moduli(config: &VerifyConfig) -> Vec<Modulus> {
    (1..=config.m_max)
        .map(|m| Modulus::new(m).expect("m ≥ 1"))
        .chain([Modulus::Infinity])
        .collect()
}

fn oracle_cardinality(config: &VerifyConfig) -> Result<String, String> {
    let n_max = oracle_n_max(config).min(20);
    (1..=n_max).into_par_iter().try_for_each(|n| {
        let mut seen = BTreeSet::new();
        for c in config.oracle.enumerate(n).map_err(|e| e.to_string())? {
            if c.total() != n || !seen.insert(c) {
                return Err(format!("n={n}: bad or duplicate composition"));
            }
        }
        if seen.len() as u64 != mask_count(n) {
            return Err(format!("n={n}: {} compositions", seen.len()));
        }
        Ok(())
    })?;
    Ok(format!("2^(n-1) distinct compositions for n <= {n_max}"))
}

fn recurrence_eq_oracle(config: &VerifyConfig) -> Result<String, String> {
    let n_max = oracle_n_max(config);
    let cells: Vec<(u64, Modulus)> = moduli(config)
        .into_iter()
        .flat_map(|m| (1..=n_max).map(move |n| (n, m)))
        .collect();
    cells.par_iter().try_for_each(|&(n, m)| {
        let fast = counting::pc_recurrence(n, m).map_err(|e| e.to_string())?;
        let slow = par_count_pc(n, m, &config.oracle).map_err(|e| e.to_string())?;
        if fast == slow {
            Ok(())
        } else {
            Err(format!("pc({n},{m}): recurrence {fast} != oracle {slow}"))
        }
    })?;
    Ok(format!("{} cells, n <= {n_max}, m <= {} and inf", cells.len(), config.m_max))
}

fn closed_eq_recurrence(_: &VerifyConfig) -> Result<String, String> {
    let supported = [1, 2, 3, 4].map(|m| Modulus::new(m).expect("m ≥ 1"));
    for m in supported.into_iter().chain([Modulus::Infinity]) {
        let seq = pc_sequence(m, 200);
        for (n, rec) in seq.iter().enumerate().skip(1) {
            let closed = pc_closed(n as u64, m).map_err(|e| e.to_string())?;
            if &closed != rec {
                return Err(format!("pc({n},{m}): closed {closed} != recurrence {rec}"));
            }
        }
    }
    Ok("m in {1,2,3,4,inf}, n <= 200".into())
}

fn evenness_plateau_domination(config: &VerifyConfig) -> Result<String, String> {
    let full = pc_sequence(Modulus::new(1).expect("1 ≥ 1"), 200);
    for m in moduli(config) {
        let seq = pc_sequence(m, 200);
        for n in 2..=200 {
            if seq[n].bit(0) {
                return Err(format!("pc({n},{m}) = {} is odd", seq[n]));
            }
            if seq[n] > full[n] {
                return Err(format!("pc({n},{m}) exceeds 2^(n-1)"));
            }
        }
        if m.is_even() || m == Modulus::Infinity {
            if let Some(n) = (1..100).find(|&n| seq[2 * n] != seq[2 * n + 1]) {
                return Err(format!("pc({},{m}) != pc({},{m})", 2 * n, 2 * n + 1));
            }
        }
    }
    Ok(format!("n <= 200, m <= {} and inf", config.m_max))
}

fn pair_construction(_: &VerifyConfig) -> Result<String, String> {
    for m in 1..=10 {
        if !counting::verify_pair_construction(m, 200).map_err(|e| e.to_string())? {
            return Err(format!("m={m}: pair construction differs from F_m"));
        }
    }
    Ok("order 200, m <= 10".into())
}

fn pell_identity(_: &VerifyConfig) -> Result<String, String> {
    let seq = pc_sequence(Modulus::new(4).expect("4 ≥ 1"), 61);
    for n in 1..=30u64 {
        let expected = BigUint::from(2u32) * pell(n);
        let (even, odd) = (&seq[2 * n as usize], &seq[2 * n as usize + 1]);
        if even != &expected || odd != &expected {
            return Err(format!("n={n}: pc(2n,4)={even}, pc(2n+1,4)={odd}, 2P(n)={expected}"));
        }
    }
    Ok("pc(2n,4) = pc(2n+1,4) = 2 P(n) for n <= 30".into())
}

fn m2_bijection(config: &VerifyConfig) -> Result<String, String> {
    let half_max = oracle_n_max(config) / 2;
    let two = Modulus::TWO;
    let mut pairs = 0;
    for n in 1..=half_max {
        let words: Vec<TernaryWord> = TernaryWord::all(n).collect();
        let image: Vec<Composition> = words
            .par_iter()
            .flat_map_iter(|w| [Family::Plain, Family::Marked].map(|f| (w, f)))
            .map(|(w, f)| {
                let c = bijection_m2::word_to_composition(w, f);
                let back = bijection_m2::composition_to_word(&c).map_err(|e| e.to_string())?;
                if back != (w.clone(), f) || c.total() != 2 * n || !c.is_palindromic_mod(two) {
                    return Err(format!("word {w} ({f}) -> {c} fails"));
                }
                Ok(c)
            })
            .collect::<Result<_, String>>()?;
        pairs += image.len();
        let image: BTreeSet<_> = image.into_iter().collect();
        let expected: BTreeSet<_> =
            config.oracle.list_pc(2 * n, two).map_err(|e| e.to_string())?.into_iter().collect();
        if image.len() != 2 * words.len() || image != expected {
            return Err(format!("n={n}: image is not B_{}", 2 * n));
        }
    }
    Ok(format!("{pairs} (word, family) pairs, n <= {half_max}"))
}

fn m2_parity_lift(config: &VerifyConfig) -> Result<String, String> {
    let half_max = oracle_n_max(config).saturating_sub(1) / 2;
    for n in 1..=half_max {
        central_bijection(n, Modulus::TWO, &config.oracle, bijection_m2::lift_parity, bijection_m2::drop_parity)?;
    }
    Ok(format!("B_2n -> B_2n+1 for n <= {half_max}"))
}

type CentralMap = fn(&Composition) -> palmod_core::Result<Composition>;

fn central_bijection(n: u64, m: Modulus, oracle: &Oracle, lift: CentralMap, drop: CentralMap) -> Result<(), String> {
    let even = oracle.list_pc(2 * n, m).map_err(|e| e.to_string())?;
    let odd: BTreeSet<_> = oracle.list_pc(2 * n + 1, m).map_err(|e| e.to_string())?.into_iter().collect();
    let mut image = BTreeSet::new();
    for c in &even {
        let up = lift(c).map_err(|e| e.to_string())?;
        if &drop(&up).map_err(|e| e.to_string())? != c {
            return Err(format!("m={m}: drop(lift({c})) != {c}"));
        }
        image.insert(up);
    }
    for c in &odd {
        let down = drop(c).map_err(|e| e.to_string())?;
        if &lift(&down).map_err(|e| e.to_string())? != c {
            return Err(format!("m={m}: lift(drop({c})) != {c}"));
        }
    }
    if image != odd || image.len() != even.len() {
        return Err(format!("m={m}, n={n}: lift is not a bijection onto B_{}", 2 * n + 1));
    }
    Ok(())
}

fn m3_bijection(config: &VerifyConfig) -> Result<String, String> {
    let n_max = oracle_n_max(config);
    (2..=n_max).into_par_iter().try_for_each(|n| {
        let a = bijection_m3::an_elements(n).map_err(|e| e.to_string())?;
        if BigUint::from(a.len()) != BigUint::from(2u32) * fibonacci(n - 1) {
            return Err(format!("|A_{n}| = {}", a.len()));
        }
        let mut image = BTreeSet::new();
        for word in &a {
            let b = bijection_m3::forward(word).map_err(|e| e.to_string())?;
            if &bijection_m3::inverse(&b).map_err(|e| e.to_string())? != word || b.total() != n {
                return Err(format!("round trip fails at {word}"));
            }
            image.insert(b);
        }
        let expected: BTreeSet<_> =
            config.oracle.list_pc(n, Modulus::THREE).map_err(|e| e.to_string())?.into_iter().collect();
        if image != expected || image.len() != a.len() {
            return Err(format!("n={n}: image is not B_{n}"));
        }
        Ok(())
    })?;
    Ok(format!("2 <= n <= {n_max}"))
}

fn prop1_bijection(config: &VerifyConfig) -> Result<String, String> {
    let half_max = oracle_n_max(config).saturating_sub(1) / 2;
    let evens: Vec<u64> = (2..=config.m_max.max(2)).step_by(2).collect();
    let jobs: Vec<(u64, u64)> = evens.iter().flat_map(|&m| (1..=half_max).map(move |n| (m, n))).collect();
    jobs.par_iter().try_for_each(|&(m, n)| {
        let modulus = Modulus::new(m).expect("m ≥ 2");
        let oracle = config.oracle;
        let even = oracle.list_pc(2 * n, modulus).map_err(|e| e.to_string())?;
        let odd: BTreeSet<_> = oracle.list_pc(2 * n + 1, modulus).map_err(|e| e.to_string())?.into_iter().collect();
        let lifted: BTreeSet<_> = even
            .iter()
            .map(|c| structural::prop1_lift(c, modulus))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if lifted != odd || lifted.len() != even.len() {
            return Err(format!("m={m}, n={n}: lift is not a bijection"));
        }
        for c in &odd {
            let back = structural::prop1_drop(c, modulus).map_err(|e| e.to_string())?;
            if structural::prop1_lift(&back, modulus).map_err(|e| e.to_string())? != *c {
                return Err(format!("m={m}: lift(drop({c})) != {c}"));
            }
        }
        Ok(())
    })?;
    Ok(format!("even m in {evens:?}, n <= {half_max}"))
}

fn prop2_involution(config: &VerifyConfig) -> Result<String, String> {
    let n_max = oracle_n_max(config);
    let jobs: Vec<(u64, Modulus)> =
        moduli(config).into_iter().flat_map(|m| (2..=n_max).map(move |n| (n, m))).collect();
    let reports = jobs
        .par_iter()
        .map(|&(n, m)| {
            let set = config.oracle.list_pc(n, m).map_err(|e| e.to_string())?;
            let report = check_involution(&set, m);
            if !report.is_involution() || set.len() % 2 != 0 {
                return Err(format!("n={n}, m={m}: {report:?}"));
            }
            Ok(report)
        })
        .collect::<Result<Vec<_>, String>>()?;
    let mut total = InvolutionReport::default();
    for r in &reports {
        total.merge(r);
    }
    let usage: Vec<String> = PairRule::ALL.iter().map(|&r| format!("{r}={}", total.count(r))).collect();
    Ok(format!("{} compositions paired; {}", total.checked, usage.join(" ")))
}

fn prop3_stabilization(config: &VerifyConfig) -> Result<String, String> {
    let n_max = oracle_n_max(config);
    let mut thresholds = Vec::new();
    for n in 1..=n_max {
        let threshold = structural::stabilization_threshold(n, &config.oracle).map_err(|e| e.to_string())?;
        for m in n.saturating_sub(1).max(1)..=n + 2 {
            let m = Modulus::new(m).expect("m ≥ 1");
            if !structural::prop3_stabilized(n, m, &config.oracle).map_err(|e| e.to_string())? {
                return Err(format!("pc({n},{m}) != 2^floor(n/2)"));
            }
        }
        if threshold > 1 {
            let below = Modulus::new(threshold - 1).expect("≥ 1");
            if structural::prop3_stabilized(n, below, &config.oracle).map_err(|e| e.to_string())? {
                return Err(format!("n={n}: threshold {threshold} is not least"));
            }
        }
        thresholds.push(threshold);
    }
    Ok(format!("thresholds for n = 1..={n_max}: {thresholds:?}"))
}

fn asymptotic_profile(_: &VerifyConfig) -> Result<String, String> {
    let mut prev = f64::INFINITY;
    for m in 1..=64 {
        let p = asymptotics::profile(m).map_err(|e| e.to_string())?;
        if phi(p.alpha, m).abs() > 1e-10 {
            return Err(format!("m={m}: residual {}", phi(p.alpha, m)));
        }
        if m <= 32 {
            let g = p.growth();
            if !(g > std::f64::consts::SQRT_2 && g <= 2.0 + 1e-12 && g < prev) {
                return Err(format!("m={m}: growth {g} out of order"));
            }
            prev = g;
            if (m % 2 == 0) != (p.d > 0.0) || (m % 2 == 1 && p.d != 0.0) {
                return Err(format!("m={m}: d = {}", p.d));
            }
        }
    }
    Ok("residual <= 1e-10 for m <= 64; growth decreasing in (sqrt 2, 2] for m <= 32".into())
}

fn golden(table: Table) -> Result<String, String> {
    let r = goldens::check(table, table.fixture()).map_err(|e| e.to_string())?;
    match r.mismatch {
        None => Ok(format!("{} rows, {} cells", r.rows, r.cells)),
        Some(m) => Err(m.to_string()),
    }
}

fn golden_table1(_: &VerifyConfig) -> Result<String, String> {
    golden(Table::Table1)
}

fn golden_table2(_: &VerifyConfig) -> Result<String, String> {
    golden(Table::Table2)
}
