//! Exact counting of `pc(n, m)`.
//!
//! Three routes are provided: the rational generating function
//! `F_m(q) = (q + 2q^2 - q^(m+1)) / (1 - 2q^2 - q^m)` expanded by linear
//! recurrence, closed forms for `m ∈ {1, 2, 3, 4, ∞}`, and a series
//! re-derivation of `F_m` from the mirrored-pair construction. Everything is
//! exact integer arithmetic. Series are 0-based, so `pc(n, m)` is
//! coefficient `n`.

mod closed;
mod series;
mod table;

pub use closed::{fibonacci, pc_closed, pell};
pub use series::{series_add, series_mul, series_reciprocal, TruncatedSeries};
pub use table::{count_table, CountCell, CountTable, Method};

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::composition::Modulus;
use crate::error::{Error, Result};

/// `numerator / denominator` with `denominator[0] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGf {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl RationalGf {
    /// Builds a generating function from sparse `(power, coeff)` terms,
    /// combining like powers and trimming trailing zeros.
    pub fn from_terms(numerator: &[(usize, i64)], denominator: &[(usize, i64)]) -> Self {
        Self { numerator: dense(numerator), denominator: dense(denominator) }
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }

    /// Expands to order `order` via `a_n = num_n - sum_{j>=1} den_j a_{n-j}`.
    pub fn coefficients(&self, order: usize) -> TruncatedSeries {
        debug_assert!(self.denominator[0].is_one());
        let taps: Vec<(usize, &BigInt)> = self
            .denominator
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut a: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut value = self.numerator.get(n).cloned().unwrap_or_default();
            for &(j, dj) in &taps {
                if j <= n {
                    value -= dj * &a[n - j];
                }
            }
            a.push(value);
        }
        TruncatedSeries::from_coeffs(a, order)
    }
}

fn dense(terms: &[(usize, i64)]) -> Vec<BigInt> {
    let len = terms.iter().map(|&(p, _)| p + 1).max().unwrap_or(1);
    let mut out = vec![BigInt::zero(); len];
    for &(p, c) in terms {
        out[p] += c;
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// `F_m(q)`. For infinity the `q^m` terms vanish, leaving
/// `(q + 2q^2) / (1 - 2q^2)`.
pub fn gf_for(m: Modulus) -> RationalGf {
    match m.get() {
        Some(m) => {
            let m = m as usize;
            RationalGf::from_terms(&[(1, 1), (2, 2), (m + 1, -1)], &[(0, 1), (2, -2), (m, -1)])
        }
        None => RationalGf::from_terms(&[(1, 1), (2, 2)], &[(0, 1), (2, -2)]),
    }
}

pub fn gf_coefficients(g: &RationalGf, order: usize) -> TruncatedSeries {
    g.coefficients(order)
}

/// `pc(n, m)` for `n = 0..=n_max` by recurrence (index 0 is 0).
pub fn pc_sequence(m: Modulus, n_max: usize) -> Vec<BigUint> {
    gf_for(m)
        .coefficients(n_max)
        .coeffs()
        .iter()
        .map(|c| c.to_biguint().expect("counts are nonnegative"))
        .collect()
}

pub fn pc_recurrence(n: u64, m: Modulus) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::NTooSmall { n, min: 1 });
    }
    Ok(pc_sequence(m, n as usize).swap_remove(n as usize))
}

/// Generating function of ordered pairs `(x, y)` of positive integers with
/// `x ≡ y (mod m)`: equal pairs plus a multiple of `m` added to either side,
/// `q^2/(1-q^2) + 2q^2/(1-q^2) * q^m/(1-q^m)`.
pub fn build_pair_series(m: u64, order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let inv = |s: &TruncatedSeries| s.reciprocal().expect("constant term is 1");
    let q2 = TruncatedSeries::monomial(2, 1, order);
    let qm = TruncatedSeries::monomial(m as usize, 1, order);
    let over_one_minus_q2 = inv(&(&one - &q2));
    let equal = &q2 * &over_one_minus_q2;
    let shifted = &(&TruncatedSeries::monomial(2, 2, order) * &over_one_minus_q2)
        * &(&qm * &inv(&(&one - &qm)));
    &equal + &shifted
}

/// Assembles `G/(1-G) * 1/(1-q) + q/(1-q)`: a sequence of mirrored pairs,
/// then an optional central part.
pub fn assemble_from_pairs(pairs: &TruncatedSeries) -> TruncatedSeries {
    let order = pairs.order();
    let one = TruncatedSeries::one(order);
    let q = TruncatedSeries::monomial(1, 1, order);
    let center = (&one - &q).reciprocal().expect("constant term is 1");
    let seq = pairs * &(&one - pairs).reciprocal().expect("G has no constant term");
    &(&seq * &center) + &(&q * &center)
}

/// Checks that the pair construction reproduces `F_m` exactly to `order`.
pub fn verify_pair_construction(m: u64, order: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let min = m as usize + 2;
    if order < min {
        return Err(Error::NTooSmall { n: order as u64, min: min as u64 });
    }
    let lhs = assemble_from_pairs(&build_pair_series(m, order));
    let rhs = gf_for(Modulus::new(m)?).coefficients(order);
    Ok(lhs == rhs)
}
