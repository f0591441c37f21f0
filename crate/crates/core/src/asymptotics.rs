//! Dominant-pole asymptotics of `pc(n, m)`.
//!
//! The poles of `F_m` are the zeros of `φ_m(q) = 1 - 2q^2 - q^m`. The unique
//! positive zero `α` is found by bisection; the residue constants come from
//! `c = -N(α) / (α φ'(α))` with `N` the numerator of `F_m`, and likewise `d`
//! at `-α` for even `m`. Then `pc(n, m) α^n → c + (-1)^n d`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::composition::Modulus;
use crate::counting::pc_sequence;
use crate::error::{Error, Result};

/// `q^k` by repeated squaring.
fn powu(q: f64, mut k: u64) -> f64 {
    let (mut base, mut acc) = (q, 1.0);
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// `1 - 2q^2 - q^m`.
pub fn phi(q: f64, m: u64) -> f64 {
    1.0 - 2.0 * q * q - powu(q, m)
}

/// `φ'(q) = -4q - m q^(m-1)`.
pub fn phi_prime(q: f64, m: u64) -> f64 {
    -4.0 * q - m as f64 * powu(q, m - 1)
}

/// Numerator of `F_m`: `q + 2q^2 - q^(m+1)`.
pub fn numerator(q: f64, m: u64) -> f64 {
    q + 2.0 * q * q - powu(q, m + 1)
}

/// `F_m(q)` as a float, away from the poles.
pub fn gf_value(q: f64, m: u64) -> f64 {
    numerator(q, m) / phi(q, m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }
}

/// Bisects `φ_m` on `[0, 1]` (`φ(0) = 1`, `φ(1) = -2`, strictly decreasing)
/// until the bracket is narrower than `tol` or cannot shrink further. An
/// exact zero collapses the bracket to a point.
pub fn find_alpha(m: u64, tol: f64) -> Result<Bracket> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut b = Bracket { lo: 0.0, hi: 1.0 };
    while b.width() > tol {
        let mid = b.midpoint();
        if mid <= b.lo || mid >= b.hi {
            break;
        }
        let value = phi(mid, m);
        if value == 0.0 {
            return Ok(Bracket { lo: mid, hi: mid });
        }
        if value > 0.0 {
            b.lo = mid;
        } else {
            b.hi = mid;
        }
    }
    Ok(b)
}

/// Residue-type constant `lim (1 - q/p) F_m(q)` at a simple pole `p`.
fn pole_constant(p: f64, m: u64) -> f64 {
    -numerator(p, m) / (p * phi_prime(p, m))
}

/// `(c, d)`; `d` is exactly zero for odd `m`, where `-α` is not a pole.
pub fn residue_constants(m: u64) -> Result<(f64, f64)> {
    let alpha = find_alpha(m, 1e-15)?.midpoint();
    let c = pole_constant(alpha, m);
    let d = if m.is_multiple_of(2) { pole_constant(-alpha, m) } else { 0.0 };
    Ok((c, d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticProfile {
    pub m: u64,
    pub alpha: f64,
    pub bracket: Bracket,
    pub c: f64,
    pub d: f64,
}

impl AsymptoticProfile {
    pub fn growth(&self) -> f64 {
        1.0 / self.alpha
    }

    /// `c + (-1)^n d`.
    pub fn limit_for(&self, n: u64) -> f64 {
        if n.is_multiple_of(2) {
            self.c + self.d
        } else {
            self.c - self.d
        }
    }
}

pub fn profile(m: u64) -> Result<AsymptoticProfile> {
    let bracket = find_alpha(m, 1e-15)?;
    let alpha = bracket.midpoint();
    let c = pole_constant(alpha, m);
    let d = if m.is_multiple_of(2) { pole_constant(-alpha, m) } else { 0.0 };
    Ok(AsymptoticProfile { m, alpha, bracket, c, d })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub n: u64,
    pub count: BigUint,
    pub scaled: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub profile: AsymptoticProfile,
    pub rows: Vec<ErrorRow>,
    /// Max error over the top quartile of the range.
    pub max_error_top_quartile: f64,
    pub max_error: f64,
}

/// True when `x` has at most 53 significant bits.
fn exact_in_f64(x: &BigUint) -> bool {
    x.bits() - x.trailing_zeros().unwrap_or(0) <= 53
}

/// Computes `|pc(n, m) α^n - (c + (-1)^n d)|` for `n` in `n_lo..=n_hi`.
pub fn verify_asymptotics(m: u64, n_lo: u64, n_hi: u64) -> Result<AsymptoticReport> {
    if n_lo == 0 || n_hi < n_lo {
        return Err(Error::NTooSmall { n: n_lo, min: 1 });
    }
    let profile = profile(m)?;
    let counts = pc_sequence(Modulus::new(m)?, n_hi as usize);
    let mut rows = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    for n in n_lo..=n_hi {
        let count = counts[n as usize].clone();
        if !exact_in_f64(&count) {
            return Err(Error::PrecisionLoss { n, m });
        }
        let scaled = count.to_f64().expect("bounded above") * powu(profile.alpha, n);
        let error = (scaled - profile.limit_for(n)).abs();
        rows.push(ErrorRow { n, count, scaled, error });
    }
    let quartile_start = n_hi - (n_hi - n_lo) / 4;
    let max_of = |rows: &mut dyn Iterator<Item = &ErrorRow>| rows.map(|r| r.error).fold(0.0, f64::max);
    let max_error_top_quartile = max_of(&mut rows.iter().filter(|r| r.n >= quartile_start));
    let max_error = max_of(&mut rows.iter());
    Ok(AsymptoticReport { profile, rows, max_error_top_quartile, max_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2: f64 = core::f64::consts::SQRT_2;

    fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.0, 3), 1.0);
        assert_eq!(phi(1.0, 5), -2.0);
        assert!(phi(1.0 / sqrt(3.0), 2).abs() < 1e-15);
    }

    #[test]
    fn alpha_examples() {
        assert!((find_alpha(1, 1e-13).unwrap().midpoint() - 0.5).abs() < 1e-12);
        let golden = 2.0 / (1.0 + sqrt(5.0));
        assert!((find_alpha(3, 1e-13).unwrap().midpoint() - golden).abs() < 1e-12);
        assert!((find_alpha(2, 1e-13).unwrap().midpoint() - 0.577_350_269_2).abs() < 1e-10);
        let b = find_alpha(7, 1e-12).unwrap();
        assert!(b.width() <= 1e-12);
        assert!(phi(b.lo, 7) > 0.0 && phi(b.hi, 7) <= 0.0);
    }

    #[test]
    fn residue_examples() {
        let (c, d) = residue_constants(2).unwrap();
        assert!((c - (3.0 + sqrt(3.0)) / 9.0).abs() < 1e-12);
        assert!((d - (3.0 - sqrt(3.0)) / 9.0).abs() < 1e-12);
        let (c, d) = residue_constants(3).unwrap();
        assert!((c - (5.0 - sqrt(5.0)) / 5.0).abs() < 1e-12);
        assert_eq!(d, 0.0);
        let (c, d) = residue_constants(4).unwrap();
        assert!((c - 0.58).abs() < 5e-3 && (d - 0.13).abs() < 5e-3);
        let (c, _) = residue_constants(1).unwrap();
        assert!((c - 0.5).abs() < 1e-12);
    }

    #[test]
    fn residue_matches_limit_probe() {
        // Probe (1 - q/α) F(q) just inside the pole and compare with the
        // closed residue formula.
        for m in 1..=12 {
            let p = profile(m).unwrap();
            let q = p.alpha * (1.0 - 1e-7);
            let probe = (1.0 - q / p.alpha) * gf_value(q, m);
            assert!((probe - p.c).abs() < 1e-5, "m={m}: {probe} vs {}", p.c);
            if m % 2 == 0 {
                let q = -p.alpha * (1.0 - 1e-7);
                let probe = (1.0 + q / p.alpha) * gf_value(q, m);
                assert!((probe - p.d).abs() < 1e-5, "m={m}");
            }
        }
    }

    #[test]
    fn root_residual_and_monotone_growth() {
        let mut prev = f64::INFINITY;
        for m in 1..=64 {
            let p = profile(m).unwrap();
            assert!(phi(p.alpha, m).abs() <= 1e-10);
            if m <= 32 {
                let g = p.growth();
                assert!(g > SQRT2 && g <= 2.0 + 1e-12);
                assert!(g < prev);
                prev = g;
                if m % 2 == 0 {
                    assert!(p.d > 0.0);
                } else {
                    assert_eq!(p.d, 0.0);
                }
            }
        }
    }

    #[test]
    fn limit_row() {
        for m in [32, 64] {
            let p = profile(m).unwrap();
            assert!((p.growth() - SQRT2).abs() < 0.01);
            assert!((p.c - (2.0 + SQRT2) / 4.0).abs() < 0.01);
            assert!((p.d - (2.0 - SQRT2) / 4.0).abs() < 0.01);
        }
    }

    #[test]
    fn error_reports() {
        let r = verify_asymptotics(3, 30, 60).unwrap();
        assert!(r.max_error_top_quartile < 1e-6);
        let r = verify_asymptotics(1, 10, 40).unwrap();
        assert_eq!(r.max_error, 0.0);
        let r = verify_asymptotics(2, 30, 60).unwrap();
        let p = r.profile;
        for row in &r.rows {
            let above = row.scaled > p.c;
            assert_eq!(above, row.n % 2 == 0);
            assert!(row.error < 1e-6);
        }
        assert!(matches!(verify_asymptotics(2, 10, 80), Err(Error::PrecisionLoss { .. })));
        assert_eq!(verify_asymptotics(1, 10, 80).unwrap().max_error, 0.0);
        assert!(verify_asymptotics(2, 0, 5).is_err());
    }
}
