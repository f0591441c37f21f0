//! Structural maps that hold for general `m`: the central-part bijection
//! between sums `2n` and `2n + 1` (even `m`), a fixed-point-free pairing that
//! shows counts are even, and stabilization of counts for large `m`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::composition::{Composition, Modulus};
use crate::error::{Error, Result};
use crate::oracle::Oracle;

fn require_even_modulus(m: Modulus) -> Result<()> {
    match m.get() {
        Some(v) if v % 2 == 1 => Err(Error::OddModulus(m)),
        _ => Ok(()),
    }
}

/// Sum `2n` to sum `2n + 1`: bump the central part of an odd-length
/// composition, or insert a central `1` into an even-length one.
///
/// Only a bijection for even `m` (and `m = ∞`); odd `m` is rejected.
pub fn lift_center(c: &Composition, m: Modulus) -> Result<Composition> {
    require_even_modulus(m)?;
    if !c.is_palindromic_mod(m) {
        return Err(Error::NotPalindromic(m));
    }
    let sum = c.total();
    if !sum.is_multiple_of(2) {
        return Err(Error::WrongParity { sum, expected: "even" });
    }
    let mut parts = c.parts().to_vec();
    let mid = parts.len() / 2;
    if parts.len() % 2 == 1 {
        parts[mid] += 1;
    } else {
        parts.insert(mid, 1);
    }
    Ok(Composition::from_parts_unchecked(parts))
}

/// Inverse of [`lift_center`]: delete a central `1`, or decrement a larger
/// central part.
pub fn drop_center(c: &Composition, m: Modulus) -> Result<Composition> {
    require_even_modulus(m)?;
    if !c.is_palindromic_mod(m) {
        return Err(Error::NotPalindromic(m));
    }
    let sum = c.total();
    if sum % 2 != 1 {
        return Err(Error::WrongParity { sum, expected: "odd" });
    }
    // Mirrored pairs have even sums under an even modulus, so an odd total
    // forces an odd length.
    debug_assert!(c.len() % 2 == 1);
    let mut parts = c.parts().to_vec();
    let mid = parts.len() / 2;
    if parts[mid] == 1 {
        parts.remove(mid);
    } else {
        parts[mid] -= 1;
    }
    Ok(Composition::from_parts_unchecked(parts))
}

pub fn prop1_lift(c: &Composition, m: Modulus) -> Result<Composition> {
    lift_center(c, m)
}

pub fn prop1_drop(c: &Composition, m: Modulus) -> Result<Composition> {
    drop_center(c, m)
}

/// Which branch of the pairing fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairRule {
    Swap,
    SplitEvenCenter,
    MergeEnds,
    SplitOddCenter,
    MergeCenterOne,
}

impl PairRule {
    pub const ALL: [PairRule; 5] = [
        PairRule::Swap,
        PairRule::SplitEvenCenter,
        PairRule::MergeEnds,
        PairRule::SplitOddCenter,
        PairRule::MergeCenterOne,
    ];

    /// The rule that fires on the partner.
    pub fn inverse(self) -> PairRule {
        match self {
            PairRule::Swap => PairRule::Swap,
            PairRule::SplitEvenCenter => PairRule::MergeEnds,
            PairRule::MergeEnds => PairRule::SplitEvenCenter,
            PairRule::SplitOddCenter => PairRule::MergeCenterOne,
            PairRule::MergeCenterOne => PairRule::SplitOddCenter,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairRule::Swap => "swap",
            PairRule::SplitEvenCenter => "split_even_center",
            PairRule::MergeEnds => "merge_ends",
            PairRule::SplitOddCenter => "split_odd_center",
            PairRule::MergeCenterOne => "merge_center_one",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PairRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingResult {
    pub partner: Composition,
    pub rule: PairRule,
}

/// Fixed-point-free involution on the palindromic-mod-`m` compositions of
/// `n ≥ 2`.
///
/// Non-palindromes swap their first mismatched mirrored pair. Palindromes
/// are paired by reshaping the middle:
/// odd length with even center `2x` ↔ even length with ends `x`, and
/// odd center `2x + 1 ≥ 3` ↔ central block `(x, 1, x)`.
pub fn prop2_pair(c: &Composition, m: Modulus) -> Result<PairingResult> {
    if !c.is_palindromic_mod(m) {
        return Err(Error::NotPalindromic(m));
    }
    let n = c.total();
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let p = c.parts();
    let len = p.len();
    if let Some(i) = (0..len / 2).find(|&i| p[i] != p[len - 1 - i]) {
        let mut parts = p.to_vec();
        parts.swap(i, len - 1 - i);
        return Ok(pair(parts, PairRule::Swap));
    }
    let mid = len / 2;
    if len.is_multiple_of(2) {
        let x = p[0];
        let mut parts = p[1..len - 1].to_vec();
        parts.insert(parts.len() / 2, 2 * x);
        return Ok(pair(parts, PairRule::MergeEnds));
    }
    let center = p[mid];
    if center.is_multiple_of(2) {
        let mut parts = Vec::with_capacity(len + 1);
        parts.push(center / 2);
        parts.extend_from_slice(&p[..mid]);
        parts.extend_from_slice(&p[mid + 1..]);
        parts.push(center / 2);
        return Ok(pair(parts, PairRule::SplitEvenCenter));
    }
    if center >= 3 {
        let half = (center - 1) / 2;
        let mut parts = p.to_vec();
        parts.splice(mid..=mid, [half, 1, half]);
        return Ok(pair(parts, PairRule::SplitOddCenter));
    }
    // Center 1 with n ≥ 2 means length ≥ 3.
    let x = p[mid - 1];
    let mut parts = p.to_vec();
    parts.splice(mid - 1..=mid + 1, [2 * x + 1]);
    Ok(pair(parts, PairRule::MergeCenterOne))
}

fn pair(parts: Vec<u64>, rule: PairRule) -> PairingResult {
    PairingResult { partner: Composition::from_parts_unchecked(parts), rule }
}

/// Outcome of checking [`prop2_pair`] over a whole set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvolutionReport {
    pub checked: usize,
    /// Indexed like [`PairRule::ALL`].
    pub rule_counts: [usize; 5],
    pub fixed_points: usize,
    /// Elements whose partner is outside the set, has a different sum, does
    /// not map back, or fired an unexpected rule.
    pub violations: usize,
}

impl InvolutionReport {
    pub fn is_involution(&self) -> bool {
        self.fixed_points == 0 && self.violations == 0
    }

    pub fn count(&self, rule: PairRule) -> usize {
        self.rule_counts[rule.index()]
    }

    pub fn merge(&mut self, other: &InvolutionReport) {
        self.checked += other.checked;
        self.fixed_points += other.fixed_points;
        self.violations += other.violations;
        for (a, b) in self.rule_counts.iter_mut().zip(other.rule_counts) {
            *a += b;
        }
    }
}

/// Applies the pairing twice to every element of `set` (the palindromic-mod-`m`
/// compositions of one `n`).
pub fn check_involution(set: &[Composition], m: Modulus) -> InvolutionReport {
    let mut report = InvolutionReport::default();
    for c in set {
        report.checked += 1;
        let Ok(first) = prop2_pair(c, m) else {
            report.violations += 1;
            continue;
        };
        report.rule_counts[first.rule.index()] += 1;
        if &first.partner == c {
            report.fixed_points += 1;
            continue;
        }
        let ok = first.partner.total() == c.total()
            && first.partner.is_palindromic_mod(m)
            && matches!(prop2_pair(&first.partner, m),
                Ok(ref back) if &back.partner == c && back.rule == first.rule.inverse());
        if !ok {
            report.violations += 1;
        }
    }
    report
}

/// True iff `pc(n, m)` equals the palindrome count `2^⌊n/2⌋`.
pub fn prop3_stabilized(n: u64, m: Modulus, oracle: &Oracle) -> Result<bool> {
    Ok(oracle.count_pc(n, m)? == BigUint::one() << (n / 2))
}

/// Least finite `m` such that `pc(n, m') = 2^⌊n/2⌋` for every `m' ≥ m`.
///
/// Mirrored parts differ by at most `n - 2`, so every `m ≥ n - 1` already
/// behaves like `m = ∞`; the sweep only has to go downward from there.
pub fn stabilization_threshold(n: u64, oracle: &Oracle) -> Result<u64> {
    oracle.check(n)?;
    let top = n.saturating_sub(1).max(1);
    let mut threshold = top;
    for m in (1..=top).rev() {
        if !prop3_stabilized(n, Modulus::new(m)?, oracle)? {
            break;
        }
        threshold = m;
    }
    Ok(threshold)
}
