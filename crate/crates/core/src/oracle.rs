//! Exhaustive enumeration of compositions: the ground truth every faster
//! route is checked against.
//!
//! Compositions of `n` correspond to subsets of the `n - 1` cut points
//! between unit cells. They are produced in increasing order of an
//! `(n - 1)`-bit mask read most-significant-bit first: the highest bit is the
//! cut after cell 1 and bit 0 is the cut after cell `n - 1`. For `n = 3` this
//! gives `(3), (2,1), (1,2), (1,1,1)`.

use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;

use crate::composition::{is_palindromic_mod, Composition, Modulus};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_CAP: u64 = 24;

/// Hard ceiling regardless of the configured cap; masks are `u64`.
pub const MAX_SUPPORTED_N: u64 = 63;

/// Brute-force counter with a size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { cap: DEFAULT_ORACLE_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: u64) -> Self {
        Self { cap: cap.min(MAX_SUPPORTED_N) }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn check(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::NTooSmall { n, min: 1 });
        }
        if n > self.cap {
            return Err(Error::OracleCapExceeded { n, cap: self.cap });
        }
        Ok(())
    }

    pub fn enumerate(&self, n: u64) -> Result<CompositionStream> {
        self.check(n)?;
        Ok(CompositionStream { n, masks: 0..mask_count(n) })
    }

    pub fn count_pc(&self, n: u64, m: Modulus) -> Result<BigUint> {
        self.check(n)?;
        Ok(BigUint::from(count_pc_masks(n, m, 0..mask_count(n))))
    }

    pub fn list_pc(&self, n: u64, m: Modulus) -> Result<Vec<Composition>> {
        Ok(self.enumerate(n)?.filter(|c| c.is_palindromic_mod(m)).collect())
    }

    pub fn count_palindromes(&self, n: u64) -> Result<BigUint> {
        self.count_pc(n, Modulus::Infinity)
    }
}

/// Number of compositions of `n`, i.e. `2^(n-1)`.
pub fn mask_count(n: u64) -> u64 {
    1u64 << (n - 1)
}

/// Writes the parts of the composition of `n` selected by `mask` into `buf`.
pub fn fill_parts(n: u64, mask: u64, buf: &mut Vec<u64>) {
    buf.clear();
    let mut run = 1;
    for cell in 1..n {
        if mask >> (n - 1 - cell) & 1 == 1 {
            buf.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    buf.push(run);
}

/// Counts palindromic-mod-`m` compositions among the given mask range.
///
/// Summing over a partition of `0..2^(n-1)` gives the same result as one
/// sequential pass; callers use this to split work across threads.
pub fn count_pc_masks(n: u64, m: Modulus, masks: Range<u64>) -> u64 {
    let mut buf = Vec::with_capacity(n as usize);
    let mut count = 0;
    for mask in masks {
        fill_parts(n, mask, &mut buf);
        if is_palindromic_mod(&buf, m) {
            count += 1;
        }
    }
    count
}

/// Streams every composition of `n` in canonical mask order.
#[derive(Debug, Clone)]
pub struct CompositionStream {
    n: u64,
    masks: Range<u64>,
}

impl Iterator for CompositionStream {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let mask = self.masks.next()?;
        let mut parts = Vec::new();
        fill_parts(self.n, mask, &mut parts);
        Some(Composition::from_parts_unchecked(parts))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.masks.size_hint()
    }
}

impl ExactSizeIterator for CompositionStream {}
