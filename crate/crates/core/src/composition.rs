//! Compositions and the palindromic-modulo-`m` predicate.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroU64;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A nonempty ordered sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if parts.contains(&0) {
            return Err(Error::NonPositivePart { token: "0".into() });
        }
        Ok(Self { parts })
    }

    /// Builds a composition without checking; callers guarantee nonempty,
    /// positive parts.
    pub(crate) fn from_parts_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(!parts.is_empty() && !parts.contains(&0));
        Self { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.parts
    }

    /// The sum of the parts.
    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Self { parts }
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.parts)
    }

    pub fn is_palindromic_mod(&self, m: Modulus) -> bool {
        is_palindromic_mod(&self.parts, m)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_composition(s)
    }
}

/// Parses `"1,2,2,6,1"`. Whitespace around tokens is ignored.
pub fn parse_composition(text: &str) -> Result<Composition> {
    if text.trim().is_empty() {
        return Err(Error::EmptyComposition);
    }
    let parts = text
        .split(',')
        .map(|raw| {
            let token = raw.trim();
            if let Some(digits) = token.strip_prefix('-') {
                if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::NonPositivePart { token: token.to_string() });
                }
            }
            match token.parse::<u64>() {
                Ok(0) => Err(Error::NonPositivePart { token: token.to_string() }),
                Ok(p) => Ok(p),
                Err(_) => Err(Error::NonNumericPart { token: token.to_string() }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Composition { parts })
}

pub fn format_composition(c: &Composition) -> String {
    c.to_string()
}

/// A modulus `m ≥ 1`, or infinity meaning exact palindromicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulus {
    Finite(NonZeroU64),
    Infinity,
}

impl Modulus {
    pub const TWO: Modulus = Modulus::Finite(NonZeroU64::new(2).unwrap());
    pub const THREE: Modulus = Modulus::Finite(NonZeroU64::new(3).unwrap());

    pub fn new(m: u64) -> Result<Self> {
        NonZeroU64::new(m).map(Modulus::Finite).ok_or(Error::ZeroModulus)
    }

    /// Finite value, or `None` for infinity.
    pub fn get(self) -> Option<u64> {
        match self {
            Modulus::Finite(m) => Some(m.get()),
            Modulus::Infinity => None,
        }
    }

    pub fn is_even(self) -> bool {
        matches!(self.get(), Some(m) if m % 2 == 0)
    }

    pub fn congruent(self, x: u64, y: u64) -> bool {
        match self {
            Modulus::Finite(m) => x % m.get() == y % m.get(),
            Modulus::Infinity => x == y,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(m) => write!(f, "{m}"),
            Modulus::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Modulus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "∞") {
            return Ok(Modulus::Infinity);
        }
        let m = s
            .parse::<u64>()
            .map_err(|_| Error::NonNumericPart { token: s.to_string() })?;
        Modulus::new(m)
    }
}

/// Checks `parts[i] ≡ parts[k-1-i] (mod m)` for every mirrored pair.
pub fn is_palindromic_mod(parts: &[u64], m: Modulus) -> bool {
    let k = parts.len();
    (0..k / 2).all(|i| m.congruent(parts[i], parts[k - 1 - i]))
}

pub fn is_palindrome(parts: &[u64]) -> bool {
    is_palindromic_mod(parts, Modulus::Infinity)
}
