//! The `m = 3` construction: `{1,2}`-compositions of `n` that begin with
//! `(1,1)` or `(2)` (there are `2 f(n-1)` of them) map bijectively onto the
//! compositions of `n` that are palindromic modulo 3.
//!
//! A word is cut into segments, each segment becomes a mirrored pair of
//! parts through an [`M3Triple`], and a trailing two-free segment, if any,
//! becomes the central part.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::composition::{Composition, Modulus};
use crate::error::{Error, Result};

/// A composition with parts in `{1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoOneWord {
    parts: Vec<u8>,
}

impl TwoOneWord {
    pub fn new(parts: Vec<u8>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if let Some(position) = parts.iter().position(|&p| p != 1 && p != 2) {
            return Err(Error::InvalidSymbol {
                position,
                symbol: char::from_digit(u32::from(parts[position]), 36).unwrap_or('?'),
            });
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Member of `A_n`: starts with `(1,1)` or `(2)`.
    pub fn in_a(&self) -> bool {
        self.parts.starts_with(&[1, 1]) || self.parts.first() == Some(&2)
    }
}

impl fmt::Display for TwoOneWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl FromStr for TwoOneWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c: Composition = s.parse()?;
        let parts = c
            .parts()
            .iter()
            .map(|&p| if p <= 2 { p as u8 } else { u8::MAX })
            .collect::<Vec<_>>();
        if let Some(position) = parts.iter().position(|&p| p == u8::MAX) {
            let symbol = char::from_digit(c.parts()[position].min(35) as u32, 36).unwrap_or('?');
            return Err(Error::InvalidSymbol { position, symbol });
        }
        Self::new(parts)
    }
}

fn join(parts: &[u8]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push((b'0' + p) as char);
    }
    out
}

/// All `{1,2}`-compositions of `n`, lexicographic.
fn one_two_compositions(n: u64) -> Vec<Vec<u8>> {
    fn rec(rest: u64, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in [1u8, 2] {
            if u64::from(p) <= rest {
                prefix.push(p);
                rec(rest - u64::from(p), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// `A_n`: `(1,1) + σ` and `(2) + σ` over `{1,2}`-compositions `σ` of `n - 2`,
/// in lexicographic order.
pub fn an_elements(n: u64) -> Result<Vec<TwoOneWord>> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let tails = one_two_compositions(n - 2);
    let mut out = Vec::with_capacity(2 * tails.len());
    for head in [&[1u8, 1][..], &[2u8][..]] {
        for tail in &tails {
            let mut parts = head.to_vec();
            parts.extend_from_slice(tail);
            out.push(TwoOneWord { parts });
        }
    }
    Ok(out)
}

/// Counts over one segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentStats {
    pub len: u64,
    pub ones: u64,
    /// Ones before the first two.
    pub leading_ones: u64,
    pub twos: u64,
}

impl SegmentStats {
    pub fn of(segment: &[u8]) -> Self {
        let ones = segment.iter().filter(|&&p| p == 1).count() as u64;
        let leading_ones = segment.iter().take_while(|&&p| p == 1).count() as u64;
        Self {
            len: segment.len() as u64,
            ones,
            leading_ones,
            twos: segment.len() as u64 - ones,
        }
    }
}

/// `a = a_1 + ... + a_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M3Decomposition {
    segments: Vec<Vec<u8>>,
}

impl M3Decomposition {
    pub fn segments(&self) -> &[Vec<u8>] {
        &self.segments
    }

    pub fn stats(&self) -> impl Iterator<Item = SegmentStats> + '_ {
        self.segments.iter().map(|s| SegmentStats::of(s))
    }

    /// Length of the final segment when it contains no two.
    pub fn trailing_two_free(&self) -> Option<u64> {
        let last = self.segments.last()?;
        (!last.contains(&2)).then_some(last.len() as u64)
    }

    /// Segments that contain a two, i.e. all but a two-free tail.
    pub fn paired_segments(&self) -> &[Vec<u8>] {
        let k = self.segments.len() - usize::from(self.trailing_two_free().is_some());
        &self.segments[..k]
    }

    pub fn triples(&self) -> Result<Vec<M3Triple>> {
        self.paired_segments().iter().map(|s| substring_to_triple(s)).collect()
    }

    pub fn concat(&self) -> Vec<u8> {
        self.segments.concat()
    }
}

impl fmt::Display for M3Decomposition {
    /// `(1,1,1,2)+(2)+(1,1,2,1,2)+(1,1)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "({})", join(s))?;
        }
        Ok(())
    }
}

fn not_in_a(reason: &'static str, prefix: &[u8]) -> Error {
    Error::NotInA { reason, prefix: join(prefix) }
}

/// Splits `a ∈ A_n` into segments, applying the first matching rule to each
/// remaining suffix:
///
/// 1. no twos left: take everything;
/// 2. starts with the only remaining two: take `(2)`;
/// 3. starts with `(2,2)` or `(2,1,1)`: take `(2)`;
/// 4. starts with `(1,1)` or `(2,1,2)`: take through the first two that is
///    either the last two or is followed by `(2)` or `(1,1)`.
pub fn decompose(a: &TwoOneWord) -> Result<M3Decomposition> {
    let p = &a.parts;
    if a.total() < 2 {
        return Err(not_in_a("n must be at least 2", p));
    }
    if !a.in_a() {
        return Err(not_in_a("must begin with (1,1) or (2)", &p[..p.len().min(2)]));
    }
    let mut segments = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let rest = &p[start..];
        let take = if !rest.contains(&2) {
            rest.len()
        } else if (rest[0] == 2 && !rest[1..].contains(&2))
            || rest.starts_with(&[2, 2])
            || rest.starts_with(&[2, 1, 1])
        {
            1
        } else if rest.starts_with(&[1, 1]) || rest.starts_with(&[2, 1, 2]) {
            rule4_len(rest)
        } else {
            return Err(not_in_a("remaining suffix begins with (1,2)", &p[..(start + 2).min(p.len())]));
        };
        segments.push(rest[..take].to_vec());
        start += take;
    }
    Ok(M3Decomposition { segments })
}

fn rule4_len(rest: &[u8]) -> usize {
    let last_two = rest.iter().rposition(|&x| x == 2).expect("rule 4 needs a two");
    (0..rest.len())
        .filter(|&i| rest[i] == 2)
        .find(|&i| {
            let after = &rest[i + 1..];
            i == last_two || after.starts_with(&[2]) || after.starts_with(&[1, 1])
        })
        .map(|i| i + 1)
        .expect("the last two always terminates")
}

/// A mirrored pair `(base + left_excess, base + right_excess)`; the excesses
/// are multiples of 3 and at most one is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct M3Triple {
    pub base: u64,
    pub left_excess: u64,
    pub right_excess: u64,
}

impl M3Triple {
    pub fn new(base: u64, left_excess: u64, right_excess: u64) -> Self {
        Self { base, left_excess, right_excess }
    }

    pub fn left(&self) -> u64 {
        self.base + self.left_excess
    }

    pub fn right(&self) -> u64 {
        self.base + self.right_excess
    }
}

impl fmt::Display for M3Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.base, self.left_excess, self.right_excess)
    }
}

/// Even leading-ones count `o'`: `(o'/2 + 1, 3(t - 1), 0)`;
/// odd: `((o' - 1)/2, 0, 3t)`.
pub fn substring_to_triple(segment: &[u8]) -> Result<M3Triple> {
    let st = SegmentStats::of(segment);
    if st.twos == 0 {
        return Err(Error::InvalidTriples("segment contains no two"));
    }
    match st.leading_ones {
        1 => Err(Error::CorruptSegment),
        o if o % 2 == 0 => Ok(M3Triple::new(o / 2 + 1, 3 * (st.twos - 1), 0)),
        o => Ok(M3Triple::new((o - 1) / 2, 0, 3 * st.twos)),
    }
}

/// Places triple `i` at positions `i` and `k_b - 1 - i`, and the two-free
/// tail length, if any, in the middle.
pub fn assemble_b(triples: &[M3Triple], trailing_two_free: Option<u64>) -> Result<Composition> {
    if triples.is_empty() && trailing_two_free.is_none() {
        return Err(Error::EmptyComposition);
    }
    let pairs = triples.len();
    let len = 2 * pairs + usize::from(trailing_two_free.is_some());
    let mut parts = vec![0u64; len];
    for (i, t) in triples.iter().enumerate() {
        parts[i] = t.left();
        parts[len - 1 - i] = t.right();
    }
    if let Some(center) = trailing_two_free {
        parts[pairs] = center;
    }
    Composition::new(parts).map_err(|_| Error::InvalidTriples("assembled part is zero"))
}

/// `A_n → B_n`.
pub fn forward(a: &TwoOneWord) -> Result<Composition> {
    let d = decompose(a)?;
    assemble_b(&d.triples()?, d.trailing_two_free())
}

/// `B_n → A_n`.
///
/// Each mirrored pair `(x, y)` gives `base = min(x, y)` and the excess on the
/// larger side, and expands to a segment:
/// left-heavy or equal `(c, d, 0)` → `1^(2(c-1)) 2 (1 2)^(d/3)`,
/// right-heavy `(c, 0, e)` → `1^(2c+1) 2 (1 2)^(e/3 - 1)`.
/// A central part `k` becomes the tail `1^k`.
pub fn inverse(b: &Composition) -> Result<TwoOneWord> {
    if !b.is_palindromic_mod(Modulus::THREE) {
        return Err(Error::NotPalindromic(Modulus::THREE));
    }
    let n = b.total();
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let p = b.parts();
    let len = p.len();
    let mut parts = Vec::with_capacity(n as usize);
    for i in 0..len / 2 {
        let (x, y) = (p[i], p[len - 1 - i]);
        let triple = if x >= y {
            M3Triple::new(y, x - y, 0)
        } else {
            M3Triple::new(x, 0, y - x)
        };
        expand_triple(&triple, &mut parts);
    }
    if len % 2 == 1 {
        parts.extend(core::iter::repeat_n(1u8, p[len / 2] as usize));
    }
    Ok(TwoOneWord { parts })
}

fn expand_triple(t: &M3Triple, out: &mut Vec<u8>) {
    let (leading, extra_twos) = if t.right_excess == 0 {
        (2 * (t.base - 1), t.left_excess / 3)
    } else {
        (2 * t.base + 1, t.right_excess / 3 - 1)
    };
    out.extend(core::iter::repeat_n(1u8, leading as usize));
    out.push(2);
    for _ in 0..extra_twos {
        out.extend_from_slice(&[1, 2]);
    }
}
