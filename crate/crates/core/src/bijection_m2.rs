//! The `m = 2` construction: ternary words of length `n - 1`, in two
//! families, map bijectively onto compositions of `2n` that are palindromic
//! modulo 2. A second map lifts those onto compositions of `2n + 1`.
//!
//! Each word is first turned into a sequence of [`Triple`]s. A triple
//! `(base, half_gap, flipped)` encodes a mirrored pair of parts: the smaller
//! part is `base`, the larger is `base + 2 * half_gap`, and `flipped` puts the
//! larger part on the right.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::composition::{Composition, Modulus};
use crate::error::{Error, Result};
use crate::structural::{drop_center, lift_center};

const MOD2: Modulus = Modulus::TWO;

/// A word over `{0, 1, 2}` of length `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryWord {
    symbols: Vec<u8>,
}

impl TernaryWord {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(position) = symbols.iter().position(|&s| s > 2) {
            return Err(Error::InvalidSymbol {
                position,
                symbol: char::from_digit(u32::from(symbols[position]), 36).unwrap_or('?'),
            });
        }
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Half of the target sum, `len + 1`.
    pub fn half_sum(&self) -> u64 {
        self.symbols.len() as u64 + 1
    }

    /// All `3^(n-1)` words for half-sum `n`, lexicographic.
    pub fn all(n: u64) -> impl Iterator<Item = TernaryWord> {
        let len = n.saturating_sub(1) as usize;
        let total = 3u64.pow(len as u32);
        (0..total).map(move |mut idx| {
            let mut symbols = vec![0u8; len];
            for slot in symbols.iter_mut().rev() {
                *slot = (idx % 3) as u8;
                idx /= 3;
            }
            TernaryWord { symbols }
        })
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for TernaryWord {
    type Err = Error;

    /// Contiguous digits such as `"01221"`; the empty string is the word for
    /// `n = 1`.
    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .enumerate()
            .map(|(position, ch)| match ch {
                '0'..='2' => Ok(ch as u8 - b'0'),
                _ => Err(Error::InvalidSymbol { position, symbol: ch }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { symbols })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Plain,
    Marked,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Plain => "plain",
            Family::Marked => "marked",
        })
    }
}

impl FromStr for Family {
    type Err = &'static str;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Family::Plain),
            "marked" => Ok(Family::Marked),
            _ => Err("expected `plain` or `marked`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub base: u64,
    pub half_gap: u64,
    pub flipped: bool,
}

impl Triple {
    const FRESH: Triple = Triple { base: 1, half_gap: 0, flipped: false };

    pub fn new(base: u64, half_gap: u64, flipped: bool) -> Self {
        Self { base, half_gap, flipped }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.base, self.half_gap, u8::from(self.flipped))
    }
}

/// Nonempty triple sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleSeq {
    triples: Vec<Triple>,
}

impl TripleSeq {
    /// Checks `base ≥ 1` everywhere and that every flipped non-final triple
    /// has a positive gap.
    pub fn new(triples: Vec<Triple>) -> Result<Self> {
        if triples.is_empty() {
            return Err(Error::InvalidTriples("empty sequence"));
        }
        if triples.iter().any(|t| t.base == 0) {
            return Err(Error::InvalidTriples("base must be positive"));
        }
        let inner = &triples[..triples.len() - 1];
        if inner.iter().any(|t| t.flipped && t.half_gap == 0) {
            return Err(Error::InvalidTriples("flipped inner triple needs a positive gap"));
        }
        Ok(Self { triples })
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn last(&self) -> &Triple {
        self.triples.last().expect("nonempty")
    }

    pub fn family(&self) -> Family {
        if self.last().flipped {
            Family::Marked
        } else {
            Family::Plain
        }
    }

    /// `Σ base + Σ half_gap`, half of the composition's sum.
    pub fn half_sum(&self) -> u64 {
        self.triples.iter().map(|t| t.base + t.half_gap).sum()
    }
}

impl fmt::Display for TripleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.triples.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Runs the word through the triple-building rules.
///
/// `0` opens a fresh `(1,0,0)`; `2` bumps the current gap; `1` bumps the
/// current base, unless the previous symbol was `2`, in which case it flips
/// the current triple and opens a fresh one. The symbol before the first is
/// treated as "not 2".
pub fn word_to_triples(word: &TernaryWord) -> TripleSeq {
    let mut triples = vec![Triple::FRESH];
    let mut prev = None;
    for &sym in &word.symbols {
        let cur = triples.last_mut().expect("nonempty");
        match (sym, prev) {
            (0, _) => triples.push(Triple::FRESH),
            (2, _) => cur.half_gap += 1,
            (1, Some(2)) => {
                cur.flipped = true;
                triples.push(Triple::FRESH);
            }
            (1, _) => cur.base += 1,
            _ => unreachable!("symbols are validated"),
        }
        prev = Some(sym);
    }
    TripleSeq { triples }
}

/// Sets the last triple's flip flag, producing the second family.
pub fn mark_last(seq: &TripleSeq) -> Result<TripleSeq> {
    if seq.last().flipped {
        return Err(Error::AlreadyMarked);
    }
    let mut triples = seq.triples.clone();
    triples.last_mut().expect("nonempty").flipped = true;
    Ok(TripleSeq { triples })
}

/// Lays the triples out as mirrored pairs, outermost first.
///
/// The last triple is the innermost pair, or a lone central part `2 * base`
/// when it is unflipped with no gap.
pub fn triples_to_composition(seq: &TripleSeq) -> Composition {
    let k = seq.len();
    let last = seq.last();
    let central = !last.flipped && last.half_gap == 0;
    let len = if central { 2 * k - 1 } else { 2 * k };
    let mut parts = vec![0u64; len];
    for (j, t) in seq.triples.iter().enumerate() {
        let (small, large) = (t.base, t.base + 2 * t.half_gap);
        if j + 1 == k && central {
            parts[j] = 2 * t.base;
        } else if t.flipped {
            parts[j] = small;
            parts[len - 1 - j] = large;
        } else {
            parts[j] = large;
            parts[len - 1 - j] = small;
        }
    }
    Composition::from_parts_unchecked(parts)
}

/// Reads the mirrored pairs of a mod-2 palindromic composition of even sum
/// back into triples.
pub fn composition_to_triples(c: &Composition) -> Result<TripleSeq> {
    if !c.is_palindromic_mod(MOD2) {
        return Err(Error::NotPalindromic(MOD2));
    }
    let sum = c.total();
    if !sum.is_multiple_of(2) {
        return Err(Error::WrongParity { sum, expected: "even" });
    }
    let p = c.parts();
    let len = p.len();
    let mut triples: Vec<Triple> = (0..len / 2)
        .map(|j| {
            let (left, right) = (p[j], p[len - 1 - j]);
            let small = left.min(right);
            Triple::new(small, (left.max(right) - small) / 2, left < right)
        })
        .collect();
    if len % 2 == 1 {
        triples.push(Triple::new(p[len / 2] / 2, 0, false));
    } else {
        // An equal innermost pair only comes from the marked family.
        let last = triples.last_mut().expect("even length ≥ 2");
        if last.half_gap == 0 {
            last.flipped = true;
        }
    }
    Ok(TripleSeq { triples })
}

/// Recovers the word from an unmarked-or-marked triple sequence.
///
/// Triple `j` contributes `1^(base-1) 2^(half_gap)`; triples after the first
/// are opened by `0`, or by `1` when the previous triple is flipped.
pub fn triples_to_word(seq: &TripleSeq) -> (TernaryWord, Family) {
    let family = seq.family();
    let mut symbols = Vec::with_capacity(seq.half_sum() as usize);
    for (j, t) in seq.triples.iter().enumerate() {
        if j > 0 {
            symbols.push(if seq.triples[j - 1].flipped { 1 } else { 0 });
        }
        symbols.extend(core::iter::repeat_n(1u8, (t.base - 1) as usize));
        symbols.extend(core::iter::repeat_n(2u8, t.half_gap as usize));
    }
    (TernaryWord { symbols }, family)
}

pub fn word_to_composition(word: &TernaryWord, family: Family) -> Composition {
    let seq = word_to_triples(word);
    let seq = match family {
        Family::Plain => seq,
        Family::Marked => mark_last(&seq).expect("fresh sequences end unflipped"),
    };
    triples_to_composition(&seq)
}

pub fn composition_to_word(c: &Composition) -> Result<(TernaryWord, Family)> {
    Ok(triples_to_word(&composition_to_triples(c)?))
}

/// Composition of `2n` to composition of `2n + 1`: bump the central part, or
/// insert a central `1` when the length is even.
pub fn lift_parity(c: &Composition) -> Result<Composition> {
    lift_center(c, MOD2)
}

/// Inverse of [`lift_parity`].
pub fn drop_parity(c: &Composition) -> Result<Composition> {
    drop_center(c, MOD2)
}

/// Debug-friendly word rendering, e.g. `"(0,1,2,2,1)"`.
pub fn word_tuple(word: &TernaryWord) -> String {
    let mut out = String::from("(");
    for (i, s) in word.symbols.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push((b'0' + s) as char);
    }
    out.push(')');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;
    use alloc::collections::BTreeSet;
    use proptest::prelude::*;

    fn word(s: &str) -> TernaryWord {
        s.parse().unwrap()
    }

    fn seq(ts: &[(u64, u64, u8)]) -> TripleSeq {
        TripleSeq::new(ts.iter().map(|&(b, c, d)| Triple::new(b, c, d == 1)).collect()).unwrap()
    }

    fn comp(parts: &[u64]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn word_examples() {
        assert_eq!(word_to_triples(&word("01221")), seq(&[(1, 0, 0), (2, 2, 1), (1, 0, 0)]));
        assert_eq!(word_to_triples(&word("")), seq(&[(1, 0, 0)]));
        assert_eq!(word_to_triples(&word("111")), seq(&[(4, 0, 0)]));
    }

    #[test]
    fn word_parsing() {
        assert_eq!(
            "0131".parse::<TernaryWord>(),
            Err(Error::InvalidSymbol { position: 2, symbol: '3' })
        );
        assert_eq!(word("01221").to_string(), "01221");
        assert_eq!(word_tuple(&word("01221")), "(0,1,2,2,1)");
        assert!(TernaryWord::new(vec![0, 5]).is_err());
    }

    #[test]
    fn mark_examples() {
        assert_eq!(mark_last(&seq(&[(4, 0, 0)])).unwrap(), seq(&[(4, 0, 1)]));
        assert_eq!(
            mark_last(&seq(&[(1, 0, 0), (2, 2, 1), (1, 0, 0)])).unwrap(),
            seq(&[(1, 0, 0), (2, 2, 1), (1, 0, 1)])
        );
        assert_eq!(mark_last(&seq(&[(1, 0, 1)])), Err(Error::AlreadyMarked));
    }

    #[test]
    fn layout_examples() {
        assert_eq!(triples_to_composition(&seq(&[(1, 0, 0), (2, 2, 1), (1, 0, 0)])), comp(&[1, 2, 2, 6, 1]));
        assert_eq!(
            triples_to_composition(&seq(&[(1, 0, 0), (2, 2, 1), (1, 0, 1)])),
            comp(&[1, 2, 1, 1, 6, 1])
        );
        assert_eq!(triples_to_composition(&seq(&[(4, 0, 1)])), comp(&[4, 4]));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(composition_to_triples(&comp(&[8])).unwrap(), seq(&[(4, 0, 0)]));
        assert_eq!(
            composition_to_triples(&comp(&[1, 2, 2, 6, 1])).unwrap(),
            seq(&[(1, 0, 0), (2, 2, 1), (1, 0, 0)])
        );
        assert_eq!(composition_to_triples(&comp(&[1, 2])), Err(Error::NotPalindromic(MOD2)));
        assert!(matches!(composition_to_triples(&comp(&[1, 3, 1])), Err(Error::WrongParity { .. })));
    }

    #[test]
    fn word_composition_examples() {
        assert_eq!(word_to_composition(&word("212"), Family::Marked), comp(&[1, 1, 3, 3]));
        assert_eq!(word_to_composition(&word("000"), Family::Plain), comp(&[1, 1, 1, 2, 1, 1, 1]));
        assert_eq!(composition_to_word(&comp(&[4, 4])).unwrap(), (word("111"), Family::Marked));
        assert_eq!(composition_to_word(&comp(&[8])).unwrap(), (word("111"), Family::Plain));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_parity(&comp(&[1, 2, 2, 6, 1])).unwrap(), comp(&[1, 2, 3, 6, 1]));
        assert_eq!(lift_parity(&comp(&[1, 2, 1, 1, 6, 1])).unwrap(), comp(&[1, 2, 1, 1, 1, 6, 1]));
        assert_eq!(lift_parity(&comp(&[8])).unwrap(), comp(&[9]));
        assert!(lift_parity(&comp(&[9])).is_err());
        assert!(drop_parity(&comp(&[8])).is_err());
        assert_eq!(drop_parity(&comp(&[4, 1, 4])).unwrap(), comp(&[4, 4]));
    }

    #[test]
    fn triple_seq_validation() {
        assert!(TripleSeq::new(vec![]).is_err());
        assert!(TripleSeq::new(vec![Triple::new(0, 1, false)]).is_err());
        assert!(TripleSeq::new(vec![Triple::new(1, 0, true), Triple::new(1, 0, false)]).is_err());
    }

    #[test]
    fn exhaustive_bijection_small() {
        let oracle = Oracle::default();
        for n in 1..=7u64 {
            let mut image = BTreeSet::new();
            for w in TernaryWord::all(n) {
                for family in [Family::Plain, Family::Marked] {
                    let c = word_to_composition(&w, family);
                    assert_eq!(c.total(), 2 * n);
                    assert!(c.is_palindromic_mod(MOD2));
                    assert_eq!(composition_to_word(&c).unwrap(), (w.clone(), family));
                    assert!(image.insert(c));
                }
            }
            let expected: BTreeSet<_> = oracle.list_pc(2 * n, MOD2).unwrap().into_iter().collect();
            assert_eq!(image, expected, "n = {n}");
        }
    }

    fn arb_word() -> impl Strategy<Value = TernaryWord> {
        proptest::collection::vec(0u8..3, 0..40).prop_map(|s| TernaryWord::new(s).unwrap())
    }

    proptest! {
        #[test]
        fn sum_law(w in arb_word(), marked in any::<bool>()) {
            let mut s = word_to_triples(&w);
            prop_assert_eq!(s.half_sum(), w.half_sum());
            if marked {
                s = mark_last(&s).unwrap();
            }
            let c = triples_to_composition(&s);
            prop_assert_eq!(c.total(), 2 * s.half_sum());
            prop_assert!(c.is_palindromic_mod(MOD2));
        }

        #[test]
        fn round_trip_long_words(w in arb_word(), marked in any::<bool>()) {
            let family = if marked { Family::Marked } else { Family::Plain };
            let c = word_to_composition(&w, family);
            prop_assert_eq!(composition_to_word(&c).unwrap(), (w, family));
            prop_assert_eq!(drop_parity(&lift_parity(&c).unwrap()).unwrap(), c);
        }
    }
}
