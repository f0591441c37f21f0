//! Human-readable and machine-readable traces of the two bijections.

use std::io::Write;

use palmod_core::bijection_m2::{self, Family, TernaryWord, TripleSeq};
use palmod_core::bijection_m3::{self, M3Decomposition, TwoOneWord};
use palmod_core::Composition;
use serde::Serialize;

use crate::error::CliError;
use crate::render::OutputFormat;

/// One row of the `m = 2` table layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M2Trace {
    pub word: String,
    pub family: String,
    pub triples: String,
    pub even: String,
    pub odd: String,
    pub half_sum: u64,
}

impl M2Trace {
    fn build(word: &TernaryWord, seq: &TripleSeq) -> Result<Self, CliError> {
        let even = bijection_m2::triples_to_composition(seq);
        let odd = bijection_m2::lift_parity(&even)?;
        Ok(Self {
            word: word.to_string(),
            family: seq.family().to_string(),
            triples: seq.to_string(),
            even: even.to_string(),
            odd: odd.to_string(),
            half_sum: word.half_sum(),
        })
    }
}

pub fn m2_forward(word: &TernaryWord, family: Family) -> Result<M2Trace, CliError> {
    let seq = bijection_m2::word_to_triples(word);
    let seq = match family {
        Family::Plain => seq,
        Family::Marked => bijection_m2::mark_last(&seq)?,
    };
    M2Trace::build(word, &seq)
}

/// Accepts a composition of `2n`, or of `2n + 1` (dropped to `2n` first).
pub fn m2_inverse(c: &Composition) -> Result<M2Trace, CliError> {
    let even = if c.total() % 2 == 1 { bijection_m2::drop_parity(c)? } else { c.clone() };
    let seq = bijection_m2::composition_to_triples(&even)?;
    let (word, _) = bijection_m2::triples_to_word(&seq);
    M2Trace::build(&word, &seq)
}

pub fn write_m2(t: &M2Trace, format: OutputFormat, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, t)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(t)?;
            w.flush()?;
        }
        OutputFormat::Text => {
            let n = t.half_sum;
            writeln!(
                out,
                "word | family | sequence of triples | composition of {} | composition of {}",
                2 * n,
                2 * n + 1
            )?;
            let word = if t.word.is_empty() { "()".to_string() } else { t.word.clone() };
            writeln!(out, "{word} | {} | {} | {} | {}", t.family, t.triples, t.even, t.odd)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentRow {
    pub segment: String,
    pub o: u64,
    pub o_prime: u64,
    pub t: u64,
    pub c: Option<u64>,
    pub d: Option<u64>,
    pub e: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M3Trace {
    pub a: String,
    pub decomposition: String,
    pub segments: Vec<SegmentRow>,
    pub b: String,
}

fn m3_trace(a: &TwoOneWord, d: &M3Decomposition, b: &Composition) -> Result<M3Trace, CliError> {
    let segments = d
        .segments()
        .iter()
        .map(|seg| {
            let st = bijection_m3::SegmentStats::of(seg);
            let triple = if st.twos > 0 { Some(bijection_m3::substring_to_triple(seg)?) } else { None };
            Ok(SegmentRow {
                segment: format!("({})", TwoOneWord::new(seg.clone())?),
                o: st.ones,
                o_prime: st.leading_ones,
                t: st.twos,
                c: triple.map(|x| x.base),
                d: triple.map(|x| x.left_excess),
                e: triple.map(|x| x.right_excess),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(M3Trace { a: a.to_string(), decomposition: d.to_string(), segments, b: b.to_string() })
}

pub fn m3_forward(a: &TwoOneWord) -> Result<M3Trace, CliError> {
    let d = bijection_m3::decompose(a)?;
    let b = bijection_m3::forward(a)?;
    m3_trace(a, &d, &b)
}

pub fn m3_inverse(b: &Composition) -> Result<M3Trace, CliError> {
    let a = bijection_m3::inverse(b)?;
    let d = bijection_m3::decompose(&a)?;
    m3_trace(&a, &d, b)
}

pub fn write_m3(t: &M3Trace, format: OutputFormat, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, t)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["segment", "o", "o_prime", "t", "c", "d", "e"])?;
            for s in &t.segments {
                let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
                w.write_record([
                    s.segment.clone(),
                    s.o.to_string(),
                    s.o_prime.to_string(),
                    s.t.to_string(),
                    opt(s.c),
                    opt(s.d),
                    opt(s.e),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "a = {}", t.a)?;
            writeln!(out, "a = {}", t.decomposition)?;
            for (i, s) in t.segments.iter().enumerate() {
                writeln!(out, "a_{}={}", i + 1, s.segment)?;
            }
            writeln!(out, "a_i | o | o' | t | c | d | e")?;
            for s in &t.segments {
                let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
                writeln!(
                    out,
                    "{} | {} | {} | {} | {} | {} | {}",
                    s.segment,
                    s.o,
                    s.o_prime,
                    s.t,
                    opt(s.c),
                    opt(s.d),
                    opt(s.e)
                )?;
            }
            writeln!(out, "b = {}", t.b)?;
        }
    }
    Ok(())
}
