//! Word input and resource caps.

use std::io::BufRead;

use tandem_core::{Alphabet, Error, Limits, Symbol, Word};

use crate::Failure;

/// Environment variable overriding [`Limits::max_set_size`].
pub const MAX_SET_ENV: &str = "TANDEM_MAX_SET";

/// Caps from [`MAX_SET_ENV`], defaults otherwise.
pub fn limits_from_env() -> Result<Limits, Failure> {
    match std::env::var(MAX_SET_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(Limits::new(cap)),
            _ => Err(Failure::BadCap(v)),
        },
        Err(_) => Ok(Limits::default()),
    }
}

/// Raw symbol values of a word in either textual form. Text containing a
/// comma is read as decimals, anything else as one digit per symbol.
pub fn raw_symbols(text: &str) -> Result<Vec<u32>, Error> {
    let text = text.trim();
    let parse_err = |reason| Error::Parse { text: text.into(), reason };
    if text.contains(',') {
        text.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| parse_err("expected comma-separated integers")))
            .collect()
    } else {
        text.chars().map(|c| c.to_digit(10).ok_or_else(|| parse_err("expected decimal digits"))).collect()
    }
}

/// Smallest supported alphabet holding every symbol: `max(3, max + 1)`.
pub fn inferred_q<'a>(words: impl IntoIterator<Item = &'a [u32]>) -> u32 {
    let top = words.into_iter().flatten().copied().max();
    top.map_or(3, |m| m.saturating_add(1).max(3))
}

/// Parses words over `q`, or over the inferred alphabet when `q` is absent.
pub fn parse_words<S: AsRef<str>>(texts: &[S], q: Option<u32>) -> Result<Vec<Word>, Error> {
    if let Some(q) = q {
        let alphabet = Alphabet::new(q)?;
        return texts.iter().map(|t| Word::parse(t.as_ref(), alphabet)).collect();
    }
    let raw: Vec<Vec<u32>> = texts.iter().map(|t| raw_symbols(t.as_ref())).collect::<Result<_, _>>()?;
    let alphabet = Alphabet::new(inferred_q(raw.iter().map(Vec::as_slice)))?;
    raw.into_iter()
        .map(|s| Word::new(s.into_iter().map(|v| v as Symbol).collect(), alphabet))
        .collect()
}

pub fn parse_word(text: &str, q: Option<u32>) -> Result<Word, Error> {
    Ok(parse_words(&[text], q)?.remove(0))
}

/// One word per non-blank line; `#` starts a comment line.
pub fn read_words(reader: impl BufRead, q: Option<u32>) -> Result<Vec<Word>, Failure> {
    let mut lines = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if !line.is_empty() && !line.starts_with('#') {
            lines.push(line.to_owned());
        }
    }
    Ok(parse_words(&lines, q)?)
}
