//! Text syntax for linear combinations: `"x1 y1 - 1/2 z1"` and `"|x1 y1| + 1/2|z1|"`.
//!
//! A term is an optional rational coefficient, an optional `*`, then a body. Bodies are
//! space-separated generator names, or a necklace between bars where `||` and `|1|` denote
//! the empty necklace. A bare coefficient is a multiple of the unit in either syntax.

use crate::cyclic::{CyclicSeries, CyclicWord};
use crate::error::{GtError, Result};
use crate::rational::Q;
use crate::series::{Key, LinComb, Series};
use crate::signature::{Signature, Word};

fn err(msg: impl Into<String>) -> GtError {
    GtError::Parse(msg.into())
}

/// Splits at top-level `+`/`-`, keeping each sign with its chunk.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut inside = false;
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in s.char_indices() {
        match ch {
            '|' => inside = !inside,
            '+' | '-' if !inside => {
                let chunk = s[start..i].trim();
                if chunk.is_empty() {
                    if !out.is_empty() || start != 0 {
                        return Err(err(format!("dangling sign in `{s}`")));
                    }
                } else {
                    out.push((negative, chunk));
                }
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if inside {
        return Err(err(format!("unbalanced `|` in `{s}`")));
    }
    let chunk = s[start..].trim();
    if chunk.is_empty() {
        if start != 0 || out.is_empty() && negative {
            return Err(err(format!("dangling sign in `{s}`")));
        }
    } else {
        out.push((negative, chunk));
    }
    Ok(out)
}

/// Leading coefficient and the remaining body of a term.
fn coefficient(chunk: &str) -> Result<(Q, &str)> {
    let end = chunk
        .char_indices()
        .find(|&(_, c)| !(c.is_ascii_digit() || c == '/' || c.is_whitespace()))
        .map_or(chunk.len(), |(i, _)| i);
    let head = chunk[..end].trim();
    let body = chunk[end..].trim();
    let body = body.strip_prefix('*').map_or(body, str::trim);
    if head.is_empty() {
        return Ok((Q::one(), body));
    }
    Ok((head.replace(' ', "").parse()?, body))
}

fn letters(sig: &Signature, body: &str) -> Result<Word> {
    let names: Vec<&str> = body.split_whitespace().collect();
    if names == ["1"] {
        return Ok(Word::new());
    }
    sig.parse_word(&names)
}

fn collect<K: Key>(sig: Signature, valid: usize, s: &str, key: impl Fn(&str) -> Result<K>) -> Result<LinComb<K>> {
    let mut out = LinComb::zero(sig, valid);
    for (negative, chunk) in split_terms(s)? {
        let (c, body) = coefficient(chunk)?;
        let k = key(body)?;
        let d = k.degree(&sig);
        if d > valid {
            return Err(err(format!("term `{chunk}` has degree {d}, beyond the truncation degree {valid}")));
        }
        out.add_term(k, if negative { -c } else { c });
    }
    Ok(out)
}

/// Parses an element of the truncated tensor algebra.
pub fn parse_series(sig: Signature, valid: usize, s: &str) -> Result<Series> {
    collect(sig, valid, s, |body| {
        if body.contains('|') {
            return Err(err(format!("unexpected `|` in `{body}`")));
        }
        letters(&sig, body)
    })
}

/// Parses a linear combination of necklaces.
pub fn parse_cyclic(sig: Signature, valid: usize, s: &str) -> Result<CyclicSeries> {
    collect(sig, valid, s, |body| {
        if body.is_empty() {
            return Ok(CyclicWord::unit());
        }
        let inner = body
            .strip_prefix('|')
            .and_then(|b| b.strip_suffix('|'))
            .ok_or_else(|| err(format!("expected a necklace `|...|`, got `{body}`")))?;
        Ok(CyclicWord::new(&letters(&sig, inner)?))
    })
}

/// Inverse of [`parse_series`] and [`parse_cyclic`]: terms in canonical order.
pub fn format_lincomb<K: Key>(s: &LinComb<K>, key: impl Fn(&K) -> String) -> String {
    let terms = s.sorted_terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in terms.into_iter().enumerate() {
        let (neg, abs) = (c.is_negative(), c.abs());
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let body = key(k);
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            if !body.is_empty() {
                out.push(' ');
            }
        } else if body.is_empty() {
            out.push('1');
        }
        out.push_str(&body);
    }
    out
}

pub fn format_series(s: &Series) -> String {
    let sig = s.sig();
    format_lincomb(s, |w| sig.word_names(w).join(" "))
}

pub fn format_cyclic(s: &CyclicSeries) -> String {
    let sig = s.sig();
    format_lincomb(s, |w| format!("|{}|", sig.word_names(w.letters()).join(" ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_coefficients() {
        let sig = Signature::new(1, 1).unwrap();
        let s = parse_series(sig, 4, "-x1 y1 + 1/2 z1 - 3*y1 - 2").unwrap();
        assert_eq!(s.coeff(&Word::from_slice(&[0, 1])), Q::from_int(-1));
        assert_eq!(s.coeff(&Word::from_slice(&[2])), Q::new(1, 2));
        assert_eq!(s.coeff(&Word::from_slice(&[1])), Q::from_int(-3));
        assert_eq!(s.coeff(&Word::new()), Q::from_int(-2));
        assert_eq!(parse_series(sig, 4, &format_series(&s)).unwrap(), s);
    }

    #[test]
    fn necklaces_rotate() {
        let sig = Signature::new(1, 1).unwrap();
        let p = parse_cyclic(sig, 4, "|y1 x1| - |x1 y1| + 1/2|z1| + ||").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&CyclicWord::unit()), Q::one());
        assert_eq!(parse_cyclic(sig, 4, &format_cyclic(&p)).unwrap(), p);
    }

    #[test]
    fn rejects_malformed_input() {
        let sig = Signature::new(1, 0).unwrap();
        for bad in ["|x1", "x1 +", "x2", "|x1| |y1|", "1/0 x1", "x1 x1 x1"] {
            assert!(parse_cyclic(sig, 2, bad).is_err() || parse_series(sig, 2, bad).is_err(), "{bad}");
        }
        assert!(parse_series(sig, 2, "x1 x1 x1").is_err());
        assert!(parse_cyclic(sig, 2, "x1").is_err());
        assert_eq!(parse_cyclic(sig, 2, "0").unwrap(), CyclicSeries::zero(sig, 2));
    }
}
