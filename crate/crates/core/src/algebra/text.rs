//! Compact text form: `(1,0) + (0.5,-2)*c1^2 c3 + 3*c2^2`.
//!
//! A term is an optional coefficient (`re` or `(re,im)`) followed by `*` and
//! a normal-ordered product of generators. Sites must be strictly ascending.

use std::fmt;

use num_complex::Complex64;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::exponents::ExponentVector;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({},{})", c.re, c.im)?;
            }
            let mut first = true;
            for (site, &p) in e.entries().iter().enumerate() {
                if p == 0 {
                    continue;
                }
                write!(f, "{}c{}", if first { "*" } else { " " }, site + 1)?;
                if p != 1 {
                    write!(f, "^{p}")?;
                }
                first = false;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Parses the form produced by `Display`. Repeated monomials are summed.
    pub fn parse(order: u32, sites: usize, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let trimmed = text.trim();
        if trimmed == "0" {
            return Polynomial::zero(order, sites);
        }
        let mut offset = text.len() - text.trim_start().len();
        for raw in split_terms(trimmed) {
            let at = offset + raw.len() - raw.trim_start().len();
            terms.push(parse_term(order, sites, raw.trim(), at)?);
            offset += raw.len() + 1;
        }
        Polynomial::from_terms(order, sites, terms)
    }
}

/// Splits on `+` outside parentheses.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            // a '+' right after an exponent marker belongs to a float literal
            b'+' if depth == 0 && i > 0 && !matches!(bytes[i - 1], b'e' | b'E') => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_term(order: u32, sites: usize, term: &str, at: usize) -> Result<(ExponentVector, Complex64)> {
    let loc = |col: usize| format!("column {}", col + 1);
    if term.is_empty() {
        return Err(Error::parse(loc(at), "empty term"));
    }
    let (coef_text, mono_text) = match term.find('*') {
        Some(i) => (Some(term[..i].trim()), term[i + 1..].trim()),
        None if term.starts_with('c') => (None, term),
        None => (Some(term), ""),
    };
    let coefficient = match coef_text {
        None => Complex64::new(1.0, 0.0),
        Some(t) => parse_coefficient(t).ok_or_else(|| Error::parse(loc(at), format!("bad coefficient `{t}`")))?,
    };
    if !coefficient.re.is_finite() || !coefficient.im.is_finite() {
        return Err(Error::parse(loc(at), "coefficient must be finite"));
    }
    let mut entries = vec![0u32; sites];
    let mut last = 0usize;
    for factor in mono_text.split_whitespace() {
        let body = factor
            .strip_prefix('c')
            .ok_or_else(|| Error::parse(loc(at), format!("expected generator, found `{factor}`")))?;
        let (site, power) = match body.split_once('^') {
            Some((s, p)) => (s, p),
            None => (body, "1"),
        };
        let site: usize = site
            .parse()
            .map_err(|_| Error::parse(loc(at), format!("bad site in `{factor}`")))?;
        let power: u32 = power
            .parse()
            .map_err(|_| Error::parse(loc(at), format!("bad power in `{factor}`")))?;
        if site == 0 || site > sites {
            return Err(Error::parse(loc(at), format!("site {site} outside 1..={sites}")));
        }
        if site <= last {
            return Err(Error::parse(loc(at), "generators must appear in ascending site order"));
        }
        if power >= order {
            return Err(Error::parse(loc(at), format!("power {power} outside 0..{order}")));
        }
        entries[site - 1] = power;
        last = site;
    }
    Ok((ExponentVector::new(order, entries)?, coefficient))
}

fn parse_coefficient(t: &str) -> Option<Complex64> {
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (re, im) = inner.split_once(',')?;
        return Some(Complex64::new(re.trim().parse().ok()?, im.trim().parse().ok()?));
    }
    Some(Complex64::new(t.parse().ok()?, 0.0))
}
