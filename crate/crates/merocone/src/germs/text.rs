//! Canonical textual form of germs and its parser.
//!
//! The emitted text is bit-exact for a reduced germ: the holomorphic part
//! comes first as coefficient-monomial products sorted by degree, then the
//! polar terms sorted by denominator, e.g.
//! `(-1/2) + (-1/12)*e1 + [(-1)]/[e1]`. The parser accepts exactly this
//! grammar, so canonical text is a fixed point of parse-then-render.

use std::fmt;

use num::{BigInt, Zero};
use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::jet::Jet;
use crate::linalg::Rat;
use crate::linear_form::LinearForm;

use super::Germ;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("germ text parse error at byte {pos}: {msg}")]
pub struct ParseGermError {
    pub pos: usize,
    pub msg: String,
}

impl Germ {
    /// Canonical text of the reduced germ.
    pub fn render(&self) -> String {
        let g = self.reduce();
        if g.terms.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for term in &g.terms {
            if term.denominator.is_empty() {
                parts.extend(jet_monomial_strings(&term.numerator));
            } else {
                let num = jet_monomial_strings(&term.numerator).join(" + ");
                let den = term
                    .denominator
                    .iter()
                    .map(|(l, m)| {
                        if *m == 1 {
                            l.render()
                        } else {
                            format!("{}^{}", l.render(), m)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                parts.push(format!("[{num}]/[{den}]"));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn jet_monomial_strings(jet: &Jet) -> Vec<String> {
    let mut keyed: Vec<(i64, Vec<u32>, String)> = jet
        .terms()
        .map(|(e, c)| {
            let mut s = format!("({c})");
            for (a, &p) in e.iter().enumerate() {
                if p == 1 {
                    s.push_str(&format!("*e{}", a + 1));
                } else if p > 1 {
                    s.push_str(&format!("*e{}^{}", a + 1, p));
                }
            }
            (e.iter().map(|&x| i64::from(x)).sum(), e.clone(), s)
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, _, s)| s).collect()
}

/// Parses canonical germ text. Numerator jets come back exact (they are
/// written as genuine polynomials).
pub fn parse_germ(input: &str) -> Result<Germ, ParseGermError> {
    let trimmed = input.trim();
    if trimmed == "0" {
        return Ok(Germ::zero(0));
    }
    let mut germ = Germ::zero(0);
    for piece in split_top_level(trimmed) {
        let term = if piece.starts_with('[') {
            parse_polar(piece, offset_in(input, piece))?
        } else {
            let (jet, _) = parse_monomial(piece, offset_in(input, piece))?;
            Germ::from_jet(jet)
        };
        germ = germ.add(&term);
    }
    Ok(germ)
}

fn offset_in(haystack: &str, piece: &str) -> usize {
    piece.as_ptr() as usize - haystack.as_ptr() as usize
}

/// Splits on ` + ` at bracket depth zero.
fn split_top_level(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b' ' if depth == 0 && bytes[i..].starts_with(b" + ") => {
                parts.push(&s[start..i]);
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(&s[start..]);
    parts
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseGermError> {
    Err(ParseGermError { pos, msg: msg.into() })
}

fn parse_polar(piece: &str, base: usize) -> Result<Germ, ParseGermError> {
    let close = matching_bracket(piece, 0)
        .ok_or_else(|| ParseGermError { pos: base, msg: "unclosed '['".into() })?;
    let num_src = &piece[1..close];
    let rest = &piece[close + 1..];
    let Some(den_src) = rest.strip_prefix("/[").and_then(|r| r.strip_suffix(']')) else {
        return err(base + close + 1, "expected /[denominator]");
    };
    let mut numerator = Jet::zero(0);
    for mono in split_top_level(num_src) {
        let (jet, _) = parse_monomial(mono, base + offset_in(piece, mono))?;
        numerator = numerator.add(&jet);
    }
    let mut denominator = Vec::new();
    for factor in split_product(den_src) {
        let (form, power) = parse_den_factor(factor, base)?;
        for _ in 0..power {
            denominator.push(form.clone());
        }
    }
    Germ::from_term(numerator, &denominator)
        .map_err(|e| ParseGermError { pos: base, msg: e.to_string() })
}

fn matching_bracket(s: &str, open: usize) -> Option<usize> {
    let bytes = s.as_bytes();
    let (inc, dec) = match bytes[open] {
        b'[' => (b'[', b']'),
        b'(' => (b'(', b')'),
        _ => return None,
    };
    let mut depth = 0;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        if b == inc {
            depth += 1;
        } else if b == dec {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

/// Splits on `*` at depth zero.
fn split_product(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'*' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// `(coeff)` optionally followed by `*e<i>^<p>*...`; returns the exact jet.
fn parse_monomial(src: &str, base: usize) -> Result<(Jet, ()), ParseGermError> {
    if !src.starts_with('(') {
        return err(base, format!("expected '(' at start of monomial, got {src:?}"));
    }
    let close = matching_bracket(src, 0)
        .ok_or_else(|| ParseGermError { pos: base, msg: "unclosed '('".into() })?;
    let coeff = parse_coefficient(&src[1..close], base + 1)?;
    let mut expts: Vec<(usize, u32)> = Vec::new();
    let rest = &src[close + 1..];
    if !rest.is_empty() {
        let Some(vars) = rest.strip_prefix('*') else {
            return err(base + close + 1, "expected '*' before monomial variables");
        };
        for v in vars.split('*') {
            expts.push(parse_variable_power(v, base)?);
        }
    }
    let dim = expts.iter().map(|&(a, _)| a + 1).max().unwrap_or(0);
    let mut e = vec![0u32; dim];
    for (a, p) in expts {
        e[a] += p;
    }
    Ok((Jet::monomial(dim, e, coeff), ()))
}

/// `e3` or `e3^2`.
fn parse_variable_power(src: &str, base: usize) -> Result<(usize, u32), ParseGermError> {
    let Some(body) = src.strip_prefix('e') else {
        return err(base, format!("expected variable like 'e1', got {src:?}"));
    };
    let (idx, pow) = match body.split_once('^') {
        Some((i, p)) => (i, p),
        None => (body, "1"),
    };
    let index: usize = idx
        .parse()
        .map_err(|_| ParseGermError { pos: base, msg: format!("bad variable index {idx:?}") })?;
    let power: u32 = pow
        .parse()
        .map_err(|_| ParseGermError { pos: base, msg: format!("bad power {pow:?}") })?;
    if index == 0 {
        return err(base, "variable indices start at e1");
    }
    Ok((index - 1, power))
}

/// `-1/2`, `1/6*pi^2`, `-1/2 + 1/6*pi^2 - 1/3*pi^4`, ...
fn parse_coefficient(src: &str, base: usize) -> Result<Coefficient, ParseGermError> {
    let mut acc = Coefficient::zero();
    for (sign, part) in split_signed(src) {
        let (rat_src, tau) = match part.split_once("*pi^") {
            Some((r, p)) => {
                let power: usize = p.parse().map_err(|_| ParseGermError {
                    pos: base,
                    msg: format!("bad pi power {p:?}"),
                })?;
                if power % 2 != 0 {
                    return err(base, "pi exponents are even in this ring");
                }
                (r, power / 2)
            }
            None => (part, 0),
        };
        let q = parse_rat(rat_src).ok_or_else(|| ParseGermError {
            pos: base,
            msg: format!("bad rational {rat_src:?}"),
        })?;
        let signed = if sign { -q } else { q };
        acc = acc.add(&Coefficient::tau_power(signed, tau));
    }
    Ok(acc)
}

/// Rational parser that rejects zero denominators instead of panicking.
fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Splits `a + b - c` into sign/part pairs (a leading `-` binds to the first
/// part).
fn split_signed(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    let mut negative = false;
    if let Some(r) = rest.strip_prefix('-') {
        negative = true;
        rest = r;
    }
    loop {
        let plus = rest.find(" + ");
        let minus = rest.find(" - ");
        match (plus, minus) {
            (None, None) => {
                out.push((negative, rest));
                return out;
            }
            (Some(p), m) if m.map_or(true, |m| p < m) => {
                out.push((negative, &rest[..p]));
                negative = false;
                rest = &rest[p + 3..];
            }
            (_, Some(m)) => {
                out.push((negative, &rest[..m]));
                negative = true;
                rest = &rest[m + 3..];
            }
            _ => unreachable!(),
        }
    }
}

/// `e1`, `e1^2`, `(e1+2*e2)^3`.
fn parse_den_factor(src: &str, base: usize) -> Result<(LinearForm, u32), ParseGermError> {
    let (form_src, power) = if src.starts_with('(') {
        let close = matching_bracket(src, 0)
            .ok_or_else(|| ParseGermError { pos: base, msg: "unclosed '(' in denominator".into() })?;
        let power = match src[close + 1..].strip_prefix('^') {
            Some(p) => p.parse().map_err(|_| ParseGermError {
                pos: base,
                msg: format!("bad power {p:?}"),
            })?,
            None if src[close + 1..].is_empty() => 1,
            None => return err(base, "trailing characters after denominator factor"),
        };
        (&src[1..close], power)
    } else {
        match src.split_once('^') {
            Some((f, p)) => (
                f,
                p.parse().map_err(|_| ParseGermError {
                    pos: base,
                    msg: format!("bad power {p:?}"),
                })?,
            ),
            None => (src, 1),
        }
    };
    Ok((parse_linear_combination(form_src, base)?, power))
}

/// `e1`, `e1-e2`, `2*e1+1/2*e3`.
fn parse_linear_combination(src: &str, base: usize) -> Result<LinearForm, ParseGermError> {
    let mut parts: Vec<(bool, &str)> = Vec::new();
    let bytes = src.as_bytes();
    let mut start = 0;
    let mut negative = bytes.first() == Some(&b'-');
    if negative {
        start = 1;
    }
    let mut i = start;
    while i < bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            parts.push((negative, &src[start..i]));
            negative = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    parts.push((negative, &src[start..]));

    let mut coeffs: Vec<Rat> = Vec::new();
    for (neg, term) in parts {
        let (q_src, var) = match term.rsplit_once('*') {
            Some((q, v)) => (q, v),
            None => ("1", term),
        };
        let Some(idx_src) = var.strip_prefix('e') else {
            return err(base, format!("expected coordinate like 'e2' in form, got {var:?}"));
        };
        let index: usize = idx_src.parse().map_err(|_| ParseGermError {
            pos: base,
            msg: format!("bad coordinate index {idx_src:?}"),
        })?;
        if index == 0 {
            return err(base, "coordinate indices start at e1");
        }
        let q = parse_rat(q_src).ok_or_else(|| ParseGermError {
            pos: base,
            msg: format!("bad coefficient {q_src:?}"),
        })?;
        if coeffs.len() < index {
            coeffs.resize(index, Rat::zero());
        }
        let signed = if neg { -q } else { q };
        coeffs[index - 1] += signed;
    }
    let form = LinearForm::new(coeffs);
    if form.is_zero() {
        return err(base, "zero linear form");
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn renders_the_reference_example() {
        // -1/2 - e1/12 - 1/e1
        let jet = Jet::constant(1, Coefficient::from_rat(rat(-1, 2))).add(&Jet::monomial(
            1,
            vec![1],
            Coefficient::from_rat(rat(-1, 12)),
        ));
        let polar = Germ::from_term(
            Jet::constant(1, Coefficient::from_int(-1)),
            &[LinearForm::from_integers(&[1])],
        )
        .unwrap();
        let germ = Germ::from_jet(jet).add(&polar);
        assert_eq!(germ.render(), "(-1/2) + (-1/12)*e1 + [(-1)]/[e1]");
    }

    #[test]
    fn canonical_text_is_a_parse_fixed_point() {
        let jet = Jet::monomial(2, vec![1, 1], Coefficient::tau_power(rat(7, 3), 1));
        let polar = Germ::from_term(
            Jet::from_linear_form(&LinearForm::from_integers(&[1, -1])),
            &[
                LinearForm::from_integers(&[1, 1]),
                LinearForm::from_integers(&[1, 1]),
                LinearForm::from_integers(&[0, 2]),
            ],
        )
        .unwrap();
        let germ = Germ::from_jet(jet).add(&polar);
        let text = germ.render();
        let back = parse_germ(&text).unwrap();
        assert_eq!(back.render(), text);
        assert!(back.value_eq(&germ));
    }

    #[test]
    fn zero_round_trips() {
        assert_eq!(Germ::zero(3).render(), "0");
        assert!(parse_germ("0").unwrap().is_zero_within_window());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_germ("(1/0)").is_err());
        assert!(parse_germ("[(1)]/e1").is_err());
        assert!(parse_germ("(1)*f2").is_err());
    }
}
