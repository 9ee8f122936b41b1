//! Text input: the ideal file format (`ring`, `order`, `ideal` statements
//! with `#` comments) and a polynomial expression parser with positioned
//! errors.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring, RingRef};
use crate::scalar::{FieldSpec, Scalar};

/// A fully parsed input file: the ring, the chosen order (also installed in
/// the ring), and the named ideal.
#[derive(Clone, Debug)]
pub struct ParsedInput {
    pub ring: RingRef,
    pub name: String,
    pub ideal: Ideal,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

pub fn parse_field(text: &str) -> Option<FieldSpec> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("QQ") {
        return Some(FieldSpec::Rational);
    }
    let lower = t.to_ascii_lowercase();
    let inner = lower
        .strip_prefix("gf(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| lower.strip_prefix("gf:"))?;
    let p: u32 = inner.trim().parse().ok()?;
    if p >= 2 && p < (1 << 31) && is_prime(p) {
        Some(FieldSpec::Prime(p))
    } else {
        None
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn parse_order(text: &str, nvars: usize) -> Result<MonomialOrder> {
    let t = text.trim();
    match t.to_ascii_lowercase().as_str() {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        other => {
            if let Some(list) = other.strip_prefix("weight:") {
                let weights = list
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<i64>, _>>()
                    .map_err(|_| perr(0, 0, format!("bad weight vector `{t}`")))?;
                if weights.len() != nvars {
                    return Err(Error::DimensionMismatch(weights.len(), nvars));
                }
                Ok(MonomialOrder::Weight(weights))
            } else {
                Err(perr(0, 0, format!("unknown order `{t}`")))
            }
        }
    }
}

/// Parses the ideal file format:
///
/// ```text
/// # a comment
/// ring x y z over QQ
/// order grevlex
/// ideal I = x^2 - y*z, x*y,
///           z^3
/// ```
pub fn parse_ideal_file(text: &str) -> Result<ParsedInput> {
    parse_ideal_file_with(text, None, None)
}

/// Like [`parse_ideal_file`], with optional command-line overrides for the
/// coefficient field and the monomial order.
pub fn parse_ideal_file_with(
    text: &str,
    field_override: Option<FieldSpec>,
    order_override: Option<MonomialOrder>,
) -> Result<ParsedInput> {
    let mut field: Option<FieldSpec> = None;
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut order_spec: Option<(usize, String)> = None;
    let mut ideal_name: Option<String> = None;
    // generator text fragments with their (line, col) origins
    let mut gen_text: Vec<(usize, usize, String)> = Vec::new();
    let mut in_ideal = false;

    for (lineno0, raw) in text.lines().enumerate() {
        let lineno = lineno0 + 1;
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let head = line.trim_start();
        let indent = line.len() - head.len();
        if !in_ideal {
            let mut words = head.split_whitespace();
            match words.next() {
                Some("ring") => {
                    let rest: Vec<&str> = words.collect();
                    let over = rest
                        .iter()
                        .position(|w| w.eq_ignore_ascii_case("over"))
                        .ok_or_else(|| perr(lineno, 1, "ring statement needs `over <field>`"))?;
                    let names: Vec<String> = rest[..over].iter().map(|s| s.to_string()).collect();
                    if names.is_empty() {
                        return Err(perr(lineno, 1, "ring statement lists no variables"));
                    }
                    for name in &names {
                        let mut chars = name.chars();
                        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
                        if !ok {
                            return Err(perr(lineno, 1, format!("bad variable name `{name}`")));
                        }
                    }
                    if names.iter().enumerate().any(|(i, a)| names[..i].contains(a)) {
                        return Err(perr(lineno, 1, "duplicate variable name"));
                    }
                    let f = rest
                        .get(over + 1)
                        .and_then(|w| parse_field(w))
                        .ok_or_else(|| perr(lineno, 1, "unknown field (use QQ or GF(p))"))?;
                    field = Some(f);
                    vars = Some((lineno, names));
                }
                Some("order") => {
                    order_spec = Some((lineno, head["order".len()..].trim().to_string()));
                }
                Some("ideal") => {
                    let rest = head["ideal".len()..].trim_start();
                    let eq = rest
                        .find('=')
                        .ok_or_else(|| perr(lineno, 1, "ideal statement needs `= <generators>`"))?;
                    let name = rest[..eq].trim();
                    if name.is_empty() {
                        return Err(perr(lineno, 1, "ideal statement needs a name"));
                    }
                    ideal_name = Some(name.to_string());
                    let after = &rest[eq + 1..];
                    let col = line.len() - after.len() + 1;
                    gen_text.push((lineno, col, after.to_string()));
                    in_ideal = true;
                }
                Some(other) => {
                    return Err(perr(lineno, 1, format!("unknown statement `{other}`")));
                }
                None => {}
            }
        } else {
            gen_text.push((lineno, indent + 1, head.to_string()));
        }
    }

    let (ring_line, names) = vars.ok_or_else(|| perr(1, 1, "missing ring statement"))?;
    let field = field_override.unwrap_or_else(|| field.unwrap());
    let nvars = names.len();
    let order = match (order_override, order_spec) {
        (Some(order), _) => {
            if let MonomialOrder::Weight(w) = &order {
                if w.len() != nvars {
                    return Err(Error::DimensionMismatch(w.len(), nvars));
                }
            }
            order
        }
        (None, Some((lineno, spec))) => parse_order(&spec, nvars).map_err(|e| match e {
            Error::Parse { msg, .. } => perr(lineno, 1, msg),
            other => other,
        })?,
        (None, None) => MonomialOrder::GrevLex,
    };
    let ring = Ring::new(names, field, order).map_err(|e| match e {
        Error::TooManyVariables(a, b) => {
            perr(ring_line, 1, format!("too many variables ({a}, limit {b})"))
        }
        other => other,
    })?;

    let name = ideal_name.ok_or_else(|| perr(1, 1, "missing ideal statement"))?;
    // split the accumulated generator text on commas, tracking positions
    let mut pieces: Vec<(usize, usize, String)> = Vec::new();
    let mut current: Option<(usize, usize, String)> = None;
    let mut depth = 0usize;
    for (lineno, col0, frag) in &gen_text {
        for (k, ch) in frag.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    if let Some(p) = current.take() {
                        pieces.push(p);
                    }
                    continue;
                }
                _ => {}
            }
            match &mut current {
                Some((_, _, s)) => s.push(ch),
                None => {
                    if !ch.is_whitespace() {
                        current = Some((*lineno, col0 + k, ch.to_string()));
                    }
                }
            }
        }
        if let Some((_, _, s)) = &mut current {
            s.push(' ');
        }
    }
    if let Some(p) = current.take() {
        pieces.push(p);
    }
    if pieces.iter().all(|(_, _, s)| s.trim().is_empty()) {
        pieces.clear();
    }

    let mut gens = Vec::with_capacity(pieces.len());
    for (lineno, col, text) in &pieces {
        if text.trim().is_empty() {
            return Err(perr(*lineno, *col, "empty generator"));
        }
        let f = parse_polynomial_at(&ring, text, *lineno, *col)?;
        if !f.is_homogeneous() {
            return Err(perr(*lineno, *col, "inhomogeneous generator"));
        }
        gens.push(f);
    }
    let ideal = Ideal::new(ring.clone(), gens)?;
    Ok(ParsedInput { ring, name, ideal })
}

/// Parses a polynomial expression: `+ - * / ^`, parentheses, integer or
/// fraction coefficients, named variables.
pub fn parse_polynomial(ring: &RingRef, text: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, text, 1, 1)
}

fn parse_polynomial_at(
    ring: &RingRef,
    text: &str,
    line: usize,
    col: usize,
) -> Result<Polynomial> {
    let mut p = PolyParser { ring: ring.clone(), tokens: lex(text, line, col)?, pos: 0 };
    let f = p.expr()?;
    match p.peek() {
        None => Ok(f),
        Some(t) => Err(perr(t.line, t.col, format!("unexpected `{}`", t.text))),
    }
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    line: usize,
    col: usize,
    kind: TokKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TokKind {
    Int,
    Ident,
    Op(char),
}

fn lex(text: &str, mut line: usize, mut col: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let (tline, tcol) = (line, col);
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token { text: s, line: tline, col: tcol, kind: TokKind::Int });
        } else if ch.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token { text: s, line: tline, col: tcol, kind: TokKind::Ident });
        } else if "+-*/^()".contains(ch) {
            chars.next();
            col += 1;
            out.push(Token {
                text: ch.to_string(),
                line: tline,
                col: tcol,
                kind: TokKind::Op(ch),
            });
        } else {
            return Err(perr(tline, tcol, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct PolyParser {
    ring: RingRef,
    tokens: Vec<Token>,
    pos: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_err(&self) -> Error {
        match self.tokens.last() {
            Some(t) => perr(t.line, t.col + t.text.len(), "unexpected end of expression"),
            None => perr(1, 1, "empty expression"),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        while let Some(t) = self.peek() {
            match t.kind {
                TokKind::Op('-') => {
                    negate = !negate;
                    self.pos += 1;
                }
                TokKind::Op('+') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(t) = self.peek() {
            match t.kind {
                TokKind::Op('+') | TokKind::Op('-') => {
                    let minus = t.kind == TokKind::Op('-');
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = if minus { acc.sub(&rhs)? } else { acc.add(&rhs)? };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(t) if t.kind == TokKind::Op('*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs)?;
                }
                Some(t) if t.kind == TokKind::Op('/') => {
                    let (line, col) = (t.line, t.col);
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let c = constant_of(&rhs)
                        .ok_or_else(|| perr(line, col, "division by a non-constant"))?;
                    if c.is_zero() {
                        return Err(perr(line, col, "division by zero"));
                    }
                    acc = acc.scale(&c.inv());
                }
                // juxtaposition: 2x^2y means 2 * x^2 * y
                Some(t) if matches!(t.kind, TokKind::Int | TokKind::Ident | TokKind::Op('(')) => {
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if let Some(t) = self.peek() {
            if t.kind == TokKind::Op('^') {
                self.pos += 1;
                let e = self.next().ok_or_else(|| self.end_err())?;
                if e.kind != TokKind::Int {
                    return Err(perr(e.line, e.col, "exponent must be a nonnegative integer"));
                }
                let exp: u32 = e
                    .text
                    .parse()
                    .map_err(|_| perr(e.line, e.col, "exponent out of range"))?;
                let mut acc = Polynomial::one(&self.ring);
                for _ in 0..exp {
                    acc = acc.mul(&base)?;
                }
                return Ok(acc);
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let t = self.next().ok_or_else(|| self.end_err())?;
        match t.kind {
            TokKind::Int => {
                let v: i64 = t
                    .text
                    .parse()
                    .map_err(|_| perr(t.line, t.col, "integer out of range"))?;
                Ok(Polynomial::term(
                    &self.ring,
                    Scalar::from_i64(self.ring.field, v),
                    Monomial::one(self.ring.nvars()),
                ))
            }
            TokKind::Ident => {
                let idx = self
                    .ring
                    .vars
                    .iter()
                    .position(|v| v == &t.text)
                    .ok_or_else(|| perr(t.line, t.col, format!("unknown variable `{}`", t.text)))?;
                Ok(Polynomial::variable(&self.ring, idx))
            }
            TokKind::Op('(') => {
                let inner = self.expr()?;
                match self.next() {
                    Some(close) if close.kind == TokKind::Op(')') => Ok(inner),
                    Some(close) => Err(perr(close.line, close.col, "expected `)`")),
                    None => Err(self.end_err()),
                }
            }
            _ => Err(perr(t.line, t.col, format!("unexpected `{}`", t.text))),
        }
    }
}

fn constant_of(f: &Polynomial) -> Option<Scalar> {
    if f.is_zero() {
        return Some(Scalar::zero(f.ring().field));
    }
    let terms = f.terms();
    if terms.len() == 1 && terms[0].1.is_one() {
        Some(terms[0].0.clone())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> RingRef {
        Ring::new(
            vec!["x".into(), "y".into(), "z".into()],
            FieldSpec::Rational,
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    #[test]
    fn expressions_round_trip() {
        let r = ring3();
        let f = parse_polynomial(&r, "x^2 - 2*y*z + z^2").unwrap();
        assert_eq!(f.terms().len(), 3);
        assert!(f.is_homogeneous());
        // juxtaposition and division by constants
        let g = parse_polynomial(&r, "3x^2y - x^2 y / 2").unwrap();
        let h = parse_polynomial(&r, "5/2 * x^2 * y").unwrap();
        assert_eq!(g, h);
        // parentheses
        let p = parse_polynomial(&r, "(x + y)^2 - (x^2 + 2x y + y^2)").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn expression_errors_carry_positions() {
        let r = ring3();
        match parse_polynomial(&r, "x + q") {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (1, 5));
                assert!(msg.contains('q'));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_polynomial(&r, "x +").is_err());
        assert!(parse_polynomial(&r, "x / y").is_err());
        assert!(parse_polynomial(&r, "x ^ y").is_err());
    }

    #[test]
    fn file_format() {
        let text = "\
# example ideal
ring x y z over QQ
order grevlex
ideal I = x^2, y^2, x*y,
          x*z, y*z
";
        let input = parse_ideal_file(text).unwrap();
        assert_eq!(input.name, "I");
        assert_eq!(input.ring.nvars(), 3);
        assert_eq!(input.ideal.generators().len(), 5);
        assert_eq!(input.ring.order, MonomialOrder::GrevLex);
    }

    #[test]
    fn file_format_variants() {
        let gf = parse_ideal_file("ring a b over GF(7)\nideal J = a^2 - 3b^2\n").unwrap();
        assert_eq!(gf.ring.field, FieldSpec::Prime(7));
        let w = parse_ideal_file("ring x y over QQ\norder weight:2,1\nideal K = x*y\n").unwrap();
        assert_eq!(w.ring.order, MonomialOrder::Weight(vec![2, 1]));
        // default order is grevlex
        let d = parse_ideal_file("ring x y over QQ\nideal K = x\n").unwrap();
        assert_eq!(d.ring.order, MonomialOrder::GrevLex);
    }

    #[test]
    fn file_format_errors() {
        // inhomogeneous generator reports its line
        let bad = "ring x y over QQ\nideal I = x + 1\n";
        match parse_ideal_file(bad) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("inhomogeneous"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_ideal_file("ideal I = x\n").is_err());
        assert!(parse_ideal_file("ring x y over ZZ\nideal I = x\n").is_err());
        assert!(parse_ideal_file("ring x y over GF(6)\nideal I = x\n").is_err());
        assert!(parse_ideal_file("ring x x over QQ\nideal I = x\n").is_err());
        assert!(parse_ideal_file("ring x y over QQ\nfoo\n").is_err());
    }
}
