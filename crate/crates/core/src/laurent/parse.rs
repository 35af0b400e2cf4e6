//! Text parser for polynomials and polynomial files.
//!
//! Expressions use integers and `int/posint` rationals, the two declared
//! variables, `+ - *`, `^` with a (possibly negative) integer exponent, and
//! parentheses. Negative exponents are only accepted on monomials.
//!
//! A polynomial file has a `vars: m b` header line, optional `#` comment lines
//! (used for provenance notes), and the polynomial text on the remaining lines.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::{LaurentPoly2, Vars, MAX_EXPONENT};
use super::rational::Rational;
use super::PolyError;

pub fn parse_poly(text: &str, vars: &Vars) -> Result<LaurentPoly2, PolyError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, vars };
    parser.skip_ws();
    if parser.at_end() {
        return Err(parser.syntax("empty expression"));
    }
    let p = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(p)
}

/// A parsed polynomial file.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFile {
    pub vars: Vars,
    /// `#` comment lines, without the leading marker.
    pub notes: Vec<String>,
    pub poly: LaurentPoly2,
}

pub fn parse_poly_file(text: &str) -> Result<PolyFile, PolyError> {
    let mut vars = None;
    let mut notes = Vec::new();
    let mut body = String::new();
    // Offset of the body within `text`, so syntax positions refer to the file.
    let mut body_offset = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if let Some(note) = trimmed.strip_prefix('#') {
            notes.push(note.trim().to_string());
        } else if let Some(rest) = trimmed.strip_prefix("vars:") {
            let labels: Vec<&str> = rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
            if labels.len() != 2 || labels[0] == labels[1] || !labels.iter().all(|l| is_identifier(l)) {
                return Err(PolyError::Syntax { pos: offset, message: format!("bad vars header: {trimmed:?}") });
            }
            vars = Some(Vars::new(labels[0], labels[1]));
        } else if !trimmed.is_empty() {
            if body_offset.is_none() {
                body_offset = Some(offset);
            }
            body.push_str(line);
        } else if body_offset.is_some() {
            body.push_str(line);
        }
        offset += line.len();
    }
    let vars = vars.ok_or(PolyError::MissingHeader)?;
    let poly = parse_poly(&body, &vars).map_err(|e| match e {
        PolyError::Syntax { pos, message } => PolyError::Syntax { pos: pos + body_offset.unwrap_or(0), message },
        PolyError::UnknownVariable { name, pos } => PolyError::UnknownVariable { name, pos: pos + body_offset.unwrap_or(0) },
        other => other,
    })?;
    Ok(PolyFile { vars, notes, poly })
}

/// Canonical file text for a polynomial.
pub fn format_poly_file(poly: &LaurentPoly2, notes: &[String]) -> String {
    let mut out = String::new();
    for n in notes {
        out.push_str("# ");
        out.push_str(n);
        out.push('\n');
    }
    out.push_str(&format!("vars: {} {}\n", poly.vars().first, poly.vars().second));
    out.push_str(&poly.to_string());
    out.push('\n');
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: &str) -> PolyError {
        PolyError::Syntax { pos: self.pos, message: message.to_string() }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly2, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly2, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly2, PolyError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPoly2, PolyError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let save = self.pos;
                if self.eat(b'/') {
                    self.skip_ws();
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        return Err(self.syntax("expected positive integer denominator"));
                    }
                    let d = self.integer()?;
                    if d.is_zero() || d.is_negative() {
                        self.pos = save;
                        return Err(self.syntax("denominator must be positive"));
                    }
                    return Ok(LaurentPoly2::constant(Rational::new(n, d), self.vars.clone()));
                }
                Ok(LaurentPoly2::constant(Rational::from_integer(n), self.vars.clone()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                match self.vars.index_of(name) {
                    Some(super::poly::Var::First) => Ok(LaurentPoly2::first_var(self.vars.clone())),
                    Some(super::poly::Var::Second) => Ok(LaurentPoly2::second_var(self.vars.clone())),
                    None => {
                        self.pos = start;
                        Err(PolyError::UnknownVariable { name: name.to_string(), pos: start })
                    }
                }
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        digits.parse().map_err(|_| self.syntax("bad integer"))
    }

    fn exponent(&mut self) -> Result<i64, PolyError> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let n = self.integer()?;
        if paren && !self.eat(b')') {
            return Err(self.syntax("expected ')'"));
        }
        let n = if neg { -n } else { n };
        if n.abs() > BigInt::from(MAX_EXPONENT) {
            let clamped = i64::try_from(&n).unwrap_or(if neg { i64::MIN } else { i64::MAX });
            return Err(PolyError::ExponentOverflow(clamped));
        }
        Ok(i64::try_from(n).expect("bounded above"))
    }
}
