//! Canonical polynomial text: terms in descending grevlex order joined by
//! ` + ` / ` - `, unit coefficients omitted, `3/2*x1^2*y3` for the rest.

use num_bigint::BigInt;
use num_traits::Signed;

use super::{GroebnerError, Monomial, PolyRing, Polynomial};
use crate::fields::{FieldDescriptor, FieldElement};

impl PolyRing {
    pub fn format(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms().iter().enumerate() {
            let (negative, magnitude) = self.split_sign(c);
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = self.format_monomial(m);
            match (magnitude.is_one(), mono.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&magnitude.to_string()),
                (false, false) => {
                    out.push_str(&magnitude.to_string());
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    /// Over ℚ negative coefficients print with a separated minus sign; other
    /// fields print their canonical element text as is.
    fn split_sign(&self, c: &FieldElement) -> (bool, FieldElement) {
        match (self.field().descriptor(), c.as_rational()) {
            (FieldDescriptor::Rationals, Some(r)) if r.is_negative() => (true, -c),
            _ => (false, c.clone()),
        }
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .zip(self.vars())
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        parts.join("*")
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, GroebnerError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            ring: self,
            tokens,
            pos: 0,
        };
        let p = parser.expr()?;
        if let Some(t) = parser.tokens.get(parser.pos) {
            return Err(GroebnerError::Parse(format!("unexpected {t:?} in {text:?}")));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Element(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, GroebnerError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().expect("ascii digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if c == '[' {
            let end = chars[i..]
                .iter()
                .position(|&d| d == ']')
                .ok_or_else(|| GroebnerError::Parse(format!("unclosed '[' in {text:?}")))?;
            out.push(Token::Element(chars[i..=i + end].iter().collect()));
            i += end + 1;
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(GroebnerError::Parse(format!("unexpected character {c:?} in {text:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek_sym(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Sym(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Polynomial, GroebnerError> {
        let one = self.ring.field().one();
        let mut acc = self.ring.zero();
        let mut sign = one.clone();
        match self.peek_sym() {
            Some('-') => {
                sign = -&one;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add_scaled(&t, &sign);
            match self.peek_sym() {
                Some('+') => sign = one.clone(),
                Some('-') => sign = -&one,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial, GroebnerError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_sym() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(GroebnerError::Parse(
                            "division is only allowed by a nonzero constant".into(),
                        ));
                    }
                    let c = d.leading_coefficient().expect("nonzero").inv()?;
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, GroebnerError> {
        if self.peek_sym() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek_sym() == Some('^') {
            self.pos += 1;
            let e = match self.tokens.get(self.pos) {
                Some(Token::Int(n)) => {
                    u32::try_from(n).map_err(|_| GroebnerError::Parse(format!("exponent {n} too large")))?
                }
                other => return Err(GroebnerError::Parse(format!("expected an exponent, got {other:?}"))),
            };
            self.pos += 1;
            return Ok(if e == 0 { self.ring.one() } else { base.pow(e) });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, GroebnerError> {
        let token = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| GroebnerError::Parse("unexpected end of polynomial".into()))?;
        self.pos += 1;
        match token {
            Token::Int(n) => Ok(self.ring.constant(self.ring.field().from_bigint(&n))),
            Token::Ident(name) => self.ring.var(&name),
            Token::Element(text) => Ok(self.ring.constant(self.ring.field().parse_element(&text)?)),
            Token::Sym('(') => {
                let inner = self.expr()?;
                if self.peek_sym() != Some(')') {
                    return Err(GroebnerError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::Sym(c) => Err(GroebnerError::Parse(format!("unexpected {c:?}"))),
        }
    }
}
