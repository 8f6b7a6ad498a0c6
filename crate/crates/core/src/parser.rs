//! Text syntax for carrier sequences.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor | '/' factor)*
//! factor   := '-' factor | primary ('^' integer)?
//! primary  := number | 'n' ('^' exponent)? | '(-1)^n'
//!           | 'per(' signed (',' signed)* ')' | '(' expr ')' | name
//! exponent := integer | '-' integer | '(' signed ')'
//! signed   := '-'? integer ('/' integer)?
//! number   := digits ('.' digits)?
//! ```
//!
//! The divisor of `/` must evaluate to a nonzero monomial `c·n^a` with a
//! constant coefficient; anything else is rejected, since the carrier is not
//! closed under division. `per(v1, ..., vP)` assigns `v1` to `n = 1`, and
//! `(-1)^n` is shorthand for `per(-1, 1)`. `^k` on a parenthesized
//! expression is a `k`-fold product. Names are resolved against the bindings
//! passed to [`parse_with`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::seqrep::{PeriodicCoeff, SeqRep, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("at byte {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error(
        "at byte {position}: division is only supported by nonzero rationals and monomials n^a"
    )]
    DivisionNotSupported { position: usize },
    #[error("at byte {position}: division by zero")]
    ZeroDivisor { position: usize },
    #[error("at byte {position}: unknown name `{name}`")]
    UnknownName { position: usize, name: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::DivisionNotSupported { position }
            | ParseError::ZeroDivisor { position }
            | ParseError::UnknownName { position, .. } => *position,
        }
    }
}

/// Named sequences available to the parser, as in a REPL session.
pub type Bindings = HashMap<String, SeqRep>;

pub fn parse(text: &str) -> Result<SeqRep, ParseError> {
    parse_with(text, &Bindings::new())
}

pub fn parse_with(text: &str, bindings: &Bindings) -> Result<SeqRep, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        bindings,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    bindings: &'a Bindings,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn unexpected(&mut self, expected: &str) -> ParseError {
        self.skip_ws();
        let found = match self.peek_raw() {
            None => "end of input".to_owned(),
            Some(_) => {
                let lexeme: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| !c.is_whitespace())
                    .take(12)
                    .collect();
                format!("`{lexeme}`")
            }
        };
        ParseError::Syntax {
            position: self.pos,
            expected: expected.to_owned(),
            found,
        }
    }

    fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(s)
    }

    fn expr(&mut self) -> Result<SeqRep, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SeqRep, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let divisor = self.factor()?;
                acc = acc.mul(&reciprocal_of_monomial(&divisor, at)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<SeqRep, ParseError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let (base, powerable) = self.primary()?;
        if powerable && self.peek() == Some('^') {
            self.pos += 1;
            let k = self.unsigned_integer()?;
            let k = k
                .to_u32()
                .ok_or_else(|| self.unexpected("a small integer exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    /// Returns the value and whether a trailing `^k` may follow.
    fn primary(&mut self) -> Result<(SeqRep, bool), ParseError> {
        if self.starts_with("(-1)^n") {
            self.pos += "(-1)^n".len();
            return Ok((SeqRep::alternating(), false));
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok((inner, true))
            }
            Some(c) if c.is_ascii_digit() => Ok((SeqRep::constant(self.number()?), true)),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.identifier();
                match name.as_str() {
                    "n" => {
                        if self.peek() == Some('^') {
                            self.pos += 1;
                            let power = self.exponent()?;
                            Ok((SeqRep::n_pow(power), false))
                        } else {
                            Ok((SeqRep::n_pow(Rational::one()), false))
                        }
                    }
                    "per" => Ok((self.periodic()?, true)),
                    _ => match self.bindings.get(&name) {
                        Some(value) => Ok((value.clone(), true)),
                        None => Err(ParseError::UnknownName {
                            position: start,
                            name,
                        }),
                    },
                }
            }
            _ => Err(self.unexpected("a number, `n`, `(-1)^n`, `per(...)` or `(`")),
        }
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if c.is_alphanumeric() || c == '_' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        self.src[start..self.pos].to_owned()
    }

    fn periodic(&mut self) -> Result<SeqRep, ParseError> {
        self.expect('(')?;
        let mut values = vec![self.signed_rational()?];
        while self.eat(',') {
            values.push(self.signed_rational()?);
        }
        self.expect(')')?;
        Ok(SeqRep::periodic(values))
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        if self.eat('(') {
            let value = self.signed_rational()?;
            self.expect(')')?;
            Ok(value)
        } else if self.eat('-') {
            Ok(-Rational::from_integer(self.unsigned_integer()?))
        } else {
            Ok(Rational::from_integer(self.unsigned_integer()?))
        }
    }

    fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        let negative = self.eat('-');
        let numer = self.unsigned_integer()?;
        let mut value = Rational::from_integer(numer);
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let denom = self.unsigned_integer()?;
            if denom.is_zero() {
                return Err(ParseError::ZeroDivisor { position: at });
            }
            value /= Rational::from_integer(denom);
        }
        Ok(if negative { -value } else { value })
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn unsigned_integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.unexpected("an integer"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        let whole: BigInt = self.unsigned_integer()?;
        if self.peek_raw() == Some('.') {
            self.pos += 1;
            let frac = self.digits();
            if frac.is_empty() {
                return Err(self.unexpected("digits after `.`"));
            }
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac: BigInt = frac.parse().expect("ascii digits");
            return Ok(Rational::new(whole * &scale + frac, scale));
        }
        Ok(Rational::from_integer(whole))
    }
}

fn reciprocal_of_monomial(divisor: &SeqRep, position: usize) -> Result<SeqRep, ParseError> {
    match divisor.terms() {
        [] => Err(ParseError::ZeroDivisor { position }),
        [t] => match t.coeff.as_constant() {
            Some(c) => Ok(SeqRep::monomial(c.recip(), -&t.exponent)),
            None => Err(ParseError::DivisionNotSupported { position }),
        },
        _ => Err(ParseError::DivisionNotSupported { position }),
    }
}

/// Renders `x` in the canonical spelling that [`parse`] reads back to the
/// identical representation. Terms appear in order of increasing exponent,
/// e.g. `3 + n^(-1)` or `per(0,2) - 1/2*n^(-1/2)`.
pub fn format(x: &SeqRep) -> String {
    if x.is_zero() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (i, t) in x.terms().iter().enumerate() {
        let (negative, body) = render_term(t);
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

fn render_term(t: &Term) -> (bool, String) {
    let power = render_power(&t.exponent);
    let (negative, coeff) = render_coeff(&t.coeff);
    let body = match (coeff, power) {
        (c, None) => c.unwrap_or_else(|| "1".to_owned()),
        (None, Some(p)) => p,
        (Some(c), Some(p)) => format!("{c}*{p}"),
    };
    (negative, body)
}

/// Sign and magnitude text; `None` magnitude means a unit coefficient.
fn render_coeff(coeff: &PeriodicCoeff) -> (bool, Option<String>) {
    match coeff.as_constant() {
        Some(c) => {
            let magnitude = c.abs();
            let text = (!rational::is_one(&magnitude)).then(|| rational::render(&magnitude));
            (c.is_negative(), text)
        }
        None => {
            let values: Vec<String> = coeff.values().iter().map(rational::render).collect();
            (false, Some(format!("per({})", values.join(","))))
        }
    }
}

/// `n`, `n^2`, `n^(-1)`, `n^(1/2)`; `None` for the exponent 0.
fn render_power(exponent: &Rational) -> Option<String> {
    let power = -exponent;
    if power.is_zero() {
        None
    } else if power.is_one() {
        Some("n".to_owned())
    } else if power.is_integer() && power.is_positive() {
        Some(format!("n^{}", power.numer()))
    } else {
        Some(format!("n^({})", rational::render(&power)))
    }
}
