//! Text form of algebra and tensor elements.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := coeff ("*" factor)* | factor ("*" factor)*
//! coeff  := integer ["/" integer]
//! factor := ("u"|"v") ["^" signed-integer]
//! tensor := ["+"|"-"] term "(x)" term (("+"|"-") term "(x)" term)*
//! ```
//!
//! Whitespace is insignificant and `1` is the unit. Rendering (the `Display`
//! impls) always produces text this parser accepts.

use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::scalar::Scalar;
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unknown symbol `{symbol}` at position {position}")]
    UnknownSymbol { position: usize, symbol: char },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.src.get(self.pos) {
            Some(&b) => format!("`{}`", b as char),
            None => "end of input".to_string(),
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        match self.src.get(self.pos) {
            Some(&b) if b.is_ascii_alphabetic() || !b.is_ascii() => ParseError::UnknownSymbol {
                position: self.pos,
                symbol: b as char,
            },
            _ => ParseError::Syntax {
                position: self.pos,
                expected,
                found: self.found(),
            },
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.error("integer exponent"))?;
        let n: i64 = d.parse().map_err(|_| ParseError::Syntax {
            position: start,
            expected: "exponent that fits in 64 bits",
            found: d.to_string(),
        })?;
        Ok(if neg { -n } else { n })
    }

    fn coefficient(&mut self) -> Result<Option<Scalar>, ParseError> {
        let Some(n) = self.digits() else {
            return Ok(None);
        };
        let mut text = n.to_string();
        if self.eat(b'/') {
            let d = self.digits().ok_or_else(|| self.error("denominator"))?;
            text.push('/');
            text.push_str(d);
        }
        let s: Scalar = text.parse().map_err(|_| ParseError::Syntax {
            position: self.pos,
            expected: "nonzero denominator",
            found: text.clone(),
        })?;
        Ok(Some(s))
    }

    fn factor(&mut self, out: &mut Vec<Letter>) -> Result<(), ParseError> {
        let (pos, neg) = match self.peek() {
            Some(b'u') => (Letter::U, Letter::UInv),
            Some(b'v') => (Letter::V, Letter::VInv),
            _ => return Err(self.error("`u` or `v`")),
        };
        self.pos += 1;
        let exp = if self.eat(b'^') { self.signed_int()? } else { 1 };
        let l = if exp < 0 { neg } else { pos };
        for _ in 0..exp.unsigned_abs() {
            out.push(l);
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(Scalar, Word), ParseError> {
        let mut letters = Vec::new();
        let coeff = match self.coefficient()? {
            Some(c) => c,
            None => {
                self.factor(&mut letters)?;
                Scalar::ONE
            }
        };
        while self.eat(b'*') {
            self.factor(&mut letters)?;
        }
        Ok((coeff, Word::reduce(&letters)))
    }

    /// Optional leading sign, then items separated by `+` or `-`.
    fn signed_list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<(bool, T)>, ParseError> {
        let mut out = Vec::new();
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            out.push((neg, item(self)?));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                None => return Ok(out),
                Some(_) => return Err(self.error("`+`, `-` or end of input")),
            }
        }
    }
}

pub fn parse_element(text: &str) -> Result<AlgebraElement, ParseError> {
    let mut p = Parser::new(text);
    let items = p.signed_list(|p| p.term())?;
    Ok(AlgebraElement::from_terms(
        items
            .into_iter()
            .map(|(neg, (c, w))| (w, if neg { -c } else { c })),
    ))
}

pub fn parse_tensor(text: &str) -> Result<TensorElement, ParseError> {
    let mut p = Parser::new(text);
    let items = p.signed_list(|p| {
        let (cl, wl) = p.term()?;
        if !p.eat_str("(x)") {
            return Err(p.error("`(x)`"));
        }
        let (cr, wr) = p.term()?;
        Ok((&cl * &cr, wl, wr))
    })?;
    Ok(TensorElement::from_terms(
        items
            .into_iter()
            .map(|(neg, (c, l, r))| ((l, r), if neg { -c } else { c })),
    ))
}

impl std::str::FromStr for AlgebraElement {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_element(s)
    }
}

impl std::str::FromStr for TensorElement {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tensor(s)
    }
}
