//! Text polynomials: signed rational coefficients times products of
//! `x<i>^[w]` factors (`w` a comma list of derivation names), commutators
//! `[a, b, c]` expanded left-normed as `[[a, b], c]`, and parentheses.

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, Scalar};
use crate::pi::{ExponentWord, LPolynomial};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    Name(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().map(|c| if c == '−' { '-' } else { c }).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            out.push((col, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let var = word
                .strip_prefix('x')
                .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
                .map(|d| d.parse::<usize>());
            match var {
                Some(Ok(v)) if v >= 1 => out.push((col, Tok::Var(v - 1))),
                Some(_) => return Err(Error::parse(format!("column {col}"), "variables are numbered from x1")),
                None => out.push((col, Tok::Name(word))),
            }
        } else if "+-*^[](),".contains(c) {
            out.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::parse(
                format!("column {col}"),
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    letters: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn column(&self) -> String {
        format!("column {}", self.toks.get(self.pos).map_or(self.end, |t| t.0))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.column(), message))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<LPolynomial> {
        let mut acc = LPolynomial::zero();
        let mut sign = match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            sign = match self.peek() {
                Some(Tok::Sym('+')) => 1,
                Some(Tok::Sym('-')) => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<LPolynomial> {
        let mut coef = Scalar::one();
        if let Some(Tok::Num(n)) = self.peek() {
            coef = match parse_scalar(n) {
                Some(c) => c,
                None => return self.fail(format!("`{n}` is not a rational number")),
            };
            self.pos += 1;
            if self.peek() == Some(&Tok::Sym('*')) {
                self.pos += 1;
            }
        }
        let mut factors = Vec::new();
        while matches!(
            self.peek(),
            Some(Tok::Var(_)) | Some(Tok::Sym('[')) | Some(Tok::Sym('('))
        ) {
            factors.push(self.factor()?);
            if self.peek() == Some(&Tok::Sym('*')) {
                self.pos += 1;
            }
        }
        if factors.is_empty() {
            return self.fail("expected a variable, `[` or `(`");
        }
        Ok(LPolynomial::product(&factors).scale(&coef))
    }

    fn factor(&mut self) -> Result<LPolynomial> {
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.pos += 1;
                let mut word = Vec::new();
                if self.peek() == Some(&Tok::Sym('^')) {
                    self.pos += 1;
                    self.expect('[')?;
                    while self.peek() != Some(&Tok::Sym(']')) {
                        match self.peek().cloned() {
                            Some(Tok::Name(n)) => match self.letters.iter().position(|l| *l == n) {
                                Some(l) => word.push(l),
                                None => return self.fail(format!("unknown derivation `{n}`")),
                            },
                            _ => return self.fail("expected a derivation name"),
                        }
                        self.pos += 1;
                        if self.peek() == Some(&Tok::Sym(',')) {
                            self.pos += 1;
                        }
                    }
                    self.pos += 1;
                }
                Ok(LPolynomial::var_pow(v, ExponentWord(word)))
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let mut parts = vec![self.expr()?];
                while self.peek() == Some(&Tok::Sym(',')) {
                    self.pos += 1;
                    parts.push(self.expr()?);
                }
                if parts.len() < 2 {
                    return self.fail("a commutator needs at least two entries");
                }
                self.expect(']')?;
                Ok(LPolynomial::left_normed(&parts))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                self.expect(')')?;
                Ok(p)
            }
            _ => self.fail("expected a factor"),
        }
    }
}

/// Parses a polynomial whose exponent letters are indices into `letters`.
/// The result must be multilinear in `x1..xn`.
pub fn parse_polynomial(text: &str, letters: &[String]) -> Result<LPolynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        letters,
        end: text.chars().count() + 1,
    };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    f.multilinear_degree()?;
    Ok(f)
}
