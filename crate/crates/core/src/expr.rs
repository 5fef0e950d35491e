//! Parser for exact exponent expressions.
//!
//! Accepts rational literals (`3/4`, `0.95`), the regularity variable `s`,
//! the formal infinitesimal `e` (or `ε`), the operators `+ - * / ^` and
//! parentheses. Everything parses into a [`SymExponent`] with exact
//! arithmetic; `1/4-2*e`, `(1-s)*(7-2*s)/(3*(3-2*s))` and `19/20` are all
//! valid.

use num_traits::Zero;

use crate::ratfn::RationalFnInS;
use crate::rational::Rational;
use crate::sym::SymExponent;
use crate::{Error, Result};

/// Parse a full expression into a symbolic exponent.
pub fn parse_sym_exponent(text: &str) -> Result<SymExponent> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        text,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{text}`")));
    }
    Ok(e)
}

/// Parse an expression that must not mention ε.
pub fn parse_ratfn(text: &str) -> Result<RationalFnInS> {
    let e = parse_sym_exponent(text)?;
    if !e.eps.is_zero() {
        return Err(Error::Parse(format!(
            "`{text}` mentions ε where a plain function of s is required"
        )));
    }
    Ok(e.base)
}

/// Parse an expression that must be a plain rational constant.
pub fn parse_constant(text: &str) -> Result<Rational> {
    let f = parse_ratfn(text)?;
    f.as_constant().ok_or_else(|| {
        Error::Parse(format!(
            "`{text}` depends on s where a constant is required"
        ))
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Var,
    Eps,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '·' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            's' => {
                out.push(Token::Var);
                i += 1;
            }
            'e' | 'ε' => {
                out.push(Token::Eps);
                i += 1;
            }
            _ if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Token::Number(crate::rational::parse_rational(&lit)?));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` in `{text}`"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<SymExponent> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Token::Minus => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SymExponent> {
        let mut acc = self.factor()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Star => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Token::Slash => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.div(&f).map_err(|_| {
                        Error::Parse(format!("division by zero in `{}`", self.text))
                    })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SymExponent> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            let f = self.factor()?;
            return Ok(-&f);
        }
        let mut base = self.primary()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            let exp = match self.bump() {
                Some(Token::Number(n))
                    if n.is_integer() && !n.numer().sign().eq(&num_bigint::Sign::Minus) =>
                {
                    n.to_integer()
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "`^` needs a non-negative integer in `{}`",
                        self.text
                    )))
                }
            };
            let mut acc = SymExponent::from_rational(Rational::from_integer(1.into()));
            let mut k: num_bigint::BigInt = Zero::zero();
            while k < exp {
                acc = &acc * &base;
                k += 1;
            }
            base = acc;
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<SymExponent> {
        match self.bump() {
            Some(Token::Number(n)) => Ok(SymExponent::from_rational(n)),
            Some(Token::Var) => Ok(SymExponent::var()),
            Some(Token::Eps) => Ok(SymExponent::new(
                RationalFnInS::zero(),
                RationalFnInS::one(),
            )),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(Error::Parse(format!(
                        "unbalanced parenthesis in `{}`",
                        self.text
                    ))),
                }
            }
            other => Err(Error::Parse(format!(
                "expected a value, found {other:?} in `{}`",
                self.text
            ))),
        }
    }
}
