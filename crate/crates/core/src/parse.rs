//! Parser for polynomial expressions in a declared variable set.
//!
//! Grammar (usual precedence, `^` binds tightest):
//!   expr   := ['-'] term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := atom ('^' integer)?
//!   atom   := integer | variable | '(' expr ')' | '-' factor

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Vars;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("integer overflow in {s:?}")))?;
                tokens.push(Token::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character {other:?} in polynomial"
                )))
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a PrimeField,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg(self.field);
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t, self.field, self.vars);
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t, self.field, self.vars);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            let f = self.factor()?;
            acc = acc.mul(&f, self.field, self.vars);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Int(e)) if e >= 0 => {
                    let mut acc = Polynomial::one(self.vars.len());
                    for _ in 0..e {
                        acc = acc.mul(&base, self.field, self.vars);
                    }
                    Ok(acc)
                }
                other => Err(Error::Parse(format!(
                    "expected nonnegative integer exponent, found {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Int(v)) => Ok(Polynomial::constant(self.field, v, self.vars.len())),
            Some(Token::Ident(name)) => match self.vars.index_of(&name) {
                Some(i) => Ok(Polynomial::variable(self.vars.len(), i)),
                None => Err(Error::Parse(format!("unknown variable {name:?}"))),
            },
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            Some(Token::Minus) => {
                let f = self.factor()?;
                Ok(f.neg(self.field))
            }
            other => Err(Error::Parse(format!(
                "expected polynomial atom, found {other:?}"
            ))),
        }
    }
}

pub fn parse_polynomial(input: &str, field: &PrimeField, vars: &Vars) -> Result<Polynomial> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        field,
        vars,
    };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing tokens after polynomial in {input:?}"
        )));
    }
    Ok(poly)
}
