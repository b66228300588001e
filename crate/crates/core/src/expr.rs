//! Rational linear combinations of products of named atoms.
//!
//! Used both for cohomology classes (`2*a^2 - t1*t2`) and for polynomials in
//! characteristic classes (`P1^2 - 2*P2`). Parenthesised sub-expressions are
//! expanded on parse, keeping factor order, so the stored form is always a flat
//! list of terms.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{format_q, is_negative, parse_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {col}: {msg}")]
pub struct ExprError {
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coef: Q,
    /// Atoms with exponents, in multiplication order.
    pub factors: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ExprError> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(ExprError { col: 1, msg: "empty expression".into() });
        }
        let mut p = Parser { tokens, pos: 0, end: text.len() };
        let e = p.sum()?;
        if let Some((col, t)) = p.tokens.get(p.pos) {
            return Err(ExprError { col: *col + 1, msg: format!("unexpected `{t}`") });
        }
        Ok(e)
    }

    pub fn constant(c: Q) -> Expr {
        Expr { terms: vec![Term { coef: c, factors: Vec::new() }] }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().flat_map(|t| t.factors.iter().map(|(a, _)| a.as_str()))
    }

    fn mul(&self, other: &Expr) -> Expr {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(Term { coef: &a.coef * &b.coef, factors });
            }
        }
        Expr { terms }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            let neg = is_negative(&t.coef);
            let abs = if neg { -t.coef.clone() } else { t.coef.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body: Vec<String> = t
                .factors
                .iter()
                .map(|(a, e)| if *e == 1 { a.clone() } else { format!("{a}^{e}") })
                .collect();
            if body.is_empty() {
                write!(f, "{}", format_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", body.join("*"))?;
            } else {
                write!(f, "{}*{}", format_q(&abs), body.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(q) => write!(f, "{}", format_q(q)),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (col, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            // n/d is a rational literal; there is no division operator
            if i + 1 < chars.len() && chars[i].1 == '/' && chars[i + 1].1.is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
            }
            let end = chars.get(i).map_or(text.len(), |x| x.0);
            let lit = &text[chars[start].0..end];
            let value = parse_q(lit).ok_or_else(|| ExprError { col: col + 1, msg: format!("bad number `{lit}`") })?;
            out.push((col, Tok::Num(value)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '.') {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |x| x.0);
            out.push((col, Tok::Ident(text[chars[start].0..end].to_string())));
        } else if "+-*^()".contains(c) {
            out.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError { col: col + 1, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(c, _)| *c) + 1
    }

    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError { col: self.col(), msg: msg.to_string() })
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let mut sign = Q::one();
        if let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            if *c == '-' {
                sign = -sign;
            }
            self.pos += 1;
        }
        loop {
            let t = self.product()?;
            terms.extend(t.terms.into_iter().map(|mut x| {
                x.coef *= &sign;
                x
            }));
            match self.peek() {
                Some(Tok::Sym('+')) => sign = Q::one(),
                Some(Tok::Sym('-')) => sign = -Q::one(),
                _ => break,
            }
            self.pos += 1;
        }
        terms.retain(|t| !t.coef.is_zero());
        Ok(Expr { terms })
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.power()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            let next = self.power()?;
            acc = acc.mul(&next);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            let exp = match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() && !is_negative(n) => {
                    let e: u32 = n.to_integer().try_into().or_else(|_| self.err("exponent too large"))?;
                    e
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            };
            self.pos += 1;
            // a single atom keeps its exponent; anything else is expanded
            if let [Term { coef, factors }] = base.terms.as_slice() {
                if coef.is_one() && factors.len() == 1 {
                    let (a, e0) = &factors[0];
                    if exp == 0 {
                        return Ok(Expr::constant(Q::one()));
                    }
                    return Ok(Expr { terms: vec![Term { coef: Q::one(), factors: vec![(a.clone(), e0 * exp)] }] });
                }
            }
            let mut acc = Expr::constant(Q::one());
            for _ in 0..exp {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::constant(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr { terms: vec![Term { coef: Q::one(), factors: vec![(s, 1)] }] })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => self.err(&format!("unexpected `{t}`")),
            None => self.err("unexpected end of expression"),
        }
    }
}
