//! Polynomials in the symbols `E, P1, P2, …` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::expr::{Expr, ExprError, Term};
use crate::rational::{q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Euler,
    Pontrjagin(usize),
}

impl Symbol {
    fn slot(self) -> usize {
        match self {
            Symbol::Euler => 0,
            Symbol::Pontrjagin(i) => i,
        }
    }

    fn from_slot(slot: usize) -> Symbol {
        if slot == 0 {
            Symbol::Euler
        } else {
            Symbol::Pontrjagin(slot)
        }
    }

    /// Cohomological degree for a bundle of the given rank.
    pub fn degree(self, rank: usize) -> usize {
        match self {
            Symbol::Euler => rank,
            Symbol::Pontrjagin(i) => 4 * i,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Euler => write!(f, "E"),
            Symbol::Pontrjagin(i) => write!(f, "P{i}"),
        }
    }
}

/// Exponent vector over `(E, P1, P2, …)` with trailing zeros trimmed, so the
/// derived ordering is lexicographic on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Monomial {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn symbol(s: Symbol) -> Monomial {
        let mut v = vec![0; s.slot() + 1];
        v[s.slot()] = 1;
        Monomial(v)
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0.get(s.slot()).copied().unwrap_or(0)
    }

    /// `(symbol, exponent)` pairs with positive exponent, in symbol order.
    pub fn factors(&self) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (Symbol::from_slot(i), *e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0)).collect();
        Monomial::from_exponents(v)
    }

    pub fn degree(&self, rank: usize) -> usize {
        self.factors().map(|(s, e)| s.degree(rank) * e as usize).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.factors().map(|(s, e)| if e == 1 { s.to_string() } else { format!("{s}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("unknown symbol `{0}` (expected E or P<i>)")]
    UnknownSymbol(String),
    #[error(transparent)]
    Parse(#[from] ExprError),
}

/// A polynomial in `E, P1, P2, …`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassPolynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl ClassPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::from_terms([(Monomial::symbol(s), Q::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c: &mut Q| !c.is_zero());
        Self { terms: map }
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        Self::from_expr(&Expr::parse(text)?)
    }

    pub fn from_expr(expr: &Expr) -> Result<Self, PolyError> {
        let mut terms = Vec::new();
        for t in &expr.terms {
            let mut m = Monomial::one();
            for (atom, e) in &t.factors {
                let sym = parse_symbol(atom).ok_or_else(|| PolyError::UnknownSymbol(atom.clone()))?;
                let mut v = vec![0; sym.slot() + 1];
                v[sym.slot()] = *e;
                m = m.mul(&Monomial::from_exponents(v));
            }
            terms.push((m, t.coef.clone()));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn uses_euler(&self) -> bool {
        self.terms.keys().any(|m| m.exponent(Symbol::Euler) > 0)
    }

    /// Largest `i` with `P_i` occurring, 0 if none.
    pub fn max_pontrjagin_index(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(s, _)| s))
            .filter_map(|s| match s {
                Symbol::Pontrjagin(i) => Some(i),
                Symbol::Euler => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self.terms.keys().flat_map(|m| m.factors().map(|(s, _)| s)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.push((m.mul(n), c * d));
            }
        }
        Self::from_terms(out)
    }

    /// The power sum `s_i` of Pontrjagin roots, as a polynomial in `P_j`.
    pub fn power_sum(i: usize) -> Self {
        let mut s: Vec<Self> = Vec::new();
        for k in 1..=i {
            let sign = if k % 2 == 1 { q(1) } else { q(-1) };
            let mut acc = Self::symbol(Symbol::Pontrjagin(k)).scale(&(sign * q(k as i64)));
            for j in 1..k {
                let term = Self::symbol(Symbol::Pontrjagin(j)).mul(&s[k - j - 1]);
                acc = if j % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
            }
            s.push(acc);
        }
        s.pop().unwrap_or_else(Self::zero)
    }

    /// `ph_i − p_i` with `ph_i` scaled to have `p_i`-coefficient 1; the result
    /// involves only `P_j` with `j < i`.
    pub fn character_qprime(i: usize) -> Self {
        let s = Self::power_sum(i);
        let lead = s.coefficient(&Monomial::symbol(Symbol::Pontrjagin(i)));
        s.scale(&(Q::one() / lead)).sub(&Self::symbol(Symbol::Pontrjagin(i)))
    }

    pub fn to_expr(&self) -> Expr {
        if self.terms.is_empty() {
            return Expr::constant(Q::zero());
        }
        Expr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| Term {
                    coef: c.clone(),
                    factors: m.factors().map(|(s, e)| (s.to_string(), e)).collect(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for ClassPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.to_expr())
    }
}

fn parse_symbol(atom: &str) -> Option<Symbol> {
    if atom == "E" {
        return Some(Symbol::Euler);
    }
    let i: usize = atom.strip_prefix('P')?.parse().ok()?;
    (i > 0).then_some(Symbol::Pontrjagin(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_prefers_later_symbols() {
        let p2 = Monomial::symbol(Symbol::Pontrjagin(2));
        let p1 = Monomial::symbol(Symbol::Pontrjagin(1));
        let e = Monomial::symbol(Symbol::Euler);
        assert!(p2 < p1 && p1 < e);
        assert!(p1 < p1.mul(&p2));
    }

    #[test]
    fn parse_and_print() {
        let p = ClassPolynomial::parse("P1^2 - 2*P2 + E*P1 + 3").unwrap();
        assert_eq!(p.to_string(), "3 - 2*P2 + P1^2 + E*P1");
        assert_eq!(ClassPolynomial::parse(&p.to_string()).unwrap(), p);
        assert!(p.uses_euler());
        assert_eq!(p.max_pontrjagin_index(), 2);
        assert!(ClassPolynomial::parse("Q1").is_err());
        assert!(ClassPolynomial::parse("P0").is_err());
    }

    #[test]
    fn power_sums_by_newton() {
        assert_eq!(ClassPolynomial::power_sum(1), ClassPolynomial::parse("P1").unwrap());
        assert_eq!(ClassPolynomial::power_sum(2), ClassPolynomial::parse("P1^2 - 2*P2").unwrap());
        assert_eq!(ClassPolynomial::power_sum(3), ClassPolynomial::parse("P1^3 - 3*P1*P2 + 3*P3").unwrap());
    }

    #[test]
    fn character_qprime_avoids_top_symbol() {
        for i in 1..6 {
            let qp = ClassPolynomial::character_qprime(i);
            assert!(qp.max_pontrjagin_index() < i, "{i}: {qp}");
        }
        assert!(ClassPolynomial::character_qprime(1).is_zero());
        // s2 = P1² − 2P2, scaled by −1/2: −P1²/2 + P2; minus P2
        assert_eq!(ClassPolynomial::character_qprime(2), ClassPolynomial::parse("-1/2*P1^2").unwrap());
    }
}
