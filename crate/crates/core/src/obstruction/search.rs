use std::collections::HashMap;

use num_traits::Zero;

use super::{ObstructionCertificate, ObstructionError};
use crate::algebra::{kernel_of_map_on_subspace, Element};
use crate::bundles::{tangent_bundle, whitney_sum, Bundle};
use crate::linalg::TrackedEchelon;
use crate::poly::{ClassPolynomial, Monomial, Symbol};
use crate::spaces::Space;

pub const DEFAULT_BUDGET: usize = 10_000;
pub const MAX_GENERATORS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of monomials to evaluate.
    pub budget: usize,
    /// Use `p_i(ξ)` instead of `p_i(TB ⊕ ξ)`; identical when `TB` is rationally trivial.
    pub use_bundle_classes: bool,
    pub include_euler: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, use_bundle_classes: false, include_euler: true }
    }
}

/// Substitutes `E ↦ euler`, `P_i ↦ pontrjagin[i-1]` (zero past the end).
pub fn eval_poly(
    poly: &ClassPolynomial,
    euler: Option<&Element>,
    pontrjagin: &[Element],
    space: &Space,
) -> Result<Element, ObstructionError> {
    let mut acc = space.zero();
    for (m, c) in poly.terms() {
        let mut term = space.unit().scale(c);
        for (s, e) in m.factors() {
            let base = match s {
                Symbol::Euler => euler.ok_or(ObstructionError::NoEuler)?.clone(),
                Symbol::Pontrjagin(i) => pontrjagin.get(i - 1).cloned().unwrap_or_else(|| space.zero()),
            };
            term = term.checked_mul(&base.pow(e))?;
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

pub fn find_obstruction(xi: &Bundle) -> Result<ObstructionCertificate, ObstructionError> {
    find_obstruction_with(xi, &SearchOptions::default())
}

pub(crate) fn generators(xi: &Bundle, opts: &SearchOptions) -> Result<Vec<(Symbol, Element)>, ObstructionError> {
    let base = xi.base();
    let top = base.dimension();
    let mut gens = Vec::new();
    if opts.include_euler && xi.rank() > 0 && xi.rank() % 2 == 0 && xi.rank() <= top {
        if let Some(e) = xi.euler() {
            gens.push((Symbol::Euler, e.clone()));
        }
    }
    let source = if opts.use_bundle_classes { xi.clone() } else { whitney_sum(&tangent_bundle(base)?, xi)? };
    for i in 1..=top / 4 {
        gens.push((Symbol::Pontrjagin(i), source.pontrjagin(i)));
    }
    if gens.len() > MAX_GENERATORS {
        return Err(ObstructionError::TooManyGenerators(gens.len()));
    }
    Ok(gens)
}

/// Number of nonconstant monomials of total degree at most `top`.
fn count_monomials(degrees: &[usize], top: usize) -> usize {
    let mut ways = vec![0usize; top + 1];
    ways[0] = 1;
    for &d in degrees {
        for t in d..=top {
            ways[t] = ways[t].saturating_add(ways[t - d]);
        }
    }
    ways[1..].iter().fold(0usize, |a, b| a.saturating_add(*b))
}

fn enumerate(degrees: &[usize], top: usize) -> Vec<Vec<u32>> {
    fn go(degrees: &[usize], left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let g = cur.len();
        if g == degrees.len() {
            if cur.iter().any(|e| *e > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left / degrees[g] {
            cur.push(e as u32);
            go(degrees, left - e * degrees[g], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, top, &mut Vec::new(), &mut out);
    out
}

fn monomial_of(symbols: &[Symbol], exps: &[u32]) -> Monomial {
    symbols
        .iter()
        .zip(exps)
        .filter(|(_, e)| **e > 0)
        .fold(Monomial::one(), |m, (s, e)| {
            (0..*e).fold(m, |m, _| m.mul(&Monomial::symbol(*s)))
        })
}

/// Searches the span of monomials in the generator classes for a value that
/// is nonzero on `C × T` but dies on `C × *`.
///
/// The witness is the first monomial `m_k`, in exponent-vector order over
/// `(E, P1, P2, …)`, whose restriction is a combination of earlier
/// restrictions while its value is not the same combination of earlier values.
pub fn find_obstruction_with(xi: &Bundle, opts: &SearchOptions) -> Result<ObstructionCertificate, ObstructionError> {
    let base = xi.base();
    if !base.has_torus_factor() {
        return Err(ObstructionError::NoBigrading(base.name().to_string()));
    }
    let top = base.dimension();
    let gens = generators(xi, opts)?;
    let symbols: Vec<Symbol> = gens.iter().map(|(s, _)| *s).collect();
    let degrees: Vec<usize> = gens.iter().map(|(s, _)| s.degree(xi.rank())).collect();
    let needed = count_monomials(&degrees, top);
    if needed > opts.budget {
        return Err(ObstructionError::BudgetExceeded { needed, budget: opts.budget });
    }

    let mut monomials: Vec<(Monomial, Vec<u32>)> =
        enumerate(&degrees, top).into_iter().map(|e| (monomial_of(&symbols, &e), e)).collect();
    monomials.sort();

    let mut powers: HashMap<(usize, u32), Element> = HashMap::new();
    let mut values = Vec::with_capacity(monomials.len());
    for (_, exps) in &monomials {
        let mut v = base.unit();
        for (g, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = powers.entry((g, e)).or_insert_with(|| gens[g].1.pow(e)).clone();
            v = &v * &p;
        }
        values.push(v);
    }

    let kernel = kernel_of_map_on_subspace(&base.core_projection(), &values)?;
    if kernel.is_empty() {
        return Ok(ObstructionCertificate::unobstructed(base, gens, opts));
    }

    let mut restrictions = TrackedEchelon::new();
    for (k, v) in values.iter().enumerate() {
        let r = base.core_part(v).to_dense();
        let (residual, combo) = restrictions.reduce(&r);
        if residual.iter().any(|x| !x.is_zero()) {
            restrictions.insert(k, &r);
            continue;
        }
        let mut value = v.clone();
        let mut witness = ClassPolynomial::from_terms([(monomials[k].0.clone(), num_traits::One::one())]);
        for (t, c) in &combo {
            value = &value - &values[*t].scale(c);
            witness = witness.sub(&ClassPolynomial::from_terms([(monomials[*t].0.clone(), c.clone())]));
        }
        if value.is_zero() {
            continue;
        }
        let restriction = base.core_part(&value);
        debug_assert!(restriction.is_zero());
        let mut cert = ObstructionCertificate::obstructed(base, witness, value, restriction, gens);
        cert.notes.push(format!(
            "restriction criterion: nonzero on {}, zero on the core; scanned {} of {} monomials, kernel dimension {}",
            base.name(),
            k + 1,
            values.len(),
            kernel.len()
        ));
        return Ok(cert);
    }
    unreachable!("a nonzero kernel forces some prefix to grow it")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::Verdict;
    use crate::rational::q;
    use crate::spaces::kunneth_product;

    fn s3xs1() -> Space {
        kunneth_product(&Space::sphere(3).unwrap(), &Space::torus(1).unwrap())
    }

    #[test]
    fn eval_examples() {
        let t4 = Space::torus(4).unwrap();
        let top = t4.fundamental_class().unwrap();
        let one = ClassPolynomial::parse("1").unwrap();
        assert_eq!(eval_poly(&one, None, &[], &t4).unwrap(), t4.unit());
        let p1 = ClassPolynomial::parse("P1").unwrap();
        assert_eq!(eval_poly(&p1, None, std::slice::from_ref(&top), &t4).unwrap(), top);
        let e2 = ClassPolynomial::parse("E^2").unwrap();
        assert_eq!(eval_poly(&e2, None, &[], &t4), Err(ObstructionError::NoEuler));

        let b = kunneth_product(&Space::complex_projective(3).unwrap(), &Space::torus(2).unwrap());
        let e = &b.element("a").unwrap() + &b.element("t1*t2").unwrap();
        let v = eval_poly(&e2, Some(&e), &[], &b).unwrap();
        assert_eq!(v.to_string(), "2*a*t1*t2 + a^2");
    }

    #[test]
    fn torus_example_fires_with_p1() {
        let t4 = Space::torus(4).unwrap();
        let xi = Bundle::new(&t4, 3, true, None, vec![t4.fundamental_class().unwrap()]).unwrap();
        let cert = find_obstruction(&xi).unwrap();
        assert_eq!(cert.verdict, Verdict::Obstructed);
        assert_eq!(cert.witness.as_ref().unwrap().to_string(), "P1");
        cert.verify().unwrap();
    }

    #[test]
    fn s3xs1_fires_with_p1() {
        let b = s3xs1();
        let st = b.fundamental_class().unwrap();
        let xi = Bundle::new(&b, 4, true, None, vec![st.clone()]).unwrap();
        let cert = find_obstruction(&xi).unwrap();
        assert_eq!(cert.verdict, Verdict::Obstructed);
        assert_eq!(cert.witness.as_ref().unwrap().to_string(), "P1");
        assert_eq!(cert.value.as_ref().unwrap(), &st);
        cert.verify().unwrap();

        let with_e = Bundle::oriented_with_euler(&b, 4, st.scale(&q(3)), vec![]).unwrap();
        let cert = find_obstruction(&with_e).unwrap();
        assert_eq!(cert.witness.as_ref().unwrap().to_string(), "E");
    }

    #[test]
    fn s2xs1_never_fires() {
        let b = kunneth_product(&Space::sphere(2).unwrap(), &Space::torus(1).unwrap());
        let s = b.element("s").unwrap();
        for r in 0..=5 {
            let e = if r == 2 { Some(s.scale(&q(7))) } else { None };
            let xi = Bundle::new(&b, r, true, e, vec![]).unwrap();
            assert_eq!(find_obstruction(&xi).unwrap().verdict, Verdict::NoObstructionFound);
        }
    }

    #[test]
    fn pdual_pipeline_witness_is_p2() {
        let b = kunneth_product(&Space::complex_projective(3).unwrap(), &Space::torus(2).unwrap());
        let e = &b.element("a").unwrap() + &b.element("t1*t2").unwrap();
        let xi = Bundle::oriented_with_euler(&b, 2, e, vec![]).unwrap();
        let cert = find_obstruction(&xi).unwrap();
        assert_eq!(cert.witness.as_ref().unwrap().to_string(), "P2");
        assert_eq!(cert.value.as_ref().unwrap().to_string(), "8*a^3*t1*t2");
        cert.verify().unwrap();
    }

    #[test]
    fn base_without_torus_is_rejected() {
        let c = Space::complex_projective(2).unwrap();
        let xi = Bundle::trivial(&c, 2);
        assert!(matches!(find_obstruction(&xi), Err(ObstructionError::NoBigrading(_))));
    }

    #[test]
    fn budget_overflow_is_reported() {
        let t8 = Space::torus(8).unwrap();
        let xi = Bundle::trivial(&t8, 2);
        let opts = SearchOptions { budget: 2, ..SearchOptions::default() };
        assert!(matches!(find_obstruction_with(&xi, &opts), Err(ObstructionError::BudgetExceeded { .. })));
    }

    #[test]
    fn monomial_counting_matches_enumeration() {
        for degs in [vec![2, 4, 8], vec![4, 4], vec![3], vec![4, 8, 12]] {
            for top in 0..14 {
                assert_eq!(count_monomials(&degs, top), enumerate(&degs, top).len());
            }
        }
    }
}
