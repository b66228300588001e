//! Oracles shared by the integration tests. Nothing here calls the library's
//! element arithmetic, search or verification: products come straight from
//! the structure constants, torus degrees from basis labels, ranks from a
//! local elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use soulcert::algebra::{Element, GradedAlgebra};
use soulcert::obstruction::{ObstructionCertificate, Verdict};
use soulcert::poly::Symbol;
use soulcert::rational::Q;
use soulcert::spaces::{kunneth_product, Space};

pub type Dense = Vec<Q>;

pub fn dense(x: &Element) -> Dense {
    let mut v = vec![Q::zero(); x.algebra().dim()];
    for (i, c) in x.terms() {
        v[i] = c.clone();
    }
    v
}

pub fn unit(alg: &GradedAlgebra) -> Dense {
    let mut v = vec![Q::zero(); alg.dim()];
    v[0] = Q::one();
    v
}

pub fn mul(alg: &GradedAlgebra, x: &[Q], y: &[Q]) -> Dense {
    let mut out = vec![Q::zero(); alg.dim()];
    for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            for (k, c) in alg.product_terms(i, j) {
                out[k] += a * b * c;
            }
        }
    }
    out
}

pub fn add(x: &[Q], y: &[Q]) -> Dense {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn scale(x: &[Q], c: &Q) -> Dense {
    x.iter().map(|a| a * c).collect()
}

pub fn is_zero(x: &[Q]) -> bool {
    x.iter().all(|c| c.is_zero())
}

/// Number of torus generators `t<digits>` in a basis label such as `a^2*t1*t3`.
pub fn label_torus_degree(label: &str) -> usize {
    label
        .split('*')
        .filter(|f| {
            let name = f.split('^').next().unwrap_or("");
            let name = name.rsplit('.').next().unwrap_or(name);
            name.len() > 1 && name.starts_with('t') && name[1..].chars().all(|c| c.is_ascii_digit())
        })
        .count()
}

/// Components whose label carries no torus generator.
pub fn label_core_part(alg: &GradedAlgebra, x: &[Q]) -> Dense {
    x.iter()
        .enumerate()
        .map(|(i, c)| if label_torus_degree(alg.label(i)) == 0 { c.clone() } else { Q::zero() })
        .collect()
}

/// Rank over ℚ by plain elimination.
pub fn rank(rows: &[Dense]) -> usize {
    let mut m: Vec<Dense> = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for k in c..cols {
                    let d = &m[r][k] * &f;
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Re-evaluates an obstructed certificate from its generator list using only
/// structure constants, and checks value ≠ 0, restriction = 0 by labels.
pub fn reevaluate(cert: &ObstructionCertificate) -> Result<(), String> {
    if cert.verdict != Verdict::Obstructed {
        return Ok(());
    }
    let alg = cert.base.algebra().clone();
    let witness = cert.witness.as_ref().ok_or("no witness")?;
    let gens: BTreeMap<Symbol, Dense> = cert.generators.iter().map(|(s, x)| (*s, dense(x))).collect();
    let mut value = vec![Q::zero(); alg.dim()];
    for (m, c) in witness.terms() {
        let mut term = unit(&alg);
        for (s, e) in m.factors() {
            let g = gens.get(&s).ok_or_else(|| format!("{s} not reported"))?;
            for _ in 0..e {
                term = mul(&alg, &term, g);
            }
        }
        value = add(&value, &scale(&term, c));
    }
    let reported = dense(cert.value.as_ref().ok_or("no value")?);
    if value != reported {
        return Err(format!("witness {witness} re-evaluates differently from the reported value"));
    }
    if is_zero(&value) {
        return Err(format!("witness {witness} has zero value"));
    }
    if !is_zero(&label_core_part(&alg, &value)) {
        return Err(format!("witness {witness} does not vanish on the core"));
    }
    let restriction = dense(cert.restriction.as_ref().ok_or("no restriction")?);
    if !is_zero(&restriction) {
        return Err("reported restriction is nonzero".into());
    }
    Ok(())
}

/// Tallies re-evaluations of every obstructed certificate it sees.
#[derive(Default)]
pub struct Audit {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Audit {
    pub fn see(&mut self, cert: &ObstructionCertificate) {
        if cert.verdict == Verdict::Obstructed {
            self.checked += 1;
            if let Err(e) = reevaluate(cert) {
                self.failures.push(format!("{}: {e}", cert.base));
            }
        }
    }
}

/// Independent total Pontrjagin class of a product of spheres, tori and
/// complex projective spaces, from the factor list: only `CP^n` factors
/// contribute, with `(1 + a²)^{n+1}`.
pub fn tangent_total_pontrjagin(space: &Space, cp_labels: &[(&str, usize)]) -> Dense {
    let alg = space.algebra();
    let mut total = unit(alg);
    for (label, n) in cp_labels {
        let a = dense(&space.element(label).expect("cp generator"));
        let a2 = mul(alg, &a, &a);
        let f = add(&unit(alg), &a2);
        for _ in 0..=*n {
            total = mul(alg, &total, &f);
        }
    }
    total
}

pub fn homogeneous(alg: &GradedAlgebra, x: &[Q], d: usize) -> Dense {
    x.iter().enumerate().map(|(i, c)| if alg.degree(i) == d { c.clone() } else { Q::zero() }).collect()
}

/// A random class of degree `d` with small integer coefficients (possibly zero).
pub fn random_class<R: Rng>(rng: &mut R, space: &Space, d: usize, spread: i64) -> Element {
    let alg: &Arc<GradedAlgebra> = space.algebra();
    let terms: Vec<(usize, Q)> =
        alg.indices_in_degree(d).into_iter().map(|i| (i, Q::from_integer(rng.gen_range(-spread..=spread).into()))).collect();
    Element::from_terms(alg, terms)
}

/// Small named building blocks for random bases.
pub fn small_space<R: Rng>(rng: &mut R) -> Space {
    match rng.gen_range(0..6) {
        0 => Space::point(),
        1 => Space::sphere(2).unwrap(),
        2 => Space::sphere(4).unwrap(),
        3 => Space::complex_projective(1).unwrap(),
        4 => Space::complex_projective(2).unwrap(),
        _ => Space::complex_projective(3).unwrap(),
    }
}

pub fn with_torus(c: &Space, k: usize) -> Space {
    kunneth_product(c, &Space::torus(k).unwrap())
}

/// `χ` from basis degrees.
pub fn euler_characteristic(alg: &GradedAlgebra) -> i64 {
    (0..alg.dim()).map(|i| if alg.degree(i) % 2 == 0 { 1 } else { -1 }).sum()
}
