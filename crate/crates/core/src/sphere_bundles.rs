//! Sphere bundles `S(ξ)`: rational Betti numbers from the Gysin sequence and
//! the two obstructions to nonnegative Ricci curvature on their total spaces.

use thiserror::Error;

use crate::algebra::Element;
use crate::bundles::{external_product_over, Bundle, BundleError};
use crate::linalg;
use crate::obstruction::{
    eval_poly, find_obstruction_with, ObstructionCertificate, ObstructionError, SearchOptions, Verdict,
};
use crate::poly::{ClassPolynomial, Symbol};
use crate::spaces::{kunneth_product, Space};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SphereError {
    #[error("rational Gysin sequence needs an oriented bundle")]
    NotOriented,
    #[error("rank {0} has no sphere fibre of positive dimension")]
    RankTooSmall(usize),
    #[error("base `{0}` is not a torus")]
    NotFlat(String),
    #[error("Euler class is nonzero; pullback to the sphere bundle is not injective")]
    EulerNonzero,
    #[error("polynomial mentions E; only Pontrjagin classes are allowed")]
    UsesEuler,
    #[error("no simply connected cover model for `{0}`")]
    NoCoverModel(String),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

/// Graded rational dimensions of `S(ξ)`, fibre `S^k` with `k = rank − 1`.
#[derive(Debug, Clone)]
pub struct GysinProfile {
    pub base: Space,
    pub fiber_dim: usize,
    pub euler: Element,
    pub betti: Vec<usize>,
    /// `cup_ranks[d]` is the rank of `∪e: H^d(B) → H^{d+k+1}(B)`.
    pub cup_ranks: Vec<usize>,
}

impl GysinProfile {
    pub fn total(&self) -> usize {
        self.betti.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(i, b)| if i % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum()
    }
}

fn cup_rank(e: &Element, from: usize) -> usize {
    let alg = e.algebra();
    let rows: Vec<Vec<_>> =
        alg.indices_in_degree(from).into_iter().map(|i| (&Element::basis(alg, i) * e).to_dense()).collect();
    linalg::rank(&rows)
}

/// `b_i(S) = b_i(B) − rk(∪e)_{i−k−1} + b_{i−k}(B) − rk(∪e)_{i−k}`.
pub fn gysin_betti(xi: &Bundle) -> Result<GysinProfile, SphereError> {
    if xi.rank() < 2 {
        return Err(SphereError::RankTooSmall(xi.rank()));
    }
    let euler = xi.euler().ok_or(SphereError::NotOriented)?.clone();
    let base = xi.base();
    let n = base.dimension();
    let k = xi.rank() - 1;
    let bb = base.algebra().betti();
    let b = |d: isize| if d < 0 { 0 } else { bb.get(d as usize).copied().unwrap_or(0) };
    let cup_ranks: Vec<usize> = (0..=n).map(|d| cup_rank(&euler, d)).collect();
    let r = |d: isize| if d < 0 { 0 } else { cup_ranks.get(d as usize).copied().unwrap_or(0) };
    let k = k as isize;
    let betti = (0..=(n as isize + k))
        .map(|i| (b(i) + b(i - k)) - r(i - k - 1) - r(i - k))
        .collect();
    Ok(GysinProfile { base: base.clone(), fiber_dim: k as usize, euler, betti, cup_ranks })
}

/// Nonzero rational Euler class over a flat (torus) base excludes nonnegative
/// Ricci curvature on `S(ξ)` and on anything mapping to it by a
/// `π_1`-isomorphism.
pub fn sphere_euler_check(xi: &Bundle) -> Result<ObstructionCertificate, SphereError> {
    let base = xi.base();
    if !base.is_torus() {
        return Err(SphereError::NotFlat(base.name().to_string()));
    }
    if xi.rank() < 2 {
        return Err(SphereError::RankTooSmall(xi.rank()));
    }
    match xi.euler() {
        Some(e) if !e.is_zero() => {
            let mut cert = ObstructionCertificate::obstructed(
                base,
                ClassPolynomial::symbol(Symbol::Euler),
                e.clone(),
                base.core_part(e),
                vec![(Symbol::Euler, e.clone())],
            );
            cert.notes.push(
                "sphere bundle over a flat base with nonzero Euler class: no nonnegative Ricci curvature on S(xi) \
                 or on any closed manifold mapping to it by a pi_1-isomorphism"
                    .into(),
            );
            Ok(cert)
        }
        _ => Ok(ObstructionCertificate::with_verdict(
            base,
            Verdict::NoObstructionFound,
            "Euler class vanishes rationally; the Euler-class test does not apply",
        )),
    }
}

fn require_cover_model(base: &Space) -> Result<(), SphereError> {
    if !base.has_torus_factor() || !base.core().is_simply_connected() {
        return Err(SphereError::NoCoverModel(base.name().to_string()));
    }
    Ok(())
}

/// With `e(ξ) = 0`, a Pontrjagin polynomial `Q` nonzero on `TB ⊕ ξ` but zero
/// on the universal cover excludes nonnegative Ricci curvature on `S(ξ)`.
/// Without `q`, the restriction search runs with `E` excluded.
pub fn sphere_pontrjagin_check(
    xi: &Bundle,
    q: Option<&ClassPolynomial>,
    opts: &SearchOptions,
) -> Result<ObstructionCertificate, SphereError> {
    if xi.euler().is_some_and(|e| !e.is_zero()) {
        return Err(SphereError::EulerNonzero);
    }
    if !xi.is_oriented() {
        return Err(SphereError::NotOriented);
    }
    let base = xi.base();
    require_cover_model(base)?;
    let note = "sphere bundle with zero Euler class: pullback to S(xi) is injective, so the witness survives there \
                while vanishing on the universal cover";
    let mut cert = match q {
        Some(q) => {
            if q.uses_euler() {
                return Err(SphereError::UsesEuler);
            }
            let total = crate::bundles::whitney_sum(&crate::bundles::tangent_bundle(base)?, xi)?;
            let p: Vec<Element> = (1..=base.dimension() / 4).map(|i| total.pontrjagin(i)).collect();
            let value = eval_poly(q, None, &p, base)?;
            let restriction = base.core_part(&value);
            if value.is_zero() || !restriction.is_zero() {
                return Ok(ObstructionCertificate::with_verdict(
                    base,
                    Verdict::NoObstructionFound,
                    format!("Q = {q} is zero on the base or nonzero on the cover"),
                ));
            }
            let generators = q
                .symbols()
                .into_iter()
                .filter_map(|s| match s {
                    Symbol::Pontrjagin(i) => Some((s, total.pontrjagin(i))),
                    Symbol::Euler => None,
                })
                .collect();
            ObstructionCertificate::obstructed(base, q.clone(), value, restriction, generators)
        }
        None => find_obstruction_with(xi, &SearchOptions { include_euler: false, ..opts.clone() })?,
    };
    if cert.is_obstructed() {
        cert.notes.push(note.into());
    }
    Ok(cert)
}

/// `C × S(ξ)` with `C` simply connected and `ξ` over a torus: obstructed
/// unless `ξ` is rationally trivial, in which case it becomes trivial in a
/// finite cover.
pub fn sphere_product_check(c: &Space, xi: &Bundle) -> Result<ObstructionCertificate, SphereError> {
    let t = xi.base();
    if !t.is_torus() {
        return Err(SphereError::NotFlat(t.name().to_string()));
    }
    if c.has_torus_factor() || !c.is_simply_connected() {
        return Err(SphereError::NoCoverModel(c.name().to_string()));
    }
    if xi.euler().is_some_and(|e| !e.is_zero()) {
        return sphere_euler_check(xi);
    }
    let b = kunneth_product(c, t);
    if xi.is_oriented() && !xi.is_rationally_trivial() {
        let zeta = external_product_over(&b, &Bundle::trivial(c, 0), xi)?;
        return sphere_pontrjagin_check(&zeta, None, &SearchOptions::default());
    }
    if !xi.is_rationally_trivial() {
        // p(ξ) ≠ 1 on a nonorientable ξ: orientations of S(ξ) are not tracked here
        return Err(SphereError::NotOriented);
    }
    Ok(ObstructionCertificate::with_verdict(
        &b,
        Verdict::NoObstructionFound,
        "all rational classes vanish; the bundle becomes trivial in a finite cover",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn s4_rank4_is_rational_seven_sphere() {
        let s4 = Space::sphere(4).unwrap();
        for d in [-3i64, 1, 2, 5] {
            let xi = Bundle::oriented_with_euler(&s4, 4, s4.element("s").unwrap().scale(&q(d)), vec![]).unwrap();
            assert_eq!(gysin_betti(&xi).unwrap().betti, vec![1, 0, 0, 0, 0, 0, 0, 1]);
        }
        let xi = Bundle::trivial(&s4, 4);
        assert_eq!(gysin_betti(&xi).unwrap().betti, vec![1, 0, 0, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn t2_circle_bundle() {
        let t2 = Space::torus(2).unwrap();
        let xi = Bundle::oriented_with_euler(&t2, 2, t2.fundamental_class().unwrap(), vec![]).unwrap();
        let g = gysin_betti(&xi).unwrap();
        assert_eq!(g.betti, vec![1, 2, 2, 1]);
        assert_eq!(g.total(), 6);
        assert_eq!(g.euler_characteristic(), 0);
    }

    #[test]
    fn euler_check() {
        let t2 = Space::torus(2).unwrap();
        let xi = Bundle::oriented_with_euler(&t2, 2, t2.fundamental_class().unwrap(), vec![]).unwrap();
        let c = sphere_euler_check(&xi).unwrap();
        assert!(c.is_obstructed());
        c.verify().unwrap();
        assert_eq!(sphere_euler_check(&Bundle::trivial(&t2, 2)).unwrap().verdict, Verdict::NoObstructionFound);
        assert_eq!(sphere_euler_check(&Bundle::trivial(&t2, 3)).unwrap().verdict, Verdict::NoObstructionFound);
    }

    #[test]
    fn pontrjagin_check() {
        let t4 = Space::torus(4).unwrap();
        let xi = Bundle::new(&t4, 3, true, None, vec![t4.fundamental_class().unwrap()]).unwrap();
        let p1 = ClassPolynomial::parse("P1").unwrap();
        let opts = SearchOptions::default();
        let c = sphere_pontrjagin_check(&xi, Some(&p1), &opts).unwrap();
        assert!(c.is_obstructed());
        c.verify().unwrap();
        assert!(sphere_pontrjagin_check(&xi, None, &opts).unwrap().is_obstructed());
        let triv = Bundle::trivial(&t4, 3);
        assert_eq!(sphere_pontrjagin_check(&triv, None, &opts).unwrap().verdict, Verdict::NoObstructionFound);
        assert_eq!(sphere_pontrjagin_check(&triv, Some(&p1), &opts).unwrap().verdict, Verdict::NoObstructionFound);

        let e = Bundle::oriented_with_euler(&t4, 4, t4.fundamental_class().unwrap(), vec![]).unwrap();
        assert_eq!(sphere_pontrjagin_check(&e, Some(&p1), &opts).unwrap_err(), SphereError::EulerNonzero);
        let pe = ClassPolynomial::parse("E").unwrap();
        assert_eq!(sphere_pontrjagin_check(&xi, Some(&pe), &opts).unwrap_err(), SphereError::UsesEuler);
    }

    #[test]
    fn product_corollary() {
        let cp2 = Space::complex_projective(2).unwrap();
        let t4 = Space::torus(4).unwrap();
        let xi = Bundle::new(&t4, 3, true, None, vec![t4.fundamental_class().unwrap()]).unwrap();
        let c = sphere_product_check(&cp2, &xi).unwrap();
        assert!(c.is_obstructed());
        c.verify().unwrap();
        assert_eq!(
            sphere_product_check(&cp2, &Bundle::trivial(&t4, 3)).unwrap().verdict,
            Verdict::NoObstructionFound
        );
        let t2 = Space::torus(2).unwrap();
        let e = Bundle::oriented_with_euler(&t2, 2, t2.fundamental_class().unwrap(), vec![]).unwrap();
        assert!(sphere_product_check(&cp2, &e).unwrap().is_obstructed());
    }
}
