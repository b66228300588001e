use num_traits::One;

use super::search::{eval_poly, find_obstruction};
use super::{ObstructionCertificate, ObstructionError, Verdict};
use crate::algebra::Element;
use crate::bundles::{external_product_over, stabilize, tangent_bundle, whitney_sum, Bundle};
use crate::poly::{ClassPolynomial, Monomial, Symbol};
use crate::rational::q;
use crate::spaces::{kunneth_product, Space};

fn hypothesis<T>(msg: impl Into<String>) -> Result<T, ObstructionError> {
    Err(ObstructionError::Hypothesis(msg.into()))
}

fn require_split(c: &Space, t: &Space) -> Result<Space, ObstructionError> {
    if c.has_torus_factor() {
        return hypothesis(format!("core `{c}` must not contain a torus factor"));
    }
    if !t.is_torus() {
        return hypothesis(format!("`{t}` is not a torus"));
    }
    Ok(kunneth_product(c, t))
}

fn single_symbol(s: Symbol) -> ClassPolynomial {
    ClassPolynomial::from_terms([(Monomial::symbol(s), One::one())])
}

/// `η` over `C`, `ξ` over a torus: if `η × ξ` is nonnegatively curved then
/// `ξ` is stably trivial after a finite cover, and trivial when `rank η = 0`
/// or `e(η) ≠ 0`. Any failure of these conclusions is turned into a witness.
pub fn check_flat_product(eta: &Bundle, xi: &Bundle) -> Result<ObstructionCertificate, ObstructionError> {
    let b = require_split(eta.base(), xi.base())?;
    let prod = external_product_over(&b, eta, xi)?;

    if let Some(k) = (1..=xi.rank() / 2).find(|&k| !xi.pontrjagin(k).is_zero()) {
        let eta_prime = whitney_sum(eta, &tangent_bundle(eta.base())?)?;
        let i = (0..=eta_prime.rank() / 2).rev().find(|&i| !eta_prime.pontrjagin(i).is_zero()).unwrap_or(0);
        let total = whitney_sum(&tangent_bundle(&b)?, &prod)?;
        let value = total.pontrjagin(i + k);
        let restriction = b.core_part(&value);
        let s = Symbol::Pontrjagin(i + k);
        let mut cert = ObstructionCertificate::obstructed(&b, single_symbol(s), value.clone(), restriction, vec![(s, value)]);
        cert.notes.push(format!(
            "flat product: p{k} of the torus factor is nonzero; p{} of the core side times it is the mixed component",
            i
        ));
        return Ok(cert);
    }

    let euler_rule = eta.rank() == 0 || eta.euler().is_some_and(|e| !e.is_zero());
    let xi_euler = xi.euler().filter(|e| xi.rank() > 0 && !e.is_zero());
    if let (true, Some(_), Some(value)) = (euler_rule, xi_euler, prod.euler()) {
        let restriction = b.core_part(value);
        let mut cert = ObstructionCertificate::obstructed(
            &b,
            single_symbol(Symbol::Euler),
            value.clone(),
            restriction,
            vec![(Symbol::Euler, value.clone())],
        );
        cert.notes.push("flat product: e of the product is e(eta) x e(xi), nonzero, but dies on the core".into());
        return Ok(cert);
    }

    Ok(ObstructionCertificate::with_verdict(
        &b,
        Verdict::NoObstructionFound,
        "flat product: torus factor has vanishing rational classes, so it becomes stably trivial in a finite cover",
    ))
}

/// Outcome of the `p_i + Q′` family construction.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub relative_group_nonzero: bool,
    /// Degree-`4i` part of `p_i(TC) + Q′(TC)`.
    pub projection: Element,
    pub projection_vanishes: bool,
    /// Rank `2i+1` member with `p_i` a relative class and `p_j = 0` for `0 < j < i`.
    pub bundle: Option<Bundle>,
    pub certificate: Option<ObstructionCertificate>,
    /// Whether the unrestricted search also obstructs `bundle`.
    pub search_agrees: Option<bool>,
}

impl FamilyReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.relative_group_nonzero && self.projection_vanishes
    }

    /// The member with `p_i` scaled by `j`; distinct `j` give distinct classes.
    pub fn member(&self, j: i64) -> Option<Bundle> {
        let b = self.bundle.as_ref()?;
        let p: Vec<Element> = b.pontrjagin_classes().iter().map(|x| x.scale(&q(j))).collect();
        Bundle::new(b.base(), b.rank(), b.is_oriented(), None, p).ok()
    }
}

/// If `H^{4i}(C×T, C) ≠ 0` and `p_i(TC) + Q′(TC)` has zero `H^{4i}(C)`
/// component, builds a bundle over `C × T` obstructed by `Q = P_i + Q′`.
pub fn check_polynomial_q_family(
    c: &Space,
    t: &Space,
    i: usize,
    qprime: &ClassPolynomial,
) -> Result<FamilyReport, ObstructionError> {
    if i == 0 {
        return hypothesis("i must be positive");
    }
    if qprime.uses_euler() || qprime.max_pontrjagin_index() >= i {
        return hypothesis(format!("Q' = {qprime} may only use P_j with 0 < j < {i}"));
    }
    let b = require_split(c, t)?;
    let tc = tangent_bundle(c)?;
    let tc_p: Vec<Element> = (1..=i).map(|j| tc.pontrjagin(j)).collect();
    let projection = (&tc.pontrjagin(i) + &eval_poly(qprime, None, &tc_p, c)?).homogeneous_part(4 * i);
    let mut report = FamilyReport {
        relative_group_nonzero: b.relative_group_nonzero(4 * i),
        projection_vanishes: projection.is_zero(),
        projection,
        bundle: None,
        certificate: None,
        search_agrees: None,
    };
    if !report.hypotheses_hold() {
        return Ok(report);
    }

    let x = b.first_relative_class(4 * i).expect("relative group is nonzero");
    let mut p = vec![b.zero(); i];
    p[i - 1] = x;
    let xi = Bundle::new(&b, 2 * i + 1, true, None, p)?;
    let total = whitney_sum(&tangent_bundle(&b)?, &xi)?;
    let gens_p: Vec<Element> = (1..=i).map(|j| total.pontrjagin(j)).collect();
    let witness = single_symbol(Symbol::Pontrjagin(i)).add(qprime);
    let value = eval_poly(&witness, None, &gens_p, &b)?;
    let restriction = b.core_part(&value);
    let generators = witness
        .symbols()
        .into_iter()
        .map(|s| match s {
            Symbol::Pontrjagin(j) => (s, gens_p[j - 1].clone()),
            Symbol::Euler => unreachable!("Q' has no E"),
        })
        .collect();
    let mut cert = ObstructionCertificate::obstructed(&b, witness, value, restriction, generators);
    cert.notes.push(format!("polynomial family: p{i}(TC) + Q'(TC) vanishes in degree {}", 4 * i));
    report.search_agrees = Some(find_obstruction(&xi)?.is_obstructed());
    report.bundle = Some(xi);
    report.certificate = Some(cert);
    Ok(report)
}

/// `dim C = 4m+2` with `p_m(TC) ≠ 0` and a torus of dimension at least 2:
/// the rank-2 bundle with `e = y ⊗ 1 + 1 ⊗ t` (plus `extra_rank` trivial
/// summands) is obstructed by `P_{m+1}`.
pub fn check_pdual(
    c: &Space,
    t: &Space,
    y: Option<&Element>,
    extra_rank: usize,
) -> Result<ObstructionCertificate, ObstructionError> {
    let dim = c.dimension();
    if dim % 4 != 2 {
        return hypothesis(format!("dim {c} = {dim} is not of the form 4m+2"));
    }
    let m = (dim - 2) / 4;
    if !t.is_torus() || t.dimension() < 2 {
        return hypothesis(format!("`{t}` must be a torus of dimension at least 2"));
    }
    let b = require_split(c, t)?;
    let pm = tangent_bundle(c)?.pontrjagin(m);
    if pm.is_zero() {
        return hypothesis(format!("p{m}(T{c}) = 0"));
    }
    let y = match y {
        Some(y) => {
            if !y.same_parent(&c.unit()) || !y.is_homogeneous_of(2) || (&pm * y).is_zero() {
                return hypothesis(format!("y = {y} is not a degree-2 class with p{m}(TC)*y != 0"));
            }
            y.clone()
        }
        None => c
            .algebra()
            .indices_in_degree(2)
            .into_iter()
            .map(|i| Element::basis(c.algebra(), i))
            .find(|y| !(&pm * y).is_zero())
            .ok_or_else(|| ObstructionError::Hypothesis(format!("no degree-2 basis class y of {c} has p{m}(TC)*y != 0")))?,
    };
    let tclass = Element::basis(t.algebra(), t.algebra().indices_in_degree(2)[0]);
    let euler = &b.from_left(&y)? + &b.from_right(&tclass)?;
    let xi = stabilize(&Bundle::oriented_with_euler(&b, 2, euler, Vec::new())?, extra_rank);

    let total = whitney_sum(&tangent_bundle(&b)?, &xi)?;
    let s = Symbol::Pontrjagin(m + 1);
    let value = total.pontrjagin(m + 1);
    let component = b.torus_component(&value, 2);
    let expected = b.cross(&(&pm * &y).scale(&q(2)), &tclass)?;
    if component != expected {
        return hypothesis(format!("mixed component {component} differs from 2 p{m}(TC) y x t = {expected}"));
    }
    let restriction = b.core_part(&value);
    let mut cert = ObstructionCertificate::obstructed(&b, single_symbol(s), value.clone(), restriction, vec![(s, value)]);
    cert.notes.push(format!("Poincare-dual construction: y = {y}, mixed component {component}"));
    Ok(cert)
}

/// A rank-`k` bundle over `C × T` restricting to the normal bundle `ν(C)`,
/// with a relative class added to `p_i`, is obstructed by `P_i`.
pub fn check_add_norm_bundle(
    c: &Space,
    t: &Space,
    i: usize,
    k: usize,
) -> Result<ObstructionCertificate, ObstructionError> {
    let b = require_split(c, t)?;
    if k < c.dimension() {
        return hypothesis(format!("rank {k} is below dim {c} = {}", c.dimension()));
    }
    if i == 0 || 2 * i > k {
        return hypothesis(format!("rank {k} has no p{i}"));
    }
    if !b.relative_group_nonzero(4 * i) {
        return hypothesis(format!("H^{}({b}, {c}) = 0", 4 * i));
    }
    let tc = tangent_bundle(c)?;
    let pnu = tc.total_pontrjagin().inverse().expect("total class has unit constant term");
    let x = b.first_relative_class(4 * i).expect("relative group is nonzero");
    let p: Vec<Element> = (1..=k / 2)
        .map(|j| {
            let pulled = b.from_left(&pnu.homogeneous_part(4 * j))?;
            Ok(if j == i { &pulled + &x } else { pulled })
        })
        .collect::<Result<_, ObstructionError>>()?;
    let xi = Bundle::new(&b, k, false, None, p)?;

    let total = whitney_sum(&tangent_bundle(&b)?, &xi)?;
    if b.core_part(&total.total_pontrjagin()) != b.unit() {
        return hypothesis("restriction of TB + xi to the core is not stably trivial");
    }
    let s = Symbol::Pontrjagin(i);
    let value = total.pontrjagin(i);
    if b.relative_part(&value) != b.relative_part(&xi.pontrjagin(i)) {
        return hypothesis("relative part of the witness differs from that of p_i(xi)");
    }
    let restriction = b.core_part(&value);
    let mut cert = ObstructionCertificate::obstructed(&b, single_symbol(s), value.clone(), restriction, vec![(s, value)]);
    cert.notes.push(format!("normal-bundle construction: p(nu({c})) = {pnu}"));
    Ok(cert)
}
