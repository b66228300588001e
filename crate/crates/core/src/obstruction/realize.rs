use std::fmt;

use super::{ObstructionError, Verdict};
use crate::algebra::Element;
use crate::bundles::{pullback, Bundle, BundleError};
use crate::spaces::{projection_to_core, torus_cover_map, Space};

/// Target classes on `C × T`; `pontrjagin[i-1]` is `p′_i`, missing entries are zero.
#[derive(Debug, Clone, Default)]
pub struct RealizeTargets {
    pub euler: Option<Element>,
    pub pontrjagin: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroCover,
    BaseMismatch,
    WrongAlgebra(String),
    NotHomogeneous { class: String, degree: usize },
    EulerOnNonorientable,
    OddRankEuler(usize),
    PontrjaginOutOfRange(usize),
    TopPontrjagin(usize),
    RestrictionMismatch(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroCover => write!(f, "cover multiplier must be positive"),
            Violation::BaseMismatch => write!(f, "bundle base is not the core of the target space"),
            Violation::WrongAlgebra(c) => write!(f, "{c} does not live on the target space"),
            Violation::NotHomogeneous { class, degree } => write!(f, "{class} is not homogeneous of degree {degree}"),
            Violation::EulerOnNonorientable => write!(f, "Euler class given for a nonorientable bundle"),
            Violation::OddRankEuler(n) => write!(f, "rank {n} is odd but e' is nonzero"),
            Violation::PontrjaginOutOfRange(i) => write!(f, "p'{i} is nonzero beyond half the rank"),
            Violation::TopPontrjagin(i) => write!(f, "p'{i} differs from e' squared"),
            Violation::RestrictionMismatch(c) => write!(f, "{c} does not restrict to the class of the core bundle"),
        }
    }
}

/// Classes of the bundle realizing `targets` after the `m`-fold cover along
/// the torus: each torus-degree-`j` component is multiplied by `m^j`.
pub fn realize(xi_c: &Bundle, base: &Space, targets: &RealizeTargets, m: u64) -> Result<Bundle, ObstructionError> {
    let n = xi_c.rank();
    let mut v = Vec::new();
    if m == 0 {
        v.push(Violation::ZeroCover);
    }
    let proj = if base.has_torus_factor() && base.core().same_as(xi_c.base()) {
        Some(projection_to_core(base)?)
    } else {
        v.push(Violation::BaseMismatch);
        None
    };
    let on_base = |x: &Element| x.same_parent(&base.unit());

    let euler = targets.euler.clone();
    if let Some(e) = &euler {
        if !on_base(e) {
            v.push(Violation::WrongAlgebra("e'".into()));
        } else {
            if !e.is_homogeneous_of(n) {
                v.push(Violation::NotHomogeneous { class: "e'".into(), degree: n });
            }
            if !xi_c.is_oriented() && !e.is_zero() {
                v.push(Violation::EulerOnNonorientable);
            }
            if n % 2 == 1 && !e.is_zero() {
                v.push(Violation::OddRankEuler(n));
            }
        }
    }
    let mut p = targets.pontrjagin.clone();
    for (k, x) in p.iter().enumerate() {
        let i = k + 1;
        if !on_base(x) {
            v.push(Violation::WrongAlgebra(format!("p'{i}")));
        } else if !x.is_homogeneous_of(4 * i) {
            v.push(Violation::NotHomogeneous { class: format!("p'{i}"), degree: 4 * i });
        } else if i > n / 2 && !x.is_zero() {
            v.push(Violation::PontrjaginOutOfRange(i));
        }
    }
    if !v.is_empty() {
        return Err(ObstructionError::Realize(v));
    }
    p.resize(n / 2, base.zero());
    let euler = if xi_c.is_oriented() { Some(euler.unwrap_or_else(|| if n == 0 { base.unit() } else { base.zero() })) } else { None };
    if let (Some(e), true) = (&euler, n >= 2 && n % 2 == 0) {
        if p[n / 2 - 1] != e * e {
            v.push(Violation::TopPontrjagin(n / 2));
        }
    }
    if let Some(proj) = &proj {
        if let (Some(e), Some(ec)) = (&euler, xi_c.euler()) {
            if base.core_part(e) != proj.pull(ec)? {
                v.push(Violation::RestrictionMismatch("e'".into()));
            }
        }
        for (k, x) in p.iter().enumerate() {
            if base.core_part(x) != proj.pull(&xi_c.pontrjagin(k + 1))? {
                v.push(Violation::RestrictionMismatch(format!("p'{}", k + 1)));
            }
        }
    }
    if !v.is_empty() {
        return Err(ObstructionError::Realize(v));
    }
    let target = Bundle::new(base, n, xi_c.is_oriented(), euler, p)?;
    Ok(pullback(&torus_cover_map(base, m)?, &target)?)
}

/// Comparison of two bundles on the same `C × T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub same: bool,
    pub rank: bool,
    pub orientation: bool,
    pub euler: bool,
    pub pontrjagin: bool,
    pub restriction: bool,
    pub caveat: &'static str,
}

/// Whether `ξ` and `η` become isomorphic after a finite cover, judged by
/// rank, orientation and rational classes.
pub fn same_in_finite_cover(xi: &Bundle, eta: &Bundle) -> Result<CoverReport, ObstructionError> {
    let b = xi.base();
    if !b.same_as(eta.base()) {
        return Err(BundleError::BaseMismatch.into());
    }
    let rank = xi.rank() == eta.rank();
    let orientation = xi.is_oriented() == eta.is_oriented();
    let euler = xi.euler() == eta.euler();
    let n = xi.rank().max(eta.rank()) / 2;
    let pontrjagin = (1..=n).all(|i| xi.pontrjagin(i) == eta.pontrjagin(i));
    let core = |x: Option<&Element>| x.map(|e| b.core_part(e));
    let restriction = core(xi.euler()) == core(eta.euler())
        && (1..=n).all(|i| b.core_part(&xi.pontrjagin(i)) == b.core_part(&eta.pontrjagin(i)));
    Ok(CoverReport {
        same: rank && orientation && euler && pontrjagin && restriction,
        rank,
        orientation,
        euler,
        pontrjagin,
        restriction,
        caveat: "agreement of rational classes on the core is necessary; isomorphism over the core is assumed by the caller",
    })
}

/// Total Betti number of `P` against `dim H*(C) · 2^k`: strictly smaller means obstructed.
pub fn betti_obstruction(total_betti_p: u64, total_betti_c: u64, k: u32) -> Result<Verdict, ObstructionError> {
    if total_betti_p == 0 || total_betti_c == 0 {
        return Err(ObstructionError::Hypothesis("Betti totals must be positive".into()));
    }
    let bound = total_betti_c
        .checked_mul(1u64.checked_shl(k).unwrap_or(u64::MAX))
        .unwrap_or(u64::MAX);
    Ok(if total_betti_p < bound { Verdict::Obstructed } else { Verdict::NoObstructionFound })
}
