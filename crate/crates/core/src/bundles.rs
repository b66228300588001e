//! Vector bundles described by their rational characteristic classes.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Element};
use crate::rational::{q, Q};
use crate::spaces::{kunneth_product, Construction, Space, SpaceError, SpaceMap};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BundleError {
    #[error("bundles live over different base spaces")]
    BaseMismatch,
    #[error("class {class} is not homogeneous of degree {degree}")]
    NotHomogeneous { class: String, degree: usize },
    #[error("odd rank {0} bundle must have zero rational Euler class")]
    OddRankEuler(usize),
    #[error("rank {rank}: p{index} must equal the square of the Euler class")]
    TopPontrjagin { rank: usize, index: usize },
    #[error("nonorientable bundle carries no rational Euler class")]
    EulerOnNonorientable,
    #[error("rank {rank} bundle has no p{index}")]
    PontrjaginOutOfRange { rank: usize, index: usize },
    #[error("rank 0 bundle must have Euler class 1")]
    RankZeroEuler,
    #[error("space `{0}` was entered by hand and has no tangent data")]
    NoTangentData(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Rank, orientation, Euler class and Pontrjagin classes of a bundle over `base`.
///
/// `euler` is present exactly when the bundle is oriented (zero for odd rank).
/// `pontrjagin[i-1]` is `p_i`, for `i = 1 … ⌊rank/2⌋`.
#[derive(Clone, PartialEq)]
pub struct Bundle {
    base: Space,
    rank: usize,
    oriented: bool,
    euler: Option<Element>,
    pontrjagin: Vec<Element>,
}

impl fmt::Debug for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bundle(rank {} over {}", self.rank, self.base)?;
        if let Some(e) = &self.euler {
            write!(f, ", e = {e}")?;
        }
        for (i, p) in self.pontrjagin.iter().enumerate() {
            write!(f, ", p{} = {p}", i + 1)?;
        }
        write!(f, ")")
    }
}

impl Bundle {
    /// Validates and stores the classes. `euler = None` on an oriented bundle
    /// means zero (or `1` in rank 0); missing trailing `p_i` are zero.
    pub fn new(
        base: &Space,
        rank: usize,
        oriented: bool,
        euler: Option<Element>,
        mut pontrjagin: Vec<Element>,
    ) -> Result<Bundle, BundleError> {
        let half = rank / 2;
        for (i, p) in pontrjagin.iter().enumerate() {
            if !p.same_parent(&base.unit()) {
                return Err(BundleError::BaseMismatch);
            }
            if i >= half && !p.is_zero() {
                return Err(BundleError::PontrjaginOutOfRange { rank, index: i + 1 });
            }
            if !p.is_homogeneous_of(4 * (i + 1)) {
                return Err(BundleError::NotHomogeneous { class: format!("p{}", i + 1), degree: 4 * (i + 1) });
            }
        }
        pontrjagin.truncate(half);
        pontrjagin.resize(half, base.zero());
        let euler = match (oriented, euler) {
            (false, Some(e)) if !e.is_zero() => return Err(BundleError::EulerOnNonorientable),
            (false, _) => None,
            (true, None) => Some(if rank == 0 { base.unit() } else { base.zero() }),
            (true, Some(e)) => {
                if !e.same_parent(&base.unit()) {
                    return Err(BundleError::BaseMismatch);
                }
                if rank % 2 == 1 && !e.is_zero() {
                    return Err(BundleError::OddRankEuler(rank));
                }
                if rank == 0 && e != base.unit() {
                    return Err(BundleError::RankZeroEuler);
                }
                if !e.is_homogeneous_of(rank) {
                    return Err(BundleError::NotHomogeneous { class: "e".into(), degree: rank });
                }
                Some(e)
            }
        };
        if let Some(e) = &euler {
            if rank >= 2 && rank % 2 == 0 && pontrjagin[half - 1] != e * e {
                return Err(BundleError::TopPontrjagin { rank, index: half });
            }
        }
        Ok(Bundle { base: base.clone(), rank, oriented, euler, pontrjagin })
    }

    /// Oriented bundle with the given Euler class and `p_1 … p_{⌊n/2⌋-1}`;
    /// for even rank the top class `p_{n/2}` is set to `e²`.
    pub fn oriented_with_euler(
        base: &Space,
        rank: usize,
        euler: Element,
        mut lower_pontrjagin: Vec<Element>,
    ) -> Result<Bundle, BundleError> {
        if rank >= 2 && rank % 2 == 0 {
            lower_pontrjagin.resize(rank / 2 - 1, base.zero());
            lower_pontrjagin.push(&euler * &euler);
        }
        Bundle::new(base, rank, true, Some(euler), lower_pontrjagin)
    }

    /// The trivial oriented bundle of rank `r`.
    pub fn trivial(base: &Space, r: usize) -> Bundle {
        Bundle::new(base, r, true, None, Vec::new()).expect("trivial bundle is valid")
    }

    pub fn base(&self) -> &Space {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    pub fn euler(&self) -> Option<&Element> {
        self.euler.as_ref()
    }

    /// `p_i`, with `p_0 = 1` and zero beyond `⌊rank/2⌋`.
    pub fn pontrjagin(&self, i: usize) -> Element {
        match i {
            0 => self.base.unit(),
            _ => self.pontrjagin.get(i - 1).cloned().unwrap_or_else(|| self.base.zero()),
        }
    }

    pub fn pontrjagin_classes(&self) -> &[Element] {
        &self.pontrjagin
    }

    /// Total Pontrjagin class `1 + p_1 + p_2 + …`.
    pub fn total_pontrjagin(&self) -> Element {
        self.pontrjagin.iter().fold(self.base.unit(), |acc, p| &acc + p)
    }

    /// True when every rational class agrees with the trivial bundle's.
    pub fn is_rationally_trivial(&self) -> bool {
        self.pontrjagin.iter().all(Element::is_zero)
            && self.euler.as_ref().is_none_or(|e| self.rank == 0 || e.is_zero())
    }

    fn from_total(
        base: &Space,
        rank: usize,
        oriented: bool,
        euler: Option<Element>,
        total: &Element,
    ) -> Result<Bundle, BundleError> {
        let p = (1..=rank / 2).map(|i| total.homogeneous_part(4 * i)).collect();
        Bundle::new(base, rank, oriented, euler, p)
    }
}

/// `ξ ⊕ η`: ranks add, total Pontrjagin classes multiply, Euler classes multiply.
pub fn whitney_sum(xi: &Bundle, eta: &Bundle) -> Result<Bundle, BundleError> {
    if !xi.base.same_as(&eta.base) {
        return Err(BundleError::BaseMismatch);
    }
    let total = &xi.total_pontrjagin() * &eta.total_pontrjagin();
    let oriented = xi.oriented && eta.oriented;
    let euler = match (&xi.euler, &eta.euler) {
        (Some(a), Some(b)) if oriented => Some(a * b),
        _ => None,
    };
    Bundle::from_total(&xi.base, xi.rank + eta.rank, oriented, euler, &total)
}

/// `ξ × η` over `A × B`, building the product space.
pub fn external_product(xi: &Bundle, eta: &Bundle) -> Result<Bundle, BundleError> {
    let product = kunneth_product(&xi.base, &eta.base);
    external_product_over(&product, xi, eta)
}

/// `ξ × η` over an existing product space whose factors are the two bases.
pub fn external_product_over(product: &Space, xi: &Bundle, eta: &Bundle) -> Result<Bundle, BundleError> {
    let (a, b) = product.factors().ok_or(SpaceError::NotAProduct)?;
    if !a.same_as(&xi.base) || !b.same_as(&eta.base) {
        return Err(BundleError::BaseMismatch);
    }
    let total = product.cross(&xi.total_pontrjagin(), &eta.total_pontrjagin())?;
    let oriented = xi.oriented && eta.oriented;
    let euler = match (&xi.euler, &eta.euler) {
        (Some(x), Some(y)) if oriented => Some(product.cross(x, y)?),
        _ => None,
    };
    Bundle::from_total(product, xi.rank + eta.rank, oriented, euler, &total)
}

/// `f^#ξ` for `ξ` over the target of `f`.
pub fn pullback(f: &SpaceMap, xi: &Bundle) -> Result<Bundle, BundleError> {
    if !f.target.same_as(&xi.base) {
        return Err(BundleError::BaseMismatch);
    }
    let euler = xi.euler.as_ref().map(|e| f.pull(e)).transpose()?;
    let p = xi.pontrjagin.iter().map(|p| f.pull(p)).collect::<Result<Vec<_>, _>>()?;
    Bundle::new(&f.source, xi.rank, xi.oriented, euler, p)
}

/// Tangent bundle of a model space.
pub fn tangent_bundle(space: &Space) -> Result<Bundle, BundleError> {
    match space.construction() {
        Construction::Point => Ok(Bundle::trivial(space, 0)),
        Construction::Sphere(n) => {
            let s = space.element("s")?;
            let euler = if n % 2 == 0 { s.scale(&q(2)) } else { space.zero() };
            Bundle::new(space, *n, true, Some(euler), Vec::new())
        }
        Construction::Torus(k) => Ok(Bundle::trivial(space, *k)),
        Construction::ComplexProjective(n) => {
            // p = (1 + a²)^{n+1}, e = (n+1)·a^n
            let a = space.element("a")?;
            let a2 = &a * &a;
            let total = (&space.unit() + &a2).pow(*n as u32 + 1);
            let euler = a.pow(*n as u32).scale(&q(*n as i64 + 1));
            Bundle::from_total(space, 2 * n, true, Some(euler), &total)
        }
        Construction::Product(a, b) => {
            let ta = tangent_bundle(a)?;
            let tb = tangent_bundle(b)?;
            external_product_over(space, &ta, &tb)
        }
        Construction::Manual(data) => {
            let t = data.tangent.as_ref().ok_or_else(|| BundleError::NoTangentData(space.name().to_string()))?;
            Bundle::new(space, t.rank, t.oriented, t.euler.clone(), t.pontrjagin.clone())
        }
    }
}

/// `ξ ⊕ ε^r`.
pub fn stabilize(xi: &Bundle, r: usize) -> Bundle {
    whitney_sum(xi, &Bundle::trivial(&xi.base, r)).expect("same base")
}

/// Power sums `s_1 … s_r` of the Pontrjagin roots; `s_i` vanishes exactly
/// when the degree-`4i` Pontrjagin-character component does, since the two
/// differ by a fixed nonzero scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSums {
    pub s: Vec<Element>,
}

/// Newton recursion `s_k = p_1 s_{k-1} − p_2 s_{k-2} + … + (−1)^{k-1} k p_k`.
pub fn power_sums(xi: &Bundle, r: usize) -> PowerSums {
    let mut s: Vec<Element> = Vec::with_capacity(r);
    for k in 1..=r {
        let mut acc = xi.pontrjagin(k).scale(&q(k as i64));
        if k % 2 == 0 {
            acc = -&acc;
        }
        for i in 1..k {
            let term = &xi.pontrjagin(i) * &s[k - i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        s.push(acc);
    }
    PowerSums { s }
}

impl PowerSums {
    /// `s_i` (1-based).
    pub fn get(&self, i: usize) -> Option<&Element> {
        i.checked_sub(1).and_then(|k| self.s.get(k))
    }

    /// Rechecks the Newton identity `k p_k = Σ_{i=1}^{k} (−1)^{i-1} p_{k-i} s_i`.
    pub fn satisfies_newton(&self, xi: &Bundle) -> bool {
        (1..=self.s.len()).all(|k| {
            let mut rhs = xi.base.zero();
            for i in 1..=k {
                let term = &xi.pontrjagin(k - i) * &self.s[i - 1];
                rhs = if i % 2 == 1 { &rhs + &term } else { &rhs - &term };
            }
            rhs == xi.pontrjagin(k).scale(&Q::from(num_bigint::BigInt::from(k)))
        })
    }
}
