//! Model spaces and the maps between them.
//!
//! A [`Space`] pairs a construction tree with its rational cohomology ring.
//! Spaces of the shape `C × T^k` carry a torus bigrading: the torus degree of
//! each Künneth basis element. Restricting to `C = C × *` kills exactly the
//! classes of positive torus degree.
//!
//! Flat manifolds are modelled by their torus covers; a finite cover induces
//! an injection on rational cohomology, so every check stated over a flat
//! manifold is run over the torus.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraMap, BasisElement, Element, GradedAlgebra, LinearMap};
use crate::rational::{q, q_pow, Q};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaceError {
    #[error("{0} must have positive dimension parameter")]
    ZeroParameter(&'static str),
    #[error("space `{0}` has no torus factor")]
    NoTorusFactor(String),
    #[error("space `{0}` has no designated orientation class")]
    NotOriented(String),
    #[error("sphere dimension {0} must be even and positive")]
    OddSphere(usize),
    #[error("space `{space}` has dimension {dim}, map to S^{sphere} needs equal dimensions")]
    DimensionMismatch { space: String, dim: usize, sphere: usize },
    #[error("cover multiplier must be positive")]
    ZeroCover,
    #[error("maps do not compose: target of the first is not the source of the second")]
    NotComposable,
    #[error("not a product space")]
    NotAProduct,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// User-supplied characteristic-class data for the tangent bundle of a manual space.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentData {
    pub rank: usize,
    pub oriented: bool,
    pub euler: Option<Element>,
    pub pontrjagin: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ManualData {
    pub tangent: Option<TangentData>,
    /// Declared by the user; needed where the universal cover is modelled by the space itself.
    pub simply_connected: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    Point,
    Sphere(usize),
    Torus(usize),
    ComplexProjective(usize),
    Product(Arc<Space>, Arc<Space>),
    Manual(ManualData),
}

/// A space together with its rational cohomology ring.
#[derive(Debug, Clone)]
pub struct Space {
    name: String,
    construction: Construction,
    algebra: Arc<GradedAlgebra>,
    torus_bigrading: Option<Vec<usize>>,
    fundamental: Option<usize>,
    // Product spaces: basis index -> (left index, right index) and back.
    pairs: Option<Arc<(Vec<(usize, usize)>, HashMap<(usize, usize), usize>)>>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Space {
    pub fn point() -> Space {
        let alg = GradedAlgebra::from_canonical_parts(vec![unit_basis()], BTreeMap::new(), 0);
        Space::leaf("pt", Construction::Point, alg, None, Some(0))
    }

    /// `S^n`: basis `{1, s}`, `s² = 0`.
    pub fn sphere(n: usize) -> Result<Space, SpaceError> {
        if n == 0 {
            return Err(SpaceError::ZeroParameter("sphere"));
        }
        let basis = vec![unit_basis(), BasisElement { label: "s".into(), degree: n }];
        let alg = GradedAlgebra::from_canonical_parts(basis, BTreeMap::new(), n);
        Ok(Space::leaf(&format!("S^{n}"), Construction::Sphere(n), alg, None, Some(1)))
    }

    /// `T^k`: exterior algebra on `t1 … tk`; every class has torus degree equal to its degree.
    pub fn torus(k: usize) -> Result<Space, SpaceError> {
        if k == 0 {
            return Err(SpaceError::ZeroParameter("torus"));
        }
        let subsets: Vec<u32> = (0u32..(1u32 << k)).collect();
        let label = |mask: u32| -> String {
            if mask == 0 {
                return "1".into();
            }
            (0..k).filter(|b| mask & (1 << b) != 0).map(|b| format!("t{}", b + 1)).collect::<Vec<_>>().join("*")
        };
        let mut entries: Vec<(u32, BasisElement)> = subsets
            .iter()
            .map(|&m| (m, BasisElement { label: label(m), degree: m.count_ones() as usize }))
            .collect();
        entries.sort_by(|a, b| (a.1.degree, &a.1.label).cmp(&(b.1.degree, &b.1.label)));
        let index: HashMap<u32, usize> = entries.iter().enumerate().map(|(i, (m, _))| (*m, i)).collect();
        let mut products = BTreeMap::new();
        for &(a, _) in &entries {
            for &(b, _) in &entries {
                if a == 0 || b == 0 || a & b != 0 {
                    continue;
                }
                // sign of merging the sorted generator lists of a and b
                let mut swaps = 0;
                for bit in 0..k {
                    if b & (1 << bit) != 0 {
                        swaps += (a >> (bit + 1)).count_ones();
                    }
                }
                let sign = if swaps % 2 == 0 { q(1) } else { q(-1) };
                products.insert((index[&a], index[&b]), vec![(index[&(a | b)], sign)]);
            }
        }
        let basis: Vec<BasisElement> = entries.into_iter().map(|(_, b)| b).collect();
        let bigrading = basis.iter().map(|b| b.degree).collect();
        let alg = GradedAlgebra::from_canonical_parts(basis, products, k);
        let top = alg.dim() - 1;
        Ok(Space::leaf(&format!("T^{k}"), Construction::Torus(k), alg, Some(bigrading), Some(top)))
    }

    /// `CP^n`: truncated polynomial algebra on `a` of degree 2.
    pub fn complex_projective(n: usize) -> Result<Space, SpaceError> {
        if n == 0 {
            return Err(SpaceError::ZeroParameter("complex projective space"));
        }
        let label = |i: usize| match i {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        };
        let basis: Vec<BasisElement> = (0..=n).map(|i| BasisElement { label: label(i), degree: 2 * i }).collect();
        let mut products = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                if i + j <= n {
                    products.insert((i, j), vec![(i + j, q(1))]);
                }
            }
        }
        let alg = GradedAlgebra::from_canonical_parts(basis, products, 2 * n);
        Ok(Space::leaf(&format!("CP^{n}"), Construction::ComplexProjective(n), alg, None, Some(n)))
    }

    /// A user-supplied ring. The orientation class is the unique top-degree
    /// basis element, when there is exactly one.
    pub fn manual(name: &str, algebra: GradedAlgebra, data: ManualData) -> Space {
        let top = algebra.indices_in_degree(algebra.top_degree());
        let fundamental = if top.len() == 1 { Some(top[0]) } else { None };
        Space::leaf(name, Construction::Manual(data), algebra, None, fundamental)
    }

    fn leaf(
        name: &str,
        construction: Construction,
        alg: GradedAlgebra,
        torus_bigrading: Option<Vec<usize>>,
        fundamental: Option<usize>,
    ) -> Space {
        Space { name: name.to_string(), construction, algebra: Arc::new(alg), torus_bigrading, fundamental, pairs: None }
    }

    /// Renames the space; the ring is untouched.
    pub fn named(mut self, name: &str) -> Space {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn dimension(&self) -> usize {
        self.algebra.top_degree()
    }

    pub fn torus_bigrading(&self) -> Option<&[usize]> {
        self.torus_bigrading.as_deref()
    }

    pub fn has_torus_factor(&self) -> bool {
        self.torus_bigrading.is_some()
    }

    /// Index of the orientation (fundamental cohomology) class.
    pub fn fundamental_index(&self) -> Option<usize> {
        self.fundamental
    }

    pub fn fundamental_class(&self) -> Option<Element> {
        self.fundamental.map(|i| Element::basis(&self.algebra, i))
    }

    pub fn is_point(&self) -> bool {
        matches!(self.construction, Construction::Point)
    }

    pub fn is_torus(&self) -> bool {
        matches!(self.construction, Construction::Torus(_))
    }

    pub fn same_as(&self, other: &Space) -> bool {
        crate::algebra::same_algebra(&self.algebra, &other.algebra) && self.torus_bigrading == other.torus_bigrading
    }

    /// Whether the space is known to be simply connected (manual spaces by declaration).
    pub fn is_simply_connected(&self) -> bool {
        match &self.construction {
            Construction::Point | Construction::ComplexProjective(_) => true,
            Construction::Sphere(n) => *n >= 2,
            Construction::Torus(_) => false,
            Construction::Product(a, b) => a.is_simply_connected() && b.is_simply_connected(),
            Construction::Manual(d) => d.simply_connected,
        }
    }

    pub fn element(&self, label: &str) -> Result<Element, SpaceError> {
        Ok(Element::from_label(&self.algebra, label)?)
    }

    pub fn unit(&self) -> Element {
        Element::unit(&self.algebra)
    }

    pub fn zero(&self) -> Element {
        Element::zero(&self.algebra)
    }

    /// Torus degree of a basis element (0 when the space has no torus factor).
    pub fn torus_degree(&self, i: usize) -> usize {
        self.torus_bigrading.as_ref().map_or(0, |b| b[i])
    }

    /// Component of `x` of torus degree `j`.
    pub fn torus_component(&self, x: &Element, j: usize) -> Element {
        x.filter(|i| self.torus_degree(i) == j)
    }

    /// The part of `x` that survives restriction to the core factor `C × *`.
    pub fn core_part(&self, x: &Element) -> Element {
        self.torus_component(x, 0)
    }

    /// The positive-torus-degree part of `x`, i.e. its relative class in `H*(C×T, C)`.
    pub fn relative_part(&self, x: &Element) -> Element {
        x.filter(|i| self.torus_degree(i) > 0)
    }

    /// Projection onto torus degree 0, as a linear endomorphism of the ring.
    pub fn core_projection(&self) -> LinearMap {
        let alg = &self.algebra;
        let images = (0..alg.dim())
            .map(|i| if self.torus_degree(i) == 0 { Element::basis(alg, i) } else { Element::zero(alg) })
            .collect();
        LinearMap::new(alg, alg, images).expect("projection is degree-preserving")
    }

    /// Whether some basis class of degree `d` has positive torus degree,
    /// i.e. `H^d(C × T, C) ≠ 0`.
    pub fn relative_group_nonzero(&self, d: usize) -> bool {
        (0..self.algebra.dim()).any(|i| self.algebra.degree(i) == d && self.torus_degree(i) > 0)
    }

    /// First basis class (canonical order) of degree `d` and positive torus degree.
    pub fn first_relative_class(&self, d: usize) -> Option<Element> {
        (0..self.algebra.dim())
            .find(|&i| self.algebra.degree(i) == d && self.torus_degree(i) > 0)
            .map(|i| Element::basis(&self.algebra, i))
    }

    pub fn factors(&self) -> Option<(&Space, &Space)> {
        match &self.construction {
            Construction::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Cross product `x × y = π_A^*(x) · π_B^*(y)` in a product space `A × B`.
    pub fn cross(&self, x: &Element, y: &Element) -> Result<Element, SpaceError> {
        let (a, b) = self.factors().ok_or(SpaceError::NotAProduct)?;
        let pairs = self.pairs.as_ref().ok_or(SpaceError::NotAProduct)?;
        if !x.same_parent(&a.unit()) || !y.same_parent(&b.unit()) {
            return Err(SpaceError::Algebra(AlgebraError::Mismatch));
        }
        let mut terms = Vec::new();
        for (i, c) in x.terms() {
            for (j, d) in y.terms() {
                terms.push((pairs.1[&(i, j)], c * d));
            }
        }
        Ok(Element::from_terms(&self.algebra, terms))
    }

    /// Pullback along the projection to the left factor.
    pub fn from_left(&self, x: &Element) -> Result<Element, SpaceError> {
        let (_, b) = self.factors().ok_or(SpaceError::NotAProduct)?;
        self.cross(x, &b.unit())
    }

    /// Pullback along the projection to the right factor.
    pub fn from_right(&self, y: &Element) -> Result<Element, SpaceError> {
        let (a, _) = self.factors().ok_or(SpaceError::NotAProduct)?;
        self.cross(&a.unit(), y)
    }

    /// The factor `C` of `C × T`: what remains after deleting torus factors.
    pub fn core(&self) -> Space {
        core_data(self).0
    }
}

fn unit_basis() -> BasisElement {
    BasisElement { label: "1".into(), degree: 0 }
}

fn atoms(label: &str) -> impl Iterator<Item = &str> {
    label.split('*').filter(|a| *a != "1").map(|a| a.split('^').next().unwrap_or(a))
}

fn prefix_atoms(label: &str, prefix: &str) -> String {
    if label == "1" {
        return label.to_string();
    }
    label.split('*').map(|a| format!("{prefix}{a}")).collect::<Vec<_>>().join("*")
}

/// Künneth product `A × B`: basis pairs with sign `(−1)^{deg y · deg x'}` on
/// `(x⊗y)(x'⊗y')`. Generator labels that collide are namespaced `left.`/`right.`.
pub fn kunneth_product(a: &Space, b: &Space) -> Space {
    let (aa, ba) = (a.algebra(), b.algebra());
    let left_atoms: BTreeSet<&str> = aa.basis().iter().flat_map(|e| atoms(&e.label)).collect();
    let right_atoms: BTreeSet<&str> = ba.basis().iter().flat_map(|e| atoms(&e.label)).collect();
    let clash = !left_atoms.is_disjoint(&right_atoms);
    let name_of = |x: &str, y: &str| -> String {
        let (x, y) = if clash { (prefix_atoms(x, "left."), prefix_atoms(y, "right.")) } else { (x.to_string(), y.to_string()) };
        match (x.as_str(), y.as_str()) {
            ("1", "1") => "1".into(),
            ("1", _) => y,
            (_, "1") => x,
            _ => format!("{x}*{y}"),
        }
    };
    let mut entries: Vec<((usize, usize), BasisElement)> = Vec::with_capacity(aa.dim() * ba.dim());
    for i in 0..aa.dim() {
        for j in 0..ba.dim() {
            let label = name_of(aa.label(i), ba.label(j));
            entries.push(((i, j), BasisElement { label, degree: aa.degree(i) + ba.degree(j) }));
        }
    }
    entries.sort_by(|x, y| (x.1.degree, &x.1.label).cmp(&(y.1.degree, &y.1.label)));
    let pair_of: Vec<(usize, usize)> = entries.iter().map(|(p, _)| *p).collect();
    let index: HashMap<(usize, usize), usize> = pair_of.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let top = aa.top_degree() + ba.top_degree();

    let mut products = BTreeMap::new();
    let nonzero_a: Vec<((usize, usize), Vec<(usize, Q)>)> = all_products(aa);
    let nonzero_b: Vec<((usize, usize), Vec<(usize, Q)>)> = all_products(ba);
    for ((x, x2), xs) in &nonzero_a {
        for ((y, y2), ys) in &nonzero_b {
            let (p, p2) = (index[&(*x, *y)], index[&(*x2, *y2)]);
            if p == 0 || p2 == 0 {
                continue;
            }
            let sign = if ba.degree(*y) * aa.degree(*x2) % 2 == 1 { q(-1) } else { q(1) };
            let mut terms: BTreeMap<usize, Q> = BTreeMap::new();
            for (u, c) in xs {
                for (v, d) in ys {
                    *terms.entry(index[&(*u, *v)]).or_insert_with(Q::zero) += c * d * &sign;
                }
            }
            terms.retain(|_, c| !c.is_zero());
            if !terms.is_empty() {
                products.insert((p, p2), terms.into_iter().collect());
            }
        }
    }
    let basis: Vec<BasisElement> = entries.into_iter().map(|(_, b)| b).collect();
    let alg = GradedAlgebra::from_canonical_parts(basis, products, top);

    let bigrading = if a.has_torus_factor() || b.has_torus_factor() {
        Some(pair_of.iter().map(|&(i, j)| a.torus_degree(i) + b.torus_degree(j)).collect())
    } else {
        None
    };
    let fundamental = match (a.fundamental, b.fundamental) {
        (Some(i), Some(j)) => Some(index[&(i, j)]),
        _ => None,
    };
    Space {
        name: format!("{} x {}", paren(a), paren(b)),
        construction: Construction::Product(Arc::new(a.clone()), Arc::new(b.clone())),
        algebra: Arc::new(alg),
        torus_bigrading: bigrading,
        fundamental,
        pairs: Some(Arc::new((pair_of, index))),
    }
}

fn paren(s: &Space) -> String {
    if s.factors().is_some() && s.name.contains(" x ") {
        format!("({})", s.name)
    } else {
        s.name.clone()
    }
}

// Every basis pair including unit products.
fn all_products(alg: &GradedAlgebra) -> Vec<((usize, usize), Vec<(usize, Q)>)> {
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        out.push(((0, i), vec![(i, Q::one())]));
        if i != 0 {
            out.push(((i, 0), vec![(i, Q::one())]));
        }
    }
    for (k, v) in alg.product_table() {
        out.push((*k, v.clone()));
    }
    out
}

/// Returns `(C, i_C^*, π_C^*)` where `i_C^*: H*(space) → H*(C)` and `π_C^*: H*(C) → H*(space)`.
fn core_data(space: &Space) -> (Space, Vec<Element>, Vec<Element>) {
    let alg = space.algebra();
    if !space.has_torus_factor() {
        let id: Vec<Element> = (0..alg.dim()).map(|i| Element::basis(alg, i)).collect();
        return (space.clone(), id.clone(), id);
    }
    match space.construction() {
        Construction::Torus(_) => {
            let pt = Space::point();
            let incl = (0..alg.dim())
                .map(|i| if i == 0 { pt.unit() } else { pt.zero() })
                .collect();
            (pt, incl, vec![space.unit()])
        }
        Construction::Product(a, b) => {
            let (ca, ia, pa) = core_data(a);
            let (cb, ib, pb) = core_data(b);
            let k = kunneth_product(&ca, &cb);
            let pairs = space.pairs.as_ref().expect("product carries pairs");
            let k_pairs = k.pairs.as_ref().expect("product carries pairs");
            let incl: Vec<Element> = pairs
                .0
                .iter()
                .map(|&(i, j)| k.cross(&ia[i], &ib[j]).expect("factor algebras match"))
                .collect();
            let proj: Vec<Element> = k_pairs
                .0
                .iter()
                .map(|&(u, v)| space.cross(&pa[u], &pb[v]).expect("factor algebras match"))
                .collect();
            // pt × X has the same basis order as X; reuse X's ring so callers see one algebra.
            let core = if ca.is_point() {
                Some(cb)
            } else if cb.is_point() {
                Some(ca)
            } else {
                None
            };
            match core {
                Some(c) => {
                    debug_assert!(**c.algebra() == **k.algebra());
                    let rewrap = |e: &Element| Element::from_terms(c.algebra(), e.terms().map(|(i, x)| (i, x.clone())));
                    let incl = incl.iter().map(rewrap).collect();
                    (c, incl, proj)
                }
                None => (k, incl, proj),
            }
        }
        _ => unreachable!("only tori and products carry a torus bigrading"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    Identity,
    InclusionCore,
    ProjectionToCore,
    TorusCover(u64),
    DegreeMapToSphere(i64),
    Composite(Vec<MapKind>),
}

/// A map `source → target` with its induced pullback `H*(target) → H*(source)`.
#[derive(Debug, Clone)]
pub struct SpaceMap {
    pub kind: MapKind,
    pub source: Space,
    pub target: Space,
    pub induced: AlgebraMap,
}

impl SpaceMap {
    pub fn identity(space: &Space) -> SpaceMap {
        SpaceMap {
            kind: MapKind::Identity,
            source: space.clone(),
            target: space.clone(),
            induced: AlgebraMap::identity(space.algebra()),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SpaceMap) -> Result<SpaceMap, SpaceError> {
        if !self.target.same_as(&next.source) {
            return Err(SpaceError::NotComposable);
        }
        let induced = next.induced.then(&self.induced)?;
        let mut kinds = match &self.kind {
            MapKind::Composite(v) => v.clone(),
            k => vec![k.clone()],
        };
        match &next.kind {
            MapKind::Composite(v) => kinds.extend(v.iter().cloned()),
            k => kinds.push(k.clone()),
        }
        Ok(SpaceMap { kind: MapKind::Composite(kinds), source: self.source.clone(), target: next.target.clone(), induced })
    }

    pub fn pull(&self, x: &Element) -> Result<Element, SpaceError> {
        Ok(self.induced.apply(x)?)
    }
}

/// The self-map `(c, z₁…z_k) ↦ (c, z₁^m … z_k^m)`; its pullback multiplies
/// torus-degree-`j` classes by `m^j`.
pub fn torus_cover_map(space: &Space, m: u64) -> Result<SpaceMap, SpaceError> {
    if m == 0 {
        return Err(SpaceError::ZeroCover);
    }
    let bigrading = space.torus_bigrading().ok_or_else(|| SpaceError::NoTorusFactor(space.name.clone()))?;
    let alg = space.algebra();
    let m = i64::try_from(m).map_err(|_| SpaceError::ZeroCover)?;
    let images = (0..alg.dim()).map(|i| Element::basis(alg, i).scale(&q_pow(m, bigrading[i]))).collect();
    let induced = AlgebraMap::new(alg, alg, images)?;
    Ok(SpaceMap { kind: MapKind::TorusCover(m as u64), source: space.clone(), target: space.clone(), induced })
}

/// A map `B → S^n` of degree `d`; pulls the sphere class back to `d` times the
/// orientation class of `B`.
pub fn degree_map_to_sphere(base: &Space, n: usize, d: i64) -> Result<SpaceMap, SpaceError> {
    if n == 0 || n % 2 == 1 {
        return Err(SpaceError::OddSphere(n));
    }
    if base.dimension() != n {
        return Err(SpaceError::DimensionMismatch { space: base.name.clone(), dim: base.dimension(), sphere: n });
    }
    let fund = base.fundamental_class().ok_or_else(|| SpaceError::NotOriented(base.name.clone()))?;
    let sphere = Space::sphere(n)?;
    let induced = AlgebraMap::new(sphere.algebra(), base.algebra(), vec![base.unit(), fund.scale(&q(d))])?;
    Ok(SpaceMap { kind: MapKind::DegreeMapToSphere(d), source: base.clone(), target: sphere, induced })
}

/// Inclusion `C → C × T` onto `C × *`.
pub fn inclusion_core(space: &Space) -> Result<SpaceMap, SpaceError> {
    if !space.has_torus_factor() {
        return Err(SpaceError::NoTorusFactor(space.name.clone()));
    }
    let (core, incl, _) = core_data(space);
    let induced = AlgebraMap::new(space.algebra(), core.algebra(), incl)?;
    Ok(SpaceMap { kind: MapKind::InclusionCore, source: core, target: space.clone(), induced })
}

/// Projection `C × T → C`.
pub fn projection_to_core(space: &Space) -> Result<SpaceMap, SpaceError> {
    if !space.has_torus_factor() {
        return Err(SpaceError::NoTorusFactor(space.name.clone()));
    }
    let (core, _, proj) = core_data(space);
    let induced = AlgebraMap::new(core.algebra(), space.algebra(), proj)?;
    Ok(SpaceMap { kind: MapKind::ProjectionToCore, source: space.clone(), target: core, induced })
}

/// Poincaré polynomial coefficients, i.e. Betti numbers by degree.
pub fn poincare_polynomial(space: &Space) -> Vec<usize> {
    space.algebra().betti()
}
