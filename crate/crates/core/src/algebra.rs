//! Finite-dimensional graded-commutative algebras over ℚ.
//!
//! An algebra is an explicit basis with degrees plus a sparse table of
//! structure constants. The basis is kept in canonical order (degree, then
//! label) so that the unit is always index 0 and everything printed from an
//! algebra is reproducible.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg;
use crate::rational::{format_q, is_negative, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra has no basis elements")]
    EmptyBasis,
    #[error("expected exactly one basis element in degree 0, found {0}")]
    UnitCount(usize),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("basis element `{label}` has degree {degree} above top degree {top}")]
    DegreeAboveTop { label: String, degree: usize, top: usize },
    #[error("structure constant refers to basis index {0}, out of range")]
    IndexOutOfRange(usize),
    #[error("product {left}·{right} has a term `{term}` of degree {got}, expected {expected}")]
    ProductDegree { left: String, right: String, term: String, got: usize, expected: usize },
    #[error("unit law fails for `{0}`")]
    UnitLaw(String),
    #[error("graded commutativity fails for {0}·{1}")]
    Commutativity(String, String),
    #[error("associativity fails for ({0}·{1})·{2}")]
    Associativity(String, String, String),
    #[error("operands belong to different algebras")]
    Mismatch,
    #[error("map is not degree-preserving on `{0}`")]
    MapDegree(String),
    #[error("map does not send the unit to the unit")]
    MapNotUnital,
    #[error("map is not multiplicative on {0}·{1}")]
    MapNotMultiplicative(String, String),
    #[error("map has {got} images, domain has {expected} basis elements")]
    MapArity { got: usize, expected: usize },
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub label: String,
    pub degree: usize,
}

type Terms = Vec<(usize, Q)>;

/// A graded-commutative ℚ-algebra with explicit basis.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    basis: Vec<BasisElement>,
    // Products of non-unit basis elements; absent pairs multiply to zero.
    products: BTreeMap<(usize, usize), Terms>,
    top_degree: usize,
    label_index: HashMap<String, usize>,
    fingerprint: u64,
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.top_degree == other.top_degree
            && self.basis == other.basis
            && self.products == other.products
    }
}

impl Eq for GradedAlgebra {}

impl GradedAlgebra {
    /// Builds an algebra from a basis (any order) and products of basis pairs
    /// indexed into that input order. Unit products are implied; the basis is
    /// re-sorted canonically and every axiom is verified.
    pub fn new(
        basis: Vec<(String, usize)>,
        products: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Q)>)>,
        top_degree: usize,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::build(basis, products, top_degree)?;
        if let Some(v) = alg.axiom_violations().into_iter().next() {
            return Err(v);
        }
        Ok(alg)
    }

    /// Like [`GradedAlgebra::new`], but a product `x·y` listed without its
    /// partner `y·x` gets the partner filled in by the graded sign rule.
    pub fn with_commuted_products(
        basis: Vec<(String, usize)>,
        products: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Q)>)>,
        top_degree: usize,
    ) -> Result<Self, AlgebraError> {
        let degrees: Vec<usize> = basis.iter().map(|(_, d)| *d).collect();
        let mut table: BTreeMap<(usize, usize), Vec<(usize, Q)>> = products.into_iter().collect();
        let keys: Vec<(usize, usize)> = table.keys().copied().collect();
        for (i, j) in keys {
            if table.contains_key(&(j, i)) {
                continue;
            }
            let (Some(&di), Some(&dj)) = (degrees.get(i), degrees.get(j)) else {
                continue;
            };
            let sign = if di * dj % 2 == 1 { -Q::one() } else { Q::one() };
            let terms = table[&(i, j)].iter().map(|(k, c)| (*k, c * &sign)).collect();
            table.insert((j, i), terms);
        }
        Self::new(basis, table, top_degree)
    }

    /// Trusted constructor for algebras that satisfy the axioms by construction.
    pub(crate) fn from_canonical_parts(
        basis: Vec<BasisElement>,
        products: BTreeMap<(usize, usize), Terms>,
        top_degree: usize,
    ) -> Self {
        debug_assert!(basis.windows(2).all(|w| (w[0].degree, &w[0].label) < (w[1].degree, &w[1].label)));
        let label_index = basis.iter().enumerate().map(|(i, b)| (b.label.clone(), i)).collect();
        let fingerprint = fingerprint(&basis, &products, top_degree);
        Self { basis, products, top_degree, label_index, fingerprint }
    }

    fn build(
        basis: Vec<(String, usize)>,
        products: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Q)>)>,
        top_degree: usize,
    ) -> Result<Self, AlgebraError> {
        if basis.is_empty() {
            return Err(AlgebraError::EmptyBasis);
        }
        let units = basis.iter().filter(|(_, d)| *d == 0).count();
        if units != 1 {
            return Err(AlgebraError::UnitCount(units));
        }
        let mut seen = BTreeSet::new();
        for (label, degree) in &basis {
            if !seen.insert(label.clone()) {
                return Err(AlgebraError::DuplicateLabel(label.clone()));
            }
            if *degree > top_degree {
                return Err(AlgebraError::DegreeAboveTop { label: label.clone(), degree: *degree, top: top_degree });
            }
        }
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by(|&a, &b| (basis[a].1, &basis[a].0).cmp(&(basis[b].1, &basis[b].0)));
        let mut new_index = vec![0; basis.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted: Vec<BasisElement> =
            order.iter().map(|&i| BasisElement { label: basis[i].0.clone(), degree: basis[i].1 }).collect();
        let old_unit = basis.iter().position(|(_, d)| *d == 0).unwrap_or(0);

        let mut table: BTreeMap<(usize, usize), Terms> = BTreeMap::new();
        for ((i, j), terms) in products {
            for idx in std::iter::once(i).chain(std::iter::once(j)).chain(terms.iter().map(|(k, _)| *k)) {
                if idx >= basis.len() {
                    return Err(AlgebraError::IndexOutOfRange(idx));
                }
            }
            let expected = basis[i].1 + basis[j].1;
            let mut merged: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, c) in terms {
                if c.is_zero() {
                    continue;
                }
                if basis[k].1 != expected {
                    return Err(AlgebraError::ProductDegree {
                        left: basis[i].0.clone(),
                        right: basis[j].0.clone(),
                        term: basis[k].0.clone(),
                        got: basis[k].1,
                        expected,
                    });
                }
                *merged.entry(new_index[k]).or_insert_with(Q::zero) += c;
            }
            merged.retain(|_, c| !c.is_zero());
            if i == old_unit || j == old_unit {
                let other = if i == old_unit { j } else { i };
                let want: BTreeMap<usize, Q> = [(new_index[other], Q::one())].into_iter().collect();
                if merged != want {
                    return Err(AlgebraError::UnitLaw(basis[other].0.clone()));
                }
                continue;
            }
            if !merged.is_empty() {
                table.insert((new_index[i], new_index[j]), merged.into_iter().collect());
            }
        }
        Ok(Self::from_canonical_parts(sorted, table, top_degree))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn unit_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Indices of the basis elements in degree `d`.
    pub fn indices_in_degree(&self, d: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == d).collect()
    }

    /// Betti numbers `b_0 … b_top`.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; self.top_degree + 1];
        for e in &self.basis {
            b[e.degree] += 1;
        }
        b
    }

    /// Structure constants for `basis(i)·basis(j)`.
    pub fn product_terms(&self, i: usize, j: usize) -> Vec<(usize, Q)> {
        if i == 0 {
            return vec![(j, Q::one())];
        }
        if j == 0 {
            return vec![(i, Q::one())];
        }
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub(crate) fn product_table(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.products
    }

    /// Exhaustive check of the unit law, graded commutativity, associativity
    /// and degree additivity. Returns every violation found.
    pub fn axiom_violations(&self) -> Vec<AlgebraError> {
        let n = self.dim();
        let mut out = Vec::new();
        if self.basis.iter().filter(|b| b.degree == 0).count() != 1 {
            out.push(AlgebraError::UnitCount(self.basis.iter().filter(|b| b.degree == 0).count()));
            return out;
        }
        for ((i, j), terms) in &self.products {
            for (k, _) in terms {
                if self.degree(*k) != self.degree(*i) + self.degree(*j) {
                    out.push(AlgebraError::ProductDegree {
                        left: self.label(*i).to_string(),
                        right: self.label(*j).to_string(),
                        term: self.label(*k).to_string(),
                        got: self.degree(*k),
                        expected: self.degree(*i) + self.degree(*j),
                    });
                }
            }
        }
        let as_map = |terms: Vec<(usize, Q)>| -> BTreeMap<usize, Q> {
            let mut m = BTreeMap::new();
            for (k, c) in terms {
                *m.entry(k).or_insert_with(Q::zero) += c;
            }
            m.retain(|_, c: &mut Q| !c.is_zero());
            m
        };
        for i in 0..n {
            for j in 0..n {
                let xy = as_map(self.product_terms(i, j));
                let mut yx = as_map(self.product_terms(j, i));
                if self.degree(i) * self.degree(j) % 2 == 1 {
                    for c in yx.values_mut() {
                        *c = -c.clone();
                    }
                }
                if xy != yx {
                    out.push(AlgebraError::Commutativity(self.label(i).to_string(), self.label(j).to_string()));
                }
            }
        }
        // (x·y)·z against x·(y·z); pairs with zero product are skipped cheaply.
        let pair = |i: usize, j: usize| self.product_terms(i, j);
        for i in 1..n {
            for j in 1..n {
                let xy = pair(i, j);
                for k in 1..n {
                    let yz = pair(j, k);
                    if xy.is_empty() && yz.is_empty() {
                        continue;
                    }
                    let mut left: BTreeMap<usize, Q> = BTreeMap::new();
                    for (m, c) in &xy {
                        for (r, d) in pair(*m, k) {
                            *left.entry(r).or_insert_with(Q::zero) += c * d;
                        }
                    }
                    let mut right: BTreeMap<usize, Q> = BTreeMap::new();
                    for (m, c) in &yz {
                        for (r, d) in pair(i, *m) {
                            *right.entry(r).or_insert_with(Q::zero) += c * d;
                        }
                    }
                    left.retain(|_, c| !c.is_zero());
                    right.retain(|_, c| !c.is_zero());
                    if left != right {
                        out.push(AlgebraError::Associativity(
                            self.label(i).to_string(),
                            self.label(j).to_string(),
                            self.label(k).to_string(),
                        ));
                    }
                }
            }
        }
        out
    }
}

fn fingerprint(basis: &[BasisElement], products: &BTreeMap<(usize, usize), Terms>, top: usize) -> u64 {
    let mut h = DefaultHasher::new();
    basis.hash(&mut h);
    top.hash(&mut h);
    for (k, v) in products {
        k.hash(&mut h);
        v.hash(&mut h);
    }
    h.finish()
}

pub(crate) fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of a [`GradedAlgebra`], stored sparsely.
#[derive(Clone)]
pub struct Element {
    alg: Arc<GradedAlgebra>,
    coords: BTreeMap<usize, Q>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_algebra(&self.alg, &other.alg)
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl fmt::Display for Element {
    /// `c*label` terms in basis order, `1` coefficients elided, `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.coords.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let label = self.alg.label(*i);
            if *i == 0 {
                write!(f, "{}", format_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{}*{label}", format_q(&abs))?;
            }
        }
        Ok(())
    }
}

impl Element {
    pub fn zero(alg: &Arc<GradedAlgebra>) -> Self {
        Self { alg: alg.clone(), coords: BTreeMap::new() }
    }

    pub fn unit(alg: &Arc<GradedAlgebra>) -> Self {
        Self::basis(alg, 0)
    }

    pub fn basis(alg: &Arc<GradedAlgebra>, i: usize) -> Self {
        assert!(i < alg.dim(), "basis index {i} out of range");
        Self { alg: alg.clone(), coords: [(i, Q::one())].into_iter().collect() }
    }

    pub fn from_label(alg: &Arc<GradedAlgebra>, label: &str) -> Result<Self, AlgebraError> {
        alg.index_of(label)
            .map(|i| Self::basis(alg, i))
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    pub fn from_terms(alg: &Arc<GradedAlgebra>, terms: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut coords = BTreeMap::new();
        for (i, c) in terms {
            assert!(i < alg.dim(), "basis index {i} out of range");
            *coords.entry(i).or_insert_with(Q::zero) += c;
        }
        coords.retain(|_, c: &mut Q| !c.is_zero());
        Self { alg: alg.clone(), coords }
    }

    pub(crate) fn from_dense(alg: &Arc<GradedAlgebra>, v: &[Q]) -> Self {
        Self::from_terms(alg, v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())))
    }

    pub(crate) fn to_dense(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.alg.dim()];
        for (i, c) in &self.coords {
            v[*i] = c.clone();
        }
        v
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coords.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coords.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn same_parent(&self, other: &Element) -> bool {
        same_algebra(&self.alg, &other.alg)
    }

    /// Degrees in which the element has a nonzero component.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.coords.keys().map(|&i| self.alg.degree(i)).collect()
    }

    /// True if zero or concentrated in degree `d`.
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.coords.keys().all(|&i| self.alg.degree(i) == d)
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        self.filter(|i| self.alg.degree(i) == d)
    }

    pub(crate) fn filter(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self {
            alg: self.alg.clone(),
            coords: self.coords.iter().filter(|(i, _)| keep(**i)).map(|(i, c)| (*i, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        Self { alg: self.alg.clone(), coords: self.coords.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Self, AlgebraError> {
        if !self.same_parent(other) {
            return Err(AlgebraError::Mismatch);
        }
        let mut coords = self.coords.clone();
        for (i, c) in &other.coords {
            *coords.entry(*i).or_insert_with(Q::zero) += c;
        }
        coords.retain(|_, c| !c.is_zero());
        Ok(Self { alg: self.alg.clone(), coords })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Self, AlgebraError> {
        multiply(self, other)
    }

    /// `self^n`, with `self^0 = 1`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::unit(&self.alg);
        for _ in 0..n {
            acc = &acc * self;
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Multiplicative inverse of an element whose degree-0 part is nonzero.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return None;
        }
        // x = c0(1 + n) with n nilpotent: x⁻¹ = c0⁻¹ Σ (−n)^k
        let inv0 = Q::one() / &c0;
        let n = self.scale(&inv0).checked_sub(&Self::unit(&self.alg)).ok()?;
        let minus_n = -&n;
        let mut acc = Self::unit(&self.alg);
        let mut power = Self::unit(&self.alg);
        loop {
            power = &power * &minus_n;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Some(acc.scale(&inv0))
    }
}

/// Cup product: bilinear extension of the structure constants.
pub fn multiply(a: &Element, b: &Element) -> Result<Element, AlgebraError> {
    if !a.same_parent(b) {
        return Err(AlgebraError::Mismatch);
    }
    let alg = &a.alg;
    let top = alg.top_degree;
    let mut coords: BTreeMap<usize, Q> = BTreeMap::new();
    for (i, x) in &a.coords {
        for (j, y) in &b.coords {
            if alg.degree(*i) + alg.degree(*j) > top {
                continue;
            }
            let xy = x * y;
            for (k, c) in alg.product_terms(*i, *j) {
                *coords.entry(k).or_insert_with(Q::zero) += &xy * c;
            }
        }
    }
    coords.retain(|_, c| !c.is_zero());
    Ok(Element { alg: alg.clone(), coords })
}

impl std::ops::Add for &Element {
    type Output = Element;
    /// Panics if the operands come from different algebras.
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("elements from different algebras")
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("elements from different algebras")
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        multiply(self, rhs).expect("elements from different algebras")
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { alg: self.alg.clone(), coords: self.coords.iter().map(|(i, c)| (*i, -c.clone())).collect() }
    }
}

/// A degree-preserving linear map given by the image of each domain basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    domain: Arc<GradedAlgebra>,
    codomain: Arc<GradedAlgebra>,
    images: Vec<Element>,
}

impl LinearMap {
    pub fn new(
        domain: &Arc<GradedAlgebra>,
        codomain: &Arc<GradedAlgebra>,
        images: Vec<Element>,
    ) -> Result<Self, AlgebraError> {
        if images.len() != domain.dim() {
            return Err(AlgebraError::MapArity { got: images.len(), expected: domain.dim() });
        }
        for (i, img) in images.iter().enumerate() {
            if !same_algebra(img.algebra(), codomain) {
                return Err(AlgebraError::Mismatch);
            }
            if !img.is_homogeneous_of(domain.degree(i)) {
                return Err(AlgebraError::MapDegree(domain.label(i).to_string()));
            }
        }
        Ok(Self { domain: domain.clone(), codomain: codomain.clone(), images })
    }

    pub fn identity(alg: &Arc<GradedAlgebra>) -> Self {
        Self { domain: alg.clone(), codomain: alg.clone(), images: (0..alg.dim()).map(|i| Element::basis(alg, i)).collect() }
    }

    pub fn domain(&self) -> &Arc<GradedAlgebra> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<GradedAlgebra> {
        &self.codomain
    }

    pub fn image_of_basis(&self, i: usize) -> &Element {
        &self.images[i]
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        if !same_algebra(x.algebra(), &self.domain) {
            return Err(AlgebraError::Mismatch);
        }
        let mut acc = Element::zero(&self.codomain);
        for (i, c) in x.terms() {
            acc = &acc + &self.images[i].scale(c);
        }
        Ok(acc)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinearMap) -> Result<LinearMap, AlgebraError> {
        if !same_algebra(&self.codomain, &other.domain) {
            return Err(AlgebraError::Mismatch);
        }
        let images = self.images.iter().map(|x| other.apply(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(LinearMap { domain: self.domain.clone(), codomain: other.codomain.clone(), images })
    }
}

/// A unital, multiplicative, degree-preserving map of algebras.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMap {
    linear: LinearMap,
}

impl AlgebraMap {
    /// Verifies unitality and multiplicativity on all basis pairs.
    pub fn new(
        domain: &Arc<GradedAlgebra>,
        codomain: &Arc<GradedAlgebra>,
        images: Vec<Element>,
    ) -> Result<Self, AlgebraError> {
        let map = Self { linear: LinearMap::new(domain, codomain, images)? };
        map.verify()?;
        Ok(map)
    }

    pub fn identity(alg: &Arc<GradedAlgebra>) -> Self {
        Self { linear: LinearMap::identity(alg) }
    }

    pub fn verify(&self) -> Result<(), AlgebraError> {
        let l = &self.linear;
        if l.images[0] != Element::unit(&l.codomain) {
            return Err(AlgebraError::MapNotUnital);
        }
        let n = l.domain.dim();
        for i in 1..n {
            for j in 1..n {
                let x = Element::basis(&l.domain, i);
                let y = Element::basis(&l.domain, j);
                let lhs = l.apply(&(&x * &y))?;
                let rhs = &l.images[i] * &l.images[j];
                if lhs != rhs {
                    return Err(AlgebraError::MapNotMultiplicative(
                        l.domain.label(i).to_string(),
                        l.domain.label(j).to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn linear(&self) -> &LinearMap {
        &self.linear
    }

    pub fn domain(&self) -> &Arc<GradedAlgebra> {
        &self.linear.domain
    }

    pub fn codomain(&self) -> &Arc<GradedAlgebra> {
        &self.linear.codomain
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        self.linear.apply(x)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMap) -> Result<AlgebraMap, AlgebraError> {
        Ok(AlgebraMap { linear: self.linear.then(&other.linear)? })
    }

    /// True if no nonzero element maps to zero.
    pub fn is_injective(&self) -> bool {
        let rows: Vec<Vec<Q>> = self.linear.images.iter().map(Element::to_dense).collect();
        linalg::rank(&rows) == self.linear.domain.dim()
    }
}

/// Basis of `span(spanning) ∩ ker(f)`, in reduced echelon form with respect
/// to the domain basis order. Empty output means the intersection is trivial.
pub fn kernel_of_map_on_subspace(f: &LinearMap, spanning: &[Element]) -> Result<Vec<Element>, AlgebraError> {
    for v in spanning {
        if !same_algebra(v.algebra(), &f.domain) {
            return Err(AlgebraError::Mismatch);
        }
    }
    let mut span: Vec<Vec<Q>> = spanning.iter().map(Element::to_dense).collect();
    linalg::rref(&mut span);
    if span.is_empty() {
        return Ok(Vec::new());
    }
    // Columns of `images` are f(span_j); a null vector c gives Σ c_j span_j ∈ ker f.
    let imgs: Vec<Vec<Q>> = span
        .iter()
        .map(|row| f.apply(&Element::from_dense(&f.domain, row)).map(|e| e.to_dense()))
        .collect::<Result<_, _>>()?;
    let m = f.codomain.dim();
    let r = span.len();
    let matrix: Vec<Vec<Q>> = (0..m).map(|i| (0..r).map(|j| imgs[j][i].clone()).collect()).collect();
    let null = linalg::nullspace(&matrix, r);
    let n = f.domain.dim();
    let mut vectors: Vec<Vec<Q>> = null
        .iter()
        .map(|c| {
            let mut v = vec![Q::zero(); n];
            for (cj, row) in c.iter().zip(&span) {
                if cj.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(row) {
                    *x += cj * y;
                }
            }
            v
        })
        .collect();
    linalg::rref(&mut vectors);
    Ok(vectors.iter().map(|v| Element::from_dense(&f.domain, v)).collect())
}
