//! Complete classifications over `S¹×S³`, `S¹×S²`, and the rank-3/4
//! invariants of bundles over `S⁴`.
//!
//! Integral data is carried directly: `p1` and `e` are coefficients of the
//! generator of the relevant integral cohomology group, and the `ℤ/2` data
//! (`w1`, `w2`, the orientation-lift flag) are plain booleans.

use std::fmt;

use thiserror::Error;

use crate::bundles::{Bundle, BundleError};
use crate::obstruction::Verdict;
use crate::rational::q;
use crate::spaces::{kunneth_product, Space};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowDimError {
    #[error("{0}")]
    Invalid(String),
    #[error("rank {0} is not 3 or 4")]
    UnsupportedRank(usize),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, LowDimError> {
    Err(LowDimError::Invalid(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LowDimBase {
    S1xS3,
    S1xS2,
}

impl fmt::Display for LowDimBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowDimBase::S1xS3 => "S1xS3",
            LowDimBase::S1xS2 => "S1xS2",
        })
    }
}

/// Bundle over `S¹×S³` or `S¹×S²` by integral and mod-2 invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowDimBundle {
    base: LowDimBase,
    rank: usize,
    w1: bool,
    w2: bool,
    p1: i64,
    e: i64,
    orientation_lift_trivial: Option<bool>,
}

impl LowDimBundle {
    /// Over `S¹×S³`. For a nonorientable bundle the orientation lift is the
    /// pullback along the double cover in the `S¹` direction; it has `e = 0`
    /// and `p1` twice that of the bundle, so it is trivial exactly when
    /// `p1 = 0`. A supplied `orientation_lift_trivial` must agree.
    pub fn s1s3(
        rank: usize,
        w1: bool,
        p1: i64,
        e: i64,
        orientation_lift_trivial: Option<bool>,
    ) -> Result<Self, LowDimError> {
        if w1 && rank == 0 {
            return invalid("rank 0 bundle is orientable");
        }
        if !w1 && orientation_lift_trivial.is_some() {
            return invalid("orientation lift is only defined for nonorientable bundles");
        }
        if rank % 2 == 1 && e != 0 {
            return invalid(format!("odd rank {rank} forces e = 0"));
        }
        if e != 0 && rank != 4 {
            return invalid(format!("H^{rank}(S1xS3) carries no Euler class"));
        }
        if w1 && e != 0 {
            return invalid("nonorientable bundle has no Euler class");
        }
        if rank <= 2 && p1 != 0 {
            return invalid(format!("rank {rank} bundles over S1xS3 have p1 = 0"));
        }
        let lift = w1.then_some(p1 == 0);
        if let (Some(given), Some(derived)) = (orientation_lift_trivial, lift) {
            if given != derived {
                return invalid(format!("orientation lift has p1 = {}, so it is {}trivial", 2 * p1, if derived { "" } else { "non" }));
            }
        }
        Ok(LowDimBundle { base: LowDimBase::S1xS3, rank, w1, w2: false, p1, e, orientation_lift_trivial: lift })
    }

    /// Over `S¹×S²`. `e` is the Euler number on `S²` (orientable rank 2
    /// only); `w2` is the `ℤ/2` datum over `S²` for rank at least 3.
    pub fn s1s2(rank: usize, w1: bool, e: i64, w2: bool) -> Result<Self, LowDimError> {
        if w1 && rank == 0 {
            return invalid("rank 0 bundle is orientable");
        }
        if e != 0 && (rank != 2 || w1) {
            return invalid("Euler number over S2 needs an orientable rank-2 bundle");
        }
        if w2 && rank < 3 {
            return invalid("w2 datum applies to rank at least 3");
        }
        Ok(LowDimBundle { base: LowDimBase::S1xS2, rank, w1, w2, p1: 0, e, orientation_lift_trivial: None })
    }

    pub fn base(&self) -> LowDimBase {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn w1(&self) -> bool {
        self.w1
    }

    pub fn w2(&self) -> bool {
        self.w2
    }

    pub fn p1(&self) -> i64 {
        self.p1
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn orientation_lift_trivial(&self) -> Option<bool> {
        self.orientation_lift_trivial
    }

    /// The model space `S³×T¹` or `S²×T¹`.
    pub fn model_space(&self) -> Space {
        let sphere = match self.base {
            LowDimBase::S1xS3 => 3,
            LowDimBase::S1xS2 => 2,
        };
        kunneth_product(&Space::sphere(sphere).expect("positive"), &Space::torus(1).expect("positive"))
    }

    /// The rational characteristic classes as a [`Bundle`] over [`Self::model_space`].
    pub fn rational_descriptor(&self) -> Result<Bundle, BundleError> {
        let b = self.model_space();
        let oriented = !self.w1;
        match self.base {
            LowDimBase::S1xS3 => {
                let top = b.fundamental_class().expect("closed");
                let p1 = top.scale(&q(self.p1));
                let p = if self.rank >= 2 { vec![p1] } else { Vec::new() };
                let euler = (oriented && self.rank == 4).then(|| top.scale(&q(self.e)));
                Bundle::new(&b, self.rank, oriented, euler, p)
            }
            LowDimBase::S1xS2 => {
                let s = b.element("s").expect("sphere generator");
                let euler = (oriented && self.rank == 2).then(|| s.scale(&q(self.e)));
                Bundle::new(&b, self.rank, oriented, euler, Vec::new())
            }
        }
    }
}

/// `(p1, e)` of the `(m, n)` bundle over `S⁴`.
pub fn s4_invariants(m: i64, n: i64) -> (i64, i64) {
    (2 * (m - n), m + n)
}

/// The `(m, n)` with the given invariants, if integral.
pub fn s4_class_of(p1: i64, e: i64) -> Option<(i64, i64)> {
    if p1 % 2 != 0 {
        return None;
    }
    let d = p1 / 2;
    if (d + e) % 2 != 0 {
        return None;
    }
    Some(((e + d) / 2, (e - d) / 2))
}

/// Whether `(p1, e)` occurs for some rank-3 or rank-4 bundle over `S⁴`.
pub fn s4_realizable(rank: usize, p1: i64, e: i64) -> Result<bool, LowDimError> {
    match rank {
        3 => Ok(e == 0 && p1 % 4 == 0),
        4 => Ok(s4_class_of(p1, e).is_some()),
        r => Err(LowDimError::UnsupportedRank(r)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum S1S3Class {
    Trivial { rank: usize },
    /// `μ¹ × ε^{k−1}`: Möbius line bundle over `S¹` plus a trivial bundle.
    MoebiusPlusTrivial { rank: usize },
    Obstructed { reason: String },
}

impl S1S3Class {
    pub fn verdict(&self) -> Verdict {
        match self {
            S1S3Class::Obstructed { .. } => Verdict::Obstructed,
            _ => Verdict::KnownNonnegativelyCurved,
        }
    }
}

impl fmt::Display for S1S3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S1S3Class::Trivial { rank } => write!(f, "trivial rank {rank}"),
            S1S3Class::MoebiusPlusTrivial { rank } => write!(f, "moebius line bundle plus trivial rank {}", rank - 1),
            S1S3Class::Obstructed { reason } => write!(f, "obstructed: {reason}"),
        }
    }
}

/// Exactly two nonnegatively curved shapes occur: the trivial bundle and
/// `μ¹ × ε^{k−1}`.
pub fn classify_s1s3(b: &LowDimBundle) -> Result<S1S3Class, LowDimError> {
    if b.base != LowDimBase::S1xS3 {
        return invalid("bundle is not over S1xS3");
    }
    let rank = b.rank;
    if b.p1 != 0 {
        return Ok(S1S3Class::Obstructed { reason: format!("p1 = {} is nonzero but vanishes on the universal cover", b.p1) });
    }
    if b.e != 0 {
        return Ok(S1S3Class::Obstructed { reason: format!("e = {} is nonzero but vanishes on the universal cover", b.e) });
    }
    if !b.w1 {
        return Ok(S1S3Class::Trivial { rank });
    }
    match b.orientation_lift_trivial {
        Some(true) => Ok(S1S3Class::MoebiusPlusTrivial { rank }),
        _ => Ok(S1S3Class::Obstructed { reason: "orientation lift is nontrivial".into() }),
    }
}

/// The part of an `S¹×S²` bundle coming from `S²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum S2Part {
    None,
    /// Oriented plane bundle with this Euler number.
    Plane { euler: i64 },
    /// Plane bundle with this `w2` (rank at least 3 only needs its parity).
    PlaneMod2 { w2: bool },
}

/// `ξ ≅ (bundle over S¹) × (bundle over S²) ⊕ ε^trivial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S1S2Decomposition {
    pub s1_rank: usize,
    pub s1_w1: bool,
    pub s2_part: S2Part,
    pub trivial: usize,
}

impl S1S2Decomposition {
    pub fn verdict(&self) -> Verdict {
        Verdict::KnownNonnegativelyCurved
    }
}

impl fmt::Display for S1S2Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = if self.s1_w1 { "moebius" } else { "trivial" };
        write!(f, "S1: rank {} ({line})", self.s1_rank)?;
        match &self.s2_part {
            S2Part::None => write!(f, "; S2: rank 0")?,
            S2Part::Plane { euler } => write!(f, "; S2: rank 2, euler {euler}")?,
            S2Part::PlaneMod2 { w2 } => write!(f, "; S2: rank 2, w2 {}", u8::from(*w2))?,
        }
        write!(f, "; trivial {}", self.trivial)
    }
}

/// Every bundle over `S¹×S²` splits as a product of bundles over the factors.
pub fn classify_s1s2(b: &LowDimBundle) -> Result<S1S2Decomposition, LowDimError> {
    if b.base != LowDimBase::S1xS2 {
        return invalid("bundle is not over S1xS2");
    }
    let d = match (b.rank, b.w1) {
        (0, _) => S1S2Decomposition { s1_rank: 0, s1_w1: false, s2_part: S2Part::None, trivial: 0 },
        (1, w1) => S1S2Decomposition { s1_rank: 1, s1_w1: w1, s2_part: S2Part::None, trivial: 0 },
        (2, false) => S1S2Decomposition { s1_rank: 0, s1_w1: false, s2_part: S2Part::Plane { euler: b.e }, trivial: 0 },
        // the orientation cover has e = 0, so the restriction to S² is trivial
        (2, true) => S1S2Decomposition { s1_rank: 2, s1_w1: true, s2_part: S2Part::None, trivial: 0 },
        (k, w1) => S1S2Decomposition { s1_rank: 1, s1_w1: w1, s2_part: S2Part::PlaneMod2 { w2: b.w2 }, trivial: k - 3 },
    };
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_examples() {
        assert_eq!(s4_invariants(1, 1), (0, 2));
        assert_eq!(s4_invariants(1, 0), (2, 1));
        assert_eq!(s4_invariants(0, 0), (0, 0));
        assert!(s4_realizable(3, 4, 0).unwrap());
        assert!(!s4_realizable(3, 2, 0).unwrap());
        assert!(s4_realizable(4, 2, 1).unwrap());
        assert!(!s4_realizable(4, 2, 2).unwrap());
        assert_eq!(s4_realizable(5, 0, 0), Err(LowDimError::UnsupportedRank(5)));
        assert_eq!(s4_class_of(2, 1), Some((1, 0)));
    }

    #[test]
    fn s1s3_examples() {
        let t = LowDimBundle::s1s3(4, false, 0, 0, None).unwrap();
        assert_eq!(classify_s1s3(&t).unwrap(), S1S3Class::Trivial { rank: 4 });
        let p = LowDimBundle::s1s3(4, false, 1, 0, None).unwrap();
        assert_eq!(classify_s1s3(&p).unwrap().verdict(), Verdict::Obstructed);
        let m = LowDimBundle::s1s3(3, true, 0, 0, Some(true)).unwrap();
        assert_eq!(classify_s1s3(&m).unwrap(), S1S3Class::MoebiusPlusTrivial { rank: 3 });
        let n = LowDimBundle::s1s3(3, true, 4, 0, None).unwrap();
        assert_eq!(n.orientation_lift_trivial(), Some(false));
        assert_eq!(classify_s1s3(&n).unwrap().verdict(), Verdict::Obstructed);
    }

    #[test]
    fn s1s3_validation() {
        assert!(LowDimBundle::s1s3(3, false, 0, 1, None).is_err());
        assert!(LowDimBundle::s1s3(2, false, 0, 1, None).is_err());
        assert!(LowDimBundle::s1s3(2, false, 3, 0, None).is_err());
        assert!(LowDimBundle::s1s3(4, true, 0, 2, None).is_err());
        assert!(LowDimBundle::s1s3(4, false, 0, 0, Some(true)).is_err());
        assert!(LowDimBundle::s1s3(4, true, 2, 0, Some(true)).is_err());
    }

    #[test]
    fn s1s2_examples() {
        let l = LowDimBundle::s1s2(1, true, 0, false).unwrap();
        assert_eq!(classify_s1s2(&l).unwrap().to_string(), "S1: rank 1 (moebius); S2: rank 0; trivial 0");
        let p = LowDimBundle::s1s2(2, false, 5, false).unwrap();
        assert_eq!(classify_s1s2(&p).unwrap().s2_part, S2Part::Plane { euler: 5 });
        let n = LowDimBundle::s1s2(2, true, 0, false).unwrap();
        assert_eq!(classify_s1s2(&n).unwrap().s2_part, S2Part::None);
        let h = LowDimBundle::s1s2(5, true, 0, true).unwrap();
        let d = classify_s1s2(&h).unwrap();
        assert_eq!(d.trivial, 2);
        assert_eq!(d.verdict(), Verdict::KnownNonnegativelyCurved);
        assert!(LowDimBundle::s1s2(2, true, 1, false).is_err());
    }

    #[test]
    fn rational_descriptors() {
        let b = LowDimBundle::s1s3(4, false, 3, -2, None).unwrap().rational_descriptor().unwrap();
        assert_eq!(b.pontrjagin(1).to_string(), "3*s*t1");
        assert_eq!(b.euler().unwrap().to_string(), "-2*s*t1");
        let b = LowDimBundle::s1s3(3, true, 1, 0, None).unwrap().rational_descriptor().unwrap();
        assert!(!b.is_oriented());
        let b = LowDimBundle::s1s2(2, false, 4, false).unwrap().rational_descriptor().unwrap();
        assert_eq!(b.euler().unwrap().to_string(), "4*s");
    }
}
