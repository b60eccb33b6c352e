//! The family invariant `d(W)` and Grauert-Mulich restriction constraints.
//!
//! For a family `W` of curves covering `Z`, the slopes of the HN factors of a
//! semistable bundle restricted to a generic member differ consecutively by at
//! most `d(W)`. For complete families `d(W) = -μ_min` of the kernel of the
//! evaluation map of the normal bundle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GmError {
    #[error("normal bundle degree {0} is negative, so it is not globally generated")]
    NotGloballyGenerated(i64),
    #[error("normal bundle is trivial; d(W) is undefined")]
    TrivialNormalBundle,
    #[error("dim|L| = {0} must be at least 3")]
    PencilTooSmall(i64),
    #[error("line bundle degree {0} must be at least 2")]
    DegreeTooSmall(i64),
    #[error("slope profile is not weakly decreasing")]
    NotSorted,
    #[error("rank must be at least 1")]
    InvalidRank,
}

/// Descriptor of a covering family; `{"kind": "rational", ...}` on the wire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveFamilyKind {
    /// Rational curves with normal bundle `⊕ O(a_i)`.
    Rational { normal_degrees: Vec<i64> },
    /// Base curves of pencils in `|L|`.
    EllipticPencil {
        #[serde(rename = "dim_L")]
        dim_l: i64,
    },
    /// A caller-supplied `μ_max` of the relative cotangent sheaf, taken on trust.
    Supplied { mu_max: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInvariant {
    #[serde(rename = "dW")]
    pub d_w: Rational,
    /// false for [`CurveFamilyKind::Supplied`]
    pub validated: bool,
}

impl CurveFamilyKind {
    pub fn d_invariant(&self) -> Result<FamilyInvariant, GmError> {
        Ok(match self {
            CurveFamilyKind::Rational { normal_degrees } => FamilyInvariant {
                d_w: d_rational(normal_degrees)?,
                validated: true,
            },
            CurveFamilyKind::EllipticPencil { dim_l } => FamilyInvariant {
                d_w: d_elliptic(*dim_l)?,
                validated: true,
            },
            CurveFamilyKind::Supplied { mu_max } => FamilyInvariant {
                d_w: mu_max.clone(),
                validated: false,
            },
        })
    }
}

/// `d(W)` for rational curves with normal bundle `⊕ O(a_i)`, `a_i ≥ 0`.
///
/// The evaluation kernel of `O(a)` on `P1` is `O(-1)^a`, so the kernel of the
/// whole normal bundle has `μ_min = -1` as soon as some `a_i > 0`.
pub fn d_rational(normal_degrees: &[i64]) -> Result<Rational, GmError> {
    if let Some(&a) = normal_degrees.iter().find(|&&a| a < 0) {
        return Err(GmError::NotGloballyGenerated(a));
    }
    let kernel_rank: i64 = normal_degrees.iter().sum();
    if kernel_rank == 0 {
        return Err(GmError::TrivialNormalBundle);
    }
    // kernel ≅ O(-1)^kernel_rank
    let mu_min = Rational::from_int(-1);
    Ok(-mu_min)
}

/// `d(W) = (dim|L| - 1)/(dim|L| - 2)` for the elliptic pencil family.
pub fn d_elliptic(dim_l: i64) -> Result<Rational, GmError> {
    if dim_l < 3 {
        return Err(GmError::PencilTooSmall(dim_l));
    }
    Ok(Rational::new(dim_l - 1, dim_l - 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBundle {
    pub rank: i64,
    pub degree: i64,
    pub slope: Rational,
}

/// The kernel `R` of `O_C ⊗ H0(M) → M` for a degree-`n` line bundle `M` on an
/// elliptic curve `C`: rank `n - 1`, degree `-n`.
pub fn kernel_slope(n: i64) -> Result<KernelBundle, GmError> {
    if n < 2 {
        return Err(GmError::DegreeTooSmall(n));
    }
    Ok(KernelBundle {
        rank: n - 1,
        degree: -n,
        slope: Rational::new(-n, n - 1),
    })
}

/// Every consecutive gap of a weakly decreasing slope profile is at most `d_w`.
pub fn gm_gap_ok(slope_profile: &[Rational], d_w: &Rational) -> Result<bool, GmError> {
    if slope_profile.windows(2).any(|w| w[0] < w[1]) {
        return Err(GmError::NotSorted);
    }
    Ok(slope_profile.windows(2).all(|w| &(&w[0] - &w[1]) <= d_w))
}

/// Weakly decreasing degrees of a split bundle `⊕ O(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingType(pub Vec<i64>);

impl SplittingType {
    pub fn profile(&self) -> Vec<Rational> {
        self.0.iter().map(|&a| Rational::from_int(a)).collect()
    }
}

/// Splitting types on a generic line of a `d(W) = 1` rational family:
/// weakly decreasing with consecutive differences at most one. Ascending
/// lexicographic order.
pub fn splitting_types_rational(rank: i64, total_degree: i64) -> Result<Vec<SplittingType>, GmError> {
    if rank < 1 {
        return Err(GmError::InvalidRank);
    }
    let lo = total_degree.div_euclid(rank) - rank;
    let hi = -((-total_degree).div_euclid(rank)) + rank;
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(rank as usize);
    for first in (lo..=hi).rev() {
        parts.push(first);
        extend_gapless(first, lo, rank - 1, total_degree - first, &mut parts, &mut out);
        parts.pop();
    }
    out.sort();
    Ok(out)
}

fn extend_gapless(
    prev: i64,
    lo: i64,
    left: i64,
    rest: i64,
    parts: &mut Vec<i64>,
    out: &mut Vec<SplittingType>,
) {
    if left == 0 {
        if rest == 0 {
            out.push(SplittingType(parts.clone()));
        }
        return;
    }
    for next in [prev, prev - 1] {
        if next < lo {
            continue;
        }
        parts.push(next);
        extend_gapless(next, lo, left - 1, rest - next, parts, out);
        parts.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticRestriction {
    pub decomposable: Vec<SplittingType>,
    /// The restriction may instead be a semistable, possibly indecomposable,
    /// rank-two bundle.
    pub semistable_alternative_allowed: bool,
}

/// Restriction of a semistable rank-two bundle to a generic elliptic member:
/// either semistable or `L1 ⊕ L2` with `deg L1 - deg L2 ∈ {0, 1}`.
pub fn restriction_types_elliptic(total_degree: i64) -> EllipticRestriction {
    let high = -((-total_degree).div_euclid(2));
    let low = total_degree.div_euclid(2);
    EllipticRestriction {
        decomposable: vec![SplittingType(vec![high, low])],
        semistable_alternative_allowed: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(v: &[i64]) -> SplittingType {
        SplittingType(v.to_vec())
    }

    #[test]
    fn rational_examples() {
        assert_eq!(d_rational(&[1, 1]), Ok(Rational::one()));
        assert_eq!(d_rational(&[1; 4]), Ok(Rational::one()));
        assert_eq!(d_rational(&[0, 1, 1]), Ok(Rational::one()));
        assert_eq!(d_rational(&[1, -1]), Err(GmError::NotGloballyGenerated(-1)));
        assert_eq!(d_rational(&[0, 0]), Err(GmError::TrivialNormalBundle));
        assert_eq!(d_rational(&[]), Err(GmError::TrivialNormalBundle));
    }

    #[test]
    fn elliptic_examples() {
        // h0(O_P3(2)) = 10
        assert_eq!(d_elliptic(10 - 1), Ok(Rational::new(8, 7)));
        assert_eq!(d_elliptic(3), Ok(Rational::from_int(2)));
        assert_eq!(d_elliptic(4), Ok(Rational::new(3, 2)));
        assert_eq!(d_elliptic(2), Err(GmError::PencilTooSmall(2)));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_slope(2).unwrap();
        assert_eq!((k.rank, k.degree, k.slope), (1, -2, Rational::from_int(-2)));
        let k = kernel_slope(3).unwrap();
        assert_eq!((k.rank, k.degree, k.slope), (2, -3, Rational::new(-3, 2)));
        assert_eq!(kernel_slope(1), Err(GmError::DegreeTooSmall(1)));
        for dim_l in 3..=20 {
            assert_eq!(
                d_elliptic(dim_l).unwrap(),
                -kernel_slope(dim_l - 1).unwrap().slope
            );
        }
    }

    #[test]
    fn gap_examples() {
        let one = Rational::one();
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>();
        assert_eq!(gm_gap_ok(&r(&[1, 0]), &one), Ok(true));
        assert_eq!(gm_gap_ok(&r(&[2, 0]), &one), Ok(false));
        assert_eq!(gm_gap_ok(&[], &one), Ok(true));
        assert_eq!(gm_gap_ok(&r(&[0, 1]), &one), Err(GmError::NotSorted));
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_types_rational(2, -1), Ok(vec![st(&[0, -1])]));
        assert_eq!(splitting_types_rational(2, 0), Ok(vec![st(&[0, 0])]));
        assert_eq!(splitting_types_rational(1, 5), Ok(vec![st(&[5])]));
        assert_eq!(
            splitting_types_rational(3, 0),
            Ok(vec![st(&[0, 0, 0]), st(&[1, 0, -1])])
        );
        assert_eq!(splitting_types_rational(0, 0), Err(GmError::InvalidRank));
    }

    #[test]
    fn elliptic_restriction_examples() {
        let r = restriction_types_elliptic(-8);
        assert_eq!(r.decomposable, vec![st(&[-4, -4])]);
        assert!(r.semistable_alternative_allowed);
        assert_eq!(restriction_types_elliptic(-1).decomposable, vec![st(&[0, -1])]);
        assert_eq!(restriction_types_elliptic(0).decomposable, vec![st(&[0, 0])]);
        assert_eq!(restriction_types_elliptic(7).decomposable, vec![st(&[4, 3])]);
    }

    #[test]
    fn family_json() {
        let f: CurveFamilyKind =
            serde_json::from_str(r#"{"kind":"rational","normal_degrees":[1,1]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&f.d_invariant().unwrap()).unwrap(),
            r#"{"dW":"1","validated":true}"#
        );
        let f: CurveFamilyKind =
            serde_json::from_str(r#"{"kind":"elliptic_pencil","dim_L":9}"#).unwrap();
        assert_eq!(f.d_invariant().unwrap().d_w, Rational::new(8, 7));
        let f: CurveFamilyKind =
            serde_json::from_str(r#"{"kind":"supplied","mu_max":"5/3"}"#).unwrap();
        assert!(!f.d_invariant().unwrap().validated);
    }
}
