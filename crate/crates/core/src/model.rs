//! Intersection-number model of a threefold `Z` with half-anticanonical `L`
//! and of rank-two bundles on it.
//!
//! We write `λ = c1(L)`, so `c1(Z) = 2λ`. A rank-two bundle `E` is recorded by
//! the six intersection numbers its Riemann-Roch computation needs; no Picard
//! lattice is modelled, so `c1(E)` need not be a multiple of `λ`.
//!
//! Slopes are taken on the base curve of a generic pencil in `|L|`, whose
//! class is `λ²`: `μ(E) = c1(E)·λ² / 2` and `μ(L) = λ³`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("λ·c2(Z) = {0}, but Todd3(Z) = λ·c2(Z)/12 = 1 forces 12")]
    ToddViolation(i64),
    #[error("λ³ = {0} must be at least 1")]
    NonPositiveDegree(i64),
    #[error("dim|L| = {0} must be at least 3")]
    PencilTooSmall(i64),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("no L-twist puts μ = {mu} into [1 - {mu_l}, 0)")]
    NotNormalizable { mu: Rational, mu_l: i64 },
    #[error("intersection number overflow")]
    Overflow,
}

/// Raw threefold data; see [`validate_threefold`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldInvariants {
    /// `λ³`
    pub lambda3: i64,
    /// `λ·c2(Z)`
    #[serde(rename = "lambda_c2Z")]
    pub lambda_c2z: i64,
    /// `dim |L|`
    #[serde(rename = "dim_L")]
    pub dim_l: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// Threefold data that passed [`validate_threefold`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ValidatedThreefold(ThreefoldInvariants);

impl ValidatedThreefold {
    pub fn invariants(&self) -> &ThreefoldInvariants {
        &self.0
    }

    pub fn lambda3(&self) -> i64 {
        self.0.lambda3
    }

    pub fn lambda_c2z(&self) -> i64 {
        self.0.lambda_c2z
    }

    pub fn dim_l(&self) -> i64 {
        self.0.dim_l
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    /// `μ(L) = λ³`.
    pub fn mu_l(&self) -> i64 {
        self.0.lambda3
    }
}

impl TryFrom<ThreefoldInvariants> for ValidatedThreefold {
    type Error = ModelError;

    fn try_from(inv: ThreefoldInvariants) -> Result<Self, ModelError> {
        validate_threefold(inv)
    }
}

pub fn validate_threefold(inv: ThreefoldInvariants) -> Result<ValidatedThreefold, ModelError> {
    if inv.lambda_c2z != 12 {
        return Err(ModelError::ToddViolation(inv.lambda_c2z));
    }
    if inv.lambda3 < 1 {
        return Err(ModelError::NonPositiveDegree(inv.lambda3));
    }
    if inv.dim_l < 3 {
        return Err(ModelError::PencilTooSmall(inv.dim_l));
    }
    Ok(ValidatedThreefold(inv))
}

/// Catalog names in listing order, with `λ³`.
pub const CATALOG: [(&str, i64, &str); 5] = [
    ("p3-o2", 8, "projective 3-space with L = O(2)"),
    ("cubic", 3, "cubic threefold in P^4, L = O(1)"),
    ("flag", 6, "flag manifold F(1,2) of P^2, L = O(1,1)"),
    ("quadric-intersection", 4, "intersection of two quadrics in P^5, L = O(1)"),
    ("double-solid", 2, "double cover of P^3 branched along a quartic, L = pullback of O(1)"),
];

/// Looks up one of the built-in threefolds. Each has `λ·c2(Z) = 12` and
/// `dim|L| = λ³ + 1`, the latter from `χ(L) = λ³ + 2` and Kodaira vanishing.
pub fn catalog_lookup(name: &str) -> Result<ValidatedThreefold, ModelError> {
    let (entry, lambda3, _) = CATALOG
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| ModelError::UnknownEntry(name.to_string()))?;
    validate_threefold(ThreefoldInvariants {
        lambda3: *lambda3,
        lambda_c2z: 12,
        dim_l: lambda3 + 1,
        name: Some(entry.to_string()),
    })
}

pub fn catalog_description(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|(n, _, _)| *n == name).map(|(_, _, d)| *d)
}

/// Chern data of a rank-two bundle `E`, as intersection numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleChern {
    /// `c1(E)³`
    pub c1_cubed: i64,
    /// `c1(E)·c2(E)`
    pub c1_c2: i64,
    /// `c1(E)²·λ`
    pub c1sq_lambda: i64,
    /// `c2(E)·λ`
    pub c2_lambda: i64,
    /// `c1(E)·λ²`
    pub c1_lambdasq: i64,
    /// `c1(E)·c2(Z)`
    #[serde(rename = "c1_c2Z")]
    pub c1_c2z: i64,
}

impl BundleChern {
    pub const RANK: u32 = 2;

    /// `L^p ⊕ L^q`: `c1 = (p+q)λ`, `c2 = pq·λ²`.
    pub fn sum_of_l_powers(p: i64, q: i64, threefold: &ValidatedThreefold) -> Self {
        let l3 = threefold.lambda3();
        let s = p + q;
        BundleChern {
            c1_cubed: s * s * s * l3,
            c1_c2: s * p * q * l3,
            c1sq_lambda: s * s * l3,
            c2_lambda: p * q * l3,
            c1_lambdasq: s * l3,
            c1_c2z: s * threefold.lambda_c2z(),
        }
    }

    /// `p1(E)·λ = (c1² - 2c2)·λ`.
    pub fn p1_lambda(&self) -> i64 {
        self.c1sq_lambda - 2 * self.c2_lambda
    }

    /// `μ(E) = c1(E)·λ² / 2`.
    pub fn mu(&self) -> Rational {
        Rational::new(self.c1_lambdasq, 2)
    }
}

pub fn slope(chern: &BundleChern, _threefold: &ValidatedThreefold) -> Rational {
    chern.mu()
}

pub fn mu_l(threefold: &ValidatedThreefold) -> i64 {
    threefold.mu_l()
}

/// Chern data of `E ⊗ L^m`, from `c1' = c1 + 2mλ` and `c2' = c2 + m·c1λ + m²λ²`.
pub fn twist(
    chern: &BundleChern,
    threefold: &ValidatedThreefold,
    m: i64,
) -> Result<BundleChern, ModelError> {
    let m = i128::from(m);
    let l3 = i128::from(threefold.lambda3());
    let c1_cubed = i128::from(chern.c1_cubed);
    let c1_c2 = i128::from(chern.c1_c2);
    let c1sq_l = i128::from(chern.c1sq_lambda);
    let c2_l = i128::from(chern.c2_lambda);
    let c1_lsq = i128::from(chern.c1_lambdasq);
    let c1_c2z = i128::from(chern.c1_c2z);
    let m2 = m * m;
    let m3 = m2 * m;

    let narrow = |v: i128| i64::try_from(v).map_err(|_| ModelError::Overflow);
    Ok(BundleChern {
        c1_cubed: narrow(c1_cubed + 6 * m * c1sq_l + 12 * m2 * c1_lsq + 8 * m3 * l3)?,
        c1_c2: narrow(c1_c2 + m * (c1sq_l + 2 * c2_l) + 3 * m2 * c1_lsq + 2 * m3 * l3)?,
        c1sq_lambda: narrow(c1sq_l + 4 * m * c1_lsq + 4 * m2 * l3)?,
        c2_lambda: narrow(c2_l + m * c1_lsq + m2 * l3)?,
        c1_lambdasq: narrow(c1_lsq + 2 * m * l3)?,
        c1_c2z: narrow(c1_c2z + 2 * m * i128::from(threefold.lambda_c2z()))?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationResult {
    pub twist_exponent: i64,
    pub normalized: BundleChern,
    pub mu_normalized: Rational,
}

/// Twists `E` so that `1 - μ(L) ≤ μ(E(m)) < 0`.
///
/// The window is one unit narrower than the twist step `μ(L)`, so the twist
/// is unique when it exists and fails for slopes congruent to the gap.
pub fn normalize(
    chern: &BundleChern,
    threefold: &ValidatedThreefold,
) -> Result<NormalizationResult, ModelError> {
    let mu = chern.mu();
    let mu_l = threefold.mu_l();
    // unique m with -μ(L) ≤ μ + m·μ(L) < 0
    let q = &mu / mu_l;
    let m = -q.floor_i64().ok_or(ModelError::Overflow)? - 1;
    let shifted = &mu + &Rational::from_int(m.checked_mul(mu_l).ok_or(ModelError::Overflow)?);
    if shifted < Rational::from_int(1 - mu_l) {
        return Err(ModelError::NotNormalizable { mu, mu_l });
    }
    let normalized = twist(chern, threefold, m)?;
    debug_assert_eq!(normalized.mu(), shifted);
    Ok(NormalizationResult {
        twist_exponent: m,
        normalized,
        mu_normalized: shifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> ValidatedThreefold {
        catalog_lookup("p3-o2").unwrap()
    }

    fn with_mu2(c1_lambdasq: i64) -> BundleChern {
        BundleChern {
            c1_lambdasq,
            ..Default::default()
        }
    }

    #[test]
    fn validate_examples() {
        let ok = validate_threefold(ThreefoldInvariants {
            lambda3: 8,
            lambda_c2z: 12,
            dim_l: 9,
            name: None,
        });
        assert!(ok.is_ok());
        let todd = validate_threefold(ThreefoldInvariants {
            lambda3: 8,
            lambda_c2z: 10,
            dim_l: 9,
            name: None,
        });
        assert_eq!(todd, Err(ModelError::ToddViolation(10)));
        let deg = validate_threefold(ThreefoldInvariants {
            lambda3: 0,
            lambda_c2z: 12,
            dim_l: 3,
            name: None,
        });
        assert_eq!(deg, Err(ModelError::NonPositiveDegree(0)));
        let small = validate_threefold(ThreefoldInvariants {
            lambda3: 2,
            lambda_c2z: 12,
            dim_l: 2,
            name: None,
        });
        assert_eq!(small, Err(ModelError::PencilTooSmall(2)));
    }

    #[test]
    fn p3_chern_classes_give_the_o2_entry() {
        // c(P3) = (1+H)^4: c1 = 4H, c2 = 6H². λ = 2H, H³ = 1.
        let (c2z, lambda) = (6, 2);
        assert_eq!(lambda * c2z, 12);
        assert_eq!(lambda * lambda * lambda, 8);
        // degree-2 forms in 4 variables
        let h0 = 4 * 5 / 2;
        let e = p3();
        assert_eq!((e.lambda3(), e.dim_l()), (8, h0 - 1));
    }

    #[test]
    fn cubic_and_double_solid_by_adjunction() {
        // cubic X ⊂ P4: K = (-5+3)H = -2H, so L = H, λ³ = H³ = 3, |H| = P4.
        let cubic = catalog_lookup("cubic").unwrap();
        assert_eq!((cubic.lambda3(), cubic.dim_l()), (3, 4));
        // double cover π of P3: λ = π*H, λ³ = 2·1, h0 = h0(O_P3(1)) = 4.
        let ds = catalog_lookup("double-solid").unwrap();
        assert_eq!((ds.lambda3(), ds.dim_l()), (2, 3));
    }

    #[test]
    fn unknown_entry() {
        assert_eq!(
            catalog_lookup("quartic"),
            Err(ModelError::UnknownEntry("quartic".into()))
        );
    }

    #[test]
    fn slope_examples() {
        let z = p3();
        assert_eq!(slope(&with_mu2(-8), &z), Rational::from_int(-4));
        assert_eq!(slope(&with_mu2(0), &z), Rational::zero());
        assert_eq!(slope(&with_mu2(-7), &z), Rational::new(-7, 2));
        assert_eq!(mu_l(&z), 8);
    }

    #[test]
    fn twist_of_zero_data() {
        let z = p3();
        let t = twist(&BundleChern::default(), &z, 1).unwrap();
        assert_eq!(t.c1_lambdasq, 16);
        assert_eq!(t.mu(), Rational::from_int(8));
        // O ⊕ O twisted once is L ⊕ L
        assert_eq!(t, BundleChern::sum_of_l_powers(1, 1, &z));
    }

    #[test]
    fn twist_zero_is_identity() {
        let z = p3();
        let x = BundleChern {
            c1_cubed: 3,
            c1_c2: -5,
            c1sq_lambda: 7,
            c2_lambda: 11,
            c1_lambdasq: -13,
            c1_c2z: 17,
        };
        assert_eq!(twist(&x, &z, 0).unwrap(), x);
    }

    #[test]
    fn twist_overflow_is_reported() {
        let z = p3();
        assert_eq!(
            twist(&BundleChern::default(), &z, 1 << 30),
            Err(ModelError::Overflow)
        );
    }

    #[test]
    fn normalize_examples() {
        let z = p3();
        let r = normalize(&with_mu2(-8), &z).unwrap();
        assert_eq!(r.twist_exponent, 0);
        assert_eq!(r.mu_normalized, Rational::from_int(-4));

        let r = normalize(&with_mu2(24), &z).unwrap();
        assert_eq!(r.twist_exponent, -2);
        assert_eq!(r.mu_normalized, Rational::from_int(-4));

        assert!(matches!(
            normalize(&with_mu2(0), &z),
            Err(ModelError::NotNormalizable { .. })
        ));
    }

    #[test]
    fn normalize_matches_window_scan() {
        let z = p3();
        for c in -60..=60 {
            let x = with_mu2(c);
            let hits: Vec<i64> = (-10..=10)
                .filter(|&m| {
                    let mu = x.mu() + Rational::from_int(8 * m);
                    mu >= Rational::from_int(-7) && mu < Rational::zero()
                })
                .collect();
            match normalize(&x, &z) {
                Ok(r) => assert_eq!(hits, vec![r.twist_exponent], "c1λ² = {c}"),
                Err(_) => assert!(hits.is_empty(), "c1λ² = {c}"),
            }
        }
    }

    #[test]
    fn json_field_names() {
        let z = p3();
        let v = serde_json::to_value(&z).unwrap();
        assert_eq!(v["lambda_c2Z"], 12);
        assert_eq!(v["dim_L"], 9);
        let c: BundleChern = serde_json::from_str(
            r#"{"c1_cubed":-8,"c1_c2":-4,"c1sq_lambda":8,"c2_lambda":4,"c1_lambdasq":-8,"c1_c2Z":-12}"#,
        )
        .unwrap();
        assert_eq!(c.c1_c2z, -12);
        assert_eq!(c.p1_lambda(), 0);
    }
}
