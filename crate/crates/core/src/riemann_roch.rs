//! Riemann-Roch on `Z` and on a generic surface `S ∈ |L|`, and the rank and
//! degree of the spectrum bundle.
//!
//! The degree is computed twice: once by its closed formula and once as
//! `-χ(E) - r`. [`spectrum_degree`] refuses to answer when the two disagree.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{normalize, BundleChern, ModelError, ValidatedThreefold};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RrError {
    #[error("χ(E) = {0} is not an integer; the Chern data is inconsistent")]
    NonIntegralChi(Rational),
    #[error("spectrum rank r = {0} is negative; no semistable bundle has this data")]
    NegativeRank(Rational),
    #[error("spectrum rank r = {0} is not an integer")]
    NonIntegralRank(Rational),
    #[error("spectrum degree d = {0} is not an integer")]
    NonIntegralDegree(Rational),
    #[error("closed degree formula gives {closed}, -χ(E) - r gives {route}")]
    RouteMismatch { closed: Rational, route: Rational },
    #[error("μ(E) = {mu} is outside the window [1 - {mu_l}, 0)")]
    NotNormalized { mu: Rational, mu_l: i64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Todd class of `Z` with `c1(Z) = 2λ`:
/// `Td1 = λ`, `Td2 = λ²/3 + c2(Z)/12`, `Td3 = λ·c2(Z)/12`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToddClass {
    /// coefficient of `λ` in `Td1`
    pub td1_lambda: Rational,
    /// coefficient of `λ²` in `Td2`
    pub td2_lambdasq: Rational,
    /// coefficient of `c2(Z)` in `Td2`
    #[serde(rename = "td2_c2Z")]
    pub td2_c2z: Rational,
    /// degree of `Td3`, i.e. `χ(O_Z)`
    pub td3: Rational,
}

impl ToddClass {
    /// `c1(E)·Td2(Z)`
    pub fn pair_td2(&self, chern: &BundleChern) -> Rational {
        &self.td2_lambdasq * chern.c1_lambdasq + &self.td2_c2z * chern.c1_c2z
    }

    /// `ch2(E)·Td1(Z) = p1(E)·λ / 2`
    pub fn pair_td1(&self, chern: &BundleChern) -> Rational {
        &self.td1_lambda * &Rational::new(chern.p1_lambda(), 2)
    }
}

pub fn todd_components(threefold: &ValidatedThreefold) -> ToddClass {
    ToddClass {
        td1_lambda: Rational::one(),
        td2_lambdasq: Rational::new(1, 3),
        td2_c2z: Rational::new(1, 12),
        td3: Rational::new(threefold.lambda_c2z(), 12),
    }
}

/// `χ(E) = ch3(E) + ch2(E)·Td1 + c1(E)·Td2 + 2·Td3`, with
/// `ch3 = (c1³ - 3c1c2)/6`.
pub fn euler_char_threefold(chern: &BundleChern, threefold: &ValidatedThreefold) -> Rational {
    let td = todd_components(threefold);
    let ch3 = Rational::new(chern.c1_cubed - 3 * chern.c1_c2, 6);
    ch3 + td.pair_td1(chern) + td.pair_td2(chern) + &td.td3 * 2
}

pub fn euler_char_integral(
    chern: &BundleChern,
    threefold: &ValidatedThreefold,
) -> Result<i64, RrError> {
    let chi = euler_char_threefold(chern, threefold);
    chi.to_i64().ok_or(RrError::NonIntegralChi(chi))
}

/// `χ(L^p)`, read off the rank-two formula applied to `L^p ⊕ O`.
pub fn euler_char_line_power(p: i64, threefold: &ValidatedThreefold) -> Rational {
    let split = BundleChern::sum_of_l_powers(p, 0, threefold);
    euler_char_threefold(&split, threefold) - todd_components(threefold).td3
}

/// `χ(E_S)` on a generic `S ∈ |L|`:
/// `-c2·λ + c1²·λ/2 + c1·λ²/2 + 2`.
pub fn euler_char_surface(chern: &BundleChern) -> Rational {
    Rational::from_int(-chern.c2_lambda)
        + Rational::new(chern.c1sq_lambda, 2)
        + Rational::new(chern.c1_lambdasq, 2)
        + 2
}

/// `r = -p1(E)·λ/2 - μ(E) - 2`, unchecked.
pub fn spectrum_rank_value(chern: &BundleChern) -> Rational {
    -Rational::new(chern.p1_lambda(), 2) - chern.mu() - 2
}

/// Closed degree formula `(3c1c2 - c1³)/6 - c1·c2(Z)/12 + μ(E)/3`, unchecked.
pub fn spectrum_degree_closed(chern: &BundleChern) -> Rational {
    Rational::new(3 * chern.c1_c2 - chern.c1_cubed, 6) - Rational::new(chern.c1_c2z, 12)
        + chern.mu() / 3
}

/// Rank of the spectrum. The caller asserts that `E` is semistable and
/// normalized; a negative value certifies that one of the two fails.
pub fn spectrum_rank(chern: &BundleChern, _threefold: &ValidatedThreefold) -> Result<i64, RrError> {
    let r = spectrum_rank_value(chern);
    let n = r.to_i64().ok_or_else(|| RrError::NonIntegralRank(r.clone()))?;
    if n < 0 {
        return Err(RrError::NegativeRank(r));
    }
    Ok(n)
}

/// Degree of the spectrum, checked against `-χ(E) - r`.
///
/// No sign condition is placed on `r` here, so the value is available for
/// unnormalized data as a diagnostic.
pub fn spectrum_degree(chern: &BundleChern, threefold: &ValidatedThreefold) -> Result<i64, RrError> {
    let closed = spectrum_degree_closed(chern);
    let route = -euler_char_threefold(chern, threefold) - spectrum_rank_value(chern);
    if closed != route {
        return Err(RrError::RouteMismatch { closed, route });
    }
    closed.to_i64().ok_or(RrError::NonIntegralDegree(closed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumInvariants {
    pub r: i64,
    pub d: i64,
    pub chi_e: i64,
    pub chi_e_s: i64,
}

/// Rank, degree and both Euler characteristics of a normalized bundle.
pub fn spectrum_invariants(
    chern: &BundleChern,
    threefold: &ValidatedThreefold,
) -> Result<SpectrumInvariants, RrError> {
    let mu = chern.mu();
    let mu_l = threefold.mu_l();
    if mu >= Rational::zero() || mu < Rational::from_int(1 - mu_l) {
        return Err(RrError::NotNormalized { mu, mu_l });
    }
    let chi_e = euler_char_integral(chern, threefold)?;
    let r = spectrum_rank(chern, threefold)?;
    let d = spectrum_degree(chern, threefold)?;
    let chi_s = euler_char_surface(chern);
    let chi_e_s = chi_s.to_i64().ok_or(RrError::NonIntegralRank(chi_s))?;
    debug_assert_eq!(r, -chi_e_s);
    debug_assert_eq!(d, -chi_e - r);
    Ok(SpectrumInvariants { r, d, chi_e, chi_e_s })
}

/// Normalizes `E` by an `L`-twist and then computes its spectrum invariants.
pub fn normalized_spectrum_invariants(
    chern: &BundleChern,
    threefold: &ValidatedThreefold,
) -> Result<(i64, SpectrumInvariants), RrError> {
    let norm = normalize(chern, threefold)?;
    let inv = spectrum_invariants(&norm.normalized, threefold)?;
    Ok((norm.twist_exponent, inv))
}
