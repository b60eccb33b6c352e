//! Spectra `H = ⊕ O(j)^{m_j}` on `P1` and what can be said about them from
//! `(r, d)` alone.
//!
//! For a normalized semistable `E`, `h1(E(l)) = h0(H(l))` for `l ≤ 0` and
//! `h2(E(l)) = h1(H(l))` for `l ≥ -1`. Connectedness (no gaps above 1 or
//! below -2) holds when `|K_S^-1|` is ample on a generic `S ∈ |L|`; that
//! hypothesis is the caller's to assert, so the filter is opt-in.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("spectrum rank {0} is out of range")]
    InvalidRank(i64),
    #[error("twist l = {l} is outside the range {range} where the spectrum computes this group")]
    TwistOutOfRange { l: i64, range: &'static str },
    #[error("search is unbounded: enable bounds or connectedness, or give a support window")]
    UnboundedSearch,
}

/// Multiplicity vector `j ↦ m_j` with finite support and `m_j ≥ 1` on it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Spectrum {
    mult: BTreeMap<i64, u64>,
}

impl Spectrum {
    pub fn empty() -> Self {
        Spectrum::default()
    }

    /// Zero multiplicities are dropped; repeated keys add up.
    pub fn from_multiplicities<I: IntoIterator<Item = (i64, u64)>>(pairs: I) -> Self {
        let mut mult = BTreeMap::new();
        for (j, m) in pairs {
            if m > 0 {
                *mult.entry(j).or_insert(0) += m;
            }
        }
        Spectrum { mult }
    }

    /// One summand `O(j)` per entry.
    pub fn from_parts(parts: &[i64]) -> Self {
        Spectrum::from_multiplicities(parts.iter().map(|&j| (j, 1)))
    }

    pub fn multiplicity(&self, j: i64) -> u64 {
        self.mult.get(&j).copied().unwrap_or(0)
    }

    /// `(j, m_j)` in ascending `j`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, u64)> + '_ {
        self.mult.iter().map(|(&j, &m)| (j, m))
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn a(&self) -> Option<i64> {
        self.mult.keys().next().copied()
    }

    pub fn b(&self) -> Option<i64> {
        self.mult.keys().next_back().copied()
    }

    pub fn rank(&self) -> i64 {
        self.mult.values().map(|&m| m as i64).sum()
    }

    pub fn degree(&self) -> i64 {
        self.mult.iter().map(|(&j, &m)| j * m as i64).sum()
    }

    /// Summands in descending order, with repetition.
    pub fn parts(&self) -> Vec<i64> {
        self.iter()
            .rev()
            .flat_map(|(j, m)| std::iter::repeat_n(j, m as usize))
            .collect()
    }

    /// `j ↦ m_{-1-j}`, the spectrum of the dual twisted by `-1`.
    pub fn mirror(&self) -> Self {
        Spectrum::from_multiplicities(self.iter().map(|(j, m)| (-1 - j, m)))
    }

    /// Canonical order: larger descending parts list first.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        other.parts().cmp(&self.parts())
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (j, m)) in self.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{j}:{m}")?;
        }
        f.write_str("}")
    }
}

/// `{"j": m_j}` with keys in descending `j`.
struct MultiplicityMap<'a>(&'a Spectrum);

impl Serialize for MultiplicityMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.mult.len()))?;
        for (j, m) in self.0.iter().rev() {
            map.serialize_entry(&j.to_string(), &m)?;
        }
        map.end()
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry("multiplicities", &MultiplicityMap(self))?;
        map.serialize_entry("a", &self.a())?;
        map.serialize_entry("b", &self.b())?;
        map.serialize_entry("r", &self.rank())?;
        map.serialize_entry("d", &self.degree())?;
        map.end()
    }
}

/// Accepts the serialized form (derived fields are checked when present) or
/// a bare `{"j": m_j}` map.
impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Full {
            multiplicities: BTreeMap<String, u64>,
            a: Option<i64>,
            b: Option<i64>,
            r: Option<i64>,
            d: Option<i64>,
        }

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Full(Full),
            Bare(BTreeMap<String, u64>),
        }

        fn parse_map<E: de::Error>(raw: BTreeMap<String, u64>) -> Result<Spectrum, E> {
            let mut pairs = Vec::with_capacity(raw.len());
            for (k, m) in raw {
                let j: i64 = k
                    .trim()
                    .parse()
                    .map_err(|_| E::custom(format!("spectrum key {k:?} is not an integer")))?;
                if m == 0 {
                    return Err(E::custom(format!("zero multiplicity at j = {j}")));
                }
                pairs.push((j, m));
            }
            Ok(Spectrum::from_multiplicities(pairs))
        }

        match Repr::deserialize(deserializer)? {
            Repr::Bare(raw) => parse_map(raw),
            Repr::Full(full) => {
                let s: Spectrum = parse_map(full.multiplicities)?;
                let check = |name: &str, got: Option<i64>, want: Option<i64>| {
                    match got {
                        Some(_) if got != want => Err(de::Error::custom(format!(
                            "field {name} = {got:?} disagrees with multiplicities ({want:?})"
                        ))),
                        _ => Ok(()),
                    }
                };
                check("a", full.a, s.a())?;
                check("b", full.b, s.b())?;
                check("r", full.r, Some(s.rank()))?;
                check("d", full.d, Some(s.degree()))?;
                Ok(s)
            }
        }
    }
}

/// Which admissibility filters [`enumerate_spectra`] applies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumConstraints {
    pub connected: bool,
    pub symmetric: bool,
    pub bounds: bool,
    /// Extra support restriction `[lo, hi]`, intersected with any bound
    /// window. Required when neither `connected` nor `bounds` is set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
}

impl SpectrumConstraints {
    pub fn all() -> Self {
        SpectrumConstraints {
            connected: true,
            symmetric: true,
            bounds: true,
            window: None,
        }
    }
}

/// Gap-freeness above 1 and below -2.
pub fn connectedness_check(s: &Spectrum) -> bool {
    let (Some(a), Some(b)) = (s.a(), s.b()) else {
        return true;
    };
    let upper = b <= 1 || (1..b).all(|j| s.multiplicity(j) > 0);
    let lower = a >= -2 || (a + 1..=-2).all(|j| s.multiplicity(j) > 0);
    upper && lower
}

/// `m_j = m_{-1-j}` for all `j`.
pub fn symmetry_check(s: &Spectrum) -> bool {
    s.iter().all(|(j, m)| s.multiplicity(-1 - j) == m)
}

/// Lower bound on `a` and upper bound on `b` for a connected spectrum:
/// `(d-1)/(r+2) ∓ (r+1)/2`.
pub fn bounds(r: i64, d: i64) -> Result<(Rational, Rational), SpectrumError> {
    if r < 1 {
        return Err(SpectrumError::InvalidRank(r));
    }
    let center = Rational::new(d - 1, r + 2);
    let half = Rational::new(r + 1, 2);
    Ok((&center - &half, center + half))
}

/// Integer support window implied by [`bounds`].
pub fn bound_window(r: i64, d: i64) -> Result<(i64, i64), SpectrumError> {
    let (lo, hi) = bounds(r, d)?;
    // both fit: |d| and r are i64, so the bounds are far from overflow
    Ok((lo.ceil_i64().unwrap(), hi.floor_i64().unwrap()))
}

/// Largest support window a connected spectrum of rank `r ≥ 1` can occupy.
fn connected_window(r: i64) -> (i64, i64) {
    ((-r - 1).min(-2), r.max(1))
}

/// All spectra of rank `r` and degree `d` passing the requested filters, in
/// canonical order (see [`Spectrum::canonical_cmp`]).
pub fn enumerate_spectra(
    r: i64,
    d: i64,
    c: &SpectrumConstraints,
) -> Result<Vec<Spectrum>, SpectrumError> {
    if r < 0 {
        return Err(SpectrumError::InvalidRank(r));
    }
    if r == 0 {
        return Ok(if d == 0 { vec![Spectrum::empty()] } else { vec![] });
    }

    let mut window: Option<(i64, i64)> = c.window;
    let mut narrow = |w: (i64, i64)| {
        window = Some(match window {
            Some((lo, hi)) => (lo.max(w.0), hi.min(w.1)),
            None => w,
        });
    };
    if c.bounds {
        narrow(bound_window(r, d)?);
    }
    if c.connected {
        narrow(connected_window(r));
    }
    let (lo, hi) = window.ok_or(SpectrumError::UnboundedSearch)?;
    if lo > hi {
        return Ok(vec![]);
    }

    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(r as usize);
    descend(hi, lo, r, d, &mut parts, &mut |p| {
        let s = Spectrum::from_parts(p);
        if (!c.connected || connectedness_check(&s)) && (!c.symmetric || symmetry_check(&s)) {
            out.push(s);
        }
    });
    out.sort_by(Spectrum::canonical_cmp);
    Ok(out)
}

/// Weakly decreasing `parts` extended by `left` more values in `[lo, top]`
/// summing to `rest`.
fn descend(
    top: i64,
    lo: i64,
    left: i64,
    rest: i64,
    parts: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if left == 0 {
        if rest == 0 {
            emit(parts);
        }
        return;
    }
    if rest < left * lo || rest > left * top {
        return;
    }
    for j in (lo..=top).rev() {
        parts.push(j);
        descend(j, lo, left - 1, rest - j, parts, emit);
        parts.pop();
    }
}

/// `h1(E(l)) = h0(H(l)) = Σ m_j·max(0, j + l + 1)`, valid for `l ≤ 0`.
pub fn h1_value(s: &Spectrum, l: i64) -> Result<i64, SpectrumError> {
    if l > 0 {
        return Err(SpectrumError::TwistOutOfRange { l, range: "l <= 0" });
    }
    Ok(s.iter().map(|(j, m)| m as i64 * (j + l + 1).max(0)).sum())
}

/// `h2(E(l)) = h1(H(l)) = Σ m_j·max(0, -(j + l + 1))`, valid for `l ≥ -1`.
pub fn h2_value(s: &Spectrum, l: i64) -> Result<i64, SpectrumError> {
    if l < -1 {
        return Err(SpectrumError::TwistOutOfRange { l, range: "l >= -1" });
    }
    Ok(s.iter().map(|(j, m)| m as i64 * (-(j + l + 1)).max(0)).sum())
}

/// `f(l) = Σ_{j ≤ l} m_j`.
pub fn partial_sum_f(s: &Spectrum, l: i64) -> i64 {
    s.mult.range(..=l).map(|(_, &m)| m as i64).sum()
}

/// Twist thresholds past which the cohomology of every admissible spectrum
/// of type `(r, d)` vanishes:
///
/// * `h1(E(-l)) = 0` for all `l ≥ t1`, with `t1 = max(0, ⌊b_max⌋ + 1)`;
/// * `h2(E(l)) = 0` for all `l ≥ t2`, with `t2 = max(-1, -⌈a_min⌉ - 1)`.
///
/// For `r = 0` the answer is `(0, -1)`: nothing survives anywhere in range.
pub fn vanishing_thresholds(r: i64, d: i64) -> Result<(i64, i64), SpectrumError> {
    if r < 0 {
        return Err(SpectrumError::InvalidRank(r));
    }
    if r == 0 {
        return Ok((0, -1));
    }
    let (a_min, b_max) = bound_window(r, d)?;
    Ok(((b_max + 1).max(0), (-a_min - 1).max(-1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub l: i64,
    /// `None` outside `l ≤ 0`
    pub h1: Option<i64>,
    /// `None` outside `l ≥ -1`
    pub h2: Option<i64>,
}

pub fn cohomology_table(s: &Spectrum, l_min: i64, l_max: i64) -> Vec<CohomologyRow> {
    (l_min..=l_max)
        .map(|l| CohomologyRow {
            l,
            h1: h1_value(s, l).ok(),
            h2: h2_value(s, l).ok(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(pairs: &[(i64, u64)]) -> Spectrum {
        Spectrum::from_multiplicities(pairs.iter().copied())
    }

    fn cb() -> SpectrumConstraints {
        SpectrumConstraints {
            connected: true,
            bounds: true,
            ..Default::default()
        }
    }

    #[test]
    fn derived_fields() {
        let s = sp(&[(0, 1), (-1, 1)]);
        assert_eq!((s.a(), s.b(), s.rank(), s.degree()), (Some(-1), Some(0), 2, -1));
        assert_eq!(s.parts(), vec![0, -1]);
        let e = Spectrum::empty();
        assert_eq!((e.a(), e.b(), e.rank(), e.degree()), (None, None, 0, 0));
    }

    #[test]
    fn connectedness_examples() {
        assert!(connectedness_check(&sp(&[(0, 1), (-1, 1)])));
        assert!(!connectedness_check(&sp(&[(2, 1), (0, 1)])));
        assert!(!connectedness_check(&sp(&[(-4, 1), (-2, 1)])));
        assert!(connectedness_check(&sp(&[(3, 1), (2, 1), (1, 1), (-2, 1)])));
        assert!(connectedness_check(&Spectrum::empty()));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(
            bounds(2, -1).unwrap(),
            (Rational::from_int(-2), Rational::from_int(1))
        );
        assert_eq!(
            bounds(1, 0).unwrap(),
            (Rational::new(-4, 3), Rational::new(2, 3))
        );
        let (a0, b0) = bounds(3, 4).unwrap();
        let (a1, b1) = bounds(3, 4 + 5).unwrap();
        assert_eq!((a1 - a0, b1 - b0), (Rational::one(), Rational::one()));
        assert_eq!(bounds(0, 0), Err(SpectrumError::InvalidRank(0)));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_spectra(2, -1, &cb()).unwrap(),
            vec![sp(&[(1, 1), (-2, 1)]), sp(&[(0, 1), (-1, 1)])]
        );
        // {1, -2} is its own mirror under j ↦ -1 - j, so symmetry keeps it
        assert_eq!(
            enumerate_spectra(2, -1, &SpectrumConstraints::all()).unwrap(),
            vec![sp(&[(1, 1), (-2, 1)]), sp(&[(0, 1), (-1, 1)])]
        );
        assert_eq!(
            enumerate_spectra(3, -3, &SpectrumConstraints::all()).unwrap(),
            vec![]
        );
        let connected = SpectrumConstraints {
            connected: true,
            ..Default::default()
        };
        assert_eq!(enumerate_spectra(1, 5, &connected).unwrap(), vec![]);
        assert_eq!(
            enumerate_spectra(0, 0, &SpectrumConstraints::default()).unwrap(),
            vec![Spectrum::empty()]
        );
        assert_eq!(enumerate_spectra(0, 3, &cb()).unwrap(), vec![]);
    }

    #[test]
    fn enumerate_needs_a_window() {
        assert_eq!(
            enumerate_spectra(2, 0, &SpectrumConstraints::default()),
            Err(SpectrumError::UnboundedSearch)
        );
        let w = SpectrumConstraints {
            window: Some((-1, 1)),
            ..Default::default()
        };
        assert_eq!(
            enumerate_spectra(2, 0, &w).unwrap(),
            vec![sp(&[(1, 1), (-1, 1)]), sp(&[(0, 2)])]
        );
        assert_eq!(enumerate_spectra(-1, 0, &cb()), Err(SpectrumError::InvalidRank(-1)));
    }

    #[test]
    fn h1_h2_examples() {
        let n = sp(&[(0, 1), (-1, 1)]);
        assert_eq!(h1_value(&n, 0), Ok(1));
        assert_eq!(h1_value(&n, -1), Ok(0));
        assert_eq!(h1_value(&Spectrum::empty(), -5), Ok(0));
        assert!(h1_value(&n, 1).is_err());

        assert_eq!(h2_value(&n, -1), Ok(1));
        assert_eq!(h2_value(&n, 0), Ok(0));
        assert_eq!(h2_value(&sp(&[(-3, 2)]), -1), Ok(6));
        assert!(h2_value(&n, -2).is_err());
    }

    #[test]
    fn partial_sums() {
        let n = sp(&[(0, 1), (-1, 1)]);
        assert_eq!(partial_sum_f(&n, -1), 1);
        assert_eq!(partial_sum_f(&n, -2), 0);
        assert_eq!(partial_sum_f(&n, 0), 2);
        assert_eq!(partial_sum_f(&n, 7), 2);
    }

    #[test]
    fn thresholds() {
        assert_eq!(vanishing_thresholds(2, -1), Ok((2, 1)));
        assert_eq!(h2_value(&sp(&[(0, 1), (-1, 1)]), 1), Ok(0));
        assert_eq!(vanishing_thresholds(0, 0), Ok((0, -1)));
        assert_eq!(vanishing_thresholds(-1, 0), Err(SpectrumError::InvalidRank(-1)));
    }

    #[test]
    fn thresholds_match_enumerated_extremes() {
        for r in 1..=5 {
            for d in -8..=8 {
                let all = enumerate_spectra(r, d, &cb()).unwrap();
                if all.is_empty() {
                    continue;
                }
                let (t1, t2) = vanishing_thresholds(r, d).unwrap();
                let need1 = all.iter().map(|s| s.b().unwrap() + 1).max().unwrap().max(0);
                let need2 = all.iter().map(|s| -s.a().unwrap() - 1).max().unwrap().max(-1);
                assert!(t1 >= need1 && t2 >= need2, "(r, d) = ({r}, {d})");
                for s in &all {
                    assert_eq!(h1_value(s, -t1), Ok(0));
                    assert_eq!(h2_value(s, t2), Ok(0));
                }
            }
        }
    }

    #[test]
    fn symmetry_examples() {
        assert!(symmetry_check(&sp(&[(0, 1), (-1, 1)])));
        assert!(!symmetry_check(&sp(&[(1, 1), (-1, 1)])));
        assert!(symmetry_check(&Spectrum::empty()));
        assert!(symmetry_check(&sp(&[(2, 3), (-3, 3)])));
    }

    #[test]
    fn json_shape() {
        let s = sp(&[(0, 1), (-1, 1)]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"multiplicities":{"0":1,"-1":1},"a":-1,"b":0,"r":2,"d":-1}"#
        );
        let back: Spectrum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bare: Spectrum = serde_json::from_str(r#"{"-1":1,"0":1}"#).unwrap();
        assert_eq!(bare, s);
        assert!(serde_json::from_str::<Spectrum>(r#"{"0":0}"#).is_err());
        assert!(serde_json::from_str::<Spectrum>(
            r#"{"multiplicities":{"0":1},"a":0,"b":0,"r":1,"d":5}"#
        )
        .is_err());
        let empty = serde_json::to_string(&Spectrum::empty()).unwrap();
        assert_eq!(empty, r#"{"multiplicities":{},"a":null,"b":null,"r":0,"d":0}"#);
        assert_eq!(serde_json::from_str::<Spectrum>(&empty).unwrap(), Spectrum::empty());
    }

    #[test]
    fn table_marks_invalid_cells() {
        let rows = cohomology_table(&sp(&[(0, 1), (-1, 1)]), -2, 1);
        assert_eq!(rows[0], CohomologyRow { l: -2, h1: Some(0), h2: None });
        assert_eq!(rows[1], CohomologyRow { l: -1, h1: Some(0), h2: Some(1) });
        assert_eq!(rows[2], CohomologyRow { l: 0, h1: Some(1), h2: Some(0) });
        assert_eq!(rows[3], CohomologyRow { l: 1, h1: None, h2: Some(0) });
    }
}
