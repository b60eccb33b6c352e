//! Harder-Narasimhan polygons of finite evidence sets.
//!
//! A polygon is the upper boundary of the convex hull of `(0, 0)`, the total
//! `(rank, degree)` and the supplied subsheaf points. Its edge slopes are
//! the slopes of the HN factors and decrease strictly.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HnError {
    #[error("point ({rank}, {degree}) has rank above the total rank {total}")]
    RankOverflow { rank: u64, degree: i64, total: u64 },
    #[error("point ({rank}, {degree}) lies above the total at its rank")]
    InvalidPoint { rank: u64, degree: i64 },
    #[error("total rank must be positive")]
    ZeroTotalRank,
    #[error("polygons end at ({0}, {1}) and ({2}, {3})")]
    EndpointMismatch(u64, i64, u64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankDegreePoint {
    pub rank: u64,
    pub degree: i64,
}

impl RankDegreePoint {
    pub const ORIGIN: RankDegreePoint = RankDegreePoint { rank: 0, degree: 0 };

    pub fn new(rank: u64, degree: i64) -> Self {
        RankDegreePoint { rank, degree }
    }
}

/// `[rank, degree]` on the wire.
impl Serialize for RankDegreePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.rank, self.degree).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RankDegreePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (rank, degree) = <(u64, i64)>::deserialize(d)?;
        Ok(RankDegreePoint { rank, degree })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HnPolygon {
    vertices: Vec<RankDegreePoint>,
}

impl HnPolygon {
    pub fn vertices(&self) -> &[RankDegreePoint] {
        &self.vertices
    }

    pub fn total(&self) -> RankDegreePoint {
        *self.vertices.last().expect("polygon has at least two vertices")
    }

    /// Value of the piecewise-linear boundary at `x ∈ [0, total rank]`.
    pub fn height_at(&self, x: &Rational) -> Rational {
        let v = &self.vertices;
        for w in v.windows(2) {
            let (p, q) = (w[0], w[1]);
            if *x <= Rational::from_int(q.rank as i64) {
                let dx = Rational::from_int((q.rank - p.rank) as i64);
                let t = (x - &Rational::from_int(p.rank as i64)) / dx;
                return Rational::from_int(p.degree) + t * (q.degree - p.degree);
            }
        }
        Rational::from_int(self.total().degree)
    }

    /// Builds a polygon from a vertex list, checking the invariants.
    pub fn from_vertices(vertices: Vec<RankDegreePoint>) -> Option<Self> {
        if vertices.len() < 2 || vertices[0] != RankDegreePoint::ORIGIN {
            return None;
        }
        let p = HnPolygon { vertices };
        let s = edge_slopes(&p.vertices);
        let ranks_ok = p.vertices.windows(2).all(|w| w[0].rank < w[1].rank);
        (ranks_ok && s.windows(2).all(|w| w[0] > w[1])).then_some(p)
    }
}

fn edge_slopes(v: &[RankDegreePoint]) -> Vec<Rational> {
    v.windows(2)
        .map(|w| Rational::new(w[1].degree - w[0].degree, (w[1].rank - w[0].rank) as i64))
        .collect()
}

/// `(b - a) × (c - a)`; positive when `c` is left of the ray `a → b`.
fn cross(a: RankDegreePoint, b: RankDegreePoint, c: RankDegreePoint) -> i128 {
    let (ax, ay) = (a.rank as i128, a.degree as i128);
    let (bx, by) = (b.rank as i128, b.degree as i128);
    let (cx, cy) = (c.rank as i128, c.degree as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// Upper hull of `points ∪ {(0,0), total}` from the origin to `total`.
/// Collinear vertices are merged.
pub fn hnp_from_points(
    points: &[RankDegreePoint],
    total: RankDegreePoint,
) -> Result<HnPolygon, HnError> {
    if total.rank == 0 {
        return Err(HnError::ZeroTotalRank);
    }
    for p in points {
        if p.rank > total.rank {
            return Err(HnError::RankOverflow {
                rank: p.rank,
                degree: p.degree,
                total: total.rank,
            });
        }
        let above = (p.rank == 0 && p.degree > 0)
            || (p.rank == total.rank && p.degree > total.degree);
        if above {
            return Err(HnError::InvalidPoint {
                rank: p.rank,
                degree: p.degree,
            });
        }
    }

    // highest degree per interior rank
    let mut best: Vec<RankDegreePoint> = points
        .iter()
        .copied()
        .filter(|p| p.rank > 0 && p.rank < total.rank)
        .collect();
    best.sort_by(|a, b| a.rank.cmp(&b.rank).then(b.degree.cmp(&a.degree)));
    best.dedup_by_key(|p| p.rank);

    let mut hull: Vec<RankDegreePoint> = Vec::with_capacity(best.len() + 2);
    for p in std::iter::once(RankDegreePoint::ORIGIN)
        .chain(best)
        .chain(std::iter::once(total))
    {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    Ok(HnPolygon { vertices: hull })
}

/// Edge slopes, strictly decreasing.
pub fn slopes(p: &HnPolygon) -> Vec<Rational> {
    let s = edge_slopes(&p.vertices);
    assert!(
        s.windows(2).all(|w| w[0] > w[1]),
        "polygon slopes must decrease strictly"
    );
    s
}

/// Whether `p` lies on or above `q` everywhere. Both are piecewise linear,
/// so comparing at the union of their vertex ranks is exact.
pub fn polygon_geq(p: &HnPolygon, q: &HnPolygon) -> Result<bool, HnError> {
    let (tp, tq) = (p.total(), q.total());
    if tp != tq {
        return Err(HnError::EndpointMismatch(tp.rank, tp.degree, tq.rank, tq.degree));
    }
    let mut xs: Vec<u64> = p
        .vertices
        .iter()
        .chain(q.vertices.iter())
        .map(|v| v.rank)
        .collect();
    xs.sort_unstable();
    xs.dedup();
    Ok(xs.into_iter().all(|x| {
        let x = Rational::from_int(x as i64);
        p.height_at(&x).cmp(&q.height_at(&x)) != Ordering::Less
    }))
}

/// No point strictly above the segment from the origin to `total`.
pub fn is_semistable_profile(
    points: &[RankDegreePoint],
    total: RankDegreePoint,
) -> Result<bool, HnError> {
    Ok(hnp_from_points(points, total)?.vertices.len() == 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(r: u64, d: i64) -> RankDegreePoint {
        RankDegreePoint::new(r, d)
    }

    fn poly(v: &[(u64, i64)]) -> HnPolygon {
        HnPolygon::from_vertices(v.iter().map(|&(r, d)| pt(r, d)).collect()).unwrap()
    }

    #[test]
    fn hull_examples() {
        let p = hnp_from_points(&[], pt(2, 3)).unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(2, 3)]);
        assert_eq!(slopes(&p), vec![Rational::new(3, 2)]);

        let p = hnp_from_points(&[pt(1, 2)], pt(2, 2)).unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(1, 2), pt(2, 2)]);
        assert_eq!(slopes(&p), vec![Rational::from_int(2), Rational::zero()]);

        let q = hnp_from_points(&[pt(1, 1), pt(1, 2), pt(1, 0)], pt(2, 2)).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn collinear_points_merge() {
        let p = hnp_from_points(&[pt(1, 1), pt(2, 2)], pt(3, 3)).unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(3, 3)]);
    }

    #[test]
    fn hull_errors() {
        assert_eq!(
            hnp_from_points(&[pt(3, 0)], pt(2, 2)),
            Err(HnError::RankOverflow { rank: 3, degree: 0, total: 2 })
        );
        assert!(matches!(
            hnp_from_points(&[pt(0, 1)], pt(2, 2)),
            Err(HnError::InvalidPoint { .. })
        ));
        assert!(matches!(
            hnp_from_points(&[pt(2, 3)], pt(2, 2)),
            Err(HnError::InvalidPoint { .. })
        ));
        assert_eq!(hnp_from_points(&[], pt(0, 0)), Err(HnError::ZeroTotalRank));
        // points on the boundary ranks below the line are fine
        assert!(hnp_from_points(&[pt(0, -3), pt(2, 1)], pt(2, 2)).is_ok());
    }

    #[test]
    fn single_slopes() {
        assert_eq!(slopes(&poly(&[(0, 0), (2, -1)])), vec![Rational::new(-1, 2)]);
    }

    #[test]
    fn order_examples() {
        let p = poly(&[(0, 0), (1, 2), (2, 2)]);
        let q = poly(&[(0, 0), (2, 2)]);
        assert_eq!(polygon_geq(&p, &p), Ok(true));
        assert_eq!(polygon_geq(&p, &q), Ok(true));
        assert_eq!(polygon_geq(&q, &p), Ok(false));
        let shifted = poly(&[(0, 0), (1, 1), (3, 0)]);
        let base = poly(&[(0, 0), (1, 1), (2, 0)]);
        assert!(matches!(
            polygon_geq(&base, &shifted),
            Err(HnError::EndpointMismatch(..))
        ));
    }

    #[test]
    fn semistable_examples() {
        assert_eq!(is_semistable_profile(&[pt(1, -1)], pt(2, -1)), Ok(true));
        assert_eq!(is_semistable_profile(&[pt(1, 0)], pt(2, -1)), Ok(false));
        assert_eq!(is_semistable_profile(&[], pt(2, -1)), Ok(true));
        // on the line is still semistable
        assert_eq!(is_semistable_profile(&[pt(2, 2)], pt(4, 4)), Ok(true));
    }

    #[test]
    fn from_vertices_rejects_bad_lists() {
        assert!(HnPolygon::from_vertices(vec![pt(0, 0)]).is_none());
        assert!(HnPolygon::from_vertices(vec![pt(0, 0), pt(1, 0), pt(2, 1)]).is_none());
        assert!(HnPolygon::from_vertices(vec![pt(1, 0), pt(2, 1)]).is_none());
    }

    #[test]
    fn wire_format() {
        let p = poly(&[(0, 0), (1, 2), (2, 2)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[0,0],[1,2],[2,2]]");
        let pts: Vec<RankDegreePoint> = serde_json::from_str("[[1,2],[1,0]]").unwrap();
        assert_eq!(pts, vec![pt(1, 2), pt(1, 0)]);
    }
}
