//! Descriptors of lp spaces, norms and measurement maps, the Frechet
//! embedding into l-infinity, known equilateral constructions, and a
//! sampler for the Norlander chord/sum range in normed planes.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num::{BigRational, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edm::ExactSymmetricMatrix;
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Error, PartialEq)]
pub enum SpaceError {
    #[error("invalid exponent {0:?}: need p >= 1 or \"inf\"")]
    BadExponent(String),
    #[error("invalid dimension {0:?}: need a positive integer or \"inf\"")]
    BadDimension(String),
    #[error("invalid space descriptor {0:?}: expected \"lp:<p>:<dim>\"")]
    BadDescriptor(String),
    #[error("realization has dimension {found}, space expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("realization covers {found} vertices, graph has {expected}")]
    VertexMismatch { expected: usize, found: usize },
    #[error("space must be finite-dimensional for this operation")]
    InfiniteDimension,
    #[error("matrix is not a metric: d({i},{j}) > d({i},{k}) + d({k},{j})")]
    NotAMetric { i: usize, j: usize, k: usize },
    #[error("metric matrix must have a zero diagonal (entry {0})")]
    MetricNonzeroDiagonal(usize),
    #[error("metric matrix has a negative entry at ({0}, {1})")]
    NegativeDistance(usize, usize),
    #[error("edge length for ({0}, {1}) is negative")]
    NegativeLength(Vertex, Vertex),
    #[error("chord bisection failed to reach eps={eps} within tolerance")]
    ChordConvergence { eps: f64 },
    #[error("need 0 < eps < 2, got {0}")]
    BadEps(f64),
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
}

/// The exponent of an lp norm: a finite p >= 1 or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Panics if `p < 1`; use [`Exponent::from_str`] for fallible parsing.
    pub fn finite(p: f64) -> Exponent {
        assert!(p >= 1.0 && p.is_finite(), "exponent must satisfy p >= 1");
        Exponent::Finite(p)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// Holder conjugate: 1/p + 1/p* = 1.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| SpaceError::BadExponent(s.to_string()))?;
                if p.is_infinite() && p > 0.0 {
                    Ok(Exponent::Infinity)
                } else if p >= 1.0 && p.is_finite() {
                    Ok(Exponent::Finite(p))
                } else {
                    Err(SpaceError::BadExponent(s.to_string()))
                }
            }
        }
    }
}

/// Dimension of a space: finite positive or countably infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Dim::Infinite)
    }

    /// `self <= other` in the extended sense where infinity dominates.
    pub fn le(self, other: Dim) -> bool {
        match (self, other) {
            (_, Dim::Infinite) => true,
            (Dim::Infinite, Dim::Finite(_)) => false,
            (Dim::Finite(a), Dim::Finite(b)) => a <= b,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Dim {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Dim::Infinite),
            other => {
                let d: usize = other
                    .parse()
                    .map_err(|_| SpaceError::BadDimension(s.to_string()))?;
                if d >= 1 {
                    Ok(Dim::Finite(d))
                } else {
                    Err(SpaceError::BadDimension(s.to_string()))
                }
            }
        }
    }
}

/// An lp space given by exponent and dimension, written `lp:<p>:<dim>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceDescriptor {
    pub p: Exponent,
    pub dim: Dim,
}

impl SpaceDescriptor {
    pub fn new(p: Exponent, dim: Dim) -> SpaceDescriptor {
        SpaceDescriptor { p, dim }
    }

    pub fn finite(p: f64, dim: usize) -> SpaceDescriptor {
        SpaceDescriptor::new(Exponent::finite(p), Dim::Finite(dim))
    }

    pub fn infinite_dim(p: Exponent) -> SpaceDescriptor {
        SpaceDescriptor::new(p, Dim::Infinite)
    }

    /// Strict convexity of the unit ball: true for 1 < p < infinity, and
    /// vacuously on a line.
    pub fn is_strictly_convex(self) -> bool {
        if self.dim == Dim::Finite(1) {
            return true;
        }
        match self.p {
            Exponent::Finite(p) => p > 1.0,
            Exponent::Infinity => false,
        }
    }

    /// The plane l1^2 is isometric to linf^2 via a rotation-scaling, so
    /// both count here.
    pub fn is_isometric_linf2(self) -> bool {
        self.dim == Dim::Finite(2)
            && (self.p == Exponent::Infinity || self.p == Exponent::Finite(1.0))
    }

    pub fn is_isometric_l22(self) -> bool {
        self.dim == Dim::Finite(2) && matches!(self.p, Exponent::Finite(p) if p == 2.0)
    }

    pub fn same_exponent(self, other: SpaceDescriptor) -> bool {
        self.p == other.p
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lp:{}:{}", self.p, self.dim)
    }
}

impl FromStr for SpaceDescriptor {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(':');
        let (Some("lp"), Some(p), Some(dim), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(SpaceError::BadDescriptor(s.to_string()));
        };
        Ok(SpaceDescriptor::new(p.parse()?, dim.parse()?))
    }
}

impl Serialize for SpaceDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpaceDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Assignment of finite-dimensional coordinates to vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Realization {
    dim: usize,
    coords: Vec<Vec<f64>>,
}

impl TryFrom<Vec<Vec<f64>>> for Realization {
    type Error = SpaceError;

    fn try_from(coords: Vec<Vec<f64>>) -> Result<Self, Self::Error> {
        Realization::new(coords)
    }
}

impl From<Realization> for Vec<Vec<f64>> {
    fn from(r: Realization) -> Self {
        r.coords
    }
}

impl Realization {
    pub fn new(coords: Vec<Vec<f64>>) -> Result<Self, SpaceError> {
        let dim = coords.first().map_or(0, Vec::len);
        if let Some(bad) = coords.iter().find(|c| c.len() != dim) {
            return Err(SpaceError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Realization { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self, v: Vertex) -> &[f64] {
        &self.coords[v]
    }

    pub fn coords_mut(&mut self, v: Vertex) -> &mut [f64] {
        &mut self.coords[v]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn difference(&self, v: Vertex, w: Vertex) -> Vec<f64> {
        self.coords[v]
            .iter()
            .zip(&self.coords[w])
            .map(|(a, b)| a - b)
            .collect()
    }
}

/// Nonnegative lengths assigned to the edges of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize, f64)>", into = "Vec<(usize, usize, f64)>")]
pub struct EdgeLengths {
    lengths: BTreeMap<Edge, f64>,
}

impl TryFrom<Vec<(usize, usize, f64)>> for EdgeLengths {
    type Error = SpaceError;

    fn try_from(items: Vec<(usize, usize, f64)>) -> Result<Self, Self::Error> {
        EdgeLengths::new(
            items
                .into_iter()
                .map(|(u, v, len)| (crate::graph::edge(u, v), len))
                .collect(),
        )
    }
}

impl From<EdgeLengths> for Vec<(usize, usize, f64)> {
    fn from(el: EdgeLengths) -> Self {
        el.lengths
            .into_iter()
            .map(|((u, v), len)| (u, v, len))
            .collect()
    }
}

impl EdgeLengths {
    pub fn new(lengths: BTreeMap<Edge, f64>) -> Result<Self, SpaceError> {
        if let Some((&(u, v), _)) = lengths.iter().find(|(_, &len)| len.is_nan() || len < 0.0) {
            return Err(SpaceError::NegativeLength(u, v));
        }
        Ok(EdgeLengths { lengths })
    }

    pub fn get(&self, e: Edge) -> Option<f64> {
        self.lengths.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.lengths.iter().map(|(&e, &len)| (e, len))
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn max_length(&self) -> f64 {
        self.lengths.values().cloned().fold(0.0, f64::max)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.lengths.values().copied()
    }
}

/// The lp norm of a vector; p = infinity gives the max magnitude.
/// Computed with max-normalisation so large exponents do not overflow.
pub fn lp_norm(p: Exponent, v: &[f64]) -> f64 {
    match p {
        Exponent::Infinity => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        Exponent::Finite(1.0) => v.iter().map(|x| x.abs()).sum(),
        Exponent::Finite(p) => {
            let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if m == 0.0 {
                return 0.0;
            }
            let sum: f64 = v.iter().map(|x| (x.abs() / m).powf(p)).sum();
            m * sum.powf(1.0 / p)
        }
    }
}

/// Sends a realization to its vector of induced edge lengths.
pub fn measurement_map(
    g: &Graph,
    space: &SpaceDescriptor,
    r: &Realization,
) -> Result<EdgeLengths, SpaceError> {
    let Some(d) = space.dim.finite() else {
        return Err(SpaceError::InfiniteDimension);
    };
    if r.len() != g.vertex_count() {
        return Err(SpaceError::VertexMismatch {
            expected: g.vertex_count(),
            found: r.len(),
        });
    }
    if r.dim() != d && g.vertex_count() > 0 {
        return Err(SpaceError::DimensionMismatch {
            expected: d,
            found: r.dim(),
        });
    }
    let lengths = g
        .edges()
        .map(|(v, w)| ((v, w), lp_norm(space.p, &r.difference(v, w))))
        .collect();
    EdgeLengths::new(lengths)
}

/// Exact Frechet embedding of a finite metric space into linf^n: point `i`
/// is row `i` of the distance matrix. Pairwise linf distances reproduce
/// the metric exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct FrechetEmbedding {
    coords: Vec<Vec<BigRational>>,
}

impl FrechetEmbedding {
    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.coords
    }

    /// Exact linf distance between embedded points `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> BigRational {
        self.coords[i]
            .iter()
            .zip(&self.coords[j])
            .map(|(a, b)| (a - b).abs())
            .fold(BigRational::zero(), |m, x| if x > m { x } else { m })
    }

    pub fn to_realization(&self) -> Realization {
        let coords = self
            .coords
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| num::ToPrimitive::to_f64(x).expect("finite rational"))
                    .collect()
            })
            .collect();
        Realization::new(coords).expect("rows share a dimension")
    }
}

/// Validates that `d` is a metric (symmetric by type, zero diagonal,
/// nonnegative, triangle inequality, all checked exactly) and embeds it
/// into linf^n by rows.
pub fn frechet_embed(d: &ExactSymmetricMatrix) -> Result<FrechetEmbedding, SpaceError> {
    let n = d.order();
    for i in 0..n {
        if !d.entry(i, i).is_zero() {
            return Err(SpaceError::MetricNonzeroDiagonal(i));
        }
        for j in 0..n {
            if d.entry(i, j).is_negative() {
                return Err(SpaceError::NegativeDistance(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d.entry(i, j) > &(d.entry(i, k) + d.entry(k, j)) {
                    return Err(SpaceError::NotAMetric { i, j, k });
                }
            }
        }
    }
    Ok(FrechetEmbedding {
        coords: d.rows().to_vec(),
    })
}

/// A known unit-equilateral set of size `k` in the given space, when the
/// library has a construction: regular simplices for p = 2, the unit
/// square corners for linf^2, triangles in any plane, and the trivial
/// small cases. `None` when no construction is known.
pub fn equilateral_known(space: &SpaceDescriptor, k: usize) -> Option<Realization> {
    let d = space.dim.finite()?;
    if k == 0 {
        return Some(Realization::new(Vec::new()).expect("empty"));
    }
    let pad = |points: Vec<Vec<f64>>| {
        let coords = points
            .into_iter()
            .map(|mut v| {
                v.resize(d, 0.0);
                v
            })
            .collect();
        Realization::new(coords).expect("uniform dimension")
    };
    if k == 1 {
        return Some(pad(vec![vec![]]));
    }
    if k == 2 {
        return Some(pad(vec![vec![0.0], vec![1.0]]));
    }
    if space.p == Exponent::Finite(2.0) && k <= d + 1 {
        return Some(pad(regular_simplex(k)));
    }
    if d >= 2 && k == 3 {
        // 0, a, b with a and b on the unit circle at chord distance 1
        let a = unit_circle_point(space.p, 0.0);
        let s = chord_bisect(space.p, 0.0, 1.0).ok()?;
        let b = unit_circle_point(space.p, s);
        return Some(pad(vec![vec![0.0, 0.0], a.to_vec(), b.to_vec()]));
    }
    if space.p == Exponent::Infinity && d == 2 && k == 4 {
        return Some(pad(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ]));
    }
    None
}

/// Vertices of a regular unit-side simplex on `k` points in `R^{k-1}`.
fn regular_simplex(k: usize) -> Vec<Vec<f64>> {
    // Gram matrix of p_i - p_0 for the scaled standard-basis simplex
    let m = k - 1;
    let gram = nalgebra::DMatrix::from_fn(m, m, |i, j| if i == j { 1.0 } else { 0.5 });
    let chol = nalgebra::Cholesky::new(gram).expect("simplex Gram matrix is PD");
    let l = chol.l();
    let mut points = vec![vec![0.0; m]];
    for i in 0..m {
        points.push(l.row(i).iter().cloned().collect());
    }
    points
}

/// Point of the lp unit circle at angular parameter `t`.
fn unit_circle_point(p: Exponent, t: f64) -> [f64; 2] {
    let raw = [t.cos(), t.sin()];
    let norm = lp_norm(p, &raw);
    [raw[0] / norm, raw[1] / norm]
}

fn chord(p: Exponent, t0: f64, s: f64) -> f64 {
    let a = unit_circle_point(p, t0);
    let b = unit_circle_point(p, t0 + s);
    lp_norm(p, &[a[0] - b[0], a[1] - b[1]])
}

/// Finds `s` in [0, pi] with `chord(t0, s) = eps` by bisection; chord
/// length grows with angular separation on lp circles.
fn chord_bisect(p: Exponent, t0: f64, eps: f64) -> Result<f64, SpaceError> {
    let (mut lo, mut hi) = (0.0f64, PI);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let c = chord(p, t0, mid);
        if (c - eps).abs() <= 1e-12 {
            return Ok(mid);
        }
        if c < eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if (chord(p, t0, mid) - eps).abs() <= 1e-9 {
        Ok(mid)
    } else {
        Err(SpaceError::ChordConvergence { eps })
    }
}

/// Samples unit-norm pairs at chord distance `eps` on the lp plane circle
/// and returns the observed (min, max) of the sum norm `|a + b|_p`. This
/// is an inner approximation of the Norlander range.
pub fn norlander_range(
    p: Exponent,
    eps: f64,
    samples: usize,
) -> Result<(f64, f64), SpaceError> {
    if !(eps > 0.0 && eps < 2.0) {
        return Err(SpaceError::BadEps(eps));
    }
    if samples < 2 {
        return Err(SpaceError::TooFewSamples(samples));
    }
    let sum_at = |t0: f64| -> Result<f64, SpaceError> {
        let s = chord_bisect(p, t0, eps)?;
        let a = unit_circle_point(p, t0);
        let b = unit_circle_point(p, t0 + s);
        Ok(lp_norm(p, &[a[0] + b[0], a[1] + b[1]]))
    };
    let step = 2.0 * PI / samples as f64;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let (mut t_lo, mut t_hi) = (0.0, 0.0);
    for i in 0..samples {
        let t0 = i as f64 * step;
        let v = sum_at(t0)?;
        if v < lo {
            lo = v;
            t_lo = t0;
        }
        if v > hi {
            hi = v;
            t_hi = t0;
        }
    }
    // refine the observed extremes to well under the test tolerances
    lo = lo.min(golden_section(&sum_at, t_lo - step, t_lo + step, false)?);
    hi = hi.max(golden_section(&sum_at, t_hi - step, t_hi + step, true)?);
    Ok((lo, hi))
}

fn golden_section(
    f: &impl Fn(f64) -> Result<f64, SpaceError>,
    mut a: f64,
    mut b: f64,
    maximize: bool,
) -> Result<f64, SpaceError> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let eval = |t: f64| -> Result<f64, SpaceError> {
        let v = f(t)?;
        Ok(if maximize { -v } else { v })
    };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while (b - a).abs() > 1e-10 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
    }
    let best = eval(0.5 * (a + b))?;
    Ok(if maximize { -best } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_norm_examples() {
        assert_eq!(lp_norm(Exponent::finite(2.0), &[3.0, 4.0]), 5.0);
        assert_eq!(lp_norm(Exponent::Infinity, &[3.0, -7.0, 2.0]), 7.0);
        assert_eq!(lp_norm(Exponent::finite(1.0), &[1.0, 1.0, 1.0]), 3.0);
    }

    #[test]
    fn measurement_examples() {
        let k2 = Graph::complete(2);
        let r = Realization::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let m = measurement_map(&k2, &SpaceDescriptor::finite(2.0, 2), &r).unwrap();
        assert_eq!(m.get((0, 1)), Some(1.0));

        let k3 = Graph::complete(3);
        let corners =
            Realization::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let minf = measurement_map(
            &k3,
            &SpaceDescriptor::new(Exponent::Infinity, Dim::Finite(2)),
            &corners,
        )
        .unwrap();
        assert_eq!(minf.get((0, 1)), Some(1.0));
        assert_eq!(minf.get((0, 2)), Some(1.0));
        assert_eq!(minf.get((1, 2)), Some(1.0));
        let m1 = measurement_map(&k3, &SpaceDescriptor::finite(1.0, 2), &corners).unwrap();
        assert_eq!(m1.get((0, 1)), Some(1.0));
        assert_eq!(m1.get((0, 2)), Some(1.0));
        assert_eq!(m1.get((1, 2)), Some(2.0));
    }

    #[test]
    fn measurement_dimension_mismatch() {
        let k2 = Graph::complete(2);
        let r = Realization::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let err = measurement_map(&k2, &SpaceDescriptor::finite(2.0, 3), &r).unwrap_err();
        assert_eq!(
            err,
            SpaceError::DimensionMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn frechet_all_ones() {
        let d = ExactSymmetricMatrix::from_integers(&[
            &[0, 1, 1],
            &[1, 0, 1],
            &[1, 1, 0],
        ])
        .unwrap();
        let emb = frechet_embed(&d).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(emb.distance(i, j), num::One::one());
            }
        }
    }

    #[test]
    fn frechet_two_points() {
        let d = ExactSymmetricMatrix::from_integers(&[&[0, 5], &[5, 0]]).unwrap();
        let emb = frechet_embed(&d).unwrap();
        assert_eq!(
            emb.distance(0, 1),
            BigRational::from_integer(num::BigInt::from(5))
        );
    }

    #[test]
    fn frechet_rejects_triangle_violation() {
        let d = ExactSymmetricMatrix::from_integers(&[
            &[0, 5, 1],
            &[5, 0, 1],
            &[1, 1, 0],
        ])
        .unwrap();
        assert!(matches!(
            frechet_embed(&d).unwrap_err(),
            SpaceError::NotAMetric { .. }
        ));
    }

    #[test]
    fn equilateral_linf2_square() {
        let space = SpaceDescriptor::new(Exponent::Infinity, Dim::Finite(2));
        let r = equilateral_known(&space, 4).expect("square corners");
        for i in 0..4 {
            for j in i + 1..4 {
                let d = lp_norm(Exponent::Infinity, &r.difference(i, j));
                assert!((d - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn equilateral_l22_triangle_but_no_4() {
        let space = SpaceDescriptor::finite(2.0, 2);
        let r = equilateral_known(&space, 3).expect("triangle");
        for i in 0..3 {
            for j in i + 1..3 {
                let d = lp_norm(Exponent::finite(2.0), &r.difference(i, j));
                assert!((d - 1.0).abs() < 1e-12, "({i},{j}) -> {d}");
            }
        }
        assert!(equilateral_known(&space, 4).is_none());
    }

    #[test]
    fn equilateral_simplex_in_l2() {
        let space = SpaceDescriptor::finite(2.0, 4);
        let r = equilateral_known(&space, 5).expect("4-simplex");
        for i in 0..5 {
            for j in i + 1..5 {
                let d = lp_norm(Exponent::finite(2.0), &r.difference(i, j));
                assert!((d - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn equilateral_triangle_in_any_plane() {
        for p in [Exponent::finite(1.0), Exponent::finite(3.0), Exponent::Infinity] {
            let space = SpaceDescriptor::new(p, Dim::Finite(2));
            let r = equilateral_known(&space, 3).expect("triangle");
            for i in 0..3 {
                for j in i + 1..3 {
                    let d = lp_norm(p, &r.difference(i, j));
                    assert!((d - 1.0).abs() < 1e-9, "p={p} ({i},{j}) -> {d}");
                }
            }
        }
    }

    #[test]
    fn norlander_euclidean_is_a_point() {
        let (lo, hi) = norlander_range(Exponent::finite(2.0), 1.0, 64).unwrap();
        let target = 3.0f64.sqrt();
        assert!((lo - target).abs() < 1e-9);
        assert!((hi - target).abs() < 1e-9);
    }

    #[test]
    fn norlander_p15_brackets_euclidean_value() {
        let (lo, hi) = norlander_range(Exponent::finite(1.5), 1.0, 256).unwrap();
        let target = 3.0f64.sqrt();
        assert!(lo <= target + 1e-6, "lo = {lo}");
        assert!(target <= hi + 1e-6, "hi = {hi}");
    }

    #[test]
    fn norlander_linf_is_a_proper_interval() {
        let (lo, hi) = norlander_range(Exponent::Infinity, 1.0, 256).unwrap();
        assert!(lo < hi - 1e-3, "lo = {lo}, hi = {hi}");
    }

    #[test]
    fn norlander_rejects_bad_inputs() {
        assert!(norlander_range(Exponent::finite(2.0), 2.5, 16).is_err());
        assert!(norlander_range(Exponent::finite(2.0), 1.0, 1).is_err());
    }

    #[test]
    fn descriptor_parsing() {
        let s: SpaceDescriptor = "lp:2:3".parse().unwrap();
        assert_eq!(s, SpaceDescriptor::finite(2.0, 3));
        let s: SpaceDescriptor = "lp:inf:inf".parse().unwrap();
        assert_eq!(
            s,
            SpaceDescriptor::new(Exponent::Infinity, Dim::Infinite)
        );
        let s: SpaceDescriptor = "lp:1.5:2".parse().unwrap();
        assert_eq!(s, SpaceDescriptor::finite(1.5, 2));
        assert!("lp:0.5:2".parse::<SpaceDescriptor>().is_err());
        assert!("l2:2".parse::<SpaceDescriptor>().is_err());
    }

    #[test]
    fn convexity_predicates() {
        assert!(SpaceDescriptor::finite(2.0, 3).is_strictly_convex());
        assert!(!SpaceDescriptor::finite(1.0, 2).is_strictly_convex());
        assert!(!SpaceDescriptor::new(Exponent::Infinity, Dim::Finite(2)).is_strictly_convex());
        assert!(SpaceDescriptor::finite(1.0, 1).is_strictly_convex());
        assert!(SpaceDescriptor::finite(1.0, 2).is_isometric_linf2());
        assert!(SpaceDescriptor::new(Exponent::Infinity, Dim::Finite(2)).is_isometric_linf2());
        assert!(!SpaceDescriptor::finite(2.0, 2).is_isometric_linf2());
        assert!(SpaceDescriptor::finite(2.0, 2).is_isometric_l22());
    }
}
