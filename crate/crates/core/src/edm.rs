//! Exact Euclidean-distance-matrix verification via the Schoenberg
//! criterion, floating-point realization recovery, and the two shipped
//! certificate matrices for W4 and K4+eK4.

use std::str::FromStr;

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{edge, Graph};
use crate::space::{EdgeLengths, Realization};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdmError {
    #[error("matrix is not square: row {0} has length {1}, expected {2}")]
    NotSquare(usize, usize, usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry ({0}, {0}) is nonzero")]
    NonzeroDiagonal(usize),
    #[error("matrix order {0} is too small, need at least 2")]
    OrderTooSmall(usize),
    #[error("matrix is not a Euclidean distance matrix")]
    NotAnEdm,
    #[error("cannot parse exact rational from {0:?}")]
    BadRational(String),
    #[error("unknown certificate name: {0}")]
    UnknownName(String),
}

/// Parses an exact rational from an integer, fraction ("3/4") or decimal
/// ("2.5") string.
pub fn parse_rational(s: &str) -> Result<BigRational, EdmError> {
    let bad = || EdmError::BadRational(s.to_string());
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.trim_start().starts_with('-');
        let int = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| bad())?
        };
        let frac = BigInt::from_str(frac_part).map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude = int.abs() * &scale + frac;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(signed, scale));
    }
    let n = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

fn rational_to_json(r: &BigRational) -> serde_json::Value {
    if r.is_integer() {
        if let Some(i) = r.to_integer().to_i64() {
            return serde_json::Value::from(i);
        }
    }
    serde_json::Value::from(r.to_string())
}

/// Square symmetric matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSymmetricMatrix {
    n: usize,
    entries: Vec<Vec<BigRational>>,
}

impl ExactSymmetricMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self, EdmError> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(EdmError::NotSquare(i, row.len(), n));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i][j] != entries[j][i] {
                    return Err(EdmError::NotSymmetric(i, j));
                }
            }
        }
        Ok(ExactSymmetricMatrix { n, entries })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self, EdmError> {
        let entries = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        ExactSymmetricMatrix::new(entries)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.entries[i][i].is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> ExactSymmetricMatrix {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| x * c).collect())
            .collect();
        ExactSymmetricMatrix {
            n: self.n,
            entries,
        }
    }

    pub fn entry_f64(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j].to_f64().expect("finite rational")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<Vec<serde_json::Value>>,
}

impl Serialize for ExactSymmetricMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = MatrixRepr {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(rational_to_json).collect())
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactSymmetricMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(repr.entries.len());
        for row in &repr.entries {
            let mut out = Vec::with_capacity(row.len());
            for v in row {
                let r = match v {
                    serde_json::Value::Number(num) => {
                        let Some(i) = num.as_i64() else {
                            return Err(D::Error::custom(format!(
                                "matrix entry {num} is not an exact integer; \
                                 use a string for non-integer rationals"
                            )));
                        };
                        BigRational::from_integer(BigInt::from(i))
                    }
                    serde_json::Value::String(s) => {
                        parse_rational(s).map_err(|e| D::Error::custom(e.to_string()))?
                    }
                    other => {
                        return Err(D::Error::custom(format!(
                            "matrix entry {other} must be an integer or a string"
                        )))
                    }
                };
                out.push(r);
            }
            entries.push(out);
        }
        let m = ExactSymmetricMatrix::new(entries).map_err(|e| D::Error::custom(e.to_string()))?;
        if m.order() != repr.n {
            return Err(D::Error::custom(format!(
                "declared order {} does not match {} rows",
                repr.n,
                m.order()
            )));
        }
        Ok(m)
    }
}

/// The Schoenberg transform of a squared-distance matrix, relative to the
/// last point: `A[i][j] = M[i][n-1] + M[j][n-1] - M[i][j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchoenbergMatrix {
    pub matrix: ExactSymmetricMatrix,
}

pub fn schoenberg_transform(m: &ExactSymmetricMatrix) -> Result<SchoenbergMatrix, EdmError> {
    let n = m.order();
    if n < 2 {
        return Err(EdmError::OrderTooSmall(n));
    }
    if let Some(i) = (0..n).find(|&i| !m.entry(i, i).is_zero()) {
        return Err(EdmError::NonzeroDiagonal(i));
    }
    let base = n - 1;
    let entries: Vec<Vec<BigRational>> = (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| m.entry(i, base) + m.entry(j, base) - m.entry(i, j))
                .collect()
        })
        .collect();
    Ok(SchoenbergMatrix {
        matrix: ExactSymmetricMatrix::new(entries).expect("transform is symmetric"),
    })
}

/// Exact positive-semidefiniteness over the rationals by symmetric pivoted
/// elimination: pivot on positive diagonal entries until the matrix is
/// consumed; a remaining all-zero-diagonal block must be entirely zero.
pub fn is_psd_exact(a: &SchoenbergMatrix) -> bool {
    let k = a.matrix.order();
    let mut m: Vec<Vec<BigRational>> = a.matrix.rows().to_vec();
    let mut active: Vec<usize> = (0..k).collect();
    loop {
        if active.is_empty() {
            return true;
        }
        if active.iter().any(|&i| m[i][i].is_negative()) {
            return false;
        }
        let Some(pos) = active.iter().position(|&i| m[i][i].is_positive()) else {
            // zero diagonal block: PSD iff it is the zero block
            return active
                .iter()
                .all(|&i| active.iter().all(|&j| m[i][j].is_zero()));
        };
        let p = active.remove(pos);
        let pivot = m[p][p].clone();
        for &i in &active {
            if m[i][p].is_zero() {
                continue;
            }
            let factor = &m[i][p] / &pivot;
            for &j in &active {
                let delta = &factor * &m[p][j];
                m[i][j] = &m[i][j] - delta;
            }
        }
    }
}

/// Schoenberg's criterion: a zero-diagonal symmetric matrix of squared
/// distances is realisable in Euclidean space iff its transform is PSD.
pub fn is_edm(m: &ExactSymmetricMatrix) -> Result<bool, EdmError> {
    if m.order() <= 1 {
        if let Some(i) = (0..m.order()).find(|&i| !m.entry(i, i).is_zero()) {
            return Err(EdmError::NonzeroDiagonal(i));
        }
        return Ok(true);
    }
    Ok(is_psd_exact(&schoenberg_transform(m)?))
}

/// Recovers points in `l2^{n-1}` realising the squared distances of `m`,
/// with the last point at the origin. The Gram matrix is `A/2`; recovery is
/// floating point, eigenvalues below `-tol` are rejected by the exact EDM
/// gate and small negatives are clamped to zero.
pub fn edm_realize(m: &ExactSymmetricMatrix, tol: f64) -> Result<Realization, EdmError> {
    if !is_edm(m)? {
        return Err(EdmError::NotAnEdm);
    }
    let n = m.order();
    if n == 1 {
        return Ok(Realization::new(vec![vec![]]).expect("single point"));
    }
    let a = schoenberg_transform(m)?;
    let k = n - 1;
    let gram = nalgebra::DMatrix::from_fn(k, k, |i, j| a.matrix.entry_f64(i, j) / 2.0);
    let eig = nalgebra::SymmetricEigen::new(gram);
    let scale = eig.eigenvalues.iter().cloned().fold(1.0f64, f64::max);
    let mut coords = vec![vec![0.0; k]; n];
    for c in 0..k {
        // the exact gate already proved PSD; anything below -tol would be
        // a numerical inconsistency worth hearing about
        let lambda = eig.eigenvalues[c];
        debug_assert!(lambda >= -tol * scale, "eigenvalue {lambda} below -tol");
        let s = if lambda > 0.0 { lambda.sqrt() } else { 0.0 };
        for i in 0..k {
            coords[i][c] = s * eig.eigenvectors[(i, c)];
        }
    }
    Ok(Realization::new(coords).expect("uniform dimension"))
}

/// A distance-matrix certificate of non-flattenability into linf^2.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub name: String,
    pub graph: Graph,
    pub matrix: ExactSymmetricMatrix,
    pub lengths: EdgeLengths,
    /// Vertex pairs whose matrix entries were added to complete the
    /// partial matrix (non-edges of the graph).
    pub completed_pairs: Vec<(usize, usize)>,
}

/// Returns the shipped certificate for `W4` or `K4eK4`: the pattern graph,
/// the completed squared-distance matrix, and the assigned edge lengths.
pub fn certificate(name: &str) -> Result<Certificate, EdmError> {
    match name {
        "W4" => {
            let graph = Graph::w4();
            let matrix = ExactSymmetricMatrix::from_integers(&[
                &[0, 324, 245, 576, 40000],
                &[324, 0, 289, 294, 40000],
                &[245, 289, 0, 400, 40000],
                &[576, 294, 400, 0, 40000],
                &[40000, 40000, 40000, 40000, 0],
            ])?;
            let lengths = EdgeLengths::new(
                [
                    (edge(0, 1), 18.0),
                    (edge(1, 2), 17.0),
                    (edge(2, 3), 20.0),
                    (edge(0, 3), 24.0),
                    (edge(0, 4), 200.0),
                    (edge(1, 4), 200.0),
                    (edge(2, 4), 200.0),
                    (edge(3, 4), 200.0),
                ]
                .into_iter()
                .collect(),
            )
            .expect("nonnegative lengths");
            Ok(Certificate {
                name: "W4".to_string(),
                graph,
                matrix,
                lengths,
                completed_pairs: vec![(0, 2), (1, 3)],
            })
        }
        "K4eK4" | "K4+eK4" => {
            let graph = Graph::k4ek4();
            let matrix = ExactSymmetricMatrix::from_integers(&[
                &[0, 3003, 5041, 5929, 5476, 2116],
                &[3003, 0, 2809, 7744, 6241, 1296],
                &[5041, 2809, 0, 6084, 4765, 2595],
                &[5929, 7744, 6084, 0, 6545, 4655],
                &[5476, 6241, 4765, 6545, 0, 6241],
                &[2116, 1296, 2595, 4655, 6241, 0],
            ])?;
            let lengths = EdgeLengths::new(
                [
                    (edge(0, 2), 71.0),
                    (edge(0, 3), 77.0),
                    (edge(0, 4), 74.0),
                    (edge(0, 5), 46.0),
                    (edge(1, 2), 53.0),
                    (edge(1, 3), 88.0),
                    (edge(1, 4), 79.0),
                    (edge(1, 5), 36.0),
                    (edge(2, 3), 78.0),
                    (edge(4, 5), 79.0),
                ]
                .into_iter()
                .collect(),
            )
            .expect("nonnegative lengths");
            Ok(Certificate {
                name: "K4eK4".to_string(),
                graph,
                matrix,
                lengths,
                completed_pairs: vec![(0, 1), (2, 4), (2, 5), (3, 4), (3, 5)],
            })
        }
        other => Err(EdmError::UnknownName(other.to_string())),
    }
}

pub const CERTIFICATE_NAMES: [&str; 2] = ["W4", "K4eK4"];
