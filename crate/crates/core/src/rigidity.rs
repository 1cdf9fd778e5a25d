//! Rigidity matrices for lp^d, numeric independence testing with witness
//! realizations, d-forest partitions by matroid-union augmentation, and
//! the graded independence check.

use std::collections::{HashMap, HashSet, VecDeque};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::space::{Exponent, Realization, SpaceDescriptor};

/// Relative singular-value threshold for rank decisions.
pub const RANK_REL_TOL: f64 = 1e-9;

/// Resampling cap per independence trial when a draw hits a
/// nondifferentiable point.
pub const RESAMPLE_CAP: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum RigidityError {
    #[error("norm is not differentiable at the zero vector")]
    ZeroVector,
    #[error("l1 norm is not differentiable: coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("linf norm is not differentiable: max magnitude tied at coordinates {0} and {1}")]
    TiedMaximum(usize, usize),
    #[error("realization is not differentiable on edge ({0}, {1}): {2}")]
    EdgeNondifferentiable(Vertex, Vertex, Box<RigidityError>),
    #[error("space must be finite-dimensional")]
    InfiniteDimension,
    #[error("realization covers {found} vertices, graph has {expected}")]
    VertexMismatch { expected: usize, found: usize },
    #[error("ordering is not a permutation of the vertex set")]
    BadOrdering,
}

/// Derivative of the lp norm at a nonzero vector `z`, as a dual vector of
/// dual norm 1.
pub fn norm_gradient(p: Exponent, z: &[f64]) -> Result<Vec<f64>, RigidityError> {
    if z.iter().all(|&x| x == 0.0) {
        return Err(RigidityError::ZeroVector);
    }
    match p {
        Exponent::Finite(1.0) => {
            if let Some(i) = z.iter().position(|&x| x == 0.0) {
                return Err(RigidityError::ZeroCoordinate(i));
            }
            Ok(z.iter().map(|&x| x.signum()).collect())
        }
        Exponent::Infinity => {
            let mut best = 0;
            for i in 1..z.len() {
                if z[i].abs() > z[best].abs() {
                    best = i;
                }
            }
            if let Some(other) = (0..z.len())
                .find(|&i| i != best && z[i].abs() == z[best].abs())
            {
                return Err(RigidityError::TiedMaximum(best.min(other), best.max(other)));
            }
            let mut grad = vec![0.0; z.len()];
            grad[best] = z[best].signum();
            Ok(grad)
        }
        Exponent::Finite(p) => {
            let norm = crate::space::lp_norm(Exponent::Finite(p), z);
            Ok(z
                .iter()
                .map(|&x| x.signum() * (x.abs() / norm).powf(p - 1.0))
                .collect())
        }
    }
}

/// Jacobian of the measurement map at `r`: one row per edge in sorted edge
/// order, with the norming functional in the v-block and its negation in
/// the w-block.
pub fn rigidity_matrix(
    g: &Graph,
    space: &SpaceDescriptor,
    r: &Realization,
) -> Result<DMatrix<f64>, RigidityError> {
    let Some(d) = space.dim.finite() else {
        return Err(RigidityError::InfiniteDimension);
    };
    if r.len() != g.vertex_count() {
        return Err(RigidityError::VertexMismatch {
            expected: g.vertex_count(),
            found: r.len(),
        });
    }
    let edges = g.edge_vec();
    let mut m = DMatrix::zeros(edges.len(), g.vertex_count() * d);
    for (row, &(v, w)) in edges.iter().enumerate() {
        let phi = norm_gradient(space.p, &r.difference(v, w))
            .map_err(|e| RigidityError::EdgeNondifferentiable(v, w, Box::new(e)))?;
        for (i, &x) in phi.iter().enumerate() {
            m[(row, v * d + i)] = x;
            m[(row, w * d + i)] = -x;
        }
    }
    Ok(m)
}

/// Numerical rank by singular-value thresholding relative to the largest
/// singular value.
pub fn numeric_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > rel_tol * max)
        .count()
}

/// Outcome of a randomized independence test. A positive answer carries a
/// witness realization and is a certificate; a negative answer is only
/// evidence after the given number of trials.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub independent: bool,
    pub trials: usize,
    pub witness: Option<Realization>,
}

/// Searches for a realization where the rigidity matrix has full row rank
/// `|E|`. Coordinates are drawn i.i.d. uniform on [-1, 1]; draws hitting
/// nondifferentiable points are rejected, up to [`RESAMPLE_CAP`] per trial.
pub fn is_independent_numeric(
    g: &Graph,
    space: &SpaceDescriptor,
    trials: usize,
    seed: u64,
) -> Result<IndependenceReport, RigidityError> {
    let Some(d) = space.dim.finite() else {
        return Err(RigidityError::InfiniteDimension);
    };
    assert!(trials >= 1, "need at least one trial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if g.edge_count() == 0 {
        let zero = Realization::new(vec![vec![0.0; d]; g.vertex_count()]).expect("uniform");
        return Ok(IndependenceReport {
            independent: true,
            trials: 0,
            witness: Some(zero),
        });
    }
    for trial in 1..=trials {
        for _ in 0..RESAMPLE_CAP {
            let coords: Vec<Vec<f64>> = (0..g.vertex_count())
                .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let r = Realization::new(coords).expect("uniform dimension");
            let Ok(m) = rigidity_matrix(g, space, &r) else {
                continue;
            };
            if numeric_rank(&m, RANK_REL_TOL) == g.edge_count() {
                return Ok(IndependenceReport {
                    independent: true,
                    trials: trial,
                    witness: Some(r),
                });
            }
            break;
        }
    }
    Ok(IndependenceReport {
        independent: false,
        trials,
        witness: None,
    })
}

/// Partitions the edge set into at most `d` forests when possible, by
/// matroid-union augmenting paths over the d-fold graphic matroid. `None`
/// means no such partition exists.
pub fn forest_partition(g: &Graph, d: usize) -> Option<Vec<Vec<Edge>>> {
    assert!(d >= 1, "need at least one forest");
    // forest index currently assigned to each placed edge
    let mut assign: HashMap<Edge, usize> = HashMap::new();
    for e in g.edge_vec() {
        if !insert_edge(g, d, &mut assign, e) {
            return None;
        }
    }
    let mut forests = vec![Vec::new(); d];
    for (e, i) in assign {
        forests[i].push(e);
    }
    for f in &mut forests {
        f.sort();
    }
    Some(forests)
}

/// BFS over the exchange graph: arcs go from an edge to the edges on the
/// cycle it would close in each forest; an edge that closes no cycle in
/// some forest ends an augmenting path.
fn insert_edge(g: &Graph, d: usize, assign: &mut HashMap<Edge, usize>, e: Edge) -> bool {
    let mut parent: HashMap<Edge, (Edge, usize)> = HashMap::new();
    let mut queue = VecDeque::from([e]);
    let mut visited = HashSet::from([e]);
    while let Some(f) = queue.pop_front() {
        for i in 0..d {
            if assign.get(&f) == Some(&i) {
                continue;
            }
            match cycle_in_forest(g, assign, i, f) {
                None => {
                    // augment: walk back to the root, shifting each edge
                    // into the forest it was blocked from
                    let mut cur = f;
                    let mut target = i;
                    loop {
                        let prev = assign.insert(cur, target);
                        let Some(&(par, via)) = parent.get(&cur) else {
                            debug_assert!(cur == e && prev.is_none());
                            return true;
                        };
                        debug_assert_eq!(prev, Some(via));
                        cur = par;
                        target = via;
                    }
                }
                Some(cycle) => {
                    for c in cycle {
                        if visited.insert(c) {
                            parent.insert(c, (f, i));
                            queue.push_back(c);
                        }
                    }
                }
            }
        }
    }
    false
}

/// The cycle that adding `f` to forest `i` would close, as the forest
/// edges on the tree path between f's endpoints; `None` if f is acyclic
/// there.
fn cycle_in_forest(
    g: &Graph,
    assign: &HashMap<Edge, usize>,
    i: usize,
    f: Edge,
) -> Option<Vec<Edge>> {
    let mut adj: Vec<Vec<(Vertex, Edge)>> = vec![Vec::new(); g.vertex_count()];
    for (&(u, v), &j) in assign {
        if j == i && (u, v) != f {
            adj[u].push((v, (u, v)));
            adj[v].push((u, (u, v)));
        }
    }
    let (s, t) = f;
    let mut pred: HashMap<Vertex, (Vertex, Edge)> = HashMap::new();
    let mut queue = VecDeque::from([s]);
    let mut seen = HashSet::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            let mut path = Vec::new();
            let mut cur = t;
            while cur != s {
                let (prev, via) = pred[&cur];
                path.push(via);
                cur = prev;
            }
            return Some(path);
        }
        for &(v, via) in &adj[u] {
            if seen.insert(v) {
                pred.insert(v, (u, via));
                queue.push_back(v);
            }
        }
    }
    None
}

/// Checks the graded independence property at `r` under the given vertex
/// ordering: each vertex's norming functionals toward earlier neighbors
/// must be linearly independent.
pub fn graded_independence_check(
    g: &Graph,
    space: &SpaceDescriptor,
    r: &Realization,
    ordering: &[Vertex],
) -> Result<bool, RigidityError> {
    let Some(d) = space.dim.finite() else {
        return Err(RigidityError::InfiniteDimension);
    };
    let n = g.vertex_count();
    if ordering.len() != n || {
        let mut s: Vec<Vertex> = ordering.to_vec();
        s.sort_unstable();
        s != (0..n).collect::<Vec<_>>()
    } {
        return Err(RigidityError::BadOrdering);
    }
    if r.len() != n {
        return Err(RigidityError::VertexMismatch {
            expected: n,
            found: r.len(),
        });
    }
    for j in 1..n {
        let vj = ordering[j];
        let mut rows = Vec::new();
        for &vi in &ordering[..j] {
            if g.has_edge(vi, vj) {
                let phi = norm_gradient(space.p, &r.difference(vj, vi)).map_err(|e| {
                    RigidityError::EdgeNondifferentiable(
                        vi.min(vj),
                        vi.max(vj),
                        Box::new(e),
                    )
                })?;
                rows.push(phi);
            }
        }
        if rows.is_empty() {
            continue;
        }
        let m = DMatrix::from_fn(rows.len(), d, |a, b| rows[a][b]);
        if numeric_rank(&m, RANK_REL_TOL) < rows.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::lp_norm;

    fn real(coords: Vec<Vec<f64>>) -> Realization {
        Realization::new(coords).unwrap()
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(
            norm_gradient(Exponent::finite(2.0), &[3.0, 4.0]).unwrap(),
            vec![0.6, 0.8]
        );
        assert_eq!(
            norm_gradient(Exponent::Infinity, &[1.0, -5.0, 2.0]).unwrap(),
            vec![0.0, -1.0, 0.0]
        );
        assert_eq!(
            norm_gradient(Exponent::finite(1.0), &[2.0, 0.0, 1.0]),
            Err(RigidityError::ZeroCoordinate(1))
        );
        assert_eq!(
            norm_gradient(Exponent::Infinity, &[3.0, -3.0]),
            Err(RigidityError::TiedMaximum(0, 1))
        );
        assert_eq!(
            norm_gradient(Exponent::finite(2.0), &[0.0, 0.0]),
            Err(RigidityError::ZeroVector)
        );
    }

    #[test]
    fn gradient_has_dual_norm_one() {
        let cases: &[(Exponent, &[f64])] = &[
            (Exponent::finite(1.0), &[0.4, -1.2, 0.3]),
            (Exponent::finite(1.5), &[0.4, -1.2, 0.3]),
            (Exponent::finite(2.0), &[0.4, -1.2, 0.3]),
            (Exponent::finite(3.0), &[0.4, -1.2, 0.3]),
            (Exponent::Infinity, &[0.4, -1.2, 0.3]),
        ];
        for &(p, z) in cases {
            let phi = norm_gradient(p, z).unwrap();
            let dual = lp_norm(p.conjugate(), &phi);
            assert!((dual - 1.0).abs() < 1e-12, "p={p}: dual norm {dual}");
        }
    }

    #[test]
    fn k2_row_in_l22() {
        let g = Graph::complete(2);
        let r = real(vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        let m = rigidity_matrix(&g, &SpaceDescriptor::finite(2.0, 2), &r).unwrap();
        assert_eq!(m.nrows(), 1);
        assert_eq!(
            m.row(0).iter().cloned().collect::<Vec<_>>(),
            vec![1.0, 0.0, -1.0, 0.0]
        );
    }

    #[test]
    fn generic_ranks_in_l22() {
        let space = SpaceDescriptor::finite(2.0, 2);
        let k3 = Graph::complete(3);
        let r3 = real(vec![vec![0.1, 0.2], vec![1.3, 0.4], vec![0.6, 1.7]]);
        let m3 = rigidity_matrix(&k3, &space, &r3).unwrap();
        assert_eq!(numeric_rank(&m3, RANK_REL_TOL), 3);

        let k4 = Graph::complete(4);
        let r4 = real(vec![
            vec![0.1, 0.2],
            vec![1.3, 0.4],
            vec![0.6, 1.7],
            vec![-0.8, 0.9],
        ]);
        let m4 = rigidity_matrix(&k4, &space, &r4).unwrap();
        assert_eq!(numeric_rank(&m4, RANK_REL_TOL), 5);
    }

    #[test]
    fn nondifferentiable_edge_is_named() {
        let g = Graph::complete(2);
        let r = real(vec![vec![1.0, 1.0], vec![0.0, 0.0]]);
        let err = rigidity_matrix(&g, &SpaceDescriptor::new(Exponent::Infinity, crate::space::Dim::Finite(2)), &r)
            .unwrap_err();
        assert!(matches!(err, RigidityError::EdgeNondifferentiable(0, 1, _)));
    }

    #[test]
    fn independence_examples() {
        let space = SpaceDescriptor::finite(2.0, 2);
        let k3 = is_independent_numeric(&Graph::complete(3), &space, 50, 7).unwrap();
        assert!(k3.independent);
        let w = k3.witness.unwrap();
        let m = rigidity_matrix(&Graph::complete(3), &space, &w).unwrap();
        assert_eq!(numeric_rank(&m, RANK_REL_TOL), 3);

        let k4 = is_independent_numeric(&Graph::complete(4), &space, 100, 7).unwrap();
        assert!(!k4.independent);
    }

    #[test]
    fn k4_is_independent_in_linf2() {
        let space = SpaceDescriptor::new(Exponent::Infinity, crate::space::Dim::Finite(2));
        let rep = is_independent_numeric(&Graph::complete(4), &space, 50, 7).unwrap();
        assert!(rep.independent);
        assert!(forest_partition(&Graph::complete(4), 2).is_some());
    }

    #[test]
    fn forest_partition_examples() {
        let k4 = Graph::complete(4);
        let parts = forest_partition(&k4, 2).expect("two forests");
        assert_eq!(parts.len(), 2);
        assert_eq!(parts.iter().map(Vec::len).sum::<usize>(), 6);
        for part in &parts {
            let mut f = Graph::empty(4);
            for &(u, v) in part {
                f = f.add_edge(u, v).unwrap();
            }
            assert!(f.is_forest());
        }
        assert!(forest_partition(&k4, 1).is_none());

        let tree = Graph::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let parts = forest_partition(&tree, 1).expect("a tree is one forest");
        assert_eq!(parts[0].len(), 4);
    }

    #[test]
    fn k5_needs_three_forests() {
        let k5 = Graph::complete(5);
        // 10 edges > 2 * (5 - 1), so two forests cannot hold K5
        assert!(forest_partition(&k5, 2).is_none());
        assert!(forest_partition(&k5, 3).is_some());
    }

    #[test]
    fn graded_examples() {
        let space = SpaceDescriptor::finite(2.0, 2);
        let r3 = real(vec![vec![0.1, 0.2], vec![1.3, 0.4], vec![0.6, 1.7]]);
        assert!(graded_independence_check(&Graph::complete(3), &space, &r3, &[0, 1, 2]).unwrap());

        let r4 = real(vec![
            vec![0.1, 0.2],
            vec![1.3, 0.4],
            vec![0.6, 1.7],
            vec![-0.8, 0.9],
        ]);
        // top vertex of K4 has 3 back edges but the dual plane has dim 2
        assert!(!graded_independence_check(&Graph::complete(4), &space, &r4, &[0, 1, 2, 3]).unwrap());

        let r2 = real(vec![vec![0.0, 0.0], vec![1.0, 0.5]]);
        assert!(graded_independence_check(&Graph::complete(2), &space, &r2, &[1, 0]).unwrap());
        assert_eq!(
            graded_independence_check(&Graph::complete(2), &space, &r2, &[0, 0]),
            Err(RigidityError::BadOrdering)
        );
    }

    #[test]
    fn graded_implies_full_rank() {
        let space = SpaceDescriptor::finite(2.0, 2);
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let r = real(vec![
            vec![0.1, 0.2],
            vec![1.3, 0.4],
            vec![0.6, 1.7],
            vec![-0.8, 0.9],
        ]);
        assert!(graded_independence_check(&g, &space, &r, &[0, 1, 3, 2]).unwrap());
        let m = rigidity_matrix(&g, &space, &r).unwrap();
        assert_eq!(numeric_rank(&m, RANK_REL_TOL), g.edge_count());
    }

    #[test]
    fn finite_difference_rows() {
        let space = SpaceDescriptor::finite(1.5, 2);
        let g = Graph::complete(3);
        let r = real(vec![vec![0.1, 0.2], vec![1.3, 0.4], vec![0.6, 1.7]]);
        let m = rigidity_matrix(&g, &space, &r).unwrap();
        let h = 1e-6;
        for (row, (v, w)) in g.edges().enumerate() {
            for col in 0..6 {
                let (vertex, coord) = (col / 2, col % 2);
                let mut plus = r.clone();
                plus.coords_mut(vertex)[coord] += h;
                let mut minus = r.clone();
                minus.coords_mut(vertex)[coord] -= h;
                let fd = (lp_norm(space.p, &plus.difference(v, w))
                    - lp_norm(space.p, &minus.difference(v, w)))
                    / (2.0 * h);
                assert!(
                    (m[(row, col)] - fd).abs() < 1e-5,
                    "row {row} col {col}: {} vs {fd}",
                    m[(row, col)]
                );
            }
        }
    }
}
