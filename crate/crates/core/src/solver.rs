//! Numerical search for realizations with prescribed edge lengths:
//! gradient descent with backtracking line search from seeded random
//! starts, smooth surrogates for the kinked norms, and p-sweeps. Output
//! residuals are empirical evidence only, never proofs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::space::{
    lp_norm, measurement_map, EdgeLengths, Exponent, Realization, SpaceDescriptor, SpaceError,
};

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("space must be finite-dimensional")]
    InfiniteDimension,
    #[error("target lengths cover {found} edges, graph has {expected}")]
    EdgeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Tuning knobs for the realization search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Residual below which a restart stops early.
    pub tol: f64,
    pub seed: u64,
    /// Smooth surrogate exponent used when p = 1.
    pub smoothing_p1: f64,
    /// Smooth surrogate exponent used when p = inf.
    pub smoothing_pinf: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            restarts: 20,
            max_iters: 3000,
            tol: 1e-10,
            seed: 7,
            smoothing_p1: 1.02,
            smoothing_pinf: 40.0,
        }
    }
}

impl SolveConfig {
    fn surrogate(&self, p: Exponent) -> f64 {
        match p {
            Exponent::Finite(1.0) => self.smoothing_p1,
            Exponent::Finite(p) => p,
            Exponent::Infinity => self.smoothing_pinf,
        }
    }
}

/// Residual sqrt(sum over edges of (|x_v - x_w|_p - d_vw)^2).
pub fn residual(g: &Graph, space: &SpaceDescriptor, target: &EdgeLengths, r: &Realization) -> f64 {
    g.edges()
        .map(|(v, w)| {
            let len = lp_norm(space.p, &r.difference(v, w));
            let want = target.get((v, w)).unwrap_or(0.0);
            (len - want) * (len - want)
        })
        .sum::<f64>()
        .sqrt()
}

/// Minimises the squared length mismatch from `cfg.restarts` random
/// starts and returns the best realization with its residual at the true
/// exponent. For p in {1, inf} the descent runs at the smooth surrogate
/// exponent; the reported residual is always re-evaluated at the true p.
pub fn solve_realization(
    g: &Graph,
    space: &SpaceDescriptor,
    target: &EdgeLengths,
    cfg: &SolveConfig,
) -> Result<(Realization, f64), SolveError> {
    let Some(d) = space.dim.finite() else {
        return Err(SolveError::InfiniteDimension);
    };
    assert!(cfg.restarts >= 1, "need at least one restart");
    if target.len() != g.edge_count() {
        return Err(SolveError::EdgeMismatch {
            expected: g.edge_count(),
            found: target.len(),
        });
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok((Realization::new(Vec::new()).expect("empty"), 0.0));
    }
    let p_opt = Exponent::finite(cfg.surrogate(space.p));
    let box_half = target.max_length().max(1e-3);
    let mut best: Option<(Realization, f64)> = None;
    for restart in 0..cfg.restarts as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(restart));
        let coords: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(-box_half..box_half)).collect())
            .collect();
        let mut x = Realization::new(coords).expect("uniform dimension");
        descend(g, p_opt, target, cfg, &mut x);
        if space.p != p_opt {
            // polish at the true norm; away from kinks the subgradient
            // below is the gradient, and backtracking rejects bad steps
            descend(g, space.p, target, cfg, &mut x);
        }
        let res = residual(g, space, target, &x);
        if best.as_ref().is_none_or(|(_, b)| res < *b) {
            best = Some((x, res));
        }
        if best.as_ref().is_some_and(|(_, b)| *b < cfg.tol) {
            break;
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Gradient descent with Armijo backtracking on the smoothed objective.
fn descend(
    g: &Graph,
    p: Exponent,
    target: &EdgeLengths,
    cfg: &SolveConfig,
    x: &mut Realization,
) {
    let d = x.dim();
    let n = x.len();
    let objective = |x: &Realization| -> f64 {
        g.edges()
            .map(|(v, w)| {
                let len = lp_norm(p, &x.difference(v, w));
                let want = target.get((v, w)).unwrap_or(0.0);
                (len - want) * (len - want)
            })
            .sum()
    };
    let gradient = |x: &Realization| -> Vec<f64> {
        let mut grad = vec![0.0; n * d];
        for (v, w) in g.edges() {
            let diff = x.difference(v, w);
            let len = lp_norm(p, &diff);
            if len < 1e-12 {
                // coincident points: objective is locally flat in the norm
                continue;
            }
            let want = target.get((v, w)).unwrap_or(0.0);
            let coef = 2.0 * (len - want);
            let argmax = diff
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .map(|(i, _)| i)
                .unwrap_or(0);
            for i in 0..d {
                let z = diff[i];
                let dlen = match p {
                    _ if z == 0.0 => 0.0,
                    Exponent::Infinity => {
                        if i == argmax {
                            z.signum()
                        } else {
                            0.0
                        }
                    }
                    Exponent::Finite(pf) => z.signum() * (z.abs() / len).powf(pf - 1.0),
                };
                grad[v * d + i] += coef * dlen;
                grad[w * d + i] -= coef * dlen;
            }
        }
        grad
    };

    let mut step = 0.1;
    let mut f = objective(x);
    for _ in 0..cfg.max_iters {
        if f.sqrt() < cfg.tol {
            break;
        }
        let grad = gradient(x);
        let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
        if gnorm2 < 1e-30 {
            break;
        }
        // Armijo backtracking, warm-started from the last accepted step
        step = f64::min(step * 4.0, 1.0);
        let mut accepted = false;
        for _ in 0..60 {
            let mut trial = x.clone();
            for v in 0..n {
                for i in 0..d {
                    trial.coords_mut(v)[i] -= step * grad[v * d + i];
                }
            }
            let ft = objective(&trial);
            if ft <= f - 1e-4 * step * gnorm2 {
                *x = trial;
                f = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
}

/// Measures a Y-realization and searches for an X-realization with the
/// same edge lengths. A small residual is evidence for that single length
/// vector; a large residual over many restarts is evidence against
/// flattenability, never a proof.
pub fn flatten_witness(
    g: &Graph,
    x: &SpaceDescriptor,
    y: &SpaceDescriptor,
    q: &Realization,
    cfg: &SolveConfig,
) -> Result<(EdgeLengths, Realization, f64), SolveError> {
    let target = measurement_map(g, y, q)?;
    let (r, res) = solve_realization(g, x, &target, cfg)?;
    Ok((target, r, res))
}

/// For each exponent in `grid`, samples random realizations of `g` in
/// lp^D with D = C(n, 2) and reports the worst flatten residual into `x`.
pub fn p_sweep(
    g: &Graph,
    x: &SpaceDescriptor,
    grid: &[Exponent],
    cfg: &SolveConfig,
) -> Result<Vec<(Exponent, f64)>, SolveError> {
    const SAMPLES: u64 = 3;
    let n = g.vertex_count();
    let big_d = (n * n.saturating_sub(1) / 2).max(1);
    let mut out = Vec::new();
    for (pi, &p) in grid.iter().enumerate() {
        let y = SpaceDescriptor::new(p, crate::space::Dim::Finite(big_d));
        let mut worst = 0.0f64;
        for s in 0..SAMPLES {
            let mut rng =
                ChaCha8Rng::seed_from_u64(cfg.seed ^ (pi as u64).wrapping_mul(0x9e37) ^ s);
            let coords: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..big_d).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let q = Realization::new(coords).expect("uniform dimension");
            let (_, _, res) = flatten_witness(g, x, &y, &q, cfg)?;
            worst = worst.max(res);
        }
        out.push((p, worst));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge;
    use std::collections::BTreeMap;

    fn lengths(items: &[((usize, usize), f64)]) -> EdgeLengths {
        EdgeLengths::new(
            items
                .iter()
                .map(|&((u, v), len)| (edge(u, v), len))
                .collect::<BTreeMap<_, _>>(),
        )
        .unwrap()
    }

    #[test]
    fn equilateral_triangle_in_the_plane() {
        let g = Graph::complete(3);
        let target = lengths(&[((0, 1), 1.0), ((0, 2), 1.0), ((1, 2), 1.0)]);
        let space = SpaceDescriptor::finite(2.0, 2);
        let (r, res) = solve_realization(&g, &space, &target, &SolveConfig::default()).unwrap();
        assert!(res < 1e-9, "residual {res}");
        let m = measurement_map(&g, &space, &r).unwrap();
        for (_, len) in m.iter() {
            assert!((len - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn triangle_on_a_line_fails() {
        let g = Graph::complete(3);
        let target = lengths(&[((0, 1), 1.0), ((0, 2), 1.0), ((1, 2), 1.0)]);
        let space = SpaceDescriptor::finite(2.0, 1);
        let cfg = SolveConfig {
            restarts: 50,
            ..SolveConfig::default()
        };
        let (_, res) = solve_realization(&g, &space, &target, &cfg).unwrap();
        // collinear placements cannot do better than a fixed gap
        assert!(res > 0.05, "residual {res}");
    }

    #[test]
    fn k2_exact() {
        let g = Graph::complete(2);
        let target = lengths(&[((0, 1), 2.5)]);
        for space in [
            SpaceDescriptor::finite(2.0, 2),
            SpaceDescriptor::finite(1.0, 2),
            SpaceDescriptor::new(Exponent::Infinity, crate::space::Dim::Finite(2)),
        ] {
            let (_, res) =
                solve_realization(&g, &space, &target, &SolveConfig::default()).unwrap();
            assert!(res < 1e-7, "space {space}: residual {res}");
        }
    }

    #[test]
    fn flatten_k3_from_l23_into_l22() {
        let g = Graph::complete(3);
        let y = SpaceDescriptor::finite(2.0, 3);
        let q = Realization::new(vec![
            vec![0.3, 0.1, -0.4],
            vec![1.0, 0.5, 0.2],
            vec![-0.6, 0.8, 0.9],
        ])
        .unwrap();
        let x = SpaceDescriptor::finite(2.0, 2);
        let (_, _, res) = flatten_witness(&g, &x, &y, &q, &SolveConfig::default()).unwrap();
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn sweep_k3_into_the_plane() {
        let g = Graph::complete(3);
        let x = SpaceDescriptor::finite(2.0, 2);
        let grid = [Exponent::finite(1.0), Exponent::finite(1.5), Exponent::finite(2.0)];
        let out = p_sweep(&g, &x, &grid, &SolveConfig::default()).unwrap();
        assert_eq!(out.len(), 3);
        for (p, res) in out {
            assert!(res < 1e-6, "p {p}: residual {res}");
        }
    }

    #[test]
    fn sweep_k4_equilateral_blocked_in_plane() {
        let g = Graph::complete(4);
        let target = lengths(&[
            ((0, 1), 1.0),
            ((0, 2), 1.0),
            ((0, 3), 1.0),
            ((1, 2), 1.0),
            ((1, 3), 1.0),
            ((2, 3), 1.0),
        ]);
        let x = SpaceDescriptor::finite(2.0, 2);
        let cfg = SolveConfig {
            restarts: 30,
            ..SolveConfig::default()
        };
        let (_, res) = solve_realization(&g, &x, &target, &cfg).unwrap();
        assert!(res > 0.1, "residual {res}");
    }

    #[test]
    fn empty_grid_gives_empty_sweep() {
        let g = Graph::complete(3);
        let x = SpaceDescriptor::finite(2.0, 2);
        assert!(p_sweep(&g, &x, &[], &SolveConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn deterministic_under_seed() {
        let g = Graph::complete(3);
        let target = lengths(&[((0, 1), 1.0), ((0, 2), 1.2), ((1, 2), 0.8)]);
        let space = SpaceDescriptor::finite(1.0, 2);
        let cfg = SolveConfig::default();
        let a = solve_realization(&g, &space, &target, &cfg).unwrap();
        let b = solve_realization(&g, &space, &target, &cfg).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }
}
