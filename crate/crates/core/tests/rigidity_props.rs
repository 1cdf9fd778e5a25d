//! Rigidity invariants beyond the acceptance gate: the Nash-Williams
//! density oracle for forest partitions, the d = 3 linf equivalence, and
//! graded independence implying full rank at random points.

use flatnorm::graph::Graph;
use flatnorm::minor::nonisomorphic_graphs;
use flatnorm::rigidity::{
    forest_partition, graded_independence_check, is_independent_numeric, numeric_rank,
    rigidity_matrix, RANK_REL_TOL,
};
use flatnorm::space::{Dim, Exponent, Realization, SpaceDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Nash-Williams: E partitions into d forests iff every vertex subset S
/// with at least 2 vertices induces at most d(|S| - 1) edges.
fn nash_williams_partitionable(g: &Graph, d: usize) -> bool {
    let n = g.vertex_count();
    for mask in 1u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if verts.len() < 2 {
            continue;
        }
        let induced = g
            .edges()
            .filter(|&(u, v)| verts.contains(&u) && verts.contains(&v))
            .count();
        if induced > d * (verts.len() - 1) {
            return false;
        }
    }
    true
}

#[test]
fn forest_partition_matches_nash_williams() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(2..=7);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(0.6) {
                    g = g.add_edge(u, v).unwrap();
                }
            }
        }
        for d in 1..=3 {
            let partition = forest_partition(&g, d);
            assert_eq!(
                partition.is_some(),
                nash_williams_partitionable(&g, d),
                "d={d}, graph {g:?}"
            );
            if let Some(forests) = partition {
                assert!(forests.len() <= d);
                let total: usize = forests.iter().map(Vec::len).sum();
                assert_eq!(total, g.edge_count());
                for forest in forests {
                    let mut f = Graph::empty(n);
                    for (u, v) in forest {
                        f = f.add_edge(u, v).unwrap();
                    }
                    assert!(f.is_forest());
                }
            }
        }
    }
}

#[test]
fn linf_independence_matches_forests_in_dim_3() {
    let space = SpaceDescriptor::new(Exponent::Infinity, Dim::Finite(3));
    for n in 1..=6 {
        for g in nonisomorphic_graphs(n) {
            let numeric = is_independent_numeric(&g, &space, 50, 208).unwrap();
            assert_eq!(
                numeric.independent,
                forest_partition(&g, 3).is_some(),
                "graph {g:?}"
            );
        }
    }
}

#[test]
fn graded_independence_implies_full_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut confirmed = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=5);
        let d = rng.gen_range(2..=3);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(0.5) {
                    g = g.add_edge(u, v).unwrap();
                }
            }
        }
        let coords: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let r = Realization::new(coords).unwrap();
        let p = *[Exponent::finite(1.5), Exponent::finite(2.0), Exponent::finite(3.0)]
            [..]
            .get(rng.gen_range(0..3))
            .unwrap();
        let space = SpaceDescriptor::new(p, Dim::Finite(d));
        let ordering: Vec<usize> = (0..n).collect();
        if graded_independence_check(&g, &space, &r, &ordering).unwrap() {
            let m = rigidity_matrix(&g, &space, &r).unwrap();
            assert_eq!(
                numeric_rank(&m, RANK_REL_TOL),
                g.edge_count(),
                "graph {g:?} at p={p} d={d}"
            );
            confirmed += 1;
        }
    }
    assert!(confirmed > 20, "only {confirmed} graded instances seen");
}
