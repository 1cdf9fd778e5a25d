//! Deciding edge-length-preserving flattenability of finite graphs
//! between lp spaces: minor testing, exact distance-matrix certificates,
//! rigidity-matroid independence, and numeric probes for open cases.

// matrix code indexes rows and columns on purpose
#![allow(clippy::needless_range_loop)]

pub mod decider;
pub mod edm;
pub mod graph;
pub mod minor;
pub mod rigidity;
pub mod solver;
pub mod space;

pub use decider::{decide, explain, kn_dim_table, Status, Verdict, Witness};
pub use edm::{certificate, Certificate, ExactSymmetricMatrix, CERTIFICATE_NAMES};
pub use graph::{Graph, MinorModel, Pattern};
pub use minor::{forbidden_minor_check, has_minor, is_k4_minor_free};
pub use rigidity::{
    forest_partition, graded_independence_check, is_independent_numeric, norm_gradient,
    rigidity_matrix,
};
pub use solver::{flatten_witness, p_sweep, solve_realization, SolveConfig};
pub use space::{
    frechet_embed, lp_norm, measurement_map, norlander_range, Dim, EdgeLengths, Exponent,
    Realization, SpaceDescriptor,
};
