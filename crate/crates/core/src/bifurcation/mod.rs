//! Morse index on screw-symmetric subspaces and the parameter values at which
//! its eigenvalues cross zero.

mod crossing;
mod flow;
mod index;
mod symmetry;

pub use crossing::{
    alpha_grid, asymptotic_crossing, asymptotic_second_crossing, central_slope, critical_tau_star, find_collisions,
    first_bifurcation, flow_function, second_crossing, transversality, BifurcationPoint, Collision, CrossingMode,
    TauStar, COLLISION_TOL, FLOW_TOL, POLISH_MODES, SLOPE_STEP, TAU_TOL,
};
pub use flow::{linear_grid, spectral_flow_table, FlowRow};
pub use index::{index, index_for_profile, mode_cutoff, Contribution, IndexReport, INDEX_BANDS};
pub use symmetry::SymmetryClass;
