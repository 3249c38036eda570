//! Band spectrum of the reduced Jacobi operators `−∂_t² − q(t) + s_τ² j²`
//! with q(t) = s_τ² τ² cosh(2σ(s_τ t)), under α-quasiperiodic conditions.

mod bands;
mod galerkin;
mod jacobi;
mod monodromy;
mod operator;

pub use bands::{band_function, band_intervals, band_table, band_values, limit_band, Band, BandTable};
pub use galerkin::{eigensolve_galerkin, galerkin_fixed, EigenDecomposition, CONVERGENCE_TOL, DEFAULT_MODES, MAX_MODES};
pub use jacobi::{axial_field_bands, jacobi_field_residual, JacobiField};
pub use monodromy::{discriminant_residual, eigensolve_monodromy, monodromy, Monodromy};
pub use operator::{
    build_operator, fold_phase, operator_for_tau, Potential, QuasiPeriodicOperator, COEFF_TAIL_LIMIT, DEFAULT_COEFFS,
    DEFAULT_PROFILE_SAMPLES,
};
