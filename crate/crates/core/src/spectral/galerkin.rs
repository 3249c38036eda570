//! Fourier–Galerkin (Hill's method) eigensolver for quasiperiodic Hill operators.
//!
//! Writing u(t) = e^{iat} v(t) with a = α/2π and v 2π-periodic, the operator
//! in the basis e^{i(n+a)t}/√(2π), |n| ≤ N, is the matrix
//!
//! ```text
//! A[m][n] = δ_{mn} ((n + a)² + offset) − q̂_{|m−n|}
//! ```
//!
//! which is real symmetric because q is even and real.

use std::f64::consts::TAU as TWO_PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::operator::QuasiPeriodicOperator;
use crate::error::{Error, Result};

/// Default number of positive Fourier modes (matrix size 2·64 + 1).
pub const DEFAULT_MODES: usize = 64;
/// Largest truncation tried by the convergence check (matrix size 513).
pub const MAX_MODES: usize = 256;
/// Doubling the truncation must move each requested eigenvalue by less than this.
pub const CONVERGENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenDecomposition {
    pub alpha: f64,
    pub offset: f64,
    pub n_modes: usize,
    /// Ascending eigenvalues of the full operator (offset included).
    pub eigenvalues: Vec<f64>,
    /// Real coefficient vectors c_n, n = −N..=N, in the basis e^{i(n+a)t}/√(2π).
    pub eigenvectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    fn a(&self) -> f64 {
        self.alpha / TWO_PI
    }

    /// φ_k(t) = Σ c_n e^{i(n+a)t} / √(2π).
    pub fn eval(&self, k: usize, t: f64) -> Complex64 {
        let a = self.a();
        let n0 = self.n_modes as f64;
        self.eigenvectors[k]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * Complex64::from_polar(1.0, (i as f64 - n0 + a) * t))
            .sum::<Complex64>()
            / TWO_PI.sqrt()
    }

    /// Coefficient of the basis function e^{i(n+a)t}/√(2π) in φ_k.
    pub fn coefficient(&self, k: usize, n: i64) -> f64 {
        let idx = n + self.n_modes as i64;
        if idx < 0 {
            return 0.0;
        }
        self.eigenvectors[k].get(idx as usize).copied().unwrap_or(0.0)
    }

    /// L² inner product over [−π, π] of two eigenfunctions.
    pub fn inner(&self, k: usize, l: usize) -> f64 {
        self.eigenvectors[k]
            .iter()
            .zip(&self.eigenvectors[l])
            .map(|(a, b)| a * b)
            .sum()
    }
}

fn galerkin_matrix(op: &QuasiPeriodicOperator, n_modes: usize) -> DMatrix<f64> {
    let dim = 2 * n_modes + 1;
    let a = op.alpha / TWO_PI;
    DMatrix::from_fn(dim, dim, |r, c| {
        let diff = r.abs_diff(c);
        let mut v = -op.coeff(diff);
        if r == c {
            let n = r as f64 - n_modes as f64 + a;
            v += n * n + op.offset;
        }
        v
    })
}

/// Eigenpairs of the truncated problem at exactly `n_modes`, no convergence check.
pub fn galerkin_fixed(op: &QuasiPeriodicOperator, n_modes: usize, k_max: usize) -> Result<EigenDecomposition> {
    let dim = 2 * n_modes + 1;
    if k_max == 0 || k_max > dim {
        return Err(Error::InvalidArgument(format!("k_max = {k_max} outside 1..={dim}")));
    }
    let eig = SymmetricEigen::try_new(galerkin_matrix(op, n_modes), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::SpectralConvergence {
            index: 0,
            shift: f64::NAN,
            modes: n_modes,
        })?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let order = &order[..k_max];
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = order
        .iter()
        .map(|&i| {
            let col = eig.eigenvectors.column(i);
            // fix the sign so that the largest coefficient is positive
            let pivot = col.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
            let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
            col.iter().map(|v| sign * v).collect()
        })
        .collect();
    Ok(EigenDecomposition {
        alpha: op.alpha,
        offset: op.offset,
        n_modes,
        eigenvalues,
        eigenvectors,
    })
}

/// The `k_max` lowest eigenpairs, starting at `n_modes` and doubling the
/// truncation until the eigenvalues move by less than [`CONVERGENCE_TOL`].
///
/// The coarser of the last two truncations is returned: both agree to the
/// tolerance, and rounding in the dense solver grows with the matrix norm ~ N².
pub fn eigensolve_galerkin(op: &QuasiPeriodicOperator, n_modes: usize, k_max: usize) -> Result<EigenDecomposition> {
    if n_modes < 2 * k_max + 8 {
        return Err(Error::InvalidArgument(format!(
            "n_modes = {n_modes} must be at least 2·k_max + 8 = {}",
            2 * k_max + 8
        )));
    }
    let mut coarse = galerkin_fixed(op, n_modes, k_max)?;
    let mut modes = n_modes;
    loop {
        let next = 2 * modes;
        let fine = galerkin_fixed(op, next, k_max)?;
        let (index, shift) = coarse
            .eigenvalues
            .iter()
            .zip(&fine.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .enumerate()
            .fold((0, 0.0), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc });
        if shift < CONVERGENCE_TOL {
            return Ok(coarse);
        }
        if next >= MAX_MODES {
            return Err(Error::SpectralConvergence {
                index,
                shift,
                modes: next,
            });
        }
        coarse = fine;
        modes = next;
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::limit_band;

    #[test]
    fn constant_potential_periodic_ground_state() {
        let op = QuasiPeriodicOperator::constant(1.0, 0.0, 0.0);
        let e = eigensolve_galerkin(&op, 16, 4).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        // constant eigenfunction
        assert!((e.coefficient(0, 0).abs() - 1.0).abs() < 1e-14);
        assert!((e.eval(0, 1.234).norm() - 1.0 / TWO_PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn constant_potential_antiperiodic_ground_state() {
        let op = QuasiPeriodicOperator::constant(1.0, 0.0, PI);
        let e = eigensolve_galerkin(&op, 16, 4).unwrap();
        assert!((e.eigenvalues[0] + 0.75).abs() < 1e-14);
    }

    #[test]
    fn constant_potential_matches_limit_bands() {
        for alpha in [0.0, 0.3, 1.0, 2.0, PI] {
            let op = QuasiPeriodicOperator::constant(1.0, 0.0, alpha);
            let e = eigensolve_galerkin(&op, 20, 6).unwrap();
            for k in 0..6 {
                assert!((e.eigenvalues[k] - limit_band(k, alpha)).abs() < 1e-13, "k={k} α={alpha}");
            }
        }
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let (_, op) = crate::spectral::operator_for_tau(-1.5, 0, 0.7).unwrap();
        let e = eigensolve_galerkin(&op, 32, 5).unwrap();
        for k in 0..5 {
            for l in 0..5 {
                let expect = if k == l { 1.0 } else { 0.0 };
                assert!((e.inner(k, l) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quasiperiodic_boundary_relation() {
        let (_, op) = crate::spectral::operator_for_tau(-2.0, 0, 1.1).unwrap();
        let e = eigensolve_galerkin(&op, 32, 3).unwrap();
        let phase = Complex64::from_polar(1.0, 1.1);
        for k in 0..3 {
            let (l, r) = (e.eval(k, -PI), e.eval(k, PI));
            assert!((r - phase * l).norm() < 1e-12);
        }
    }

    #[test]
    fn offset_shifts_spectrum() {
        let (_, op) = crate::spectral::operator_for_tau(-2.0, 0, 0.5).unwrap();
        let base = galerkin_fixed(&op, 32, 3).unwrap();
        let shifted = galerkin_fixed(&op.with_mode(3), 32, 3).unwrap();
        for k in 0..3 {
            assert!((shifted.eigenvalues[k] - base.eigenvalues[k] - op.with_mode(3).offset).abs() < 1e-12);
        }
    }

    #[test]
    fn precondition_on_modes() {
        let op = QuasiPeriodicOperator::constant(1.0, 0.0, 0.0);
        assert!(matches!(eigensolve_galerkin(&op, 10, 5), Err(Error::InvalidArgument(_))));
    }
}
