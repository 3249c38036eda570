//! Residuals of the geometric Jacobi fields under the discretized operator.

use serde::{Deserialize, Serialize};

use super::galerkin::{galerkin_fixed, DEFAULT_MODES};
use super::operator::{build_operator, QuasiPeriodicOperator, DEFAULT_COEFFS};
use crate::delaunay::ProfileSolution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacobiField {
    /// ∂_sσ, from translation along the axis; lives on the j = 0 mode.
    Axial,
    /// sinh σ (τ < 0) or cosh σ (τ > 0), from translations orthogonal to the
    /// axis; lives on the j = 1 mode.
    Transverse,
}

/// sup_t |(L_{τ,j} f)(t)| / sup_t |f(t)| for the geometric field f, with L
/// applied through the periodic Fourier–Galerkin matrix truncated to
/// `n_modes`. Vanishes up to discretization error.
pub fn jacobi_field_residual(profile: &ProfileSolution, field: JacobiField, n_modes: usize) -> Result<f64> {
    let n = profile.samples_per_period;
    if 2 * n_modes + 1 > n {
        return Err(Error::InvalidArgument(format!(
            "{n_modes} modes need more than {n} samples per period"
        )));
    }
    let (j, values): (u32, Vec<f64>) = match field {
        JacobiField::Axial => (0, profile.samples[..n].iter().map(|p| p.dsigma).collect()),
        JacobiField::Transverse => (
            1,
            profile.samples[..n]
                .iter()
                .map(|p| if profile.tau > 0.0 { p.sigma.cosh() } else { p.sigma.sinh() })
                .collect(),
        ),
    };
    let op = build_operator(profile, j, 0.0, DEFAULT_COEFFS.min(n / 2))?;
    Ok(apply_periodic(&op, &values, n_modes))
}

/// Indices k with λ_k(τ, 0) = 0 (to 1e−8) among the first four periodic
/// eigenvalues: the band positions at which the axial field ∂_sσ can sit.
/// For τ < 0 this is {2}; for τ > 0 it is observed numerically, not assumed.
pub fn axial_field_bands(profile: &ProfileSolution) -> Result<Vec<usize>> {
    let op = build_operator(profile, 0, 0.0, DEFAULT_COEFFS.min(profile.samples_per_period / 2))?;
    let e = galerkin_fixed(&op, DEFAULT_MODES, 4)?;
    Ok(e.eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, l)| l.abs() <= 1e-8)
        .map(|(k, _)| k)
        .collect())
}

/// Applies the α = 0 Galerkin matrix to samples of a periodic function and
/// returns the relative sup-norm of the result on the sample grid.
fn apply_periodic(op: &QuasiPeriodicOperator, values: &[f64], n_modes: usize) -> f64 {
    let n = values.len();
    let w = std::f64::consts::TAU / n as f64;
    let nm = n_modes as i64;
    // complex Fourier coefficients f̂_m = (1/N) Σ f_i e^{−imt_i}
    let coeff: Vec<(f64, f64)> = (-nm..=nm)
        .map(|m| {
            values.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, &v)| {
                let (s, c) = (w * (m * i as i64) as f64).sin_cos();
                (re + v * c / n as f64, im - v * s / n as f64)
            })
        })
        .collect();
    let image: Vec<(f64, f64)> = (-nm..=nm)
        .map(|m| {
            let mut acc = (0.0, 0.0);
            for (idx, &(re, im)) in coeff.iter().enumerate() {
                let k = idx as i64 - nm;
                let mut a = -op.coeff((m - k).unsigned_abs() as usize);
                if k == m {
                    a += (m * m) as f64 + op.offset;
                }
                acc.0 += a * re;
                acc.1 += a * im;
            }
            acc
        })
        .collect();
    let sup_f = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sup_lf = (0..n)
        .map(|i| {
            image
                .iter()
                .enumerate()
                .map(|(idx, &(re, im))| {
                    let (s, c) = (w * ((idx as i64 - nm) * i as i64) as f64).sin_cos();
                    re * c - im * s
                })
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max);
    sup_lf / sup_f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{solve_profile, ProfileOptions};

    fn profile(tau: f64) -> ProfileSolution {
        solve_profile(tau, 512, 1, &ProfileOptions::default()).unwrap()
    }

    #[test]
    fn axial_field_is_null() {
        let r = jacobi_field_residual(&profile(-1.0), JacobiField::Axial, 64).unwrap();
        assert!(r <= 1e-8, "{r}");
    }

    #[test]
    fn transverse_field_nodoid() {
        let r = jacobi_field_residual(&profile(-1.0), JacobiField::Transverse, 64).unwrap();
        assert!(r <= 1e-8, "{r}");
    }

    #[test]
    fn transverse_field_unduloid() {
        let r = jacobi_field_residual(&profile(0.5), JacobiField::Transverse, 64).unwrap();
        assert!(r <= 1e-8, "{r}");
    }

    #[test]
    fn axial_field_position() {
        assert_eq!(axial_field_bands(&profile(-1.0)).unwrap(), vec![2]);
        assert_eq!(axial_field_bands(&profile(0.5)).unwrap(), vec![2]);
        assert_eq!(axial_field_bands(&profile(1.0)).unwrap(), vec![1, 2]);
    }

    #[test]
    fn wrong_mode_is_not_null() {
        // sinh σ is not annihilated on the j = 0 mode: the residual is s_τ² sinh σ
        let p = profile(-1.0);
        let values: Vec<f64> = p.samples[..512].iter().map(|s| s.sigma.sinh()).collect();
        let op = build_operator(&p, 0, 0.0, 192).unwrap();
        let r = apply_periodic(&op, &values, 64);
        assert!((r - p.s_tau * p.s_tau).abs() < 1e-8, "{r}");
    }
}
