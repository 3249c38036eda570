use std::f64::consts::{PI, TAU as TWO_PI};

use serde::{Deserialize, Serialize};

use super::galerkin::{eigensolve_galerkin, DEFAULT_MODES};
use super::operator::{build_operator, fold_phase, QuasiPeriodicOperator, DEFAULT_COEFFS};
use crate::delaunay::ProfileSolution;
use crate::error::{Error, Result};

/// Slack allowed in the interlacing chain before it is reported as a failure.
const INTERLACE_TOL: f64 = 1e-9;

/// Closed-form band functions of the limit operator `−∂_t² − 1`:
/// λ_k(α) = (α/2π + m_k)² − 1 with m_k = k/2 for even k and −(k+1)/2 for odd k.
pub fn limit_band(k: usize, alpha: f64) -> f64 {
    let a = fold_phase(alpha) / TWO_PI;
    let m = if k % 2 == 0 { (k / 2) as f64 } else { -(((k + 1) / 2) as f64) };
    (a + m).powi(2) - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub k: usize,
    pub lower: f64,
    pub upper: f64,
}

impl Band {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BandTable {
    pub tau: f64,
    pub s_tau: f64,
    pub alpha_grid: Vec<f64>,
    /// `lambdas[i][k]` = λ_k(τ, alpha_grid[i]).
    pub lambdas: Vec<Vec<f64>>,
    pub bands: Vec<Band>,
}

fn default_operator(profile: &ProfileSolution) -> Result<QuasiPeriodicOperator> {
    let n_coeffs = DEFAULT_COEFFS.min(profile.samples_per_period / 2);
    build_operator(profile, 0, 0.0, n_coeffs)
}

/// Lowest `count` eigenvalues of the j = 0 reduced operator at phase `alpha`.
pub fn band_values(op: &QuasiPeriodicOperator, alpha: f64, count: usize) -> Result<Vec<f64>> {
    let modes = DEFAULT_MODES.max(2 * count + 8);
    Ok(eigensolve_galerkin(&op.with_alpha(alpha).with_offset(0.0), modes, count)?.eigenvalues)
}

/// λ_k(τ, α) for the rotationally invariant mode j = 0.
pub fn band_function(profile: &ProfileSolution, k: usize, alpha: f64) -> Result<f64> {
    let op = default_operator(profile)?;
    Ok(band_values(&op, alpha, k + 1)?[k])
}

/// Band functions on `alpha_grid` and the band intervals
/// B_{2k} = [λ_{2k}(0), λ_{2k}(π)], B_{2k+1} = [λ_{2k+1}(π), λ_{2k+1}(0)].
///
/// A violated interlacing chain or a degenerate band signals a discretization
/// failure and is returned as an error.
pub fn band_table(profile: &ProfileSolution, k_max: usize, alpha_grid: &[f64]) -> Result<BandTable> {
    if k_max < 3 {
        return Err(Error::InvalidArgument(format!("k_max must be at least 3, got {k_max}")));
    }
    let op = default_operator(profile)?;
    let count = k_max + 1;
    let lambdas = alpha_grid
        .iter()
        .map(|&a| band_values(&op, a, count))
        .collect::<Result<Vec<_>>>()?;
    let at0 = band_values(&op, 0.0, count)?;
    let atpi = band_values(&op, PI, count)?;
    let tau = profile.tau;
    let bands = band_intervals(tau, &at0, &atpi)?;
    Ok(BandTable {
        tau,
        s_tau: profile.s_tau,
        alpha_grid: alpha_grid.iter().map(|&a| fold_phase(a)).collect(),
        lambdas,
        bands,
    })
}

/// Band intervals from periodic and antiperiodic eigenvalues, after checking
/// λ_0(0) ≤ λ_0(π) ≤ λ_1(π) ≤ λ_1(0) ≤ λ_2(0) ≤ …
pub fn band_intervals(tau: f64, at0: &[f64], atpi: &[f64]) -> Result<Vec<Band>> {
    let count = at0.len().min(atpi.len());
    let mut chain = Vec::with_capacity(2 * count);
    let mut bands = Vec::with_capacity(count);
    for k in 0..count {
        let (lower, upper) = if k % 2 == 0 { (at0[k], atpi[k]) } else { (atpi[k], at0[k]) };
        chain.extend([lower, upper]);
        if !(upper > lower) {
            return Err(Error::Interlacing {
                tau,
                detail: format!("band {k} collapsed to [{lower}, {upper}]"),
            });
        }
        bands.push(Band { k, lower, upper });
    }
    if let Some(i) = chain.windows(2).position(|w| w[1] < w[0] - INTERLACE_TOL) {
        return Err(Error::Interlacing {
            tau,
            detail: format!("chain entry {} = {} exceeds next {}", i, chain[i], chain[i + 1]),
        });
    }
    Ok(bands)
}

impl BandTable {
    pub fn band(&self, k: usize) -> Option<&Band> {
        self.bands.get(k)
    }

    /// Rows `(tau, k, alpha, lambda)` in grid order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, usize, f64, f64)> + '_ {
        self.alpha_grid.iter().zip(&self.lambdas).flat_map(move |(&a, ls)| {
            ls.iter().enumerate().map(move |(k, &l)| (self.tau, k, a, l))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{solve_profile, ProfileOptions};

    #[test]
    fn limit_band_values() {
        assert_eq!(limit_band(0, 0.0), -1.0);
        assert_eq!(limit_band(1, PI), -0.75);
        assert_eq!(limit_band(2, 0.0), 0.0);
        assert_eq!(limit_band(2, PI), 1.25);
        assert_eq!(limit_band(3, PI), 1.25);
        assert_eq!(limit_band(3, 0.0), 3.0);
        assert_eq!(limit_band(1, -PI), limit_band(1, PI));
    }

    #[test]
    fn cylinder_bands_are_limit_bands() {
        let p = solve_profile(1.0, 512, 1, &ProfileOptions::default()).unwrap();
        let t = band_table(&p, 3, &[0.0, PI]).unwrap();
        let expect = [(-1.0, -0.75), (-0.75, 0.0), (0.0, 1.25), (1.25, 3.0)];
        for (b, (lo, hi)) in t.bands.iter().zip(expect) {
            assert!((b.lower - lo).abs() < 1e-12 && (b.upper - hi).abs() < 1e-11, "{b:?}");
        }
    }

    #[test]
    fn nodoid_negative_bands() {
        let p = solve_profile(-2.0, 512, 1, &ProfileOptions::default()).unwrap();
        let t = band_table(&p, 4, &[0.0, 1.0, PI]).unwrap();
        assert!(t.bands[0].upper < 0.0 && t.bands[1].upper < 0.0);
        assert!(t.bands[2].lower.abs() < 1e-9 && t.bands[2].upper > 0.0);
        assert!(t.bands[3].lower > 0.0);
        assert_eq!(t.rows().count(), 3 * 5);
    }

    #[test]
    fn interlacing_violation_detected() {
        let err = band_intervals(-1.0, &[0.0, 2.0], &[1.0, 0.5]).unwrap_err();
        assert!(matches!(err, Error::Interlacing { .. }));
        let err = band_intervals(-1.0, &[0.0], &[0.0]).unwrap_err();
        assert!(matches!(err, Error::Interlacing { .. }));
    }

    #[test]
    fn k_max_precondition() {
        let p = solve_profile(-2.0, 64, 1, &ProfileOptions::default()).unwrap();
        assert!(band_table(&p, 2, &[0.0]).is_err());
    }
}
