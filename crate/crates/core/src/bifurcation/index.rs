use serde::{Deserialize, Serialize};

use super::symmetry::SymmetryClass;
use crate::delaunay::{classify, solve_profile, ProfileOptions, ProfileSolution};
use crate::error::Result;
use crate::spectral::{build_operator, eigensolve_galerkin, QuasiPeriodicOperator, DEFAULT_COEFFS, DEFAULT_MODES, DEFAULT_PROFILE_SAMPLES};

/// Bands checked per axial mode. Only B_0 and B_1 can reach the negative
/// half-line; B_2 is included as a safeguard.
pub const INDEX_BANDS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub n: u32,
    pub k: usize,
    /// λ_k(τ, β_n) + s_τ² n² j².
    pub eigenvalue: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndexReport {
    pub tau: f64,
    pub symmetry: SymmetryClass,
    pub index: usize,
    pub contributions: Vec<Contribution>,
    /// First axial mode with n·j > √(τ²+2); it and all later modes are
    /// positive since λ_0 ≥ −(τ²+2)s_τ².
    pub n_cutoff: u32,
    /// The axial mode n = 0 is not part of the symmetric subspace.
    pub excludes_zero_mode: bool,
}

/// Default profile for spectral work at parameter `tau`.
pub(crate) fn spectral_profile(tau: f64) -> Result<ProfileSolution> {
    solve_profile(tau, DEFAULT_PROFILE_SAMPLES, 1, &ProfileOptions::default())
}

pub(crate) fn base_operator(profile: &ProfileSolution) -> Result<QuasiPeriodicOperator> {
    build_operator(profile, 0, 0.0, DEFAULT_COEFFS.min(profile.samples_per_period / 2))
}

/// Smallest n ≥ 1 with n·j > √(τ²+2).
pub fn mode_cutoff(tau: f64, j: u32) -> u32 {
    let bound = (tau * tau + 2.0).sqrt();
    (bound / f64::from(j)).floor() as u32 + 1
}

/// λ_k(τ, β_n) + s_τ² n² j² for k < `count`, converged in the mode count.
pub(crate) fn shifted_eigenvalues(
    base: &QuasiPeriodicOperator,
    sym: &SymmetryClass,
    n: u32,
    count: usize,
) -> Result<Vec<f64>> {
    let op = base.with_mode(n * sym.j).with_alpha(sym.beta(n));
    Ok(eigensolve_galerkin(&op, DEFAULT_MODES, count)?.eigenvalues)
}

/// Morse index of the Jacobi operator restricted to T_{j,α}-symmetric
/// functions, counted with multiplicity.
pub fn index(tau: f64, sym: &SymmetryClass) -> Result<IndexReport> {
    classify(tau)?;
    let profile = spectral_profile(tau)?;
    index_for_profile(&profile, sym)
}

pub fn index_for_profile(profile: &ProfileSolution, sym: &SymmetryClass) -> Result<IndexReport> {
    let base = base_operator(profile)?;
    let n_cutoff = mode_cutoff(profile.tau, sym.j);
    let mut contributions = Vec::new();
    for n in 1..n_cutoff {
        for (k, eigenvalue) in shifted_eigenvalues(&base, sym, n, INDEX_BANDS)?.into_iter().enumerate() {
            if eigenvalue < 0.0 {
                contributions.push(Contribution { n, k, eigenvalue });
            }
        }
    }
    Ok(IndexReport {
        tau: profile.tau,
        symmetry: *sym,
        index: contributions.len(),
        contributions,
        n_cutoff,
        excludes_zero_mode: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff() {
        assert_eq!(mode_cutoff(-1.0, 2), 1);
        assert_eq!(mode_cutoff(-6.0, 2), 4);
        // n·j > √(τ²+2) must hold at the cutoff and fail just before it
        for (tau, j) in [(-3.0, 2), (-10.0, 3), (-0.5, 5)] {
            let n = mode_cutoff(tau, j);
            let b = (tau * tau + 2.0f64).sqrt();
            assert!(f64::from(n * j) > b && (n == 1 || f64::from((n - 1) * j) <= b));
        }
    }

    #[test]
    fn small_tau_has_no_index() {
        let s = SymmetryClass::new(2, 0.0).unwrap();
        assert_eq!(index(-1.0, &s).unwrap().index, 0);
        let s = SymmetryClass::new(5, 0.3).unwrap();
        assert_eq!(index(-0.5, &s).unwrap().index, 0);
    }

    #[test]
    fn unduloids_have_no_index() {
        let s = SymmetryClass::new(2, 0.0).unwrap();
        assert_eq!(index(0.5, &s).unwrap().index, 0);
        assert!(index(2.0, &s).is_err());
    }

    #[test]
    fn large_tau_is_unstable() {
        let s = SymmetryClass::new(2, 0.0).unwrap();
        let r = index(-6.0, &s).unwrap();
        assert!(r.index >= 3, "{r:?}");
        assert!(r.contributions.iter().all(|c| c.k <= 1 && c.eigenvalue < 0.0));
    }
}
