use std::f64::consts::{PI, TAU as TWO_PI};

use serde::{Deserialize, Serialize};

use crate::delaunay::{solve_profile, ProfileOptions, ProfileSolution};
use crate::error::{Error, Result};

/// Largest truncation-tail coefficient accepted when building an operator.
pub const COEFF_TAIL_LIMIT: f64 = 1e-12;
/// Profile resolution used by [`operator_for_tau`].
pub const DEFAULT_PROFILE_SAMPLES: usize = 512;
/// Number of cosine coefficients kept by [`operator_for_tau`].
pub const DEFAULT_COEFFS: usize = 192;

/// Where the potential q(t) comes from. The monodromy oracle integrates it
/// from this description rather than from the Fourier coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Potential {
    /// q(t) = s_τ² τ² cosh(2σ(s_τ t)) on the Delaunay surface with parameter τ.
    Delaunay { tau: f64, s_tau: f64 },
    /// q(t) ≡ c.
    Constant(f64),
}

/// Hill operator `−∂_t² − q(t) + offset` on α-quasiperiodic functions,
/// `u(t + 2π) = e^{iα} u(t)`, where `offset = s_τ² j²` comes from the
/// cross-sectional mode j.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiPeriodicOperator {
    pub potential: Potential,
    pub j: u32,
    /// Quasiperiodicity phase, folded into [0, π].
    pub alpha: f64,
    pub offset: f64,
    /// Cosine coefficients q̂_0, q̂_1, … with q(t) = q̂_0 + 2 Σ_{k≥1} q̂_k cos(kt).
    pub coeffs: Vec<f64>,
}

/// Wraps a phase into (−π, π] and takes its absolute value. Phases that land
/// within rounding of ±π map to π exactly.
pub fn fold_phase(phase: f64) -> f64 {
    let r = phase - TWO_PI * (phase / TWO_PI).round();
    let a = r.abs();
    if (PI - a).abs() <= 64.0 * f64::EPSILON * phase.abs().max(1.0) {
        PI
    } else {
        a.min(PI)
    }
}

impl QuasiPeriodicOperator {
    /// Operator with constant potential q ≡ `q`; `offset` is given directly.
    pub fn constant(q: f64, offset: f64, alpha: f64) -> Self {
        Self {
            potential: Potential::Constant(q),
            j: 0,
            alpha: fold_phase(alpha),
            offset,
            coeffs: vec![q],
        }
    }

    pub fn tau(&self) -> Option<f64> {
        match self.potential {
            Potential::Delaunay { tau, .. } => Some(tau),
            Potential::Constant(_) => None,
        }
    }

    /// s_τ for Delaunay potentials, 1 otherwise.
    pub fn s_tau(&self) -> f64 {
        match self.potential {
            Potential::Delaunay { s_tau, .. } => s_tau,
            Potential::Constant(_) => 1.0,
        }
    }

    /// Same potential with a different phase (folded into [0, π]).
    pub fn with_alpha(&self, alpha: f64) -> Self {
        Self {
            alpha: fold_phase(alpha),
            ..self.clone()
        }
    }

    /// Same potential on cross-sectional mode `j` (offset s_τ² j²).
    pub fn with_mode(&self, j: u32) -> Self {
        let s = self.s_tau();
        Self {
            j,
            offset: s * s * f64::from(j) * f64::from(j),
            ..self.clone()
        }
    }

    /// Same potential with an explicit offset.
    pub fn with_offset(&self, offset: f64) -> Self {
        Self {
            offset,
            ..self.clone()
        }
    }

    /// q̂_k, zero beyond the stored range.
    #[inline]
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// q(t) synthesized from the stored coefficients.
    pub fn potential_at(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k == 0 { c } else { 2.0 * c * (k as f64 * t).cos() })
            .sum()
    }
}

/// Builds the reduced Jacobi operator on mode `j` with phase `alpha` from a
/// sampled profile, keeping `n_coeffs` cosine coefficients of
/// q(t) = s_τ² τ² cosh(2σ(s_τ t)).
///
/// The coefficients come from the trapezoidal rule on the periodic grid of
/// the profile, which is spectrally accurate for the analytic potential.
pub fn build_operator(
    profile: &ProfileSolution,
    j: u32,
    alpha: f64,
    n_coeffs: usize,
) -> Result<QuasiPeriodicOperator> {
    if n_coeffs < 16 {
        return Err(Error::InvalidArgument(format!("n_coeffs must be at least 16, got {n_coeffs}")));
    }
    let n = profile.samples_per_period;
    if 2 * n_coeffs > n {
        return Err(Error::InvalidArgument(format!(
            "{n_coeffs} coefficients need at least {} samples per period, profile has {n}",
            2 * n_coeffs
        )));
    }
    let (tau, s) = (profile.tau, profile.s_tau);
    let scale = s * s * tau * tau;
    let q: Vec<f64> = profile.samples[..n]
        .iter()
        .map(|p| scale * (2.0 * p.sigma).cosh())
        .collect();
    let coeffs: Vec<f64> = (0..=n_coeffs)
        .map(|k| {
            let w = TWO_PI * k as f64 / n as f64;
            q.iter().enumerate().map(|(i, &v)| v * (w * i as f64).cos()).sum::<f64>() / n as f64
        })
        .collect();
    let tail = coeffs[n_coeffs - 3..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if tail > COEFF_TAIL_LIMIT {
        return Err(Error::CoefficientDecay {
            tail,
            limit: COEFF_TAIL_LIMIT,
        });
    }
    let jf = f64::from(j);
    Ok(QuasiPeriodicOperator {
        potential: Potential::Delaunay { tau, s_tau: s },
        j,
        alpha: fold_phase(alpha),
        offset: s * s * jf * jf,
        coeffs,
    })
}

/// Profile and operator at the default resolution for parameter `tau`.
pub fn operator_for_tau(tau: f64, j: u32, alpha: f64) -> Result<(ProfileSolution, QuasiPeriodicOperator)> {
    let profile = solve_profile(tau, DEFAULT_PROFILE_SAMPLES, 1, &ProfileOptions::default())?;
    let op = build_operator(&profile, j, alpha, DEFAULT_COEFFS)?;
    Ok((profile, op))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_potential_is_constant() {
        let (_, op) = operator_for_tau(1.0, 0, 0.0).unwrap();
        assert!((op.coeffs[0] - 1.0).abs() < 1e-14);
        assert!(op.coeffs[1..].iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn offset_for_mode_three() {
        let (_, op) = operator_for_tau(-2.0, 3, 0.0).unwrap();
        let s = 0.472_503_165_464_879;
        assert!((op.offset - 9.0 * s * s).abs() < 1e-12);
        assert!((op.offset - 2.009).abs() < 1e-3);
    }

    #[test]
    fn potential_bounds_for_nodoids() {
        for tau in [-0.5, -1.0, -4.0] {
            let (p, op) = operator_for_tau(tau, 0, 0.0).unwrap();
            let s2 = p.s_tau * p.s_tau;
            for k in 0..200 {
                let q = op.potential_at(TWO_PI * k as f64 / 200.0);
                assert!(q >= s2 * tau * tau - 1e-10 && q <= s2 * (tau * tau + 2.0) + 1e-10);
            }
        }
    }

    #[test]
    fn potential_tends_to_one() {
        let dev = |tau: f64| {
            let (_, op) = operator_for_tau(tau, 0, 0.0).unwrap();
            (0..100)
                .map(|k| (op.potential_at(TWO_PI * k as f64 / 100.0) - 1.0).abs())
                .fold(0.0, f64::max)
        };
        let (a, b) = (dev(-10.0), dev(-20.0));
        assert!(a < 0.05 && b < a / 3.0, "{a} {b}");
    }

    #[test]
    fn phase_folding() {
        assert_eq!(fold_phase(0.0), 0.0);
        assert_eq!(fold_phase(PI), PI);
        assert_eq!(fold_phase(-PI), PI);
        assert_eq!(fold_phase(3.0 * PI), PI);
        assert!((fold_phase(-1.0) - 1.0).abs() < 1e-15);
        assert!((fold_phase(TWO_PI + 0.5) - 0.5).abs() < 1e-14);
        assert!((fold_phase(5.0) - (TWO_PI - 5.0)).abs() < 1e-14);
    }

    #[test]
    fn rejects_insufficient_resolution() {
        let p = solve_profile(-1.0, 64, 1, &ProfileOptions::default()).unwrap();
        assert!(matches!(build_operator(&p, 0, 0.0, 8), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_operator(&p, 0, 0.0, 40), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn slow_decay_is_reported() {
        // 32 coefficients from a coarse grid cannot resolve a small-|τ| nodoid
        let p = solve_profile(-0.05, 64, 1, &ProfileOptions::default()).unwrap();
        assert!(matches!(build_operator(&p, 0, 0.0, 32), Err(Error::CoefficientDecay { .. })));
    }
}
