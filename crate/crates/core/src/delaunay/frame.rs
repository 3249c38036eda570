use std::f64::consts::TAU as TWO_PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::profile::{solve_profile, ProfileOptions, ProfileSolution, ProfileState};
use crate::error::{Error, Result};

/// Immersion point and unit normal at rescaled coordinates (t, θ), s = s_τ t.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFrame {
    pub position: Vector3<f64>,
    pub normal: Vector3<f64>,
    pub t: f64,
    pub theta: f64,
}

/// X_τ(t, θ) = ½(τ e^σ cos θ, τ e^σ sin θ, κ) and its unit normal.
///
/// The normal is (τ sinh σ cos θ, τ sinh σ sin θ, ∂_sσ) for τ < 0 and
/// (τ cosh σ cos θ, τ cosh σ sin θ, −∂_sσ) for τ > 0. Both are unit by the
/// conservation law and orthogonal to ∂_sX given the sign of κ′; with this
/// orientation the mean curvature is +1.
pub fn surface_point(profile: &ProfileSolution, t: f64, theta: f64) -> Result<SurfaceFrame> {
    let state = profile.state_at(profile.s_tau * t)?;
    Ok(frame_from_state(profile.tau, &state, t, theta))
}

pub(crate) fn frame_from_state(tau: f64, st: &ProfileState, t: f64, theta: f64) -> SurfaceFrame {
    let (sin, cos) = theta.sin_cos();
    let radial = 0.5 * tau * st.sigma.exp();
    let position = Vector3::new(radial * cos, radial * sin, 0.5 * st.kappa);
    let normal = if tau > 0.0 {
        let w = tau * st.sigma.cosh();
        Vector3::new(w * cos, w * sin, -st.dsigma)
    } else {
        let w = tau * st.sigma.sinh();
        Vector3::new(w * cos, w * sin, st.dsigma)
    };
    SurfaceFrame {
        position,
        normal,
        t,
        theta,
    }
}

/// γ_τ(t) = τ σ_τ(s_τ t), a 2π-periodic function defined for nodoids.
pub fn gamma(tau: f64, t: f64) -> Result<f64> {
    if !(tau < 0.0) {
        return Err(Error::Domain(format!("gamma is defined for tau < 0, got {tau}")));
    }
    let profile = solve_profile(tau, 256, 1, &ProfileOptions::default())?;
    profile.gamma(t)
}

impl ProfileSolution {
    /// γ_τ(t) evaluated on this (nodoid) profile, reduced into one period.
    pub fn gamma(&self, t: f64) -> Result<f64> {
        if !(self.tau < 0.0) {
            return Err(Error::Domain(format!("gamma is defined for tau < 0, got {}", self.tau)));
        }
        let reduced = t.rem_euclid(TWO_PI);
        // fold into [−π, π] so the evaluation stays inside one sampled period
        let reduced = if reduced > std::f64::consts::PI { reduced - TWO_PI } else { reduced };
        Ok(self.tau * self.state_at(self.s_tau * reduced)?.sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(tau: f64) -> ProfileSolution {
        solve_profile(tau, 128, 2, &ProfileOptions::default()).unwrap()
    }

    #[test]
    fn cylinder_radius_is_one_half() {
        let p = profile(1.0);
        for k in 0..20 {
            let f = surface_point(&p, 0.3 * k as f64, 0.31 * k as f64).unwrap();
            let r = f.position.x.hypot(f.position.y);
            assert!((r - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn normals_are_unit_and_orthogonal_to_tangents() {
        for tau in [-1.0, -4.0, 0.5] {
            let p = profile(tau);
            let h = 1e-5;
            for k in 0..15 {
                let (t, th) = (0.4 * k as f64 + 0.1, 0.7 * k as f64);
                let f = surface_point(&p, t, th).unwrap();
                assert!((f.normal.norm() - 1.0).abs() < 1e-12);
                let xt = (surface_point(&p, t + h, th).unwrap().position
                    - surface_point(&p, t - h, th).unwrap().position)
                    / (2.0 * h);
                let xth = (surface_point(&p, t, th + h).unwrap().position
                    - surface_point(&p, t, th - h).unwrap().position)
                    / (2.0 * h);
                assert!(f.normal.dot(&xt).abs() < 1e-8 * xt.norm().max(1.0), "tau {tau}");
                assert!(f.normal.dot(&xth).abs() < 1e-8 * xth.norm().max(1.0));
                // isothermal in (t, θ) up to the constant factor s_τ
                assert!((xt.norm() - p.s_tau * xth.norm()).abs() < 1e-8);
                assert!(xt.dot(&xth).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn periodic_in_theta() {
        let p = profile(-2.0);
        let a = surface_point(&p, 1.3, 0.4).unwrap();
        let b = surface_point(&p, 1.3, 0.4 + TWO_PI).unwrap();
        assert!((a.position - b.position).norm() < 1e-14);
        assert!((a.normal - b.normal).norm() < 1e-14);
    }

    #[test]
    fn gamma_at_origin_and_domain() {
        let g = gamma(-3.0, 0.0).unwrap();
        assert!((g - (-3.0) * (-1.0f64 / 3.0).asinh()).abs() < 1e-14);
        assert!(g > 0.0);
        assert!(matches!(gamma(0.5, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_near_cosine_for_large_tau() {
        let g = gamma(-20.0, std::f64::consts::PI).unwrap();
        assert!((g + 1.0).abs() < 3e-3, "{g}");
    }

    #[test]
    fn extrapolation_rejected() {
        let p = profile(-2.0);
        assert!(surface_point(&p, 2.0 * TWO_PI + 0.1, 0.0).is_err());
    }
}
