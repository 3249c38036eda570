//! The period function `s_τ` (the profile σ has period `2π s_τ`).
//!
//! Two independent evaluations are provided: adaptive quadrature of the
//! regularized period integral, and a closed form in the complete elliptic
//! integral K evaluated by the arithmetic–geometric mean.
//!
//! For τ < 0,  s_τ = (2/π) ∫₀^{π/2} dx / √(cos²x + τ²) = (2/π)(1+τ²)^{−1/2} K(k),  k² = 1/(1+τ²).
//!
//! For 0 < τ ≤ 1 the integral (2/π) ∫₀^{arccos τ} dx / √(cos²x − τ²) has an
//! inverse square-root endpoint; the substitution sin x = sin(arccos τ)·sin φ
//! turns it into (2/π) ∫₀^{π/2} dφ / √(cos²φ + τ² sin²φ) = (2/π) K(√(1−τ²)).

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};

use serde::{Deserialize, Serialize};

use super::parameter::classify;
use crate::error::Result;
use crate::numerics::elliptic::complete_elliptic_k_complementary;
use crate::numerics::gauss_kronrod_adaptive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodMethod {
    Quadrature,
    Elliptic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodValue {
    pub tau: f64,
    /// Period of σ divided by 2π.
    pub s_tau: f64,
    pub method: PeriodMethod,
    /// Estimated absolute error in `s_tau` (zero for the closed form).
    pub error_estimate: f64,
}

/// Relative tolerance of the period quadrature.
pub const QUAD_TOL: f64 = 1e-15;

pub fn compute_period(tau: f64, method: PeriodMethod) -> Result<PeriodValue> {
    match method {
        PeriodMethod::Quadrature => period_quadrature(tau),
        PeriodMethod::Elliptic => period_elliptic(tau),
    }
}

pub fn period_quadrature(tau: f64) -> Result<PeriodValue> {
    classify(tau)?;
    let t2 = tau * tau;
    let r = if tau < 0.0 {
        gauss_kronrod_adaptive(|x: f64| 1.0 / (x.cos().powi(2) + t2).sqrt(), 0.0, FRAC_PI_2, 0.0, QUAD_TOL, 4000)?
    } else {
        gauss_kronrod_adaptive(
            |p: f64| 1.0 / (p.cos().powi(2) + t2 * p.sin().powi(2)).sqrt(),
            0.0,
            FRAC_PI_2,
            0.0,
            QUAD_TOL,
            4000,
        )?
    };
    Ok(PeriodValue {
        tau,
        s_tau: FRAC_2_PI * r.value,
        method: PeriodMethod::Quadrature,
        error_estimate: FRAC_2_PI * r.error,
    })
}

pub fn period_elliptic(tau: f64) -> Result<PeriodValue> {
    classify(tau)?;
    let s_tau = if tau < 0.0 {
        let norm = (1.0 + tau * tau).sqrt();
        // complementary modulus k' = |τ| / √(1+τ²)
        FRAC_2_PI * complete_elliptic_k_complementary(tau.abs() / norm) / norm
    } else {
        FRAC_2_PI * complete_elliptic_k_complementary(tau)
    };
    Ok(PeriodValue {
        tau,
        s_tau,
        method: PeriodMethod::Elliptic,
        error_estimate: 0.0,
    })
}
