//! The Delaunay profile σ(s) and the axial coordinate κ(s).
//!
//! σ solves σ″ = −(τ²/2) sinh 2σ with σ(0) = σ₀ < 0, σ′(0) = 0; this is the
//! derivative of both first-order conservation laws
//! `(σ′)² + τ² cosh²σ = 1` (τ > 0) and `(σ′)² + τ² sinh²σ = 1` (τ < 0),
//! so the conserved quantity is a free accuracy diagnostic. κ is carried
//! along with κ′ = τ² e^σ cosh σ (τ > 0) or κ′ = −τ² e^σ sinh σ (τ < 0).

use std::f64::consts::TAU as TWO_PI;

use serde::{Deserialize, Serialize};

use super::parameter::{classify, initial_sigma};
use super::period::{compute_period, PeriodMethod};
use crate::error::{Error, Result};
use crate::numerics::{rk4_integrate, rk4_step};

#[derive(Debug, Clone, Copy)]
pub struct ProfileOptions {
    /// Target for the Richardson error estimate of the sampled states.
    pub tolerance: f64,
    /// Upper bound on RK4 substeps per output sample.
    pub max_substeps: usize,
    pub period_method: PeriodMethod,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_substeps: 512,
            period_method: PeriodMethod::Elliptic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub s: f64,
    pub t: f64,
    pub sigma: f64,
    pub dsigma: f64,
    pub kappa: f64,
}

/// (σ, ∂_sσ, κ) at a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileState {
    pub sigma: f64,
    pub dsigma: f64,
    pub kappa: f64,
}

/// Uniform samples of the profile over `periods` periods starting at s = 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileSolution {
    pub tau: f64,
    pub s_tau: f64,
    /// 2π s_τ, in s-units.
    pub period: f64,
    pub samples_per_period: usize,
    pub periods: usize,
    /// RK4 substeps taken between consecutive samples.
    pub substeps: usize,
    /// Richardson estimate of the state error at the samples.
    pub error_estimate: f64,
    pub samples: Vec<ProfileSample>,
}

fn rhs(tau: f64) -> impl Fn(f64, &[f64; 3]) -> [f64; 3] {
    let t2 = tau * tau;
    move |_s, y| {
        let (sh, ch) = (y[0].sinh(), y[0].cosh());
        let dkappa = if tau > 0.0 {
            t2 * y[0].exp() * ch
        } else {
            -t2 * y[0].exp() * sh
        };
        [y[1], -t2 * sh * ch, dkappa]
    }
}

/// Axial speed κ′(σ).
pub(crate) fn kappa_rate(tau: f64, sigma: f64) -> f64 {
    if tau > 0.0 {
        tau * tau * sigma.exp() * sigma.cosh()
    } else {
        -tau * tau * sigma.exp() * sigma.sinh()
    }
}

fn sweep(tau: f64, h: f64, count: usize, substeps: usize) -> Vec<[f64; 3]> {
    let f = rhs(tau);
    let mut y = [initial_sigma(tau).expect("validated"), 0.0, 0.0];
    let mut out = Vec::with_capacity(count + 1);
    out.push(y);
    let dh = h / substeps as f64;
    for i in 0..count {
        let s0 = i as f64 * h;
        for k in 0..substeps {
            y = rk4_step(&f, s0 + k as f64 * dh, &y, dh);
        }
        out.push(y);
    }
    out
}

/// Integrates the profile on a grid of `samples_per_period` points per period.
///
/// The output spacing is fixed at `2π s_τ / samples_per_period`; the number of
/// RK4 substeps between samples is doubled until the Richardson estimate
/// `|y_m − y_2m| / 15` meets `opts.tolerance`.
pub fn solve_profile(
    tau: f64,
    samples_per_period: usize,
    periods: usize,
    opts: &ProfileOptions,
) -> Result<ProfileSolution> {
    classify(tau)?;
    if samples_per_period < 16 {
        return Err(Error::InvalidArgument(format!(
            "samples_per_period must be at least 16, got {samples_per_period}"
        )));
    }
    if periods < 1 {
        return Err(Error::InvalidArgument("periods must be at least 1".into()));
    }
    let s_tau = compute_period(tau, opts.period_method)?.s_tau;
    let period = TWO_PI * s_tau;
    let h = period / samples_per_period as f64;
    let count = samples_per_period * periods;

    let mut substeps = 2;
    let mut coarse = sweep(tau, h, count, substeps);
    loop {
        let fine = sweep(tau, h, count, 2 * substeps);
        let err = coarse
            .iter()
            .zip(&fine)
            .map(|(a, b)| {
                let ds = (a[0] - b[0]).abs().max((a[1] - b[1]).abs());
                let dk = (a[2] - b[2]).abs() / b[2].abs().max(1.0);
                ds.max(dk)
            })
            .fold(0.0, f64::max)
            / 15.0;
        substeps *= 2;
        if err <= opts.tolerance {
            let samples = fine
                .iter()
                .enumerate()
                .map(|(i, y)| {
                    let s = i as f64 * h;
                    ProfileSample {
                        s,
                        t: s / s_tau,
                        sigma: y[0],
                        dsigma: y[1],
                        kappa: y[2],
                    }
                })
                .collect();
            return Ok(ProfileSolution {
                tau,
                s_tau,
                period,
                samples_per_period,
                periods,
                substeps,
                error_estimate: err,
                samples,
            });
        }
        if substeps >= opts.max_substeps {
            return Err(Error::Integrator {
                tolerance: opts.tolerance,
                achieved: err,
            });
        }
        coarse = fine;
    }
}

impl ProfileSolution {
    pub fn step(&self) -> f64 {
        self.period / self.samples_per_period as f64
    }

    /// Largest |s| at which the profile may be evaluated.
    pub fn s_max(&self) -> f64 {
        self.samples.last().map(|p| p.s).unwrap_or(0.0)
    }

    /// Largest |t| at which the profile may be evaluated.
    pub fn t_max(&self) -> f64 {
        self.s_max() / self.s_tau
    }

    /// Conserved quantity minus one: `(σ′)² + τ² sinh²σ − 1` or the cosh analogue.
    pub fn energy_defect(&self, sigma: f64, dsigma: f64) -> f64 {
        let w = if self.tau > 0.0 { sigma.cosh() } else { sigma.sinh() };
        dsigma * dsigma + self.tau * self.tau * w * w - 1.0
    }

    pub fn max_energy_drift(&self) -> f64 {
        self.samples
            .iter()
            .map(|p| self.energy_defect(p.sigma, p.dsigma).abs())
            .fold(0.0, f64::max)
    }

    fn check_range(&self, s: f64) -> Result<()> {
        let lim = self.s_max() * (1.0 + 1e-12);
        if !(s.abs() <= lim) {
            return Err(Error::OutOfRange {
                t: s / self.s_tau,
                lo: -self.t_max(),
                hi: self.t_max(),
            });
        }
        Ok(())
    }

    /// Profile state at arbitrary `s` with |s| ≤ `s_max()`, accurate to the
    /// integrator tolerance: the ODE is re-integrated from the nearest stored
    /// sample. Negative `s` uses σ even, κ odd.
    pub fn state_at(&self, s: f64) -> Result<ProfileState> {
        self.check_range(s)?;
        let (sign, a) = if s < 0.0 { (-1.0, -s) } else { (1.0, s) };
        let h = self.step();
        let i = ((a / h).round() as usize).min(self.samples.len() - 1);
        let node = &self.samples[i];
        let y0 = [node.sigma, node.dsigma, node.kappa];
        let y = if a == node.s {
            y0
        } else {
            rk4_integrate(&rhs(self.tau), node.s, y0, a, self.substeps.max(4))
        };
        Ok(ProfileState {
            sigma: y[0],
            dsigma: sign * y[1],
            kappa: sign * y[2],
        })
    }

    /// Cheaper C¹ evaluation: cubic Hermite interpolation of (σ, σ′) and
    /// (κ, κ′) between stored samples.
    pub fn interpolate(&self, s: f64) -> Result<ProfileState> {
        self.check_range(s)?;
        let (sign, a) = if s < 0.0 { (-1.0, -s) } else { (1.0, s) };
        let h = self.step();
        let i = ((a / h).floor() as usize).min(self.samples.len() - 2);
        let (p0, p1) = (&self.samples[i], &self.samples[i + 1]);
        let x = (a - p0.s) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * x) * (1.0 - x) * (1.0 - x),
            x * (1.0 - x) * (1.0 - x),
            x * x * (3.0 - 2.0 * x),
            x * x * (x - 1.0),
        );
        // derivatives of the basis for σ′
        let (d00, d10, d01, d11) = (
            6.0 * x * (x - 1.0),
            (1.0 - x) * (1.0 - 3.0 * x),
            6.0 * x * (1.0 - x),
            x * (3.0 * x - 2.0),
        );
        let hermite = |y0: f64, m0: f64, y1: f64, m1: f64| h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
        let sigma = hermite(p0.sigma, p0.dsigma, p1.sigma, p1.dsigma);
        let dsigma = (d00 * p0.sigma + d01 * p1.sigma) / h + d10 * p0.dsigma + d11 * p1.dsigma;
        let kappa = hermite(
            p0.kappa,
            kappa_rate(self.tau, p0.sigma),
            p1.kappa,
            kappa_rate(self.tau, p1.sigma),
        );
        Ok(ProfileState {
            sigma,
            dsigma: sign * dsigma,
            kappa: sign * kappa,
        })
    }

    /// Samples of one period reparametrized by t ∈ [0, 2π), `n` points.
    /// `n` must divide `samples_per_period`.
    pub fn one_period_sigma(&self, n: usize) -> Result<Vec<f64>> {
        if n == 0 || self.samples_per_period % n != 0 {
            return Err(Error::InvalidArgument(format!(
                "{n} does not divide samples_per_period = {}",
                self.samples_per_period
            )));
        }
        let stride = self.samples_per_period / n;
        Ok((0..n).map(|i| self.samples[i * stride].sigma).collect())
    }

    /// Number of sign changes of κ′ over the first period.
    pub fn kappa_turns_per_period(&self) -> usize {
        let rates: Vec<f64> = self.samples[..=self.samples_per_period]
            .iter()
            .map(|p| kappa_rate(self.tau, p.sigma))
            .collect();
        rates.windows(2).filter(|w| w[0].signum() != w[1].signum() && w[1] != 0.0).count()
    }
}
