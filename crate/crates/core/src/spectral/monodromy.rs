//! Monodromy (transfer-matrix) characterization of the quasiperiodic spectrum.
//!
//! For a given λ the equation `u″ = (offset − q(t) − λ) u` is integrated over
//! one period from the canonical initial data, giving the 2×2 monodromy
//! matrix M(λ) with det M = 1. λ is an α-quasiperiodic eigenvalue exactly
//! when tr M(λ) = 2 cos α. The potential is integrated from its source (the
//! profile ODE is carried along), never from the Fourier coefficients used by
//! the Galerkin solver.

use std::f64::consts::TAU as TWO_PI;

use super::galerkin::{galerkin_fixed, DEFAULT_MODES};
use super::operator::{Potential, QuasiPeriodicOperator};
use crate::delaunay::initial_sigma;
use crate::error::{Error, Result};
use crate::numerics::{brent_root, rk4_integrate, BrentOptions};

/// RK4 steps per period for the coarse pass; the fine pass doubles it.
const STEPS: usize = 2048;
const ROOT_TOL: f64 = 1e-10;
/// Galerkin seeds closer than this are treated as one (possibly double) root.
const CLUSTER_TOL: f64 = 1e-7;
/// |tr M − 2cos α| at the M₁₂ root below which a seed pair is one double root.
const DOUBLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monodromy {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Monodromy {
    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }
}

fn integrate(op: &QuasiPeriodicOperator, lambda: f64, steps: usize) -> Result<Monodromy> {
    let shift = op.offset - lambda;
    let y = match op.potential {
        Potential::Constant(q) => {
            let f = move |_t: f64, y: &[f64; 4]| {
                let c = shift - q;
                [y[1], c * y[0], y[3], c * y[2]]
            };
            rk4_integrate(&f, 0.0, [1.0, 0.0, 0.0, 1.0], TWO_PI, steps)
        }
        Potential::Delaunay { tau, s_tau } => {
            let s2 = s_tau * s_tau;
            let t2 = tau * tau;
            // state: σ, dσ/dt, u₁, u₁′, u₂, u₂′
            let f = move |_t: f64, y: &[f64; 6]| {
                let (sh, ch) = (y[0].sinh(), y[0].cosh());
                let q = s2 * t2 * (ch * ch + sh * sh);
                let c = shift - q;
                [y[1], -s2 * t2 * sh * ch, y[3], c * y[2], y[5], c * y[4]]
            };
            let y0 = [initial_sigma(tau)?, 0.0, 1.0, 0.0, 0.0, 1.0];
            let y = rk4_integrate(&f, 0.0, y0, TWO_PI, steps);
            [y[2], y[3], y[4], y[5]]
        }
    };
    Ok(Monodromy {
        m11: y[0],
        m21: y[1],
        m12: y[2],
        m22: y[3],
    })
}

/// M(λ), Richardson-extrapolated from RK4 runs with `STEPS` and `2·STEPS` steps.
pub fn monodromy(op: &QuasiPeriodicOperator, lambda: f64) -> Result<Monodromy> {
    let c = integrate(op, lambda, STEPS)?;
    let f = integrate(op, lambda, 2 * STEPS)?;
    let x = |a: f64, b: f64| b + (b - a) / 15.0;
    Ok(Monodromy {
        m11: x(c.m11, f.m11),
        m12: x(c.m12, f.m12),
        m21: x(c.m21, f.m21),
        m22: x(c.m22, f.m22),
    })
}

/// tr M(λ) − 2 cos α; zero exactly at the α-quasiperiodic eigenvalues.
pub fn discriminant_residual(op: &QuasiPeriodicOperator, lambda: f64) -> Result<f64> {
    Ok(monodromy(op, lambda)?.trace() - 2.0 * op.alpha.cos())
}

/// All α-quasiperiodic eigenvalues in `[lo, hi]`, with multiplicity, found as
/// roots of tr M(λ) = 2 cos α.
///
/// The bracket is partitioned at midpoints between Galerkin seeds so that
/// each piece holds one root (or one coincident pair). Coincident pairs occur
/// at α ∈ {0, π} when a spectral gap is closed; there tr M − 2cos α touches
/// zero without changing sign, and the root is located instead as the zero of
/// the off-diagonal entry M₁₂, which vanishes where M = ±I.
pub fn eigensolve_monodromy(op: &QuasiPeriodicOperator, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("empty bracket [{lo}, {hi}]")));
    }
    let seeds = seeds_in(op, lo, hi)?;
    if seeds.is_empty() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for s in seeds {
        match clusters.last_mut() {
            Some(c) if (s - c[c.len() - 1]).abs() <= CLUSTER_TOL * s.abs().max(1.0) => c.push(s),
            _ => clusters.push(vec![s]),
        }
    }
    let centers: Vec<f64> = clusters.iter().map(|c| c.iter().sum::<f64>() / c.len() as f64).collect();
    let mut roots = Vec::new();
    let opts = BrentOptions {
        x_tol: ROOT_TOL * 1e-2,
        f_tol: 0.0,
        max_iter: 200,
    };
    let g = |x: f64| discriminant_residual(op, x);
    for (i, cluster) in clusters.iter().enumerate() {
        let a = if i == 0 { lo } else { 0.5 * (centers[i - 1] + centers[i]) };
        let b = if i + 1 == clusters.len() { hi } else { 0.5 * (centers[i] + centers[i + 1]) };
        match cluster.len() {
            1 => roots.push(brent_root(g, a, b, opts)?),
            2 => {
                let r = offdiagonal_root(op, centers[i], a, b)?;
                let gr = g(r)?;
                if gr.abs() <= DOUBLE_TOL {
                    // touching root: the discriminant cannot resolve a split
                    // below its own rounding level
                    roots.extend([r, r]);
                } else if g(a)?.signum() != gr.signum() {
                    roots.push(brent_root(g, a, r, opts)?);
                    roots.push(brent_root(g, r, b, opts)?);
                } else {
                    return Err(Error::NoSignChange { lo: a, hi: b });
                }
            }
            m => {
                return Err(Error::InvalidArgument(format!(
                    "eigenvalue of multiplicity {m} near {}",
                    centers[i]
                )))
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn seeds_in(op: &QuasiPeriodicOperator, lo: f64, hi: f64) -> Result<Vec<f64>> {
    let mut k_max = 8;
    loop {
        let modes = DEFAULT_MODES.max(2 * k_max + 8);
        let e = galerkin_fixed(op, modes, k_max)?;
        if *e.eigenvalues.last().expect("k_max > 0") > hi || k_max >= 2 * modes {
            return Ok(e.eigenvalues.into_iter().filter(|&l| l >= lo && l <= hi).collect());
        }
        k_max *= 2;
    }
}

fn offdiagonal_root(op: &QuasiPeriodicOperator, center: f64, a: f64, b: f64) -> Result<f64> {
    let m12 = |x: f64| Ok(monodromy(op, x)?.m12);
    let mut w = 1e-4 * center.abs().max(1.0);
    loop {
        let (l, r) = ((center - w).max(a), (center + w).min(b));
        if m12(l)?.signum() != m12(r)?.signum() {
            return brent_root(
                m12,
                l,
                r,
                BrentOptions {
                    x_tol: ROOT_TOL * 1e-2,
                    f_tol: 0.0,
                    max_iter: 200,
                },
            );
        }
        if l <= a && r >= b {
            return Err(Error::NoSignChange { lo: a, hi: b });
        }
        w *= 4.0;
    }
}
