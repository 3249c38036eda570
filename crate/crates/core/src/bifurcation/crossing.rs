use std::f64::consts::{PI, TAU as TWO_PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::index::{base_operator, spectral_profile};
use super::symmetry::SymmetryClass;
use crate::error::{Error, Result};
use crate::numerics::{brent_root, BrentOptions};
use crate::spectral::{galerkin_fixed, DEFAULT_MODES};

/// Tolerance on τ for crossing values.
pub const TAU_TOL: f64 = 1e-10;
/// Early exit when |F| falls below this.
pub const FLOW_TOL: f64 = 1e-12;
/// Truncation for the final polish of a crossing.
pub const POLISH_MODES: usize = 128;
/// Default step for the finite-difference flow slope.
pub const SLOPE_STEP: f64 = 1e-4;
/// Crossings of distinct symmetry classes closer than this are reported.
pub const COLLISION_TOL: f64 = 1e-6;

/// Quasiperiodic eigenfunction of the crossing eigenvalue, as real
/// coefficients in the basis e^{i(n+β/2π)t}/√(2π), n = −N..=N. Unit L² norm on
/// one period, with φ(0) real and positive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingMode {
    pub beta: f64,
    pub n_modes: usize,
    pub coefficients: Vec<f64>,
    /// Use the complex conjugate, for screw angles whose phase j·α wraps to
    /// a negative value.
    pub conjugate: bool,
}

impl CrossingMode {
    pub fn eval(&self, t: f64) -> Complex64 {
        let a = self.beta / TWO_PI;
        let n0 = self.n_modes as f64;
        let v: Complex64 = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| c * Complex64::from_polar(1.0, (i as f64 - n0 + a) * t))
            .sum::<Complex64>()
            / TWO_PI.sqrt();
        if self.conjugate {
            v.conj()
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BifurcationPoint {
    pub symmetry: SymmetryClass,
    pub tau_star: f64,
    pub s_tau: f64,
    /// k of the crossing band function.
    pub band_index: usize,
    /// d/d|τ| of λ_k(τ, β) + s_τ²j² at the crossing: the rate along the
    /// family as τ decreases. Negative for a downward crossing.
    pub slope: f64,
    /// d/dτ of the same quantity (= −slope).
    pub dtau_slope: f64,
    /// F(tau_star) at the polish truncation.
    pub residual: f64,
    pub eigenfunction: Option<CrossingMode>,
    /// Set for crossings whose existence is not established (second band).
    pub conjectural: bool,
}

/// F(τ) = λ_k(τ, β) + s_τ²j² at a fixed truncation.
pub fn flow_function(tau: f64, j: u32, beta: f64, k: usize, n_modes: usize) -> Result<f64> {
    Ok(flow_eigenpair(tau, j, beta, k, n_modes)?.0)
}

fn flow_eigenpair(tau: f64, j: u32, beta: f64, k: usize, n_modes: usize) -> Result<(f64, f64, Vec<f64>)> {
    let profile = spectral_profile(tau)?;
    let op = base_operator(&profile)?.with_mode(j).with_alpha(beta);
    let mut e = galerkin_fixed(&op, n_modes, k + 1)?;
    Ok((e.eigenvalues[k], profile.s_tau, e.eigenvectors.swap_remove(k)))
}

/// Central difference of `f` at `x`.
pub fn central_slope<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

/// Asymptotic location −j/√(1 − (β/2π)²) of the first crossing.
pub fn asymptotic_crossing(j: u32, beta: f64) -> f64 {
    let b = beta / TWO_PI;
    -f64::from(j) / (1.0 - b * b).sqrt()
}

/// Asymptotic location −j/√(1 − (β/2π − 1)²) of the second-band crossing.
pub fn asymptotic_second_crossing(j: u32, beta: f64) -> Option<f64> {
    let b = beta / TWO_PI - 1.0;
    let d = 1.0 - b * b;
    (d > 0.0).then(|| -f64::from(j) / d.sqrt())
}

fn upper_bracket(j: u32) -> f64 {
    let j2 = f64::from(j * j);
    -(j2 - 2.0).max(2.0).sqrt()
}

/// A τ below which F < 0 for band 0: combines λ_0 ≤ (β/2π)² − τ²s_τ² with
/// s_τ|τ| → 1, with a margin.
fn widened_lower(j: u32, beta: f64) -> f64 {
    let b = beta / TWO_PI;
    let j2 = f64::from(j * j);
    -(((j2 + b * b) / (1.0 - b * b)).sqrt() + 0.5).max(f64::from(j) + 1.0) - 1.0
}

fn root_opts() -> BrentOptions {
    BrentOptions {
        x_tol: TAU_TOL,
        f_tol: FLOW_TOL,
        max_iter: 200,
    }
}

/// Root of F at [`POLISH_MODES`], started from a root at the coarse truncation.
fn polish(j: u32, beta: f64, k: usize, tau0: f64) -> Result<f64> {
    let f = |t: f64| flow_function(t, j, beta, k, POLISH_MODES);
    let mut w = 1e-7;
    for _ in 0..8 {
        let (lo, hi) = (tau0 - w, tau0 + w);
        let (flo, fhi) = (f(lo)?, f(hi)?);
        if flo.signum() != fhi.signum() {
            return brent_root(f, lo, hi, root_opts());
        }
        w *= 10.0;
    }
    Err(Error::NoSignChange {
        lo: tau0 - w,
        hi: tau0 + w,
    })
}

fn finish(sym: &SymmetryClass, beta: f64, k: usize, tau_star: f64, conjectural: bool) -> Result<BifurcationPoint> {
    let (residual, s_tau, mut coefficients) = flow_eigenpair(tau_star, sym.j, beta, k, POLISH_MODES)?;
    // φ(0) = Σ c_n / √(2π) is real; make it positive
    if coefficients.iter().sum::<f64>() < 0.0 {
        coefficients.iter_mut().for_each(|c| *c = -*c);
    }
    let dtau_slope = central_slope(|t| flow_function(t, sym.j, beta, k, POLISH_MODES), tau_star, SLOPE_STEP)?;
    Ok(BifurcationPoint {
        symmetry: *sym,
        tau_star,
        s_tau,
        band_index: k,
        slope: -dtau_slope,
        dtau_slope,
        residual,
        eigenfunction: Some(CrossingMode {
            beta,
            n_modes: POLISH_MODES,
            coefficients,
            conjugate: sym.phase_is_negative(),
        }),
        conjectural,
    })
}

/// The bifurcation value τ_{j,α}: the largest root of λ_0(τ, fold(jα)) + s_τ²j².
///
/// The search starts on [−j−1, −√max(j²−2, 2)], split at the asymptotic
/// estimate, and is widened once if that bracket holds no sign change.
pub fn first_bifurcation(sym: &SymmetryClass) -> Result<BifurcationPoint> {
    let beta = sym.beta(1);
    let j = sym.j;
    let f = |t: f64| flow_function(t, j, beta, 0, DEFAULT_MODES);
    let hi = upper_bracket(j);
    let mut lo = -f64::from(j) - 1.0;
    let (f_hi, mut f_lo) = (f(hi)?, f(lo)?);
    if f_hi.signum() == f_lo.signum() {
        lo = widened_lower(j, beta);
        f_lo = f(lo)?;
        if f_hi.signum() == f_lo.signum() {
            return Err(Error::NoSignChange { lo, hi });
        }
    }
    let seed = asymptotic_crossing(j, beta);
    let (mut a, mut b) = (lo, hi);
    if seed > lo && seed < hi {
        if f(seed)?.signum() == f_hi.signum() {
            b = seed;
        } else {
            a = seed;
        }
    }
    let coarse = brent_root(f, a, b, root_opts())?;
    let tau_star = polish(j, beta, 0, coarse)?;
    finish(sym, beta, 0, tau_star, false)
}

/// The conjectural crossing of the second band function,
/// λ_1(τ, fold(jα)) + s_τ²j² = 0, searched by a downward scan from
/// −√max(j²−2, 2). `None` when the scan finds no sign change.
pub fn second_crossing(sym: &SymmetryClass) -> Result<Option<BifurcationPoint>> {
    let beta = sym.beta(1);
    let j = sym.j;
    let f = |t: f64| flow_function(t, j, beta, 1, DEFAULT_MODES);
    let hi = upper_bracket(j);
    let lo = match asymptotic_second_crossing(j, beta) {
        Some(t) => (1.5 * t - 2.0).max(-8.0 * f64::from(j)),
        None => -4.0 * f64::from(j),
    };
    let steps = 160;
    let dt = (hi - lo) / steps as f64;
    let mut prev = (hi, f(hi)?);
    for i in 1..=steps {
        let t = hi - dt * i as f64;
        let ft = f(t)?;
        if ft.signum() != prev.1.signum() {
            let coarse = brent_root(f, t, prev.0, root_opts())?;
            let tau_star = polish(j, beta, 1, coarse)?;
            return finish(sym, beta, 1, tau_star, true).map(Some);
        }
        prev = (t, ft);
    }
    Ok(None)
}

/// Recomputes the finite-difference slope d/d|τ| of the crossing eigenvalue
/// with step `h` and records it in the point.
pub fn transversality(point: &mut BifurcationPoint, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let sym = point.symmetry;
    let beta = sym.beta(1);
    let k = point.band_index;
    let d = central_slope(|t| flow_function(t, sym.j, beta, k, POLISH_MODES), point.tau_star, h)?;
    point.dtau_slope = d;
    point.slope = -d;
    Ok(point.slope)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Collision {
    pub first: SymmetryClass,
    pub second: SymmetryClass,
    pub tau_first: f64,
    pub tau_second: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauStar {
    pub tau_star: f64,
    pub maximizer: SymmetryClass,
    pub points: Vec<BifurcationPoint>,
    pub collisions: Vec<Collision>,
}

/// Screw angles sampled for order j: a uniform grid on [−π/j, π/j].
pub fn alpha_grid(j: u32, samples: usize) -> Vec<f64> {
    let limit = PI / f64::from(j);
    if samples == 1 {
        return vec![0.0];
    }
    (0..samples)
        .map(|i| -limit + 2.0 * limit * i as f64 / (samples - 1) as f64)
        .collect()
}

/// τ_*: the largest bifurcation value over j ∈ [2, j_max] and the sampled
/// screw angles, i.e. the first instability met as τ decreases from 0.
///
/// Angles ±α give the same value, so only α ≥ 0 is solved.
pub fn critical_tau_star(j_max: u32, alpha_samples: usize) -> Result<TauStar> {
    if j_max < 2 || alpha_samples == 0 {
        return Err(Error::InvalidArgument(format!(
            "need j_max ≥ 2 and at least one angle, got {j_max}, {alpha_samples}"
        )));
    }
    let classes: Vec<SymmetryClass> = (2..=j_max)
        .flat_map(|j| {
            alpha_grid(j, alpha_samples)
                .into_iter()
                .filter(|a| *a >= 0.0)
                .map(move |a| SymmetryClass { j, alpha: a })
        })
        .collect();
    let points = classes
        .par_iter()
        .map(first_bifurcation)
        .collect::<Result<Vec<_>>>()?;
    let best = points
        .iter()
        .max_by(|a, b| a.tau_star.total_cmp(&b.tau_star))
        .expect("at least one class");
    let collisions = find_collisions(&points);
    Ok(TauStar {
        tau_star: best.tau_star,
        maximizer: best.symmetry,
        collisions,
        points,
    })
}

/// Pairs of crossings of different symmetry classes within [`COLLISION_TOL`].
pub fn find_collisions(points: &[BifurcationPoint]) -> Vec<Collision> {
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let same = p.symmetry.j == q.symmetry.j && (p.symmetry.alpha.abs() - q.symmetry.alpha.abs()).abs() < 1e-15;
            if !same && (p.tau_star - q.tau_star).abs() < COLLISION_TOL {
                out.push(Collision {
                    first: p.symmetry,
                    second: q.symmetry,
                    tau_first: p.tau_star,
                    tau_second: q.tau_star,
                });
            }
        }
    }
    out
}
