//! The acceptance checks, shared by the test suite and the `verify` command.
//!
//! Each check recomputes its quantities from scratch and reports a one-line
//! summary of the numbers it compared.

use std::f64::consts::{PI, SQRT_2};
use std::time::Instant;

use serde::Serialize;

use crate::bifurcation::{first_bifurcation, index, transversality, critical_tau_star, SymmetryClass};
use crate::delaunay::{period_elliptic, period_quadrature, solve_profile, surface_point, ProfileOptions};
use crate::error::Result;
use crate::spectral::{
    eigensolve_galerkin, eigensolve_monodromy, galerkin_fixed, limit_band, operator_for_tau, DEFAULT_MODES,
};
use crate::surface::{mean_curvature_numeric, mesh_delaunay, perturbed_curvature_defect, PerturbationSpec};

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {} ({:.1}s)", self.id, self.name, self.detail, self.seconds)
    }
}

type Check = fn() -> Result<(bool, String)>;

pub const CRITERIA: [(&str, Check); 13] = [
    ("period oracle agreement", period_agreement),
    ("profile energy drift", energy_drift),
    ("large-|tau| rates", large_tau_rates),
    ("exact eigenvalue identities", exact_identities),
    ("ground band bounds", ground_band_bounds),
    ("limit bands", limit_bands),
    ("galerkin vs monodromy", oracle_equivalence),
    ("bifurcation brackets", bifurcation_brackets),
    ("asymptotic crossing law", asymptotic_law),
    ("transversality", transversal_crossings),
    ("index flow", index_flow),
    ("geometry", geometry),
    ("tau_* estimate", tau_star),
];

/// Runs criterion `id` (1-based). A numerical error counts as a failure.
pub fn run(id: usize) -> Outcome {
    let (name, check) = CRITERIA[id - 1];
    let start = Instant::now();
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all() -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(run).collect()
}

fn e(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn period_agreement() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for tau in [-10.0, -2.0, -1.0, -0.5, 0.3, 0.7, 0.999] {
        let (q, el) = (period_quadrature(tau)?.s_tau, period_elliptic(tau)?.s_tau);
        worst = worst.max((q - el).abs() / el);
    }
    let s1 = period_elliptic(-1.0)?.s_tau;
    let s999 = period_elliptic(0.999)?.s_tau;
    let ok = worst <= 1e-10 && (s1 - 0.834_626_842).abs() < 1e-9 && (s999 - 1.0).abs() <= 1e-3;
    Ok((ok, format!("max rel diff {}, s(-1) = {s1:.10}, s(0.999) = {s999:.10}", e(worst))))
}

pub fn energy_drift() -> Result<(bool, String)> {
    let mut parts = Vec::new();
    let mut ok = true;
    for tau in [-5.0, -1.0, 0.5] {
        let d = solve_profile(tau, 256, 4, &ProfileOptions::default())?.max_energy_drift();
        ok &= d <= 1e-10;
        parts.push(format!("{tau}: {}", e(d)));
    }
    Ok((ok, format!("drift over 4 periods {}", parts.join(", "))))
}

fn gamma_deviation(tau: f64) -> Result<f64> {
    let p = solve_profile(tau, 512, 1, &ProfileOptions::default())?;
    let n = 2048;
    let mut worst = 0.0f64;
    for i in 0..=n {
        let t = -PI + 2.0 * PI * i as f64 / n as f64;
        worst = worst.max((p.gamma(t)? - t.cos()).abs());
    }
    Ok(worst)
}

/// sup|γ_τ − cos| must fall by ≈ 4 per doubling of τ. The remainder of
/// s_τ + 1/τ is O(|τ|⁻³), so τ²|s_τ + 1/τ| must stay bounded: it may not
/// exceed its value at τ = −10 by more than 20%. The normalized |τ|³|s_τ + 1/τ|
/// is also required to be constant within 20%.
pub fn large_tau_rates() -> Result<(bool, String)> {
    let ratio = gamma_deviation(-20.0)? / gamma_deviation(-40.0)?;
    let taus = [-10.0, -20.0, -40.0, -80.0];
    let mut sq = Vec::new();
    let mut cube = Vec::new();
    for tau in taus {
        let s = period_elliptic(tau)?.s_tau;
        let r = (s + 1.0 / tau).abs();
        sq.push(tau * tau * r);
        cube.push(-tau * tau * tau * r);
    }
    let bounded = sq.iter().all(|&v| v <= 1.2 * sq[0]);
    let (cmin, cmax) = cube.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    let flat = cmax <= 1.2 * cmin;
    let ok = (3.5..=4.5).contains(&ratio) && bounded && flat;
    Ok((
        ok,
        format!(
            "gamma ratio {ratio:.3}; tau^2|s+1/tau| = [{}]; |tau|^3|s+1/tau| in [{cmin:.4}, {cmax:.4}]",
            sq.iter().map(|v| e(*v)).collect::<Vec<_>>().join(", ")
        ),
    ))
}

pub fn exact_identities() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for tau in [-0.5, -1.0, -2.0, -5.0] {
        let (p, op) = operator_for_tau(tau, 0, 0.0)?;
        let l = galerkin_fixed(&op, DEFAULT_MODES, 3)?.eigenvalues;
        worst = worst.max((l[1] + p.s_tau * p.s_tau).abs()).max(l[2].abs());
    }
    for tau in [0.3, 0.7, 1.0] {
        let (p, op) = operator_for_tau(tau, 0, 0.0)?;
        let l = galerkin_fixed(&op, DEFAULT_MODES, 1)?.eigenvalues;
        worst = worst.max((l[0] + p.s_tau * p.s_tau).abs());
    }
    Ok((worst <= 1e-8, format!("max error at 64 modes {}", e(worst))))
}

pub fn ground_band_bounds() -> Result<(bool, String)> {
    let mut margin = f64::INFINITY;
    for tau in [-0.5, -1.0, -2.0, -5.0] {
        for alpha in [0.0, PI / 2.0, PI] {
            let (p, op) = operator_for_tau(tau, 0, alpha)?;
            let l0 = eigensolve_galerkin(&op, DEFAULT_MODES, 1)?.eigenvalues[0];
            let s2 = p.s_tau * p.s_tau;
            let b2 = (alpha / (2.0 * PI)).powi(2);
            let upper = b2 - tau * tau * s2;
            let lower = upper - 2.0 * s2;
            margin = margin.min(upper - l0).min(l0 - lower);
        }
    }
    Ok((margin >= -1e-10, format!("smallest slack to either bound {}", e(margin))))
}

pub fn limit_bands() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let (mut rmin, mut rmax) = (f64::INFINITY, 0.0f64);
    for alpha in [0.0, PI / 2.0, PI] {
        let l25 = eigensolve_galerkin(&operator_for_tau(-25.0, 0, alpha)?.1, DEFAULT_MODES, 4)?.eigenvalues;
        let l50 = eigensolve_galerkin(&operator_for_tau(-50.0, 0, alpha)?.1, DEFAULT_MODES, 4)?.eigenvalues;
        for k in 0..4 {
            let (e25, e50) = ((l25[k] - limit_band(k, alpha)).abs(), (l50[k] - limit_band(k, alpha)).abs());
            worst = worst.max(e50);
            // λ_2(τ, 0) = 0 = λ_2(0) holds exactly; its ratio is rounding noise
            if e25 > 1e-9 || e50 > 1e-9 {
                let r = e25 / e50;
                rmin = rmin.min(r);
                rmax = rmax.max(r);
            }
        }
    }
    let ok = worst <= 5e-3 && rmin >= 3.5 && rmax <= 4.5;
    Ok((ok, format!("max error at -50 {}, error ratio -25/-50 in [{rmin:.3}, {rmax:.3}]", e(worst))))
}

pub fn oracle_equivalence() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (tau, alpha) in [(-3.0, 1.0), (-1.0, PI), (-10.0, 0.0)] {
        let (_, op) = operator_for_tau(tau, 0, alpha)?;
        let g = eigensolve_galerkin(&op, DEFAULT_MODES, 8)?.eigenvalues;
        // stop the bracket short of the next distinct eigenvalue, so that a
        // double root at λ_4 is not cut in half
        let next = g[5..].iter().copied().find(|&l| l - g[4] > 1e-6).unwrap_or(g[4] + 1.0);
        let m = eigensolve_monodromy(&op, g[0] - 0.5, 0.5 * (g[4] + next))?;
        if m.len() < 5 {
            return Ok((false, format!("monodromy found {} roots at ({tau}, {alpha})", m.len())));
        }
        for k in 0..5 {
            worst = worst.max((g[k] - m[k]).abs());
        }
    }
    Ok((worst <= 1e-7, format!("max |galerkin - monodromy| {}", e(worst))))
}

pub fn bifurcation_brackets() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for j in [2u32, 3, 4, 6, 8, 10, 12] {
        let t = first_bifurcation(&SymmetryClass::new(j, 0.0)?)?.tau_star;
        let jf = f64::from(j);
        ok &= t > -jf && t < -(jf * jf - 2.0).sqrt();
        parts.push(format!("{j}: {t:.6}"));
    }
    Ok((ok, format!("tau_(j,0) {}", parts.join(", "))))
}

pub fn asymptotic_law() -> Result<(bool, String)> {
    let mut v = Vec::new();
    for j in [8u32, 16, 32] {
        let t = first_bifurcation(&SymmetryClass::new(j, 0.0)?)?.tau_star;
        v.push(f64::from(j) * (t + f64::from(j)).abs());
    }
    let (lo, hi) = v.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    // a failure of the law would make j|τ + j| grow linearly in j
    let ok = hi.is_finite() && hi <= 1.5 * lo;
    Ok((ok, format!("j|tau+j| for j = 8, 16, 32: {:.5}, {:.5}, {:.5}", v[0], v[1], v[2])))
}

pub fn transversal_crossings() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for j in [8u32, 16, 32] {
        for alpha in [0.0, PI / (2.0 * f64::from(j))] {
            let mut p = first_bifurcation(&SymmetryClass::new(j, alpha)?)?;
            let slope = transversality(&mut p, 1e-4)?;
            ok &= slope < 0.0;
            parts.push(format!("{j}/{}: {}", if alpha == 0.0 { "0" } else { "pi/2j" }, e(slope)));
        }
    }
    Ok((ok, format!("d/d|tau| at crossing {}", parts.join(", "))))
}

pub fn index_flow() -> Result<(bool, String)> {
    let s2 = SymmetryClass::new(2, 0.0)?;
    let i_small = index(-1.2, &s2)?.index;
    let t20 = first_bifurcation(&s2)?.tau_star;
    let i_past = index(t20 - 0.05, &s2)?.index;
    let mut checked = 0;
    let mut violations = 0;
    for j in [2u32, 3] {
        let jf = f64::from(j);
        for i in 0..50 {
            let tau = -6.0 + 4.5 * i as f64 / 49.0;
            let (p, op) = operator_for_tau(tau, 0, 0.0)?;
            let s2 = p.s_tau * p.s_tau;
            let b_lo = eigensolve_galerkin(&op, DEFAULT_MODES, 1)?.eigenvalues[0];
            let b_hi = eigensolve_galerkin(&op.with_alpha(PI), DEFAULT_MODES, 1)?.eigenvalues[0];
            if b_lo + jf * jf * s2 <= 0.0 && 0.0 <= b_hi + jf * jf * s2 {
                checked += 1;
                if !(b_lo + 4.0 * jf * jf * s2 > 0.0) {
                    violations += 1;
                }
            }
        }
    }
    let ok = i_small == 0 && i_past >= 1 && violations == 0 && checked > 0;
    Ok((
        ok,
        format!(
            "I(-1.2) = {i_small}, I(tau_(2,0) - 0.05) = {i_past}; second-mode exclusion held at {checked} grid points, {violations} violations"
        ),
    ))
}

/// Mean curvature of the τ = −1 nodoid at h = 1e−4 and its second-order
/// convergence; the h-halving ratio is measured at h = 1e−2 → 5e−3 because
/// at h = 1e−4 the O(h²) error sits below the rounding of the second
/// differences.
pub fn geometry() -> Result<(bool, String)> {
    let p = solve_profile(-1.0, 256, 1, &ProfileOptions::default())?;
    let x = |t: f64, th: f64| surface_point(&p, t, th).map(|f| f.position).expect("in range");
    let n = |t: f64, th: f64| surface_point(&p, t, th).map(|f| f.normal).expect("in range");
    let pts = [(0.0, 0.0), (0.7, 1.1), (1.9, 2.5), (-2.4, 4.0), (3.0, 5.9)];
    let mut h_err = 0.0f64;
    let (mut rmin, mut rmax) = (f64::INFINITY, 0.0f64);
    for &(t, th) in &pts {
        h_err = h_err.max((mean_curvature_numeric(x, n, t, th, 1e-4)? - 1.0).abs());
        let coarse = (mean_curvature_numeric(x, n, t, th, 1e-2)? - 1.0).abs();
        let fine = (mean_curvature_numeric(x, n, t, th, 5e-3)? - 1.0).abs();
        rmin = rmin.min(coarse / fine);
        rmax = rmax.max(coarse / fine);
    }
    let cyl = solve_profile(1.0, 64, 1, &ProfileOptions::default())?;
    let mesh = mesh_delaunay(&cyl, 1, 32, 32)?;
    let r_err = mesh.vertices.iter().map(|v| (v.x.hypot(v.y) - 0.5).abs()).fold(0.0, f64::max);

    let bp = first_bifurcation(&SymmetryClass::new(2, 0.0)?)?;
    let prof = solve_profile(bp.tau_star, 512, 1, &ProfileOptions::default())?;
    let grid: Vec<(f64, f64)> = (0..6)
        .flat_map(|i| (0..4).map(move |k| (-2.5 + i as f64, 0.3 + 0.7 * k as f64)))
        .collect();
    let d1 = perturbed_curvature_defect(&prof, &PerturbationSpec::from_point(&bp, 0.01)?, &grid, 1e-3)?;
    let d2 = perturbed_curvature_defect(&prof, &PerturbationSpec::from_point(&bp, 0.005)?, &grid, 1e-3)?;
    let eta_ratio = d1 / d2;
    let ok = h_err <= 1e-3
        && rmin >= 3.5
        && rmax <= 4.5
        && r_err <= 1e-15
        && (3.5..=4.5).contains(&eta_ratio);
    Ok((
        ok,
        format!(
            "|H-1| at h=1e-4 {}, h-ratio in [{rmin:.3}, {rmax:.3}]; cylinder radius error {}; eta defects {} / {} ratio {eta_ratio:.3}",
            e(h_err),
            e(r_err),
            e(d1),
            e(d2)
        ),
    ))
}

pub fn tau_star() -> Result<(bool, String)> {
    let r = critical_tau_star(6, 9)?;
    let ok = r.tau_star > -2.0 && r.tau_star < -SQRT_2;
    Ok((
        ok,
        format!(
            "tau_* = {:.10} at j = {}, alpha = {:.4}; {} classes, {} collisions",
            r.tau_star,
            r.maximizer.j,
            r.maximizer.alpha,
            r.points.len(),
            r.collisions.len()
        ),
    ))
}
