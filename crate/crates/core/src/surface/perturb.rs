use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::curvature::mean_curvature_numeric;
use super::mesh::{grid_mesh, SurfaceMesh};
use crate::bifurcation::{BifurcationPoint, CrossingMode, SymmetryClass};
use crate::delaunay::{surface_point, ProfileSolution, SurfaceFrame};
use crate::error::{Error, Result};

/// Normal graph w(t, θ) = η·Re(φ(t) e^{ijθ}) over a Delaunay surface.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerturbationSpec {
    pub symmetry: SymmetryClass,
    pub eta: f64,
    pub phi: CrossingMode,
}

impl PerturbationSpec {
    pub fn from_point(point: &BifurcationPoint, eta: f64) -> Result<Self> {
        let phi = point.eigenfunction.clone().ok_or(Error::MissingEigenfunction)?;
        Ok(Self {
            symmetry: point.symmetry,
            eta,
            phi,
        })
    }

    pub fn graph(&self, t: f64, theta: f64) -> f64 {
        let rot = Complex64::from_polar(1.0, f64::from(self.symmetry.j) * theta);
        self.eta * (self.phi.eval(t) * rot).re
    }
}

/// The perturbed immersion X + w N, with the unperturbed normal N carried
/// along as orientation reference.
pub fn perturbed_frame(profile: &ProfileSolution, spec: &PerturbationSpec, t: f64, theta: f64) -> Result<SurfaceFrame> {
    let base = surface_point(profile, t, theta)?;
    if spec.eta == 0.0 {
        return Ok(base);
    }
    let w = spec.graph(t, theta);
    Ok(SurfaceFrame {
        position: base.position + w * base.normal,
        ..base
    })
}

/// Warning text when |η| exceeds a tenth of the smallest distance from the
/// surface to its axis, the scale beyond which the normal graph may fold.
pub fn amplitude_warning(profile: &ProfileSolution, eta: f64) -> Option<String> {
    let sigma_min = profile.samples.iter().map(|p| p.sigma).fold(f64::INFINITY, f64::min);
    let r_min = 0.5 * profile.tau.abs() * sigma_min.exp();
    (eta.abs() > 0.1 * r_min).then(|| {
        format!("|eta| = {} exceeds 0.1 x minimum radius {r_min:.6}; the normal graph may self-fold", eta.abs())
    })
}

/// Mesh of X_τ + η·Re(φ(t)e^{ijθ})·N_τ over `periods` periods. Vertex normals
/// are those of the unperturbed surface. η = 0 reproduces [`super::mesh_delaunay`].
pub fn mesh_perturbed(
    profile: &ProfileSolution,
    point: &BifurcationPoint,
    eta: f64,
    res: (usize, usize),
    periods: usize,
) -> Result<SurfaceMesh> {
    let spec = PerturbationSpec::from_point(point, eta)?;
    if periods > profile.periods {
        return Err(Error::InvalidArgument(format!(
            "profile covers {} periods, {periods} requested",
            profile.periods
        )));
    }
    grid_mesh(periods, res.0, res.1, |t, theta| perturbed_frame(profile, &spec, t, theta))
}

/// max |H − 1| of the perturbed immersion over the given (t, θ) points.
pub fn perturbed_curvature_defect(
    profile: &ProfileSolution,
    spec: &PerturbationSpec,
    points: &[(f64, f64)],
    h: f64,
) -> Result<f64> {
    let pos = |t: f64, th: f64| -> Vector3<f64> {
        perturbed_frame(profile, spec, t, th).map(|f| f.position).unwrap_or_else(|_| Vector3::repeat(f64::NAN))
    };
    let nrm = |t: f64, th: f64| -> Vector3<f64> {
        surface_point(profile, t, th).map(|f| f.normal).unwrap_or_else(|_| Vector3::repeat(f64::NAN))
    };
    let mut worst = 0.0f64;
    for &(t, th) in points {
        let hval = mean_curvature_numeric(pos, nrm, t, th, h)?;
        if !hval.is_finite() {
            return Err(Error::OutOfRange {
                t,
                lo: -profile.t_max(),
                hi: profile.t_max(),
            });
        }
        worst = worst.max((hval - 1.0).abs());
    }
    Ok(worst)
}
