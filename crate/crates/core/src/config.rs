//! Run configuration: tolerances, default resolutions and the output
//! directory, read from an optional `key = value` file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub ode_tol: f64,
    /// The quadrature, eigenvalue and root tolerances and the Fourier sizes are
    /// library constants, carried here so that they are reported with the run.
    pub quad_tol: f64,
    /// Eigenvalue shift accepted when doubling the Fourier truncation.
    pub eigen_tol: f64,
    pub root_tol: f64,
    pub profile_samples: usize,
    pub fourier_modes: usize,
    pub potential_coeffs: usize,
    pub mesh_res_t: usize,
    pub mesh_res_theta: usize,
    pub mesh_periods: usize,
    pub alpha_samples: usize,
    pub j_max: u32,
    pub output_dir: PathBuf,
    /// Every computation is deterministic; there is no random seed.
    pub seedless: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ode_tol: 1e-12,
            quad_tol: crate::delaunay::QUAD_TOL,
            eigen_tol: crate::spectral::CONVERGENCE_TOL,
            root_tol: crate::bifurcation::TAU_TOL,
            profile_samples: crate::spectral::DEFAULT_PROFILE_SAMPLES,
            fourier_modes: crate::spectral::DEFAULT_MODES,
            potential_coeffs: crate::spectral::DEFAULT_COEFFS,
            mesh_res_t: 64,
            mesh_res_theta: 48,
            mesh_periods: 2,
            alpha_samples: 9,
            j_max: 6,
            output_dir: PathBuf::from("."),
            seedless: true,
        }
    }
}

impl RunConfig {
    /// Defaults overridden by the entries of a `key = value` file. Blank lines
    /// and lines starting with `#` are ignored.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("{}:{}: expected key = value", path.display(), lineno + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::InvalidArgument(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::InvalidArgument(format!("bad value {v:?} for {key}")))
        }
        match key {
            "ode_tol" => self.ode_tol = num(key, value)?,
            "quad_tol" | "eigen_tol" | "root_tol" | "fourier_modes" | "potential_coeffs" => {
                return Err(Error::InvalidArgument(format!("{key} is fixed by the library and cannot be overridden")))
            }
            "profile_samples" => self.profile_samples = num(key, value)?,
            "mesh_res_t" => self.mesh_res_t = num(key, value)?,
            "mesh_res_theta" => self.mesh_res_theta = num(key, value)?,
            "mesh_periods" => self.mesh_periods = num(key, value)?,
            "alpha_samples" => self.alpha_samples = num(key, value)?,
            "j_max" => self.j_max = num(key, value)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            "seedless" => {
                if value != "true" {
                    return Err(Error::InvalidArgument("seedless is fixed to true".into()));
                }
            }
            other => return Err(Error::InvalidArgument(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("ode_tol", self.ode_tol),
            ("quad_tol", self.quad_tol),
            ("eigen_tol", self.eigen_tol),
            ("root_tol", self.root_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        if self.profile_samples < 16 || self.mesh_res_t < 16 || self.mesh_res_theta < 16 || self.mesh_periods == 0 {
            return Err(Error::InvalidArgument("resolutions below their minimum of 16".into()));
        }
        if self.j_max < 2 || self.alpha_samples == 0 {
            return Err(Error::InvalidArgument("j_max must be at least 2 and alpha_samples positive".into()));
        }
        Ok(())
    }

    pub fn profile_options(&self) -> crate::delaunay::ProfileOptions {
        crate::delaunay::ProfileOptions {
            tolerance: self.ode_tol,
            ..Default::default()
        }
    }
}
