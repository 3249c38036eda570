use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceKind {
    /// Embedded, `0 < τ < 1`.
    Unduloid,
    /// The cylinder of radius 1/2, `τ = 1`.
    Cylinder,
    /// Immersed, `τ < 0`.
    Nodoid,
}

/// A validated Delaunay parameter `τ ∈ (−∞, 1] \ {0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelaunayParameter {
    tau: f64,
    kind: SurfaceKind,
}

impl DelaunayParameter {
    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn is_nodoid(&self) -> bool {
        self.kind == SurfaceKind::Nodoid
    }
}

/// Validates `tau` and classifies the corresponding Delaunay surface.
///
/// `τ = 0` is the singular chain of tangent spheres and `τ > 1` lies outside
/// the family; both are rejected.
pub fn classify(tau: f64) -> Result<DelaunayParameter> {
    if !tau.is_finite() {
        return Err(Error::Domain(format!("tau must be finite, got {tau}")));
    }
    let kind = if tau == 0.0 {
        return Err(Error::Domain("tau = 0 is the degenerate chain of spheres".into()));
    } else if tau > 1.0 {
        return Err(Error::Domain(format!("tau = {tau} exceeds 1")));
    } else if tau == 1.0 {
        SurfaceKind::Cylinder
    } else if tau > 0.0 {
        SurfaceKind::Unduloid
    } else {
        SurfaceKind::Nodoid
    };
    Ok(DelaunayParameter { tau, kind })
}

/// σ(0): the negative root of `τ² cosh² σ = 1` (τ > 0) or `τ² sinh² σ = 1` (τ < 0).
pub fn initial_sigma(tau: f64) -> Result<f64> {
    let p = classify(tau)?;
    Ok(match p.kind {
        SurfaceKind::Cylinder => 0.0,
        SurfaceKind::Unduloid => -(1.0 / tau).acosh(),
        // sinh σ₀ = 1/τ < 0
        SurfaceKind::Nodoid => (1.0 / tau).asinh(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(classify(1.0).unwrap().kind(), SurfaceKind::Cylinder);
        assert_eq!(classify(0.4).unwrap().kind(), SurfaceKind::Unduloid);
        assert_eq!(classify(-1.0).unwrap().kind(), SurfaceKind::Nodoid);
        assert!(classify(-1e300).unwrap().is_nodoid());
    }

    #[test]
    fn rejects_outside_family() {
        for bad in [0.0, -0.0, 1.0 + 1e-12, 3.0, f64::NAN, f64::NEG_INFINITY] {
            assert!(matches!(classify(bad), Err(Error::Domain(_))), "{bad}");
        }
    }

    #[test]
    fn initial_values() {
        assert_eq!(initial_sigma(1.0).unwrap(), 0.0);
        assert!((initial_sigma(-1.0).unwrap() + 0.881_373_587_019_543).abs() < 1e-14);
        assert!((initial_sigma(0.5).unwrap() + 1.316_957_896_924_816_7).abs() < 1e-14);
    }

    #[test]
    fn initial_value_solves_conservation_law() {
        for tau in [-30.0, -2.0, -0.1, 0.2, 0.9] {
            let s0 = initial_sigma(tau).unwrap();
            let lhs = if tau < 0.0 { tau * s0.sinh() } else { tau * s0.cosh() };
            assert!((lhs * lhs - 1.0).abs() < 1e-13);
            assert!(s0 < 0.0);
        }
    }
}
