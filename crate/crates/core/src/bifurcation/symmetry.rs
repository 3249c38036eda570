use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::fold_phase;

/// Invariance under the j-fold rotation R_j and the screw motion S_α
/// (rotation by α about the axis composed with one axial period).
///
/// On such functions the Fourier mode e^{inj θ} in θ is α-coupled along the
/// axis with quasiperiodic phase n·j·α, so its spectrum is that of the reduced
/// operator with offset s_τ²n²j² and phase β_n = fold(n j α).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryClass {
    pub j: u32,
    /// Screw angle in [−π/j, π/j].
    pub alpha: f64,
}

impl SymmetryClass {
    pub fn new(j: u32, alpha: f64) -> Result<Self> {
        if j < 2 {
            return Err(Error::InvalidArgument(format!("rotational order j must be at least 2, got {j}")));
        }
        let limit = PI / f64::from(j);
        if !alpha.is_finite() || alpha.abs() > limit * (1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!("screw angle {alpha} outside [−π/{j}, π/{j}]")));
        }
        Ok(Self { j, alpha })
    }

    /// Folded quasiperiodic phase of axial mode n.
    pub fn beta(&self, n: u32) -> f64 {
        fold_phase(f64::from(n) * f64::from(self.j) * self.alpha)
    }

    /// Whether the unfolded phase j·α wraps to a negative value, in which case
    /// the crossing eigenfunction enters the perturbation conjugated.
    pub fn phase_is_negative(&self) -> bool {
        let p = f64::from(self.j) * self.alpha;
        let r = p - std::f64::consts::TAU * (p / std::f64::consts::TAU).round();
        r < 0.0 && fold_phase(p) < PI
    }

    /// The class with the opposite screw angle; it has the same spectrum.
    pub fn mirrored(&self) -> Self {
        Self {
            j: self.j,
            alpha: -self.alpha,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SymmetryClass::new(1, 0.0).is_err());
        assert!(SymmetryClass::new(2, 2.0).is_err());
        assert!(SymmetryClass::new(2, PI / 2.0).is_ok());
        assert!(SymmetryClass::new(4, -PI / 4.0).is_ok());
    }

    #[test]
    fn folded_phases() {
        let s = SymmetryClass::new(3, PI / 6.0).unwrap();
        assert!((s.beta(1) - PI / 2.0).abs() < 1e-15);
        assert_eq!(s.beta(2), PI);
        assert!((s.beta(3) - PI / 2.0).abs() < 1e-15);
        assert!(s.beta(4).abs() < 1e-14);
        assert_eq!(s.mirrored().beta(1), s.beta(1));
        assert!(!s.phase_is_negative() && s.mirrored().phase_is_negative());
    }
}
