use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::index::{base_operator, mode_cutoff, shifted_eigenvalues, spectral_profile, INDEX_BANDS};
use super::symmetry::SymmetryClass;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowRow {
    pub tau: f64,
    pub n: u32,
    pub k: usize,
    /// λ_k(τ, β_n) + s_τ² n² j².
    pub value: f64,
}

/// Shifted eigenvalues on a strictly decreasing grid of negative τ, for every
/// axial mode up to the largest cutoff on the grid and k < 3. Rows follow the
/// grid order.
pub fn spectral_flow_table(sym: &SymmetryClass, tau_grid: &[f64]) -> Result<Vec<FlowRow>> {
    if tau_grid.is_empty() {
        return Err(Error::InvalidArgument("empty τ grid".into()));
    }
    if tau_grid.iter().any(|&t| !(t < 0.0)) || tau_grid.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidArgument("τ grid must be negative and strictly decreasing".into()));
    }
    let n_max = tau_grid.iter().map(|&t| mode_cutoff(t, sym.j)).max().unwrap_or(1).max(2) - 1;
    let per_tau = tau_grid
        .par_iter()
        .map(|&tau| {
            let profile = spectral_profile(tau)?;
            let base = base_operator(&profile)?;
            let mut rows = Vec::new();
            for n in 1..=n_max {
                for (k, value) in shifted_eigenvalues(&base, sym, n, INDEX_BANDS)?.into_iter().enumerate() {
                    rows.push(FlowRow { tau, n, k, value });
                }
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_tau.into_iter().flatten().collect())
}

/// Evenly spaced grid from `from` to `to` inclusive.
pub fn linear_grid(from: f64, to: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..points)
            .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_for_small_tau() {
        let s = SymmetryClass::new(2, 0.0).unwrap();
        let rows = spectral_flow_table(&s, &[-0.5]).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.value > 0.0));
    }

    #[test]
    fn grid_validation() {
        let s = SymmetryClass::new(2, 0.0).unwrap();
        assert!(spectral_flow_table(&s, &[-1.0, -0.5]).is_err());
        assert!(spectral_flow_table(&s, &[0.5]).is_err());
        assert!(spectral_flow_table(&s, &[]).is_err());
    }

    #[test]
    fn rows_follow_grid_order() {
        let s = SymmetryClass::new(3, 0.2).unwrap();
        let grid = linear_grid(-1.0, -4.0, 4);
        let rows = spectral_flow_table(&s, &grid).unwrap();
        let taus: Vec<f64> = rows.iter().map(|r| r.tau).collect();
        assert!(taus.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(rows.len(), 4 * 3 * 1);
    }
}
