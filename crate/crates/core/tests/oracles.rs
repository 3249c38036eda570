//! Values computed independently of this crate (50-digit arithmetic) or in
//! closed form, frozen here as regression oracles.

use std::f64::consts::PI;

use delaunay_cmc::bifurcation::{first_bifurcation, SymmetryClass};
use delaunay_cmc::delaunay::{classify, initial_sigma, period_elliptic, period_quadrature, SurfaceKind};
use delaunay_cmc::spectral::{eigensolve_galerkin, galerkin_fixed, operator_for_tau, QuasiPeriodicOperator};

const PERIODS: [(f64, f64); 13] = [
    (-80.0, 0.012_499_511_761_660_69),
    (-40.0, 0.024_996_095_122_695_25),
    (-20.0, 0.049_968_793_869_164_29),
    (-10.0, 0.099_751_396_558_542_49),
    (-5.0, 0.198_043_787_081_236_77),
    (-3.0, 0.324_611_610_583_140_27),
    (-2.0, 0.472_503_165_464_879_03),
    (-1.0, 0.834_626_841_674_073),
    (-0.5, 1.285_275_363_546_249),
    (0.3, 1.672_892_460_505_136),
    (0.5, 1.372_880_500_618_350),
    (0.7, 1.185_793_963_583_637),
    (0.999, 1.000_500_312_718_915),
];

#[test]
fn period_table() {
    for (tau, s) in PERIODS {
        let el = period_elliptic(tau).unwrap().s_tau;
        let q = period_quadrature(tau).unwrap().s_tau;
        assert!((el - s).abs() < 1e-13 * s.max(1.0), "{tau}: {el} vs {s}");
        assert!((q - s).abs() < 1e-13 * s.max(1.0), "{tau}: {q} vs {s}");
    }
}

#[test]
fn cylinder_period_is_one() {
    assert!((period_elliptic(1.0).unwrap().s_tau - 1.0).abs() < 1e-15);
    assert!((period_quadrature(1.0).unwrap().s_tau - 1.0).abs() < 1e-14);
}

#[test]
fn classification_and_initial_values() {
    assert_eq!(classify(1.0).unwrap().kind(), SurfaceKind::Cylinder);
    assert_eq!(classify(-1.0).unwrap().kind(), SurfaceKind::Nodoid);
    assert_eq!(classify(0.4).unwrap().kind(), SurfaceKind::Unduloid);
    assert!(classify(0.0).is_err() && classify(1.5).is_err() && classify(f64::NAN).is_err());
    assert_eq!(initial_sigma(1.0).unwrap(), 0.0);
    assert!((initial_sigma(-1.0).unwrap() + 0.881_373_587_019_543).abs() < 1e-15);
    assert!((initial_sigma(0.5).unwrap() + 1.316_957_896_924_816_6).abs() < 1e-15);
}

#[test]
fn constant_potential_spectrum() {
    // q ≡ 1: eigenvalues (n + α/2π)² − 1 over all integers n
    for alpha in [0.0, 0.4, 1.7, PI] {
        let op = QuasiPeriodicOperator::constant(1.0, 0.0, alpha);
        let got = eigensolve_galerkin(&op, 24, 7).unwrap().eigenvalues;
        let mut want: Vec<f64> = (-10..=10).map(|n| (f64::from(n) + alpha / (2.0 * PI)).powi(2) - 1.0).collect();
        want.sort_by(f64::total_cmp);
        for k in 0..7 {
            assert!((got[k] - want[k]).abs() < 1e-13, "α={alpha} k={k}");
        }
    }
}

#[test]
fn nodoid_ground_state_identity() {
    // observed to rounding: λ_0(τ, 0) = −(1 + τ²) s_τ² on nodoids, which puts the
    // α = 0 crossing of mode j at τ = −√(j² − 1)
    for tau in [-0.3, -1.0, -2.5, -7.0] {
        let (p, op) = operator_for_tau(tau, 0, 0.0).unwrap();
        let l0 = galerkin_fixed(&op, 64, 1).unwrap().eigenvalues[0];
        assert!((l0 + (1.0 + tau * tau) * p.s_tau * p.s_tau).abs() < 1e-10, "{tau}");
    }
    for j in [2u32, 5, 9] {
        let t = first_bifurcation(&SymmetryClass::new(j, 0.0).unwrap()).unwrap().tau_star;
        assert!((t + f64::from(j * j - 1).sqrt()).abs() < 1e-9, "{j}: {t}");
    }
}

#[test]
fn unduloid_second_periodic_eigenvalue() {
    // observed to rounding: λ_1(τ, 0) = −(1 − τ²) s_τ² on unduloids
    for tau in [0.3, 0.5, 0.7] {
        let (p, op) = operator_for_tau(tau, 0, 0.0).unwrap();
        let l = galerkin_fixed(&op, 64, 2).unwrap().eigenvalues;
        assert!((l[1] + (1.0 - tau * tau) * p.s_tau * p.s_tau).abs() < 1e-10, "{tau}");
    }
}
