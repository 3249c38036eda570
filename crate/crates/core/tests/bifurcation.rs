use std::f64::consts::PI;

use delaunay_cmc::bifurcation::{
    asymptotic_crossing, asymptotic_second_crossing, find_collisions, first_bifurcation, index, linear_grid,
    second_crossing, spectral_flow_table, transversality, SymmetryClass,
};

#[test]
fn index_jumps_by_one_at_crossing() {
    for (j, alpha) in [(2, 0.0), (3, PI / 6.0), (4, PI / 5.0)] {
        let s = SymmetryClass::new(j, alpha).unwrap();
        let p = first_bifurcation(&s).unwrap();
        let before = index(p.tau_star + 0.05, &s).unwrap();
        let after = index(p.tau_star - 0.05, &s).unwrap();
        assert_eq!(after.index, before.index + 1, "j={j}");
    }
}

#[test]
fn index_jumps_by_two_at_antiperiodic_phase() {
    // β = π: the potential has period π, so bands 0 and 1 meet and cross together
    let s = SymmetryClass::new(4, PI / 4.0).unwrap();
    let p = first_bifurcation(&s).unwrap();
    let jump = index(p.tau_star - 0.05, &s).unwrap().index - index(p.tau_star + 0.05, &s).unwrap().index;
    assert_eq!(jump, 2);
}

#[test]
fn crossings_converge_to_asymptotics() {
    // j|τ_j − τ_j^∞| stays bounded
    for (j, x) in [(6u32, 0.0), (10, 0.5), (16, 1.0)] {
        let s = SymmetryClass::new(j, x * PI / f64::from(j)).unwrap();
        let t = first_bifurcation(&s).unwrap().tau_star;
        let gap = f64::from(j) * (t - asymptotic_crossing(j, s.beta(1))).abs();
        assert!(gap < 1.0, "j={j}: {gap}");
    }
}

#[test]
fn eigenvalue_crosses_transversally() {
    for j in [2u32, 5] {
        let mut p = first_bifurcation(&SymmetryClass::new(j, 0.0).unwrap()).unwrap();
        let slope = transversality(&mut p, 1e-4).unwrap();
        assert!(slope < 0.0 && p.dtau_slope > 0.0, "j={j}: {slope}");
    }
}

#[test]
fn second_band_crossing_lies_deeper() {
    let s = SymmetryClass::new(16, PI / 32.0).unwrap();
    let first = first_bifurcation(&s).unwrap();
    let second = second_crossing(&s).unwrap().expect("second crossing");
    assert!(second.conjectural && second.band_index == 1);
    assert!(second.tau_star < first.tau_star);
    let guess = asymptotic_second_crossing(16, s.beta(1)).unwrap();
    assert!((second.tau_star - guess).abs() < 0.1 * guess.abs(), "{} vs {guess}", second.tau_star);
}

#[test]
fn flow_values_decrease_with_tau() {
    let s = SymmetryClass::new(3, 0.2).unwrap();
    let grid = linear_grid(-1.0, -6.0, 11);
    let rows = spectral_flow_table(&s, &grid).unwrap();
    let ground: Vec<f64> = rows.iter().filter(|r| r.n == 1 && r.k == 0).map(|r| r.value).collect();
    assert_eq!(ground.len(), grid.len());
    assert!(ground.windows(2).all(|w| w[1] < w[0]), "{ground:?}");
    assert!(spectral_flow_table(&s, &[-1.0, -0.5]).is_err());
}

#[test]
fn distinct_classes_do_not_collide() {
    let pts: Vec<_> = [(2u32, 0.0), (3, 0.0), (3, 0.5)]
        .iter()
        .map(|&(j, a)| first_bifurcation(&SymmetryClass::new(j, a).unwrap()).unwrap())
        .collect();
    assert!(find_collisions(&pts).is_empty());
    let mut near = pts[0].clone();
    near.symmetry = SymmetryClass::new(5, 0.1).unwrap();
    near.tau_star += 1e-8;
    assert_eq!(find_collisions(&[pts[0].clone(), near]).len(), 1);
    // the same class met twice is not a collision
    assert!(find_collisions(&[pts[0].clone(), pts[0].clone()]).is_empty());
}
