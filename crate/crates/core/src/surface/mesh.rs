use std::f64::consts::TAU as TWO_PI;

use nalgebra::Vector3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::delaunay::{surface_point, ProfileSolution, SurfaceFrame};
use crate::error::{Error, Result};

pub const MIN_RES: usize = 16;

/// Quad mesh on a uniform (t, θ) grid, stored in parametrization order.
///
/// Vertex (i, k) sits at t = 2πi/res_t, θ = 2πk/res_theta with index
/// i·res_theta + k. The θ direction wraps, so the sheet is closed around the
/// axis and open at the two ends in t.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<Vector3<f64>>,
    pub normals: Vec<Vector3<f64>>,
    /// Counter-clockwise quads with respect to the stored normals.
    pub faces: Vec<[usize; 4]>,
    /// Per-vertex (t, θ).
    pub param_coords: Vec<[f64; 2]>,
    pub rows: usize,
    pub res_theta: usize,
}

impl SurfaceMesh {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Index of the vertex at row `i`, angular column `k` (wrapped).
    pub fn index(&self, i: usize, k: usize) -> usize {
        i * self.res_theta + k % self.res_theta
    }

    /// Smallest distance from a vertex to the axis.
    pub fn min_radius(&self) -> f64 {
        self.vertices.iter().map(|v| v.x.hypot(v.y)).fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn check_resolution(res_t: usize, res_theta: usize, periods: usize) -> Result<()> {
    if res_t < MIN_RES || res_theta < MIN_RES || periods == 0 {
        return Err(Error::InvalidArgument(format!(
            "mesh needs res_t, res_theta ≥ {MIN_RES} and periods ≥ 1, got {res_t}, {res_theta}, {periods}"
        )));
    }
    Ok(())
}

/// Builds a mesh from a per-vertex frame function evaluated on the grid.
pub(crate) fn grid_mesh<F>(periods: usize, res_t: usize, res_theta: usize, frame: F) -> Result<SurfaceMesh>
where
    F: Fn(f64, f64) -> Result<SurfaceFrame> + Sync,
{
    check_resolution(res_t, res_theta, periods)?;
    let rows = periods * res_t;
    let frames = (0..rows)
        .into_par_iter()
        .map(|i| {
            let t = TWO_PI * i as f64 / res_t as f64;
            (0..res_theta)
                .map(|k| frame(t, TWO_PI * k as f64 / res_theta as f64))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mesh = SurfaceMesh {
        vertices: Vec::with_capacity(rows * res_theta),
        normals: Vec::with_capacity(rows * res_theta),
        faces: Vec::with_capacity((rows - 1) * res_theta),
        param_coords: Vec::with_capacity(rows * res_theta),
        rows,
        res_theta,
    };
    for f in frames.into_iter().flatten() {
        mesh.vertices.push(f.position);
        mesh.normals.push(f.normal.normalize());
        mesh.param_coords.push([f.t, f.theta]);
    }
    for i in 0..rows - 1 {
        for k in 0..res_theta {
            let q = [mesh.index(i, k), mesh.index(i + 1, k), mesh.index(i + 1, k + 1), mesh.index(i, k + 1)];
            mesh.faces.push(q);
        }
    }
    orient_faces(&mut mesh);
    Ok(mesh)
}

/// Reverses the quads whose geometric normal disagrees with the vertex normals.
fn orient_faces(mesh: &mut SurfaceMesh) {
    let flip = mesh
        .faces
        .iter()
        .map(|q| {
            let (a, b, c) = (mesh.vertices[q[0]], mesh.vertices[q[1]], mesh.vertices[q[2]]);
            (b - a).cross(&(c - a)).dot(&mesh.normals[q[0]])
        })
        .sum::<f64>()
        < 0.0;
    if flip {
        for q in &mut mesh.faces {
            q.reverse();
        }
    }
}

/// Mesh of the Delaunay surface over `periods` periods in t.
pub fn mesh_delaunay(profile: &ProfileSolution, periods: usize, res_t: usize, res_theta: usize) -> Result<SurfaceMesh> {
    if periods > profile.periods {
        return Err(Error::InvalidArgument(format!(
            "profile covers {} periods, {periods} requested",
            profile.periods
        )));
    }
    grid_mesh(periods, res_t, res_theta, |t, theta| surface_point(profile, t, theta))
}

/// Isothermality defects at (t, θ) from central differences with step `h`,
/// in the arclength variable s = s_τ t where the metric is conformal:
/// (||X_s| − |X_θ|| / |X_s|, |X_s·X_θ| / |X_s|²). Both are O(h²).
pub fn isothermality_defect<F>(x: F, s_tau: f64, t: f64, theta: f64, h: f64) -> (f64, f64)
where
    F: Fn(f64, f64) -> Vector3<f64>,
{
    let xs = (x(t + h, theta) - x(t - h, theta)) / (2.0 * h * s_tau);
    let xth = (x(t, theta + h) - x(t, theta - h)) / (2.0 * h);
    let ns = xs.norm();
    ((ns - xth.norm()).abs() / ns, xs.dot(&xth).abs() / (ns * ns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{solve_profile, ProfileOptions};

    #[test]
    fn cylinder_mesh_radius() {
        let p = solve_profile(1.0, 64, 1, &ProfileOptions::default()).unwrap();
        let m = mesh_delaunay(&p, 1, 16, 16).unwrap();
        assert!(m.vertices.iter().all(|v| (v.x.hypot(v.y) - 0.5).abs() < 1e-15));
        assert_eq!(m.vertex_count(), 256);
        assert_eq!(m.faces.len(), 15 * 16);
    }

    #[test]
    fn nodoid_mesh_shape() {
        let p = solve_profile(-1.0, 128, 2, &ProfileOptions::default()).unwrap();
        let m = mesh_delaunay(&p, 2, 32, 24).unwrap();
        assert_eq!(m.vertex_count(), 2 * 32 * 24);
        assert!(m.faces.iter().flatten().all(|&i| i < m.vertex_count()));
        assert!(m.normals.iter().all(|n| (n.norm() - 1.0).abs() < 1e-12));
        let s0 = (1.0f64).asinh();
        let (lo, hi) = ((-s0).exp() / 2.0, s0.exp() / 2.0);
        assert!(m.vertices.iter().all(|v| {
            let r = v.x.hypot(v.y);
            r >= lo - 1e-12 && r <= hi + 1e-12
        }));
    }

    #[test]
    fn unduloid_height_increases() {
        let p = solve_profile(0.5, 128, 1, &ProfileOptions::default()).unwrap();
        let m = mesh_delaunay(&p, 1, 32, 16).unwrap();
        for i in 1..m.rows {
            assert!(m.vertices[m.index(i, 3)].z > m.vertices[m.index(i - 1, 3)].z);
        }
    }

    #[test]
    fn resolution_bounds() {
        let p = solve_profile(-1.0, 64, 1, &ProfileOptions::default()).unwrap();
        assert!(mesh_delaunay(&p, 1, 8, 16).is_err());
        assert!(mesh_delaunay(&p, 1, 16, 8).is_err());
        assert!(mesh_delaunay(&p, 2, 16, 16).is_err());
    }

    #[test]
    fn isothermal_at_mesh_scale() {
        let p = solve_profile(-1.0, 256, 1, &ProfileOptions::default()).unwrap();
        let x = |t: f64, th: f64| surface_point(&p, t, th).unwrap().position;
        let defect = |h: f64| isothermality_defect(x, p.s_tau, 1.1, 0.4, h);
        let (a1, b1) = defect(1e-2);
        let (a2, b2) = defect(5e-3);
        assert!(a1 < 1e-4 && b1 < 1e-12 && a2 < a1 / 3.0 && b2 < 1e-12, "{a1} {a2} {b1} {b2}");
    }
}
