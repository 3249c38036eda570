//! Meshes of Delaunay surfaces and of their first-order bifurcated normal
//! graphs, with finite-difference mean curvature.

mod curvature;
mod export;
mod mesh;
mod perturb;

pub use curvature::{mean_curvature_numeric, richardson_ratio, DEFAULT_STEP, METRIC_FLOOR};
pub use export::{export_mesh, write_csv, write_obj, write_ply, MeshFormat};
pub use mesh::{isothermality_defect, mesh_delaunay, SurfaceMesh, MIN_RES};
pub use perturb::{amplitude_warning, mesh_perturbed, perturbed_curvature_defect, perturbed_frame, PerturbationSpec};
