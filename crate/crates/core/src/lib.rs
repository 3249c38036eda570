//! Delaunay constant-mean-curvature surfaces, the band spectrum of their
//! Jacobi operators under Bloch reduction, and the detection of the parameter
//! values at which non-rotationally-symmetric CMC branches bifurcate.

pub mod bifurcation;
pub mod config;
pub mod delaunay;
pub mod error;
pub mod numerics;
pub mod output;
pub mod spectral;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use bifurcation::{BifurcationPoint, IndexReport, SymmetryClass};
pub use config::RunConfig;
pub use delaunay::{DelaunayParameter, PeriodValue, ProfileSolution, SurfaceFrame};
pub use spectral::{BandTable, EigenDecomposition, QuasiPeriodicOperator};
pub use surface::SurfaceMesh;
