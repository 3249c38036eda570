//! Delaunay surfaces in isothermal coordinates: the profile ODE, the period
//! function and the immersion with its unit normal.

mod frame;
mod parameter;
mod period;
mod profile;

pub use frame::{gamma, surface_point, SurfaceFrame};
pub use parameter::{classify, initial_sigma, DelaunayParameter, SurfaceKind};
pub use period::{compute_period, period_elliptic, period_quadrature, PeriodMethod, PeriodValue, QUAD_TOL};
pub use profile::{solve_profile, ProfileOptions, ProfileSample, ProfileSolution, ProfileState};
