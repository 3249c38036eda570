//! Small self-contained numerical kernels shared by the geometry and spectral code.

pub mod brent;
pub mod elliptic;
pub mod quadrature;
pub mod rk4;

pub use brent::{brent_root, BrentOptions};
pub use elliptic::{agm, complete_elliptic_k};
pub use quadrature::{gauss_kronrod_adaptive, QuadratureResult};
pub use rk4::{rk4_integrate, rk4_step};
