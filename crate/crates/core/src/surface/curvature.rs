use nalgebra::Vector3;

use crate::error::{Error, Result};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;
/// Smallest accepted EG − F².
pub const METRIC_FLOOR: f64 = 1e-14;

/// Mean curvature H = (eG − 2fF + gE) / (2(EG − F²)) of a parametrized
/// surface at (t, θ), with both fundamental forms from central differences of
/// step `h`.
///
/// The second fundamental form is taken against the unit normal ν of
/// X_t × X_θ flipped, if needed, to agree with `orientation`, with the sign
/// convention that makes the unit sphere under its outward normal have
/// H = +1 (so H = (k₁ + k₂)/2 with k = 1 for the sphere).
pub fn mean_curvature_numeric<X, N>(x: X, orientation: N, t: f64, theta: f64, h: f64) -> Result<f64>
where
    X: Fn(f64, f64) -> Vector3<f64>,
    N: Fn(f64, f64) -> Vector3<f64>,
{
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let c = x(t, theta);
    let (tp, tm) = (x(t + h, theta), x(t - h, theta));
    let (ap, am) = (x(t, theta + h), x(t, theta - h));
    let (pp, pm) = (x(t + h, theta + h), x(t + h, theta - h));
    let (mp, mm) = (x(t - h, theta + h), x(t - h, theta - h));
    let xt = (tp - tm) / (2.0 * h);
    let xa = (ap - am) / (2.0 * h);
    let xtt = (tp - 2.0 * c + tm) / (h * h);
    let xaa = (ap - 2.0 * c + am) / (h * h);
    let xta = (pp - pm - mp + mm) / (4.0 * h * h);
    let (e_, f_, g_) = (xt.dot(&xt), xt.dot(&xa), xa.dot(&xa));
    let det = e_ * g_ - f_ * f_;
    if !(det >= METRIC_FLOOR) {
        return Err(Error::DegenerateMetric(det));
    }
    let mut nu = xt.cross(&xa) / det.sqrt();
    if nu.dot(&orientation(t, theta)) < 0.0 {
        nu = -nu;
    }
    let (l, m, n) = (-nu.dot(&xtt), -nu.dot(&xta), -nu.dot(&xaa));
    Ok((l * g_ - 2.0 * m * f_ + n * e_) / (2.0 * det))
}

/// Richardson ratio |H(h) − H_ref| / |H(h/2) − H_ref| of the discretization
/// error, which tends to 4 for a second-order scheme.
pub fn richardson_ratio<X, N>(x: X, orientation: N, t: f64, theta: f64, h: f64, reference: f64) -> Result<f64>
where
    X: Fn(f64, f64) -> Vector3<f64>,
    N: Fn(f64, f64) -> Vector3<f64>,
{
    let coarse = mean_curvature_numeric(&x, &orientation, t, theta, h)? - reference;
    let fine = mean_curvature_numeric(&x, &orientation, t, theta, 0.5 * h)? - reference;
    Ok(coarse.abs() / fine.abs())
}
