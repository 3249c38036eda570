//! Classical fourth-order Runge–Kutta on fixed-size states.

/// One RK4 step of size `h` for `y' = f(t, y)`.
#[inline]
pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = f(t + h, &axpy(y, h, &k3));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrates from `t0` to `t1` in `steps` equal RK4 steps.
pub fn rk4_integrate<const N: usize, F>(f: &F, t0: f64, y0: [f64; N], t1: f64, steps: usize) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let steps = steps.max(1);
    let h = (t1 - t0) / steps as f64;
    let mut y = y0;
    for i in 0..steps {
        y = rk4_step(f, t0 + i as f64 * h, &y, h);
    }
    y
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], a: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_fourth_order() {
        let f = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let err = |n: usize| {
            let y = rk4_integrate(&f, 0.0, [1.0, 0.0], 1.0, n);
            (y[0] - 1f64.cos()).abs()
        };
        let ratio = err(20) / err(40);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn exact_for_cubic_polynomials() {
        let f = |t: f64, _y: &[f64; 1]| [3.0 * t * t];
        let y = rk4_integrate(&f, 0.0, [0.0], 2.0, 3);
        assert!((y[0] - 8.0).abs() < 1e-13);
    }
}
