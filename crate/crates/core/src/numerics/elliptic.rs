//! Complete elliptic integral of the first kind via the arithmetic–geometric mean.

use std::f64::consts::FRAC_PI_2;

/// Arithmetic–geometric mean of two nonnegative numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// K(k) = ∫₀^{π/2} dφ / √(1 − k² sin²φ), for modulus `0 ≤ k < 1`.
///
/// Uses K(k) = π / (2·agm(1, k′)) with the complementary modulus k′ = √(1 − k²).
/// Pass `k_prime` directly through [`complete_elliptic_k_complementary`] when it is
/// known more accurately than `1 − k²`.
pub fn complete_elliptic_k(k: f64) -> f64 {
    complete_elliptic_k_complementary(((1.0 - k) * (1.0 + k)).max(0.0).sqrt())
}

/// K expressed through the complementary modulus k′.
pub fn complete_elliptic_k_complementary(k_prime: f64) -> f64 {
    if k_prime <= 0.0 {
        return f64::INFINITY;
    }
    FRAC_PI_2 / agm(1.0, k_prime)
}
