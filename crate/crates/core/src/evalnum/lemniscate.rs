use gauss_quad::GaussLegendre;
use serde::Serialize;

use super::ball::{up, CertReal, U};

/// `varpi = 2 int_0^1 dx / sqrt(1 - x^4)` and `varpi' = 2 int_0^1 dx / sqrt(1 - x^6)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lemniscate {
    pub varpi: CertReal,
    pub varpi_prime: CertReal,
}

/// `2 int_0^1 (1 - x^n)^{-1/2} dx`. With `x = 1 - u^2` the integrand becomes
/// `2 / sqrt(Q(u))`, `Q(u) = sum_{i<n} (1 - u^2)^i >= 1`, which is analytic on
/// `[0, 1]`; the radius is the gap between two Gauss-Legendre orders.
fn lemniscate_integral(n: i32) -> CertReal {
    let f = |u: f64| {
        let x = 1.0 - u * u;
        let q: f64 = (0..n).map(|i| x.powi(i)).sum();
        4.0 / q.sqrt()
    };
    let lo = GaussLegendre::new(24).expect("order >= 2").integrate(0.0, 1.0, f);
    let hi = GaussLegendre::new(48).expect("order >= 2").integrate(0.0, 1.0, f);
    CertReal::new(hi, up((hi - lo).abs() + 64.0 * hi * U))
}

pub fn lemniscate_constants() -> Lemniscate {
    Lemniscate { varpi: lemniscate_integral(4), varpi_prime: lemniscate_integral(6) }
}
