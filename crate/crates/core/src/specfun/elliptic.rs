use std::f64::consts::FRAC_PI_2;

use crate::error::{Result, WalkError};

/// Arithmetic-geometric mean of positive a and b.
pub fn agm(a: f64, b: f64) -> f64 {
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= 1e-16 * an {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

/// Complete elliptic integral K(k), modulus 0 ≤ k < 1.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(WalkError::Domain(format!("K(k) needs 0 <= k < 1, got {k}")));
    }
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - k * k).sqrt()))
}

/// K′(k) = K(√(1−k²)) for 0 < k < 1 (0 < k ≤ 1 accepted).
pub fn elliptic_kprime(k: f64) -> Result<f64> {
    if !(k > 0.0 && k <= 1.0) {
        return Err(WalkError::Domain(format!("K'(k) needs 0 < k <= 1, got {k}")));
    }
    Ok(FRAC_PI_2 / agm(1.0, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_fn;
    use crate::quadrature::rules::tanh_sinh;
    use std::f64::consts::PI;

    #[test]
    fn self_dual_point() {
        let want = gamma_fn(0.25).powi(2) / (4.0 * PI.sqrt());
        assert!((elliptic_kprime(0.5f64.sqrt()).unwrap() - want).abs() < 1e-14);
        assert!((elliptic_k(0.5f64.sqrt()).unwrap() - want).abs() < 1e-14);
        assert!(elliptic_kprime(0.0).is_err());
    }

    #[test]
    fn agm_converges_quadratically() {
        let (mut a, mut b) = (1.0f64, 0.1f64);
        let limit = agm(1.0, 0.1);
        let mut errs = Vec::new();
        for _ in 0..6 {
            errs.push((a - limit).abs());
            let an = 0.5 * (a + b);
            b = (a * b).sqrt();
            a = an;
        }
        for w in errs.windows(2) {
            assert!(w[1] <= w[0]);
        }
        assert!(errs[4] < 1e-8 && errs[5] < 1e-14);
    }

    #[test]
    fn agm_matches_integral_definition() {
        // K(k) = ∫_0^{π/2} dθ / sqrt(1 − k² sin²θ)
        for i in 0..10 {
            let k = 0.05 + 0.09 * i as f64;
            let (q, _) = tanh_sinh(|t, _, _| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15);
            assert!((elliptic_k(k).unwrap() - q).abs() < 1e-12, "k = {k}");
        }
    }
}
