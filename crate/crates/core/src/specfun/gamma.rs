use std::f64::consts::PI;

use crate::error::{Result, WalkError};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_int(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Γ(x) for real x, infinite at the poles.
pub fn gamma_fn(x: f64) -> f64 {
    if is_nonpositive_int(x) {
        return f64::INFINITY;
    }
    if x == x.round() && x <= 171.0 {
        let mut acc = 1.0;
        for k in 2..(x as u32) {
            acc *= k as f64;
        }
        return acc;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_fn(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    if x > 20.0 {
        return lgamma(x).exp();
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Γ(x), with a pole error at nonpositive integers.
pub fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_int(x) {
        return Err(WalkError::Pole(format!("Gamma at {x}")));
    }
    Ok(gamma_fn(x))
}

/// 1/Γ(x), zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_int(x) {
        0.0
    } else {
        1.0 / gamma_fn(x)
    }
}

/// ln|Γ(x)|.
pub fn lgamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin().abs()).ln() - lgamma(1.0 - x);
    }
    if x < 15.0 {
        // shift up for the Stirling series
        let mut shift = 0.0;
        let mut y = x;
        while y < 15.0 {
            shift += y.ln();
            y += 1.0;
        }
        return lgamma(y) - shift;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0)))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// Rising factorial (a)_n.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// Binomial coefficient Γ(n+1)/(Γ(k+1)Γ(n−k+1)) for real arguments.
pub fn binom_real(n: f64, k: f64) -> f64 {
    gamma_fn(n + 1.0) * rgamma(k + 1.0) * rgamma(n - k + 1.0)
}

/// ψ(x) = Γ′(x)/Γ(x).
pub fn digamma(x: f64) -> f64 {
    if is_nonpositive_int(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        return digamma(1.0 - x) - PI / (PI * x).tan();
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 12.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    acc + y.ln() - 0.5 / y
        - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))))
}

/// ψ′(x) for x > 0.
pub fn trigamma(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut y = x;
    while y < 15.0 {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    acc + inv
        + 0.5 * inv2
        + inv * inv2
            * (1.0 / 6.0
                - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 - inv2 * (5.0 / 66.0 - inv2 * 691.0 / 2730.0)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn classical_values() {
        assert!(close(gamma(0.5).unwrap(), PI.sqrt(), 1e-15));
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert!(gamma(-2.0).is_err());
        assert!(close(gamma_fn(1.0 / 3.0), 2.678_938_534_707_747_6, 1e-14));
        assert!(close(gamma_fn(-1.5), 4.0 * PI.sqrt() / 3.0, 1e-14));
        assert!(close(gamma_fn(30.5), (lgamma(30.5)).exp(), 1e-13));
        assert!(close(lgamma(100.0), 359.134_205_369_575_4, 1e-15));
    }

    #[test]
    fn digamma_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!(close(digamma(1.0), -euler, 4e-15));
        assert!(close(digamma(0.5), -euler - 2.0 * 2f64.ln(), 4e-15));
        assert!(close(digamma(-0.5), digamma(0.5) + 2.0, 1e-14));
        assert!(close(trigamma(1.0), PI * PI / 6.0, 1e-15));
        assert!(close(trigamma(0.5), PI * PI / 2.0, 1e-14));
    }

    #[test]
    fn gamma_recurrence() {
        for &x in &[0.1, 0.7, 1.3, 2.9, 7.25, 12.5] {
            assert!(close(gamma_fn(x + 1.0), x * gamma_fn(x), 2e-15));
        }
    }
}
