//! Bessel functions of half-integer order for the quadrature integrands.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::numcore::HalfInt;
use crate::specfun::{gamma_fn, lgamma};

const HANKEL_MIN: f64 = 25.0;

fn hankel_pq(mu: f64, z: Complex64) -> (Complex64, Complex64) {
    let m4 = 4.0 * mu * mu;
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let inv8z = 1.0 / (8.0 * z);
    let mut prev = f64::INFINITY;
    for j in 1..200 {
        let odd = (2 * j - 1) as f64;
        let factor = m4 - odd * odd;
        if factor == 0.0 {
            break;
        }
        term = term * factor * inv8z / j as f64;
        let mag = term.norm();
        if mag > prev {
            break;
        }
        prev = mag;
        // signs: P has (−1)^k a_{2k}, Q has (−1)^k a_{2k+1}
        match j % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if mag < 1e-18 * p.norm().max(q.norm()) {
            break;
        }
    }
    (p, q)
}

/// Hankel amplitudes with J_μ(z) = a₊e^{iz} + a₋e^{−iz}, for large |z| with Re z > 0.
pub fn hankel_amplitudes(mu: f64, z: Complex64) -> (Complex64, Complex64) {
    let (p, q) = hankel_pq(mu, z);
    let scale = (2.0 / (PI * z)).sqrt() * 0.5;
    let phi = mu * PI / 2.0 + PI / 4.0;
    let rot = Complex64::from_polar(1.0, -phi);
    let i = Complex64::i();
    (scale * rot * (p + i * q), scale * rot.conj() * (p - i * q))
}

fn series_j(mu: f64, z: f64) -> f64 {
    let h = 0.5 * z;
    let mut term = (mu * h.ln() - lgamma(mu + 1.0)).exp();
    if z == 0.0 {
        return if mu == 0.0 { 1.0 } else { 0.0 };
    }
    let mut sum = term;
    let h2 = h * h;
    for m in 1..200 {
        term *= -h2 / (m as f64 * (m as f64 + mu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller(frac: f64, count: usize, z: f64) -> Vec<f64> {
    let top = count as f64 + frac;
    let start = (top.max(z) + 30.0 + 2.0 * z.sqrt()) as usize + 2;
    let mut vals = vec![0.0; start + 2];
    vals[start + 1] = 0.0;
    vals[start] = 1e-280;
    for m in (1..=start).rev() {
        let order = m as f64 + frac;
        vals[m - 1] = 2.0 * order / z * vals[m] - vals[m + 1];
        if vals[m - 1].abs() > 1e250 {
            for v in vals.iter_mut().skip(m - 1) {
                *v *= 1e-250;
            }
        }
    }
    let norm = if frac == 0.0 {
        let mut s = vals[0];
        let mut k = 2;
        while k <= start {
            s += 2.0 * vals[k];
            k += 2;
        }
        1.0 / s
    } else {
        let pref = (2.0 / (PI * z)).sqrt();
        let j_half = pref * z.sin();
        let j_three = pref * (z.sin() / z - z.cos());
        if j_half.abs() >= j_three.abs() {
            j_half / vals[0]
        } else {
            j_three / vals[1]
        }
    };
    vals.truncate(count);
    vals.iter().map(|v| v * norm).collect()
}

/// J_{frac+i}(z) for i = 0..count, frac ∈ {0, 1/2}, z ≥ 0.
pub fn bessel_j_orders(frac: f64, count: usize, z: f64) -> Vec<f64> {
    if count == 0 {
        return Vec::new();
    }
    if z == 0.0 {
        return (0..count).map(|i| if i == 0 && frac == 0.0 { 1.0 } else { 0.0 }).collect();
    }
    let top = frac + (count - 1) as f64;
    if z < 2.0 {
        return (0..count).map(|i| series_j(frac + i as f64, z)).collect();
    }
    if z >= HANKEL_MIN && top < z {
        let first = |mu: f64| -> f64 {
            if frac != 0.0 {
                let pref = (2.0 / (PI * z)).sqrt();
                if mu == 0.5 {
                    pref * z.sin()
                } else {
                    pref * (z.sin() / z - z.cos())
                }
            } else {
                let (a, _) = hankel_amplitudes(mu, Complex64::new(z, 0.0));
                2.0 * (a * Complex64::from_polar(1.0, z)).re
            }
        };
        let mut out = vec![first(frac)];
        if count > 1 {
            out.push(first(frac + 1.0));
        }
        for i in 2..count {
            let order = frac + (i - 1) as f64;
            let next = 2.0 * order / z * out[i - 1] - out[i - 2];
            out.push(next);
        }
        return out;
    }
    miller(frac, count, z)
}

/// J_μ(z) for half-integer μ ≥ 0.
pub fn bessel_j(mu: HalfInt, z: f64) -> f64 {
    let frac = if mu.is_integer() { 0.0 } else { 0.5 };
    let idx = (mu.to_f64() - frac).round() as usize;
    bessel_j_orders(frac, idx + 1, z)[idx]
}

/// Normalized j_{frac+i}(t) = Γ(μ+1)(2/t)^μ J_μ(t) for i = 0..count.
pub fn jnu_orders(frac: f64, count: usize, t: f64) -> Vec<f64> {
    if t < 2.0 {
        return (0..count)
            .map(|i| {
                let mu = frac + i as f64;
                let q = -0.25 * t * t;
                let mut term = 1.0;
                let mut sum = 1.0;
                for m in 1..100 {
                    term *= q / (m as f64 * (mu + m as f64));
                    sum += term;
                    if term.abs() < 1e-18 * sum.abs() {
                        break;
                    }
                }
                sum
            })
            .collect();
    }
    let js = bessel_j_orders(frac, count, t);
    js.iter()
        .enumerate()
        .map(|(i, j)| {
            let mu = frac + i as f64;
            let g = if mu < 150.0 { gamma_fn(mu + 1.0) * (2.0 / t).powf(mu) } else { (lgamma(mu + 1.0) + mu * (2.0 / t).ln()).exp() };
            g * j
        })
        .collect()
}

/// j_ν(t), normalized so that j_ν(0) = 1.
pub fn jnu(nu: HalfInt, t: f64) -> f64 {
    let frac = if nu.is_integer() { 0.0 } else { 0.5 };
    let idx = (nu.to_f64() - frac).round() as usize;
    jnu_orders(frac, idx + 1, t.abs())[idx]
}

/// Amplitudes of j_μ at complex t: j_μ(t) = c₊e^{it} + c₋e^{−it}.
pub fn jnu_amplitudes(mu: f64, t: Complex64) -> (Complex64, Complex64) {
    let (a, b) = hankel_amplitudes(mu, t);
    let g = gamma_fn(mu + 1.0) * (Complex64::new(2.0, 0.0) / t).powf(mu);
    (g * a, g * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_closed_forms() {
        for &z in &[0.3, 1.7, 5.0, 18.0, 40.0, 123.4] {
            let js = bessel_j_orders(0.5, 4, z);
            let p = (2.0 / (PI * z)).sqrt();
            let want = [p * z.sin(), p * (z.sin() / z - z.cos()), p * ((3.0 / (z * z) - 1.0) * z.sin() - 3.0 * z.cos() / z)];
            for i in 0..3 {
                assert!((js[i] - want[i]).abs() < 1e-14, "z={z} i={i} {} {}", js[i], want[i]);
            }
        }
    }

    #[test]
    fn integer_orders_three_paths() {
        for &z in &[1.9, 2.1, 8.0, 24.9, 25.1, 60.0] {
            let m = miller(0.0, 6, z);
            let s = bessel_j_orders(0.0, 6, z);
            for i in 0..6 {
                assert!((m[i] - s[i]).abs() < 1e-14, "z={z} i={i}");
            }
            if z < 10.0 {
                for i in 0..6 {
                    assert!((series_j(i as f64, z) - m[i]).abs() < 1e-13);
                }
            }
        }
        // J0(1) and J1(1)
        assert!((bessel_j(HalfInt::int(0), 1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(HalfInt::int(1), 1.0) - 0.440_050_585_744_933_5).abs() < 1e-15);
    }

    #[test]
    fn normalized_values() {
        assert_eq!(jnu(HalfInt::int(2), 0.0), 1.0);
        assert!(jnu(HalfInt::from_twice(1), PI).abs() < 1e-15);
        let direct = 2.0 * bessel_j(HalfInt::int(1), 1.0);
        assert!((jnu(HalfInt::int(1), 1.0) - direct).abs() < 1e-15);
        // series near t = 2 against recurrence just above
        let a = jnu_orders(0.0, 4, 1.999_999_9);
        let b = jnu_orders(0.0, 4, 2.000_000_1);
        for i in 0..4 {
            assert!((a[i] - b[i]).abs() < 1e-6);
        }
    }

    #[test]
    fn amplitudes_reproduce_real_axis() {
        for &(mu, z) in &[(0.0, 30.0), (1.0, 41.0), (2.5, 27.0), (4.0, 80.0)] {
            let (a, b) = hankel_amplitudes(mu, Complex64::new(z, 0.0));
            let v = a * Complex64::from_polar(1.0, z) + b * Complex64::from_polar(1.0, -z);
            let frac = if mu.fract() == 0.0 { 0.0 } else { 0.5 };
            let idx = (mu - frac) as usize;
            let want = miller(frac, idx + 1, z)[idx];
            assert!((v.re - want).abs() < 1e-14 && v.im.abs() < 1e-15, "mu={mu} z={z}");
        }
    }
}
