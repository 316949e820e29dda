//! Basic quadrature rules: adaptive Gauss-Kronrod and tanh-sinh.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Values a quadrature rule can sum.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// One 15-point Kronrod panel with its Gauss-7 error estimate.
pub fn gk15<T: QuadValue>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k = k + s * WGK[i];
        if i % 2 == 1 {
            g = g + s * WG[i / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    (k, (k - g).magnitude())
}

/// Globally adaptive Gauss-Kronrod on [a, b]. Returns (value, error estimate).
pub fn adaptive<T: QuadValue>(mut f: impl FnMut(f64) -> T, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_panels: usize) -> (T, f64) {
    if a == b {
        return (T::zero(), 0.0);
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let total = panels.iter().fold(T::zero(), |acc, p| acc + p.2);
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.magnitude()) || panels.len() >= max_panels {
            return (total, err);
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (pa, pb, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            let total = panels.iter().fold(T::zero(), |acc, p| acc + p.2);
            return (total, err);
        }
        let (v1, e1) = gk15(&mut f, pa, mid);
        let (v2, e2) = gk15(&mut f, mid, pb);
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
}

/// Tanh-sinh quadrature on [a, b]; tolerant of integrable endpoint singularities.
///
/// The integrand receives the abscissa and its distances to a and b.
pub fn tanh_sinh(mut f: impl FnMut(f64, f64, f64) -> f64, a: f64, b: f64, rel_tol: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    let pi2 = std::f64::consts::FRAC_PI_2;
    let tmax = 4.5;
    let center = f(c, half, half) * pi2;
    let mut eval = |t: f64| -> f64 {
        let u = pi2 * t.sinh();
        let cu = u.cosh();
        let w = pi2 * t.cosh() / (cu * cu);
        let delta = 2.0 / ((2.0 * u.abs()).exp() + 1.0);
        let d = half * delta;
        let (x, da, db) = if t < 0.0 { (a + d, d, 2.0 * half - d) } else { (b - d, 2.0 * half - d, d) };
        if d <= 0.0 || !w.is_finite() || w == 0.0 {
            return 0.0;
        }
        let y = f(x, da, db) * w;
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    let mut h = 0.5;
    let mut sum = center;
    let mut t = h;
    while t <= tmax {
        sum += eval(t) + eval(-t);
        t += h;
    }
    let mut estimate = sum * h * half;
    let mut err = f64::INFINITY;
    for _ in 0..9 {
        h *= 0.5;
        let mut t = h;
        while t <= tmax {
            sum += eval(t) + eval(-t);
            t += 2.0 * h;
        }
        let next = sum * h * half;
        err = (next - estimate).abs();
        estimate = next;
        if err <= rel_tol * estimate.abs() {
            break;
        }
    }
    (estimate, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        let (v, _) = gk15(&mut |x: f64| x.powi(20), 0.0, 1.0);
        assert!((v - 1.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_oscillatory() {
        let (v, _) = adaptive(|x: f64| (50.0 * x).cos(), 0.0, 3.0, 1e-14, 1e-14, 500);
        assert!((v - (150.0f64).sin() / 50.0).abs() < 1e-13);
    }

    #[test]
    fn complex_values() {
        let (v, _) = adaptive(|x: f64| Complex64::new(0.0, x).exp(), 0.0, 1.0, 1e-14, 1e-14, 100);
        let want = (Complex64::new(0.0, 1.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((v - want).norm() < 1e-14);
    }

    #[test]
    fn endpoint_singularities() {
        let (v, _) = tanh_sinh(|x, _, _| x.powf(-0.5), 0.0, 1.0, 1e-14);
        assert!((v - 2.0).abs() < 1e-12);
        let (v, _) = tanh_sinh(|_, _, db| db.ln(), 0.0, 1.0, 1e-14);
        assert!((v + 1.0).abs() < 1e-12);
    }
}
