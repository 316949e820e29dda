use num_complex::Complex64;

use super::bessel::{jnu_amplitudes, jnu_orders};
use crate::numcore::HalfInt;

/// (−(1/t) d/dt)^k j_ν(t)ⁿ as a finite sum of products of j_{ν+i}.
#[derive(Debug, Clone)]
pub struct BoostedIntegrand {
    pub n: u32,
    pub nu: HalfInt,
    pub k: u32,
    weights: Vec<f64>,
    k_fact: f64,
}

impl BoostedIntegrand {
    pub fn new(n: u32, nu: HalfInt, k: u32) -> Self {
        let v = nu.to_f64();
        let mut weights = Vec::with_capacity(k as usize + 1);
        let mut w = 1.0;
        for i in 0..=k {
            if i > 0 {
                w *= 0.5 / (i as f64 * (v + i as f64));
            }
            weights.push(w);
        }
        let k_fact = (1..=k).map(|i| i as f64).product();
        Self { n, nu, k, weights, k_fact }
    }

    fn frac(&self) -> f64 {
        if self.nu.is_integer() {
            0.0
        } else {
            0.5
        }
    }

    fn base_index(&self) -> usize {
        (self.nu.to_f64() - self.frac()).round() as usize
    }

    /// Number of compositions k₁+…+k_n = k.
    pub fn term_count(&self) -> u64 {
        crate::numcore::binomial((self.k + self.n - 1) as u64, (self.n - 1) as u64).try_into().unwrap_or(u64::MAX)
    }

    /// Orders ν..ν+k that appear.
    pub fn max_order(&self) -> f64 {
        self.nu.to_f64() + self.k as f64
    }

    /// Power-series coefficient extraction at y^k of (Σ cᵢ yⁱ)ⁿ.
    fn power_coeff(&self, c: &[f64]) -> f64 {
        let k = self.k as usize;
        let mut acc = vec![0.0; k + 1];
        acc[0] = 1.0;
        for _ in 0..self.n {
            let mut next = vec![0.0; k + 1];
            for (a, &va) in acc.iter().enumerate() {
                if va == 0.0 {
                    continue;
                }
                for b in 0..=k - a {
                    next[a + b] += va * c[b];
                }
            }
            acc = next;
        }
        acc[k] * self.k_fact
    }

    pub fn eval(&self, t: f64) -> f64 {
        let base = self.base_index();
        let js = jnu_orders(self.frac(), base + self.k as usize + 1, t);
        let c: Vec<f64> = (0..=self.k as usize).map(|i| self.weights[i] * js[base + i]).collect();
        self.power_coeff(&c)
    }

    pub fn value_at_zero(&self) -> f64 {
        self.power_coeff(&self.weights)
    }

    /// Frequency split at complex t: returns C_m with G(t) = Σ_m C_m e^{i(2m−n)t}, m = 0..=n.
    pub fn amplitudes(&self, t: Complex64) -> Vec<Complex64> {
        let k = self.k as usize;
        let n = self.n as usize;
        let v = self.nu.to_f64();
        let amps: Vec<(Complex64, Complex64)> = (0..=k)
            .map(|i| {
                let (p, m) = jnu_amplitudes(v + i as f64, t);
                (p * self.weights[i], m * self.weights[i])
            })
            .collect();
        let zero = Complex64::new(0.0, 0.0);
        // acc[deg][plus count]
        let mut acc = vec![vec![zero; n + 1]; k + 1];
        acc[0][0] = Complex64::new(1.0, 0.0);
        for step in 0..n {
            let mut next = vec![vec![zero; n + 1]; k + 1];
            for a in 0..=k {
                for m in 0..=step {
                    let va = acc[a][m];
                    if va == zero {
                        continue;
                    }
                    for (b, &(cp, cm)) in amps.iter().enumerate().take(k - a + 1) {
                        next[a + b][m + 1] += va * cp;
                        next[a + b][m] += va * cm;
                    }
                }
            }
            acc = next;
        }
        acc.swap_remove(k).into_iter().map(|c| c * self.k_fact).collect()
    }
}
