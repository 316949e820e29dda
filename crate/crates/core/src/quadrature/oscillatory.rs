use num_complex::Complex64;
use rayon::prelude::*;

use super::bessel::{bessel_j_orders, hankel_amplitudes};
use super::integrand::BoostedIntegrand;
use super::rules::{adaptive, tanh_sinh};
use super::{QuadResult, QuadSpec, TailRule};
use crate::error::{Result, WalkError};

const ZERO_FREQ: f64 = 1e-12;
/// Largest split point before the head integral becomes impractically long.
const MAX_SPLIT: f64 = 5e4;

/// ∫₀^∞ t^p · J_μ(xt) · G(t) dt, or without the J factor when `kernel` is None.
pub(crate) struct BesselIntegral<'a> {
    pub g: &'a BoostedIntegrand,
    pub p: f64,
    pub kernel: Option<(f64, f64)>,
}

fn j_real(mu: f64, z: f64) -> f64 {
    let frac = if mu.fract() == 0.0 { 0.0 } else { 0.5 };
    let idx = (mu - frac).round() as usize;
    bessel_j_orders(frac, idx + 1, z)[idx]
}

impl BesselIntegral<'_> {
    fn real(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let b = match self.kernel {
            Some((mu, x)) => j_real(mu, x * t),
            None => 1.0,
        };
        t.powf(self.p) * b * self.g.eval(t)
    }

    fn x(&self) -> f64 {
        self.kernel.map_or(0.0, |k| k.1)
    }

    fn max_freq(&self) -> f64 {
        self.g.n as f64 + self.x()
    }

    fn envelope_exponent(&self) -> f64 {
        let nu = self.g.nu.to_f64();
        let b = if self.kernel.is_some() { 0.5 } else { 0.0 };
        self.p - b - self.g.n as f64 * (nu + 0.5) - self.g.k as f64
    }

    /// Frequencies (m, σ, ω) with ω = 2m − n + σx.
    fn buckets(&self) -> Vec<(usize, i32, f64)> {
        let n = self.g.n as i64;
        let sigmas: &[i32] = if self.kernel.is_some() { &[1, -1] } else { &[0] };
        let mut out = Vec::new();
        for m in 0..=n {
            for &s in sigmas {
                out.push((m as usize, s, (2 * m - n) as f64 + s as f64 * self.x()));
            }
        }
        out
    }

    fn split_point(&self) -> f64 {
        let mu_j = self.g.max_order();
        let need = |mu: f64| -> f64 {
            if mu.fract() == 0.0 {
                25f64.max(mu * mu)
            } else {
                25.0
            }
        };
        let mut t = need(mu_j);
        if let Some((mu, x)) = self.kernel {
            t = t.max(need(mu) / x);
        }
        t
    }

    fn head(&self, upto: f64, tol: f64) -> (f64, f64) {
        let width = std::f64::consts::PI / self.max_freq();
        let panels = (upto / width).ceil().max(1.0) as usize;
        let h = upto / panels as f64;
        let parts: Vec<(f64, f64)> = (0..panels)
            .into_par_iter()
            .map(|i| {
                let a = i as f64 * h;
                let b = a + h;
                if i == 0 {
                    tanh_sinh(|t, _, _| self.real(t), a, b, tol * 1e-3)
                } else {
                    adaptive(|t| self.real(t), a, b, 0.0, tol * 1e-3, 64)
                }
            })
            .collect();
        parts.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1))
    }

    fn positive_part(&self, t: Complex64, buckets: &[(usize, i32, f64)]) -> Complex64 {
        let c = self.g.amplitudes(t);
        let tp = t.powf(self.p);
        let b = self.kernel.map(|(mu, x)| hankel_amplitudes(mu, t * x));
        let mut sum = Complex64::new(0.0, 0.0);
        for &(m, s, w) in buckets {
            let amp = match (b, s) {
                (Some((bp, _)), 1) => bp,
                (Some((_, bm)), -1) => bm,
                _ => Complex64::new(1.0, 0.0),
            };
            sum += c[m] * amp * (Complex64::i() * w * t).exp();
        }
        tp * sum
    }

    fn tail_contour(&self, from: f64, tol: f64) -> Result<(f64, f64)> {
        let all = self.buckets();
        let pos: Vec<_> = all.iter().copied().filter(|b| b.2 > ZERO_FREQ).collect();
        let zero: Vec<_> = all.iter().copied().filter(|b| b.2.abs() <= ZERO_FREQ).collect();
        let mut value = 0.0;
        let mut err = 0.0;
        if !pos.is_empty() {
            let w_min = pos.iter().map(|b| b.2).fold(f64::INFINITY, f64::min);
            let growth = self.envelope_exponent().max(0.0);
            let upper = (45.0 + growth * (1.0 + from.ln())) / w_min;
            let mut cuts = vec![0.0];
            let mut c = 0.5 / self.max_freq();
            while c < upper {
                cuts.push(c);
                c *= 2.0;
            }
            cuts.push(upper);
            let parts: Vec<(Complex64, f64)> = cuts
                .par_windows(2)
                .map(|w| adaptive(|u| self.positive_part(Complex64::new(from, u), &pos), w[0], w[1], 0.0, tol * 1e-3, 200))
                .collect();
            let total = parts.iter().fold(Complex64::new(0.0, 0.0), |a, p| a + p.0);
            value += -2.0 * total.im;
            err += 2.0 * parts.iter().map(|p| p.1).sum::<f64>();
        }
        if !zero.is_empty() {
            let alpha = self.envelope_exponent();
            if alpha >= -1.0 {
                return Err(WalkError::Divergent(format!(
                    "non-oscillatory part of the integrand decays like t^{alpha}, which is not integrable"
                )));
            }
            let (v, e) = tanh_sinh(
                |v, _, _| {
                    let t = from / v;
                    self.positive_part(Complex64::new(t, 0.0), &zero).re * from / (v * v)
                },
                0.0,
                1.0,
                tol * 1e-3,
            );
            value += v;
            err += e;
        }
        Ok((value, err))
    }

    fn tail_euler(&self, from: f64, tol: f64, max_zones: usize) -> Result<(f64, f64, f64)> {
        let pos: Vec<f64> = self.buckets().iter().map(|b| b.2).filter(|w| *w > ZERO_FREQ).collect();
        let w_ref = pos.iter().copied().fold(f64::INFINITY, f64::min);
        if !w_ref.is_finite() || self.envelope_exponent() >= -1.0 && self.buckets().iter().any(|b| b.2.abs() <= ZERO_FREQ) {
            return Err(WalkError::Divergent("zone summation needs an oscillatory, decaying integrand".into()));
        }
        let width = std::f64::consts::PI / w_ref;
        let mut sums = Vec::new();
        let mut acc = 0.0;
        let mut best = (0.0, f64::INFINITY);
        let mut a = from;
        for z in 0..max_zones {
            let (v, _) = adaptive(|t| self.real(t), a, a + width, 0.0, tol * 1e-3, 64);
            acc += v;
            sums.push(acc);
            a += width;
            if z >= 8 && z % 4 == 0 {
                let depth = (sums.len() - 2).min(30);
                let tailseq = &sums[sums.len() - depth - 1..];
                let est = euler_average(tailseq);
                let prev = euler_average(&sums[sums.len() - depth - 2..sums.len() - 1]);
                let e = (est - prev).abs();
                if e < best.1 {
                    best = (est, e);
                }
                if e <= tol * est.abs().max(1e-300) {
                    return Ok((est, e, a));
                }
            }
        }
        Err(WalkError::Accuracy { best: best.0, err: best.1 })
    }

    fn total(&self, split: f64, spec: &QuadSpec) -> Result<(f64, f64)> {
        match spec.tail {
            TailRule::Contour => {
                let (h, he) = self.head(split, spec.tol);
                let (t, te) = self.tail_contour(split, spec.tol)?;
                Ok((h + t, he + te))
            }
            TailRule::EulerZones => {
                let (h, he) = self.head(split, spec.tol);
                let (t, te, _) = self.tail_euler(split, spec.tol, spec.max_zones)?;
                Ok((h + t, he + te))
            }
        }
    }

    /// Integral with an error estimate from two different split points.
    pub fn evaluate(&self, spec: &QuadSpec) -> Result<QuadResult> {
        let t0 = self.split_point();
        if t0 > MAX_SPLIT {
            return Err(WalkError::Domain(format!(
                "argument {} is too small for the oscillatory integral (split point {t0:.3e})",
                self.x()
            )));
        }
        let (v1, _) = self.total(t0, spec)?;
        let (v2, _) = self.total(1.25 * t0, spec)?;
        if !v1.is_finite() {
            return Err(WalkError::Accuracy { best: v1, err: f64::INFINITY });
        }
        let err = (v1 - v2).abs().max(f64::EPSILON * v1.abs());
        Ok(QuadResult { value: v1, err, boost_k: self.g.k })
    }
}

/// Iterated pairwise averaging of partial sums.
pub(crate) fn euler_average(seq: &[f64]) -> f64 {
    let mut s = seq.to_vec();
    while s.len() > 1 {
        s = s.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    s[0]
}
