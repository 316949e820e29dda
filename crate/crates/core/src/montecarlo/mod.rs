//! Monte Carlo simulation of uniform random walks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::densities::{cdf_odd_dim, cdf_p2_closed};
use crate::error::{Result, WalkError};
use crate::numcore::HalfInt;
use crate::quadrature::{cdf_quad, QuadSpec};

/// Generator used for every substream.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha), one stream per block of samples";
/// Samples per substream.
const BLOCK: usize = 1 << 14;
/// KS critical constant at α = 0.01.
pub const KS_C_001: f64 = 1.628;

/// Distance after `n` unit steps with directions from normalized Gaussians.
pub fn sample_walk<R: Rng + ?Sized>(n: u32, dim: usize, rng: &mut R) -> f64 {
    let mut pos = vec![0.0f64; dim];
    let mut step = vec![0.0f64; dim];
    for _ in 0..n {
        let norm = loop {
            for c in step.iter_mut() {
                *c = rng.sample(StandardNormal);
            }
            let r = step.iter().map(|c| c * c).sum::<f64>().sqrt();
            if r > 0.0 {
                break r;
            }
        };
        for (p, c) in pos.iter_mut().zip(&step) {
            *p += c / norm;
        }
    }
    pos.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn check(n: u32, dim: usize, samples: usize) -> Result<()> {
    if dim < 2 {
        return Err(WalkError::Domain(format!("dimension must be at least 2, got {dim}")));
    }
    if n == 0 || samples == 0 {
        return Err(WalkError::Domain("need at least one step and one sample".into()));
    }
    Ok(())
}

/// Sorted final distances of `samples` independent walks.
///
/// Block b draws from stream b of a generator seeded with `seed`, so the
/// output does not depend on the thread count.
#[derive(Debug, Clone)]
pub struct WalkSample {
    pub n_steps: u32,
    pub dim: usize,
    pub seed: u64,
    distances: Vec<f64>,
}

impl WalkSample {
    pub fn draw(n: u32, dim: usize, samples: usize, seed: u64) -> Result<Self> {
        check(n, dim, samples)?;
        let blocks = samples.div_ceil(BLOCK);
        let parts: Vec<Vec<f64>> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(b as u64);
                let len = BLOCK.min(samples - b * BLOCK);
                (0..len).map(|_| sample_walk(n, dim, &mut rng)).collect()
            })
            .collect();
        let mut distances: Vec<f64> = parts.into_iter().flatten().collect();
        distances.sort_by(f64::total_cmp);
        Ok(Self { n_steps: n, dim, seed, distances })
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    /// Mean of distance^s and its standard error.
    pub fn moment(&self, s: f64) -> (f64, f64) {
        let n = self.len() as f64;
        let (sum, sq) = self.distances.iter().fold((0.0, 0.0), |(a, b), &r| {
            let v = r.powf(s);
            (a + v, b + v * v)
        });
        let mean = sum / n;
        let var = ((sq - n * mean * mean) / (n - 1.0).max(1.0)).max(0.0);
        (mean, (var / n).sqrt())
    }

    /// Fraction of distances ≤ x and its binomial standard error.
    pub fn ecdf(&self, x: f64) -> (f64, f64) {
        let k = self.distances.partition_point(|&r| r <= x);
        let n = self.len() as f64;
        let p = k as f64 / n;
        (p, (p * (1.0 - p) / n).sqrt())
    }

    /// Two-sided Kolmogorov–Smirnov statistic against `cdf`.
    pub fn ks_statistic(&self, cdf: &(dyn Fn(f64) -> f64 + Sync)) -> f64 {
        let n = self.len() as f64;
        self.distances
            .par_iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).max((i + 1) as f64 / n - f)
            })
            .reduce(|| 0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimate {
    pub s: f64,
    pub mean: f64,
    pub std_err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkStats {
    pub n_steps: u32,
    pub dim: usize,
    pub samples: usize,
    pub moment_estimates: Vec<MomentEstimate>,
    pub ks_statistic: Option<f64>,
    pub seed: u64,
    pub rng: &'static str,
}

impl WalkStats {
    pub fn estimate(&self, s: f64) -> Option<&MomentEstimate> {
        self.moment_estimates.iter().find(|m| m.s == s)
    }

    pub fn to_json(&self) -> Value {
        let moments: serde_json::Map<String, Value> = self
            .moment_estimates
            .iter()
            .map(|m| (m.s.to_string(), json!({"mean": m.mean, "std_err": m.std_err})))
            .collect();
        json!({
            "n_steps": self.n_steps,
            "dim": self.dim,
            "samples": self.samples,
            "seed": self.seed,
            "rng": self.rng,
            "moment_estimates": moments,
            "ks_statistic": self.ks_statistic,
        })
    }
}

pub fn stats_from(sample: &WalkSample, s_list: &[f64], ks: Option<f64>) -> WalkStats {
    WalkStats {
        n_steps: sample.n_steps,
        dim: sample.dim,
        samples: sample.len(),
        moment_estimates: s_list
            .iter()
            .map(|&s| {
                let (mean, std_err) = sample.moment(s);
                MomentEstimate { s, mean, std_err }
            })
            .collect(),
        ks_statistic: ks,
        seed: sample.seed,
        rng: RNG_NAME,
    }
}

/// Monte Carlo means of distance^s with standard errors.
pub fn estimate_moments(n: u32, dim: usize, s_list: &[f64], samples: usize, seed: u64) -> Result<WalkStats> {
    Ok(stats_from(&WalkSample::draw(n, dim, samples, seed)?, s_list, None))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub critical: f64,
    pub pass: bool,
}

impl KsOutcome {
    pub fn new(statistic: f64, samples: usize) -> Self {
        let critical = KS_C_001 / (samples as f64).sqrt();
        Self { statistic, critical, pass: statistic < critical }
    }
}

/// KS test of simulated distances against `cdf` at α = 0.01.
pub fn ks_test(n: u32, dim: usize, samples: usize, seed: u64, cdf: &(dyn Fn(f64) -> f64 + Sync)) -> Result<KsOutcome> {
    let sample = WalkSample::draw(n, dim, samples, seed)?;
    Ok(KsOutcome::new(sample.ks_statistic(cdf), samples))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdfSource {
    /// Exact piecewise CDF (odd dimensions) or the ₂F₁ form (two steps).
    Closed,
    /// Table of quadrature values with linear interpolation.
    Quad,
}

/// A reference CDF on [0, n].
pub struct ReferenceCdf {
    n: u32,
    kind: RefKind,
}

enum RefKind {
    Piecewise(crate::numcore::PiecewiseFn),
    TwoStep(HalfInt),
    Table(Vec<f64>),
}

/// Default number of intervals in a quadrature CDF table.
pub const CDF_TABLE_INTERVALS: usize = 600;

impl ReferenceCdf {
    pub fn new(n: u32, dim: usize, source: CdfSource) -> Result<Self> {
        check(n, dim, 1)?;
        let nu = HalfInt::from_twice(dim as u32 - 2);
        let kind = match source {
            CdfSource::Closed if dim % 2 == 1 => RefKind::Piecewise(cdf_odd_dim(n, (dim as u32 - 1) / 2)?),
            CdfSource::Closed if n == 2 => RefKind::TwoStep(nu),
            CdfSource::Closed => {
                return Err(WalkError::Unsupported(format!(
                    "no closed CDF for n = {n} in dimension {dim}; use the quadrature table"
                )))
            }
            CdfSource::Quad => RefKind::Table(Self::table(n, nu, CDF_TABLE_INTERVALS)?),
        };
        Ok(Self { n, kind })
    }

    fn table(n: u32, nu: HalfInt, m: usize) -> Result<Vec<f64>> {
        let spec = QuadSpec { tol: 1e-9, ..QuadSpec::default() };
        (0..=m)
            .into_par_iter()
            .map(|i| {
                let x = n as f64 * i as f64 / m as f64;
                if i == 0 {
                    Ok(0.0)
                } else if i == m {
                    Ok(1.0)
                } else {
                    cdf_quad(n, nu, x, &spec).map(|r| r.value)
                }
            })
            .collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.n as f64;
        if x <= 0.0 {
            return 0.0;
        }
        if x >= n {
            return 1.0;
        }
        match &self.kind {
            RefKind::Piecewise(p) => p.eval(x).unwrap_or(f64::NAN),
            RefKind::TwoStep(nu) => cdf_p2_closed(*nu, x).unwrap_or(f64::NAN),
            RefKind::Table(t) => {
                let m = t.len() - 1;
                let u = x / n * m as f64;
                let i = (u.floor() as usize).min(m - 1);
                let w = u - i as f64;
                t[i] * (1.0 - w) + t[i + 1] * w
            }
        }
    }
}
