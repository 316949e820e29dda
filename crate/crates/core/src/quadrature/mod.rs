//! Oscillatory Bessel-integral oracle for densities, distribution functions, moments and residues.

pub mod bessel;
mod integrand;
mod oscillatory;
pub mod rules;

pub use bessel::{bessel_j, jnu};
pub use integrand::BoostedIntegrand;

use crate::error::{Result, WalkError};
use crate::numcore::HalfInt;
use crate::specfun::{gamma_fn, rgamma};
use oscillatory::BesselIntegral;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailRule {
    /// Rotate the positive-frequency part of the tail into the upper half plane.
    Contour,
    /// Sum zone integrals and accelerate by iterated averaging.
    EulerZones,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadSpec {
    /// Derivative boost; `None` picks a default per problem.
    pub boost_k: Option<u32>,
    pub tol: f64,
    pub max_zones: usize,
    pub tail: TailRule,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self { boost_k: None, tol: 1e-10, max_zones: 10_000, tail: TailRule::Contour }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err: f64,
    pub boost_k: u32,
}

impl QuadResult {
    fn scaled(self, c: f64) -> Self {
        Self { value: self.value * c, err: self.err * c.abs(), boost_k: self.boost_k }
    }
}

/// max(0, 3 − ⌊(n−1)(2ν+1)/2⌋) + 1.
pub fn default_boost(n: u32, nu: HalfInt) -> u32 {
    let lead = ((n as i64 - 1) * (nu.twice() as i64 + 1)) / 2;
    (3 - lead).max(0) as u32 + 1
}

fn check_steps(n: u32) -> Result<()> {
    if n == 0 {
        return Err(WalkError::Domain("number of steps must be at least 1".into()));
    }
    Ok(())
}

/// p_n(ν;x) from the boosted Bessel integral.
pub fn density_quad(n: u32, nu: HalfInt, x: f64, spec: &QuadSpec) -> Result<QuadResult> {
    check_steps(n)?;
    if !(x > 0.0 && x < n as f64) {
        return Err(WalkError::Domain(format!("density integral needs 0 < x < {n}, got {x}")));
    }
    let k = spec.boost_k.unwrap_or_else(|| default_boost(n, nu));
    let v = nu.to_f64();
    let g = BoostedIntegrand::new(n, nu, k);
    let mu = v + k as f64;
    let integral = BesselIntegral { g: &g, p: mu + 1.0, kernel: Some((mu, x)) };
    let c = x.powf(mu + 1.0 - 2.0 * k as f64) * 2f64.powf(-v) * rgamma(v + 1.0);
    Ok(integral.evaluate(spec)?.scaled(c))
}

/// P_n(ν;x) from the Bessel integral of the distribution function.
pub fn cdf_quad(n: u32, nu: HalfInt, x: f64, spec: &QuadSpec) -> Result<QuadResult> {
    check_steps(n)?;
    if x <= 0.0 {
        return Ok(QuadResult { value: 0.0, err: 0.0, boost_k: 0 });
    }
    if x > n as f64 {
        return Ok(QuadResult { value: 1.0, err: 0.0, boost_k: 0 });
    }
    let v = nu.to_f64();
    let g = BoostedIntegrand::new(n, nu, 0);
    let integral = BesselIntegral { g: &g, p: v, kernel: Some((v + 1.0, x)) };
    let c = x.powf(v + 1.0) * 2f64.powf(-v) * rgamma(v + 1.0);
    Ok(integral.evaluate(spec)?.scaled(c))
}

/// Boost orders admissible for the moment integral at s: k − n(ν+½) < s < 2k.
pub fn moment_boost_range(n: u32, nu: HalfInt, s: f64) -> Option<(u32, u32)> {
    let lo = ((s / 2.0).floor() + 1.0).max(0.0) as u32;
    let upper = s + n as f64 * (nu.to_f64() + 0.5);
    if (lo as f64) < upper {
        let hi = (upper.ceil() - 1.0).max(lo as f64) as u32;
        Some((lo, hi))
    } else {
        None
    }
}

/// W_n(ν;s) from the boosted Bessel integral of the moments.
pub fn moment_quad(n: u32, nu: HalfInt, s: f64, spec: &QuadSpec) -> Result<QuadResult> {
    check_steps(n)?;
    let v = nu.to_f64();
    let (lo, hi) = moment_boost_range(n, nu, s).ok_or_else(|| {
        WalkError::Domain(format!("no Bessel-integral strip contains s = {s} for n = {n}, nu = {nu}"))
    })?;
    let k = match spec.boost_k {
        Some(k) if k >= lo && k <= hi => k,
        Some(k) => {
            return Err(WalkError::Domain(format!("boost {k} outside admissible range {lo}..={hi} at s = {s}")))
        }
        None => (lo + 1).min(hi),
    };
    let a = s / 2.0 + v + 1.0;
    if a <= 0.0 && a.fract() == 0.0 {
        return Err(WalkError::Pole(format!("W_{n}({nu};s) has a pole at s = {s}")));
    }
    let g = BoostedIntegrand::new(n, nu, k);
    let integral = BesselIntegral { g: &g, p: 2.0 * k as f64 - s - 1.0, kernel: None };
    let c = 2f64.powf(s - k as f64 + 1.0) * gamma_fn(a) * rgamma(v + 1.0) * rgamma(k as f64 - s / 2.0);
    Ok(integral.evaluate(spec)?.scaled(c))
}

/// Residue of W_n(ν;s) at s = −d − 2m.
///
/// Outside the window of absolute convergence the integral is taken in the Abel sense;
/// a divergent non-oscillatory part is reported as an error.
pub fn residue_quad(n: u32, nu: HalfInt, m: u32, spec: &QuadSpec) -> Result<QuadResult> {
    check_steps(n)?;
    let v = nu.to_f64();
    let g = BoostedIntegrand::new(n, nu, 0);
    let p = 2.0 * v + 2.0 * m as f64 + 1.0;
    let integral = BesselIntegral { g: &g, p, kernel: None };
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let c = sign * 2f64.powf(-p + 1.0) * rgamma(v + 1.0) * rgamma(v + m as f64 + 1.0) * rgamma(m as f64 + 1.0);
    Ok(integral.evaluate(spec)?.scaled(c))
}
