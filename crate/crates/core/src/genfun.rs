//! Generating functions of even moments checked against truncated moment series.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, WalkError};
use crate::exact_moments::{gf3_principal_part, moment_row};
use crate::numcore::{binomial, rat_to_f64, BigRat, HalfInt};
use crate::specfun::{hyp2f1, hyp2f1_deriv};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfKind {
    /// Two steps, any ν: ₂F₁(1, ν+½; 2ν+1; 4x).
    W2,
    /// Three steps, integer ν, with the principal part removed.
    W3,
    /// Four steps in dimension four.
    W4Dim4,
}

impl GfKind {
    /// n² bounds W_n(ν;2k)^{1/k}, so the series converges for |x| < 1/n².
    fn steps(self) -> u32 {
        match self {
            GfKind::W2 => 2,
            GfKind::W3 => 3,
            GfKind::W4Dim4 => 4,
        }
    }

    pub fn radius(self) -> f64 {
        1.0 / (self.steps() as f64).powi(2)
    }
}

impl FromStr for GfKind {
    type Err = WalkError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w2" => Ok(GfKind::W2),
            "w3" => Ok(GfKind::W3),
            "w4dim4" => Ok(GfKind::W4Dim4),
            _ => Err(WalkError::Parse(format!("unknown generating function '{s}' (w2, w3, w4dim4)"))),
        }
    }
}

impl fmt::Display for GfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GfKind::W2 => "w2",
            GfKind::W3 => "w3",
            GfKind::W4Dim4 => "w4dim4",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GfCheck {
    pub closed: f64,
    pub series: f64,
    pub residual: f64,
    /// Bound on the omitted tail Σ_{k>kmax} W_n(ν;2k) xᵏ.
    pub truncation_bound: f64,
}

/// |closed form − Σ_{k≤kmax} W_n(ν;2k) xᵏ|.
pub fn gf_check(kind: GfKind, nu: HalfInt, x: f64, kmax: u32) -> Result<GfCheck> {
    let r = kind.radius();
    if !(x.abs() < r) || x == 0.0 {
        return Err(WalkError::Domain(format!("{kind} generating function needs 0 < |x| < {r}, got {x}")));
    }
    let nu = if kind == GfKind::W4Dim4 { HalfInt::int(1) } else { nu };
    let closed = match kind {
        GfKind::W2 => gf2(nu, x)?,
        GfKind::W3 => gf3(nu, x)?,
        GfKind::W4Dim4 => gf4_dim4(x)? + 1.0 / (2.0 * x * x) - 1.0 / x,
    };
    let n = kind.steps();
    let series = moment_row(n, nu, kmax)?.iter().rev().fold(0.0, |acc, w| acc * x + rat_to_f64(w));
    let q = (n * n) as f64 * x.abs();
    Ok(GfCheck { closed, series, residual: (closed - series).abs(), truncation_bound: q.powi(kmax as i32 + 1) / (1.0 - q) })
}

/// ₂F₁(1, ν+½; 2ν+1; 4x).
pub fn gf2(nu: HalfInt, x: f64) -> Result<f64> {
    let v = nu.to_f64();
    hyp2f1(1.0, v + 0.5, 2.0 * v + 1.0, 4.0 * x)
}

/// The three-step hypergeometric term minus its principal part q_ν(1/x).
pub fn gf3(nu: HalfInt, x: f64) -> Result<f64> {
    let m = nu
        .as_integer()
        .ok_or_else(|| WalkError::Domain(format!("three-step generating function needs integer nu, got {nu}")))?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let c = rat_to_f64(&BigRat::from_integer(binomial(2 * m as u64, m as u64)));
    let z = 27.0 * x * (1.0 - x).powi(2) / (1.0 + 3.0 * x).powi(3);
    let hyp = sign / c * (1.0 - 1.0 / x).powi(2 * m as i32) / (1.0 + 3.0 * x) * hyp2f1(1.0 / 3.0, 2.0 / 3.0, 1.0 + m as f64, z)?;
    let q = gf3_principal_part(m, 0)?.q;
    Ok(hyp - q.eval(1.0 / x))
}

/// F_λ = (d/dx)^λ ₂F₁(1/6, 1/3; 1; 108x/(16x−1)³) / (2·3^λ x (16x−1)^{1−λ}), λ ∈ {0, 1}.
fn f_lambda(lambda: u32, x: f64) -> Result<f64> {
    let u = 16.0 * x - 1.0;
    let z = 108.0 * x / u.powi(3);
    let inner = match lambda {
        0 => hyp2f1(1.0 / 6.0, 1.0 / 3.0, 1.0, z)?,
        _ => hyp2f1_deriv(1.0 / 6.0, 1.0 / 3.0, 1.0, z, 1)? * 108.0 * (-32.0 * x - 1.0) / u.powi(4),
    };
    Ok(inner / (2.0 * 3f64.powi(lambda as i32) * x * u.powi(1 - lambda as i32)))
}

/// Right-hand side of the dimension-four identity; equals −1/(2x²) + 1/x + Σ W₄(1;2k)xᵏ.
pub fn gf4_dim4(x: f64) -> Result<f64> {
    let f0 = f_lambda(0, x)?;
    let f1 = f_lambda(1, x)?;
    Ok((32.0 * x - 7.0) * f0 * f0 - (4.0 * x - 1.0) * ((32.0 * x + 3.0) * f0 * f1 - (16.0 * x * x + 10.0 * x + 0.25) * f1 * f1))
}
