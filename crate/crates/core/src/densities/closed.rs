use std::f64::consts::PI;

use num_bigint::BigInt;

use crate::error::{Result, WalkError};
use crate::numcore::{binomial, int, rat, rat_to_f64, BigRat, Basis, ConstCombo, HalfInt};
use crate::specfun::{gamma_fn, hyp2f1, lgamma};

/// Radius around x = 1 where the planar three-step closed form is refused.
pub const P3_LOG_EXCLUSION: f64 = 1e-3;

fn central_binom(nu: f64) -> f64 {
    (lgamma(2.0 * nu + 1.0) - 2.0 * lgamma(nu + 1.0)).exp()
}

/// p₂(ν;x) = 2/(π C(2ν,ν)) x^{2ν} (4−x²)^{ν−1/2}.
pub fn p2(nu: HalfInt, x: f64) -> Result<f64> {
    let v = nu.to_f64();
    if x <= 0.0 || x >= 2.0 {
        if x == 2.0 && v < 0.5 {
            return Err(WalkError::Domain("p_2 is unbounded at the endpoint x = 2".into()));
        }
        return Ok(0.0);
    }
    Ok(2.0 / (PI * central_binom(v)) * x.powf(2.0 * v) * (4.0 - x * x).powf(v - 0.5))
}

/// P₂(ν;x) via the ₂F₁ form.
pub fn cdf_p2_closed(nu: HalfInt, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x >= 2.0 {
        return Ok(1.0);
    }
    let v = nu.to_f64();
    let pre = x.powf(2.0 * v + 1.0) / (2.0 * PI.sqrt()) * gamma_fn(v + 1.0) / gamma_fn(v + 1.5);
    Ok(pre * hyp2f1(0.5 + v, 0.5 - v, 1.5 + v, x * x / 4.0)?)
}

/// P₂(ν;1) = 1/3 − (√3/4π) Σ_{k<ν} 3ᵏ/((2k+1)C(2k,k)) over {1, √3/π, Cl(π/3)/π}.
pub fn p2_cdf_at1(nu: u32) -> ConstCombo {
    let mut s = int(0);
    for k in 0..nu as u64 {
        let num = BigInt::from(3).pow(k as u32);
        s += BigRat::new(num, BigInt::from(2 * k + 1) * binomial(2 * k, k));
    }
    ConstCombo::new(Basis::Clausen, vec![rat(1, 3), -s / int(4), int(0)]).expect("arity 3")
}

/// P₃(ν;1) = a − b/π²; returns (a, b).
pub fn p3_cdf_at1(nu: u32) -> (BigRat, BigRat) {
    let fact = |m: u64| -> BigInt { (1..=m).fold(BigInt::from(1), |acc, j| acc * j) };
    let mut s = int(0);
    for k in 1..=nu as u64 {
        let top = BigInt::from(2).pow(6 * (k as u32 - 1)) * BigInt::from(11 * k - 3) * fact(k - 1).pow(5);
        s += BigRat::new(top, fact(2 * k - 1) * fact(3 * k - 1));
    }
    (rat(1, 4), s / int(3))
}

pub fn p3_cdf_at1_value(nu: u32) -> f64 {
    let (a, b) = p3_cdf_at1(nu);
    rat_to_f64(&a) - rat_to_f64(&b) / (PI * PI)
}

/// p₃(ν;x) from the ₂F₁(1/3, 2/3; 1+ν; z) closed form.
pub fn p3_hyp(nu: HalfInt, x: f64) -> Result<f64> {
    if x <= 0.0 || x >= 3.0 {
        return Ok(0.0);
    }
    let v = nu.to_f64();
    if v == 0.0 && (x - 1.0).abs() < P3_LOG_EXCLUSION {
        return Err(WalkError::Domain(format!(
            "p_3(0;x) has a logarithmic singularity at x = 1; x = {x} is too close, use quadrature"
        )));
    }
    let x2 = x * x;
    let z = (x2 * (9.0 - x2).powi(2) / (3.0 + x2).powi(3)).min(1.0);
    let pre = 2.0 * 3f64.sqrt() / PI * 3f64.powf(-3.0 * v) / central_binom(v);
    let f = hyp2f1(1.0 / 3.0, 2.0 / 3.0, 1.0 + v, z)?;
    Ok(x * pre * (x2 * (9.0 - x2) * (9.0 - x2)).powf(v) / (3.0 + x2) * f)
}

/// p₃(ν;1) = (3/4π²)(2^{6ν}/ν)(ν!)⁵/((2ν)!(3ν)!) for ν > 0.
pub fn p3_at1(nu: HalfInt) -> Result<f64> {
    let v = nu.to_f64();
    if v == 0.0 {
        return Err(WalkError::Divergent("p_3(0;x) is unbounded at x = 1".into()));
    }
    let l = 6.0 * v * 2f64.ln() + 5.0 * lgamma(v + 1.0) - lgamma(2.0 * v + 1.0) - lgamma(3.0 * v + 1.0);
    Ok(3.0 / (4.0 * PI * PI) / v * l.exp())
}

/// F(x) − ((1+x)/2)^{6ν−2} F((3−x)/(1+x)) with F = p₃/x.
pub fn p3_functional_equation_residual(nu: HalfInt, x: f64) -> Result<f64> {
    if x <= 0.0 || x >= 3.0 {
        return Err(WalkError::Domain(format!("x = {x} outside (0, 3)")));
    }
    let y = (3.0 - x) / (1.0 + x);
    if x == y {
        return Ok(0.0);
    }
    let f = |t: f64| p3_hyp(nu, t).map(|p| p / t);
    Ok(f(x)? - ((1.0 + x) / 2.0).powf(6.0 * nu.to_f64() - 2.0) * f(y)?)
}

/// Residual of the three-term dimensional recursion linking p₃(ν+1), p₃(ν), p₃(ν−1).
pub fn p3_dim_recursion_check(nu: HalfInt, x: f64) -> Result<f64> {
    let v = nu.to_f64();
    if v < 1.0 {
        return Err(WalkError::Domain(format!("the dimensional recursion needs nu >= 1, got {nu}")));
    }
    let x2 = x * x;
    let c1 = v * (v + 1.0).powi(2) / (6.0 * (2.0 * v + 1.0) * (3.0 * v + 1.0) * (3.0 * v + 2.0));
    let c0 = v * v * (v + 1.0).powi(2) / (12.0 * (2.0 * v - 1.0) * (2.0 * v + 1.0) * (3.0 * v + 1.0) * (3.0 * v + 2.0));
    let up = HalfInt::from_twice(nu.twice() + 2);
    let down = HalfInt::from_twice(nu.twice() - 2);
    let rhs = c1 * (x2 - 3.0) * (x2 - 6.0 * x - 3.0) * (x2 + 6.0 * x - 3.0) * p3_hyp(nu, x)?
        + c0 * x2 * (x2 - 1.0).powi(2) * (x2 - 9.0).powi(2) * p3_hyp(down, x)?;
    Ok(p3_hyp(up, x)? - rhs)
}

/// Scaled chi density approximating p_n(ν;x) in high dimension.
pub fn q_chi_asymptotic(n: u32, nu: HalfInt, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let v = nu.to_f64();
    let a = (2.0 * v + 1.0) / n as f64;
    let l = -v * 2f64.ln() - lgamma(v + 1.0) + (v + 1.0) * a.ln();
    l.exp() * x.powf(2.0 * v + 1.0) * (-a * x * x / 2.0).exp()
}

/// ∫₀^∞ x^s q_n(ν;x) dx for s > −2ν−2.
pub fn q_chi_moment(n: u32, nu: HalfInt, s: f64) -> f64 {
    let v = nu.to_f64();
    (2.0 * n as f64 / (2.0 * v + 1.0)).powf(s / 2.0) * (lgamma(v + s / 2.0 + 1.0) - lgamma(v + 1.0)).exp()
}
