use std::f64::consts::PI;

use super::odd::density_odd_dim;
use crate::closed_moments::w3_odd;
use crate::error::{Result, WalkError};
use crate::numcore::{rat, ConstCombo, HalfInt, PiecewiseFn};
use crate::quadrature::{density_quad, QuadSpec};
use crate::specfun::{pfq, HypSeriesSpec};

/// Points closer than this to x = 2 are refused by the recursion check.
pub const P4_KINK_EXCLUSION: f64 = 1e-2;
/// Step for finite-difference derivatives.
pub const FD_STEP: f64 = 1e-3;
/// Below this x the four-dimensional closed form loses too much to cancellation.
const P41_MIN_X: f64 = 2.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P4Method {
    Auto,
    Closed,
    Quadrature,
}

fn g(lambda: f64, z: f64) -> Result<f64> {
    let a = 0.5 + lambda;
    Ok(pfq(&HypSeriesSpec::new(&[a, a, a], &[5.0 / 6.0 + lambda, 7.0 / 6.0 + lambda], z))?.value)
}

fn z_of(x: f64) -> f64 {
    ((16.0 - x * x).powi(3) / (108.0 * x.powi(4))).min(1.0)
}

/// p₄(0;x) on [2, 4) from the ₃F₂ form.
pub fn p4_planar_closed(x: f64) -> Result<f64> {
    if !(2.0..4.0).contains(&x) {
        return Err(WalkError::Domain(format!("planar closed form needs 2 <= x < 4, got {x}")));
    }
    Ok(2.0 / (PI * PI) * (16.0 - x * x).sqrt() / x * g(0.0, z_of(x))?)
}

/// p₄(1;x) on (2, 4) from the combination of three ₃F₂ values.
pub fn p4_four_dim_closed(x: f64) -> Result<f64> {
    if !(x > 2.0 && x < 4.0) {
        return Err(WalkError::Domain(format!("four-dimensional closed form needs 2 < x < 4, got {x}")));
    }
    let z = z_of(x);
    let y = x * x;
    let w = 16.0 - y;
    let r = y.powi(5) + 55.0 * y.powi(4) + 1456.0 * y.powi(3) + 25664.0 * y * y - 90112.0 * y - 262144.0;
    let s = (y - 4.0) * (y + 32.0).powi(2) * (y * y + 40.0 * y + 64.0);
    let bracket = -(y + 8.0).powi(2) * g(0.0, z)?
        + r / (105.0 * y * y) * g(1.0, z)?
        + w.powi(3) * s / (135135.0 * (2.0f64 / 3.0).powi(4) * y.powi(4)) * g(2.0, z)?;
    Ok(w.powf(2.5) / ((24.0 * PI).powi(2) * x) * bracket)
}

fn closed_available(nu: HalfInt, x: f64) -> bool {
    match nu.as_integer() {
        Some(0) => (2.0..4.0).contains(&x),
        Some(1) => (P41_MIN_X..4.0).contains(&x),
        Some(_) => false,
        None => true,
    }
}

/// p₄(ν;x) by the requested method; Auto picks a closed form where one is valid.
pub fn p4(nu: HalfInt, x: f64, method: P4Method) -> Result<f64> {
    if x <= 0.0 || x >= 4.0 {
        return Ok(0.0);
    }
    let closed = |x: f64| -> Result<f64> {
        match nu.as_integer() {
            Some(0) => p4_planar_closed(x),
            Some(1) => p4_four_dim_closed(x),
            Some(_) => Err(WalkError::Domain(format!("no closed form for p_4({nu};x)"))),
            None => density_odd_dim(4, nu.twice().div_ceil(2))?.eval(x),
        }
    };
    match method {
        P4Method::Closed => {
            if nu.is_integer() && !(2.0..4.0).contains(&x) {
                return Err(WalkError::Domain(format!("closed form for p_4({nu};x) needs 2 < x < 4, got {x}")));
            }
            closed(x)
        }
        P4Method::Auto if closed_available(nu, x) => match closed(x) {
            Err(WalkError::NonConvergence { .. }) => Ok(density_quad(4, nu, x, &QuadSpec::default())?.value),
            r => r,
        },
        _ => Ok(density_quad(4, nu, x, &QuadSpec::default())?.value),
    }
}

/// Central second-order differences with one Richardson step: (f, f′, f″).
pub fn fd_derivatives(f: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<(f64, f64, f64)> {
    let f0 = f(x)?;
    let d = |h: f64| -> Result<(f64, f64)> {
        let p = f(x + h)?;
        let m = f(x - h)?;
        Ok(((p - m) / (2.0 * h), (p - 2.0 * f0 + m) / (h * h)))
    };
    let (a1, a2) = d(h)?;
    let (b1, b2) = d(h / 2.0)?;
    Ok((f0, (4.0 * b1 - a1) / 3.0, (4.0 * b2 - a2) / 3.0))
}

fn exact_derivatives(p: &PiecewiseFn, x: f64) -> Result<(f64, f64, f64)> {
    let d1 = p.derivative();
    let d2 = d1.derivative();
    Ok((p.eval(x)?, d1.eval(x)?, d2.eval(x)?))
}

/// Residual of the recursion expressing p₄(ν+1;x) through p₄(ν;x) and its first two derivatives.
///
/// Derivatives are exact for half-odd ν and finite differences otherwise.
pub fn p4_dim_recursion_check(nu: HalfInt, x: f64, method: P4Method) -> Result<f64> {
    if (x - 2.0).abs() < P4_KINK_EXCLUSION {
        return Err(WalkError::Domain(format!("x = {x} is too close to the kink at x = 2")));
    }
    if x <= 0.0 || x >= 4.0 {
        return Err(WalkError::Domain(format!("x = {x} outside (0, 4)")));
    }
    let v = nu.to_f64();
    let (p, dp, ddp) = if nu.is_integer() {
        fd_derivatives(|t| p4(nu, t, method), x, FD_STEP)?
    } else {
        exact_derivatives(&density_odd_dim(4, nu.twice().div_ceil(2))?, x)?
    };
    let y = x * x / 8.0;
    let a = (4.0 * v - 1.0) * (6.0 * v - 1.0) * y.powi(4) + 2.0 * (100.0 * v * v - 23.0 * v - 1.0) * y.powi(3)
        + 2.0 * (2.0 * v + 3.0) * (12.0 * v + 1.0) * y * y
        - 2.0 * (60.0 * v * v + 13.0 * v + 1.0) * y
        + (2.0 * v + 1.0) * (4.0 * v + 1.0);
    let b = (10.0 * v - 3.0) * y.powi(4) + 5.0 * (12.0 * v - 1.0) * y.powi(3) - 10.5 * (8.0 * v - 1.0) * y * y - 20.0 * v * y
        + 6.0 * v
        + 1.0;
    let c = 4.0 * y * (y - 2.0) * (2.0 * y - 1.0) * (y * y + 5.0 * y + 1.0);
    let lead = 3.0 * (2.0 * v + 1.0) * (3.0 * v + 1.0) * (3.0 * v + 2.0) * (4.0 * v + 1.0) * (4.0 * v + 3.0) / (64.0 * (v + 1.0).powi(3));
    let up = p4(HalfInt::from_twice(nu.twice() + 2), x, method)?;
    Ok(lead * up - (-a * p + x * b * dp - c * ddp))
}

/// (π/√3) p₄(ν;2) over {A, 1/(π²A)} for ν ≤ 2.
pub fn p4_at2_combo(nu: u32) -> Result<ConstCombo> {
    let wm = w3_odd(0, -1)?;
    let wp = w3_odd(0, 1)?;
    let (a, b) = match nu {
        0 => (rat(1, 1), rat(0, 1)),
        1 => (rat(-14, 3), rat(10, 3)),
        2 => (rat(6656, 315), rat(-704, 63)),
        _ => return Err(WalkError::Unsupported(format!("p_4({nu};2) combination is stored for nu <= 2 only"))),
    };
    Ok(wm.lin(&a, &wp, &b))
}

/// p₄(ν;2) by quadrature minus the stored combination.
pub fn p4_at2_combo_check(nu: u32) -> Result<f64> {
    let q = density_quad(4, HalfInt::int(nu), 2.0, &QuadSpec::default())?.value;
    Ok(q - 3f64.sqrt() / PI * p4_at2_combo(nu)?.value())
}
