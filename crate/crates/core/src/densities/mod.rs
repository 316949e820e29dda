//! Densities and distribution functions of the walk distance.

mod closed;
mod five;
mod four;
mod odd;

pub use closed::{
    cdf_p2_closed, p2, p2_cdf_at1, p3_at1, p3_cdf_at1, p3_cdf_at1_value, p3_dim_recursion_check, p3_functional_equation_residual,
    p3_hyp, q_chi_asymptotic, q_chi_moment, P3_LOG_EXCLUSION,
};
pub use five::{p5_eval, p5_taylor, TaylorDensity};
pub use four::{
    fd_derivatives, p4, p4_at2_combo, p4_at2_combo_check, p4_dim_recursion_check, p4_four_dim_closed, p4_planar_closed, P4Method,
    FD_STEP, P4_KINK_EXCLUSION,
};
pub use odd::{cdf_odd_dim, density_odd_dim, odd_dim_integer_moment};

use std::fmt;

use crate::error::{Result, WalkError};
use crate::numcore::{HalfInt, PiecewiseFn};
use crate::quadrature::{cdf_quad, density_quad, QuadSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    PiecewiseExact,
    Hypergeometric,
    TaylorAt0,
    AsymptoticChi,
    Quadrature,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::PiecewiseExact => "piecewise-exact",
            Representation::Hypergeometric => "hypergeometric",
            Representation::TaylorAt0 => "taylor-at-0",
            Representation::AsymptoticChi => "asymptotic-chi",
            Representation::Quadrature => "quadrature",
        })
    }
}

/// Which evaluation path a point of p_n(ν;·) goes through.
#[derive(Debug, Clone)]
pub struct DensityClosedForm {
    pub n_steps: u32,
    pub nu: HalfInt,
    pub representation: Representation,
    pub domain: (f64, f64),
    piecewise: Option<PiecewiseFn>,
}

#[derive(Debug, Clone, Copy)]
pub struct DensityValue {
    pub value: f64,
    pub method: Representation,
    pub err: f64,
}

impl DensityClosedForm {
    /// The preferred representation of p_n(ν;·) at x, falling back to quadrature.
    pub fn select(n: u32, nu: HalfInt, x: f64) -> Result<Self> {
        if n < 2 {
            return Err(WalkError::Domain(format!("need at least 2 steps, got {n}")));
        }
        let full = (0.0, n as f64);
        let make = |representation, domain| Self { n_steps: n, nu, representation, domain, piecewise: None };
        if !nu.is_integer() {
            let mut f = make(Representation::PiecewiseExact, full);
            f.piecewise = Some(density_odd_dim(n, nu.twice().div_ceil(2))?);
            return Ok(f);
        }
        Ok(match n {
            2 => make(Representation::Hypergeometric, full),
            3 if nu.twice() > 0 || (x - 1.0).abs() >= P3_LOG_EXCLUSION => make(Representation::Hypergeometric, full),
            4 if nu.twice() == 0 && (2.0..4.0).contains(&x) => make(Representation::Hypergeometric, (2.0, 4.0)),
            4 if nu.twice() == 2 && (2.1..4.0).contains(&x) => make(Representation::Hypergeometric, (2.1, 4.0)),
            5 if nu.twice() == 0 && (0.0..0.9).contains(&x) => make(Representation::TaylorAt0, (0.0, 0.9)),
            _ => make(Representation::Quadrature, full),
        })
    }

    pub fn eval(&self, x: f64, spec: &QuadSpec) -> Result<DensityValue> {
        let n = self.n_steps;
        let ok = |value: f64| DensityValue { value, method: self.representation, err: 0.0 };
        if x <= 0.0 || x >= n as f64 {
            return Ok(ok(0.0));
        }
        match self.representation {
            Representation::PiecewiseExact => Ok(ok(self.piecewise.as_ref().expect("set by select").eval(x)?)),
            Representation::Hypergeometric => {
                let v = match n {
                    2 => p2(self.nu, x),
                    3 => p3_hyp(self.nu, x),
                    _ => p4(self.nu, x, P4Method::Closed),
                };
                match v {
                    Err(WalkError::NonConvergence { .. }) => {
                        let r = density_quad(n, self.nu, x, spec)?;
                        Ok(DensityValue { value: r.value, method: Representation::Quadrature, err: r.err })
                    }
                    v => Ok(ok(v?)),
                }
            }
            Representation::TaylorAt0 => Ok(ok(p5_eval(x)?)),
            Representation::AsymptoticChi => Ok(ok(q_chi_asymptotic(n, self.nu, x))),
            Representation::Quadrature => {
                let r = density_quad(n, self.nu, x, spec)?;
                Ok(DensityValue { value: r.value, method: Representation::Quadrature, err: r.err })
            }
        }
    }
}

/// p_n(ν;x) through the best available path.
pub fn density(n: u32, nu: HalfInt, x: f64, spec: &QuadSpec) -> Result<DensityValue> {
    DensityClosedForm::select(n, nu, x)?.eval(x, spec)
}

/// P_n(ν;x) through the best available path.
pub fn cdf(n: u32, nu: HalfInt, x: f64, spec: &QuadSpec) -> Result<DensityValue> {
    let exact = |value| DensityValue { value, method: Representation::PiecewiseExact, err: 0.0 };
    if x <= 0.0 {
        return Ok(exact(0.0));
    }
    if x >= n as f64 {
        return Ok(exact(1.0));
    }
    if !nu.is_integer() {
        return Ok(exact(cdf_odd_dim(n, nu.twice().div_ceil(2))?.eval(x)?));
    }
    if n == 2 {
        return Ok(DensityValue { value: cdf_p2_closed(nu, x)?, method: Representation::Hypergeometric, err: 0.0 });
    }
    let r = cdf_quad(n, nu, x, spec)?;
    Ok(DensityValue { value: r.value, method: Representation::Quadrature, err: r.err })
}
