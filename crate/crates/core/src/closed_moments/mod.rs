//! Closed-form moment functions.

mod ladder;
mod odd_dim;

pub use ladder::{central_derivative, w3_derivative_at0, w3_odd, w3_odd_ordered, w4_odd, DerivativeAt0, LadderOrder, OddMomentLadder};
pub use odd_dim::{odd_dim_moment, ExactMoment, OddDimMoment, OddDimMomentForm};

use crate::error::{Result, WalkError};
use crate::numcore::{BigRat, HalfInt};
use crate::specfun::{gamma_fn, lgamma};

fn nonpositive_int(z: f64) -> Option<u64> {
    if z <= 0.0 && z.fract() == 0.0 {
        Some((-z) as u64)
    } else {
        None
    }
}

/// W₂(ν;s) = ν! Γ(s+2ν+1) / (Γ(s/2+ν+1) Γ(s/2+2ν+1)).
///
/// Removable singularities are resolved by counting Gamma poles; a genuine pole is an error
/// whose message names the sign of the divergence.
pub fn w2_closed(nu: HalfInt, s: f64) -> Result<f64> {
    let v = nu.to_f64();
    // (argument, speed of the argument in s)
    let num = [(s + 2.0 * v + 1.0, 1.0)];
    let den = [(s / 2.0 + v + 1.0, 0.5), (s / 2.0 + 2.0 * v + 1.0, 0.5)];
    let mut order = 0i32;
    let mut value = gamma_fn(v + 1.0);
    let mut apply = |z: f64, speed: f64, upper: bool| {
        match nonpositive_int(z) {
            Some(m) => {
                // Γ(−m + speed·ε) ≈ (−1)^m / (m! speed ε)
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let res = sign * (-lgamma(m as f64 + 1.0)).exp() / speed;
                if upper {
                    order += 1;
                    value *= res;
                } else {
                    order -= 1;
                    value /= res;
                }
            }
            None => {
                let g = gamma_fn(z);
                if upper {
                    value *= g;
                } else {
                    value /= g;
                }
            }
        }
    };
    for &(z, sp) in &num {
        apply(z, sp, true);
    }
    for &(z, sp) in &den {
        apply(z, sp, false);
    }
    match order {
        0 => Ok(value),
        o if o < 0 => Ok(0.0),
        _ => Err(WalkError::Pole(format!(
            "W_2({nu};s) has a pole at s = {s} (residue sign {})",
            if value > 0.0 { "+" } else { "-" }
        ))),
    }
}

/// W₂(ν;2k) = ν!(2k+2ν)! / ((k+ν)!(k+2ν)!) as an exact rational.
pub fn w2_even_exact(nu: HalfInt, k: u32) -> BigRat {
    // ratio of rising factorials: (2ν+1)_{2k} / ((ν+1)_k (2ν+1)_k)
    let v = nu.to_rat();
    let one = BigRat::from_integer(1.into());
    let top = crate::numcore::rising(&(&v * BigRat::from_integer(2.into()) + &one), 2 * k);
    let a = crate::numcore::rising(&(&v + &one), k);
    let b = crate::numcore::rising(&(&v * BigRat::from_integer(2.into()) + &one), k);
    top / (a * b)
}
