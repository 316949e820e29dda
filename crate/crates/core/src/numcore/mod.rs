//! Exact arithmetic: half-integers, rationals, Laurent polynomials,
//! piecewise functions and linear combinations over constant bases.

mod combo;
mod halfint;
mod laurent;
mod piecewise;
mod rat;

pub use combo::{Basis, ConstCombo};
pub use halfint::HalfInt;
pub use laurent::LaurentPoly;
pub use piecewise::{convolve, Parity, PiecewiseFn};
pub use rat::{binomial, fmt_rat, int, parse_rat, rat, rat_to_f64, rising, BigRat};

/// Working real type. Values are IEEE doubles (about 15-16 significant digits).
pub type Real = f64;

/// Default number of decimal digits used when printing reals.
pub const DEFAULT_DIGITS: usize = 15;

/// Digits requested through `WALKER_PRECISION`, capped at what [`Real`] carries.
pub fn precision_digits() -> usize {
    std::env::var("WALKER_PRECISION")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|d| d.clamp(1, 17))
        .unwrap_or(DEFAULT_DIGITS)
}

pub fn fmt_real(x: Real, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
}
