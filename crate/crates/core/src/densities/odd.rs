use num_traits::{One, Zero};

use crate::error::{Result, WalkError};
use crate::numcore::{convolve, int, BigRat, LaurentPoly, Parity, PiecewiseFn};

/// Exact density p_n(m−½;x) on [0, n] in dimension d = 2m+1.
pub fn density_odd_dim(n: u32, m: u32) -> Result<PiecewiseFn> {
    if n < 2 || m < 1 {
        return Err(WalkError::Domain(format!("odd-dimension density needs n >= 2 and m >= 1, got n={n}, m={m}")));
    }
    let kernel = PiecewiseFn::sphere_kernel(m)?;
    let mut p = kernel.clone();
    for _ in 1..n {
        p = convolve(&p, &kernel)?;
    }
    // (2x)^{2m} Γ(m)/Γ(2m)
    let mut c = BigRat::one();
    for _ in 0..m {
        c *= int(4);
    }
    for j in m..2 * m {
        c /= int(j as i64);
    }
    let dens = p.half_derivative_op(m).mul_poly(&LaurentPoly::monomial(c, 2 * m as i32)).with_parity(Parity::None)?.simplified();
    if dens.pieces().iter().any(|q| q.min_exp().is_some_and(|e| e < 0)) {
        return Err(WalkError::Invariant("negative exponent survived in an odd-dimension density".into()));
    }
    Ok(dens)
}

/// Exact distribution function P_n(m−½;x) on [0, n].
pub fn cdf_odd_dim(n: u32, m: u32) -> Result<PiecewiseFn> {
    density_odd_dim(n, m)?.cumulative()
}

/// Exact ∫₀ⁿ x^j p dx for a nonnegative integer j.
pub fn odd_dim_integer_moment(p: &PiecewiseFn, j: u32) -> Result<BigRat> {
    let w = p.mul_poly(&LaurentPoly::monomial(int(1), j as i32));
    let v = w.integral()?;
    if v.is_zero() && j == 0 {
        return Err(WalkError::Invariant("density integrates to zero".into()));
    }
    Ok(v)
}
