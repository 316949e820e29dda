use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::densities::density_odd_dim;
use crate::error::{Result, WalkError};
use crate::numcore::{fmt_rat, int, rat_to_f64, BigRat, HalfInt, PiecewiseFn};

/// Moment function of an odd-dimensional walk, integrated piece by piece.
#[derive(Debug, Clone)]
pub struct OddDimMomentForm {
    pub n_steps: u32,
    pub nu: HalfInt,
    pub density: PiecewiseFn,
}

/// rational + Σ cᵢ ln(aᵢ).
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMoment {
    pub rational: BigRat,
    pub logs: Vec<(BigRat, BigRat)>,
}

impl ExactMoment {
    pub fn is_rational(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn value(&self) -> f64 {
        rat_to_f64(&self.rational) + self.logs.iter().map(|(c, a)| rat_to_f64(c) * rat_to_f64(a).ln()).sum::<f64>()
    }
}

impl fmt::Display for ExactMoment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rat(&self.rational))?;
        for (c, a) in &self.logs {
            write!(f, " + {}*log({})", fmt_rat(c), fmt_rat(a))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OddDimMoment {
    pub value: f64,
    pub exact: Option<ExactMoment>,
}

fn rat_pow(b: &BigRat, e: i64) -> BigRat {
    let p = num_traits::pow(b.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl OddDimMomentForm {
    pub fn new(n_steps: u32, nu: HalfInt) -> Result<Self> {
        if nu.is_integer() {
            return Err(WalkError::Domain(format!("odd-dimension moments need half-odd nu, got {nu}")));
        }
        let m = nu.twice().div_ceil(2);
        Ok(Self { n_steps, nu, density: density_odd_dim(n_steps, m)? })
    }

    /// Values of s where W has a genuine pole.
    pub fn poles(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.density.pieces()[0].terms().map(|(e, _)| -(e as i64) - 1).collect();
        out.sort();
        out
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        let breaks = self.density.breaks();
        let mut total = 0.0;
        for (i, piece) in self.density.pieces().iter().enumerate() {
            let a = rat_to_f64(&breaks[i]);
            let b = rat_to_f64(&breaks[i + 1]);
            for (e, c) in piece.terms() {
                let alpha = s + e as f64 + 1.0;
                let c = rat_to_f64(c);
                if alpha == 0.0 {
                    if a == 0.0 {
                        return Err(WalkError::Pole(format!("moment function has a pole at s = {s}")));
                    }
                    total += c * (b.ln() - a.ln());
                } else {
                    let lower = if a == 0.0 { 0.0 } else { a.powf(alpha) };
                    total += c * (b.powf(alpha) - lower) / alpha;
                }
            }
        }
        Ok(total)
    }

    pub fn exact(&self, s: i64) -> Result<ExactMoment> {
        let breaks = self.density.breaks();
        let mut rational = BigRat::zero();
        let mut logs: BTreeMap<BigRat, BigRat> = BTreeMap::new();
        for (i, piece) in self.density.pieces().iter().enumerate() {
            let a = &breaks[i];
            let b = &breaks[i + 1];
            for (e, c) in piece.terms() {
                let alpha = s + e as i64 + 1;
                if alpha == 0 {
                    if a.is_zero() {
                        return Err(WalkError::Pole(format!("moment function has a pole at s = {s}")));
                    }
                    *logs.entry(b.clone()).or_insert_with(BigRat::zero) += c;
                    *logs.entry(a.clone()).or_insert_with(BigRat::zero) -= c;
                } else {
                    let lower = if a.is_zero() { BigRat::zero() } else { rat_pow(a, alpha) };
                    rational += c * (rat_pow(b, alpha) - lower) / int(alpha);
                }
            }
        }
        let logs = logs.into_iter().filter(|(a, c)| !c.is_zero() && !a.is_one()).map(|(a, c)| (c, a)).collect();
        Ok(ExactMoment { rational, logs })
    }
}

/// W_n(ν;s) for half-odd ν, with the exact value when s is an integer.
pub fn odd_dim_moment(n: u32, nu: HalfInt, s: f64) -> Result<OddDimMoment> {
    let form = OddDimMomentForm::new(n, nu)?;
    if s.fract() == 0.0 && s.abs() < 1e6 {
        let exact = form.exact(s as i64)?;
        let value = exact.value();
        return Ok(OddDimMoment { value, exact: Some(exact) });
    }
    Ok(OddDimMoment { value: form.eval(s)?, exact: None })
}
