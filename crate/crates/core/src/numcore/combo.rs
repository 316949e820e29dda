use std::fmt;

use num_traits::Zero;

use super::rat::{fmt_rat, rat_to_f64, BigRat};
use crate::error::{Result, WalkError};
use crate::specfun::constant;

/// Named constant bases for exact linear combinations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// {1}
    One,
    /// {A, 1/(π²A)} with A = W₃(0;−1).
    ThreeStep,
    /// {A₄, B₄}, the elliptic-integral constants of planar four-step walks.
    FourStep,
    /// {r₅₀, 1/(π⁴ r₅₀)}.
    FiveStep,
    /// {1, √3/π, Cl₂(π/3)/π}.
    Clausen,
}

impl Basis {
    pub fn arity(self) -> usize {
        self.names().len()
    }

    pub fn names(self) -> &'static [&'static str] {
        match self {
            Basis::One => &["1"],
            Basis::ThreeStep => &["A", "1/(pi^2 A)"],
            Basis::FourStep => &["A4", "B4"],
            Basis::FiveStep => &["r50", "1/(pi^4 r50)"],
            Basis::Clausen => &["1", "sqrt3/pi", "Cl(pi/3)/pi"],
        }
    }

    pub fn values(self) -> Vec<f64> {
        let pi = std::f64::consts::PI;
        match self {
            Basis::One => vec![1.0],
            Basis::ThreeStep => {
                let a = constant("A").unwrap();
                vec![a, 1.0 / (pi * pi * a)]
            }
            Basis::FourStep => vec![constant("A4").unwrap(), constant("B4").unwrap()],
            Basis::FiveStep => {
                let r = constant("r50").unwrap();
                vec![r, 1.0 / (pi.powi(4) * r)]
            }
            Basis::Clausen => vec![1.0, 3f64.sqrt() / pi, constant("Cl_pi_3").unwrap() / pi],
        }
    }
}

/// Σ coeffs[i] · basis[i] with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstCombo {
    basis: Basis,
    coeffs: Vec<BigRat>,
}

impl ConstCombo {
    pub fn new(basis: Basis, coeffs: Vec<BigRat>) -> Result<Self> {
        if coeffs.len() != basis.arity() {
            return Err(WalkError::Invariant(format!(
                "basis {:?} takes {} coefficients, got {}",
                basis,
                basis.arity(),
                coeffs.len()
            )));
        }
        Ok(ConstCombo { basis, coeffs })
    }

    pub fn zero(basis: Basis) -> Self {
        ConstCombo { basis, coeffs: vec![BigRat::zero(); basis.arity()] }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        ConstCombo { basis: self.basis, coeffs: self.coeffs.iter().map(|v| v * c).collect() }
    }

    /// a·self + b·other over the same basis.
    pub fn lin(&self, a: &BigRat, other: &ConstCombo, b: &BigRat) -> Self {
        debug_assert_eq!(self.basis, other.basis);
        ConstCombo {
            basis: self.basis,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x * a + y * b).collect(),
        }
    }

    pub fn value(&self) -> f64 {
        self.basis.values().iter().zip(&self.coeffs).map(|(v, c)| v * rat_to_f64(c)).sum()
    }

    /// Terms of the value, before summation. Useful to gauge cancellation.
    pub fn term_values(&self) -> Vec<f64> {
        self.basis.values().iter().zip(&self.coeffs).map(|(v, c)| v * rat_to_f64(c)).collect()
    }
}

impl fmt::Display for ConstCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.basis.names())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if *n == "1" { fmt_rat(c) } else { format!("{}*{}", fmt_rat(c), n) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
