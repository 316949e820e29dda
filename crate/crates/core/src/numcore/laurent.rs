use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::rat::{fmt_rat, int, parse_rat, rat_to_f64, BigRat};
use crate::error::{Result, WalkError};

/// Finite sum of c_e x^e with rational c_e and integer e (possibly negative).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRat, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// x^0..x^n with the given coefficients.
    pub fn from_coeffs(coeffs: &[BigRat]) -> Self {
        let mut p = Self::zero();
        for (e, c) in coeffs.iter().enumerate() {
            p.add_term(e as i32, c.clone());
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, BigRat)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: BigRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> BigRat {
        self.terms.get(&e).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn shift(&self, by: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (e + by, v.clone())).collect() }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e - 1, c * int(*e as i64))))
    }

    /// p ↦ −p′/(2x).
    pub fn half_derivative(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e - 2, c * BigRat::new((-e).into(), 2.into()))))
    }

    /// Antiderivative without constant; fails on an x^{-1} term.
    pub fn antiderivative(&self) -> Result<Self> {
        if !self.coeff(-1).is_zero() {
            return Err(WalkError::Unsupported("antiderivative of x^-1".into()));
        }
        Ok(Self::from_terms(self.terms.iter().map(|(e, c)| (e + 1, c / int(*e as i64 + 1)))))
    }

    /// p(a + b x) for a polynomial p.
    pub fn compose_linear(&self, a: &BigRat, b: &BigRat) -> Result<Self> {
        if !self.is_polynomial() {
            return Err(WalkError::Unsupported("composition of a Laurent polynomial".into()));
        }
        let lin = LaurentPoly::from_coeffs(&[a.clone(), b.clone()]);
        let mut out = Self::zero();
        let mut power = Self::constant(BigRat::one());
        let top = self.max_exp().unwrap_or(0);
        for e in 0..=top {
            let c = self.coeff(e);
            if !c.is_zero() {
                out = &out + &power.scale(&c);
            }
            power = &power * &lin;
        }
        Ok(out)
    }

    /// p(−x).
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e.rem_euclid(2) == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn eval_rat(&self, x: &BigRat) -> Result<BigRat> {
        if x.is_zero() {
            if !self.is_polynomial() {
                return Err(WalkError::Pole("Laurent polynomial at 0".into()));
            }
            return Ok(self.coeff(0));
        }
        let mut acc = BigRat::zero();
        for (e, c) in &self.terms {
            acc += c * num_traits::pow::Pow::pow(x, *e);
        }
        Ok(acc)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|(e, c)| rat_to_f64(c) * x.powi(*e)).sum()
    }

    /// Exact ∫_a^b p(x) dx; fails on an x^{-1} term.
    pub fn integrate(&self, a: &BigRat, b: &BigRat) -> Result<BigRat> {
        let q = self.antiderivative()?;
        Ok(q.eval_rat(b)? - q.eval_rat(a)?)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(e, c)| json!([e, fmt_rat(c)])).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || WalkError::Parse("expected [[exponent, \"num/den\"], ...]".into());
        let mut p = Self::zero();
        for t in v.as_array().ok_or_else(bad)? {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let e = pair[0].as_i64().ok_or_else(bad)? as i32;
            let c = match &pair[1] {
                Value::String(s) => parse_rat(s)?,
                Value::Number(n) => parse_rat(&n.to_string())?,
                _ => return Err(bad()),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => fmt_rat(c),
                1 => format!("{}*x", fmt_rat(c)),
                _ => format!("{}*x^{}", fmt_rat(c), e),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::rat::rat;
    use proptest::prelude::*;

    #[test]
    fn half_derivative_hand_values() {
        // (3 - x^2)/8 -> 1/8
        let p = LaurentPoly::from_coeffs(&[rat(3, 8), int(0), rat(-1, 8)]);
        assert_eq!(p.half_derivative(), LaurentPoly::constant(rat(1, 8)));
        assert!(LaurentPoly::constant(int(5)).half_derivative().is_zero());
        // x^4 -> -2x^2 -> 2
        let x4 = LaurentPoly::monomial(int(1), 4);
        assert_eq!(x4.half_derivative(), LaurentPoly::monomial(int(-2), 2));
        assert_eq!(x4.half_derivative().half_derivative(), LaurentPoly::constant(int(2)));
    }

    #[test]
    fn composition_and_integration() {
        let p = LaurentPoly::from_coeffs(&[int(0), int(0), int(1)]);
        let q = p.compose_linear(&int(1), &int(-1)).unwrap();
        assert_eq!(q, LaurentPoly::from_coeffs(&[int(1), int(-2), int(1)]));
        assert_eq!(p.integrate(&int(0), &int(3)).unwrap(), int(9));
        assert!(LaurentPoly::monomial(int(1), -1).antiderivative().is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::from_terms([(-2, rat(3, 7)), (0, int(1)), (5, rat(-1, 2))]);
        assert_eq!(LaurentPoly::from_json(&p.to_json()).unwrap(), p);
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-3i32..6, -20i64..20, 1i64..9), 0..5)
            .prop_map(|v| LaurentPoly::from_terms(v.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
    }

    proptest! {
        #[test]
        fn half_derivative_commutes_with_scaling(p in poly(), n in -30i64..30, d in 1i64..30) {
            let c = rat(n, d);
            prop_assert_eq!(p.scale(&c).half_derivative(), p.half_derivative().scale(&c));
        }

        #[test]
        fn product_rule(p in poly(), q in poly()) {
            let lhs = (&p * &q).derivative();
            let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
