use std::collections::BTreeMap;

use crate::error::{Result, WalkError};
use crate::numcore::{int, rat, BigRat, Basis, ConstCombo, HalfInt};
use crate::quadrature::{moment_quad, QuadSpec};

/// Order in which the two recursions are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOrder {
    /// Extend s at ν = 0, then raise ν with the dimensional recursion.
    SThenNu,
    /// Raise ν for the two lowest odd s, then extend s at the target ν.
    NuThenS,
}

/// Exact odd moments W_n(ν;s), n ∈ {3, 4}, over a two-element constant basis.
#[derive(Debug, Clone)]
pub struct OddMomentLadder {
    n_steps: u32,
    order: LadderOrder,
    table: BTreeMap<(u32, i64), ConstCombo>,
}

fn lin(a: &BigRat, x: &ConstCombo, b: &BigRat, y: &ConstCombo) -> ConstCombo {
    x.lin(a, y, b)
}

impl OddMomentLadder {
    pub fn new(n_steps: u32, order: LadderOrder) -> Result<Self> {
        let (basis, lo, hi) = match n_steps {
            3 => (Basis::ThreeStep, vec![int(1), int(0)], vec![int(1), int(6)]),
            4 => (Basis::FourStep, vec![int(4), int(0)], vec![int(16), int(-48)]),
            _ => return Err(WalkError::Unsupported(format!("odd-moment ladders exist for 3 and 4 steps, not {n_steps}"))),
        };
        let mut table = BTreeMap::new();
        table.insert((0, -1), ConstCombo::new(basis, lo)?);
        table.insert((0, 1), ConstCombo::new(basis, hi)?);
        Ok(Self { n_steps, order, table })
    }

    pub fn basis(&self) -> Basis {
        if self.n_steps == 3 {
            Basis::ThreeStep
        } else {
            Basis::FourStep
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, i64), &ConstCombo)> {
        self.table.iter()
    }

    /// (lead, a, c) with lead·W(s+2) = a·W(s) − c·W(s−2), k = s/2.
    fn s_coeffs(&self, nu: u32, s: i64) -> (BigRat, BigRat, BigRat) {
        let v = int(nu as i64);
        let k = rat(s, 2);
        let h = &k + rat(1, 2);
        let one = int(1);
        if self.n_steps == 3 {
            let lead = (&k + int(2) * &v + &one) * (&k + int(3) * &v + &one);
            let a = rat(1, 2) * (int(20) * &h * &h + int(60) * &h * &v + int(36) * &v * &v + &one);
            let c = int(9) * &k * (&k + &v);
            (lead, a, c)
        } else {
            let lead = (&k + int(2) * &v + &one) * (&k + int(3) * &v + &one) * (&k + int(4) * &v + &one);
            let a = (&h + int(2) * &v) * (int(20) * &h * &h + int(80) * &h * &v + int(48) * &v * &v + int(3));
            let c = int(64) * &k * (&k + &v) * (&k + int(2) * &v);
            (lead, a, c)
        }
    }

    /// (den, c2, c4) with den·W(ν;s) = c4·W(ν−1;s+4) − c2·W(ν−1;s+2).
    fn nu_coeffs(&self, nu: u32, s: i64) -> (BigRat, BigRat, BigRat) {
        let v = int(nu as i64);
        let s = int(s);
        if self.n_steps == 3 {
            let v2 = &v * &v;
            ((&s + int(2)) * (&s + int(6) * &v), int(6) * &v2, int(2) * &v2)
        } else {
            let v3 = &v * &v * &v;
            let den = int(3) * (&s + int(2)) * (&s + int(6) * &v) * (&s + int(8) * &v) * (&s + int(8) * &v - int(2));
            (den, int(256) * &v3 * (&s + int(4) * &v), int(8) * &v3 * (int(5) * &s + int(32) * &v - int(6)))
        }
    }

    fn via_nu(&mut self, nu: u32, s: i64) -> Result<ConstCombo> {
        let (den, c2, c4) = self.nu_coeffs(nu, s);
        if den == int(0) {
            return Err(WalkError::Degenerate { nu: nu as i64, s });
        }
        let w2 = self.get(nu - 1, s + 2)?;
        let w4 = self.get(nu - 1, s + 4)?;
        Ok(lin(&(c4 / &den), &w4, &(-c2 / &den), &w2))
    }

    fn via_s(&mut self, nu: u32, s: i64) -> Result<ConstCombo> {
        // s = t + 2 with t the middle index
        let t = s - 2;
        let (lead, a, c) = self.s_coeffs(nu, t);
        if lead == int(0) {
            return Err(WalkError::Degenerate { nu: nu as i64, s });
        }
        let w1 = self.get(nu, t)?;
        let w0 = self.get(nu, t - 2)?;
        Ok(lin(&(a / &lead), &w1, &(-c / &lead), &w0))
    }

    /// W_n(ν;s) for odd s > −d.
    pub fn get(&mut self, nu: u32, s: i64) -> Result<ConstCombo> {
        if s % 2 == 0 {
            return Err(WalkError::Domain(format!("odd-moment ladder needs odd s, got {s}")));
        }
        let floor = -(2 * nu as i64 + 2);
        if s <= floor {
            return Err(WalkError::Domain(format!("s = {s} is at or below the first pole s = {floor}")));
        }
        if let Some(c) = self.table.get(&(nu, s)) {
            return Ok(c.clone());
        }
        let lowest = floor + 1;
        let value = match (nu, self.order) {
            (0, _) => self.via_s(0, s)?,
            (_, LadderOrder::SThenNu) => self.via_nu(nu, s)?,
            (_, LadderOrder::NuThenS) if s <= lowest + 2 => self.via_nu(nu, s)?,
            (_, LadderOrder::NuThenS) => self.via_s(nu, s)?,
        };
        self.table.insert((nu, s), value.clone());
        Ok(value)
    }

    /// Re-checks every stored entry against each recursion whose other terms are stored.
    pub fn recheck(&self) -> bool {
        self.table.iter().all(|(&(nu, s), w)| {
            let s_ok = match (self.table.get(&(nu, s - 2)), self.table.get(&(nu, s - 4))) {
                (Some(w1), Some(w0)) => {
                    let (lead, a, c) = self.s_coeffs(nu, s - 2);
                    w.scale(&lead) == lin(&a, w1, &(-c), w0)
                }
                _ => true,
            };
            let nu_ok = if nu == 0 {
                true
            } else {
                match (self.table.get(&(nu - 1, s + 2)), self.table.get(&(nu - 1, s + 4))) {
                    (Some(w2), Some(w4)) => {
                        let (den, c2, c4) = self.nu_coeffs(nu, s);
                        w.scale(&den) == lin(&c4, w4, &(-c2), w2)
                    }
                    _ => true,
                }
            };
            s_ok && nu_ok
        })
    }
}

/// W₃(ν;s) over {A, 1/(π²A)} for odd s > −d.
pub fn w3_odd(nu: u32, s: i64) -> Result<ConstCombo> {
    OddMomentLadder::new(3, LadderOrder::SThenNu)?.get(nu, s)
}

pub fn w3_odd_ordered(nu: u32, s: i64, order: LadderOrder) -> Result<ConstCombo> {
    OddMomentLadder::new(3, order)?.get(nu, s)
}

/// W₄(ν;s) over {A₄, B₄} for odd s > −d.
pub fn w4_odd(nu: u32, s: i64) -> Result<ConstCombo> {
    OddMomentLadder::new(4, LadderOrder::SThenNu)?.get(nu, s)
}

#[derive(Debug, Clone)]
pub struct DerivativeAt0 {
    pub combo: Option<ConstCombo>,
    pub value: f64,
    /// true when the value comes from differentiating the quadrature oracle.
    pub numeric: bool,
}

/// W₃′(ν;0) over {1, √3/π, Cl(π/3)/π}; numeric beyond ν = 2.
pub fn w3_derivative_at0(nu: u32) -> Result<DerivativeAt0> {
    let stored = match nu {
        0 => Some([int(0), int(0), int(1)]),
        1 => Some([rat(1, 2), rat(-11, 16), int(1)]),
        2 => Some([rat(17, 36), rat(-181, 320), int(1)]),
        _ => None,
    };
    if let Some(c) = stored {
        let combo = ConstCombo::new(Basis::Clausen, c.to_vec())?;
        return Ok(DerivativeAt0 { value: combo.value(), combo: Some(combo), numeric: false });
    }
    Ok(DerivativeAt0 { combo: None, value: central_derivative(3, HalfInt::int(nu), 0.0, 1e-3)?, numeric: true })
}

/// Central difference of moment_quad with one Richardson step.
pub fn central_derivative(n: u32, nu: HalfInt, s: f64, h: f64) -> Result<f64> {
    let spec = QuadSpec::default();
    let f = |x: f64| moment_quad(n, nu, x, &spec).map(|r| r.value);
    let d1 = (f(s + h)? - f(s - h)?) / (2.0 * h);
    let d2 = (f(s + h / 2.0)? - f(s - h / 2.0)?) / h;
    Ok((4.0 * d2 - d1) / 3.0)
}
