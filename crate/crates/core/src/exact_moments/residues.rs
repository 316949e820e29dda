use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::moment_row;
use crate::error::{Result, WalkError};
use crate::numcore::{fmt_rat, int, rat, rat_to_f64, BigRat, HalfInt, LaurentPoly};
use crate::specfun::binom_real;

/// V₃(ν;k), the normalized residues of W₃(ν;s) at s = −2(ν+k+1).
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueSeq {
    pub nu: HalfInt,
    pub values: Vec<BigRat>,
}

impl ResidueSeq {
    /// Numeric residue of W₃(ν;s) at s = −d−2k.
    pub fn residue(&self, k: usize) -> f64 {
        let nu = self.nu.to_f64();
        let r0 = 2.0 / (3f64.sqrt() * std::f64::consts::PI) * 3f64.powf(nu) / binom_real(2.0 * nu, nu);
        r0 * rat_to_f64(&self.values[k]) / 9f64.powi(k as i32)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,value\n");
        for (k, v) in self.values.iter().enumerate() {
            s.push_str(&format!("{k},{}\n", fmt_rat(v)));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nu": self.nu.to_string(),
            "dim": self.nu.dim(),
            "values": self.values.iter().map(fmt_rat).collect::<Vec<_>>(),
        })
    }
}

/// u_{k+1}(k+1)(k+ν+1) = ½(20(k+½)² − 20(k+½)ν − 4ν² + 1)u_k − 9(k−ν)(k−2ν)u_{k−1}.
pub fn residues_v3(nu: HalfInt, kmax: u32) -> ResidueSeq {
    let v = nu.to_rat();
    let mut values = vec![BigRat::one()];
    let mut prev = BigRat::zero();
    for k in 0..kmax as i64 {
        let kr = int(k);
        let h = &kr + rat(1, 2);
        let a = rat(1, 2) * (int(20) * &h * &h - int(20) * &h * &v - int(4) * &v * &v + int(1));
        let c = int(9) * (&kr - &v) * (&kr - int(2) * &v);
        let cur = values.last().unwrap().clone();
        let next = (a * &cur - c * &prev) / ((&kr + int(1)) * (&kr + &v + int(1)));
        prev = cur;
        values.push(next);
    }
    ResidueSeq { nu, values }
}

/// Laurent coefficients H(ν;k) of the three-step hypergeometric generating function, for −2ν ≤ k ≤ kmax.
pub fn gf3_coefficients(nu: u32, kmax: i64) -> Result<BTreeMap<i64, BigRat>> {
    // each dimensional step consumes two indices on the right
    let top = kmax + 2 * nu as i64;
    let base = moment_row(3, HalfInt::int(0), top.max(0) as u32)?;
    let mut row: BTreeMap<i64, BigRat> = (0..=top).map(|k| (k, base[k as usize].clone())).collect();
    for m in 1..=nu as i64 {
        let prev = row;
        let get = |k: i64| -> BigRat {
            if k < -2 * (m - 1) {
                BigRat::zero()
            } else {
                prev.get(&k).cloned().unwrap_or_else(BigRat::zero)
            }
        };
        let mr = int(m);
        let m2 = &mr * &mr;
        let hi = kmax + 2 * (nu as i64 - m);
        let mut next = BTreeMap::new();
        for k in -2 * m..=hi {
            let kr = int(k);
            let lead2 = int(2) * (&kr + int(1)) * (&kr + int(3) * &mr);
            let h = if !lead2.is_zero() {
                (&m2 * get(k + 2) - int(3) * &m2 * get(k + 1)) / lead2
            } else {
                let lead1 = int(2) * (&kr + int(2) * &mr) * (&kr + int(3) * &mr - int(1)) * (&kr + int(3) * &mr);
                if lead1.is_zero() {
                    return Err(WalkError::Unresolved { nu: m as u32, k });
                }
                (&m2 * (int(7) * &kr + int(15) * &mr - int(4)) * get(k + 1) - int(9) * &m2 * (&kr + &mr) * get(k)) / lead1
            };
            next.insert(k, h);
        }
        row = next;
    }
    Ok(row)
}

/// Principal part of the three-step generating function.
#[derive(Debug, Clone, PartialEq)]
pub struct Gf3PrincipalPart {
    pub nu: u32,
    /// q_ν(y) = Σ_{j=1}^{2ν} H(ν;−j) yʲ, so that Σ W₃(ν;2k)xᵏ = hyp(x) − q_ν(1/x).
    pub q: LaurentPoly,
    /// Σ_{k=−2ν}^{0} H(ν;k) x^{k+2ν}, the normalization in which q₂ is usually printed.
    pub printed: LaurentPoly,
    /// H(ν;k) for k ≥ 0, which equal W₃(ν;2k).
    pub tail: Vec<BigRat>,
}

pub fn gf3_principal_part(nu: u32, kmax: u32) -> Result<Gf3PrincipalPart> {
    let h = gf3_coefficients(nu, kmax as i64)?;
    let two_nu = 2 * nu as i64;
    let q = LaurentPoly::from_terms((1..=two_nu).map(|j| (j as i32, h[&-j].clone())));
    let printed = LaurentPoly::from_terms((-two_nu..=0).map(|k| ((k + two_nu) as i32, h[&k].clone())));
    let tail = (0..=kmax as i64).map(|k| h[&k].clone()).collect();
    Ok(Gf3PrincipalPart { nu, q, printed, tail })
}
