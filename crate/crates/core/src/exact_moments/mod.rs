//! Exact even moments W_n(ν;2k) and the machinery around them.

mod recursions;
mod residues;

pub use recursions::{
    check_rec3, check_rec4, check_rec5, validate_recursion_w3, validate_recursion_w4, validate_recursion_w5,
};
pub use residues::{gf3_coefficients, gf3_principal_part, residues_v3, Gf3PrincipalPart, ResidueSeq};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Result, WalkError};
use crate::numcore::{fmt_rat, int, BigRat, HalfInt};

/// Coefficient (k+ν)!ν!/((k−j+ν)!(j+ν)!) times binom(k,j), exact for half-integer ν.
pub fn conv_coeff(nu: HalfInt, k: u32, j: u32) -> BigRat {
    let nu = nu.to_rat();
    let mut c = BigRat::one();
    for i in 1..=j {
        let i = int(i as i64);
        c *= (int((k - j) as i64) + &nu + &i) / (&nu + &i);
    }
    c * BigRat::from_integer(crate::numcore::binomial(k as u64, j as u64))
}

/// W_n(ν;2k) for k = 0..=kmax via the convolution recursion.
pub fn moment_row(n: u32, nu: HalfInt, kmax: u32) -> Result<Vec<BigRat>> {
    if n == 0 {
        return Err(WalkError::Domain("number of steps must be at least 1".into()));
    }
    let size = kmax as usize + 1;
    let coeffs: Vec<Vec<BigRat>> = (0..=kmax).map(|k| (0..=k).map(|j| conv_coeff(nu, k, j)).collect()).collect();
    let mut row = vec![BigRat::one(); size];
    for _ in 1..n {
        row = (0..size)
            .map(|k| {
                coeffs[k].iter().zip(&row).fold(BigRat::zero(), |acc, (c, w)| acc + c * w)
            })
            .collect();
    }
    Ok(row)
}

/// W_n(ν;2k) by the convolution recursion; valid for every half-integer ν.
pub fn even_moment_conv(n: u32, nu: HalfInt, k: u32) -> Result<BigRat> {
    Ok(moment_row(n, nu, k)?.pop().unwrap())
}

/// W_n(ν;2k) by the multinomial double sum; integer ν only.
pub fn even_moment_multinomial(n: u32, nu: HalfInt, k: u32) -> Result<BigRat> {
    if n == 0 {
        return Err(WalkError::Domain("number of steps must be at least 1".into()));
    }
    let v = nu.as_integer().ok_or_else(|| {
        WalkError::Unsupported(format!("multinomial sum needs integer nu (got {nu}); use even_moment_conv"))
    })? as u64;
    let fact = |m: u64| -> BigRat { BigRat::from_integer((1..=m).fold(num_bigint::BigInt::one(), |a, i| a * i)) };
    // W = (k+ν)! ν!^{n−1} k! Σ Π 1/(k_i! (k_i+ν)!)
    let weights: Vec<BigRat> = (0..=k as u64).map(|i| (fact(i) * fact(i + v)).recip()).collect();
    fn walk(parts_left: u32, remaining: usize, weights: &[BigRat], acc: &BigRat, out: &mut BigRat) {
        if parts_left == 1 {
            *out += acc * &weights[remaining];
            return;
        }
        for first in 0..=remaining {
            walk(parts_left - 1, remaining - first, weights, &(acc * &weights[first]), out);
        }
    }
    let mut sum = BigRat::zero();
    walk(n, k as usize, &weights, &BigRat::one(), &mut sum);
    let mut pre = fact(k as u64 + v) * fact(k as u64);
    for _ in 1..n {
        pre *= fact(v);
    }
    Ok(pre * sum)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub n_steps: u32,
    pub nu: HalfInt,
    pub values: Vec<BigRat>,
}

impl MomentTable {
    pub fn new(n_steps: u32, nu: HalfInt, kmax: u32) -> Result<Self> {
        Ok(Self { n_steps, nu, values: moment_row(n_steps, nu, kmax)? })
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
            "n_steps": self.n_steps,
            "nu": self.nu.to_string(),
            "dim": self.nu.dim(),
            "values": self.values.iter().map(fmt_rat).collect::<Vec<_>>(),
        })
    }
}

/// Lower triangular matrix A_{k,j}(ν) whose powers carry the even moments.
#[derive(Debug, Clone, PartialEq)]
pub struct NarayanaMatrix {
    pub nu: HalfInt,
    pub entries: Vec<Vec<BigRat>>,
}

impl NarayanaMatrix {
    pub fn new(nu: HalfInt, size: usize) -> Self {
        let entries = (0..size)
            .map(|k| {
                (0..size)
                    .map(|j| if j <= k { conv_coeff(nu, k as u32, j as u32) } else { BigRat::zero() })
                    .collect()
            })
            .collect();
        Self { nu, entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (j..=i).fold(BigRat::zero(), |acc, m| acc + &self.entries[i][m] * &other.entries[m][j]))
                    .collect()
            })
            .collect();
        Self { nu: self.nu, entries }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = self.clone();
        for _ in 1..n {
            out = out.mul(self);
        }
        out
    }

    pub fn row_sums(&self) -> Vec<BigRat> {
        self.entries.iter().map(|r| r.iter().fold(BigRat::zero(), |a, b| a + b)).collect()
    }
}

/// Row sums of A(ν)ⁿ, which equal W_{n+1}(ν;2k).
pub fn narayana_power_rowsums(nu: HalfInt, n: u32, size: usize) -> Result<Vec<BigRat>> {
    if n == 0 || size == 0 {
        return Err(WalkError::Domain("power and size must be at least 1".into()));
    }
    Ok(NarayanaMatrix::new(nu, size).pow(n).row_sums())
}

/// Closed polynomial-in-n formulas for W_n(ν;2k), k ∈ {1,2,3}.
pub fn moment_poly_formula(n: u32, nu: HalfInt, k: u32) -> Result<BigRat> {
    let n = int(n as i64);
    let v = nu.to_rat();
    let one = BigRat::one();
    match k {
        1 => Ok(n),
        2 => Ok(&n * (&n * (&v + int(2)) - &one) / (&v + &one)),
        3 => {
            let inner = &n * &n * (&v + int(2)) * (&v + int(3)) - int(3) * &n * (&v + int(3)) + int(4);
            Ok(&n * inner / ((&v + &one) * (&v + &one)))
        }
        _ => Err(WalkError::Domain(format!("closed polynomial in n only for k in 1..=3, got {k}"))),
    }
}

#[derive(Debug, Clone)]
pub struct PolyInNReport {
    pub nu: HalfInt,
    pub k: u32,
    /// (n, formula, convolution)
    pub rows: Vec<(u32, BigRat, BigRat)>,
}

impl PolyInNReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|(_, a, b)| a == b)
    }
}

/// Compares the closed formulas against the convolution recursion for n = 1..=8.
pub fn moment_poly_in_n(nu: HalfInt, k: u32) -> Result<PolyInNReport> {
    let rows = (1..=8)
        .map(|n| Ok((n, moment_poly_formula(n, nu, k)?, even_moment_conv(n, nu, k)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyInNReport { nu, k, rows })
}
