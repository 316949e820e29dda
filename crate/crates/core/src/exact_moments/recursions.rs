use num_traits::Zero;

use super::moment_row;
use crate::error::Result;
use crate::numcore::{int, rat, BigRat, HalfInt};

fn at(values: &[BigRat], i: i64) -> BigRat {
    if i < 0 {
        BigRat::zero()
    } else {
        values[i as usize].clone()
    }
}

/// Checks the three-step recursion on W₃(ν;2k) for 1 ≤ k ≤ kmax.
pub fn check_rec3(nu: HalfInt, values: &[BigRat], kmax: u32) -> bool {
    let v = nu.to_rat();
    (1..=kmax as i64).all(|k| {
        if k as usize + 1 >= values.len() {
            return false;
        }
        let kr = int(k);
        let h = &kr + rat(1, 2);
        let lhs = (&kr + int(2) * &v + int(1)) * (&kr + int(3) * &v + int(1)) * at(values, k + 1);
        let a = rat(1, 2) * (int(20) * &h * &h + int(60) * &h * &v + int(36) * &v * &v + int(1));
        let rhs = a * at(values, k) - int(9) * &kr * (&kr + &v) * at(values, k - 1);
        lhs == rhs
    })
}

/// Checks the four-step recursion on W₄(ν;2k) for 1 ≤ k ≤ kmax.
pub fn check_rec4(nu: HalfInt, values: &[BigRat], kmax: u32) -> bool {
    let v = nu.to_rat();
    (1..=kmax as i64).all(|k| {
        if k as usize + 1 >= values.len() {
            return false;
        }
        let kr = int(k);
        let h = &kr + rat(1, 2);
        let lhs = (&kr + int(2) * &v + int(1))
            * (&kr + int(3) * &v + int(1))
            * (&kr + int(4) * &v + int(1))
            * at(values, k + 1);
        let a = (&h + int(2) * &v) * (int(20) * &h * &h + int(80) * &h * &v + int(48) * &v * &v + int(3));
        let c = int(64) * &kr * (&kr + &v) * (&kr + int(2) * &v);
        lhs == a * at(values, k) - c * at(values, k - 1)
    })
}

/// Checks the four-term five-step recursion on W₅(ν;2k) for 1 ≤ k ≤ kmax.
pub fn check_rec5(nu: HalfInt, values: &[BigRat], kmax: u32) -> bool {
    let v = nu.to_rat();
    let v2 = &v * &v;
    (1..=kmax as i64).all(|k| {
        if k as usize + 1 >= values.len() {
            return false;
        }
        let kr = int(k);
        let m = &kr + rat(1, 2);
        let lhs = (&kr + int(2) * &v + int(1))
            * (&kr + int(3) * &v + int(1))
            * (&kr + int(4) * &v + int(1))
            * (&kr + int(5) * &v + int(1))
            * at(values, k + 1);
        let a = int(35) * &m * &m * &m * &m
            + int(350) * &v * &m * &m * &m
            + (int(1183) * &v2 + rat(21, 2)) * &m * &m
            + (int(1540) * &v2 + rat(105, 2)) * &v * &m
            + (int(600) * &v2 * &v2 + rat(237, 4) * &v2 + rat(3, 16));
        let b = &kr
            * (&kr + &v)
            * (int(259) * &kr * &kr + int(1295) * &kr * &v + int(1450) * &v2 + int(26));
        let c = int(225) * &kr * (&kr - int(1)) * (&kr + &v) * (&kr - int(1) + &v);
        lhs == a * at(values, k) - b * at(values, k - 1) + c * at(values, k - 2)
    })
}

pub fn validate_recursion_w3(nu: HalfInt, kmax: u32) -> Result<bool> {
    Ok(check_rec3(nu, &moment_row(3, nu, kmax + 1)?, kmax))
}

pub fn validate_recursion_w4(nu: HalfInt, kmax: u32) -> Result<bool> {
    Ok(check_rec4(nu, &moment_row(4, nu, kmax + 1)?, kmax))
}

pub fn validate_recursion_w5(nu: HalfInt, kmax: u32) -> Result<bool> {
    Ok(check_rec5(nu, &moment_row(5, nu, kmax + 1)?, kmax))
}
