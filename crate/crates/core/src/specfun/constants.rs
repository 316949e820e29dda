use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use super::elliptic::elliptic_kprime;
use super::gamma::{gamma_fn, trigamma};
use super::hyp::{pfq, HypSeriesSpec};
use crate::error::{Result, WalkError};
use crate::quadrature::rules::tanh_sinh;

#[derive(Clone, Debug)]
pub struct ConstantEntry {
    pub name: &'static str,
    pub value: f64,
    pub definition: &'static str,
}

fn kprime_moment(power: i32) -> f64 {
    // k = sin θ tames the logarithmic end at k = 0.
    let (v, _) = tanh_sinh(
        |_, da, db| {
            let k = da.sin();
            let kp = elliptic_kprime(k.max(f64::MIN_POSITIVE)).unwrap_or(0.0);
            kp * kp * k.powi(power) * db.sin()
        },
        0.0,
        FRAC_PI_2,
        1e-15,
    );
    v / PI.powi(3)
}

fn clausen_pi_3() -> f64 {
    let s = trigamma(1.0 / 6.0) + trigamma(1.0 / 3.0) - trigamma(2.0 / 3.0) - trigamma(5.0 / 6.0);
    3f64.sqrt() / 72.0 * s
}

fn build() -> BTreeMap<&'static str, ConstantEntry> {
    let g13 = gamma_fn(1.0 / 3.0);
    let entries = [
        ConstantEntry { name: "pi", value: PI, definition: "pi" },
        ConstantEntry { name: "sqrt3", value: 3f64.sqrt(), definition: "sqrt(3)" },
        ConstantEntry {
            name: "A",
            value: 3.0 / 16.0 * 2f64.powf(1.0 / 3.0) * g13.powi(6) / PI.powi(4),
            definition: "(3/16) 2^(1/3) Gamma(1/3)^6 / pi^4",
        },
        ConstantEntry { name: "A4", value: kprime_moment(0), definition: "(1/pi^3) int_0^1 K'(k)^2 dk" },
        ConstantEntry { name: "B4", value: kprime_moment(2), definition: "(1/pi^3) int_0^1 k^2 K'(k)^2 dk" },
        ConstantEntry {
            name: "r50",
            value: 5f64.sqrt() / 40.0
                * gamma_fn(1.0 / 15.0)
                * gamma_fn(2.0 / 15.0)
                * gamma_fn(4.0 / 15.0)
                * gamma_fn(8.0 / 15.0)
                / PI.powi(4),
            definition: "(sqrt5/40) Gamma(1/15) Gamma(2/15) Gamma(4/15) Gamma(8/15) / pi^4",
        },
        ConstantEntry { name: "Cl_pi_3", value: clausen_pi_3(), definition: "sum_k sin(k pi/3)/k^2" },
    ];
    entries.into_iter().map(|e| (e.name, e)).collect()
}

fn table() -> &'static BTreeMap<&'static str, ConstantEntry> {
    static TABLE: OnceLock<BTreeMap<&'static str, ConstantEntry>> = OnceLock::new();
    TABLE.get_or_init(build)
}

/// Value of a registry constant.
pub fn constant(name: &str) -> Result<f64> {
    table().get(name).map(|e| e.value).ok_or_else(|| WalkError::UnknownConstant(name.to_string()))
}

pub fn registry() -> Vec<ConstantEntry> {
    table().values().cloned().collect()
}

/// (π/16) 7F6(5/4, 1/2 ×6; 1/4, 1 ×5; 1).
pub fn a4_hypergeometric() -> Result<f64> {
    let v = pfq(&HypSeriesSpec::new(&[1.25, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5], &[0.25, 1.0, 1.0, 1.0, 1.0, 1.0], 1.0))?;
    Ok(PI / 16.0 * v.value)
}

/// (3π/256) 7F6(7/4, 3/2, 3/2, 1/2 ×4; 3/4, 2, 2, 2, 2, 1; 1).
pub fn b4_hypergeometric() -> Result<f64> {
    let v = pfq(&HypSeriesSpec::new(&[1.75, 1.5, 1.5, 0.5, 0.5, 0.5, 0.5], &[0.75, 2.0, 2.0, 2.0, 2.0, 1.0], 1.0))?;
    Ok(3.0 * PI / 256.0 * v.value)
}

/// 5F4(19/11, 1, 1, 1, 1; 8/11, 4/3, 3/2, 5/3; 16/27).
pub fn improbable_5f4() -> Result<f64> {
    Ok(pfq(&HypSeriesSpec::new(&[19.0 / 11.0, 1.0, 1.0, 1.0, 1.0], &[8.0 / 11.0, 4.0 / 3.0, 1.5, 5.0 / 3.0], 16.0 / 27.0))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_step_constant() {
        let a = constant("A").unwrap();
        assert!((a - 0.896_440_788_776_764_6).abs() < 1e-12);
        let mean = a + 6.0 / (PI * PI * a);
        assert!((mean - 1.5746).abs() < 5e-5);
    }

    #[test]
    fn clausen_series() {
        let direct: f64 = (1..200_000).map(|k| ((k as f64) * PI / 3.0).sin() / (k as f64).powi(2)).sum();
        let c = constant("Cl_pi_3").unwrap();
        assert!((c - direct).abs() < 1e-9);
        assert!((c - 1.014_941_606_409_653_6).abs() < 1e-14);
    }

    #[test]
    fn elliptic_constants_match_hypergeometric_forms() {
        let a4 = constant("A4").unwrap();
        let b4 = constant("B4").unwrap();
        assert!((a4 - a4_hypergeometric().unwrap()).abs() < 1e-10, "{a4} vs {}", a4_hypergeometric().unwrap());
        assert!((b4 - b4_hypergeometric().unwrap()).abs() < 1e-10, "{b4} vs {}", b4_hypergeometric().unwrap());
        assert!(16.0 * a4 - 48.0 * b4 > 0.0);
    }

    #[test]
    fn improbable_evaluation() {
        assert!((improbable_5f4().unwrap() - 3.0 * PI * PI / 16.0).abs() < 1e-10);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(constant("zeta3"), Err(WalkError::UnknownConstant(_))));
        assert_eq!(registry().len(), 7);
    }
}
