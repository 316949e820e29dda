use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gamma::{digamma, gamma_fn, rgamma};
use super::levin::levin_u;
use crate::error::{Result, WalkError};
use crate::numcore::BigRat;

/// Parameters of a generalized hypergeometric series pFq.
#[derive(Clone, Debug)]
pub struct HypSeriesSpec {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub z: f64,
    pub max_terms: usize,
    pub tol: f64,
}

impl HypSeriesSpec {
    pub fn new(upper: &[f64], lower: &[f64], z: f64) -> Self {
        HypSeriesSpec { upper: upper.to_vec(), lower: lower.to_vec(), z, max_terms: 200_000, tol: 1e-17 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
}

fn nonpositive_int(x: f64) -> Option<u64> {
    (x <= 0.0 && x == x.round()).then(|| (-x) as u64)
}

/// Evaluates pFq by forward term recurrence.
///
/// At z = 1 the partial sums are accelerated with the Levin u-transform.
pub fn pfq(spec: &HypSeriesSpec) -> Result<SeriesValue> {
    let z = spec.z;
    let terminate = spec.upper.iter().filter_map(|&a| nonpositive_int(a)).min();
    for &b in &spec.lower {
        if let Some(nb) = nonpositive_int(b) {
            if terminate.is_none_or(|t| t > nb) {
                return Err(WalkError::Domain(format!("lower parameter {b} is a pole of the series")));
            }
        }
    }
    let p = spec.upper.len();
    let q = spec.lower.len();
    let step = |m: usize, term: f64| -> f64 {
        let m = m as f64;
        let num: f64 = spec.upper.iter().map(|a| a + m).product();
        let den: f64 = spec.lower.iter().map(|b| b + m).product();
        term * num / den * z / (m + 1.0)
    };
    if let Some(n) = terminate {
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 0..n as usize {
            term = step(m, term);
            sum += term;
        }
        return Ok(SeriesValue { value: sum, terms: n as usize + 1 });
    }
    if z == 0.0 {
        return Ok(SeriesValue { value: 1.0, terms: 1 });
    }
    if p > q + 1 || (p == q + 1 && z.abs() > 1.0) {
        return Err(WalkError::Domain(format!("{p}F{q} series diverges at z = {z}")));
    }
    if p == q + 1 && z.abs() == 1.0 {
        let margin: f64 = spec.lower.iter().sum::<f64>() - spec.upper.iter().sum::<f64>();
        if margin <= 0.0 && z == 1.0 || margin <= -1.0 {
            return Err(WalkError::Domain(format!("{p}F{q} at z = {z} needs a positive convergence margin, got {margin}")));
        }
        return accelerated(&step, spec.max_terms);
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for m in 0..spec.max_terms {
        term = step(m, term);
        sum += term;
        if term.abs() < spec.tol * sum.abs() {
            small += 1;
            if small == 3 {
                return Ok(SeriesValue { value: sum, terms: m + 2 });
            }
        } else {
            small = 0;
        }
    }
    Err(WalkError::NonConvergence { terms: spec.max_terms, partial: sum })
}

/// Levin u-transform of the first 60 partial sums.
fn accelerated(step: &impl Fn(usize, f64) -> f64, max_terms: usize) -> Result<SeriesValue> {
    let n = max_terms.min(60);
    let mut terms = Vec::with_capacity(n);
    let mut term = 1.0;
    for m in 0..n {
        terms.push(term);
        term = step(m, term);
    }
    let (value, err) = levin_u(&terms);
    if !value.is_finite() || err > 1e-6 * value.abs().max(1.0) {
        return Err(WalkError::NonConvergence { terms: n, partial: value });
    }
    Ok(SeriesValue { value, terms: n })
}

/// Exact value of a terminating series with rational parameters.
pub fn pfq_rat(upper: &[BigRat], lower: &[BigRat], z: &BigRat) -> Result<BigRat> {
    let n = upper
        .iter()
        .filter(|a| a.is_integer() && !a.is_positive())
        .filter_map(|a| (-a.to_integer()).to_u64())
        .min()
        .ok_or_else(|| WalkError::Unsupported("exact pFq needs a terminating series".into()))?;
    let mut term = BigRat::one();
    let mut sum = BigRat::one();
    for m in 0..n {
        let mr = BigRat::from_integer(m.into());
        let mut num = z.clone();
        for a in upper {
            num *= a + &mr;
        }
        let mut den = &mr + BigRat::one();
        for b in lower {
            den *= b + &mr;
        }
        if den.is_zero() {
            return Err(WalkError::Domain("lower parameter hits a pole".into()));
        }
        term = term * num / den;
        sum += &term;
    }
    Ok(sum)
}

fn series_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    Ok(pfq(&HypSeriesSpec::new(&[a, b], &[c], z))?.value)
}

/// 2F1(a, b; c; z) for real z ≤ 1.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if nonpositive_int(a).is_some() || nonpositive_int(b).is_some() {
        return series_2f1(a, b, c, z);
    }
    if z > 1.0 {
        return Err(WalkError::Domain(format!("2F1 at z = {z} > 1")));
    }
    if z == 1.0 {
        let s = c - a - b;
        if s <= 0.0 {
            return Err(WalkError::Domain("2F1 diverges at z = 1".into()));
        }
        return Ok(gamma_fn(c) * gamma_fn(s) * rgamma(c - a) * rgamma(c - b));
    }
    if z < 0.0 {
        // Pfaff transformation onto [0, 1).
        let w = z / (z - 1.0);
        return Ok((1.0 - z).powf(-a) * hyp2f1(a, c - b, c, w)?);
    }
    if z <= 0.6 {
        return series_2f1(a, b, c, z);
    }
    let m = c - a - b;
    let w = 1.0 - z;
    if (m - m.round()).abs() > 1e-9 {
        let t1 = gamma_fn(c) * gamma_fn(m) * rgamma(c - a) * rgamma(c - b) * series_2f1(a, b, 1.0 - m, w)?;
        let t2 = w.powf(m) * gamma_fn(c) * gamma_fn(-m) * rgamma(a) * rgamma(b) * series_2f1(c - a, c - b, 1.0 + m, w)?;
        return Ok(t1 + t2);
    }
    let m = m.round() as i64;
    if m < 0 {
        // Euler transformation makes c − a − b positive.
        return Ok(w.powi(m as i32) * hyp2f1(c - a, c - b, c, z)?);
    }
    Ok(log_case(a, b, m as u32, w))
}

/// 2F1(a, b; a+b+m; 1−w) for integer m ≥ 0 and small w.
fn log_case(a: f64, b: f64, m: u32, w: f64) -> f64 {
    let c = a + b + m as f64;
    let mf = m as f64;
    let mut finite = 0.0;
    if m > 0 {
        let mut term = 1.0;
        for n in 0..m {
            let nf = n as f64;
            finite += term;
            term *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
        }
        finite *= gamma_fn(mf) * gamma_fn(c) * rgamma(a + mf) * rgamma(b + mf);
    }
    let lnw = w.ln();
    let mut coef = 1.0;
    for j in 1..=m {
        coef /= j as f64;
    }
    let mut sum = 0.0;
    for n in 0..2000u32 {
        let nf = n as f64;
        let bracket = lnw - digamma(nf + 1.0) - digamma(nf + mf + 1.0) + digamma(a + nf + mf) + digamma(b + nf + mf);
        let t = coef * bracket;
        sum += t;
        if n > 2 && t.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        coef *= (a + mf + nf) * (b + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * w;
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    finite - sign * w.powi(m as i32) * gamma_fn(c) * rgamma(a) * rgamma(b) * sum
}

/// d^λ/dz^λ 2F1(a, b; c; z).
pub fn hyp2f1_deriv(a: f64, b: f64, c: f64, z: f64, order: u32) -> Result<f64> {
    let mut factor = 1.0;
    for k in 0..order {
        let k = k as f64;
        factor *= (a + k) * (b + k) / (c + k);
    }
    let o = order as f64;
    Ok(factor * hyp2f1(a + o, b + o, c + o, z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::{int, rat};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn identity_at_zero() {
        assert_eq!(hyp2f1(0.3, 1.7, 2.2, 0.0).unwrap(), 1.0);
        assert_eq!(pfq(&HypSeriesSpec::new(&[1.0, 2.0, 3.0], &[4.0, 5.0], 0.0)).unwrap().value, 1.0);
    }

    #[test]
    fn elementary_cases() {
        // 2F1(1,1;2;z) = −ln(1−z)/z
        for &z in &[-3.0, -0.5, 0.3, 0.7, 0.95, 0.999] {
            let want = -(1.0f64 - z).ln() / z;
            assert!(close(hyp2f1(1.0, 1.0, 2.0, z).unwrap(), want, 1e-13), "z = {z}");
        }
        // 2F1(a,b;b;z) = (1−z)^{−a}
        for &z in &[-5.0, 0.2, 0.8, 0.99] {
            assert!(close(hyp2f1(0.3, 1.25, 1.25, z).unwrap(), (1.0f64 - z).powf(-0.3), 1e-13), "z = {z}");
        }
    }

    #[test]
    fn connection_matches_series() {
        let cases = [(1.0 / 3.0, 2.0 / 3.0, 1.0), (1.0 / 3.0, 2.0 / 3.0, 2.0), (1.0 / 3.0, 2.0 / 3.0, 1.5), (0.5, 0.5, 1.0), (1.0 / 6.0, 2.0 / 3.0, 1.0), (1.25, 1.5, 2.0)];
        for &(a, b, c) in &cases {
            for &z in &[0.62, 0.7, 0.8] {
                let direct = series_2f1(a, b, c, z).unwrap();
                let conn = hyp2f1(a, b, c, z).unwrap();
                assert!(close(conn, direct, 1e-13), "{a} {b} {c} {z}: {conn} vs {direct}");
            }
        }
    }

    #[test]
    fn gauss_sum() {
        let v = hyp2f1(1.0 / 3.0, 2.0 / 3.0, 2.0, 1.0).unwrap();
        let want = 1.0 / (gamma_fn(5.0 / 3.0) * gamma_fn(4.0 / 3.0));
        assert!(close(v, want, 1e-14));
        let lev = pfq(&HypSeriesSpec::new(&[1.0 / 3.0, 2.0 / 3.0], &[2.0], 1.0)).unwrap().value;
        assert!(close(lev, want, 1e-9));
        assert!(close(hyp2f1(1.0 / 3.0, 2.0 / 3.0, 2.0, 1.0 - 1e-12).unwrap(), want, 1e-9));
    }

    #[test]
    fn terminating_exact_bridge() {
        // 3F2(−2, −3, 3/2; 2, 3; 4) = W₃(1;4) = 12
        let up = [int(-2), int(-3), rat(3, 2)];
        let lo = [int(2), int(3)];
        assert_eq!(pfq_rat(&up, &lo, &int(4)).unwrap(), int(12));
        let f = pfq(&HypSeriesSpec::new(&[-2.0, -3.0, 1.5], &[2.0, 3.0], 4.0)).unwrap().value;
        assert!(close(f, 12.0, 1e-15));
    }

    #[test]
    fn refuses_divergence() {
        assert!(pfq(&HypSeriesSpec::new(&[1.0, 1.0], &[1.0], 1.5)).is_err());
        assert!(pfq(&HypSeriesSpec::new(&[1.0, 1.0], &[1.5], 1.0)).is_err());
        assert!(pfq(&HypSeriesSpec::new(&[1.0], &[-2.0], 0.5)).is_err());
        assert!(hyp2f1(0.5, 0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn derivative_matches_difference() {
        let (a, b, c, z) = (1.0 / 6.0, 1.0 / 3.0, 1.0, -0.4);
        let h = 1e-5;
        let fd = (hyp2f1(a, b, c, z + h).unwrap() - hyp2f1(a, b, c, z - h).unwrap()) / (2.0 * h);
        assert!(close(hyp2f1_deriv(a, b, c, z, 1).unwrap(), fd, 1e-8));
    }
}
