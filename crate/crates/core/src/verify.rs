//! The acceptance matrix: fifteen numbered criteria, grouped into suites.

use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_moments::{central_derivative, odd_dim_moment, w3_derivative_at0, w3_odd, w4_odd};
use crate::densities::{
    density_odd_dim, p2_cdf_at1, p3_at1, p3_cdf_at1_value, p3_functional_equation_residual, p3_hyp,
    p4_at2_combo_check, p4_dim_recursion_check, p4_four_dim_closed, p4_planar_closed, p5_eval, p5_taylor, P4Method,
};
use crate::error::{Result, WalkError};
use crate::exact_moments::{
    even_moment_conv, even_moment_multinomial, gf3_principal_part, moment_row, narayana_power_rowsums,
    residues_v3, validate_recursion_w3, validate_recursion_w4, validate_recursion_w5,
};
use crate::genfun::{gf_check, GfKind};
use crate::montecarlo::{estimate_moments, ks_test, CdfSource, ReferenceCdf};
use crate::numcore::{binomial, fmt_rat, int, parse_rat, rat, rat_to_f64, BigRat, ConstCombo, HalfInt, LaurentPoly};
use crate::quadrature::{cdf_quad, density_quad, moment_quad, residue_quad, QuadSpec};
use crate::specfun::{constant, gamma_fn, improbable_5f4, lgamma};

/// Number of samples in the Monte Carlo criterion.
pub const MC_SAMPLES: usize = 1_000_000;
const MC_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2}. {} ({} checks, {:.1}s)", self.id, self.name, self.checks, self.seconds)?;
        for m in self.failures.iter().take(5) {
            write!(f, "\n        {m}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n        … {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checker {
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    fn ok(&mut self, label: impl FnOnce() -> String, pass: bool) {
        self.checks += 1;
        if !pass {
            self.failures.push(label());
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        let pass = got == want;
        self.ok(|| format!("{label}: got {got:?}, want {want:?}"), pass);
    }

    fn close(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let d = (got - want).abs();
        self.ok(|| format!("{label}: got {got:.15e}, want {want:.15e}, |diff| {d:.2e} > {tol:.0e}"), d <= tol);
    }

    fn below(&mut self, label: &str, got: f64, tol: f64) {
        self.ok(|| format!("{label}: |{got:.3e}| > {tol:.0e}"), got.abs() <= tol);
    }

    fn try_run(&mut self, label: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.checks += 1;
            self.failures.push(format!("{label}: {e}"));
        }
    }
}

pub const CRITERIA: [(u32, &str); 15] = [
    (1, "exact even-moment tables in dimensions 2, 4, 6"),
    (2, "Catalan and Narayana row sums"),
    (3, "multinomial, convolution and recursion validators agree"),
    (4, "three-step principal part and tail"),
    (5, "residue tables and residue quadrature"),
    (6, "odd-moment combinations"),
    (7, "Kluyver probabilities and CDF values at 1"),
    (8, "improbable 5F4 evaluation"),
    (9, "odd-dimension piecewise densities and moments"),
    (10, "three-step density"),
    (11, "four-step density"),
    (12, "planar five-step density"),
    (13, "derivatives of three-step moments at 0"),
    (14, "Monte Carlo moments and KS tests"),
    (15, "generating functions"),
];

/// Criterion ids of a named suite.
pub fn suite_ids(name: &str) -> Result<Vec<u32>> {
    let ids = match name {
        "all" => (1..=15).collect(),
        "exact" => vec![1, 2, 3, 4, 5, 9],
        "closed" => vec![6, 8, 13],
        "kluyver" => vec![7],
        "densities" => vec![10, 11, 12],
        "montecarlo" => vec![14],
        "gf" => vec![15],
        "fast" => (1..=13).chain([15]).collect(),
        s => match s.parse::<u32>() {
            Ok(i) if (1..=15).contains(&i) => vec![i],
            _ => {
                return Err(WalkError::Parse(format!(
                    "unknown suite '{s}' (all, fast, exact, closed, kluyver, densities, montecarlo, gf, or 1-15)"
                )))
            }
        },
    };
    Ok(ids)
}

pub const SUITES: [&str; 8] = ["all", "fast", "exact", "closed", "kluyver", "densities", "montecarlo", "gf"];

pub fn run_suite(name: &str) -> Result<Vec<CriterionResult>> {
    Ok(suite_ids(name)?.into_iter().map(run_criterion).collect())
}

pub fn run_criterion(id: u32) -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::default();
    let body: fn(&mut Checker) -> Result<()> = match id {
        1 => c1,
        2 => c2,
        3 => c3,
        4 => c4,
        5 => c5,
        6 => c6,
        7 => c7,
        8 => c8,
        9 => c9,
        10 => c10,
        11 => c11,
        12 => c12,
        13 => c13,
        14 => c14,
        _ => c15,
    };
    c.try_run("error", body);
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("unknown");
    CriterionResult {
        id,
        name,
        pass: c.failures.is_empty() && c.checks > 0,
        checks: c.checks,
        failures: c.failures,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn h(twice: u32) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn row(s: &str) -> Result<Vec<BigRat>> {
    s.split(',').map(|t| parse_rat(t.trim())).collect()
}

const D2: [&str; 5] = [
    "1, 2, 6, 20, 70, 252, 924, 3432, 12870",
    "1, 3, 15, 93, 639, 4653, 35169, 272835, 2157759",
    "1, 4, 28, 256, 2716, 31504, 387136, 4951552, 65218204",
    "1, 5, 45, 545, 7885, 127905, 2241225, 41467725, 798562125",
    "1, 6, 66, 996, 18306, 384156, 8848236, 218040696, 5651108226",
];
const D4: [&str; 5] = [
    "1, 2, 5, 14, 42, 132, 429, 1430, 4862",
    "1, 3, 12, 57, 303, 1743, 10629, 67791, 448023",
    "1, 4, 22, 148, 1144, 9784, 90346, 885868, 9115276",
    "1, 5, 35, 305, 3105, 35505, 444225, 5970725, 85068365",
    "1, 6, 51, 546, 6906, 99156, 1573011, 27045906, 496875786",
];
const D6: [&str; 3] = [
    "1, 2, 14/3, 12, 33, 286/3, 286, 884, 8398/3",
    "1, 3, 11, 139/3, 216, 1088, 5825, 32763, 191935",
    "1, 4, 20, 352/3, 2330/3, 16952/3, 133084/3, 370752, 3265208",
];

fn c1(c: &mut Checker) -> Result<()> {
    for (nu, table) in [(0u32, &D2[..]), (1, &D4[..]), (2, &D6[..])] {
        for (i, r) in table.iter().enumerate() {
            let n = i as u32 + 2;
            c.eq(&format!("d={} n={n}", 2 * nu + 2), moment_row(n, HalfInt::int(nu), 8)?, row(r)?);
        }
    }
    Ok(())
}

fn c2(c: &mut Checker) -> Result<()> {
    for k in 0..=10u32 {
        let catalan = BigRat::from_integer(binomial(2 * k as u64 + 2, k as u64 + 1)) / int(k as i64 + 2);
        c.eq(&format!("W2(1;{})", 2 * k), even_moment_conv(2, HalfInt::int(1), k)?, catalan);
    }
    c.eq("Narayana A(1)^3 row sums", narayana_power_rowsums(HalfInt::int(1), 3, 11)?, moment_row(4, HalfInt::int(1), 10)?);
    Ok(())
}

fn c3(c: &mut Checker) -> Result<()> {
    for n in 1..=6u32 {
        for nu in 0..=3u32 {
            let conv = moment_row(n, HalfInt::int(nu), 12)?;
            let multi: Vec<BigRat> =
                (0..=12).map(|k| even_moment_multinomial(n, HalfInt::int(nu), k)).collect::<Result<_>>()?;
            c.eq(&format!("multinomial = convolution n={n} nu={nu}"), multi, conv);
        }
    }
    for nu in 0..=3u32 {
        let v = HalfInt::int(nu);
        c.ok(|| format!("rec3 nu={nu}"), validate_recursion_w3(v, 12)?);
        c.ok(|| format!("rec4 nu={nu}"), validate_recursion_w4(v, 12)?);
        c.ok(|| format!("W5 four-term nu={nu}"), validate_recursion_w5(v, 12)?);
    }
    Ok(())
}

fn c4(c: &mut Checker) -> Result<()> {
    let q2 = LaurentPoly::from_coeffs(&row("1/6, -5/6, 1, 1/3, 1")?);
    c.eq("q_2", gf3_principal_part(2, 10)?.printed, q2);
    for nu in 0..=3u32 {
        c.eq(&format!("tail nu={nu}"), gf3_principal_part(nu, 10)?.tail, moment_row(3, HalfInt::int(nu), 10)?);
    }
    Ok(())
}

fn c5(c: &mut Checker) -> Result<()> {
    let rows = [
        (0u32, "1, 3, 15, 93, 639, 4653, 35169, 272835, 2157759"),
        (1, "1, -2, -2, -6, -24, -114, -606, -3486, -21258"),
        (2, "1, -5, 6, 2, 6, 18, 66, 278, 1296"),
        (3, "1, -15/2, 21, -20, 0, -9, -20, -60, -210"),
    ];
    for (nu, r) in rows {
        c.eq(&format!("V3 d={}", 2 * nu + 2), residues_v3(HalfInt::int(nu), 8).values, row(r)?);
    }
    c.eq("V3(3;4)", residues_v3(HalfInt::int(3), 4).values[4].clone(), int(0));
    let spec = QuadSpec::default();
    for nu in 0..=2u32 {
        let seq = residues_v3(HalfInt::int(nu), 2);
        for m in 0..=2u32 {
            let q = residue_quad(3, HalfInt::int(nu), m, &spec)?.value;
            c.close(&format!("residue nu={nu} m={m}"), q, seq.residue(m as usize), 1e-6);
        }
    }
    Ok(())
}

fn combo_check(c: &mut Checker, label: &str, got: &ConstCombo, want: [BigRat; 2], n: u32, nu: u32, s: i64) -> Result<()> {
    c.eq(&format!("{label} coefficients"), got.coeffs().to_vec(), want.to_vec());
    let q = moment_quad(n, HalfInt::int(nu), s as f64, &QuadSpec::default())?.value;
    c.close(&format!("{label} vs quadrature"), got.value(), q, 1e-8);
    Ok(())
}

fn c6(c: &mut Checker) -> Result<()> {
    combo_check(c, "W3(0;1)", &w3_odd(0, 1)?, [int(1), int(6)], 3, 0, 1)?;
    combo_check(c, "W3(0;-1)", &w3_odd(0, -1)?, [int(1), int(0)], 3, 0, -1)?;
    combo_check(c, "W3(1;-3)", &w3_odd(1, -3)?, [rat(4, 3), int(-4)], 3, 1, -3)?;
    combo_check(c, "W3(1;-1)", &w3_odd(1, -1)?, [rat(4, 15), int(4)], 3, 1, -1)?;
    combo_check(c, "W3(1;1)", &w3_odd(1, 1)?, [rat(476, 525), rat(52, 7)], 3, 1, 1)?;
    combo_check(c, "W4(0;-1)", &w4_odd(0, -1)?, [int(4), int(0)], 4, 0, -1)?;
    combo_check(c, "W4(0;1)", &w4_odd(0, 1)?, [int(16), int(-48)], 4, 0, 1)?;
    combo_check(c, "W4(1;1)", &w4_odd(1, 1)?, [rat(3_334_144, 165_375), rat(-11_608_064, 165_375)], 4, 1, 1)?;
    c.close("W3(0;1) printed digits", w3_odd(0, 1)?.value(), 1.5746, 5e-5);
    Ok(())
}

fn c7(c: &mut Checker) -> Result<()> {
    let spec = QuadSpec::default();
    for n in 2..=6u32 {
        c.close(&format!("P_{n}(0;1)"), cdf_quad(n, HalfInt::int(0), 1.0, &spec)?.value, 1.0 / (n as f64 + 1.0), 1e-8);
    }
    for nu in 1..=3u32 {
        let q2 = cdf_quad(2, HalfInt::int(nu), 1.0, &spec)?.value;
        c.close(&format!("P_2({nu};1)"), p2_cdf_at1(nu).value(), q2, 1e-8);
        let q3 = cdf_quad(3, HalfInt::int(nu), 1.0, &spec)?.value;
        c.close(&format!("P_3({nu};1)"), p3_cdf_at1_value(nu), q3, 1e-8);
    }
    Ok(())
}

fn c8(c: &mut Checker) -> Result<()> {
    c.close("5F4(16/27)", improbable_5f4()?, 3.0 * PI * PI / 16.0, 1e-10);
    Ok(())
}

fn poly(terms: &[(i32, i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(e, a, b)| (e, rat(a, b))))
}

fn c9(c: &mut Checker) -> Result<()> {
    let p3 = density_odd_dim(3, 1)?;
    c.eq("p3(1/2) breaks", p3.breaks().to_vec(), vec![int(0), int(1), int(3)]);
    c.eq("p3(1/2) pieces", p3.pieces().to_vec(), vec![poly(&[(2, 1, 2)]), poly(&[(1, 3, 4), (2, -1, 4)])]);
    let p4 = density_odd_dim(4, 1)?;
    c.eq("p4(1/2) breaks", p4.breaks().to_vec(), vec![int(0), int(2), int(4)]);
    // x²(8−3x)/16 and x(4−x)²/16
    c.eq(
        "p4(1/2) pieces",
        p4.pieces().to_vec(),
        vec![poly(&[(2, 1, 2), (3, -3, 16)]), poly(&[(1, 1, 1), (2, -1, 2), (3, 1, 16)])],
    );
    for s in -1..=6i64 {
        // 2^{s+3}(2^{s+2}−1)/((s+2)(s+3)(s+4))
        let two = |e: i64| if e >= 0 { int(1i64 << e) } else { rat(1, 1i64 << -e) };
        let want = two(s + 3) * (two(s + 2) - int(1)) / int((s + 2) * (s + 3) * (s + 4));
        let m = odd_dim_moment(4, h(1), s as f64)?;
        let e = m.exact.ok_or_else(|| WalkError::Invariant(format!("no exact value at s = {s}")))?;
        c.ok(|| format!("W4(1/2;{s}) = {e}, want {}", fmt_rat(&want)), e.is_rational() && e.rational == want);
    }
    let m = odd_dim_moment(4, h(1), -2.0)?;
    c.close("W4(1/2;-2) limit", m.value, 2f64.ln(), 1e-15);
    Ok(())
}

fn loglog_slope(f: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<f64> {
    let pts: Vec<(f64, f64)> = (0..=20)
        .map(|i| lo * (hi / lo).powf(i as f64 / 20.0))
        .map(|t| f(t).map(|v| (t.ln(), v.ln())))
        .collect::<Result<_>>()?;
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

fn c10(c: &mut Checker) -> Result<()> {
    let spec = QuadSpec::default();
    let nus = [1u32, 2, 4];
    for &tw in &nus {
        for x in [0.3, 0.9, 1.5, 2.1, 2.7] {
            let q = density_quad(3, h(tw), x, &spec)?.value;
            c.close(&format!("p3({}/2;{x})", tw), p3_hyp(h(tw), x)?, q, 1e-8);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for &tw in &nus {
        for _ in 0..10 {
            let x: f64 = rng.random_range(0.05..2.95);
            c.below(&format!("functional equation nu={}/2 x={x}", tw), p3_functional_equation_residual(h(tw), x)?, 1e-10);
        }
    }
    for &tw in &nus {
        let v = tw as f64 / 2.0;
        let cb = (lgamma(2.0 * v + 1.0) - 2.0 * lgamma(v + 1.0)).exp();
        let s0 = loglog_slope(|t| p3_hyp(h(tw), t), 1e-3, 1e-2)?;
        c.close(&format!("slope at 0, nu={}/2", tw), s0, 2.0 * v + 1.0, 0.01 * (2.0 * v + 1.0));
        let s3 = loglog_slope(|t| p3_hyp(h(tw), 3.0 - t), 1e-3, 1e-2)?;
        c.close(&format!("slope at 3, nu={}/2", tw), s3, 2.0 * v, 0.01 * 2.0 * v);
        let t = 1e-3;
        let pre0 = 2.0 / (3f64.sqrt() * PI) * 3f64.powf(v) / cb;
        c.close(&format!("prefactor at 0, nu={}/2", tw), p3_hyp(h(tw), t)? / (pre0 * t.powf(2.0 * v + 1.0)), 1.0, 0.01);
        let pre3 = 3f64.sqrt() / (2.0 * PI) * 4f64.powf(v) * 3f64.powf(v) / cb;
        c.close(&format!("prefactor at 3, nu={}/2", tw), p3_hyp(h(tw), 3.0 - t)? / (pre3 * t.powf(2.0 * v)), 1.0, 0.01);
    }
    for nu in 1..=3u32 {
        let g = p3_at1(HalfInt::int(nu))?;
        c.close(&format!("p3({nu};1) vs hypergeometric"), g, p3_hyp(HalfInt::int(nu), 1.0)?, 1e-10);
        c.close(&format!("p3({nu};1) vs quadrature"), g, density_quad(3, HalfInt::int(nu), 1.0, &spec)?.value, 1e-10);
    }
    Ok(())
}

fn c11(c: &mut Checker) -> Result<()> {
    let spec = QuadSpec::default();
    for x in [2.5, 3.0, 3.5] {
        let q = density_quad(4, HalfInt::int(1), x, &spec)?.value;
        c.close(&format!("p4(1;{x}) closed vs quadrature"), p4_four_dim_closed(x)?, q, 1e-6);
    }
    let g = 2f64.powf(7.0 / 3.0) * PI / (3.0 * 3f64.sqrt()) / gamma_fn(2.0 / 3.0).powi(6);
    c.close("p4(0;2) gamma product vs closed form", p4_planar_closed(2.0)?, g, 1e-8);
    c.close("p4(0;2) gamma product vs quadrature", density_quad(4, HalfInt::int(0), 2.0, &spec)?.value, g, 1e-8);
    for nu in 0..=2u32 {
        c.below(&format!("p4({nu};2) combination"), p4_at2_combo_check(nu)?, 1e-6);
    }
    for tw in 0..=2u32 {
        for x in [0.5, 1.0, 1.5, 2.5, 3.0, 3.5] {
            c.below(&format!("p4 recursion nu={}/2 x={x}", tw), p4_dim_recursion_check(h(tw), x, P4Method::Auto)?, 1e-6);
        }
    }
    Ok(())
}

fn c12(c: &mut Checker) -> Result<()> {
    let r = p5_taylor(12)?.numeric();
    // within one unit of the last printed digit
    c.close("r5,0", r[0], 0.329934, 1e-6);
    c.close("r5,1", r[1], 0.00661673, 1e-8);
    c.close("r5,2", r[2], 0.000262333, 1e-9);
    let spec = QuadSpec::default();
    let r50 = constant("r50")?;
    c.close("r5,0 vs p4(0;1) quadrature", r[0], density_quad(4, HalfInt::int(0), 1.0, &spec)?.value, 1e-6);
    let want = r50 / 6.0 + 105.0 / (16.0 * PI.powi(4) * r50);
    c.close("p4(1;1) from r5,0", density_quad(4, HalfInt::int(1), 1.0, &spec)?.value, want, 1e-6);
    for x in [0.2, 0.5, 0.8] {
        c.close(&format!("p5(0;{x})"), p5_eval(x)?, density_quad(5, HalfInt::int(0), x, &spec)?.value, 1e-6);
    }
    Ok(())
}

fn c13(c: &mut Checker) -> Result<()> {
    for nu in 0..=2u32 {
        let d = w3_derivative_at0(nu)?;
        c.ok(|| format!("W3'({nu};0) has a stored combination"), d.combo.is_some());
        let num = central_derivative(3, HalfInt::int(nu), 0.0, 1e-3)?;
        c.close(&format!("W3'({nu};0)"), d.value, num, 1e-5);
    }
    Ok(())
}

/// Runs `f(seed)`; on failure reruns once with seed + 1 and reports both.
fn with_rerun(c: &mut Checker, label: &str, seed: u64, f: impl Fn(u64) -> Result<(bool, String)>) -> Result<()> {
    let (first, msg) = f(seed)?;
    if first {
        c.ok(String::new, true);
        return Ok(());
    }
    let (second, msg2) = f(seed + 1)?;
    c.ok(|| format!("{label}: {msg}; rerun: {msg2}"), second);
    Ok(())
}

fn c14(c: &mut Checker) -> Result<()> {
    let w2_4 = rat_to_f64(&even_moment_conv(2, HalfInt::int(1), 2)?);
    let cases = [
        (3u32, 2usize, 1.0, w3_odd(0, 1)?.value()),
        (4, 4, 2.0, 4.0),
        (2, 4, 4.0, w2_4),
        (2, 4, 6.0, 14.0),
    ];
    for (n, dim, s, want) in cases {
        with_rerun(c, &format!("moment n={n} dim={dim} s={s}"), MC_SEED, |seed| {
            let st = estimate_moments(n, dim, &[s], MC_SAMPLES, seed)?;
            let m = &st.moment_estimates[0];
            let pass = (m.mean - want).abs() <= 4.0 * m.std_err;
            Ok((pass, format!("{} ± {} vs {want}", m.mean, m.std_err)))
        })?;
    }
    for (n, dim, src) in [(2u32, 3usize, CdfSource::Closed), (3, 2, CdfSource::Quad), (4, 4, CdfSource::Quad)] {
        let r = ReferenceCdf::new(n, dim, src)?;
        with_rerun(c, &format!("KS n={n} dim={dim}"), MC_SEED, |seed| {
            let o = ks_test(n, dim, MC_SAMPLES, seed, &|x| r.eval(x))?;
            Ok((o.pass, format!("D = {:.3e}, critical {:.3e}", o.statistic, o.critical)))
        })?;
    }
    let wrong = ReferenceCdf::new(3, 3, CdfSource::Closed)?;
    let o = ks_test(3, 2, MC_SAMPLES, MC_SEED, &|x| wrong.eval(x))?;
    c.ok(|| format!("falsification control passed KS: D = {:.3e}", o.statistic), !o.pass);
    Ok(())
}

fn c15(c: &mut Checker) -> Result<()> {
    let a = gf_check(GfKind::W2, HalfInt::int(1), 0.05, 40)?;
    c.below("w2 nu=1 x=0.05", a.residual, 1e-10);
    let b = gf_check(GfKind::W3, HalfInt::int(2), 0.05, 40)?;
    c.below("w3 nu=2 x=0.05", b.residual, 1e-8);
    let d = gf_check(GfKind::W4Dim4, HalfInt::int(1), 0.02, 40)?;
    c.below("w4dim4 x=0.02", d.residual, 1e-8);
    Ok(())
}
