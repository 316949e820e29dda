use std::f64::consts::PI;

use proptest::prelude::*;
use walker_core::exact_moments::even_moment_conv;
use walker_core::numcore::{rat_to_f64, HalfInt};
use walker_core::quadrature::*;
use walker_core::specfun::{constant, gamma_fn};
use walker_core::WalkError;

fn spec() -> QuadSpec {
    QuadSpec::default()
}

fn h(twice: u32) -> HalfInt {
    HalfInt::from_twice(twice)
}

#[test]
fn jnu_examples() {
    assert_eq!(jnu(h(4), 0.0), 1.0);
    assert!(jnu(h(1), PI).abs() < 1e-15);
    assert!((jnu(h(2), 1.0) - 2.0 * bessel_j(h(2), 1.0)).abs() < 1e-15);
    // series and asymptotic regimes overlap smoothly around the switch point
    for &t in &[24.999, 25.001] {
        let a = jnu(h(2), t);
        let b = 2.0 * bessel_j(h(2), t) / t;
        assert!((a - b).abs() < 1e-15);
    }
    let below = jnu(h(2), 24.999_999);
    let above = jnu(h(2), 25.000_001);
    assert!((below - above).abs() < 1e-7);
}

#[test]
fn boosted_integrand_at_zero_matches_moments() {
    for n in 2..=5u32 {
        for twice in 0..=4u32 {
            for k in 0..=4u32 {
                let g = BoostedIntegrand::new(n, h(twice), k);
                let v = h(twice).to_f64();
                let w = rat_to_f64(&even_moment_conv(n, h(twice), k).unwrap());
                let want = w * gamma_fn(v + 1.0) / (gamma_fn(v + k as f64 + 1.0) * 2f64.powi(k as i32));
                assert!((g.value_at_zero() - want).abs() < 1e-13 * want.abs().max(1.0));
                assert!((g.eval(1e-9) - want).abs() < 1e-9 * want.abs().max(1.0));
            }
        }
    }
    assert_eq!(BoostedIntegrand::new(4, h(0), 3).term_count(), 20);
}

#[test]
fn boosted_integrand_is_the_derivative() {
    // G_{k+1}(t) = −(1/t) d/dt G_k(t)
    let g0 = BoostedIntegrand::new(3, h(2), 1);
    let g1 = BoostedIntegrand::new(3, h(2), 2);
    for &t in &[0.7, 3.0, 11.0, 30.0] {
        let e = 1e-5;
        let d = (g0.eval(t + e) - g0.eval(t - e)) / (2.0 * e);
        assert!((g1.eval(t) + d / t).abs() < 1e-8, "t={t}");
    }
}

#[test]
fn density_examples() {
    let r = density_quad(4, h(1), 1.0, &spec()).unwrap();
    assert!((r.value - 5.0 / 16.0).abs() < 1e-8);
    let r = density_quad(3, h(2), 1.0, &spec()).unwrap();
    assert!((r.value - 4.0 / (PI * PI)).abs() < 1e-8);
    let r = density_quad(2, h(2), 1.0, &spec()).unwrap();
    assert!((r.value - 3f64.sqrt() / PI).abs() < 1e-8);
    assert!(matches!(density_quad(3, h(0), 3.5, &spec()), Err(WalkError::Domain(_))));
}

#[test]
fn density_log_singularity_is_reported() {
    assert!(matches!(density_quad(3, h(0), 1.0, &spec()), Err(WalkError::Divergent(_))));
}

#[test]
fn cdf_examples() {
    assert!((cdf_quad(3, h(0), 1.0, &spec()).unwrap().value - 0.25).abs() < 1e-8);
    let want = 1.0 / 3.0 - 3f64.sqrt() / (4.0 * PI);
    assert!((cdf_quad(2, h(2), 1.0, &spec()).unwrap().value - want).abs() < 1e-8);
    for n in 2..=5u32 {
        for twice in [0u32, 1, 2] {
            let r = cdf_quad(n, h(twice), n as f64, &spec()).unwrap();
            assert!((r.value - 1.0).abs() < 1e-8, "n={n} twice={twice}");
        }
    }
    let mut last = 0.0;
    for i in 1..12 {
        let v = cdf_quad(4, h(1), i as f64 / 3.0, &spec()).unwrap().value;
        assert!(v >= last - 1e-12);
        last = v;
    }
}

#[test]
fn moment_examples() {
    assert!((moment_quad(5, h(0), 2.0, &spec()).unwrap().value - 5.0).abs() < 1e-8);
    let a = constant("A").unwrap();
    let w311 = 476.0 / 525.0 * a + 52.0 / 7.0 / (PI * PI * a);
    assert!((moment_quad(3, h(2), 1.0, &spec()).unwrap().value - w311).abs() < 1e-8);
    // two steps in the plane: Γ(s+1)/Γ(s/2+1)²
    let s = -0.5;
    let w2 = gamma_fn(s + 1.0) / gamma_fn(s / 2.0 + 1.0).powi(2);
    assert!((moment_quad(2, h(0), s, &spec()).unwrap().value - w2).abs() < 1e-8);
    assert!(matches!(moment_quad(2, h(0), -1.0, &spec()), Err(WalkError::Domain(_))));
    assert!(matches!(moment_quad(5, h(0), -2.0, &spec()), Err(WalkError::Pole(_))));
}

#[test]
fn even_moments_from_quadrature() {
    for n in 2..=6u32 {
        for nu in 0..=2u32 {
            for k in 1..=4u32 {
                let exact = rat_to_f64(&even_moment_conv(n, HalfInt::int(nu), k).unwrap());
                let q = moment_quad(n, HalfInt::int(nu), 2.0 * k as f64, &spec()).unwrap();
                assert!((q.value - exact).abs() < 1e-8 * exact.max(1.0), "n={n} nu={nu} k={k}: {} vs {exact}", q.value);
            }
        }
    }
}

#[test]
fn residue_examples() {
    let base = 2.0 / (3f64.sqrt() * PI);
    assert!((residue_quad(3, h(0), 0, &spec()).unwrap().value - base).abs() < 1e-8);
    let want = base * 1.5 * -5.0 / 9.0;
    assert!((residue_quad(3, h(4), 1, &spec()).unwrap().value - want).abs() < 1e-8);
    let r50 = constant("r50").unwrap();
    assert!((residue_quad(5, h(0), 0, &spec()).unwrap().value - r50).abs() < 1e-6);
    assert!(matches!(residue_quad(4, h(0), 1, &spec()), Err(WalkError::Divergent(_))));
}

#[test]
fn euler_zone_rule_agrees() {
    let s = QuadSpec { tail: TailRule::EulerZones, tol: 1e-9, ..QuadSpec::default() };
    let r = density_quad(4, h(1), 1.0, &s).unwrap();
    assert!((r.value - 5.0 / 16.0).abs() < 1e-7, "{}", r.value);
    let r = cdf_quad(2, h(0), 1.0, &s).unwrap();
    assert!((r.value - 1.0 / 3.0).abs() < 1e-7, "{}", r.value);
}

#[test]
fn boost_stability() {
    for k in 1..=4u32 {
        let s = QuadSpec { boost_k: Some(k), ..QuadSpec::default() };
        let r = density_quad(3, h(2), 2.2, &s).unwrap();
        let base = density_quad(3, h(2), 2.2, &spec()).unwrap();
        assert!((r.value - base.value).abs() < 1e-10 + 10.0 * (r.err + base.err), "k={k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn boost_change_is_within_error(x in 0.2f64..2.8, twice in 0u32..=3, k in 1u32..=3) {
        prop_assume!((x - 1.0).abs() > 1e-3);
        let a = density_quad(3, h(twice), x, &QuadSpec { boost_k: Some(k), ..QuadSpec::default() }).unwrap();
        let b = density_quad(3, h(twice), x, &QuadSpec { boost_k: Some(k + 1), ..QuadSpec::default() }).unwrap();
        prop_assert!((a.value - b.value).abs() < 1e-9 + 10.0 * (a.err + b.err));
    }
}
