use barnesbeta::multigamma::{barnes_g, gamma1_closed, ln_barnes_g, log_gamma, log_gamma_asymptotic, log_multigamma, zeta_direct};
use barnesbeta::quad::QuadratureConfig;
use barnesbeta::series::GammaParams;
use num_complex::Complex;

fn c(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
// ζ(3), mpmath
const ZETA3: f64 = 1.202_056_903_159_594_3;

#[test]
fn zero_periods_is_reciprocal() {
    let cfg = QuadratureConfig::default();
    let v = log_multigamma(&GammaParams::empty(), c(2.0), &cfg).unwrap().value;
    assert!((v.re + 2f64.ln()).abs() < 1e-15);
}

#[test]
fn one_period_at_one() {
    let cfg = QuadratureConfig::default();
    let p = GammaParams::new(vec![1.0]).unwrap();
    let v = log_gamma(&p, c(1.0), &cfg).unwrap();
    assert!((v.value.re + LN_SQRT_2PI).abs() < 1e-10, "{:?}", v);
}

#[test]
fn closed_form_values() {
    let r = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    assert!((gamma1_closed(1.0, c(1.0)).unwrap().re - r).abs() < 1e-15);
    assert!((gamma1_closed(1.0, c(2.0)).unwrap().re - r).abs() < 1e-15);
    assert!((gamma1_closed(2.0, c(2.0)).unwrap().re - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
}

#[test]
fn two_periods_functional_equation() {
    let cfg = QuadratureConfig::default();
    let p = GammaParams::new(vec![1.0, 1.0]).unwrap();
    let w = c(1.0);
    let lhs = log_gamma(&p, w, &cfg).unwrap().value;
    let rhs = gamma1_closed(1.0, w).unwrap().ln() + log_gamma(&p, w + 1.0, &cfg).unwrap().value;
    assert!((lhs - rhs).norm() < 1e-8);
}

#[test]
fn quadrature_and_asymptotic_agree_far_out() {
    let cfg = QuadratureConfig::default();
    let p = GammaParams::new(vec![1.0, 1.7]).unwrap();
    let w = Complex::new(30.0, 4.0);
    let q = log_gamma(&p, w, &cfg).unwrap().value;
    let a = log_gamma_asymptotic(&p, w).unwrap().value;
    assert!((q - a).norm() < 1e-8 * q.norm());
}

#[test]
fn barnes_g_integers() {
    let cfg = QuadratureConfig::default();
    for (z, g) in [(1.0, 1.0), (2.0, 1.0), (3.0, 1.0), (4.0, 2.0), (5.0, 12.0), (6.0, 288.0)] {
        let v = barnes_g(c(z), &cfg).unwrap().re;
        assert!((v - g).abs() < 1e-10 * g, "G({z}) = {v}");
    }
}

#[test]
fn barnes_g_recursion_off_the_integers() {
    let cfg = QuadratureConfig::default();
    for z in [Complex::new(0.7, 0.0), Complex::new(1.3, 0.8), Complex::new(2.9, -1.1)] {
        let lhs = ln_barnes_g(z + 1.0, &cfg).unwrap();
        let rhs = ln_barnes_g(z, &cfg).unwrap() + barnesbeta::special::ln_gamma(z).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }
}

#[test]
fn barnes_zeta_values() {
    let p0 = GammaParams::<f64>::empty();
    let v = zeta_direct(&p0, c(2.5), c(3.0), 10).unwrap();
    assert!((v.re - 3f64.powf(-2.5)).abs() < 1e-15);
    let p1 = GammaParams::new(vec![1.0]).unwrap();
    assert!((zeta_direct(&p1, c(3.0), c(1.0), 2000).unwrap().re - ZETA3).abs() < 1e-9);
    let p2 = GammaParams::new(vec![1.0, 1.0]).unwrap();
    assert!((zeta_direct(&p2, c(4.0), c(1.0), 400).unwrap().re - ZETA3).abs() < 1e-7);
}

#[test]
fn domain_errors() {
    let cfg = QuadratureConfig::default();
    let p = GammaParams::new(vec![1.0, 2.0]).unwrap();
    assert!(log_gamma(&p, c(-0.5), &cfg).is_err());
    assert!(log_gamma(&p, c(0.0), &cfg).unwrap_err().is_domain());
}

#[test]
fn single_precision_log_gamma() {
    let cfg = QuadratureConfig::<f32>::default();
    let p = GammaParams::new(vec![1.0f32, 2.0]).unwrap();
    let v32 = log_gamma(&p, Complex::new(1.5f32, 0.0), &cfg).unwrap().value.re as f64;
    let v64 = log_gamma(&GammaParams::new(vec![1.0, 2.0]).unwrap(), c(1.5), &QuadratureConfig::default()).unwrap().value.re;
    assert!((v32 - v64).abs() < 1e-4);
}
