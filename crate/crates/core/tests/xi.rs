use barnesbeta::quad::QuadratureConfig;
use barnesbeta::xi::{
    beta_m_delta, c2_mellin, ln_xi_real, s2_delta_mean, s2_delta_transform, t_delta_cumulants, t_delta_laplace, t_delta_sample, theta, theta_minus_one, xi,
    xi_direct, zeta, zeta_complex, S2Transform, TDeltaParams, XiSeriesKnobs,
};
use barnesbeta::mellin::{levy_density, mass_at_one, MassMethod};
use barnesbeta::sampling::RngStream;
use num_complex::Complex;
use std::f64::consts::PI;

fn c(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

// mpmath jtheta(3, 0, e^{−π})
const THETA_1: f64 = 1.086_434_811_213_31;

#[test]
fn zeta_values() {
    assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
    assert!((zeta(0.0f64).unwrap() + 0.5).abs() < 1e-14);
    assert!((zeta(3.0f64).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-13);
    assert!(zeta(1.0).is_err());
    // ζ(−1) = −1/12
    assert!((zeta_complex(c(-1.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-13);
}

#[test]
fn xi_values() {
    assert!((xi(c(2.0)).unwrap().re - PI / 6.0).abs() < 1e-14);
    assert!((xi(c(0.0)).unwrap().re - 0.5).abs() < 1e-14);
    assert!((xi(c(1.0)).unwrap().re - 0.5).abs() < 1e-14);
    // ξ(4) = ½·4·3 · π^{−2} Γ(2) · π⁴/90 = π²/15
    assert!((xi(c(4.0)).unwrap().re - PI * PI / 15.0).abs() < 1e-14);
    for s in [Complex::new(0.3, 4.0), Complex::new(2.5, -1.0)] {
        assert!((xi(s).unwrap() - xi(1.0 - s).unwrap()).norm() < 1e-12 * xi(s).unwrap().norm());
        assert!((xi(s).unwrap() - xi_direct(s).unwrap()).norm() < 1e-10 * xi(s).unwrap().norm());
    }
    assert!((ln_xi_real(40.0).unwrap() - xi(c(40.0)).unwrap().re.ln()).abs() < 1e-10);
}

#[test]
fn theta_values() {
    assert!((theta(1.0, None).unwrap() - THETA_1).abs() < 1e-14);
    assert!((theta(1.0, Some(10)).unwrap() - THETA_1).abs() < 1e-8);
    // θ(t) = t^{−1/2} θ(1/t)
    let t = 0.37f64;
    assert!((theta(t, None).unwrap() - theta(1.0 / t, None).unwrap() / t.sqrt()).abs() < 1e-13);
    assert!((theta_minus_one(6.0).unwrap() - 2.0 * (-6.0 * PI).exp()).abs() < 1e-20);
    assert!(theta(0.0, None).is_err() && theta(1.0, Some(0)).is_err());
}

#[test]
fn beta_m_delta_layout() {
    let p = beta_m_delta(1, 0.3).unwrap();
    let h = PI * PI / 2.0;
    assert_eq!(p.a.a, vec![h, h]);
    assert_eq!(p.b, vec![2.0 * h, 2.0 * h, 2.0 * h]);
    assert_eq!(p.b0, 0.3);
    for m in 1..4 {
        for t in [0.3f64, 1.0, 2.5] {
            let d = 0.4f64;
            let nu = levy_density(&beta_m_delta(m, d).unwrap(), t);
            let expect = (-d * t).exp() * theta(PI * t / 2.0, Some(m)).unwrap() / t;
            assert!((nu - expect).abs() < 1e-10 * expect, "M={m} t={t}: {nu} vs {expect}");
        }
    }
    let cfg = QuadratureConfig::default();
    let mass: Vec<f64> = (1..4).map(|m| mass_at_one(&beta_m_delta(m, 1.0).unwrap(), MassMethod::SnFormula, &cfg).unwrap()).collect();
    assert!(mass[0] > mass[1] && mass[1] > mass[2], "{mass:?}");
}

#[test]
fn c2_values() {
    assert!((c2_mellin(c(0.0)).unwrap().re - 1.0).abs() < 1e-14);
    let q1 = 7.5 * (2.0 / PI).powi(2) * xi(c(4.0)).unwrap().re;
    assert!((c2_mellin(c(1.0)).unwrap().re - q1).abs() < 1e-14);
    // removable point at q = −1
    let at = c2_mellin(c(-1.0)).unwrap().re;
    assert!((at - 2f64.ln()).abs() < 1e-13);
    assert!((c2_mellin(c(-1.0 + 1e-6)).unwrap().re - at).abs() < 1e-5);
}

#[test]
fn s2_transforms() {
    let knobs = XiSeriesKnobs::default();
    // δ = 0, q = 1: [√2/sinh√2]²
    let exact = 2.0 / 2f64.sqrt().sinh().powi(2);
    assert!((s2_delta_transform(S2Transform::LaplaceClosed, c(1.0), 0.0, &knobs).unwrap().re - exact).abs() < 1e-14);
    for d in [0.0, 0.5, 1.0] {
        for q in [0.3, 1.0, 2.5] {
            let a = s2_delta_transform(S2Transform::LaplaceClosed, c(q), d, &knobs).unwrap();
            let b = s2_delta_transform(S2Transform::LaplaceLevy, c(q), d, &knobs).unwrap();
            assert!((a - b).norm() < 1e-6, "δ={d} q={q}");
        }
        assert!((s2_delta_transform(S2Transform::LaplaceClosed, c(0.0), d, &knobs).unwrap().re - 1.0).abs() < 1e-14);
        let mean = s2_delta_transform(S2Transform::MellinSeries, c(1.0), d, &knobs).unwrap().re;
        assert!((mean - s2_delta_mean(d)).abs() < 1e-10 * mean, "δ={d}");
    }
    assert!(s2_delta_transform(S2Transform::MellinSeries, c(1.0), 5.0, &knobs).is_err());
}

#[test]
fn t_delta_laplace_vs_sampler() {
    let cfg = QuadratureConfig::default();
    let p = TDeltaParams::new(0.2, 2000, true).unwrap();
    let xs = t_delta_sample(p, &mut RngStream::new(17, 0).rng(), 100_000).unwrap();
    let n = xs.len() as f64;
    let v: Vec<f64> = xs.iter().map(|x| (-x).exp()).collect();
    let mean = v.iter().sum::<f64>() / n;
    let se = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt();
    let lap = t_delta_laplace(c(1.0), 0.2, &cfg).unwrap().re;
    assert!((mean - lap).abs() < 3.0 * se + 1e-4, "{mean} ± {se} vs {lap}");
    let k = t_delta_cumulants(&p, true);
    let m1 = xs.iter().sum::<f64>() / n;
    let sd = (k[1] / n).sqrt();
    assert!((m1 - k[0]).abs() < 3.0 * sd, "{m1} vs {}", k[0]);
}

#[test]
fn t_delta_rejects_bad_delta() {
    assert!(TDeltaParams::new(0.0, 100, true).is_err());
    assert!(t_delta_laplace(c(1.0), -0.1, &QuadratureConfig::default()).is_err());
}
