use barnesbeta::identities::{chi, identity_residual, p_formula, phi, psi, shintani_log_product, GammaIdentity, IdentityKnobs};
use barnesbeta::multigamma::log_gamma;
use barnesbeta::quad::{integrate, QuadratureConfig};
use barnesbeta::series::GammaParams;
use num_complex::Complex;

fn c(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

#[test]
fn scaling_by_one_is_exact() {
    let p = GammaParams::new(vec![1.0]).unwrap();
    let k = IdentityKnobs { kappa: 1.0, ..IdentityKnobs::default() };
    let r = identity_residual(GammaIdentity::Scaling, &p, &k).unwrap();
    assert!(r.residual < 1e-15, "{r:?}");
}

#[test]
fn multiplication_two_unit_periods() {
    let p = GammaParams::new(vec![1.0, 1.0]).unwrap();
    let k = IdentityKnobs { k: 2, w_grid: vec![c(1.0)], ..IdentityKnobs::default() };
    assert!(identity_residual(GammaIdentity::Multiplication, &p, &k).unwrap().residual < 1e-7);
}

#[test]
fn scaling_two_periods() {
    let p = GammaParams::new(vec![1.0, 2.0]).unwrap();
    let k = IdentityKnobs { kappa: 2.0, w_grid: vec![c(1.5)], ..IdentityKnobs::default() };
    assert!(identity_residual(GammaIdentity::Scaling, &p, &k).unwrap().residual < 1e-8);
}

#[test]
fn functional_equation_three_periods() {
    let p = GammaParams::new(vec![1.0, 1.5, 2.2]).unwrap();
    let r = identity_residual(GammaIdentity::FunctionalEq, &p, &IdentityKnobs::default()).unwrap();
    assert_eq!(r.points_tested, 12);
    assert!(r.residual < 1e-8);
}

/// `Ψ_{M+1}(x,y)` is a polynomial in `x` of degree `M+1`: the `(M+2)`-th finite
/// difference vanishes while the `(M+1)`-th does not.
#[test]
fn psi_polynomial_degree() {
    for a in [vec![1.0], vec![1.0, 2.0]] {
        let p = GammaParams::new(a).unwrap();
        let m = p.M();
        let y = c(0.9);
        let vals: Vec<Complex<f64>> = (0..m + 3).map(|k| psi(&p, c(0.5 + 0.25 * k as f64), y).unwrap()).collect();
        let diff = |order: usize| {
            let mut v = vals.clone();
            for _ in 0..order {
                v = v.windows(2).map(|w| w[1] - w[0]).collect();
            }
            v[0].norm()
        };
        assert!(diff(m + 2) < 1e-10, "degree above M+1");
        assert!(diff(m + 1) > 1e-6, "degree below M+1");
    }
}

#[test]
fn shintani_product_empty_at_equal_anchor() {
    let cfg = QuadratureConfig::default();
    let p = GammaParams::new(vec![1.0]).unwrap();
    let v = shintani_log_product(&p, c(1.3), c(1.3), 1.0, 16, 6, &cfg).unwrap();
    assert!(v.value.norm() < 1e-15);
    let ch = chi(&p, c(1.3), c(1.0), &cfg).unwrap().value - chi(&p, c(1.3), c(1.0), &cfg).unwrap().value;
    assert_eq!(ch, c(0.0));
}

#[test]
fn shintani_gamma_two_from_one() {
    let p = GammaParams::new(vec![1.0]).unwrap();
    let r = identity_residual(GammaIdentity::ShintaniGamma, &p, &IdentityKnobs::default()).unwrap();
    assert!(r.residual < 1e-5, "{r:?}");
}

#[test]
fn phi_pieces_are_finite_for_two_periods() {
    let cfg = QuadratureConfig::default();
    let p = GammaParams::new(vec![1.0, 2.0]).unwrap();
    let v = phi(&p, c(1.1), c(0.5), 0.7, &cfg).unwrap();
    assert!(v.re.is_finite() && v.im.is_finite());
    let pf = p_formula(&p, c(1.1), 0.7, &cfg).unwrap();
    assert!(pf.value.re.is_finite());
    let ch = chi(&p, c(0.5), c(0.7), &cfg).unwrap();
    assert!(ch.value.re.is_finite() && ch.est_error < 1e-6);
}

#[test]
fn log_gamma_matches_integral_of_its_kernel_derivative() {
    // d/dw L₁(w|1) = ψ(w) = ∫₀^∞ (e^{−t}/t − e^{−wt}/(1−e^{−t})) dt
    let cfg = QuadratureConfig::default();
    let p = GammaParams::new(vec![1.0]).unwrap();
    let w = 1.7;
    let h = 1e-4;
    let d = (log_gamma(&p, c(w + h), &cfg).unwrap().value - log_gamma(&p, c(w - h), &cfg).unwrap().value) / (2.0 * h);
    let (digamma, _) = integrate(
        |t: f64| c((-t).exp() / t - (-w * t).exp() / (-(-t).exp_m1())),
        &[1e-12, 1.0, 10.0, 60.0],
        &cfg,
        "digamma",
    )
    .unwrap();
    assert!((d - digamma).norm() < 1e-6, "{d} vs {digamma}");
}
