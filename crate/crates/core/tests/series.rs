use barnesbeta::series::{b22_closed, bernoulli, bernoulli_poly, series_mul, series_of_factor, GammaParams, PowerSeries};
use num_complex::Complex;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn factor_series_low_orders() {
    assert_eq!(series_of_factor(1.0, 0).unwrap().coeffs, vec![1.0]);
    let s = series_of_factor(1.0, 2).unwrap().coeffs;
    assert!(close(s[0], 1.0, 1e-15) && close(s[1], 0.5, 1e-15) && close(s[2], 1.0 / 12.0, 1e-15));
    let s = series_of_factor(2.0, 1).unwrap().coeffs;
    assert!(close(s[0], 0.5, 1e-15) && close(s[1], 0.5, 1e-15));
}

#[test]
fn truncated_products() {
    let one = PowerSeries::new(vec![1.0]);
    assert_eq!(series_mul(&one, &one).coeffs, vec![1.0]);
    let u = PowerSeries::new(vec![1.0, 1.0]);
    assert_eq!(series_mul(&u, &u).coeffs, vec![1.0, 2.0]);
    let a = PowerSeries::new(vec![1.0, 0.5, 1.0 / 12.0]);
    let b = PowerSeries::new(vec![1.0, -1.0, 0.5]);
    let c = series_mul(&a, &b).coeffs;
    assert!(close(c[0], 1.0, 1e-15) && close(c[1], -0.5, 1e-15) && close(c[2], 1.0 / 12.0, 1e-15));
}

#[test]
fn bernoulli_numbers_are_exact() {
    use num_traits::ToPrimitive;
    assert_eq!(bernoulli(1).unwrap().to_f64().unwrap(), -0.5);
    assert_eq!(bernoulli(2).unwrap().to_f64().unwrap(), 1.0 / 6.0);
    assert_eq!(bernoulli(3).unwrap().to_f64().unwrap(), 0.0);
    // B_12 = −691/2730
    assert_eq!(*bernoulli(12).unwrap().numer(), (-691).into());
    assert_eq!(*bernoulli(12).unwrap().denom(), 2730.into());
}

#[test]
fn b22_at_unit_periods() {
    let p = GammaParams::new(vec![1.0, 1.0]).unwrap();
    for x in [0.0, 0.3, 1.7] {
        let v = bernoulli_poly(&p, 2, x).unwrap().re;
        assert!(close(v, x * x - 2.0 * x + 5.0 / 6.0, 1e-13), "{x}: {v}");
    }
    assert!(close(bernoulli_poly(&p, 2, 0.0).unwrap().re, 5.0 / 6.0, 1e-14));
}

#[test]
fn b22_closed_form_matches_engine_for_general_periods() {
    for (a1, a2) in [(1.0f64, 2.0f64), (0.3, 4.1), (2.5, 2.5)] {
        let p = GammaParams::new(vec![a1, a2]).unwrap();
        for x in [Complex::new(0.1, 0.0), Complex::new(-1.2, 0.7), Complex::new(3.0, -2.0)] {
            let e = bernoulli_poly(&p, 2, x).unwrap();
            let c = b22_closed(a1, a2, x);
            assert!((e - c).norm() <= 1e-12 * c.norm().max(1.0));
        }
    }
}

#[test]
fn order_zero_and_one() {
    let p = GammaParams::new(vec![0.5, 2.0, 3.0]).unwrap();
    assert!(close(bernoulli_poly(&p, 0, 1.3).unwrap().re, 1.0 / 3.0, 1e-15));
    for a in [0.5, 1.0, 3.0] {
        let p = GammaParams::new(vec![a]).unwrap();
        for x in [0.0, 0.7, 2.2] {
            assert!(close(bernoulli_poly(&p, 1, x).unwrap().re, 0.5 - x / a, 1e-14));
        }
    }
}

#[test]
fn rejects_nonpositive_periods() {
    assert!(GammaParams::new(vec![1.0, 0.0]).is_err());
    assert!(GammaParams::new(vec![-1.0]).is_err());
    assert!(GammaParams::new(vec![f64::NAN]).is_err());
}

#[test]
fn single_precision_engine() {
    let p = GammaParams::<f32>::new(vec![1.0, 1.0]).unwrap();
    let v = bernoulli_poly(&p, 2, 0.5f32).unwrap().re;
    assert!((v - (0.25 - 1.0 + 5.0 / 6.0)).abs() < 1e-5);
}
