//! Barnes multiple log-gamma `L_M(w|a)`, the Γ₁ closed form, Barnes G and the
//! direct Barnes zeta series.
//!
//! `L_M` is evaluated from its Malmstén-type integral split at a point `t_s`:
//! below `t_s` the integrand is replaced by its Taylor series and integrated
//! termwise, the subtracted power terms are integrated in closed form on
//! `[t_s, ∞)`, and what remains is a smooth exponentially decaying integral done by
//! adaptive Gauss–Legendre up to `T` plus an `E₁` multi-index expansion beyond.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex;

pub use crate::quad::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quad::{breakpoints, integrate};
use crate::scalar::{cx, factorial, harmonic, int, is_finite_c, lit, to_f64, Real};
use crate::series::{bernoulli_coeffs, GammaParams, MAX_BERNOULLI};
use crate::special::{e1, gamma, ln_gamma, EULER_GAMMA};

/// `L_M(w|a)` with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGammaValue<T> {
    pub value: Complex<T>,
    pub est_error: T,
}

/// Taylor terms kept beyond order `M` in the near-zero expansion.
const NEAR_TERMS: usize = 44;

/// Lower split: keeps `a_j t` and `w t` well inside the Taylor disc.
pub(crate) fn near_split<T: Real>(a_max: T, scales: &[T]) -> T {
    let mut ts = T::one();
    if a_max > T::zero() {
        ts = ts.min(lit::<T>(2.2) / a_max);
    }
    for &s in scales {
        if s > T::zero() {
            ts = ts.min(lit::<T>(2.0) / s);
        }
    }
    ts
}

/// Enumerates `Σ_k E₁((w + k·a)T)` over multi-indices with `k·a ≤ budget`.
fn tail_sum<T: Real>(a: &[T], w: Complex<T>, t_end: T, budget: T, max_degree: usize) -> Complex<T> {
    fn rec<T: Real>(a: &[T], shift: T, left: T, deg: usize, w: Complex<T>, t_end: T, acc: &mut Complex<T>) {
        match a.split_first() {
            None => *acc = *acc + e1((w + shift) * t_end),
            Some((&aj, rest)) => {
                let mut k = 0;
                while k <= deg && int::<T>(k as i64) * aj <= left {
                    let used = int::<T>(k as i64) * aj;
                    rec(rest, shift + used, left - used, deg - k, w, t_end, acc);
                    k += 1;
                }
            }
        }
    }
    let mut acc = cx(T::zero());
    rec(a, T::zero(), budget, max_degree, w, t_end, &mut acc);
    acc
}

/// `L_M(w|a)` by quadrature of the Malmstén-type formula; `−log w` exactly when `M = 0`.
pub fn log_gamma<T: Real>(params: &GammaParams<T>, w: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    cfg.validate()?;
    if !is_finite_c(w) || !(w.re > T::zero()) {
        return Err(Error::domain(format!("log_gamma needs Re(w) > 0, got {w}")));
    }
    let m = params.M();
    if m == 0 {
        return Ok(LogGammaValue { value: -w.ln(), est_error: T::zero() });
    }
    let ts = near_split(params.max_period(), &[w.norm()]);
    let order = m + NEAR_TERMS;
    // coefficients in u = t/t_s: d_j = c_j t_s^{j−M}, which stay finite when |w| is huge
    let d = bernoulli_coeffs(&params.scaled(ts), w * ts, order)?;
    let ln_ts = ts.ln();

    // ∫_0^{t_s} of the Taylor remainder above t^M, and the c_M(γ + ln t_s) piece
    let mut near = d[m] * (lit::<T>(EULER_GAMMA) + ln_ts);
    for (j, dj) in d.iter().enumerate().skip(m + 1) {
        near = near + *dj / int::<T>((j - m) as i64);
    }
    let series_err = d[order].norm() * lit(4.0);

    // ∫_{t_s}^∞ of the subtracted powers t^{k-M-1}, k < M
    let mut power = cx(T::zero());
    for (k, dk) in d.iter().enumerate().take(m) {
        power = power + *dk / int::<T>((m - k) as i64);
    }

    let t_end = cfg
        .split_point
        .unwrap_or_else(|| lit::<T>(40.0) / w.re.min(T::one()))
        .max(ts * lit(2.0));
    let width = if w.im != T::zero() { T::PI() / w.im.abs() } else { t_end };
    let brk = breakpoints(ts, t_end, width);
    let a = &params.a;
    let integrand = |t: T| {
        let den = a.iter().fold(t, |p, &aj| p * -(-aj * t).exp_m1());
        (-w * t).exp() / den
    };
    let (body, qerr) = integrate(integrand, &brk, cfg, "L_M quadrature")?;

    let budget = lit::<T>(30.0) / t_end;
    let tail = tail_sum(a, w, t_end, budget, cfg.tail_index_cutoff);
    let tail_err = {
        let den = a.iter().fold(T::one(), |p, &aj| p * -(-aj * t_end).exp_m1());
        (-(w.re * t_end) - lit(30.0)).exp() / (w.re * t_end * den)
    };

    let value = near + body + tail - power;
    let est_error = qerr + tail_err + series_err;
    if !is_finite_c(value) || est_error > cfg.target(value.norm()) {
        return Err(Error::Accuracy { what: "L_M".into(), estimate: to_f64(value.re), est_error: to_f64(est_error) });
    }
    Ok(LogGammaValue { value, est_error })
}

/// Large-`|w|` expansion `L_M(w) ~ Σ_{n≤M} β_n (−w)^{M−n}/(M−n)! (H_{M−n} − log w)
/// + Σ_{n>M} β_n Γ(n−M) w^{M−n}`, with `β_n` the Taylor coefficients of `f`.
///
/// The series is asymptotic; summation stops at the smallest term, which is also the
/// error estimate.
pub fn log_gamma_asymptotic<T: Real>(params: &GammaParams<T>, w: Complex<T>) -> Result<LogGammaValue<T>> {
    if !is_finite_c(w) || !(w.re > T::zero()) {
        return Err(Error::domain(format!("log_gamma needs Re(w) > 0, got {w}")));
    }
    let m = params.M();
    let beta = params.kernel_series(MAX_BERNOULLI)?.coeffs;
    let ln_w = w.ln();
    let mut acc = cx(T::zero());
    let mut pw = cx::<T>(T::one());
    for j in 0..=m {
        // j = M − n
        let h = cx::<T>(harmonic::<T>(j)) - ln_w;
        acc = acc + pw * beta[m - j] / factorial::<T>(j) * h;
        pw = pw * -w;
    }
    let winv = w.inv();
    let mut wp = cx::<T>(T::one());
    let mut gam = T::one();
    let mut last = T::infinity();
    let mut err = T::infinity();
    for n in m + 1..beta.len() {
        wp = wp * winv;
        if n > m + 1 {
            gam = gam * int((n - m - 1) as i64);
        }
        let term = wp * beta[n] * gam;
        let size = term.norm();
        if beta[n] == T::zero() {
            continue;
        }
        if size > last {
            break;
        }
        acc = acc + term;
        last = size;
        err = size;
        if size <= T::epsilon() * acc.norm() {
            break;
        }
    }
    Ok(LogGammaValue { value: acc, est_error: err + acc.norm() * T::epsilon() * lit(8.0) })
}

/// `L_M(w|a)` by the fastest exact route: closed forms for `M ≤ 1`, the asymptotic
/// expansion when it meets the tolerance, quadrature otherwise.
pub fn log_multigamma<T: Real>(params: &GammaParams<T>, w: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    match params.M() {
        0 | 1 if !(w.re > T::zero()) => Err(Error::domain(format!("log_gamma needs Re(w) > 0, got {w}"))),
        0 => Ok(LogGammaValue { value: -w.ln(), est_error: T::zero() }),
        1 => {
            let a = params.a[0];
            let half_ln_2pi = lit::<T>(0.918_938_533_204_672_8);
            let v = (w / a - lit::<T>(0.5)) * a.ln() - half_ln_2pi + ln_gamma(w / a)?;
            Ok(LogGammaValue { value: v, est_error: v.norm() * T::epsilon() * lit(16.0) })
        }
        _ => {
            if w.norm() > lit::<T>(8.0) * params.max_period() * int::<T>(params.M() as i64) {
                let v = log_gamma_asymptotic(params, w)?;
                if v.est_error <= cfg.target(v.value.norm()) {
                    return Ok(v);
                }
            }
            log_gamma(params, w, cfg)
        }
    }
}

type CacheKey = (Vec<i64>, i64, i64, i64, i64);

fn quantize(x: f64) -> i64 {
    (x * 1e14).round() as i64
}

/// `(re, im, est_error)` of a cached value.
type Cache = Mutex<HashMap<CacheKey, (f64, f64, f64)>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// [`log_multigamma`] memoized on `(a, w)` rounded to `1e-14` and the tolerances.
pub fn log_multigamma_cached<T: Real>(params: &GammaParams<T>, w: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    if params.M() <= 1 {
        return log_multigamma(params, w, cfg);
    }
    let key: CacheKey = (
        params.a.iter().map(|&x| quantize(to_f64(x))).collect(),
        quantize(to_f64(w.re)),
        quantize(to_f64(w.im)),
        quantize(to_f64(cfg.abs_tol) * 1e10),
        quantize(to_f64(cfg.rel_tol) * 1e8),
    );
    if let Some(&(re, im, err)) = cache().lock().unwrap().get(&key) {
        return Ok(LogGammaValue { value: Complex::new(lit(re), lit(im)), est_error: lit(err) });
    }
    let v = log_multigamma(params, w, cfg)?;
    let mut guard = cache().lock().unwrap();
    if guard.len() > 200_000 {
        guard.clear();
    }
    guard.insert(key, (to_f64(v.value.re), to_f64(v.value.im), to_f64(v.est_error)));
    Ok(v)
}

/// `Γ₁(w|a) = a^{w/a−1/2} Γ(w/a) / √(2π)`.
pub fn gamma1_closed<T: Real>(a: T, w: Complex<T>) -> Result<Complex<T>> {
    if !(a > T::zero()) {
        return Err(Error::domain(format!("period must be positive, got {a}")));
    }
    let pref = ((w / a - lit::<T>(0.5)) * a.ln()).exp();
    Ok(pref * gamma(w / a)? / (T::TAU()).sqrt())
}

/// `log G(z)` for `Re(z) > 0`, via `L₂(·|1,1)` on `[1,2)` and `G(z+1) = Γ(z)G(z)`.
pub fn ln_barnes_g<T: Real>(z: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    if !is_finite_c(z) || !(z.re > T::zero()) {
        return Err(Error::domain(format!("barnes_g needs Re(z) > 0, got {z}")));
    }
    let mut w = z;
    let mut shift = cx(T::zero());
    while w.re >= lit(2.0) {
        w = w - T::one();
        shift = shift + ln_gamma(w)?;
    }
    if w.re < T::one() {
        shift = shift - ln_gamma(w)?;
        w = w + T::one();
    }
    let p = GammaParams::ones(2);
    let l1 = log_multigamma_cached(&p, cx(T::one()), cfg)?.value;
    let lw = log_multigamma_cached(&p, w, cfg)?.value;
    let ln_2pi = lit::<T>(1.837_877_066_409_345_5);
    Ok((w - T::one()) / lit::<T>(2.0) * ln_2pi + l1 - lw + shift)
}

/// Barnes `G(z)` for `Re(z) > 0`.
pub fn barnes_g<T: Real>(z: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    Ok(ln_barnes_g(z, cfg)?.exp())
}

fn zeta_rec<T: Real>(a: &[T], s: Complex<T>, w: Complex<T>, n: usize) -> (Complex<T>, T) {
    let Some((&am, rest)) = a.split_last() else {
        return ((-s * w.ln()).exp(), T::zero());
    };
    let mut acc = cx(T::zero());
    let mut err = T::zero();
    for k in 0..=n {
        let (v, e) = zeta_rec(rest, s, w + am * int::<T>(k as i64), n);
        acc = acc + v;
        err = err + e;
    }
    // Σ_{k>n} F(k) ≈ ∫_{n+½}^∞ F + F'(n+½)/24, with F(x) = ζ_{M−1}(s, w + x a_M)
    let one = cx::<T>(T::one());
    let x0 = w + am * (int::<T>(n as i64) + lit(0.5));
    let (integral, e1_) = zeta_rec(rest, s - one, x0, n);
    let (deriv, e2_) = zeta_rec(rest, s + one, x0, n);
    let tail = integral / ((s - one) * am) - deriv * s * am / lit::<T>(24.0);
    let (f0, _) = zeta_rec(rest, s, x0, n);
    let next = f0.norm() * (s * (s + one) * (s + one + one)).norm() * am.powi(3) * lit::<T>(7.0 / 5760.0) / x0.norm().powi(3);
    (acc + tail, err + e1_ / ((s - one) * am).norm() + e2_ + next)
}

/// Barnes zeta `ζ_M(s, w|a)` from the defining lattice sum over `[0, n_max]^M`
/// plus a midpoint Euler–Maclaurin tail.
pub fn zeta_direct<T: Real>(params: &GammaParams<T>, s: Complex<T>, w: Complex<T>, n_max: usize) -> Result<Complex<T>> {
    let m = params.M();
    if !(w.re > T::zero()) {
        return Err(Error::domain(format!("zeta_direct needs Re(w) > 0, got {w}")));
    }
    if !(s.re > int::<T>(m as i64 + 1)) && m > 0 {
        return Err(Error::domain(format!("zeta_direct needs Re(s) > M+1, got {s}")));
    }
    if n_max < 10 {
        return Err(Error::domain("zeta_direct needs n_max >= 10"));
    }
    let (v, err) = zeta_rec(&params.a, s, w, n_max);
    let rel_tol = QuadratureConfig::<T>::default().rel_tol;
    if err > rel_tol * v.norm() {
        return Err(Error::Accuracy { what: "zeta_direct tail".into(), estimate: to_f64(v.re), est_error: to_f64(err) });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn m0_is_minus_log() {
        let v = log_gamma(&GammaParams::empty(), cx(2.0), &cfg()).unwrap();
        assert_eq!(v.value.re, -(2.0f64.ln()));
        assert_eq!(v.est_error, 0.0);
    }

    #[test]
    fn m1_unit_period_at_one() {
        let v = log_gamma(&GammaParams::ones(1), cx(1.0), &cfg()).unwrap();
        assert!((v.value.re + 0.918_938_533_204_672_8).abs() < 1e-10, "{v:?}");
        assert!(v.value.im.abs() < 1e-14);
    }

    #[test]
    fn rejects_left_half_plane() {
        assert!(matches!(log_gamma(&GammaParams::ones(2), cx(-0.5), &cfg()), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(&GammaParams::ones(2), Complex::new(0.0, 1.0), &cfg()), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma1_examples() {
        let r = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        assert!((gamma1_closed(1.0, cx(1.0)).unwrap().re - r).abs() < 1e-15);
        assert!((gamma1_closed(1.0, cx(2.0)).unwrap().re - r).abs() < 1e-15);
        assert!((gamma1_closed(2.0, cx(2.0)).unwrap().re - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!(matches!(gamma1_closed(1.0, cx(-1.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn barnes_g_integers() {
        for (z, want) in [(1.0, 1.0), (2.0, 1.0), (3.0, 1.0), (4.0, 2.0), (5.0, 12.0), (0.5, 0.603_244_281_209_446_2)] {
            let g = barnes_g(cx(z), &cfg()).unwrap();
            assert!((g.re - want).abs() < 1e-9 * want, "G({z}) = {g}");
        }
    }

    #[test]
    fn zeta_direct_examples() {
        let z3: f64 = 1.202_056_903_159_594_3;
        let v = zeta_direct(&GammaParams::<f64>::empty(), cx(2.5), cx(3.0), 10).unwrap();
        assert!((v.re - 3f64.powf(-2.5)).abs() < 1e-15);
        let v = zeta_direct(&GammaParams::ones(1), cx(3.0), cx(1.0), 200).unwrap();
        assert!((v.re - z3).abs() < 1e-10);
        let v = zeta_direct(&GammaParams::ones(2), cx(4.0), cx(1.0), 400).unwrap();
        assert!((v.re - z3).abs() < 1e-9);
        assert!(matches!(zeta_direct(&GammaParams::ones(1), cx(3.0), cx(1.0), 10), Err(Error::Accuracy { .. })));
    }

    #[test]
    fn f32_smoke() {
        let c = QuadratureConfig::<f32>::default();
        let v = log_gamma(&GammaParams::<f32>::ones(1), cx(1.0f32), &c).unwrap();
        assert!((v.value.re + 0.918_938_5).abs() < 1e-4, "{v:?}");
    }
}
