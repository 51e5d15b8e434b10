//! Residual checks for the multiple-gamma identities: functional equation, scaling,
//! Barnes multiplication and the Γ-level Shintani factorization.
//!
//! The Shintani check assembles `φ_{M+1}(w,x)` from three independently computed
//! pieces (`P`, `χ` and a Bernoulli term with Euler's constant) and compares
//! `Γ_{M+1}` against the extrapolated infinite product.

use num_complex::Complex;
use serde::Serialize;

use crate::accel::{richardson_noisy, Extrapolated};
use crate::error::{Error, Result};
use crate::multigamma::{log_gamma, log_multigamma, near_split, LogGammaValue};
use crate::quad::{breakpoints, integrate, QuadratureConfig};
use crate::scalar::{cx, factorial, harmonic, int, is_finite_c, lit, to_f64, Real};
use crate::series::{bernoulli_coeffs, bernoulli_scaled, series_of_factor, GammaParams};

/// Euler's constant as used by the Shintani assembly.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const NEAR_TERMS: usize = 44;

/// Outcome of a residual check over a grid of points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub kind: String,
    /// Largest deviation over the grid, measured on log-values.
    pub residual: f64,
    pub points_tested: usize,
    pub params_echo: String,
}

impl IdentityReport {
    pub(crate) fn new(kind: &str, params_echo: String) -> Self {
        IdentityReport { kind: kind.into(), residual: 0.0, points_tested: 0, params_echo }
    }

    pub(crate) fn record(&mut self, deviation: f64) {
        self.residual = if deviation.is_nan() { f64::NAN } else { self.residual.max(deviation) };
        self.points_tested += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaIdentity {
    FunctionalEq,
    Scaling,
    Multiplication,
    ShintaniGamma,
}

impl GammaIdentity {
    pub fn label(self) -> &'static str {
        match self {
            GammaIdentity::FunctionalEq => "functional_eq",
            GammaIdentity::Scaling => "scaling",
            GammaIdentity::Multiplication => "multiplication",
            GammaIdentity::ShintaniGamma => "shintani_gamma",
        }
    }
}

/// Inputs for [`identity_residual`]; each kind reads only what it needs.
#[derive(Debug, Clone)]
pub struct IdentityKnobs<T> {
    pub w_grid: Vec<Complex<T>>,
    pub kappa: T,
    /// Multiplication factor `k`.
    pub k: usize,
    /// Free anchor of the Shintani factorization.
    pub x: Complex<T>,
    /// Extra period `a_{M+1}` of the Shintani factorization.
    pub a_next: T,
    /// Starting truncation of the Shintani product; doubled until converged.
    pub k0: usize,
    pub max_levels: usize,
    pub cfg: QuadratureConfig<T>,
}

impl<T: Real> Default for IdentityKnobs<T> {
    fn default() -> Self {
        IdentityKnobs {
            w_grid: [(0.5, 0.0), (1.0, 0.0), (1.7, 0.0), (3.0, 0.5)]
                .iter()
                .map(|&(re, im)| Complex::new(lit(re), lit(im)))
                .collect(),
            kappa: lit(2.0),
            k: 2,
            x: cx(T::one()),
            a_next: T::one(),
            k0: 64,
            max_levels: 11,
            cfg: QuadratureConfig::default(),
        }
    }
}

fn check_right_half<T: Real>(name: &str, z: Complex<T>) -> Result<()> {
    if !is_finite_c(z) || !(z.re > T::zero()) {
        return Err(Error::domain(format!("{name} needs positive real part, got {z}")));
    }
    Ok(())
}

/// `Ψ_{M+1}(x, y|a)` in closed form.
pub fn psi<T: Real>(params: &GammaParams<T>, x: Complex<T>, y: Complex<T>) -> Result<Complex<T>> {
    check_right_half("psi x", x)?;
    check_right_half("psi y", y)?;
    let m = params.M();
    let c = bernoulli_coeffs(params, x, m + 1)?;
    let ln_y = y.ln();
    let mut acc = c[m + 1] / y;
    let mut ypow = cx::<T>(T::one());
    // j = M − m runs upward so that (−y)^j/j! accumulates
    for j in 0..=m {
        let h = cx::<T>(harmonic::<T>(j)) - ln_y;
        acc = acc + c[m - j] * ypow / factorial::<T>(j) * h;
        ypow = ypow * -y;
    }
    Ok(acc)
}

/// `χ_{M+1}(x, y|a)` by near-zero series plus adaptive quadrature.
pub fn chi<T: Real>(params: &GammaParams<T>, x: Complex<T>, y: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    cfg.validate()?;
    check_right_half("chi x", x)?;
    check_right_half("chi y", y)?;
    let m = params.M();
    let order = m + 1 + NEAR_TERMS;
    let c = bernoulli_coeffs(params, x, order)?;
    let ts = near_split(params.max_period(), &[x.norm(), y.norm()]);

    // integrand·y·t = A(t)·(yt/(e^{yt}−1)) − c_{M+1} e^{−yt} with A(t) = Σ_j c_{M+1+j} t^j
    let len = NEAR_TERMS;
    let mut u = vec![cx::<T>(T::zero()); len];
    let mut ypow = vec![cx::<T>(T::one()); len];
    for n in 1..len {
        ypow[n] = ypow[n - 1] * y;
    }
    for (k, uk) in u.iter_mut().enumerate() {
        let mut s = cx::<T>(T::zero());
        for j in 0..=k {
            s = s + c[m + 1 + j] * ypow[k - j] * lit::<T>(bernoulli_scaled(k - j)?);
        }
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        *uk = s - c[m + 1] * ypow[k] * sign / factorial::<T>(k);
    }
    let mut near = cx::<T>(T::zero());
    let mut tpow = T::one();
    for (k, uk) in u.iter().enumerate().skip(1) {
        tpow = tpow * ts;
        near = near + *uk * tpow / (y * int::<T>(k as i64));
    }
    let series_err = (u[len - 1] / y).norm() * tpow * lit(4.0);

    let decay = y.re.min(T::one());
    let t_end = cfg.split_point.unwrap_or_else(|| lit::<T>(50.0) / decay).max(ts * lit(2.0));
    let osc = x.im.abs().max(y.im.abs());
    let width = if osc > T::zero() { T::PI() / osc } else { t_end };
    let brk = breakpoints(ts, t_end, width);
    let a = &params.a;
    let one = cx::<T>(T::one());
    let integrand = |t: T| {
        let f = a.iter().fold(T::one(), |p, &aj| p * t / -(-aj * t).exp_m1());
        let mut poly = cx::<T>(T::zero());
        for cm in c[..=m].iter().rev() {
            poly = poly * t + *cm;
        }
        let rem = (-x * t).exp() * f - poly;
        let yt = y * t;
        rem / ((yt.exp() - one) * t.powi(m as i32 + 1)) - c[m + 1] * (-yt).exp() / yt
    };
    let (body, qerr) = integrate(integrand, &brk, cfg, "chi quadrature")?;
    let cut = c[..=m + 1].iter().fold(T::zero(), |s, v| s + v.norm());
    let tail_err = cut * (-(y.re * t_end)).exp() / (y.re * t_end);

    let value = near + body;
    let est_error = qerr + series_err + tail_err;
    if !is_finite_c(value) || est_error > cfg.target(value.norm()) {
        return Err(Error::Accuracy { what: "chi".into(), estimate: to_f64(value.re), est_error: to_f64(est_error) });
    }
    Ok(LogGammaValue { value, est_error })
}

/// `P_{M+1}(w, y|a)` from its integral representation, with the pure powers done
/// analytically and the exponentially damped part by quadrature.
pub fn p_formula<T: Real>(params: &GammaParams<T>, w: Complex<T>, y: T, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    cfg.validate()?;
    check_right_half("p_formula w", w)?;
    if !(y > T::zero()) || !y.is_finite() {
        return Err(Error::domain(format!("p_formula needs y > 0, got {y}")));
    }
    let m = params.M();
    let order = m + 2 + NEAR_TERMS;
    let c = bernoulli_coeffs(params, w, order)?;
    let d = bernoulli_coeffs(&params.with(y), w, order)?;
    let fy = series_of_factor(y, order)?.coeffs;
    let ts = near_split(params.max_period().max(y), &[w.norm()]);

    let mut g = vec![cx::<T>(T::zero()); order + 1];
    for (j, cj) in c.iter().enumerate().take(m + 1) {
        for n in 0..=order - j {
            g[j + n] = g[j + n] + *cj * fy[n];
        }
    }
    g[m + 1] = g[m + 1] - c[m];
    let e_coef = c[m] - d[m + 1];
    let y_coef = c[m + 1] / y;
    let mut fact = T::one();
    let mut ypow = T::one();
    for n in 0..=order - m - 1 {
        if n > 0 {
            fact = fact * int(n as i64);
            ypow = ypow * -y;
        }
        let sign = if n % 2 == 0 { T::one() } else { -T::one() };
        g[m + 1 + n] = g[m + 1 + n] + e_coef * sign / fact + y_coef * ypow / fact;
    }
    for (j, dj) in d.iter().enumerate().take(m + 1) {
        g[j] = g[j] - *dj;
    }
    let mut near = cx::<T>(T::zero());
    let mut tpow = T::one();
    for (k, gk) in g.iter().enumerate().skip(m + 2) {
        tpow = tpow * ts;
        near = near + *gk * tpow / int::<T>((k - m - 1) as i64);
    }
    let series_err = g[order].norm() * tpow * lit(4.0);

    // ∫_{t_s}^∞ t^{−M−2}(Σ_{j<M} c_j t^{j+1} − Σ_{j≤M} d_j t^j)
    let mut power = cx::<T>(T::zero());
    for j in 0..m {
        power = power + c[j] * ts.powi(j as i32 - m as i32) / int::<T>((m - j) as i64);
    }
    for (j, dj) in d.iter().enumerate().take(m + 1) {
        power = power - *dj * ts.powi(j as i32 - m as i32 - 1) / int::<T>((m + 1 - j) as i64);
    }

    let t_end = cfg.split_point.unwrap_or_else(|| lit::<T>(50.0) * T::one().max(T::one() / y)).max(ts * lit(2.0));
    let brk = breakpoints(ts, t_end, t_end);
    let integrand = |t: T| {
        let mut poly = cx::<T>(T::zero());
        for cj in c[..=m].iter().rev() {
            poly = poly * t + *cj;
        }
        let tm1 = t.powi(m as i32 + 1);
        let body = poly * t / (y * t).exp_m1() + (e_coef * (-t).exp() + y_coef * (-y * t).exp()) * tm1;
        body / (tm1 * t)
    };
    let (body, qerr) = integrate(integrand, &brk, cfg, "P quadrature")?;
    let cut = c[..=m + 1].iter().fold(e_coef.norm(), |s, v| s + v.norm());
    let tail_err = cut * (-(y.min(T::one()) * t_end)).exp();

    let value = near + power + body;
    let est_error = qerr + series_err + tail_err;
    if !is_finite_c(value) || est_error > cfg.target(value.norm()) {
        return Err(Error::Accuracy { what: "P".into(), estimate: to_f64(value.re), est_error: to_f64(est_error) });
    }
    Ok(LogGammaValue { value, est_error })
}

/// `φ_{M+1}(w, x|a, a_{M+1}) = P(w) + χ(x) + γ(B_{M+1}(w) − B_{M+1}(x))/(a_{M+1}(M+1)!)`.
pub fn phi<T: Real>(params: &GammaParams<T>, w: Complex<T>, x: Complex<T>, a_next: T, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    let m = params.M();
    let p = p_formula(params, w, a_next, cfg)?.value;
    let ch = chi(params, x, cx(a_next), cfg)?.value;
    let bw = bernoulli_coeffs(params, w, m + 1)?[m + 1];
    let bx = bernoulli_coeffs(params, x, m + 1)?[m + 1];
    Ok(p + ch + (bw - bx) * lit::<T>(EULER_GAMMA) / a_next)
}

/// `log ∏_{k≥1} Γ_M(w+ky)/Γ_M(x+ky) · e^{Ψ(x,ky)−Ψ(w,ky)}`, extrapolated in the
/// truncation `K` (partial sums approach the limit like `1/K`).
pub fn shintani_log_product<T: Real>(
    params: &GammaParams<T>,
    w: Complex<T>,
    x: Complex<T>,
    y: T,
    k0: usize,
    max_levels: usize,
    cfg: &QuadratureConfig<T>,
) -> Result<Extrapolated<T>> {
    let yc = cx::<T>(y);
    let mut done = 0usize;
    let mut acc = cx::<T>(T::zero());
    let mut noise = T::zero();
    let partial = |k_max: usize| -> Result<(Complex<T>, T)> {
        while done < k_max {
            done += 1;
            let ky = yc * int::<T>(done as i64);
            let lw = log_multigamma(params, w + ky, cfg)?;
            let lx = log_multigamma(params, x + ky, cfg)?;
            let (pw, px) = (psi(params, w, ky)?, psi(params, x, ky)?);
            acc = acc + lw.value - lx.value + px - pw;
            noise = noise + lw.est_error + lx.est_error + (px.norm() + pw.norm()) * T::epsilon() * lit(4.0);
        }
        Ok((acc, noise))
    };
    let tol = cfg.rel_tol * lit(10.0);
    richardson_noisy(partial, k0.max(1), 1.0, tol, max_levels, "Shintani product")
}

fn lg<T: Real>(params: &GammaParams<T>, w: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    if params.M() == 0 {
        return Ok(-w.ln());
    }
    Ok(log_gamma(params, w, cfg)?.value)
}

fn echo<T: Real>(params: &GammaParams<T>, extra: &str) -> String {
    let a: Vec<String> = params.a.iter().map(|v| format!("{v}")).collect();
    format!("M={} a=({}){}", params.M(), a.join(","), extra)
}

/// Largest log-level deviation of the chosen identity over `knobs.w_grid`.
///
/// Both sides use the quadrature route for `L_M`, except `M = 0` where it is exact.
pub fn identity_residual<T: Real>(kind: GammaIdentity, params: &GammaParams<T>, knobs: &IdentityKnobs<T>) -> Result<IdentityReport> {
    if knobs.w_grid.is_empty() {
        return Err(Error::domain("identity check needs at least one grid point"));
    }
    let cfg = &knobs.cfg;
    let m = params.M();
    let mut report;
    match kind {
        GammaIdentity::FunctionalEq => {
            if m == 0 {
                return Err(Error::domain("functional equation needs M >= 1"));
            }
            report = IdentityReport::new(kind.label(), echo(params, ""));
            for &w in &knobs.w_grid {
                let lw = lg(params, w, cfg)?;
                for i in 0..m {
                    let rhs = lg(&params.without(i), w, cfg)? + lg(params, w + params.a[i], cfg)?;
                    report.record(to_f64((lw - rhs).norm()));
                }
            }
        }
        GammaIdentity::Scaling => {
            let kappa = knobs.kappa;
            if !(kappa > T::zero()) {
                return Err(Error::domain(format!("scaling needs kappa > 0, got {kappa}")));
            }
            report = IdentityReport::new(kind.label(), echo(params, &format!(" kappa={kappa}")));
            let scaled = params.scaled(kappa);
            for &w in &knobs.w_grid {
                let lhs = lg(&scaled, w * kappa, cfg)?;
                if kappa == T::one() {
                    report.record(to_f64((lhs - lg(params, w, cfg)?).norm()));
                    continue;
                }
                let b = bernoulli_coeffs(params, w, m)?[m];
                let rhs = -b * kappa.ln() + lg(params, w, cfg)?;
                report.record(to_f64((lhs - rhs).norm()));
            }
        }
        GammaIdentity::Multiplication => {
            let k = knobs.k;
            if k == 0 {
                return Err(Error::domain("multiplication needs k >= 1"));
            }
            report = IdentityReport::new(kind.label(), echo(params, &format!(" k={k}")));
            let kt = int::<T>(k as i64);
            for &w in &knobs.w_grid {
                let lhs = lg(params, w * kt, cfg)?;
                let b = bernoulli_coeffs(params, w * kt, m)?[m];
                let mut rhs = -b * kt.ln();
                let mut idx = vec![0usize; m];
                loop {
                    let shift = idx.iter().zip(&params.a).fold(T::zero(), |s, (&p, &aj)| s + int::<T>(p as i64) * aj) / kt;
                    rhs = rhs + lg(params, w + shift, cfg)?;
                    // odometer over {0..k-1}^M
                    let mut pos = 0;
                    while pos < m {
                        idx[pos] += 1;
                        if idx[pos] < k {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                    if pos == m {
                        break;
                    }
                }
                report.record(to_f64((lhs - rhs).norm()));
            }
        }
        GammaIdentity::ShintaniGamma => {
            let y = knobs.a_next;
            let x = knobs.x;
            report = IdentityReport::new(kind.label(), echo(params, &format!(" a_next={y} x={x}")));
            let ext = params.with(y);
            for &w in &knobs.w_grid {
                let lhs = lg(&ext, w, cfg)?;
                let prod = shintani_log_product(params, w, x, y, knobs.k0, knobs.max_levels, cfg)?;
                let rhs = prod.value + phi(params, w, x, y, cfg)? + lg(params, w, cfg)?;
                report.record(to_f64((lhs - rhs).norm()));
            }
        }
    }
    Ok(report)
}
