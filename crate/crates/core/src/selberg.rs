//! The Selberg integral law `M_(τ,λ₁,λ₂)`, its master two-period form `M_(a,x)`,
//! the critical law `M_c` and the `β₂,₂(δ)` cumulant bridge to `ξ`.

use num_complex::Complex;
use rand::RngCore;
use serde::Serialize;

use crate::accel::richardson;
use crate::error::{Error, Result};
use crate::identities::IdentityReport;
use crate::mellin::{log_eta, rel_from_log, BarnesBetaParams};
use crate::multigamma::{ln_barnes_g, log_multigamma_cached};
use crate::quad::{breakpoints, integrate, QuadratureConfig};
use crate::sampling::{BetaSampler, ElementaryLaw, Variate};
use crate::scalar::{cx, int, lit, to_f64, Real};
use crate::series::GammaParams;
use crate::special::{ln_gamma, ln_gamma_ratio, ln_gamma_real};
use crate::xi::c2_mellin;

/// `(a₁, a₂; x₁, x₂)` of the master law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MasterParams<T> {
    pub a1: T,
    pub a2: T,
    pub x1: T,
    pub x2: T,
}

impl<T: Real> MasterParams<T> {
    pub fn new(a1: T, a2: T, x1: T, x2: T) -> Result<Self> {
        for (name, v) in [("a1", a1), ("a2", a2), ("x1", x1), ("x2", x2)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(MasterParams { a1, a2, x1, x2 })
    }

    fn periods(&self) -> GammaParams<T> {
        GammaParams { a: vec![self.a1, self.a2] }
    }
}

/// `(τ, λ₁, λ₂)` of the Selberg integral law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelbergParams<T> {
    pub tau: T,
    pub lambda1: T,
    pub lambda2: T,
}

impl<T: Real> SelbergParams<T> {
    /// Admits any `τ > 0`; the law itself needs `τ > 1`.
    pub fn new(tau: T, lambda1: T, lambda2: T) -> Result<Self> {
        if !(tau > T::zero()) || !tau.is_finite() {
            return Err(Error::domain(format!("tau must be positive, got {tau}")));
        }
        let floor = -T::one() / tau;
        for (name, v) in [("lambda1", lambda1), ("lambda2", lambda2)] {
            if !(v > floor) || !v.is_finite() {
                return Err(Error::domain(format!("{name} must exceed -1/tau = {floor}, got {v}")));
            }
        }
        Ok(SelbergParams { tau, lambda1, lambda2 })
    }

    fn require_law(&self) -> Result<()> {
        if !(self.tau > T::one()) {
            return Err(Error::domain(format!("the Selberg law needs tau > 1, got {}", self.tau)));
        }
        Ok(())
    }

    /// Master parameters `a = (1, τ)`, `x_i = 1 + τ(1+λ_i)`.
    pub fn master(&self) -> MasterParams<T> {
        let one = T::one();
        MasterParams {
            a1: one,
            a2: self.tau,
            x1: one + self.tau * (one + self.lambda1),
            x2: one + self.tau * (one + self.lambda2),
        }
    }

    /// Image under `τ → 1/τ`, `λ → τλ`.
    pub fn involuted(&self) -> Self {
        SelbergParams { tau: T::one() / self.tau, lambda1: self.tau * self.lambda1, lambda2: self.tau * self.lambda2 }
    }
}

fn need_right<T: Real>(what: &str, w: Complex<T>) -> Result<()> {
    if !(w.re > T::zero()) {
        return Err(Error::domain(format!("{what}: Gamma_2 argument {w} outside the right half-plane")));
    }
    Ok(())
}

fn lg2<T: Real>(a: &GammaParams<T>, w: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    need_right("Gamma_2 ratio", w)?;
    Ok(log_multigamma_cached(a, w, cfg)?.value)
}

/// `log` of the four `Γ₂` ratios of the master transform.
pub fn master_log_mellin<T: Real>(p: &MasterParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    if q == cx(T::zero()) {
        return Ok(cx(T::zero()));
    }
    let a = p.periods();
    let s = p.x1 + p.x2;
    let aa = p.a1 + p.a2;
    let two = lit::<T>(2.0);
    Ok(lg2(&a, -q + p.x1, cfg)? - lg2(&a, cx(p.x1), cfg)? + lg2(&a, -q + p.x2, cfg)? - lg2(&a, cx(p.x2), cfg)?
        + lg2(&a, -q + aa, cfg)?
        - lg2(&a, cx(aa), cfg)?
        + lg2(&a, -q + s, cfg)?
        - lg2(&a, -q * two + s, cfg)?)
}

pub fn master_mellin<T: Real>(p: &MasterParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    Ok(master_log_mellin(p, q, cfg)?.exp())
}

/// Independent factors of `M_(a,x) = 2^{−c} L X₁ X₂ X₃`; a `None` factor is
/// identically 1 (`x₁ = x₂`, or `x₁+x₂ = a₁+a₂`).
#[derive(Debug, Clone)]
pub struct MasterFactors<T> {
    /// `c = (2(x₁+x₂) − (a₁+a₂))/(a₁a₂)`.
    pub log2_scale: T,
    /// Variance `4 log 2/(a₁a₂)` of `log L`.
    pub lognormal_var: T,
    /// Parameters of the `β₂,₂` whose inverses are `X₁, X₂, X₃`.
    pub x: [Option<BarnesBetaParams<T>>; 3],
}

pub fn master_factors<T: Real>(p: &MasterParams<T>) -> Result<MasterFactors<T>> {
    let two = lit::<T>(2.0);
    let (x1, x2) = if p.x1 <= p.x2 { (p.x1, p.x2) } else { (p.x2, p.x1) };
    let a = vec![p.a1, p.a2];
    let s = x1 + x2;
    let aa = p.a1 + p.a2;
    let x_1 = if x2 > x1 { Some(BarnesBetaParams::new(a.clone(), x1, vec![(x2 - x1) / two; 2])?) } else { None };
    let x_2 = Some(BarnesBetaParams::new(a.clone(), s / two, vec![p.a1 / two, p.a2 / two])?);
    let x_3 = if s > aa {
        Some(BarnesBetaParams::new(a, aa, vec![(s - aa) / two; 2])?)
    } else if s == aa {
        None
    } else {
        return Err(Error::domain(format!("factorization needs x1 + x2 >= a1 + a2, got {s} < {aa}")));
    };
    Ok(MasterFactors {
        log2_scale: (two * s - aa) / (p.a1 * p.a2),
        lognormal_var: lit::<T>(4.0) * T::LN_2() / (p.a1 * p.a2),
        x: [x_1, x_2, x_3],
    })
}

/// `log E[M_(a,x)^q]` assembled from the factors: `−c q log 2 + q² σ²/2 + Σ log η(−q)`.
pub fn master_factor_log_mellin<T: Real>(p: &MasterParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    let f = master_factors(p)?;
    let mut acc = -q * (f.log2_scale * T::LN_2()) + q * q * (f.lognormal_var / lit(2.0));
    for bp in f.x.iter().flatten() {
        acc = acc + log_eta(bp, -q, cfg)?.value;
    }
    Ok(acc)
}

/// `τ^{q/τ} × Γ₂` ratios: the transform of `M* = Γ(1−1/τ) M/(2π)`, for any `τ > 0`.
pub fn selberg_reduced_log_mellin<T: Real>(p: &SelbergParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    if !(q.re < p.tau) {
        return Err(Error::domain(format!("Selberg transform needs Re(q) < tau = {}, got {q}", p.tau)));
    }
    if q == cx(T::zero()) {
        return Ok(cx(T::zero()));
    }
    let m = p.master();
    let a = m.periods();
    let two = lit::<T>(2.0);
    let s = m.x1 + m.x2;
    let ratios = lg2(&a, -q + m.x1, cfg)? - lg2(&a, cx(m.x1), cfg)? + lg2(&a, -q + m.x2, cfg)? - lg2(&a, cx(m.x2), cfg)?
        + lg2(&a, -q + p.tau, cfg)?
        - lg2(&a, cx(p.tau), cfg)?
        + lg2(&a, -q + s, cfg)?
        - lg2(&a, -q * two + s, cfg)?;
    Ok(q * (p.tau.ln() / p.tau) + ratios)
}

/// `log E[M_(τ,λ)^q]`, `Re(q) < τ`, `τ > 1`.
pub fn selberg_log_mellin<T: Real>(p: &SelbergParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    p.require_law()?;
    let reduced = selberg_reduced_log_mellin(p, q, cfg)?;
    let c = (T::PI() * lit(2.0)).ln() - ln_gamma_real(T::one() - T::one() / p.tau)?;
    Ok(reduced + q * c)
}

pub fn selberg_mellin<T: Real>(p: &SelbergParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    Ok(selberg_log_mellin(p, q, cfg)?.exp())
}

/// `E[M^{±l}]` from the finite gamma products (Selberg's formula for `+`).
pub fn selberg_moment<T: Real>(p: &SelbergParams<T>, l: usize, sign: i32) -> Result<T> {
    p.require_law()?;
    let (tau, l1, l2) = (p.tau, p.lambda1, p.lambda2);
    let one = T::one();
    let two = lit::<T>(2.0);
    let lt = int::<T>(l as i64);
    let mut acc = T::zero();
    match sign {
        1 => {
            if !(lt < tau) {
                return Err(Error::domain(format!("positive moment {l} needs l < tau = {tau}")));
            }
            let g0 = ln_gamma_real(one - one / tau)?;
            for k in 0..l {
                let kt = int::<T>(k as i64);
                acc = acc + ln_gamma_real(one - (kt + one) / tau)? - g0 + ln_gamma_real(one + l1 - kt / tau)? + ln_gamma_real(one + l2 - kt / tau)?
                    - ln_gamma_real(two + l1 + l2 - (lt + kt - one) / tau)?;
            }
        }
        -1 => {
            let g0 = ln_gamma_real(one - one / tau)?;
            for k in 0..l {
                let kt = int::<T>(k as i64);
                acc = acc + ln_gamma_real(two + l1 + l2 + (lt + two + kt) / tau)? + g0
                    - ln_gamma_real(one + l1 + (kt + one) / tau)?
                    - ln_gamma_real(one + l2 + (kt + one) / tau)?
                    - ln_gamma_real(one + kt / tau)?;
            }
        }
        _ => return Err(Error::domain(format!("sign must be +1 or -1, got {sign}"))),
    }
    Ok(acc.exp())
}

/// Truncation of the infinite products and the `β₂,₂` samplers.
#[derive(Debug, Clone)]
pub struct SelbergKnobs<T> {
    pub q_grid: Vec<Complex<T>>,
    /// First truncation of the infinite products.
    pub m0: usize,
    pub max_levels: usize,
    pub cfg: QuadratureConfig<T>,
}

impl<T: Real> Default for SelbergKnobs<T> {
    fn default() -> Self {
        SelbergKnobs {
            q_grid: [(-0.8, 0.0), (-0.3, 0.0), (0.25, 0.0), (0.6, 0.0)].iter().map(|&(r, i)| Complex::new(lit(r), lit(i))).collect(),
            m0: 32,
            max_levels: 9,
            cfg: QuadratureConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SelbergIdentity {
    InfiniteProduct,
    FunceqTau,
    FunceqOne,
    Involution,
}

impl SelbergIdentity {
    pub fn label(self) -> &'static str {
        match self {
            SelbergIdentity::InfiniteProduct => "selberg_infinite_product",
            SelbergIdentity::FunceqTau => "selberg_funceq_tau",
            SelbergIdentity::FunceqOne => "selberg_funceq_one",
            SelbergIdentity::Involution => "selberg_involution",
        }
    }
}

fn lgc<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    ln_gamma(z)
}

/// Truncated infinite product for `log E[M^q]`, extrapolated in the truncation.
pub fn selberg_infinite_product<T: Real>(p: &SelbergParams<T>, q: Complex<T>, m0: usize, max_levels: usize, tol: T) -> Result<Complex<T>> {
    p.require_law()?;
    let (tau, l1, l2) = (p.tau, p.lambda1, p.lambda2);
    let one = cx::<T>(T::one());
    let two = lit::<T>(2.0);
    let c = T::one() + l1 + l2;
    let head = q * tau.ln() + lgc(one - q / tau)? + lgc(-q * two + two + tau * c)? - q * ln_gamma_real(T::one() - T::one() / tau)?
        - lgc(-q + two + tau * c)?;
    let mut done = 0usize;
    let mut acc = cx::<T>(T::zero());
    let mut fail = None;
    let partial = |k: usize| -> Result<Complex<T>> {
        while done < k {
            done += 1;
            let mt = int::<T>(done as i64) * tau;
            let term = (|| -> Result<Complex<T>> {
                let r = |base: T, shift: Complex<T>| ln_gamma_ratio(cx(base), shift);
                let base = -q * two + two + tau * (l1 + l2) + mt;
                Ok(q * (two * mt.ln()) + r(T::one() + mt, -q)? + r(T::one() + tau * l1 + mt, -q)? + r(T::one() + tau * l2 + mt, -q)?
                    + ln_gamma_ratio(base, q)?)
            })();
            match term {
                Ok(t) => acc = acc + t,
                Err(e) => {
                    fail = Some(e.clone());
                    return Err(e);
                }
            }
        }
        Ok(acc)
    };
    let r = richardson(partial, m0, 1.0, tol, max_levels, "Selberg infinite product")?;
    if let Some(e) = fail {
        return Err(e);
    }
    Ok(head + r.value)
}

/// Largest relative deviation of a Selberg identity over `knobs.q_grid`.
pub fn selberg_identity_residual<T: Real>(kind: SelbergIdentity, p: &SelbergParams<T>, knobs: &SelbergKnobs<T>) -> Result<IdentityReport> {
    let cfg = &knobs.cfg;
    let (tau, l1, l2) = (p.tau, p.lambda1, p.lambda2);
    let one = cx::<T>(T::one());
    let two = lit::<T>(2.0);
    let echo = format!("tau={tau} lambda=({l1},{l2})");
    let mut report = IdentityReport::new(kind.label(), echo);
    for &q in &knobs.q_grid {
        let delta = match kind {
            SelbergIdentity::InfiniteProduct => {
                let v = selberg_infinite_product(p, q, knobs.m0, knobs.max_levels, cfg.rel_tol * lit(10.0))?;
                v - selberg_log_mellin(p, q, cfg)?
            }
            SelbergIdentity::FunceqTau => {
                let c = l1 + l2;
                let rhs = selberg_log_mellin(p, q - tau, cfg)? + tau.ln() + (T::PI() * two).ln() * (tau - T::one())
                    - ln_gamma_real(T::one() - T::one() / tau)? * tau
                    + lgc(-q + tau)?
                    + lgc(-q + (T::one() + l1) * tau + T::one())?
                    + lgc(-q + (T::one() + l2) * tau + T::one())?
                    - lgc(-q * two + (two + c) * tau + two)?
                    + lgc(-q + (two + c) * tau + two)?
                    - lgc(-q * two + (lit::<T>(3.0) + c) * tau + two)?;
                selberg_log_mellin(p, q, cfg)? - rhs
            }
            SelbergIdentity::FunceqOne => {
                let c = l1 + l2;
                let rhs = selberg_log_mellin(p, q - T::one(), cfg)? + lgc(one - q / tau)? + lgc(-(q - two) / tau + two + c)?
                    - ln_gamma_real(T::one() - T::one() / tau)?
                    + lgc(-(q - T::one()) / tau + T::one() + l1)?
                    + lgc(-(q - T::one()) / tau + T::one() + l2)?
                    - lgc(-(q * two - two) / tau + two + c)?
                    - lgc(-(q * two - lit::<T>(3.0)) / tau + two + c)?;
                selberg_log_mellin(p, q, cfg)? - rhs
            }
            SelbergIdentity::Involution => {
                let inv = p.involuted();
                // factors X_i: E[X^{q/τ}](1/τ, τλ) = E[X^q](τ, λ)
                let f_tau = master_factors(&p.master())?;
                let f_inv = master_factors(&inv.master())?;
                for (a, b) in f_tau.x.iter().zip(f_inv.x.iter()) {
                    let d = match (a, b) {
                        (Some(a), Some(b)) => log_eta(b, -q / tau, cfg)?.value - log_eta(a, -q, cfg)?.value,
                        (None, None) => cx(T::zero()),
                        _ => return Err(Error::domain("involution changed the factor structure")),
                    };
                    report.record(rel_from_log(d));
                }
                let dl = (q / tau) * (q / tau) * (f_inv.lognormal_var / two) - q * q * (f_tau.lognormal_var / two);
                report.record(rel_from_log(dl));
                // reduced transform picks up Γ(1−q)/Γ(1−q/τ)
                let lhs = selberg_reduced_log_mellin(&inv, q / tau, cfg)?;
                let rhs = lgc(one - q)? - lgc(one - q / tau)? + selberg_reduced_log_mellin(p, q, cfg)?;
                lhs - rhs
            }
        };
        report.record(rel_from_log(delta));
    }
    Ok(report)
}

/// Draws of `M_(a,x)`, optionally times a Fréchet factor and a constant, built
/// from the product samplers of the three `β₂,₂` factors.
pub struct MasterSampler {
    log_const: f64,
    lognormal: ElementaryLaw,
    betas: Vec<BetaSampler>,
    extra: Vec<ElementaryLaw>,
    /// Largest `E[−log]` truncation bias among the product samplers.
    pub tail_mean: f64,
}

impl MasterSampler {
    pub fn master(p: &MasterParams<f64>, k: usize, cfg: &QuadratureConfig<f64>) -> Result<MasterSampler> {
        let f = master_factors(p)?;
        let mut betas = Vec::new();
        for bp in f.x.iter().flatten() {
            betas.push(BetaSampler::product(bp, 0, k, true, 1e-4, cfg)?);
        }
        let tail_mean = betas.iter().map(|b| b.tail_mean).fold(0.0, f64::max);
        Ok(MasterSampler {
            log_const: -f.log2_scale * std::f64::consts::LN_2,
            lognormal: ElementaryLaw::Lognormal { sigma2: f.lognormal_var },
            betas,
            extra: Vec::new(),
            tail_mean,
        })
    }
}

impl Variate for MasterSampler {
    fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        let mut log = self.log_const + self.lognormal.draw(rng).ln();
        for b in &self.betas {
            log -= b.draw(rng).ln();
        }
        let mut v = log.exp();
        for e in &self.extra {
            v *= e.draw(rng);
        }
        v
    }
}

/// `M_(τ,λ) = 2π 2^{−[3(1+τ)+2τ(λ₁+λ₂)]/τ} L X₁ X₂ X₃ Y / Γ(1−1/τ)`.
pub fn selberg_sampler(p: &SelbergParams<f64>, k: usize, cfg: &QuadratureConfig<f64>) -> Result<MasterSampler> {
    p.require_law()?;
    let mut s = MasterSampler::master(&p.master(), k, cfg)?;
    s.log_const += (2.0 * std::f64::consts::PI).ln() - ln_gamma_real(1.0 - 1.0 / p.tau)?;
    s.extra.push(ElementaryLaw::Frechet { tau: p.tau });
    Ok(s)
}

pub fn selberg_sample(p: &SelbergParams<f64>, rng: &mut dyn RngCore, n: usize, cfg: &QuadratureConfig<f64>) -> Result<Vec<f64>> {
    Ok(selberg_sampler(p, 200, cfg)?.draw_n(rng, n))
}

/// `log E[M_c^q] = log G(4−2q) − log G(1−q) − 2 log G(2−q) − log G(4−q)`, `Re(q) < 1`.
pub fn critical_log_mellin<T: Real>(q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    if !(q.re < T::one()) {
        return Err(Error::domain(format!("critical transform needs Re(q) < 1, got {q}")));
    }
    let one = cx::<T>(T::one());
    let g = |z: Complex<T>| ln_barnes_g(z, cfg);
    Ok(g(-q * lit::<T>(2.0) + lit::<T>(4.0))? - g(one - q)? - g(-q + lit::<T>(2.0))? * lit::<T>(2.0) - g(-q + lit::<T>(4.0))?)
}

pub fn critical_mellin<T: Real>(q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    Ok(critical_log_mellin(q, cfg)?.exp())
}

/// `E[M_c^{−l}] = ∏_{k<l} (3+l+k)!/((k+1)!² k!)`, exact in floating point.
pub fn critical_negative_moment<T: Real>(l: usize) -> T {
    use crate::scalar::factorial;
    let mut acc = T::zero();
    for k in 0..l {
        acc = acc + factorial::<T>(3 + l + k).ln() - factorial::<T>(k + 1).ln() * lit(2.0) - factorial::<T>(k).ln();
    }
    acc.exp()
}

/// Both sides of the one-step functional equation of `E[M_c^q]`, as logs.
pub fn critical_funceq<T: Real>(q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<(Complex<T>, Complex<T>)> {
    let one = cx::<T>(T::one());
    let two = lit::<T>(2.0);
    let rhs = lgc(one - q)? + lgc(-q + two)? * two + lgc(-q + lit::<T>(4.0))? - lgc(-q * two + lit::<T>(4.0))? - lgc(-q * two + lit::<T>(5.0))?
        + critical_log_mellin(q - T::one(), cfg)?;
    Ok((critical_log_mellin(q, cfg)?, rhs))
}

/// Truncated and extrapolated infinite product for `log E[M_c^q]`.
pub fn critical_infinite_product<T: Real>(q: Complex<T>, m0: usize, max_levels: usize, tol: T) -> Result<Complex<T>> {
    let one = cx::<T>(T::one());
    let two = lit::<T>(2.0);
    let head = lgc(one - q)? + lgc(-q * two + lit::<T>(3.0))? - lgc(-q + lit::<T>(3.0))?;
    let mut done = 0usize;
    let mut acc = cx::<T>(T::zero());
    let partial = |k: usize| -> Result<Complex<T>> {
        while done < k {
            done += 1;
            let m = int::<T>(done as i64);
            acc = acc + q * (two * m.ln()) + ln_gamma_ratio(cx(T::one() + m), -q)? * lit::<T>(3.0) + ln_gamma_ratio(-q * two + two + m, q)?;
        }
        Ok(acc)
    };
    Ok(head + richardson(partial, m0, 1.0, tol, max_levels, "critical infinite product")?.value)
}

/// `M_c = (π/32) L X₂ X₃ Y` with `L = e^{N(0, 4 log 2)}`,
/// `X₂ = β₂,₂⁻¹((1,1), b₀=2, b=(½,½))`, Pareto `X₃` and Fréchet(1) `Y`.
pub fn critical_sampler(k: usize, cfg: &QuadratureConfig<f64>) -> Result<MasterSampler> {
    let bp = BarnesBetaParams::new(vec![1.0, 1.0], 2.0, vec![0.5, 0.5])?;
    let beta = BetaSampler::product(&bp, 0, k, true, 1e-4, cfg)?;
    Ok(MasterSampler {
        log_const: (std::f64::consts::PI / 32.0).ln(),
        lognormal: ElementaryLaw::Lognormal { sigma2: 4.0 * std::f64::consts::LN_2 },
        tail_mean: beta.tail_mean,
        betas: vec![beta],
        extra: vec![ElementaryLaw::Pareto23, ElementaryLaw::Frechet { tau: 1.0 }],
    })
}

pub fn critical_sample(rng: &mut dyn RngCore, n: usize, cfg: &QuadratureConfig<f64>) -> Result<Vec<f64>> {
    Ok(critical_sampler(200, cfg)?.draw_n(rng, n))
}

/// `β₂,₂(δ) = β₂,₂(a=(1,1), b₀=δ, b=(½,½))`.
pub fn beta22_delta<T: Real>(delta: T) -> Result<BarnesBetaParams<T>> {
    let half = lit::<T>(0.5);
    BarnesBetaParams::new(vec![T::one(), T::one()], delta, vec![half, half])
}

/// `log E[β₂,₂(δ)^q]` from Barnes `G`:
/// `G(δ)/G(q+δ) · G²(q+δ+½)/G²(δ+½) · G(δ+1)/G(q+δ+1)`.
pub fn beta22_delta_log_mellin_g<T: Real>(delta: T, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    let half = lit::<T>(0.5);
    let g = |z: Complex<T>| ln_barnes_g(z, cfg);
    let two = lit::<T>(2.0);
    Ok(g(cx(delta))? - g(q + delta)? + (g(q + delta + half)? - g(cx(delta + half))?) * two + g(cx(delta + T::one()))? - g(q + delta + T::one())?)
}

/// `log E[β₂,₂(δ)^q] = ¼ ∫₀^∞ (e^{−tq}−1) e^{−(δ−½)t} sech²(t/4) dt/t`, real `q > −δ`.
pub fn beta22_delta_log_mellin_levy<T: Real>(delta: T, q: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !(q > -delta) {
        return Err(Error::domain(format!("Levy form needs q > -delta, got {q}")));
    }
    let quarter = lit::<T>(0.25);
    let rate = (delta + q.min(T::zero())).min(delta);
    let t_end = lit::<T>(46.0) / rate;
    let mut brk = vec![T::zero()];
    brk.extend(breakpoints(T::one(), t_end, t_end));
    let (v, _) = integrate(
        |t| {
            let c = (t * quarter).cosh();
            // e^{−(δ−½)t} sech²(t/4) = 4 e^{−δt}/(1+e^{−t/2})²
            let s = (-(delta - lit(0.5)) * t).exp() / (c * c);
            cx((-(q * t)).exp_m1() * s * quarter / t)
        },
        &brk,
        cfg,
        "beta22(delta) Levy integral",
    )?;
    Ok(v.re)
}

/// `κ_n(δ)` of `−log β₂,₂(δ)` from the series in `E[C₂^{−(m+n)/2}]`, `0 < δ < 1`,
/// summed until the terms fall below `1e−15` of the total.
pub fn beta22_delta_cumulant<T: Real>(n: usize, delta: T, m_max: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("cumulant order must be at least 1"));
    }
    if !(delta > T::zero() && delta < T::one()) {
        return Err(Error::domain(format!("cumulant series converges only for 0 < delta < 1, got {delta}")));
    }
    let half = lit::<T>(0.5);
    let x = -(delta - half);
    let ln32 = lit::<T>(32.0).ln();
    let mut sum = T::zero();
    let mut small = 0;
    for m in 0..=m_max {
        if m > 0 && x == T::zero() {
            break;
        }
        let k = int::<T>((m + n) as i64) * half;
        let mellin = c2_mellin(cx(-k))?.re;
        let mag = if m == 0 { T::one() } else { x.powi(m as i32) };
        let term = mag * (k * ln32 + ln_gamma_real(k)? - ln_gamma_real(int::<T>(m as i64 + 1))?).exp() * mellin / lit(8.0);
        sum = sum + term;
        if term.abs() <= lit::<T>(1e-15) * sum.abs() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    if x == T::zero() {
        return Ok(sum);
    }
    Err(Error::Accuracy { what: "beta22 cumulant series".into(), estimate: to_f64(sum), est_error: f64::NAN })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_negative_moments_are_integers() {
        assert_eq!(critical_negative_moment::<f64>(1).round(), 24.0);
        assert_eq!(critical_negative_moment::<f64>(2).round(), 21600.0);
    }

    #[test]
    fn kappa2_at_half_is_4_ln2() {
        let k = beta22_delta_cumulant(2, 0.5, 10).unwrap();
        assert!((k - 4.0 * std::f64::consts::LN_2).abs() < 1e-13);
    }
}
