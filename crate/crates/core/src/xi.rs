//! Riemann `ζ` and `ξ`, the Jacobi theta function and its triple-product
//! truncations, the `β_M(δ)` sequence, and the `C₂`, `S₂(δ)` and `T(δ)` laws whose
//! transforms carry `ξ`.

use num_complex::Complex;
use rand::RngCore;
use rand_distr::{Distribution, Exp, Gamma};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::IdentityReport;
use crate::mellin::BarnesBetaParams;
use crate::quad::{breakpoints, integrate, QuadratureConfig};
use crate::sampling::{Variate, Welford};
use crate::scalar::{cexpm1, cexprel, cx, int, is_finite_c, lit, to_f64, Real};
use crate::special::{gamma, ln_gamma};

/// `1 − 2^{1−s}` without cancellation near `s = 1`.
fn one_minus_pow2<T: Real>(s: Complex<T>) -> Complex<T> {
    -cexpm1((cx::<T>(T::one()) - s) * T::LN_2())
}

/// Terms of the Borwein alternating series for complex `s`.
fn borwein_terms<T: Real>(s: Complex<T>) -> usize {
    (40.0 + 1.4 * to_f64(s.im.abs())).min(400.0) as usize
}

/// Dirichlet eta `Σ (−1)^{k} (k+1)^{−s}` by Borwein's algorithm.
fn dirichlet_eta<T: Real>(s: Complex<T>) -> Complex<T> {
    let n = borwein_terms(s);
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!), built from term ratios
    let nt = int::<T>(n as i64);
    let mut d = Vec::with_capacity(n + 1);
    let mut term = T::one() / nt;
    let mut acc = term;
    d.push(nt * acc);
    for i in 1..=n {
        let it = int::<T>(i as i64);
        term = term * (nt + it - T::one()) * (nt - it + T::one()) * lit(4.0) / ((it * lit(2.0) - T::one()) * it * lit(2.0));
        acc = acc + term;
        d.push(nt * acc);
    }
    let dn = d[n];
    let mut sum = cx(T::zero());
    for k in 0..n {
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let base = int::<T>(k as i64 + 1);
        sum = sum + (-s * base.ln()).exp() * ((dn - d[k]) * sign);
    }
    sum / dn
}

/// `(s − 1) ζ(s)` for `Re(s) ≥ 1/2`, regular at `s = 1`.
fn zeta_sm1_right<T: Real>(s: Complex<T>) -> Complex<T> {
    let sm1 = s - T::one();
    // (s−1)/(1−2^{1−s}) = 1/(ln2·exprel((1−s)ln2))
    let factor = cx::<T>(T::one()) / (cexprel(-sm1 * T::LN_2()) * T::LN_2());
    dirichlet_eta(s) * factor
}

/// Riemann `ζ(s)` for complex `s ≠ 1`.
pub fn zeta_complex<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if !is_finite_c(s) {
        return Err(Error::domain(format!("zeta at non-finite {s}")));
    }
    let one = cx::<T>(T::one());
    if s == one {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    if s.re >= lit(0.5) {
        return Ok(dirichlet_eta(s) / one_minus_pow2(s));
    }
    if s == cx(T::zero()) {
        return Ok(cx(lit(-0.5)));
    }
    if s.im == T::zero() && s.re < T::zero() && (s.re / lit(2.0)) == (s.re / lit(2.0)).round() {
        return Ok(cx(T::zero()));
    }
    // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
    let pi = T::PI();
    let r = one - s;
    let right = dirichlet_eta(r) / one_minus_pow2(r);
    let pre = (s * T::LN_2() + (s - T::one()) * pi.ln()).exp() * (s * pi / lit::<T>(2.0)).sin();
    Ok(pre * gamma(r)? * right)
}

/// Riemann `ζ(s)` for real `s ≠ 1`.
pub fn zeta<T: Real>(s: T) -> Result<T> {
    Ok(zeta_complex(cx(s))?.re)
}

/// `½ s(s−1) π^{−s/2} Γ(s/2) ζ(s)` evaluated literally (no symmetry), for `s` off
/// the poles of `Γ(s/2)` and `s ≠ 0, 1`.
pub fn xi_direct<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let half = lit::<T>(0.5);
    let z = zeta_complex(s)?;
    let g = gamma(s * half)?;
    Ok(s * (s - T::one()) * half * (-s * half * T::PI().ln()).exp() * g * z)
}

/// Riemann `ξ(s)`, entire; `ξ(1−s)` is used left of the critical line.
pub fn xi<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if !is_finite_c(s) {
        return Err(Error::domain(format!("xi at non-finite {s}")));
    }
    let half = lit::<T>(0.5);
    if s.re < half {
        return xi(cx::<T>(T::one()) - s);
    }
    if s == cx(T::one()) {
        return Ok(cx(half));
    }
    // ½ s π^{−s/2} Γ(s/2) · (s−1)ζ(s)
    let g = ln_gamma(s * half)?;
    Ok(s * half * (g - s * half * T::PI().ln()).exp() * zeta_sm1_right(s))
}

/// `log ξ(s)` for real `s ≥ 1/2`, safe where `ξ` overflows.
pub fn ln_xi_real<T: Real>(s: T) -> Result<T> {
    let half = lit::<T>(0.5);
    if s < half {
        return ln_xi_real(T::one() - s);
    }
    let sc = cx(s);
    let g = ln_gamma(sc * half)?.re;
    Ok((s * half).ln() + g - s * half * T::PI().ln() + zeta_sm1_right(sc).re.ln())
}

/// `θ(t) = 1 + 2Σ e^{−πtn²}` (`m = None`) or the triple-product truncation
/// `θ_m(t) = ∏_{n≤m}(1−e^{−2nπt}) [∏_{n≤m}(1+e^{−(2n−1)πt})]²`.
pub fn theta<T: Real>(t: T, m: Option<usize>) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::domain(format!("theta needs t > 0, got {t}")));
    }
    let pi = T::PI();
    if let Some(m) = m {
        if m == 0 {
            return Err(Error::domain("theta_M needs M >= 1"));
        }
        let mut p = T::one();
        let mut q = T::one();
        for n in 1..=m {
            let nt = int::<T>(n as i64);
            p = p * -(-(nt * lit(2.0) * pi * t)).exp_m1();
            q = q * (T::one() + (-((nt * lit(2.0) - T::one()) * pi * t)).exp());
        }
        return Ok(p * q * q);
    }
    if t < T::one() {
        // θ(t) = t^{−1/2} θ(1/t)
        return Ok(theta(T::one() / t, None)? / t.sqrt());
    }
    Ok(T::one() + theta_tail(t) * lit(2.0))
}

/// `Σ_{n≥1} e^{−πtn²}` for `t ≥ 1`.
fn theta_tail<T: Real>(t: T) -> T {
    let pi = T::PI();
    let mut acc = T::zero();
    for n in 1.. {
        let nt = int::<T>(n as i64);
        let term = (-(pi * t * nt * nt)).exp();
        acc = acc + term;
        if term < acc * lit(1e-17) || term == T::zero() {
            break;
        }
    }
    acc
}

/// `θ(t) − 1` without cancellation at large `t`.
pub fn theta_minus_one<T: Real>(t: T) -> Result<T> {
    if t < T::one() {
        return Ok(theta(t, None)? - T::one());
    }
    Ok(theta_tail(t) * lit(2.0))
}

/// Parameters of `β_M(δ) = β_{2M,3M}` whose Lévy density is `e^{−δt} θ_M(πt/2)/t`.
pub fn beta_m_delta<T: Real>(m: usize, delta: T) -> Result<BarnesBetaParams<T>> {
    if m == 0 {
        return Err(Error::domain("beta_M(delta) needs M >= 1"));
    }
    let h = T::PI() * T::PI() / lit(2.0);
    let mut a = Vec::with_capacity(2 * m);
    let mut b = Vec::with_capacity(3 * m);
    for i in 1..=m {
        let ai = int::<T>(2 * i as i64 - 1) * h;
        a.push(ai);
        a.push(ai);
    }
    for j in 1..=m {
        let bj = int::<T>(4 * j as i64 - 2) * h;
        b.push(bj);
        b.push(bj);
    }
    for j in 1..=m {
        b.push(int::<T>(2 * j as i64) * h);
    }
    BarnesBetaParams::new(a, delta, b)
}

/// `E[C₂^q] = (2^{2q+2}−1)/(q+1) · (2/π)^{q+1} ξ(2q+2)`; the removable point
/// `q = −1` gives `2 ln 2 · ξ(0) = ln 2`.
pub fn c2_mellin<T: Real>(q: Complex<T>) -> Result<Complex<T>> {
    let q1 = q + T::one();
    let ln2 = T::LN_2();
    // (2^{2q+2}−1)/(q+1) = 2 ln2 · exprel(2(q+1) ln2)
    let ratio = cexprel(q1 * (ln2 * lit(2.0))) * (ln2 * lit(2.0));
    let pow = (q1 * (lit::<T>(2.0) / T::PI()).ln()).exp();
    Ok(ratio * pow * xi(q1 * lit::<T>(2.0))?)
}

/// `sinh(x)/x` for complex `x`, 1 at the origin.
fn sinhc<T: Real>(x: Complex<T>) -> Complex<T> {
    if x.norm() < lit(1e-4) {
        return cx::<T>(T::one()) + x * x / lit::<T>(6.0);
    }
    x.sinh() / x
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum S2Transform {
    /// `[sinh√(2δ)/√(2δ)]² [√(2(q+δ))/sinh√(2(q+δ))]²`.
    LaplaceClosed,
    /// `exp ∫(e^{−qt}−1)e^{−δt}(θ(πt/2)−1) dt/t` by quadrature.
    LaplaceLevy,
    /// Mellin transform `E[S₂(δ)^q]` as the series in `ξ(2q+2n)`.
    MellinSeries,
}

/// Truncation controls of the `ξ` series.
#[derive(Debug, Clone, Copy)]
pub struct XiSeriesKnobs<T> {
    /// Stop once a term falls below this fraction of the partial sum.
    pub term_tol: T,
    pub max_terms: usize,
    pub cfg: QuadratureConfig<T>,
}

impl<T: Real> Default for XiSeriesKnobs<T> {
    fn default() -> Self {
        XiSeriesKnobs { term_tol: lit(1e-14), max_terms: 20_000, cfg: QuadratureConfig::default() }
    }
}

fn check_delta<T: Real>(delta: T) -> Result<()> {
    if !(delta >= T::zero()) || !delta.is_finite() {
        return Err(Error::domain(format!("delta must be non-negative, got {delta}")));
    }
    Ok(())
}

/// Laplace (`E[e^{−qS₂(δ)}]`) or Mellin (`E[S₂(δ)^q]`) transform of `S₂(δ)`.
pub fn s2_delta_transform<T: Real>(kind: S2Transform, q: Complex<T>, delta: T, knobs: &XiSeriesKnobs<T>) -> Result<Complex<T>> {
    check_delta(delta)?;
    let two = lit::<T>(2.0);
    match kind {
        S2Transform::LaplaceClosed => {
            let a = sinhc(cx((two * delta).sqrt()));
            let b = sinhc((cx::<T>(delta) + q).scale(two).sqrt());
            Ok(a * a / (b * b))
        }
        S2Transform::LaplaceLevy => {
            if !(q.re >= T::zero()) {
                return Err(Error::domain(format!("Levy form of the Laplace transform needs Re(q) >= 0, got {q}")));
            }
            Ok(s2_levy_exponent(q, delta, &knobs.cfg)?.exp())
        }
        S2Transform::MellinSeries => xi_series(q, delta, knobs),
    }
}

/// `∫₀^∞ (e^{−qt}−1)e^{−δt}(θ(πt/2)−1) dt/t` with `t = u²`.
fn s2_levy_exponent<T: Real>(q: Complex<T>, delta: T, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    let half_pi = T::PI() / lit(2.0);
    let rate = delta + T::PI() * half_pi;
    let u_end = (lit::<T>(46.0) / rate).sqrt();
    let width = if q.im != T::zero() { (T::PI() / q.im.abs()).sqrt() } else { u_end };
    let mut brk = vec![T::zero()];
    brk.extend(breakpoints(u_end / lit(16.0), u_end, width));
    let mut err = None;
    let (v, _) = integrate(
        |u| {
            let t = u * u;
            match theta_minus_one(half_pi * t) {
                Ok(th) => cexpm1(-q * t) * ((-delta * t).exp() * th * lit(2.0) / u),
                Err(e) => {
                    err = Some(e);
                    cx(T::zero())
                }
            }
        },
        &brk,
        cfg,
        "S2(delta) Levy exponent",
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(v)
}

/// `[sinh√(2δ)/√(2δ)]² (2/π)^q Σ_n (1/n!)(−2δ/π)^n 2ξ(2q+2n)`, for `δ < π²/2`.
fn xi_series<T: Real>(q: Complex<T>, delta: T, knobs: &XiSeriesKnobs<T>) -> Result<Complex<T>> {
    let two = lit::<T>(2.0);
    let limit = T::PI() * T::PI() / two;
    if !(delta < limit) {
        return Err(Error::domain(format!("xi series needs delta < pi^2/2, got {delta}")));
    }
    let pi = T::PI();
    let mut sum = cx(T::zero());
    let mut small_run = 0;
    for n in 0..knobs.max_terms {
        let nt = int::<T>(n as i64);
        let s = q * two + nt * two;
        // log of (2δ/π)^n/n! · 2ξ(s)
        let lx = if s.im == T::zero() && s.re >= lit(0.5) {
            cx(ln_xi_real(s.re)?)
        } else {
            xi(s)?.ln()
        };
        let mag = if delta > T::zero() { nt * (two * delta / pi).ln() } else if n == 0 { T::zero() } else { T::neg_infinity() };
        let lf = crate::special::ln_gamma_real(nt + T::one())?;
        let term = (lx + mag - lf + two.ln()).exp();
        let term = if n % 2 == 1 { -term } else { term };
        sum = sum + term;
        if delta == T::zero() {
            break;
        }
        if term.norm() <= knobs.term_tol * sum.norm() {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        if n + 1 == knobs.max_terms {
            return Err(Error::Accuracy { what: "xi series".into(), estimate: to_f64(sum.norm()), est_error: to_f64(term.norm()) });
        }
    }
    let a = sinhc(cx((two * delta).sqrt()));
    Ok(a * a * (q * (two / pi).ln()).exp() * sum)
}

/// `E[e^{−qT(δ)}] = exp ∫(e^{−qt}−1)e^{−δt}θ(πt/2) dt/t`; the `θ−1` part by
/// quadrature, the constant part by Frullani's integral `log(δ/(q+δ))`.
pub fn t_delta_laplace<T: Real>(q: Complex<T>, delta: T, cfg: &QuadratureConfig<T>) -> Result<Complex<T>> {
    if !(delta > T::zero()) {
        return Err(Error::domain(format!("T(delta) needs delta > 0, got {delta}")));
    }
    if !(q.re >= T::zero()) {
        return Err(Error::domain(format!("Laplace transform needs Re(q) >= 0, got {q}")));
    }
    let frullani = (cx::<T>(delta) / (q + delta)).ln();
    Ok((s2_levy_exponent(q, delta, cfg)? + frullani).exp())
}

/// Weight `1/(π²n²/2+δ)` of the `n`-th gamma term.
fn weight(n: usize, delta: f64) -> f64 {
    let nf = n as f64;
    1.0 / (std::f64::consts::PI.powi(2) * nf * nf / 2.0 + delta)
}

/// `E[S₂(δ)] = Σ_{n≥1} 2/(π²n²/2+δ) = (4/π²)(πc coth πc − 1)/(2c²)`, `c² = 2δ/π²`.
pub fn s2_delta_mean(delta: f64) -> f64 {
    let pi2 = std::f64::consts::PI.powi(2);
    let c2 = 2.0 * delta / pi2;
    if c2 < 1e-6 {
        // π²/6 − (π⁴/90) c² + …
        return 4.0 / pi2 * (pi2 / 6.0 - pi2 * pi2 / 90.0 * c2);
    }
    let c = c2.sqrt();
    let pc = std::f64::consts::PI * c;
    4.0 / pi2 * (pc / pc.tanh() - 1.0) / (2.0 * c2)
}

/// Terms below this index are drawn exactly; the rest in dyadic blocks.
pub const EXACT_TERMS: usize = 256;

/// Truncation of `T(δ) = Σ_n Γ_{2,n}/(π²n²/2+δ) + Exp(δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TDeltaParams {
    pub delta: f64,
    /// Last index `N*` of the gamma series.
    pub n_terms: usize,
    /// Add the mean `Σ_{n>N*} 2/(π²n²/2+δ)` of the dropped terms.
    pub tail_mean_correction: bool,
}

impl TDeltaParams {
    pub fn new(delta: f64, n_terms: usize, tail_mean_correction: bool) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::domain(format!("delta must be positive, got {delta}")));
        }
        if n_terms < 100 {
            return Err(Error::domain(format!("n_terms must be at least 100, got {n_terms}")));
        }
        Ok(TDeltaParams { delta, n_terms, tail_mean_correction })
    }
}

/// Sampler of `S₂(δ)` (`with_exp = false`) or `T(δ)`.
#[derive(Debug, Clone)]
pub struct SeriesSampler {
    pub params: TDeltaParams,
    pub with_exp: bool,
    exact: Vec<f64>,
    /// `(shape, scale, law)` of each moment-matched block.
    blocks: Vec<(f64, f64, Gamma<f64>)>,
    shift: f64,
    exp: Exp<f64>,
}

impl SeriesSampler {
    pub fn new(params: TDeltaParams, with_exp: bool) -> Result<SeriesSampler> {
        let d = params.delta;
        let last = params.n_terms;
        let exact: Vec<f64> = (1..=last.min(EXACT_TERMS)).map(|n| weight(n, d)).collect();
        let mut blocks = Vec::new();
        let mut lo = EXACT_TERMS + 1;
        while lo <= last {
            let hi = (2 * lo - 1).min(last);
            let (mut m, mut v) = (0.0, 0.0);
            for n in lo..=hi {
                let w = weight(n, d);
                m += 2.0 * w;
                v += 2.0 * w * w;
            }
            let (shape, scale) = (m * m / v, v / m);
            blocks.push((shape, scale, Gamma::new(shape, scale).map_err(|e| Error::domain(format!("block gamma: {e}")))?));
            lo = hi + 1;
        }
        let shift = if params.tail_mean_correction { s2_delta_mean(d) - (1..=last).map(|n| 2.0 * weight(n, d)).sum::<f64>() } else { 0.0 };
        let exp = Exp::new(d).map_err(|e| Error::domain(format!("Exp({d}): {e}")))?;
        Ok(SeriesSampler { params, with_exp, exact, blocks, shift: shift.max(0.0), exp })
    }

    /// Deterministic shift standing in for the dropped terms.
    pub fn tail_shift(&self) -> f64 {
        self.shift
    }
}

impl Variate for SeriesSampler {
    fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        let mut s = self.shift;
        for &w in &self.exact {
            let g: f64 = rand_distr::Exp1.sample(rng);
            let h: f64 = rand_distr::Exp1.sample(rng);
            s += w * (g + h);
        }
        for (_, _, b) in &self.blocks {
            s += b.sample(rng);
        }
        if self.with_exp {
            s += self.exp.sample(rng);
        }
        s
    }
}

pub fn t_delta_sample(p: TDeltaParams, rng: &mut dyn RngCore, n: usize) -> Result<Vec<f64>> {
    Ok(SeriesSampler::new(p, true)?.draw_n(rng, n))
}

/// Cumulants `κ₁..κ₃` of the sampled `T(δ)` (or `S₂(δ)`), truncation included.
pub fn t_delta_cumulants(p: &TDeltaParams, with_exp: bool) -> [f64; 3] {
    let d = p.delta;
    let mut k = [0.0; 3];
    for n in 1..=p.n_terms {
        let w = weight(n, d);
        k[0] += 2.0 * w;
        k[1] += 2.0 * w * w;
        k[2] += 4.0 * w * w * w;
    }
    if p.tail_mean_correction {
        k[0] = s2_delta_mean(d);
    }
    if with_exp {
        k[0] += 1.0 / d;
        k[1] += 1.0 / (d * d);
        k[2] += 2.0 / (d * d * d);
    }
    k
}

/// Raw moments `E[X^q]`, `q ≤ 3`, from cumulants.
pub fn moments_from_cumulants(k: &[f64; 3], q: usize) -> Result<f64> {
    Ok(match q {
        0 => 1.0,
        1 => k[0],
        2 => k[1] + k[0] * k[0],
        3 => k[2] + 3.0 * k[1] * k[0] + k[0].powi(3),
        _ => return Err(Error::domain(format!("cumulant moments implemented for q <= 3, got {q}"))),
    })
}

/// Monte-Carlo estimate of `E[T^q − (q/δ)T^{q−1}]` as a single statistic.
pub fn t_delta_functional_stats(p: &TDeltaParams, q: usize, n: usize, seed: u64, streams: usize) -> Result<crate::sampling::SampleStats> {
    use rayon::prelude::*;
    let sampler = SeriesSampler::new(*p, true)?;
    let (qf, d) = (q as f64, p.delta);
    let streams = streams.max(1);
    let parts: Vec<Welford> = (0..streams)
        .into_par_iter()
        .map(|s| {
            let count = n / streams + usize::from(s < n % streams);
            let mut rng = crate::sampling::RngStream::new(seed, s as u64).rng();
            let mut acc = Welford::default();
            for _ in 0..count {
                let t = sampler.draw(&mut rng);
                acc.push(t.powi(q as i32) - qf / d * t.powi(q as i32 - 1));
            }
            acc
        })
        .collect();
    parts.iter().fold(Welford::default(), |a, b| a.merge(b)).stats()
}

/// One functional-equation comparison for `T(δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TDeltaCheck {
    pub q: usize,
    pub delta: f64,
    /// Monte-Carlo `E[T^q] − (q/δ)E[T^{q−1}]`.
    pub lhs_mc: f64,
    pub stderr: f64,
    /// Same quantity from the cumulants of the truncated series.
    pub lhs_exact: f64,
    /// `E[S₂(δ)^q]` from the `ξ` series.
    pub rhs: f64,
    /// `|lhs_mc − rhs| / stderr`.
    pub z: f64,
}

/// Compares both sides of the `T(δ)` functional equation; the report's residual is
/// measured in Monte-Carlo standard errors.
pub fn t_delta_functional_residual(
    q: usize,
    p: &TDeltaParams,
    mc: &crate::sampling::SampleStats,
    knobs: &XiSeriesKnobs<f64>,
) -> Result<(IdentityReport, TDeltaCheck)> {
    if q == 0 || q > 3 {
        return Err(Error::domain(format!("functional equation checked for q in 1..=3, got {q}")));
    }
    let rhs = s2_delta_transform(S2Transform::MellinSeries, cx(q as f64), p.delta, knobs)?.re;
    let k = t_delta_cumulants(p, true);
    let lhs_exact = moments_from_cumulants(&k, q)? - q as f64 / p.delta * moments_from_cumulants(&k, q - 1)?;
    let z = if mc.stderr > 0.0 { (mc.mean - rhs).abs() / mc.stderr } else { f64::INFINITY };
    let mut report = IdentityReport::new("t_delta_funceq", format!("q={q} delta={} n_terms={}", p.delta, p.n_terms));
    report.record(z);
    Ok((report, TDeltaCheck { q, delta: p.delta, lhs_mc: mc.mean, stderr: mc.stderr, lhs_exact, rhs, z }))
}

/// Weighted least-squares line through `(δ, value ± stderr)`; returns the
/// intercept at `δ = 0` and its standard error.
pub fn extrapolate_to_zero(points: &[(f64, f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::domain("extrapolation needs at least two points"));
    }
    let (mut sw, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y, e) in points {
        let w = if e > 0.0 { 1.0 / (e * e) } else { 1e30 };
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    let det = sw * sxx - sx * sx;
    if !(det.abs() > 0.0) {
        return Err(Error::domain("degenerate extrapolation grid"));
    }
    let intercept = (sxx * sy - sx * sxy) / det;
    Ok((intercept, (sxx / det).sqrt()))
}
