//! Reproducible Monte-Carlo for Barnes beta laws and the elementary laws they are
//! built from.
//!
//! `β_{M,N}` with `M < N` is compound Poisson: `−log β` is a Poisson number of jumps
//! drawn from the normalized Lévy density. For `M = N` the law is the infinite
//! product `∏_k β_{M−1,N}(â_i, b₀+k a_i)`; the truncation at `K` is again compound
//! Poisson, with Lévy density `ν_{M,N}(t)(1 − e^{−(K+1)a_i t})`, and the neglected
//! factors are replaced by their mean.
//!
//! Everything here is `f64`.

use std::sync::OnceLock;

use num_complex::Complex;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1, LogNormal, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mellin::{levy_density, sn_log_gamma, BarnesBetaParams};
use crate::quad::{breakpoints, gauss_legendre, integrate, QuadratureConfig};

/// Default seed of the command line and of the test suite.
pub const DEFAULT_SEED: u64 = 0xB41215;

/// Number of abscissae of a [`JumpTable`].
pub const TABLE_POINTS: usize = 4096;

/// Relative Lévy mass left outside the table range.
const TABLE_CUT: f64 = 1e-10;

/// Probability handled by rejection sampling at either end of the table.
const TAIL_PROB: f64 = 1e-6;

/// A `(seed, stream_id)` pair naming one ChaCha20 keystream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    /// Fresh generator at counter zero of this stream.
    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Mean and standard error of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    pub n: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub stderr: f64,
}

/// Welford accumulator, mergeable with Chan's pairwise rule.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&self, other: &Welford) -> Welford {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let (na, nb) = (self.n as f64, other.n as f64);
        Welford {
            n,
            mean: self.mean + d * nb / n as f64,
            m2: self.m2 + other.m2 + d * d * na * nb / n as f64,
        }
    }

    pub fn stats(&self) -> Result<SampleStats> {
        if self.n == 0 {
            return Err(Error::domain("no samples"));
        }
        let variance = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        Ok(SampleStats { n: self.n, mean: self.mean, variance, stderr: (variance / self.n as f64).sqrt() })
    }
}

/// A law that can be drawn from any generator.
pub trait Variate {
    fn draw(&self, rng: &mut dyn RngCore) -> f64;

    fn draw_n(&self, rng: &mut dyn RngCore, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.draw(rng)).collect()
    }
}

/// Uniform on `(0, 1]`.
fn open_unit(rng: &mut dyn RngCore) -> f64 {
    1.0 - rng.random::<f64>()
}

/// Fritsch–Carlson slopes for a monotone cubic through `(x, y)`.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let s: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        if s[k - 1] * s[k] > 0.0 {
            let (w1, w2) = (2.0 * h[k] + h[k - 1], h[k] + 2.0 * h[k - 1]);
            d[k] = (w1 + w2) / (w1 / s[k - 1] + w2 / s[k]);
        }
    }
    d[0] = s[0];
    d[n - 1] = s[n - 2];
    d
}

/// Tabulated inverse CDF of a Lévy density on `(0, ∞)` with finite mass.
#[derive(Debug, Clone)]
pub struct JumpTable {
    /// Log-spaced abscissae.
    pub grid: Vec<f64>,
    /// Normalized cumulative mass at `grid`; `cdf[0]` is the mass of `(0, grid[0]]`.
    pub cdf: Vec<f64>,
    /// Total mass, from the caller's closed form.
    pub lambda: f64,
    /// Mass accumulated by the table itself (before normalization).
    pub table_mass: f64,
    slopes: Vec<f64>,
    log_grid: Vec<f64>,
    /// `(t_lo, cdf(t_lo))`: below this the lower rejection sampler is used.
    lo: (usize, f64),
    /// `(t_hi, cdf(t_hi))`: above this the upper rejection sampler is used.
    hi: (usize, f64),
    lower_env: LowerEnvelope,
    upper_env: UpperEnvelope,
    law: LevyLaw,
}

/// Density `g(t) t^{p−1}` near zero; `bound ≥ sup g` on `(0, t_lo]`.
#[derive(Debug, Clone, Copy)]
struct LowerEnvelope {
    p: f64,
    bound: f64,
}

/// Density `≤ bound·e^{−rate t}` on `[t_hi, ∞)`.
#[derive(Debug, Clone, Copy)]
struct UpperEnvelope {
    rate: f64,
    bound: f64,
}

/// Lévy density of a (possibly truncated-product) Barnes beta law.
#[derive(Debug, Clone)]
struct LevyLaw {
    params: BarnesBetaParams<f64>,
    /// `(a_i, K)` of the merged density `ν(t)(1 − e^{−(K+1)a_i t})`.
    merged: Option<(f64, usize)>,
}

impl LevyLaw {
    fn density(&self, t: f64) -> f64 {
        let base = levy_density(&self.params, t);
        match self.merged {
            None => base,
            Some((ai, k)) => base * -(-(k as f64 + 1.0) * ai * t).exp_m1(),
        }
    }

    /// Exponent `p` with density `~ t^{p−1}` at zero.
    fn small_power(&self) -> f64 {
        let p = self.params.N() as f64 - self.params.M() as f64;
        if self.merged.is_some() {
            p + 1.0
        } else {
            p
        }
    }

    /// `sup_{(0,t]} density(s)/s^{p−1}`, using monotonicity of each factor.
    fn lower_bound(&self, t: f64) -> f64 {
        let p = &self.params;
        let mut c = p.b.iter().product::<f64>();
        for &a in &p.a.a {
            c *= t / -(-a * t).exp_m1();
        }
        if let Some((ai, k)) = self.merged {
            c *= (k as f64 + 1.0) * ai;
        }
        c
    }

    /// `C` with `density(s) ≤ C e^{−b₀ s}` on `[t, ∞)`.
    fn upper_bound(&self, t: f64) -> f64 {
        let den = self.params.a.a.iter().fold(t, |d, &a| d * -(-a * t).exp_m1());
        1.0 / den
    }
}

impl JumpTable {
    fn build(law: LevyLaw, lambda: f64) -> Result<JumpTable> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain(format!("jump table needs a finite positive mass, got {lambda}")));
        }
        let p = law.small_power();
        let b0 = law.params.b0;
        // (0, t_min] holds about TABLE_CUT·λ
        let tiny = 1e-12;
        let g0 = law.density(tiny) / tiny.powf(p - 1.0);
        let t_min = (TABLE_CUT * lambda * p / g0).powf(1.0 / p).min(1e-3 / b0);
        let mut t_max = 1.0 / b0;
        while law.upper_bound(t_max) * (-b0 * t_max).exp() / b0 > TABLE_CUT * lambda {
            t_max *= 1.25;
        }
        let n = TABLE_POINTS;
        let ratio = (t_max / t_min).ln() / (n - 1) as f64;
        let grid: Vec<f64> = (0..n).map(|k| t_min * (ratio * k as f64).exp()).collect();
        let gl = gl8();
        let cell = |a: f64, b: f64| -> f64 {
            let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
            gl.iter().map(|&(x, w)| w * law.density(mid + half * x)).sum::<f64>() * half
        };
        let mut cum = Vec::with_capacity(n);
        let mut acc = cell(0.0, t_min);
        cum.push(acc);
        for w in grid.windows(2) {
            acc += cell(w[0], w[1]);
            cum.push(acc);
        }
        let table_mass = acc;
        let cdf: Vec<f64> = cum.iter().map(|c| c / table_mass).collect();
        let log_grid: Vec<f64> = grid.iter().map(|t| t.ln()).collect();
        let slopes = pchip_slopes(&cdf, &log_grid);
        let lo_idx = cdf.partition_point(|&c| c < TAIL_PROB).min(n - 2);
        let hi_idx = cdf.partition_point(|&c| c <= 1.0 - TAIL_PROB).clamp(lo_idx + 1, n - 1);
        let lower_env = LowerEnvelope { p, bound: law.lower_bound(grid[lo_idx]) };
        let upper_env = UpperEnvelope { rate: b0, bound: law.upper_bound(grid[hi_idx]) };
        Ok(JumpTable {
            lo: (lo_idx, cdf[lo_idx]),
            hi: (hi_idx, cdf[hi_idx]),
            grid,
            cdf,
            lambda,
            table_mass,
            slopes,
            log_grid,
            lower_env,
            upper_env,
            law,
        })
    }

    /// Jump size for a uniform `u`, by monotone interpolation of `log t` against the
    /// cumulative mass.
    pub fn quantile(&self, u: f64) -> f64 {
        let k = self.cdf.partition_point(|&c| c < u).clamp(1, self.cdf.len() - 1) - 1;
        let (x0, x1) = (self.cdf[k], self.cdf[k + 1]);
        let h = x1 - x0;
        if !(h > 0.0) {
            return self.grid[k];
        }
        let s = ((u - x0) / h).clamp(0.0, 1.0);
        let (y0, y1) = (self.log_grid[k], self.log_grid[k + 1]);
        let (d0, d1) = (self.slopes[k] * h, self.slopes[k + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let y = (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * d0 + (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * d1;
        y.clamp(y0.min(y1), y0.max(y1)).exp()
    }

    fn draw_lower(&self, rng: &mut dyn RngCore) -> f64 {
        let t_lo = self.grid[self.lo.0];
        let env = self.lower_env;
        loop {
            let t = t_lo * open_unit(rng).powf(1.0 / env.p);
            let g = self.law.density(t) / t.powf(env.p - 1.0);
            if rng.random::<f64>() * env.bound <= g {
                return t;
            }
        }
    }

    fn draw_upper(&self, rng: &mut dyn RngCore) -> f64 {
        let t_hi = self.grid[self.hi.0];
        let env = self.upper_env;
        loop {
            let e: f64 = Exp1.sample(rng);
            let t = t_hi + e / env.rate;
            let g = self.law.density(t) * (env.rate * t).exp();
            if rng.random::<f64>() * env.bound <= g {
                return t;
            }
        }
    }

    /// One jump.
    pub fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        let u = rng.random::<f64>();
        if u < self.lo.1 {
            self.draw_lower(rng)
        } else if u > self.hi.1 {
            self.draw_upper(rng)
        } else {
            self.quantile(u)
        }
    }
}

fn gl8() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(8))
}

/// Compound-Poisson sampler of `β = exp(−Σ jumps)`, times a fixed factor.
#[derive(Debug, Clone)]
pub struct BetaSampler {
    pub table: JumpTable,
    poisson: Poisson<f64>,
    /// `log` of the deterministic factor multiplied into every draw (tail mean of
    /// the product sampler; zero otherwise).
    pub log_correction: f64,
    /// Mean of `−log` of the neglected product factors.
    pub tail_mean: f64,
    /// Set when truncation bias is left uncorrected above tolerance.
    pub warning: Option<String>,
}

impl BetaSampler {
    /// Sampler of `β_{M,N}(a, b)` for `M < N`.
    pub fn compound(params: &BarnesBetaParams<f64>, cfg: &QuadratureConfig<f64>) -> Result<BetaSampler> {
        if params.M() >= params.N() {
            return Err(Error::domain(format!(
                "compound Poisson sampling needs M < N, got M={} N={}",
                params.M(),
                params.N()
            )));
        }
        let lambda = sn_log_gamma(&params.a, Complex::new(0.0, 0.0), params.b0, &params.b, cfg)?.value.re;
        let table = JumpTable::build(LevyLaw { params: params.clone(), merged: None }, lambda)?;
        BetaSampler::from_table(table, 0.0, 0.0, None)
    }

    /// Sampler of `β_{N,N}(a, b)` through `∏_{k≤K} β_{N−1,N}(â_i, b₀+k a_i)`, with
    /// the remaining factors replaced by `exp(−E[Σ_{k>K} −log β_k])` when
    /// `tail_correction` is set.
    pub fn product(
        params: &BarnesBetaParams<f64>,
        i: usize,
        k: usize,
        tail_correction: bool,
        tail_tol: f64,
        cfg: &QuadratureConfig<f64>,
    ) -> Result<BetaSampler> {
        let (m, n) = (params.M(), params.N());
        if m != n || m == 0 {
            return Err(Error::domain(format!("product sampling needs M = N >= 1, got M={m} N={n}")));
        }
        if i >= m {
            return Err(Error::domain(format!("period index {i} out of range for M={m}")));
        }
        let ai = params.a.a[i];
        let lower = params.a.without(i);
        let mut lambda = 0.0;
        for j in 0..=k {
            let b0 = params.b0 + j as f64 * ai;
            lambda += sn_log_gamma(&lower, Complex::new(0.0, 0.0), b0, &params.b, cfg)?.value.re;
        }
        let tail = product_tail_mean(params, ai, k, cfg)?;
        let table = JumpTable::build(LevyLaw { params: params.clone(), merged: Some((ai, k)) }, lambda)?;
        let warning = (!tail_correction && tail > tail_tol)
            .then(|| format!("truncation K={k} leaves E[-log] bias {tail:.3e} above {tail_tol:.1e}; enable the tail correction or raise K"));
        BetaSampler::from_table(table, if tail_correction { -tail } else { 0.0 }, tail, warning)
    }

    fn from_table(table: JumpTable, log_correction: f64, tail_mean: f64, warning: Option<String>) -> Result<BetaSampler> {
        let poisson = Poisson::new(table.lambda).map_err(|e| Error::domain(format!("Poisson rate {}: {e}", table.lambda)))?;
        Ok(BetaSampler { table, poisson, log_correction, tail_mean, warning })
    }

    pub fn lambda(&self) -> f64 {
        self.table.lambda
    }
}

impl Variate for BetaSampler {
    fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        let jumps = self.poisson.sample(rng) as u64;
        let mut s = 0.0;
        for _ in 0..jumps {
            s += self.table.draw(rng);
        }
        if s == 0.0 && self.log_correction == 0.0 {
            return 1.0;
        }
        (-s + self.log_correction).exp()
    }
}

/// `Σ_{k>K} E[−log β_{N−1,N}(â_i, b₀+k a_i)] = ∫ t ν_{N,N}(t) e^{−(K+1)a_i t} dt`.
pub fn product_tail_mean(params: &BarnesBetaParams<f64>, ai: f64, k: usize, cfg: &QuadratureConfig<f64>) -> Result<f64> {
    let rate = params.b0 + (k as f64 + 1.0) * ai;
    let t_end = 46.0 / rate;
    let scale = params.b.iter().chain(params.a.a.iter()).fold(rate, |m, &x| m.max(x));
    let mut brk = vec![0.0];
    brk.extend(breakpoints((1.0 / scale).min(t_end / 4.0), t_end, t_end));
    let (v, _) = integrate(
        |t| Complex::new(t * levy_density(params, t) * (-(k as f64 + 1.0) * ai * t).exp(), 0.0),
        &brk,
        cfg,
        "product tail mean",
    )?;
    Ok(v.re)
}

/// `β_{M,N}` draws: compound Poisson for `M < N`.
pub fn sample_beta_compound(params: &BarnesBetaParams<f64>, rng: &mut dyn RngCore, n: usize, cfg: &QuadratureConfig<f64>) -> Result<Vec<f64>> {
    Ok(BetaSampler::compound(params, cfg)?.draw_n(rng, n))
}

/// `β_{N,N}` draws from the truncated product, with the sampler for its diagnostics.
pub fn sample_beta_product(
    params: &BarnesBetaParams<f64>,
    rng: &mut dyn RngCore,
    n: usize,
    k: usize,
    tail_correction: bool,
    cfg: &QuadratureConfig<f64>,
) -> Result<(Vec<f64>, BetaSampler)> {
    let s = BetaSampler::product(params, 0, k, tail_correction, 1e-4, cfg)?;
    Ok((s.draw_n(rng, n), s))
}

/// Laws used as building blocks of the Selberg and xi constructions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum ElementaryLaw {
    /// `exp(N(0, σ²))`.
    Lognormal { sigma2: f64 },
    /// `E^{−1/τ}`, density `τ y^{−1−τ} e^{−y^{−τ}}`.
    Frechet { tau: f64 },
    /// Density `2/y³` on `y > 1`.
    Pareto23,
    /// Density `b₀ x^{b₀−1}` on `(0, 1)`.
    Beta00 { b0: f64 },
    /// Density `x e^{−x}`.
    Gamma2,
    Exp { rate: f64 },
}

impl ElementaryLaw {
    pub fn validate(&self) -> Result<()> {
        let bad = |name: &str, v: f64| Err(Error::domain(format!("{name} must be positive, got {v}")));
        match *self {
            ElementaryLaw::Lognormal { sigma2 } if !(sigma2 >= 0.0) || !sigma2.is_finite() => bad("sigma2", sigma2),
            ElementaryLaw::Frechet { tau } if !(tau > 0.0) || !tau.is_finite() => bad("tau", tau),
            ElementaryLaw::Beta00 { b0 } if !(b0 > 0.0) || !b0.is_finite() => bad("b0", b0),
            ElementaryLaw::Exp { rate } if !(rate > 0.0) || !rate.is_finite() => bad("rate", rate),
            _ => Ok(()),
        }
    }
}

impl Variate for ElementaryLaw {
    fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        match *self {
            ElementaryLaw::Lognormal { sigma2 } => match LogNormal::new(0.0, sigma2.sqrt()) {
                Ok(d) => d.sample(rng),
                Err(_) => {
                    let z: f64 = StandardNormal.sample(rng);
                    (sigma2.sqrt() * z).exp()
                }
            },
            ElementaryLaw::Frechet { tau } => {
                let e: f64 = Exp1.sample(rng);
                e.powf(-1.0 / tau)
            }
            ElementaryLaw::Pareto23 => open_unit(rng).powf(-0.5),
            ElementaryLaw::Beta00 { b0 } => open_unit(rng).powf(1.0 / b0),
            ElementaryLaw::Gamma2 => {
                let (e1, e2): (f64, f64) = (Exp1.sample(rng), Exp1.sample(rng));
                e1 + e2
            }
            ElementaryLaw::Exp { rate } => {
                let e: f64 = Exp1.sample(rng);
                e / rate
            }
        }
    }
}

pub fn sample_elementary(law: ElementaryLaw, rng: &mut dyn RngCore, n: usize) -> Result<Vec<f64>> {
    law.validate()?;
    Ok(law.draw_n(rng, n))
}

/// Welford mean and standard error of `X^q` over `n` draws.
pub fn mc_mellin(sampler: &dyn Variate, q: f64, n: usize, rng: &mut dyn RngCore) -> Result<SampleStats> {
    let mut acc = Welford::default();
    for _ in 0..n {
        acc.push(sampler.draw(rng).powf(q));
    }
    acc.stats()
}

/// [`mc_mellin`] split over `streams` consecutive stream ids of `seed`; the result
/// does not depend on how rayon schedules the chunks.
pub fn mc_mellin_streams(sampler: &(dyn Variate + Sync), q: f64, n: usize, seed: u64, streams: usize) -> Result<SampleStats> {
    let streams = streams.max(1);
    let parts: Vec<Welford> = (0..streams)
        .into_par_iter()
        .map(|s| {
            let count = n / streams + usize::from(s < n % streams);
            let mut rng = RngStream::new(seed, s as u64).rng();
            let mut acc = Welford::default();
            for _ in 0..count {
                acc.push(sampler.draw(&mut rng).powf(q));
            }
            acc
        })
        .collect();
    parts.iter().fold(Welford::default(), |a, b| a.merge(b)).stats()
}
