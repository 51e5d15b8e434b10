//! Verification suites: every identity and oracle comparison the library claims,
//! as flat check records for the CLI and the acceptance harness.

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{identity_residual, GammaIdentity, IdentityKnobs, IdentityReport};
use crate::mellin::{
    beta_identity_residual, eta_barnes_product, eta_shintani_product, levy_exponent, log_eta, mass_at_one, s_operator, BarnesBetaParams,
    BetaIdentity, BetaKnobs, MassMethod,
};
use crate::multigamma::{gamma1_closed, log_gamma};
use crate::quad::{gauss_legendre, QuadratureConfig};
use crate::sampling::{mc_mellin_streams, BetaSampler, RngStream, DEFAULT_SEED};
use crate::scalar::binomial;
use crate::selberg::{
    beta22_delta, beta22_delta_cumulant, beta22_delta_log_mellin_g, beta22_delta_log_mellin_levy, critical_funceq, critical_infinite_product,
    critical_log_mellin, critical_negative_moment, critical_sampler, master_factor_log_mellin, master_log_mellin, selberg_identity_residual,
    selberg_log_mellin, selberg_moment, selberg_sampler, MasterParams, MasterSampler, SelbergIdentity, SelbergKnobs, SelbergParams,
};
use crate::series::{b22_closed, bernoulli_poly, GammaParams};
use crate::xi::{
    extrapolate_to_zero, s2_delta_transform, t_delta_functional_residual, t_delta_functional_stats, theta, xi, xi_direct, S2Transform, TDeltaParams,
    XiSeriesKnobs,
};

/// One comparison. MC checks measure `residual` in standard errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_ref: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckRecord {
    fn new(name: &str, reference: &str, lhs: f64, rhs: f64, residual: f64, threshold: f64) -> Self {
        CheckRecord {
            name: name.into(),
            paper_ref: reference.into(),
            lhs,
            rhs,
            residual,
            threshold,
            pass: residual.is_finite() && residual < threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Gamma,
    Beta,
    Selberg,
    Critical,
    Xi,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "gamma" => Suite::Gamma,
            "beta" => Suite::Beta,
            "selberg" => Suite::Selberg,
            "critical" => Suite::Critical,
            "xi" => Suite::Xi,
            "all" => Suite::All,
            _ => return Err(Error::domain(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Floor applied to every analytic threshold.
    pub tol: Option<f64>,
    pub seed: u64,
    /// Draws per Monte-Carlo check.
    pub samples: usize,
    pub streams: usize,
    /// Standard errors allowed in Monte-Carlo checks.
    pub mc_sigmas: f64,
    pub cfg: QuadratureConfig<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tol: None, seed: DEFAULT_SEED, samples: 1_000_000, streams: 8, mc_sigmas: 3.0, cfg: QuadratureConfig::default() }
    }
}

struct Sink<'a> {
    opts: &'a VerifyOptions,
    out: Vec<CheckRecord>,
}

impl Sink<'_> {
    fn thr(&self, t: f64) -> f64 {
        self.opts.tol.map_or(t, |f| f.max(t))
    }

    fn push(&mut self, name: &str, reference: &str, lhs: f64, rhs: f64, residual: f64, threshold: f64) {
        let t = self.thr(threshold);
        self.out.push(CheckRecord::new(name, reference, lhs, rhs, residual, t));
    }

    /// Worst relative deviation over `(lhs, rhs)` pairs.
    fn worst(&mut self, name: &str, reference: &str, threshold: f64, pairs: &[(Complex<f64>, Complex<f64>)]) {
        let mut best = (0.0, 0.0, -1.0);
        for &(l, r) in pairs {
            let d = (l - r).norm() / r.norm().max(f64::MIN_POSITIVE);
            let d = if d.is_nan() { f64::INFINITY } else { d };
            if d > best.2 {
                best = (l.re, r.re, d);
            }
        }
        self.push(name, reference, best.0, best.1, best.2, threshold);
    }

    fn report(&mut self, name: &str, reference: &str, r: &IdentityReport, threshold: f64) {
        self.push(name, reference, r.residual, 0.0, r.residual, threshold);
    }

    fn mc(&mut self, name: &str, reference: &str, mean: f64, stderr: f64, exact: f64) {
        let z = if stderr > 0.0 { (mean - exact).abs() / stderr } else { f64::INFINITY };
        self.out.push(CheckRecord::new(name, reference, mean, exact, z, self.opts.mc_sigmas));
    }
}

fn c(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

/// Runs a suite; records come back sorted by name.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    let mut sink = Sink { opts, out: Vec::new() };
    let all = suite == Suite::All;
    if all || suite == Suite::Gamma {
        gamma_suite(&mut sink)?;
    }
    if all || suite == Suite::Beta {
        beta_suite(&mut sink)?;
    }
    if all || suite == Suite::Selberg {
        selberg_suite(&mut sink)?;
    }
    if all || suite == Suite::Critical {
        critical_suite(&mut sink)?;
    }
    if all || suite == Suite::Xi {
        xi_suite(&mut sink)?;
    }
    let mut out = sink.out;
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

fn gamma_suite(s: &mut Sink) -> Result<()> {
    let cfg = s.opts.cfg;
    let mut pairs = Vec::new();
    for a in [0.5, 1.0, 2.5] {
        for w in [c(0.3), c(1.7), Complex::new(4.0, 1.0)] {
            let p = GammaParams::new(vec![a])?;
            pairs.push((log_gamma(&p, w, &cfg)?.value.exp(), gamma1_closed(a, w)?));
        }
    }
    s.worst("gamma1_closed_form", "one-period Barnes gamma equals the rescaled Euler gamma", 1e-8, &pairs);

    let knobs = IdentityKnobs::<f64> { cfg, ..IdentityKnobs::default() };
    for a in [vec![1.3], vec![1.0, 1.7], vec![1.0, 1.5, 2.2]] {
        let p = GammaParams::new(a)?;
        let r = identity_residual(GammaIdentity::FunctionalEq, &p, &knobs)?;
        s.report(&format!("gamma_funceq_m{}", p.M()), "Gamma_M(w) = Gamma_{M-1}(w|a_hat) Gamma_M(w+a_i)", &r, 1e-8);
    }
    for a in [vec![1.3], vec![1.0, 1.7]] {
        let p = GammaParams::new(a)?;
        let r = identity_residual(GammaIdentity::Scaling, &p, &knobs)?;
        s.report(&format!("gamma_scaling_m{}", p.M()), "scaling of Gamma_M under a -> kappa a", &r, 1e-7);
        for k in [2, 3] {
            let kn = IdentityKnobs { k, ..knobs.clone() };
            let r = identity_residual(GammaIdentity::Multiplication, &p, &kn)?;
            s.report(&format!("gamma_multiplication_m{}_k{k}", p.M()), "Barnes multiplication formula", &r, 1e-7);
        }
    }
    let p = GammaParams::new(vec![1.0])?;
    let r = identity_residual(GammaIdentity::ShintaniGamma, &p, &knobs)?;
    s.report("gamma_shintani_m1", "Shintani factorization of Gamma_2 over Gamma_1", &r, 1e-5);

    bernoulli_checks(s)
}

fn bernoulli_checks(s: &mut Sink) -> Result<()> {
    let xs = [c(0.0), c(0.4), c(1.3), Complex::new(2.0, 0.5)];
    let mut pairs = Vec::new();
    for (a1, a2) in [(1.0, 1.0), (1.0, 2.0), (0.7, 1.9)] {
        let p = GammaParams::new(vec![a1, a2])?;
        for &x in &xs {
            pairs.push((bernoulli_poly(&p, 2, x)?, b22_closed(a1, a2, x)));
        }
    }
    s.worst("bernoulli_b22_closed", "closed form of B_{2,2}(x|a)", 1e-12, &pairs);

    let mut rng = RngStream::new(s.opts.seed, 101).rng();
    let mut pairs = Vec::new();
    for a in [vec![1.0, 1.6], vec![0.8], vec![1.0, 1.2, 2.0]] {
        let p = GammaParams::new(a)?;
        for _ in 0..4 {
            let x = Complex::new(rng.random_range(-1.0..2.0), rng.random_range(-0.5..0.5));
            let y = Complex::new(rng.random_range(-1.0..2.0), 0.0);
            for m in 0..=4 {
                let mut rhs = c(0.0);
                for q in 0..=m {
                    rhs += bernoulli_poly(&p, q, x)? * binomial::<f64>(m, q) * (-y).powu((m - q) as u32);
                }
                pairs.push((bernoulli_poly(&p, m, x + y)?, rhs));
            }
        }
    }
    s.worst("bernoulli_binomial_shift", "binomial shift of multiple Bernoulli polynomials", 1e-10, &pairs);

    let w = Complex::new(0.35, 0.2);
    let mut pairs = Vec::new();
    for a in [vec![1.3], vec![1.0, 1.7]] {
        let p = GammaParams::new(a.clone())?;
        let mm = a.len();
        for k in 2..=3usize {
            for m in 0..=3usize {
                let mut lhs = c(0.0);
                for idx in 0..k.pow(mm as u32) {
                    let mut shift = c(0.0);
                    let mut r = idx;
                    for aj in &a {
                        shift += c((r % k) as f64 * aj / k as f64);
                        r /= k;
                    }
                    lhs += bernoulli_poly(&p, m, w + shift)?;
                }
                let rhs = bernoulli_poly(&p, m, w * k as f64)? * (k as f64).powi(mm as i32 - m as i32);
                pairs.push((lhs, rhs));
            }
        }
    }
    s.worst("bernoulli_multiplication_sum", "multiplication sum behind the Barnes multiplication formula", 1e-10, &pairs);

    let mut pairs = Vec::new();
    for kappa in [0.5, 2.0, 3.7] {
        let p = GammaParams::new(vec![1.0, 1.7])?;
        for &x in &xs {
            for m in 0..=4usize {
                let lhs = bernoulli_poly(&p.scaled(kappa), m, x)?;
                let rhs = bernoulli_poly(&p, m, x / kappa)? * kappa.powi(m as i32 - 2);
                pairs.push((lhs, rhs));
            }
        }
    }
    s.worst("bernoulli_scaling", "scaling of multiple Bernoulli polynomials", 1e-10, &pairs);
    Ok(())
}

/// Shared `(M, N)` test set of the `η` representations.
pub fn eta_test_set() -> Result<Vec<BarnesBetaParams<f64>>> {
    Ok(vec![
        BarnesBetaParams::new(vec![1.0], 1.0, vec![0.5])?,
        BarnesBetaParams::new(vec![1.0], 1.5, vec![0.5, 1.0])?,
        BarnesBetaParams::new(vec![1.0, 2.0], 1.0, vec![1.0, 1.0])?,
    ])
}

/// `log η` for `M = 1` from Euler's gamma alone.
pub fn log_eta_m1_closed(p: &BarnesBetaParams<f64>, q: Complex<f64>) -> Result<Complex<f64>> {
    let a = p.a.a[0];
    let l1 = |w: Complex<f64>| gamma1_closed(a, w).map(|g| g.ln());
    Ok(s_operator(l1, q, p.b0, &p.b)? - s_operator(l1, c(0.0), p.b0, &p.b)?)
}

fn beta_suite(s: &mut Sink) -> Result<()> {
    let cfg = s.opts.cfg;
    let qs = [c(0.5), c(-0.3), Complex::new(1.0, 0.5)];
    let set = eta_test_set()?;
    let mut direct = Vec::new();
    let (mut shintani, mut barnes) = (Vec::new(), Vec::new());
    for p in &set {
        for &q in &qs {
            let d = log_eta(p, q, &cfg)?.value;
            if p.M() == 1 {
                direct.push((d.exp(), log_eta_m1_closed(p, q)?.exp()));
            }
            shintani.push((eta_shintani_product(p, q, 0, 16, &cfg)?.value.exp(), d.exp()));
            barnes.push((eta_barnes_product(p, q, 16, &cfg)?.value.exp(), d.exp()));
        }
    }
    let worked = &set[2];
    direct.push((log_eta(worked, c(1.0), &cfg)?.value.exp(), c(2.0 / std::f64::consts::PI)));
    s.worst("eta_direct", "eta from S_N L_M against Euler-gamma closed forms and eta(1) = 2/pi", 1e-8, &direct);
    s.worst("eta_shintani_product", "Shintani factorization of eta", 1e-5, &shintani);
    s.worst("eta_barnes_product", "Barnes lattice factorization of eta", 1e-4, &barnes);

    let mass_set = [
        (BarnesBetaParams::new(vec![], 1.0, vec![1.0])?, Some(0.5)),
        (BarnesBetaParams::new(vec![], 1.0, vec![1.0, 1.0])?, Some(0.75)),
        (BarnesBetaParams::new(vec![1.0], 1.0, vec![1.0, 2.0])?, None),
    ];
    for (p, anchor) in &mass_set {
        let tag = format!("m{}n{}", p.M(), p.N());
        let quad = mass_at_one(p, MassMethod::Quadrature, &cfg)?;
        let sn = mass_at_one(p, MassMethod::SnFormula, &cfg)?;
        let prod = mass_at_one(p, MassMethod::Product, &cfg)?;
        let spread = (quad - sn).abs().max((prod - sn).abs()).max((quad - prod).abs());
        s.push(&format!("mass_at_one_{tag}_methods"), "mass at one by Levy quadrature, S_N formula and lattice product", quad, prod, spread, 1e-6);
        if let Some(v) = anchor {
            s.push(&format!("mass_at_one_{tag}_anchor"), "closed-form mass at one for M = 0", sn, *v, (sn - v).abs(), 1e-10);
        }
    }

    let mut pairs = Vec::new();
    for p in set.iter().filter(|p| p.M() < p.N()).chain(mass_set.iter().map(|(p, _)| p)) {
        for q in [0.5, -0.7, -2.0] {
            // exp(levy(q)) is the transform at −q
            let l = levy_exponent(p, c(q), &cfg)?.value.exp();
            pairs.push((l, log_eta(p, c(-q), &cfg)?.value.exp()));
        }
    }
    s.worst("levy_khinchine", "Levy-Khinchine representation of eta", 1e-7, &pairs);

    let knobs = BetaKnobs::<f64> { cfg, ..BetaKnobs::default() };
    let p3 = BarnesBetaParams::new(vec![1.0, 2.0], 1.5, vec![1.0, 2.0, 0.5])?;
    for kind in [
        BetaIdentity::FunctionalEq,
        BetaIdentity::Algebra1,
        BetaIdentity::Algebra2,
        BetaIdentity::Algebra3,
        BetaIdentity::Algebra4,
        BetaIdentity::Scaling,
        BetaIdentity::Reduction,
    ] {
        let r = beta_identity_residual(kind, &p3, &knobs)?;
        s.report(kind.label(), "Barnes beta functional equation, algebra, scaling and reduction", &r, 1e-8);
    }

    let p = &mass_set[0].0;
    let sampler = BetaSampler::compound(p, &cfg)?;
    let st = mc_mellin_streams(&sampler, 1.0, s.opts.samples, s.opts.seed ^ 0x11, s.opts.streams)?;
    s.mc("beta_compound_mc_mean", "compound Poisson sampler against eta(1)", st.mean, st.stderr, 0.75);
    Ok(())
}

fn selberg_suite(s: &mut Sink) -> Result<()> {
    let cfg = s.opts.cfg;
    let mp = MasterParams::new(1.0, 2.0, 3.0, 4.0)?;
    let lhs = master_log_mellin(&mp, c(0.5), &cfg)?;
    let rhs = master_factor_log_mellin(&mp, c(0.5), &cfg)?;
    s.push("master_factorization", "four Gamma_2 ratios against 2^{-cq} E[L^q] E[X1^q] E[X2^q] E[X3^q]", lhs.exp().re, rhs.exp().re, ((lhs - rhs).exp() - 1.0).norm(), 1e-7);

    let p = SelbergParams::new(1.5, 0.0, 0.0)?;
    let v = selberg_log_mellin(&p, c(1.0), &cfg)?.exp().re;
    s.push("selberg_moment_pos_l1", "Selberg integral moment l = 1", v, 1.0, (v - 1.0).abs(), 1e-8);
    for l in [1usize, 2] {
        let v = selberg_log_mellin(&p, c(-(l as f64)), &cfg)?.exp().re;
        let m = selberg_moment(&p, l, -1)?;
        s.push(&format!("selberg_moment_neg_l{l}"), "negative Selberg moments from the gamma product", v, m, (v / m - 1.0).abs(), 1e-8);
    }
    let p4 = SelbergParams::new(4.0, 1.0, 2.0)?;
    let v = selberg_integral_l2(&p4);
    let m = selberg_moment(&p4, 2, 1)?;
    s.push("selberg_integral_l2", "two-dimensional Selberg integral by quadrature", v, m, (v / m - 1.0).abs(), 1e-8);

    let knobs = SelbergKnobs::<f64> { cfg, ..SelbergKnobs::default() };
    let p2 = SelbergParams::new(2.0, 0.1, 0.1)?;
    let r = selberg_identity_residual(SelbergIdentity::Involution, &p2, &knobs)?;
    s.report("selberg_involution", "involution invariance of L, X_i and the reduced transform", &r, 1e-7);
    let p1 = SelbergParams::new(1.0, 0.1, 0.1)?;
    let r = selberg_identity_residual(SelbergIdentity::Involution, &p1, &knobs)?;
    s.push("selberg_involution_tau1", "involution fixed point tau = 1", r.residual, 0.0, r.residual, f64::MIN_POSITIVE);
    let p3 = SelbergParams::new(1.5, 0.1, 0.2)?;
    for kind in [SelbergIdentity::FunceqTau, SelbergIdentity::FunceqOne, SelbergIdentity::InfiniteProduct] {
        let r = selberg_identity_residual(kind, &p3, &knobs)?;
        let t = if kind == SelbergIdentity::InfiniteProduct { 1e-4 } else { 1e-7 };
        s.report(kind.label(), "Selberg transform infinite product and functional equations", &r, t);
    }

    let n = s.opts.samples;
    let sampler = selberg_sampler(&p, 200, &cfg)?;
    let st = mc_mellin_streams(&sampler, -1.0, n, s.opts.seed ^ 0x21, s.opts.streams)?;
    s.mc("selberg_mc_neg_moment", "Selberg decomposition sampler against E[M^-1]", st.mean, st.stderr, selberg_moment(&p, 1, -1)?);
    let ms = MasterSampler::master(&mp, 200, &cfg)?;
    let st = mc_mellin_streams(&ms, 0.5, n, s.opts.seed ^ 0x22, s.opts.streams)?;
    s.mc("master_mc_half_moment", "master decomposition sampler against E[M^0.5]", st.mean, st.stderr, lhs.exp().re);
    Ok(())
}

/// `∫∫_{[0,1]²} Π s_i^{λ₁}(1−s_i)^{λ₂} |s₁−s₂|^{−2/τ}` for `τ > 2`, by Gauss–Legendre
/// after `s₂ = s₁ ± v^{τ/(τ−2)}`, which removes the diagonal singularity.
pub fn selberg_integral_l2(p: &SelbergParams<f64>) -> f64 {
    let (tau, l1, l2) = (p.tau, p.lambda1, p.lambda2);
    let g = gauss_legendre(64);
    let e = tau / (tau - 2.0);
    let w = |s: f64| s.powf(l1) * (1.0 - s).powf(l2);
    // s₁ graded as u⁴ toward both ends to smooth s^λ and the square-root edges
    let (k1, k2) = (4.0, 4.0);
    let mut total = 0.0;
    let panels = 8;
    for pi in 0..panels {
        let (a, b) = (pi as f64 / panels as f64, (pi + 1) as f64 / panels as f64);
        for &(x, wx) in &g {
            let u = a + (b - a) * (x + 1.0) / 2.0;
            let s1: f64 = if u < 0.5 { 0.5 * (2.0 * u).powf(k1) } else { 1.0 - 0.5 * (2.0 - 2.0 * u).powf(k2) };
            let ds1 = if u < 0.5 { k1 * (2.0 * u).powf(k1 - 1.0) } else { k2 * (2.0 - 2.0 * u).powf(k2 - 1.0) };
            let jac1 = wx * (b - a) / 2.0 * ds1;
            // s2 = s1 + v^e over v in (0, (1−s1)^{1/e}); mirrored side likewise
            let mut inner = 0.0;
            for (len, dir) in [((1.0 - s1).powf(1.0 / e), 1.0), (s1.powf(1.0 / e), -1.0)] {
                for &(y, wy) in &g {
                    let v = len * (y + 1.0) / 2.0;
                    let s2 = s1 + dir * v.powf(e);
                    let f = w(s2) * e * v.powf(e - 1.0 - 2.0 * e / tau);
                    inner += wy * len / 2.0 * f;
                }
            }
            total += jac1 * w(s1) * inner;
        }
    }
    total
}

fn critical_suite(s: &mut Sink) -> Result<()> {
    let cfg = s.opts.cfg;
    for l in [1usize, 2] {
        let v = critical_log_mellin(c(-(l as f64)), &cfg)?.exp().re;
        let m = critical_negative_moment::<f64>(l);
        s.push(&format!("critical_neg_moment_l{l}"), "negative moments of the critical law", v, m, (v / m - 1.0).abs(), 1e-6);
    }
    let mut worst = (0.0, 0.0, 0.0);
    let mut prod = (0.0, 0.0, 0.0);
    for q in [c(0.3), c(-0.7), Complex::new(0.2, 0.6), c(-1.5)] {
        let (l, r) = critical_funceq(q, &cfg)?;
        let d = ((l - r).exp() - 1.0).norm();
        if d >= worst.2 {
            worst = (l.re, r.re, d);
        }
        let ip = critical_infinite_product(q, 32, 12, 1e-10)?;
        let lm = critical_log_mellin(q, &cfg)?;
        let d = (ip - lm).norm();
        if d >= prod.2 {
            prod = (ip.re, lm.re, d);
        }
    }
    s.push("critical_funceq", "critical transform functional equation", worst.0, worst.1, worst.2, 1e-8);
    s.push("critical_infinite_product", "critical transform infinite product", prod.0, prod.1, prod.2, 1e-4);
    let r1 = critical_log_mellin(c(1.0 - 1e-4), &cfg)?.exp().re * 1e-4;
    let r2 = critical_log_mellin(c(1.0 - 1e-6), &cfg)?.exp().re * 1e-6;
    s.push("critical_pole_q1", "simple pole of the critical transform at q = 1", r2, r1, (r2 / r1 - 1.0).abs(), 1e-3);

    let sampler = critical_sampler(200, &cfg)?;
    let st = mc_mellin_streams(&sampler, -1.0, s.opts.samples, s.opts.seed ^ 0x31, s.opts.streams)?;
    s.mc("critical_mc_neg_moment", "critical decomposition sampler against E[M_c^-1] = 24", st.mean, st.stderr, 24.0);

    let mut worst = (0.0, 0.0, 0.0);
    for n in [2usize, 3] {
        for d in [0.4, 0.5, 0.6] {
            let k = beta22_delta_cumulant(n, d, 400)?;
            let der = cumulant_by_differences(n, d, &cfg)?;
            if (k - der).abs() >= worst.2 {
                worst = (k, der, (k - der).abs());
            }
        }
    }
    s.push("beta22_cumulants", "cumulants of -log beta22(delta) from the xi series", worst.0, worst.1, worst.2, 1e-4);

    let mut pairs = Vec::new();
    for d in [0.4, 0.7] {
        let bp = beta22_delta(d)?;
        for q in [0.3, -0.2, 1.1] {
            let e = log_eta(&bp, c(q), &cfg)?.value;
            pairs.push((beta22_delta_log_mellin_g(d, c(q), &cfg)?.exp(), e.exp()));
            pairs.push((c(beta22_delta_log_mellin_levy(d, q, &cfg)?.exp()), e.exp()));
        }
    }
    s.worst("beta22_delta_three_forms", "beta22(delta) transform via Barnes G, eta and the sech^2 Levy integral", 1e-6, &pairs);
    Ok(())
}

/// `κ_n` of `−log β₂,₂(δ)` as `(−1)ⁿ dⁿ/dqⁿ log η(q)` at 0: central differences at
/// steps `h` and `h/2`, one Richardson step.
pub fn cumulant_by_differences(n: usize, delta: f64, cfg: &QuadratureConfig<f64>) -> Result<f64> {
    let bp = beta22_delta(delta)?;
    let f = |q: f64| log_eta(&bp, c(q), cfg).map(|v| v.value.re);
    let d = |h: f64| -> Result<f64> {
        Ok(match n {
            1 => (f(h)? - f(-h)?) / (2.0 * h),
            2 => (f(h)? - 2.0 * f(0.0)? + f(-h)?) / (h * h),
            3 => (f(2.0 * h)? - 2.0 * f(h)? + 2.0 * f(-h)? - f(-2.0 * h)?) / (2.0 * h * h * h),
            _ => return Err(Error::domain(format!("difference cumulants implemented for n <= 3, got {n}"))),
        })
    };
    let h = 1e-2;
    let r = (4.0 * d(h / 2.0)? - d(h)?) / 3.0;
    Ok(if n.is_multiple_of(2) { r } else { -r })
}

/// δ grid of the `T(δ)` extrapolation.
pub const T_DELTA_GRID: [f64; 3] = [0.2, 0.1, 0.05];

fn xi_suite(s: &mut Sink) -> Result<()> {
    let cfg = s.opts.cfg;
    let x2 = xi(c(2.0))?.re;
    let pi = std::f64::consts::PI;
    s.push("xi_at_2", "xi(2) = pi/6", x2, pi / 6.0, (x2 - pi / 6.0).abs(), 1e-10);
    let (t10, t) = (theta(1.0, Some(10))?, theta(1.0, None)?);
    s.push("theta_product_10", "truncated triple product of theta at t = 1", t10, t, (t10 - t).abs(), 1e-8);
    let mut worst = (0.0, 0.0, 0.0);
    for sv in [-3.5, -0.6, 0.2, 0.9, 2.5, 6.0] {
        let (a, b) = (xi_direct(c(sv))?.re, xi_direct(c(1.0 - sv))?.re);
        if (a - b).abs() >= worst.2 {
            worst = (a, b, (a / b - 1.0).abs());
        }
    }
    s.push("xi_symmetry", "xi(s) = xi(1-s)", worst.0, worst.1, worst.2, 1e-10);

    let knobs = XiSeriesKnobs::<f64> { cfg, ..XiSeriesKnobs::default() };
    let mut pairs = Vec::new();
    for d in [0.1, 0.5, 2.0] {
        for q in [c(0.5), c(2.0), Complex::new(1.0, 1.0)] {
            pairs.push((
                s2_delta_transform(S2Transform::LaplaceLevy, q, d, &knobs)?,
                s2_delta_transform(S2Transform::LaplaceClosed, q, d, &knobs)?,
            ));
        }
    }
    s.worst("s2_delta_laplace", "S2(delta) Laplace transform closed form against Levy quadrature", 1e-6, &pairs);

    for q in [1usize, 2] {
        let p = TDeltaParams::new(0.1, 10_000, true)?;
        let st = t_delta_functional_stats(&p, q, s.opts.samples, s.opts.seed ^ (0x40 + q as u64), s.opts.streams)?;
        let (_, chk) = t_delta_functional_residual(q, &p, &st, &knobs)?;
        s.mc(&format!("t_delta_funceq_q{q}"), "T(delta) functional equation against the xi series", chk.lhs_mc, chk.stderr, chk.rhs);
    }
    let mut pts = Vec::new();
    for (i, &d) in T_DELTA_GRID.iter().enumerate() {
        let p = TDeltaParams::new(d, 10_000, true)?;
        let st = t_delta_functional_stats(&p, 1, s.opts.samples, s.opts.seed ^ (0x50 + i as u64), s.opts.streams)?;
        pts.push((d, st.mean, st.stderr));
    }
    let (icpt, se) = extrapolate_to_zero(&pts)?;
    s.mc("t_delta_limit_q1", "delta -> 0 limit of the T(delta) functional equation, E[S2] = 2/3", icpt, se, 2.0 / 3.0);
    Ok(())
}
