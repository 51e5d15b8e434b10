//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use barnesbeta::identities::{identity_residual, GammaIdentity, IdentityKnobs};
use barnesbeta::mellin::{eta_barnes_product, eta_shintani_product, levy_exponent, log_eta, mass_at_one, BarnesBetaParams, MassMethod};
use barnesbeta::multigamma::{gamma1_closed, log_gamma};
use barnesbeta::quad::QuadratureConfig;
use barnesbeta::sampling::mc_mellin_streams;
use barnesbeta::selberg::{
    beta22_delta_cumulant, critical_mellin, critical_sampler, selberg_identity_residual, selberg_mellin, selberg_moment, selberg_sampler,
    SelbergIdentity, SelbergKnobs, SelbergParams,
};
use barnesbeta::series::{b22_closed, bernoulli_poly, GammaParams};
use barnesbeta::verify::{cumulant_by_differences, eta_test_set, log_eta_m1_closed, T_DELTA_GRID};
use barnesbeta::xi::{
    extrapolate_to_zero, s2_delta_transform, t_delta_functional_residual, t_delta_functional_stats, theta, xi, S2Transform, TDeltaParams,
    XiSeriesKnobs,
};
use barnesbeta::Result;
use num_complex::Complex;

const MC_N: usize = 1_000_000;
const STREAMS: usize = 8;
const SEED: u64 = 0xB41215;

fn c(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

/// Largest `|l/r − 1|`.
fn worst_rel(pairs: &[(Complex<f64>, Complex<f64>)]) -> f64 {
    pairs.iter().map(|(l, r)| (l / r - 1.0).norm()).fold(0.0, f64::max)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn gamma1() -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let mut worst = 0.0f64;
    for a in [0.5, 1.0, 2.5] {
        let p = GammaParams::new(vec![a])?;
        for w in [0.4, 1.0, 3.7] {
            let q = log_gamma(&p, c(w), &cfg)?.value.exp();
            worst = worst.max((q / gamma1_closed(a, c(w))? - 1.0).norm());
        }
    }
    outcome(worst < 1e-8, format!("max rel err {worst:.2e} < 1e-8 on 3x3 grid"))
}

fn funceq() -> Result<Outcome> {
    let knobs = IdentityKnobs::default();
    let mut worst = 0.0f64;
    for a in [vec![1.0], vec![1.0, 1.6], vec![0.7, 1.0, 2.3]] {
        worst = worst.max(identity_residual(GammaIdentity::FunctionalEq, &GammaParams::new(a)?, &knobs)?.residual);
    }
    outcome(worst < 1e-8, format!("max residual {worst:.2e} < 1e-8, M = 1, 2, 3"))
}

fn scaling_multiplication() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for a in [vec![1.3], vec![1.0, 2.0]] {
        let p = GammaParams::new(a)?;
        for kappa in [0.5, 2.0] {
            let knobs = IdentityKnobs { kappa, ..IdentityKnobs::default() };
            worst = worst.max(identity_residual(GammaIdentity::Scaling, &p, &knobs)?.residual);
        }
        for k in [2, 3] {
            let knobs = IdentityKnobs { k, ..IdentityKnobs::default() };
            worst = worst.max(identity_residual(GammaIdentity::Multiplication, &p, &knobs)?.residual);
        }
    }
    outcome(worst < 1e-7, format!("max residual {worst:.2e} < 1e-7"))
}

fn shintani_gamma() -> Result<Outcome> {
    let knobs = IdentityKnobs { a_next: 1.0, x: c(1.0), ..IdentityKnobs::default() };
    let r = identity_residual(GammaIdentity::ShintaniGamma, &GammaParams::new(vec![1.0])?, &knobs)?.residual;
    outcome(r < 1e-5, format!("residual {r:.2e} < 1e-5"))
}

fn eta_routes() -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let (mut direct, mut shintani, mut barnes) = (Vec::new(), Vec::new(), Vec::new());
    for p in eta_test_set()? {
        for q in [c(0.5), c(-0.3), Complex::new(1.0, 0.5)] {
            let d = log_eta(&p, q, &cfg)?.value.exp();
            if p.M() == 1 {
                direct.push((d, log_eta_m1_closed(&p, q)?.exp()));
            }
            shintani.push((eta_shintani_product(&p, q, 0, 16, &cfg)?.value.exp(), d));
            barnes.push((eta_barnes_product(&p, q, 16, &cfg)?.value.exp(), d));
        }
    }
    // worked example: η(1) = 2/π
    let worked = BarnesBetaParams::new(vec![1.0, 2.0], 1.0, vec![1.0, 1.0])?;
    direct.push((log_eta(&worked, c(1.0), &cfg)?.value.exp(), c(2.0 / PI)));
    let (d, s, b) = (worst_rel(&direct), worst_rel(&shintani), worst_rel(&barnes));
    outcome(d < 1e-8 && s < 1e-5 && b < 1e-4, format!("direct {d:.2e} < 1e-8, Shintani {s:.2e} < 1e-5, Barnes {b:.2e} < 1e-4"))
}

fn mass() -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let set = [
        (BarnesBetaParams::new(vec![], 1.0, vec![1.0])?, Some(0.5)),
        (BarnesBetaParams::new(vec![], 1.0, vec![1.0, 1.0])?, Some(0.75)),
        (BarnesBetaParams::new(vec![1.0], 1.0, vec![1.0, 2.0])?, None),
    ];
    let (mut spread, mut anchor) = (0.0f64, 0.0f64);
    for (p, a) in &set {
        let v = [mass_at_one(p, MassMethod::Quadrature, &cfg)?, mass_at_one(p, MassMethod::SnFormula, &cfg)?, mass_at_one(p, MassMethod::Product, &cfg)?];
        let (lo, hi) = (v.iter().cloned().fold(f64::INFINITY, f64::min), v.iter().cloned().fold(0.0, f64::max));
        spread = spread.max(hi - lo);
        if let Some(a) = a {
            anchor = anchor.max(v.iter().map(|x| (x - a).abs()).fold(0.0, f64::max));
        }
    }
    outcome(spread <= 1e-6 && anchor < 1e-10, format!("method spread {spread:.2e} <= 1e-6, anchors {anchor:.2e} < 1e-10"))
}

fn levy_khinchine() -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let mut pairs = Vec::new();
    let set: Vec<_> = eta_test_set()?
        .into_iter()
        .chain([BarnesBetaParams::new(vec![], 1.0, vec![1.0])?, BarnesBetaParams::new(vec![1.0], 1.0, vec![1.0, 2.0])?])
        .filter(|p| p.M() < p.N())
        .collect();
    for p in &set {
        for q in [0.5, -0.7, -2.0, 0.9 * p.b0] {
            pairs.push((levy_exponent(p, c(q), &cfg)?.value.exp(), log_eta(p, c(-q), &cfg)?.value.exp()));
        }
    }
    let w = worst_rel(&pairs);
    outcome(w < 1e-7, format!("max rel deviation {w:.2e} < 1e-7 over {} laws", set.len()))
}

fn selberg_moments() -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let p = SelbergParams::new(1.5, 0.0, 0.0)?;
    let pos = (selberg_mellin(&p, c(1.0), &cfg)?.re - 1.0).abs();
    let mut neg = 0.0f64;
    for l in [1usize, 2] {
        let m = selberg_moment(&p, l, -1)?;
        neg = neg.max((selberg_mellin(&p, c(-(l as f64)), &cfg)?.re / m - 1.0).abs());
    }
    outcome(pos < 1e-8 && neg < 1e-8, format!("E[M] - 1 = {pos:.2e}, negative moments rel {neg:.2e}, both < 1e-8"))
}

fn selberg_mc() -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let p = SelbergParams::new(1.5, 0.0, 0.0)?;
    let target = selberg_moment(&p, 1, -1)?;
    let s = selberg_sampler(&p, 200, &cfg)?;
    let mut hits = 0;
    for r in 0..20u64 {
        let st = mc_mellin_streams(&s, -1.0, MC_N, SEED.wrapping_add(1000 * r), STREAMS)?;
        hits += usize::from((st.mean - target).abs() < 3.0 * st.stderr);
    }
    outcome(hits >= 18, format!("{hits}/20 replications within 3 stderr of {target:.6}"))
}

fn critical() -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let e1 = (critical_mellin(c(-1.0), &cfg)?.re / 24.0 - 1.0).abs();
    let e2 = (critical_mellin(c(-2.0), &cfg)?.re / 21600.0 - 1.0).abs();
    let st = mc_mellin_streams(&critical_sampler(200, &cfg)?, -1.0, MC_N, SEED ^ 0xC1, STREAMS)?;
    let z = (st.mean - 24.0).abs() / st.stderr;
    outcome(e1 < 1e-6 && e2 < 1e-6 && z < 3.0, format!("rel {e1:.2e}, {e2:.2e} < 1e-6; MC {:.3} +- {:.3} (z = {z:.2})", st.mean, st.stderr))
}

fn cumulants() -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let mut worst = 0.0f64;
    for n in [2usize, 3] {
        for d in [0.4, 0.5, 0.6] {
            worst = worst.max((beta22_delta_cumulant(n, d, 400)? - cumulant_by_differences(n, d, &cfg)?).abs());
        }
    }
    outcome(worst < 1e-4, format!("max |series - derivative| {worst:.2e} < 1e-4"))
}

fn involution() -> Result<Outcome> {
    let knobs = SelbergKnobs::default();
    let r = selberg_identity_residual(SelbergIdentity::Involution, &SelbergParams::new(2.0, 0.1, 0.1)?, &knobs)?.residual;
    let r1 = selberg_identity_residual(SelbergIdentity::Involution, &SelbergParams::new(1.0, 0.1, 0.1)?, &knobs)?.residual;
    outcome(r < 1e-7 && r1 == 0.0, format!("tau = 2 residual {r:.2e} < 1e-7, tau = 1 residual {r1:e}"))
}

fn xi_machinery() -> Result<Outcome> {
    let knobs = XiSeriesKnobs::default();
    let ex = (xi(c(2.0))?.re - PI / 6.0).abs();
    let et = (theta(1.0f64, Some(10))? - theta(1.0, None)?).abs();
    let mut pairs = Vec::new();
    for d in [0.1, 0.5, 2.0] {
        for q in [c(0.5), c(2.0), Complex::new(1.0, 1.0)] {
            pairs.push((
                s2_delta_transform(S2Transform::LaplaceLevy, q, d, &knobs)?,
                s2_delta_transform(S2Transform::LaplaceClosed, q, d, &knobs)?,
            ));
        }
    }
    let es = pairs.iter().map(|(l, r)| (l - r).norm()).fold(0.0, f64::max);
    let mut zs = Vec::new();
    for q in [1usize, 2] {
        let p = TDeltaParams::new(0.1, 10_000, true)?;
        let st = t_delta_functional_stats(&p, q, MC_N, SEED ^ (0x40 + q as u64), STREAMS)?;
        zs.push(t_delta_functional_residual(q, &p, &st, &knobs)?.1.z);
    }
    let mut pts = Vec::new();
    for (i, &d) in T_DELTA_GRID.iter().enumerate() {
        let p = TDeltaParams::new(d, 10_000, true)?;
        let st = t_delta_functional_stats(&p, 1, MC_N, SEED ^ (0x50 + i as u64), STREAMS)?;
        pts.push((d, st.mean, st.stderr));
    }
    let (icpt, se) = extrapolate_to_zero(&pts)?;
    let zl = (icpt - 2.0 / 3.0).abs() / se;
    let pass = ex < 1e-10 && et < 1e-8 && es < 1e-6 && zs.iter().all(|&z| z < 3.0) && zl < 3.0;
    outcome(
        pass,
        format!(
            "xi(2) err {ex:.1e}, theta_10 err {et:.1e}, S2 Laplace {es:.1e}, T funceq z = {:.2}, {:.2}; limit {icpt:.4} +- {se:.4} (z = {zl:.2})",
            zs[0], zs[1]
        ),
    )
}

fn bernoulli() -> Result<Outcome> {
    let xs = [c(0.0), c(0.3), c(-1.2), Complex::new(2.0, 0.7)];
    let mut closed = 0.0f64;
    for (a1, a2) in [(1.0, 1.0), (1.0, 1.7), (0.4, 3.2)] {
        let p = GammaParams::new(vec![a1, a2])?;
        for &x in &xs {
            closed = closed.max((bernoulli_poly(&p, 2, x)? - b22_closed(a1, a2, x)).norm());
        }
    }
    // B_{M,m}(x+y) = Σ_k C(m,k) B_{M,m−k}(x) (−y)^k
    let mut shift = 0.0f64;
    let p = GammaParams::new(vec![1.0, 1.7])?;
    let y = c(0.45);
    for &x in &xs {
        for m in 0..=4usize {
            let lhs = bernoulli_poly(&p, m, x + y)?;
            let mut rhs = c(0.0);
            let mut binom = 1.0;
            for k in 0..=m {
                rhs += bernoulli_poly(&p, m - k, x)? * binom * (-y).powu(k as u32);
                binom *= (m - k) as f64 / (k + 1) as f64;
            }
            shift = shift.max((lhs - rhs).norm() / lhs.norm().max(1.0));
        }
    }
    // Σ_{r ∈ {0..k−1}^M} B_{M,m}(w + r·a/k) = k^{M−m} B_{M,m}(kw)
    let mut mult = 0.0f64;
    let w = Complex::new(0.35, 0.2);
    for k in 2..=3usize {
        for m in 0..=3usize {
            let mut lhs = c(0.0);
            for i in 0..k {
                for j in 0..k {
                    lhs += bernoulli_poly(&p, m, w + (i as f64 * 1.0 + j as f64 * 1.7) / k as f64)?;
                }
            }
            let rhs = bernoulli_poly(&p, m, w * k as f64)? * (k as f64).powi(2 - m as i32);
            mult = mult.max((lhs - rhs).norm() / rhs.norm().max(1.0));
        }
    }
    outcome(closed < 1e-12 && shift < 1e-10 && mult < 1e-10, format!("B22 closed {closed:.1e} < 1e-12, shift {shift:.1e}, multiplication {mult:.1e} < 1e-10"))
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(&str, u64, Check); 14] = [
        ("gamma1 closed form", 2, gamma1),
        ("functional equation", 30, funceq),
        ("scaling and multiplication", 30, scaling_multiplication),
        ("gamma-level Shintani", 60, shintani_gamma),
        ("eta three representations", 60, eta_routes),
        ("mass at one", 10, mass),
        ("Levy-Khinchine", 10, levy_khinchine),
        ("Selberg moments", 10, selberg_moments),
        ("Selberg Monte Carlo", 300, selberg_mc),
        ("critical law", 300, critical),
        ("cumulant bridge", 60, cumulants),
        ("involution", 30, involution),
        ("xi machinery", 300, xi_machinery),
        ("Bernoulli engine", 5, bernoulli),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let res = check();
        let dt = t0.elapsed();
        let in_time = dt <= Duration::from_secs(*budget);
        let (pass, detail) = match res {
            Ok(o) => (o.pass && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!("{} {:>2} {name}: {detail} [{:.2} s / {budget} s]", if pass { "PASS" } else { "FAIL" }, i + 1, dt.as_secs_f64());
    }
    println!("acceptance: {}/14 passed", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
