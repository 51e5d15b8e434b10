//! Barnes beta distributions `β_{M,N}(a, b)` through their Mellin transform
//! `η_{M,N}(q|a,b) = exp((S_N L_M)(q) − (S_N L_M)(0))`.
//!
//! Besides the direct definition the module evaluates the Lévy–Khinchine exponent,
//! the Shintani and Barnes infinite products, the mass at one and integral moments,
//! so every representation can be checked against the others.

use num_complex::Complex;
use serde::Serialize;

use crate::accel::{richardson_noisy, Extrapolated};
use crate::error::{Error, Result};
use crate::identities::IdentityReport;
use crate::multigamma::{log_multigamma_cached, LogGammaValue};
use crate::quad::{breakpoints, integrate, QuadratureConfig};
use crate::scalar::{binomial, cexpm1, cln1p, cx, int, is_finite_c, lit, to_f64, Real};
use crate::series::GammaParams;

/// Largest `N` for which the `2^N` subset sum of `S_N` is enumerated.
pub const SUBSET_CAP: usize = 24;

/// Distance from the cut `(−∞, −b₀]` below which `η` is refused.
pub const CUT_GUARD: f64 = 1e-9;

/// Parameters `(a, b₀, b)` of `η_{M,N}` and `β_{M,N}(a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BarnesBetaParams<T> {
    pub a: GammaParams<T>,
    pub b0: T,
    pub b: Vec<T>,
}

impl<T: Real> BarnesBetaParams<T> {
    pub fn new(a: Vec<T>, b0: T, b: Vec<T>) -> Result<Self> {
        let a = GammaParams::new(a)?;
        if !(b0 > T::zero()) || !b0.is_finite() {
            return Err(Error::domain(format!("b0 must be positive, got {b0}")));
        }
        if let Some(bad) = b.iter().find(|x| !(**x > T::zero()) || !x.is_finite()) {
            return Err(Error::domain(format!("b_j must be positive, got {bad}")));
        }
        Ok(BarnesBetaParams { a, b0, b })
    }

    #[allow(non_snake_case)]
    pub fn M(&self) -> usize {
        self.a.M()
    }

    #[allow(non_snake_case)]
    pub fn N(&self) -> usize {
        self.b.len()
    }

    /// True when `η` is the Mellin transform of a law on `(0, 1]`.
    pub fn is_distribution(&self) -> bool {
        self.M() <= self.N()
    }

    pub fn without_a(&self, i: usize) -> Self {
        BarnesBetaParams { a: self.a.without(i), ..self.clone() }
    }

    pub fn without_b(&self, j: usize) -> Self {
        let mut b = self.b.clone();
        b.remove(j);
        BarnesBetaParams { b, ..self.clone() }
    }

    pub fn with_b0(&self, b0: T) -> Self {
        BarnesBetaParams { b0, ..self.clone() }
    }

    pub fn with_b_shift(&self, j: usize, x: T) -> Self {
        let mut b = self.b.clone();
        b[j] = b[j] + x;
        BarnesBetaParams { b, ..self.clone() }
    }

    pub fn scaled(&self, kappa: T) -> Self {
        BarnesBetaParams { a: self.a.scaled(kappa), b0: self.b0 * kappa, b: self.b.iter().map(|&x| x * kappa).collect() }
    }

    pub(crate) fn echo(&self) -> String {
        let j = |v: &[T]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",");
        format!("M={} N={} a=({}) b0={} b=({})", self.M(), self.N(), j(&self.a.a), self.b0, j(&self.b))
    }
}

/// `η_{M,N}(q)` with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinValue<T> {
    pub q: Complex<T>,
    pub value: Complex<T>,
    pub est_error: T,
    /// `Re(q) > −b₀`, where `η(q) = E[β^q]`.
    pub in_strip: bool,
}

fn check_subsets(n: usize) -> Result<()> {
    if n > SUBSET_CAP {
        return Err(Error::Capacity(format!("S_N subset enumeration capped at N={SUBSET_CAP}, got N={n}")));
    }
    Ok(())
}

/// Visits `(Σ_{j∈S} b_j, (−1)^{|S|})` for every subset `S`.
fn for_subsets<T: Real>(b: &[T], mut visit: impl FnMut(T, T) -> Result<()>) -> Result<()> {
    check_subsets(b.len())?;
    for mask in 0u32..(1u32 << b.len()) {
        let mut s = T::zero();
        for (j, &bj) in b.iter().enumerate() {
            if mask >> j & 1 == 1 {
                s = s + bj;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { T::one() } else { -T::one() };
        visit(s, sign)?;
    }
    Ok(())
}

/// `(S_N h)(q|b) = Σ_p (−1)^p Σ_{k₁<…<k_p} h(q + b₀ + b_{k₁} + … + b_{k_p})`.
pub fn s_operator<T: Real, H>(mut h: H, q: Complex<T>, b0: T, b: &[T]) -> Result<Complex<T>>
where
    H: FnMut(Complex<T>) -> Result<Complex<T>>,
{
    let mut acc = cx(T::zero());
    for_subsets(b, |s, sign| {
        acc = acc + h(q + b0 + s)? * sign;
        Ok(())
    })?;
    Ok(acc)
}

/// `L_M(w|a)` anywhere off the poles: the functional equation moves `w` into the
/// right half-plane. Only `exp` of the result is branch independent.
pub fn log_gamma_any<T: Real>(params: &GammaParams<T>, w: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    if !is_finite_c(w) {
        return Err(Error::domain(format!("non-finite argument {w}")));
    }
    if w.re > T::zero() {
        return log_multigamma_cached(params, w, cfg);
    }
    let m = params.M();
    if m == 0 {
        if w.norm() == T::zero() {
            return Err(Error::Pole("Gamma_0 at 0".into()));
        }
        return Ok(LogGammaValue { value: -w.ln(), est_error: T::zero() });
    }
    // L_M(w) = L_{M−1}(w|â_M) + L_M(w + a_M)
    let am = params.a[m - 1];
    let lower = params.without(m - 1);
    let a = log_gamma_any(&lower, w, cfg)?;
    let b = log_gamma_any(params, w + am, cfg)?;
    Ok(LogGammaValue { value: a.value + b.value, est_error: a.est_error + b.est_error })
}

/// `(S_N L_M)(q|a, b)` and its accumulated error.
pub fn sn_log_gamma<T: Real>(a: &GammaParams<T>, q: Complex<T>, b0: T, b: &[T], cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    let mut err = T::zero();
    let value = s_operator(
        |w| {
            let v = log_gamma_any(a, w, cfg)?;
            err = err + v.est_error;
            Ok(v.value)
        },
        q,
        b0,
        b,
    )?;
    Ok(LogGammaValue { value, est_error: err })
}

fn check_cut<T: Real>(q: Complex<T>, b0: T) -> Result<()> {
    if !is_finite_c(q) {
        return Err(Error::domain(format!("non-finite q {q}")));
    }
    let edge = -b0;
    let dist = if q.re <= edge { q.im.abs() } else { (q - edge).norm() };
    if dist < lit(CUT_GUARD) {
        return Err(Error::domain(format!("q = {q} lies within {CUT_GUARD} of the cut (-inf, {edge}]")));
    }
    Ok(())
}

/// `log η_{M,N}(q)` as `(S_N L_M)(q) − (S_N L_M)(0)`.
pub fn log_eta<T: Real>(params: &BarnesBetaParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    check_cut(q, params.b0)?;
    if q == cx(T::zero()) {
        check_subsets(params.N())?;
        return Ok(LogGammaValue { value: cx(T::zero()), est_error: T::zero() });
    }
    let sq = sn_log_gamma(&params.a, q, params.b0, &params.b, cfg)?;
    let s0 = sn_log_gamma(&params.a, cx(T::zero()), params.b0, &params.b, cfg)?;
    Ok(LogGammaValue { value: sq.value - s0.value, est_error: sq.est_error + s0.est_error })
}

/// Mellin transform `η_{M,N}(q|a, b)`.
pub fn eta<T: Real>(params: &BarnesBetaParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<MellinValue<T>> {
    let l = log_eta(params, q, cfg)?;
    let value = l.value.exp();
    Ok(MellinValue { q, value, est_error: l.est_error * value.norm(), in_strip: q.re > -params.b0 })
}

/// Lévy density `e^{−b₀t} ∏(1−e^{−b_j t}) f(t)/t^{M+1}` of `−log β`.
pub fn levy_density<T: Real>(params: &BarnesBetaParams<T>, t: T) -> T {
    let num = params.b.iter().fold((-params.b0 * t).exp(), |p, &bj| p * -(-bj * t).exp_m1());
    let den = params.a.a.iter().fold(t, |p, &aj| p * -(-aj * t).exp_m1());
    num / den
}

fn levy_breaks<T: Real>(params: &BarnesBetaParams<T>, t_end: T, width: T) -> Vec<T> {
    let scale = params.b.iter().chain(params.a.a.iter()).fold(params.b0, |m, &x| m.max(x));
    let first = (T::one() / scale).min(t_end / lit(4.0));
    let mut brk = vec![T::zero()];
    brk.extend(breakpoints(first, t_end, width));
    brk
}

/// `∫₀^∞ g(t) ν(t) dt` for a weight `g` that is at most polynomial, with the range
/// cut where `e^{−rate·t}` is negligible.
fn levy_integral<T: Real, G: FnMut(T) -> Complex<T>>(
    params: &BarnesBetaParams<T>,
    mut g: G,
    rate: T,
    osc: T,
    cfg: &QuadratureConfig<T>,
    what: &str,
) -> Result<(Complex<T>, T)> {
    let t_end = cfg.split_point.unwrap_or_else(|| lit::<T>(46.0) / rate);
    let width = if osc > T::zero() { T::PI() / osc } else { t_end };
    let brk = levy_breaks(params, t_end, width);
    let (v, e) = integrate(|t| g(t) * levy_density(params, t), &brk, cfg, what)?;
    let tail = (-(rate * t_end)).exp() / (rate * t_end) * g(t_end).norm().max(T::one());
    Ok((v, e + tail))
}

/// Lévy–Khinchine exponent `∫₀^∞ (e^{tq}−1) ν(t) dt`, so that
/// `E[e^{−q log β}] = E[β^{−q}] = exp(levy_exponent(q))`.
pub fn levy_exponent<T: Real>(params: &BarnesBetaParams<T>, q: Complex<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    cfg.validate()?;
    if !params.is_distribution() {
        return Err(Error::domain(format!("Levy exponent needs M <= N, got M={} N={}", params.M(), params.N())));
    }
    if !is_finite_c(q) || !(q.re < params.b0) {
        return Err(Error::domain(format!("Levy exponent needs Re(q) < b0 = {}, got {q}", params.b0)));
    }
    if q == cx(T::zero()) {
        return Ok(LogGammaValue { value: cx(T::zero()), est_error: T::zero() });
    }
    let rate = (params.b0 - q.re).min(params.b0);
    let (v, e) = levy_integral(params, |t| cexpm1(q * t), rate, q.im.abs(), cfg, "Levy exponent")?;
    Ok(LogGammaValue { value: v, est_error: e })
}

/// Total Lévy mass `λ = ∫ ν`, finite only when `M < N`.
pub fn levy_mass<T: Real>(params: &BarnesBetaParams<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    if params.M() >= params.N() {
        return Err(Error::domain("Levy mass is infinite unless M < N"));
    }
    let (v, e) = levy_integral(params, |_| cx(T::one()), params.b0, T::zero(), cfg, "Levy mass")?;
    Ok(LogGammaValue { value: v, est_error: e })
}

/// `E[−log β] = ∫ t ν(t) dt`.
pub fn levy_mean<T: Real>(params: &BarnesBetaParams<T>, cfg: &QuadratureConfig<T>) -> Result<LogGammaValue<T>> {
    if !params.is_distribution() {
        return Err(Error::domain("Levy mean needs M <= N"));
    }
    let (v, e) = levy_integral(params, cx, params.b0, T::zero(), cfg, "Levy mean")?;
    Ok(LogGammaValue { value: v, est_error: e })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MassMethod {
    /// `exp(−∫ν)`.
    Quadrature,
    /// `exp(−(S_N L_M)(0|b))`.
    SnFormula,
    /// Truncated Barnes lattice product.
    Product,
}

/// `P[β_{M,N} = 1]` for `M < N`.
pub fn mass_at_one<T: Real>(params: &BarnesBetaParams<T>, method: MassMethod, cfg: &QuadratureConfig<T>) -> Result<T> {
    if params.M() >= params.N() {
        return Err(Error::domain(format!(
            "mass at one needs M < N (absolutely continuous otherwise), got M={} N={}",
            params.M(),
            params.N()
        )));
    }
    match method {
        MassMethod::Quadrature => Ok((-levy_mass(params, cfg)?.value.re).exp()),
        MassMethod::SnFormula => Ok((-sn_log_gamma(&params.a, cx(T::zero()), params.b0, &params.b, cfg)?.value.re).exp()),
        MassMethod::Product => Ok(sl_action(params, cx(T::zero()), 32, cfg)?.value.re.exp()),
    }
}

/// Number of `n ∈ ℕ^M` with `n₁+…+n_M = k`.
pub fn composition_multiplicity(k: usize, m: usize) -> usize {
    if m == 0 {
        return usize::from(k == 0);
    }
    if k == 0 {
        return 1;
    }
    (1..=m).map(|j| binom_usize(k - 1, j - 1) * binom_usize(m, j)).sum()
}

fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// Visits `(Ω, multiplicity)` for the lattice offsets `Ω = Σ n_i a_i` with
/// `n ∈ [lo, hi)` in the shell sense: collapsed to `Ω = k a` when the periods are
/// equal, the full box `[0, hi)^M` minus `[0, lo)^M` otherwise.
fn for_lattice_shell<T: Real>(a: &[T], lo: usize, hi: usize, mut visit: impl FnMut(T, T) -> Result<()>) -> Result<()> {
    let m = a.len();
    if m == 0 {
        return if lo == 0 && hi > 0 { visit(T::zero(), T::one()) } else { Ok(()) };
    }
    if a.iter().all(|&x| x == a[0]) {
        for k in lo..hi {
            visit(int::<T>(k as i64) * a[0], lit(composition_multiplicity(k, m) as f64))?;
        }
        return Ok(());
    }
    let mut idx = vec![0usize; m];
    loop {
        if idx.iter().any(|&n| n >= lo) {
            let omega = idx.iter().zip(a).fold(T::zero(), |s, (&n, &aj)| s + int::<T>(n as i64) * aj);
            visit(omega, T::one())?;
        }
        let mut pos = 0;
        while pos < m {
            idx[pos] += 1;
            if idx[pos] < hi {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == m {
            return Ok(());
        }
    }
}

/// Lattice cutoffs are doubled until at most this many box points are visited.
const LATTICE_BUDGET: f64 = 4.0e6;

fn lattice_levels(m: usize, k0: usize, equal: bool) -> usize {
    let mut levels = 1;
    let mut k = k0 as f64;
    let dims = if equal { 1 } else { m.max(1) } as i32;
    while levels < 16 && (k * 2.0).powi(dims) <= LATTICE_BUDGET {
        k *= 2.0;
        levels += 1;
    }
    levels
}

/// Richardson-extrapolated lattice sum `Σ_Ω mult·g(Ω)` with tail `~K^{−alpha}`.
fn lattice_sum<T: Real, G>(a: &[T], mut g: G, k0: usize, alpha: f64, cfg: &QuadratureConfig<T>, what: &str) -> Result<Extrapolated<T>>
where
    G: FnMut(T) -> Result<Complex<T>>,
{
    let m = a.len();
    let equal = m <= 1 || a.iter().all(|&x| x == a[0]);
    if m == 0 {
        let v = g(T::zero())?;
        return Ok(Extrapolated { value: v, raw: v, est_error: T::zero(), last_k: 1 });
    }
    let levels = lattice_levels(m, k0, equal);
    let mut done = 0usize;
    let mut acc = cx::<T>(T::zero());
    let mut noise = T::zero();
    let partial = |k: usize| -> Result<(Complex<T>, T)> {
        for_lattice_shell(a, done, k, |omega, mult| {
            let v = g(omega)?;
            acc = acc + v * mult;
            noise = noise + (v * mult).norm() * T::epsilon() * lit(8.0);
            Ok(())
        })?;
        done = k;
        Ok((acc, noise))
    };
    richardson_noisy(partial, k0, alpha, cfg.rel_tol.max(cfg.abs_tol) * lit(100.0), levels, what)
}

fn shifted_ln<T: Real>(c: Complex<T>, omega: T) -> Complex<T> {
    if omega > T::zero() {
        cln1p(c / omega)
    } else {
        c.ln()
    }
}

/// `−(S_N L_M)(q|a, b)` from the Barnes lattice product (valid for `M < N`), the
/// sum over `Ω` of `Σ_S (−1)^{|S|} log(q + b₀ + b_S + Ω)`.
pub fn sl_action<T: Real>(params: &BarnesBetaParams<T>, q: Complex<T>, k0: usize, cfg: &QuadratureConfig<T>) -> Result<Extrapolated<T>> {
    let (m, n) = (params.M(), params.N());
    if m >= n {
        return Err(Error::domain(format!("S_N action product needs M < N, got M={m} N={n}")));
    }
    check_subsets(n)?;
    let mut shifts = Vec::with_capacity(1 << n);
    for_subsets(&params.b, |s, sign| {
        shifts.push((q + params.b0 + s, sign));
        Ok(())
    })?;
    for (c, _) in &shifts {
        if !(c.re > T::zero()) && c.im == T::zero() {
            return Err(Error::domain(format!("lattice product hits a non-positive argument {c}")));
        }
    }
    // Σ_S sign·log(c_S + Ω) with log Ω cancelling between subsets when N ≥ 1
    let g = |omega: T| -> Result<Complex<T>> {
        Ok(shifts.iter().fold(cx(T::zero()), |s, &(c, sign)| s + shifted_ln(c, omega) * sign))
    };
    lattice_sum(&params.a.a, g, k0, (n - m) as f64, cfg, "Barnes S_N action product")
}

/// `log η_{M,N}(q)` from the Barnes lattice product of `η_{0,N}(q|b₀+Ω)` factors.
pub fn eta_barnes_product<T: Real>(params: &BarnesBetaParams<T>, q: Complex<T>, k0: usize, cfg: &QuadratureConfig<T>) -> Result<Extrapolated<T>> {
    let (m, n) = (params.M(), params.N());
    if m > n {
        return Err(Error::domain(format!("Barnes factorization needs M <= N, got M={m} N={n}")));
    }
    check_cut(q, params.b0)?;
    let mut shifts = Vec::with_capacity(1 << n);
    for_subsets(&params.b, |s, sign| {
        shifts.push((params.b0 + s, sign));
        Ok(())
    })?;
    let g = |omega: T| -> Result<Complex<T>> {
        Ok(shifts.iter().fold(cx(T::zero()), |s, &(c, sign)| s - cln1p(q / (c + omega)) * sign))
    };
    lattice_sum(&params.a.a, g, k0, (n + 1 - m) as f64, cfg, "Barnes product")
}

/// `log η_{M,N}(q)` from the Shintani product over multiples of period `i`.
pub fn eta_shintani_product<T: Real>(params: &BarnesBetaParams<T>, q: Complex<T>, i: usize, k0: usize, cfg: &QuadratureConfig<T>) -> Result<Extrapolated<T>> {
    let (m, n) = (params.M(), params.N());
    if m == 0 || m > n {
        return Err(Error::domain(format!("Shintani factorization needs 1 <= M <= N, got M={m} N={n}")));
    }
    if i >= m {
        return Err(Error::domain(format!("period index {i} out of range for M={m}")));
    }
    check_cut(q, params.b0)?;
    let lower = params.a.without(i);
    let ai = params.a.a[i];
    let mut done = 0usize;
    let mut acc = cx::<T>(T::zero());
    let mut noise = T::zero();
    let partial = |k_max: usize| -> Result<(Complex<T>, T)> {
        while done < k_max {
            let ka = ai * int::<T>(done as i64);
            let top = sn_log_gamma(&lower, q + ka, params.b0, &params.b, cfg)?;
            let bot = sn_log_gamma(&lower, cx(ka), params.b0, &params.b, cfg)?;
            acc = acc + top.value - bot.value;
            noise = noise + top.est_error + bot.est_error;
            done += 1;
        }
        Ok((acc, noise))
    };
    richardson_noisy(partial, k0.max(2), (n + 1 - m) as f64, cfg.rel_tol * lit(100.0), 14, "Shintani product")
}

/// `E[β^{±k a_i}]` from the finite `S_N L_{M−1}` sums; for `M = 0` this is `η(±k)`.
pub fn moment_int<T: Real>(params: &BarnesBetaParams<T>, k: usize, sign: i32, i: usize, cfg: &QuadratureConfig<T>) -> Result<T> {
    if k == 0 {
        return Ok(T::one());
    }
    if sign != 1 && sign != -1 {
        return Err(Error::domain(format!("sign must be +1 or -1, got {sign}")));
    }
    let kt = int::<T>(k as i64);
    if params.M() == 0 {
        let q = if sign > 0 { kt } else { -kt };
        if sign < 0 && !(kt < params.b0) {
            return Err(Error::domain(format!("negative moment {k} needs k < b0 = {}", params.b0)));
        }
        return Ok(eta(params, cx(q), cfg)?.value.re);
    }
    if i >= params.M() {
        return Err(Error::domain(format!("period index {i} out of range for M={}", params.M())));
    }
    let ai = params.a.a[i];
    let lower = params.a.without(i);
    let mut acc = T::zero();
    if sign > 0 {
        for l in 0..k {
            acc = acc - sn_log_gamma(&lower, cx(int::<T>(l as i64) * ai), params.b0, &params.b, cfg)?.value.re;
        }
    } else {
        if !(kt * ai < params.b0) {
            return Err(Error::domain(format!("negative moment needs k a_i < b0, got {} >= {}", kt * ai, params.b0)));
        }
        for l in 0..k {
            acc = acc + sn_log_gamma(&lower, cx(-int::<T>(l as i64 + 1) * ai), params.b0, &params.b, cfg)?.value.re;
        }
    }
    Ok(acc.exp())
}

/// `E[β^n]` for unit periods from the nested finite product, which collapses to
/// `∏_{i<M} e^{(−1)^i C(n,i) (S_N L_{M−i})(0)} · ∏_{j<n} e^{(−1)^M C(n−1−j, M−1) (S_N L_0)(j)}`.
pub fn moment_unit_periods<T: Real>(params: &BarnesBetaParams<T>, n: usize, cfg: &QuadratureConfig<T>) -> Result<T> {
    let m = params.M();
    if m == 0 || params.a.a.iter().any(|&x| x != T::one()) {
        return Err(Error::domain("unit-period moment formula needs M >= 1 and all a_i = 1"));
    }
    let mut acc = T::zero();
    for i in 1..m {
        let s = sn_log_gamma(&GammaParams::ones(m - i), cx(T::zero()), params.b0, &params.b, cfg)?.value.re;
        let sign = if i % 2 == 0 { T::one() } else { -T::one() };
        acc = acc + sign * binomial::<T>(n, i) * s;
    }
    let sign_m = if m.is_multiple_of(2) { T::one() } else { -T::one() };
    let empty = GammaParams::empty();
    for j in 0..n {
        let mult = binomial::<T>(n - 1 - j, m - 1);
        if mult == T::zero() {
            continue;
        }
        let s = sn_log_gamma(&empty, cx(int::<T>(j as i64)), params.b0, &params.b, cfg)?.value.re;
        acc = acc + sign_m * mult * s;
    }
    Ok(acc.exp())
}

/// `E[β_{2,2}(1, b)^k]` in Pochhammer form.
pub fn moment_pochhammer_22<T: Real>(b0: T, b1: T, b2: T, k: usize) -> Result<T> {
    use crate::special::ln_gamma_real;
    let base = ln_gamma_real(b0 + b1)? + ln_gamma_real(b0 + b2)? - ln_gamma_real(b0)? - ln_gamma_real(b0 + b1 + b2)?;
    let mut acc = base * int::<T>(k as i64);
    for i in 0..k {
        let poch = |x: T| (0..i).fold(T::zero(), |s, j| s + (x + int::<T>(j as i64)).ln());
        acc = acc + poch(b0 + b1) + poch(b0 + b2) - poch(b0) - poch(b0 + b1 + b2);
    }
    Ok(acc.exp())
}

/// `E[β^{k a_M}]` from the truncated lattice products over `ℕ^{M−1}`.
pub fn moment_int_barnes<T: Real>(params: &BarnesBetaParams<T>, k: usize, cfg: &QuadratureConfig<T>) -> Result<T> {
    let m = params.M();
    if m == 0 || m > params.N() {
        return Err(Error::domain("lattice moment formula needs 1 <= M <= N"));
    }
    let am = params.a.a[m - 1];
    let lower = params.without_a(m - 1);
    let mut acc = T::zero();
    for l in 0..k {
        acc = acc + sl_action(&lower, cx(int::<T>(l as i64) * am), 32, cfg)?.value.re;
    }
    Ok(acc.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaIdentity {
    /// `η(q+a_i) = η(q)·exp(−(S_N L_{M−1})(q|â_i, b))` and the `b₀` shift identity.
    FunctionalEq,
    Algebra1,
    Algebra2,
    Algebra3,
    Algebra4,
    Scaling,
    Reduction,
}

impl BetaIdentity {
    pub fn label(self) -> &'static str {
        match self {
            BetaIdentity::FunctionalEq => "beta_funceq",
            BetaIdentity::Algebra1 => "beta_algebra1",
            BetaIdentity::Algebra2 => "beta_algebra2",
            BetaIdentity::Algebra3 => "beta_algebra3",
            BetaIdentity::Algebra4 => "beta_algebra4",
            BetaIdentity::Scaling => "beta_scaling",
            BetaIdentity::Reduction => "beta_reduction",
        }
    }
}

/// Inputs for [`beta_identity_residual`].
#[derive(Debug, Clone)]
pub struct BetaKnobs<T> {
    pub q_grid: Vec<Complex<T>>,
    /// Period index `i`.
    pub i: usize,
    /// `b` index `j`.
    pub j: usize,
    pub kappa: T,
    /// Shift `x > 0` of the `b₀` identity.
    pub x: T,
    pub cfg: QuadratureConfig<T>,
}

impl<T: Real> Default for BetaKnobs<T> {
    fn default() -> Self {
        BetaKnobs {
            q_grid: [(0.7, 0.0), (1.5, 0.0), (-0.3, 0.0), (0.4, 1.1)].iter().map(|&(r, i)| Complex::new(lit(r), lit(i))).collect(),
            i: 0,
            j: 0,
            kappa: lit(2.0),
            x: lit(0.6),
            cfg: QuadratureConfig::default(),
        }
    }
}

/// `|e^{Δ} − 1|`: relative deviation of two transforms from their log difference.
pub(crate) fn rel_from_log<T: Real>(delta: Complex<T>) -> f64 {
    to_f64(cexpm1(delta).norm())
}

/// Largest relative deviation between the two sides of a Barnes beta identity over
/// `knobs.q_grid`, at the Mellin-transform level.
pub fn beta_identity_residual<T: Real>(kind: BetaIdentity, params: &BarnesBetaParams<T>, knobs: &BetaKnobs<T>) -> Result<IdentityReport> {
    let cfg = &knobs.cfg;
    let (m, n) = (params.M(), params.N());
    let (i, j) = (knobs.i, knobs.j);
    let need_i = || if i < m { Ok(()) } else { Err(Error::domain(format!("identity needs a period index i < M={m}"))) };
    let need_j = || if j < n { Ok(()) } else { Err(Error::domain(format!("identity needs an index j < N={n}"))) };
    let le = |p: &BarnesBetaParams<T>, q: Complex<T>| log_eta(p, q, cfg).map(|v| v.value);
    let mut report = IdentityReport::new(kind.label(), params.echo());
    for &q in &knobs.q_grid {
        let delta = match kind {
            BetaIdentity::FunctionalEq => {
                need_i()?;
                if !(knobs.x > T::zero()) {
                    return Err(Error::domain("shift identity needs x > 0"));
                }
                let ai = params.a.a[i];
                let lower = params.a.without(i);
                let fe = le(params, q + ai)? - le(params, q)? + sn_log_gamma(&lower, q, params.b0, &params.b, cfg)?.value;
                let x = knobs.x;
                let shift = le(&params.with_b0(params.b0 + x), q)? + le(params, cx(x))? - le(params, q + x)?;
                report.record(rel_from_log(shift));
                fe
            }
            BetaIdentity::Algebra1 => {
                need_j()?;
                let hat = params.without_b(j);
                let other = hat.with_b0(params.b0 + params.b[j]);
                le(&hat, q)? - le(params, q)? - le(&other, q)?
            }
            BetaIdentity::Algebra2 => {
                need_i()?;
                let ai = params.a.a[i];
                le(params, q)? - le(&params.with_b0(params.b0 + ai), q)? - le(&params.without_a(i), q)?
            }
            BetaIdentity::Algebra3 => {
                need_i()?;
                need_j()?;
                let lhs = params.with_b_shift(j, params.a.a[i]);
                let other = params.without_a(i).without_b(j).with_b0(params.b0 + params.b[j]);
                le(&lhs, q)? - le(params, q)? - le(&other, q)?
            }
            BetaIdentity::Algebra4 => {
                need_i()?;
                need_j()?;
                let ai = params.a.a[i];
                let lhs = params.with_b_shift(j, ai);
                let other = params.without_a(i).without_b(j);
                le(&lhs, q)? - le(&params.with_b0(params.b0 + ai), q)? - le(&other, q)?
            }
            BetaIdentity::Scaling => {
                let kappa = knobs.kappa;
                if !(kappa > T::zero()) {
                    return Err(Error::domain("scaling needs kappa > 0"));
                }
                if kappa == T::one() {
                    cx(T::zero())
                } else {
                    le(&params.scaled(kappa), q * kappa)? - le(params, q)?
                }
            }
            BetaIdentity::Reduction => {
                need_i()?;
                need_j()?;
                let ratio = params.b[j] / params.a.a[i];
                let count = ratio.round();
                if count < T::one() || (ratio - count).abs() > lit::<T>(1e-12) * ratio {
                    return Err(Error::domain(format!("reduction needs b_j = n a_i with integer n, got ratio {ratio}")));
                }
                let base = params.without_a(i).without_b(j);
                let mut rhs = cx(T::zero());
                for k in 0..count.to_usize().unwrap_or(0) {
                    rhs = rhs + le(&base.with_b0(params.b0 + int::<T>(k as i64) * params.a.a[i]), q)?;
                }
                le(params, q)? - rhs
            }
        };
        report.record(rel_from_log(delta));
    }
    Ok(report)
}
