//! Adaptive Gauss–Legendre quadrature on finite intervals.

use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cx, lit, to_f64, Real};

/// Knobs for every quadrature-backed evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    /// End of the numerically integrated range; `None` picks it from the argument.
    pub split_point: Option<T>,
    /// Panel bisections allowed before giving up.
    pub max_refinements: usize,
    /// Largest total multi-index degree kept in the analytic tail expansion.
    pub tail_index_cutoff: usize,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        let floor = T::tol_floor();
        QuadratureConfig {
            abs_tol: floor.max(lit(1e-12)) * lit(1.0),
            rel_tol: floor.max(lit(1e-10)),
            split_point: None,
            max_refinements: 4000,
            tail_index_cutoff: 64,
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > T::zero()) || !(self.rel_tol > T::zero()) {
            return Err(Error::domain("tolerances must be positive"));
        }
        if let Some(t) = self.split_point {
            if !(t > T::zero()) {
                return Err(Error::domain("split point must be positive"));
            }
        }
        if self.max_refinements < 1 {
            return Err(Error::domain("max_refinements must be at least 1"));
        }
        Ok(())
    }

    pub fn with_tol(mut self, abs_tol: T, rel_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub(crate) fn target(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value)
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(15))
}

fn panel<T: Real, F: FnMut(T) -> Complex<T>>(f: &mut F, a: T, b: T) -> Complex<T> {
    let half = (b - a) / lit(2.0);
    let mid = (a + b) / lit(2.0);
    let mut acc = cx(T::zero());
    for &(x, w) in rule() {
        acc = acc + f(mid + half * lit(x)) * lit::<T>(w);
    }
    acc * half
}

struct Panel<T> {
    a: T,
    b: T,
    value: Complex<T>,
    err: T,
}

fn refine<T: Real, F: FnMut(T) -> Complex<T>>(f: &mut F, a: T, b: T) -> Panel<T> {
    let m = (a + b) / lit(2.0);
    let coarse = panel(f, a, b);
    let fine = panel(f, a, m) + panel(f, m, b);
    Panel { a, b, value: fine, err: (fine - coarse).norm() }
}

/// Integrates `f` over consecutive panels given by `breaks`, bisecting the worst panel
/// until the summed error estimate meets `max(abs_tol, rel_tol·|I|)`.
///
/// Returns the value and the error estimate; fails with [`Error::Accuracy`] carrying
/// the best estimate when `cfg.max_refinements` bisections are not enough.
pub fn integrate<T: Real, F: FnMut(T) -> Complex<T>>(
    mut f: F,
    breaks: &[T],
    cfg: &QuadratureConfig<T>,
    what: &str,
) -> Result<(Complex<T>, T)> {
    let mut panels: Vec<Panel<T>> = breaks.windows(2).filter(|w| w[1] > w[0]).map(|w| refine(&mut f, w[0], w[1])).collect();
    if panels.is_empty() {
        return Ok((cx(T::zero()), T::zero()));
    }
    let mut splits = 0;
    loop {
        let total: Complex<T> = panels.iter().fold(cx(T::zero()), |s, p| s + p.value);
        let err: T = panels.iter().fold(T::zero(), |s, p| s + p.err);
        if !(total.re.is_finite() && total.im.is_finite()) {
            return Err(Error::Accuracy { what: what.into(), estimate: f64::NAN, est_error: f64::INFINITY });
        }
        if err <= cfg.target(total.norm()) {
            return Ok((total, err));
        }
        if splits >= cfg.max_refinements {
            return Err(Error::Accuracy { what: what.into(), estimate: to_f64(total.norm()), est_error: to_f64(err) });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, -T::one()), |(bi, be), (i, p)| if p.err > be { (i, p.err) } else { (bi, be) });
        let p = panels.swap_remove(worst);
        let m = (p.a + p.b) / lit(2.0);
        if !(m > p.a && m < p.b) {
            return Err(Error::Accuracy { what: what.into(), estimate: to_f64(total.norm()), est_error: to_f64(err) });
        }
        panels.push(refine(&mut f, p.a, m));
        panels.push(refine(&mut f, m, p.b));
        splits += 1;
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    breaks: &[T],
    cfg: &QuadratureConfig<T>,
    what: &str,
) -> Result<(T, T)> {
    let (v, e) = integrate(|t| cx(f(t)), breaks, cfg, what)?;
    Ok((v.re, e))
}

/// Breakpoints for `[lo, hi]`: geometric doubling from `lo`, then cut so that no panel
/// exceeds `max_width` (resolves oscillation).
pub fn breakpoints<T: Real>(lo: T, hi: T, max_width: T) -> Vec<T> {
    let mut geo = vec![lo];
    let mut t = lo;
    while t < hi {
        let next = if t > T::zero() { (t * lit(2.0)).min(hi) } else { hi };
        geo.push(next);
        t = next;
    }
    let mut out = vec![lo];
    for w in geo.windows(2) {
        let len = w[1] - w[0];
        let pieces = (len / max_width).ceil().to_usize().unwrap_or(1).clamp(1, 10_000);
        for k in 1..=pieces {
            out.push(w[0] + len * T::from_usize(k).unwrap() / T::from_usize(pieces).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let r = gauss_legendre(15);
        let s: f64 = r.iter().map(|(x, w)| w * x.powi(28)).sum();
        assert!((s - 2.0 / 29.0).abs() < 1e-14);
        let s: f64 = r.iter().map(|(_, w)| w).sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaks_and_oscillation() {
        let cfg = QuadratureConfig::<f64>::default();
        let (v, _) = integrate_real(|t| 1.0 / (1e-4 + t * t), &[-1.0, 1.0], &cfg, "peak").unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v - exact).abs() < 1e-9 * exact);
        let br = breakpoints(0.0, 50.0, 1.0);
        let (v, _) = integrate(|t| Complex::new(0.0, 20.0 * t).exp() * (-t).exp(), &br, &cfg, "osc").unwrap();
        let exact = Complex::new(1.0, -20.0).inv();
        assert!((v - exact).norm() < 1e-10);
    }

    #[test]
    fn refinement_budget_is_enforced() {
        let cfg = QuadratureConfig { max_refinements: 1, ..QuadratureConfig::<f64>::default() };
        let r = integrate_real(|t| t.abs().sqrt().recip(), &[-1.0, 1.0], &cfg, "singular");
        assert!(matches!(r, Err(Error::Accuracy { .. })));
    }
}
