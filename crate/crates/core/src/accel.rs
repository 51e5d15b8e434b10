//! Richardson extrapolation of truncated infinite sums and products.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};

/// Outcome of an extrapolated truncation sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated<T> {
    pub value: Complex<T>,
    /// Last un-extrapolated partial value.
    pub raw: Complex<T>,
    pub est_error: T,
    /// Truncation parameter of the last partial value.
    pub last_k: usize,
}

/// Extrapolates `S(K)` for `K = k0, 2k0, 4k0, …` assuming
/// `S(K) = S∞ + Σ_j c_j K^{-(alpha+j)}`.
///
/// Stops when successive diagonal entries differ by less than `tol`; otherwise after
/// `max_levels` doublings it returns [`Error::Truncation`] with the last two estimates.
pub fn richardson<T: Real, F>(mut partial: F, k0: usize, alpha: f64, tol: T, max_levels: usize, what: &str) -> Result<Extrapolated<T>>
where
    F: FnMut(usize) -> Result<Complex<T>>,
{
    richardson_noisy(|k| Ok((partial(k)?, T::zero())), k0, alpha, tol, max_levels, what)
}

/// [`richardson`] for partial values that carry a rounding-noise estimate.
///
/// Successive diagonal entries need only agree within `max(tol, 4·noise)`, so a
/// sequence whose terms lose absolute precision as `K` grows stops at its noise
/// floor instead of failing.
pub fn richardson_noisy<T: Real, F>(mut partial: F, k0: usize, alpha: f64, tol: T, max_levels: usize, what: &str) -> Result<Extrapolated<T>>
where
    F: FnMut(usize) -> Result<(Complex<T>, T)>,
{
    let mut rows: Vec<Vec<Complex<T>>> = Vec::new();
    let mut k = k0;
    let mut best_prev: Option<Complex<T>> = None;
    for level in 0..max_levels {
        let (s, noise) = partial(k)?;
        let mut row = vec![s];
        if let Some(prev) = rows.last() {
            for j in 1..=level {
                let p = T::from_f64(2f64.powf(alpha + (j - 1) as f64) - 1.0).unwrap();
                let r = row[j - 1] + (row[j - 1] - prev[j - 1]) / p;
                row.push(r);
            }
        }
        let diag = *row.last().unwrap();
        if let Some(pd) = best_prev {
            let err = (diag - pd).norm();
            if err <= tol.max(noise * T::from_f64(4.0).unwrap()) {
                return Ok(Extrapolated { value: diag, raw: s, est_error: err.max(noise), last_k: k });
            }
        }
        best_prev = Some(diag);
        rows.push(row);
        k *= 2;
    }
    let n = rows.len();
    let last = rows[n - 1].last().copied().unwrap_or_default();
    let prev = if n > 1 { rows[n - 2].last().copied().unwrap_or_default() } else { last };
    Err(Error::Truncation { what: what.into(), last: to_f64(last.norm()), previous: to_f64(prev.norm()) })
}

/// One-shot Richardson table over values at `K, 2K, 4K, …`; returns the diagonal.
pub fn richardson_table<T: Real>(values: &[Complex<T>], alpha: f64) -> Vec<Complex<T>> {
    let mut prev: Vec<Complex<T>> = Vec::new();
    let mut diag = Vec::new();
    for (level, &s) in values.iter().enumerate() {
        let mut row = vec![s];
        for j in 1..=level {
            let p = T::from_f64(2f64.powf(alpha + (j - 1) as f64) - 1.0).unwrap();
            let r = row[j - 1] + (row[j - 1] - prev[j - 1]) / p;
            row.push(r);
        }
        diag.push(*row.last().unwrap());
        prev = row;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accelerates_zeta_two_tail() {
        // Σ_{k≤K} 1/k² = π²/6 - 1/K + 1/(2K²) - …
        let out = richardson(
            |k| Ok(Complex::new((1..=k).map(|j| 1.0 / (j * j) as f64).sum::<f64>(), 0.0)),
            16,
            1.0,
            1e-12,
            12,
            "basel",
        )
        .unwrap();
        assert!((out.value.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-11);
        assert!((out.raw.re - out.value.re).abs() > 1e-4);
    }

    #[test]
    fn reports_non_convergence() {
        let r = richardson(|k| Ok(Complex::new((k as f64).ln(), 0.0)), 4, 1.0, 1e-12, 4, "log");
        assert!(matches!(r, Err(Error::Truncation { .. })));
    }
}
