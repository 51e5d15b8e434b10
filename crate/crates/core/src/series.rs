//! Truncated power series and multiple Bernoulli polynomials.
//!
//! The Bernoulli numbers are exact rationals computed once; everything downstream
//! is assembled in floating point from them.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, int, lit, Real};

/// Highest Bernoulli index held in the cache.
pub const MAX_BERNOULLI: usize = 96;

/// Truncated Taylor series `Σ_{k≤order} c_k t^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<S> {
    pub coeffs: Vec<S>,
}

impl<S: Clone + Num> PowerSeries<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least one coefficient");
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = S::one();
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    /// Horner evaluation at `t`.
    pub fn eval(&self, t: S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }
}

/// Cauchy product truncated to the smaller of the two orders.
pub fn series_mul<S: Clone + Num>(u: &PowerSeries<S>, v: &PowerSeries<S>) -> PowerSeries<S> {
    let order = u.order().min(v.order());
    let coeffs = (0..=order)
        .map(|k| (0..=k).fold(S::zero(), |acc, j| acc + u.coeffs[j].clone() * v.coeffs[k - j].clone()))
        .collect();
    PowerSeries { coeffs }
}

fn bernoulli_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{k=0}^{n} C(n+1,k) B_k = 0 with B_0 = 1, which yields B_1 = -1/2.
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_BERNOULLI + 1);
        b.push(BigRational::one());
        for n in 1..=MAX_BERNOULLI {
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            // binom is now C(n+1, n)
            b.push(-acc / BigRational::from_integer(binom));
        }
        b
    })
}

/// Exact Bernoulli number `B_n` (convention `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Result<BigRational> {
    bernoulli_table()
        .get(n)
        .cloned()
        .ok_or_else(|| Error::Capacity(format!("Bernoulli index {n} above {MAX_BERNOULLI}")))
}

fn scaled_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut fact = BigInt::one();
        bernoulli_table()
            .iter()
            .enumerate()
            .map(|(n, b)| {
                if n > 0 {
                    fact *= BigInt::from(n);
                }
                let r = b / BigRational::from_integer(fact.clone());
                r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
            })
            .collect()
    })
}

/// `B_n / n!` rounded once to `f64`.
pub fn bernoulli_scaled(n: usize) -> Result<f64> {
    scaled_table()
        .get(n)
        .copied()
        .ok_or_else(|| Error::Capacity(format!("Bernoulli index {n} above {MAX_BERNOULLI}")))
}

/// Taylor coefficients of `t/(1-e^{-a t})` through `order`.
pub fn series_of_factor<T: Real>(a: T, order: usize) -> Result<PowerSeries<T>> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::domain(format!("period must be positive, got {a}")));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut apow = T::one() / a;
    for n in 0..=order {
        let sign = if n % 2 == 0 { T::one() } else { -T::one() };
        coeffs.push(sign * T::from_f64(bernoulli_scaled(n)?).unwrap() * apow);
        apow = apow * a;
    }
    Ok(PowerSeries { coeffs })
}

/// Taylor coefficients of `e^{c t}`.
pub fn series_exp<T: Real>(c: Complex<T>, order: usize) -> PowerSeries<Complex<T>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Complex::new(T::one(), T::zero());
    for n in 0..=order {
        coeffs.push(term);
        term = term * c / int::<T>(n as i64 + 1);
    }
    PowerSeries { coeffs }
}

/// Periods `(a_1..a_M)` of `f(t) = t^M ∏ (1-e^{-a_j t})^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaParams<T> {
    pub a: Vec<T>,
}

impl<T: Real> GammaParams<T> {
    pub fn new(a: Vec<T>) -> Result<Self> {
        if let Some(bad) = a.iter().find(|x| !(**x > T::zero()) || !x.is_finite()) {
            return Err(Error::domain(format!("periods must be positive and finite, got {bad}")));
        }
        Ok(GammaParams { a })
    }

    pub fn empty() -> Self {
        GammaParams { a: Vec::new() }
    }

    /// `(1, 1, …, 1)` of length `m`.
    pub fn ones(m: usize) -> Self {
        GammaParams { a: vec![T::one(); m] }
    }

    #[allow(non_snake_case)]
    pub fn M(&self) -> usize {
        self.a.len()
    }

    /// Drops period `i`.
    pub fn without(&self, i: usize) -> Self {
        let mut a = self.a.clone();
        a.remove(i);
        GammaParams { a }
    }

    pub fn with(&self, extra: T) -> Self {
        let mut a = self.a.clone();
        a.push(extra);
        GammaParams { a }
    }

    pub fn scaled(&self, kappa: T) -> Self {
        GammaParams { a: self.a.iter().map(|&x| x * kappa).collect() }
    }

    pub fn max_period(&self) -> T {
        self.a.iter().copied().fold(T::zero(), T::max)
    }

    pub fn product(&self) -> T {
        self.a.iter().copied().fold(T::one(), |p, x| p * x)
    }

    /// Taylor series of `f(t)` through `order`.
    pub fn kernel_series(&self, order: usize) -> Result<PowerSeries<T>> {
        let mut acc = PowerSeries::one(order);
        for &aj in &self.a {
            acc = series_mul(&acc, &series_of_factor(aj, order)?);
        }
        Ok(acc)
    }

    /// `f(t)` for `t > 0`.
    pub fn kernel(&self, t: T) -> T {
        self.a.iter().fold(T::one(), |p, &aj| p * t / -(-aj * t).exp_m1())
    }
}

fn complexify<T: Real>(s: &PowerSeries<T>) -> PowerSeries<Complex<T>> {
    PowerSeries { coeffs: s.coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect() }
}

/// `c_m = B_{M,m}(x|a)/m!` for `m = 0..=order`: the Taylor data of `f(t)e^{-xt}`.
pub fn bernoulli_coeffs<T: Real>(
    params: &GammaParams<T>,
    x: Complex<T>,
    order: usize,
) -> Result<Vec<Complex<T>>> {
    let f = complexify(&params.kernel_series(order)?);
    Ok(series_mul(&f, &series_exp(-x, order)).coeffs)
}

/// Multiple Bernoulli polynomial `B_{M,m}(x|a)`.
pub fn bernoulli_poly<T: Real>(
    params: &GammaParams<T>,
    m: usize,
    x: impl Into<Complex<T>>,
) -> Result<Complex<T>> {
    let c = bernoulli_coeffs(params, x.into(), m + 4)?;
    Ok(c[m] * factorial::<T>(m))
}

/// `B_{2,2}(x|a₁,a₂)` in closed form.
pub fn b22_closed<T: Real>(a1: T, a2: T, x: Complex<T>) -> Complex<T> {
    let p = a1 * a2;
    x * x / p - x * ((a1 + a2) / p) + (a1 * a1 + lit::<T>(3.0) * p + a2 * a2) / (lit::<T>(6.0) * p)
}
