//! Scalar abstraction shared by the analytic layers.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the analytic code is generic over (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Smallest tolerance worth asking of this type in quadrature and series work.
    fn tol_floor() -> Self;
}

impl Real for f64 {
    fn tol_floor() -> Self {
        1e-13
    }
}

impl Real for f32 {
    fn tol_floor() -> Self {
        2e-5
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable")
}

#[inline]
pub fn int<T: Real>(n: i64) -> T {
    T::from_i64(n).expect("integer representable")
}

#[inline]
pub fn cx<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub fn cexpm1<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.norm() > lit(0.5) {
        return z.exp() - T::one();
    }
    // exp(x+iy)-1 = expm1(x)cos(y) + (cos(y)-1) + i exp(x) sin(y)
    let em1 = z.re.exp_m1();
    let half = z.im / int(2);
    let cosm1 = -int::<T>(2) * half.sin() * half.sin();
    Complex::new(em1 * z.im.cos() + cosm1, z.re.exp() * z.im.sin())
}

/// `(exp(z) - 1) / z`, equal to 1 at the origin.
pub fn cexprel<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.norm() < lit(1e-4) {
        return Complex::new(T::one(), T::zero()) + z / int::<T>(2) + z * z / int::<T>(6);
    }
    cexpm1(z) / z
}

pub fn is_finite_c<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `n!` as a scalar.
pub fn factorial<T: Real>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * int(k as i64))
}

/// Binomial coefficient in floating point.
pub fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, j| acc * int((n - j) as i64) / int((j + 1) as i64))
}

/// Harmonic number `H_n`.
pub fn harmonic<T: Real>(n: usize) -> T {
    (1..=n).fold(T::zero(), |acc, l| acc + T::one() / int(l as i64))
}

/// `log(1 + z)` without cancellation for small `|z|` (principal branch).
pub fn cln1p<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.norm() > lit(0.25) {
        return (z + T::one()).ln();
    }
    if z.im == T::zero() {
        return cx(z.re.ln_1p());
    }
    // log|1+z| = ½ log1p(2x + x² + y²), arg from atan2
    let (x, y) = (z.re, z.im);
    let re = (x * lit(2.0) + x * x + y * y).ln_1p() / lit(2.0);
    Complex::new(re, y.atan2(T::one() + x))
}
