//! Euler gamma and exponential integrals for real and complex arguments.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cln1p, cx, int, lit, Real};
use crate::series::bernoulli_scaled;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const STIRLING_TERMS: usize = 9;
const SHIFT_TO: f64 = 10.0;

fn stirling_tail<T: Real>(z: Complex<T>) -> Complex<T> {
    // Σ B_2k / (2k(2k-1) z^{2k-1})
    let zi = z.inv();
    let z2 = zi * zi;
    let mut pow = zi;
    let mut acc = cx(T::zero());
    for k in 1..=STIRLING_TERMS {
        let n = 2 * k;
        // B_n/(n(n-1)) = (B_n/n!) (n-2)!
        let coef = lit::<T>(bernoulli_scaled(n).unwrap()) * crate::scalar::factorial::<T>(n - 2);
        acc = acc + pow * coef;
        pow = pow * z2;
    }
    acc
}

/// `log Γ(z)` continued from the positive axis through `Re(z) > 0`.
///
/// Left of the imaginary axis the reflection formula is used and the result is
/// *a* logarithm of Γ(z), not necessarily the continuous one.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if z.re <= T::zero() {
        if z.im == T::zero() && z.re == z.re.round() {
            return Err(Error::Pole(format!("Gamma at non-positive integer {}", z.re)));
        }
        if z.re < lit(0.5) {
            let pi = T::PI();
            let s = (z * pi).sin();
            let rest = ln_gamma(cx::<T>(T::one()) - z)?;
            return Ok(cx(pi.ln()) - s.ln() - rest);
        }
    }
    let mut w = z;
    let mut shift = cx(T::zero());
    while w.re < lit(SHIFT_TO) {
        shift = shift + w.ln();
        w = w + T::one();
    }
    let half_ln_2pi = lit::<T>(0.918_938_533_204_672_8);
    Ok((w - lit::<T>(0.5)) * w.ln() - w + half_ln_2pi + stirling_tail(w) - shift)
}

/// `log Γ(z+a) − log Γ(z)` without the cancellation of two large logs when `|z| ≫ |a|`.
pub fn ln_gamma_ratio<T: Real>(z: Complex<T>, a: Complex<T>) -> Result<Complex<T>> {
    let big = lit::<T>(4.0 * SHIFT_TO);
    if z.re < big || (z + a).re < big || a.norm() * lit(4.0) > z.norm() {
        return Ok(ln_gamma(z + a)? - ln_gamma(z)?);
    }
    let za = z + a;
    Ok((z - lit::<T>(0.5)) * cln1p(a / z) + a * za.ln() - a + (stirling_tail(za) - stirling_tail(z)))
}

/// Γ(z) for complex `z` away from the poles.
pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if z.re < lit(0.5) {
        if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
            return Err(Error::Pole(format!("Gamma at non-positive integer {}", z.re)));
        }
        let pi = T::PI();
        let one = cx::<T>(T::one());
        return Ok(cx::<T>(pi) / ((z * pi).sin() * gamma(one - z)?));
    }
    Ok(ln_gamma(z)?.exp())
}

/// `log Γ(x)` for real `x > 0`.
pub fn ln_gamma_real<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    let mut w = x;
    let mut shift = T::zero();
    while w < lit(SHIFT_TO) {
        shift = shift + w.ln();
        w = w + T::one();
    }
    let half_ln_2pi = lit::<T>(0.918_938_533_204_672_8);
    let tail = stirling_tail(cx(w)).re;
    Ok((w - lit::<T>(0.5)) * w.ln() - w + half_ln_2pi + tail - shift)
}

/// Γ(x) for real `x`, with reflection below 1/2.
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    if x <= T::zero() && x == x.round() {
        return Err(Error::Pole(format!("Gamma at non-positive integer {x}")));
    }
    if x < lit(0.5) {
        let pi = T::PI();
        return Ok(pi / ((pi * x).sin() * gamma_real(T::one() - x)?));
    }
    Ok(ln_gamma_real(x)?.exp())
}

/// `Ein(z) = Σ_{k≥1} (-1)^{k+1} z^k / (k k!)`, entire.
pub fn ein<T: Real>(z: Complex<T>) -> Complex<T> {
    let mut term = z;
    let mut acc = z;
    let eps = T::epsilon();
    for k in 2..400 {
        term = -term * z / int::<T>(k as i64);
        let add = term / int::<T>(k as i64);
        acc = acc + add;
        if add.norm() <= eps * acc.norm() {
            break;
        }
    }
    acc
}

/// Exponential integral `E_1(z)` for `Re(z) > 0` (principal branch elsewhere off the cut).
pub fn e1<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.norm() < lit(2.0) {
        return cx::<T>(-lit::<T>(EULER_GAMMA)) - z.ln() + ein(z);
    }
    // Modified Lentz on E1(z) = e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))))
    let tiny = T::min_positive_value().sqrt();
    let one = cx::<T>(T::one());
    let mut f = z;
    if f.norm() < tiny {
        f = cx(tiny);
    }
    let mut c = f;
    let mut d = cx::<T>(T::zero());
    for j in 1..2000 {
        let an = cx::<T>(int(((j + 1) / 2) as i64));
        let bn = if j % 2 == 1 { one } else { z };
        d = bn + an * d;
        if d.norm() < tiny {
            d = cx(tiny);
        }
        c = bn + an / c;
        if c.norm() < tiny {
            c = cx(tiny);
        }
        d = d.inv();
        let delta = c * d;
        f = f * delta;
        if (delta - one).norm() < T::epsilon() {
            break;
        }
    }
    (-z).exp() / f
}
