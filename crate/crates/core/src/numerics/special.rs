//! Log-Gamma (Lanczos, g = 7, n = 9) and the Euler Beta function.

use crate::error::{HhError, Result};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero() && x.is_finite()) {
        return Err(HhError::domain(
            "ln_gamma",
            format!("argument {x} must be positive and finite"),
        ));
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // Reflection: Γ(x) Γ(1 - x) = π / sin(πx).
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma_positive(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::from_count(i));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    half * (T::TAU()).ln() + (x + half) * t.ln() - t + acc.ln()
}

/// `ln B(x, y)`.
pub fn ln_beta<T: Real>(x: T, y: T) -> Result<T> {
    if !(x > T::zero() && y > T::zero()) {
        return Err(HhError::domain(
            "beta",
            format!("arguments ({x}, {y}) must be strictly positive"),
        ));
    }
    // Summing in a fixed argument order keeps beta(x, y) == beta(y, x) bitwise.
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    Ok(ln_gamma(lo)? + ln_gamma(hi)? - ln_gamma(lo + hi)?)
}

/// Euler Beta `B(x, y) = Γ(x) Γ(y) / Γ(x + y)`, computed through log-Gamma.
pub fn beta<T: Real>(x: T, y: T) -> Result<T> {
    Ok(ln_beta(x, y)?.exp())
}
