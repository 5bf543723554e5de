use crate::error::{HhError, Result};
use crate::scalar::Real;

/// A Hölder exponent pair with `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderPair<T> {
    pub p: T,
    pub q: T,
}

/// Returns `(p, p / (p - 1))` for `p > 1`.
pub fn conjugate_exponent<T: Real>(p: T) -> Result<HolderPair<T>> {
    if !(p.is_finite() && p > T::one()) {
        return Err(HhError::domain(
            "conjugate_exponent",
            format!("exponent p = {p} must be finite and > 1"),
        ));
    }
    Ok(HolderPair {
        p,
        q: p / (p - T::one()),
    })
}
