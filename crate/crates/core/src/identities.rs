//! Residual checks for the two integral identities behind the bounds.
//!
//! `L1` (fourth-derivative trapezoid identity):
//!
//! ```text
//! (1/(b-a)) ∫ f + ((b-a)/12)(f'(b) - f'(a)) - (f(a) + f(b))/2
//!     = ((b-a)^4 / 24) ∫_0^1 (λ(1-λ))^2 f''''(aλ + (1-λ)b) dλ
//! ```
//!
//! `L2` (third-derivative midpoint identity):
//!
//! ```text
//! f((a+b)/2) - (1/(b-a)) ∫ f + ((b-a)/24)(f'(b) - f'(a))
//!     = ((b-a)^3 / 24) [ ∫_0^{1/2} K(λ) f'''(λa + (1-λ)b) dλ
//!                      - ∫_0^{1/2} K(λ) f'''(λb + (1-λ)a) dλ ],
//! K(λ) = λ(1 - 2λ)(1 + 2λ)
//! ```

use std::fmt;

use crate::corpus::SmoothFunction;
use crate::error::Result;
use crate::numerics::{integrate_with, Interval, QuadratureOptions, QuadratureResult};
use crate::scalar::Real;

pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    L1,
    L2,
}

impl IdentityId {
    pub const ALL: [IdentityId; 2] = [IdentityId::L1, IdentityId::L2];

    pub fn tag(&self) -> &'static str {
        match self {
            IdentityId::L1 => "L1",
            IdentityId::L2 => "L2",
        }
    }

    pub fn parse(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.tag().eq_ignore_ascii_case(tag))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport<T> {
    pub identity: IdentityId,
    pub lhs: T,
    pub rhs: T,
    /// `|lhs - rhs|`; `None` unless every quadrature converged.
    pub residual: Option<T>,
    /// Summed error estimate of the quadratures, propagated through their
    /// coefficients.
    pub quadrature_error: T,
    pub evaluations: usize,
}

impl<T: Real> IdentityReport<T> {
    pub fn converged(&self) -> bool {
        self.residual.is_some()
    }

    /// Converged and within `tol`.
    pub fn holds(&self, tol: T) -> bool {
        self.residual.is_some_and(|r| r <= tol)
    }
}

struct Accumulator<T> {
    converged: bool,
    error: T,
    evaluations: usize,
}

impl<T: Real> Accumulator<T> {
    fn new() -> Self {
        Self {
            converged: true,
            error: T::zero(),
            evaluations: 0,
        }
    }

    fn take(&mut self, r: QuadratureResult<T>, weight: T) -> T {
        self.converged &= r.converged;
        self.error = self.error + weight.abs() * r.error_estimate;
        self.evaluations += r.evaluations;
        r.value
    }

    fn finish(self, identity: IdentityId, lhs: T, rhs: T) -> IdentityReport<T> {
        IdentityReport {
            identity,
            lhs,
            rhs,
            residual: self.converged.then(|| (lhs - rhs).abs()),
            quadrature_error: self.error,
            evaluations: self.evaluations,
        }
    }
}

/// Checks the fourth-derivative trapezoid identity `L1` on `interval`.
pub fn lemma1_check<T: Real>(
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    opts: &QuadratureOptions<T>,
) -> Result<IdentityReport<T>> {
    let (a, b) = (interval.a(), interval.b());
    let w = interval.width();
    let two = T::lit(2.0);
    let mut acc = Accumulator::new();

    let integral = acc.take(integrate_with(|x| f.eval(x), interval, opts)?, w.recip());
    let lhs = integral / w + w / T::lit(12.0) * (f.deriv(1, b) - f.deriv(1, a)) - (f.eval(a) + f.eval(b)) / two;

    let unit = Interval::new(T::zero(), T::one())?;
    let coeff = w.powi(4) / T::lit(24.0);
    let kernel = |l: T| {
        let s = l * (T::one() - l);
        s * s * f.deriv(4, a * l + (T::one() - l) * b)
    };
    let rhs = coeff * acc.take(integrate_with(kernel, unit, opts)?, coeff);

    Ok(acc.finish(IdentityId::L1, lhs, rhs))
}

/// Checks the third-derivative midpoint identity `L2` on `interval`.
pub fn lemma2_check<T: Real>(
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    opts: &QuadratureOptions<T>,
) -> Result<IdentityReport<T>> {
    let (a, b) = (interval.a(), interval.b());
    let w = interval.width();
    let mut acc = Accumulator::new();

    let integral = acc.take(integrate_with(|x| f.eval(x), interval, opts)?, w.recip());
    let lhs = f.eval(interval.midpoint()) - integral / w + w / T::lit(24.0) * (f.deriv(1, b) - f.deriv(1, a));

    let half = Interval::new(T::zero(), T::lit(0.5))?;
    let two = T::lit(2.0);
    let k = move |l: T| l * (T::one() - two * l) * (T::one() + two * l);
    let coeff = w.powi(3) / T::lit(24.0);
    let toward_a = acc.take(
        integrate_with(|l| k(l) * f.deriv(3, l * a + (T::one() - l) * b), half, opts)?,
        coeff,
    );
    let toward_b = acc.take(
        integrate_with(|l| k(l) * f.deriv(3, l * b + (T::one() - l) * a), half, opts)?,
        coeff,
    );
    let rhs = coeff * (toward_a - toward_b);

    Ok(acc.finish(IdentityId::L2, lhs, rhs))
}

pub fn check_identity<T: Real>(
    id: IdentityId,
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    opts: &QuadratureOptions<T>,
) -> Result<IdentityReport<T>> {
    match id {
        IdentityId::L1 => lemma1_check(f, interval, opts),
        IdentityId::L2 => lemma2_check(f, interval, opts),
    }
}
