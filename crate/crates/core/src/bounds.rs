//! Left-hand deviations, right-hand bounds and verdicts for the twelve
//! Hermite–Hadamard type inequalities.
//!
//! | tag  | order | deviation             | exponent | bound                                           |
//! |------|-------|-----------------------|----------|-------------------------------------------------|
//! | T1_2 | 1     | trapezoid             | -        | (b-a)/4 · M                                     |
//! | T1_3 | 1     | trapezoid             | p > 1    | (b-a) / (2 (p+1)^{1/p}) · M                     |
//! | T1_4 | 2     | trapezoid             | -        | (b-a)^2/12 · M                                  |
//! | T1_5 | 3     | corrected trapezoid   | -        | (b-a)^3/192 · M                                 |
//! | T1_6 | 3     | corrected trapezoid   | p > 1    | (b-a)^3/96 · (1/(p+1))^{1/p} · M                |
//! | T1_7 | 3     | corrected trapezoid   | q >= 1   | (b-a)^3/192 · M                                 |
//! | ME1  | 4     | corrected trapezoid   | -        | (b-a)^4/720 · M                                 |
//! | ME2  | 4     | corrected trapezoid   | p > 1    | (b-a)^4/24 · B(2p+1, 2p+1)^{1/p} · M            |
//! | ME3  | 4     | corrected trapezoid   | q >= 1   | (b-a)^4/720 · M                                 |
//! | ME4  | 3     | corrected midpoint    | -        | (b-a)^3/192 · M                                 |
//! | ME5  | 3     | corrected midpoint    | p > 1    | (b-a)^3/96 · (1/(p+1))^{1/p} · M                |
//! | ME6  | 3     | corrected midpoint    | q >= 1   | (b-a)^3/192 · M                                 |
//!
//! `M = max{|f^(k)(a)|, |f^(k)(b)|}`. The exponent forms
//! `(max{|f^(k)(a)|^q, |f^(k)(b)|^q})^{1/q}` equal `M` and are evaluated as
//! `M` directly, so the q-families agree bit-for-bit with their q = 1 members.
//! The hypothesis is quasi-convexity of `|f^(k)|^e` with `e = 1`,
//! `e = p/(p-1)` or `e = q` respectively.

use std::fmt;

use crate::corpus::SmoothFunction;
use crate::error::{HhError, Result};
use crate::numerics::{beta, conjugate_exponent, integrate_with, Interval, QuadratureOptions};
use crate::quasiconvex::{check_quasi_convex, QuasiConvexityCertificate, DEFAULT_GRID, DEFAULT_TOL};
use crate::scalar::Real;

pub const DEFAULT_MARGIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum TheoremId {
    T1_2,
    T1_3,
    T1_4,
    T1_5,
    T1_6,
    T1_7,
    ME1,
    ME2,
    ME3,
    ME4,
    ME5,
    ME6,
}

/// Which left-hand deviation a theorem bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deviation {
    Trapezoid,
    TrapezoidCorrected,
    MidpointCorrected,
}

/// Which exponent parameter a theorem takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentKind {
    None,
    /// Hölder exponent `p > 1`.
    P,
    /// Power-mean exponent `q >= 1`.
    Q,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::T1_2,
        TheoremId::T1_3,
        TheoremId::T1_4,
        TheoremId::T1_5,
        TheoremId::T1_6,
        TheoremId::T1_7,
        TheoremId::ME1,
        TheoremId::ME2,
        TheoremId::ME3,
        TheoremId::ME4,
        TheoremId::ME5,
        TheoremId::ME6,
    ];

    pub fn tag(&self) -> &'static str {
        use TheoremId::*;
        match self {
            T1_2 => "T1_2",
            T1_3 => "T1_3",
            T1_4 => "T1_4",
            T1_5 => "T1_5",
            T1_6 => "T1_6",
            T1_7 => "T1_7",
            ME1 => "ME1",
            ME2 => "ME2",
            ME3 => "ME3",
            ME4 => "ME4",
            ME5 => "ME5",
            ME6 => "ME6",
        }
    }

    pub fn parse(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.tag().eq_ignore_ascii_case(tag))
    }

    pub fn derivative_order(&self) -> usize {
        use TheoremId::*;
        match self {
            T1_2 | T1_3 => 1,
            T1_4 => 2,
            T1_5 | T1_6 | T1_7 | ME4 | ME5 | ME6 => 3,
            ME1 | ME2 | ME3 => 4,
        }
    }

    pub fn deviation(&self) -> Deviation {
        use TheoremId::*;
        match self {
            T1_2 | T1_3 | T1_4 => Deviation::Trapezoid,
            T1_5 | T1_6 | T1_7 | ME1 | ME2 | ME3 => Deviation::TrapezoidCorrected,
            ME4 | ME5 | ME6 => Deviation::MidpointCorrected,
        }
    }

    pub fn exponent_kind(&self) -> ExponentKind {
        use TheoremId::*;
        match self {
            T1_3 | T1_6 | ME2 | ME5 => ExponentKind::P,
            T1_7 | ME3 | ME6 => ExponentKind::Q,
            _ => ExponentKind::None,
        }
    }

    /// Exponent applied to `|f^(k)|` in the quasi-convexity hypothesis.
    pub fn hypothesis_exponent<T: Real>(&self, exponent: Option<T>) -> Result<T> {
        let e = self.validate_exponent(exponent)?;
        Ok(match self.exponent_kind() {
            ExponentKind::None => T::one(),
            ExponentKind::P => conjugate_exponent(e.expect("validated"))?.q,
            ExponentKind::Q => e.expect("validated"),
        })
    }

    fn validate_exponent<T: Real>(&self, exponent: Option<T>) -> Result<Option<T>> {
        let fail = |detail: String| HhError::Parameter {
            theorem: self.tag().to_string(),
            detail,
        };
        match (self.exponent_kind(), exponent) {
            (ExponentKind::None, None) => Ok(None),
            (ExponentKind::None, Some(e)) => Err(fail(format!("takes no exponent, got {e}"))),
            (ExponentKind::P, Some(p)) if p.is_finite() && p > T::one() => Ok(Some(p)),
            (ExponentKind::P, Some(p)) => Err(fail(format!("requires p > 1, got {p}"))),
            (ExponentKind::Q, Some(q)) if q.is_finite() && q >= T::one() => Ok(Some(q)),
            (ExponentKind::Q, Some(q)) => Err(fail(format!("requires q >= 1, got {q}"))),
            (ExponentKind::P, None) => Err(fail("requires an exponent p > 1".into())),
            (ExponentKind::Q, None) => Err(fail("requires an exponent q >= 1".into())),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn average<T: Real>(f: &SmoothFunction<T>, interval: Interval<T>, opts: &QuadratureOptions<T>) -> Result<T> {
    let r = integrate_with(|x| f.eval(x), interval, opts)?;
    Ok(r.converged_value()? / interval.width())
}

/// `|(f(a) + f(b))/2 - (1/(b-a)) ∫ f|`.
pub fn lhs_trapezoid<T: Real>(f: &SmoothFunction<T>, interval: Interval<T>, opts: &QuadratureOptions<T>) -> Result<T> {
    let (a, b) = (interval.a(), interval.b());
    Ok(((f.eval(a) + f.eval(b)) / T::lit(2.0) - average(f, interval, opts)?).abs())
}

/// `|(f(a) + f(b))/2 - (1/(b-a)) ∫ f - ((b-a)/12)(f'(b) - f'(a))|`.
pub fn lhs_trapezoid_corrected<T: Real>(
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    opts: &QuadratureOptions<T>,
) -> Result<T> {
    let (a, b) = (interval.a(), interval.b());
    let w = interval.width();
    let v = (f.eval(a) + f.eval(b)) / T::lit(2.0)
        - average(f, interval, opts)?
        - w / T::lit(12.0) * (f.deriv(1, b) - f.deriv(1, a));
    Ok(v.abs())
}

/// `|f((a+b)/2) - (1/(b-a)) ∫ f + ((b-a)/24)(f'(b) - f'(a))|`.
pub fn lhs_midpoint_corrected<T: Real>(
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    opts: &QuadratureOptions<T>,
) -> Result<T> {
    let (a, b) = (interval.a(), interval.b());
    let w = interval.width();
    let v =
        f.eval(interval.midpoint()) - average(f, interval, opts)? + w / T::lit(24.0) * (f.deriv(1, b) - f.deriv(1, a));
    Ok(v.abs())
}

pub fn lhs_for<T: Real>(
    theorem: TheoremId,
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    opts: &QuadratureOptions<T>,
) -> Result<T> {
    match theorem.deviation() {
        Deviation::Trapezoid => lhs_trapezoid(f, interval, opts),
        Deviation::TrapezoidCorrected => lhs_trapezoid_corrected(f, interval, opts),
        Deviation::MidpointCorrected => lhs_midpoint_corrected(f, interval, opts),
    }
}

/// The theorem's constant in front of `M`, as a function of the width and
/// the exponent.
pub fn rhs_coefficient<T: Real>(theorem: TheoremId, width: T, exponent: Option<T>) -> Result<T> {
    use TheoremId::*;
    let e = theorem.validate_exponent(exponent)?;
    let one = T::one();
    let w = width;
    let holder_midpoint = |p: T| (one / (p + one)).powf(one / p);
    Ok(match theorem {
        T1_2 => w / T::lit(4.0),
        T1_3 => {
            let p = e.expect("validated");
            w / (T::lit(2.0) * (p + one).powf(one / p))
        }
        T1_4 => w.powi(2) / T::lit(12.0),
        T1_5 | T1_7 | ME4 | ME6 => w.powi(3) / T::lit(192.0),
        T1_6 | ME5 => w.powi(3) / T::lit(96.0) * holder_midpoint(e.expect("validated")),
        ME1 | ME3 => w.powi(4) / T::lit(720.0),
        ME2 => {
            let p = e.expect("validated");
            let two_p1 = T::lit(2.0) * p + one;
            w.powi(4) / T::lit(24.0) * beta(two_p1, two_p1)?.powf(one / p)
        }
    })
}

/// Right-hand side of `theorem` for `f` on `interval`.
pub fn rhs_bound<T: Real>(
    theorem: TheoremId,
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    exponent: Option<T>,
) -> Result<T> {
    let k = theorem.derivative_order();
    let endpoint_max = f.deriv(k, interval.a()).abs().max(f.deriv(k, interval.b()).abs());
    Ok(rhs_coefficient(theorem, interval.width(), exponent)? * endpoint_max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOptions<T> {
    pub quadrature: QuadratureOptions<T>,
    pub hypothesis_grid: usize,
    pub hypothesis_tol: T,
    pub margin_tol: T,
}

impl<T: Real> Default for BoundOptions<T> {
    fn default() -> Self {
        Self {
            quadrature: QuadratureOptions::default(),
            hypothesis_grid: DEFAULT_GRID,
            hypothesis_tol: T::lit(DEFAULT_TOL),
            margin_tol: T::lit(DEFAULT_MARGIN_TOL),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport<T> {
    pub theorem: TheoremId,
    pub exponent: Option<T>,
    pub lhs: T,
    pub rhs: T,
    /// `rhs - lhs`.
    pub margin: T,
    /// `lhs / rhs`; zero when both sides vanish, infinite when only the
    /// right-hand side does.
    pub ratio: T,
    pub hypothesis: QuasiConvexityCertificate<T>,
    pub pass: bool,
}

impl<T: Real> BoundReport<T> {
    /// The inequality itself held, whatever the hypothesis verdict.
    pub fn inequality_holds(&self, margin_tol: T) -> bool {
        self.margin >= -margin_tol
    }
}

/// `lhs / rhs` with the degenerate cases resolved: `0` when `rhs = 0` and
/// `lhs` is within `zero_tol` of zero, `+inf` when `rhs = 0` and it is not.
pub fn ratio_of<T: Real>(lhs: T, rhs: T, zero_tol: T) -> T {
    if rhs > T::zero() {
        lhs / rhs
    } else if lhs <= zero_tol {
        T::zero()
    } else {
        T::infinity()
    }
}

/// Samples the quasi-convexity hypothesis of `theorem`.
pub fn hypothesis_certificate<T: Real>(
    theorem: TheoremId,
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    exponent: Option<T>,
    opts: &BoundOptions<T>,
) -> Result<QuasiConvexityCertificate<T>> {
    let e = theorem.hypothesis_exponent(exponent)?;
    Ok(certify_derivative_power(
        f,
        theorem.derivative_order(),
        e,
        interval,
        opts.hypothesis_grid,
        opts.hypothesis_tol,
    ))
}

/// Quasi-convexity certificate for `|f^(k)|^e` on `interval`.
pub fn certify_derivative_power<T: Real>(
    f: &SmoothFunction<T>,
    k: usize,
    e: T,
    interval: Interval<T>,
    n_grid: usize,
    tol: T,
) -> QuasiConvexityCertificate<T> {
    let d = f.derivative(k);
    if e == T::one() {
        check_quasi_convex(|x| d(x).abs(), interval, n_grid, tol)
    } else {
        check_quasi_convex(|x| d(x).abs().powf(e), interval, n_grid, tol)
    }
}

/// Evaluates the inequality against a precomputed hypothesis certificate.
pub fn check_bound_with<T: Real>(
    theorem: TheoremId,
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    exponent: Option<T>,
    hypothesis: QuasiConvexityCertificate<T>,
    opts: &BoundOptions<T>,
) -> Result<BoundReport<T>> {
    let rhs = rhs_bound(theorem, f, interval, exponent)?;
    let lhs = lhs_for(theorem, f, interval, &opts.quadrature)?;
    let margin = rhs - lhs;
    Ok(BoundReport {
        theorem,
        exponent,
        lhs,
        rhs,
        margin,
        ratio: ratio_of(lhs, rhs, opts.margin_tol),
        pass: margin >= -opts.margin_tol && hypothesis.is_certified(),
        hypothesis,
    })
}

/// Full check: deviation, bound, hypothesis certificate and verdict.
///
/// A refuted hypothesis does not abort: the inequality is still evaluated
/// and the report carries the counterexample with `pass = false`.
pub fn check_bound<T: Real>(
    theorem: TheoremId,
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    exponent: Option<T>,
    opts: &BoundOptions<T>,
) -> Result<BoundReport<T>> {
    let hypothesis = hypothesis_certificate(theorem, f, interval, exponent, opts)?;
    check_bound_with(theorem, f, interval, exponent, hypothesis, opts)
}
