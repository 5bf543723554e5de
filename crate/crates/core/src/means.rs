//! Arithmetic and generalized logarithmic means, the `f_alpha` link
//! identities, and the six special-mean inequalities in two variants.
//!
//! `L_p` follows the three-case form
//!
//! ```text
//! L_p(a, b) = (b^{p+1} - a^{p+1}) / ((p+1)(b-a))   p ≠ -1, 0
//!           = (b - a) / (ln b - ln a)               p = -1
//!           = (1/e) (b^b / a^a)^{1/(b-a)}            p = 0
//! ```
//!
//! without a `1/p`-th root on the first branch, so that
//! `(1/(b-a)) ∫ x^p dx = L_p(a, b)` holds for the family
//! `f(x) = x^{α+4} / Π`, `Π = (α+1)(α+2)(α+3)(α+4)`.
//!
//! The printed variant of each application inequality is transcribed
//! coefficient for coefficient. The derived variant is obtained by
//! substituting `f_alpha` into the parent inequality (ME1..ME6) and
//! multiplying through by `12 Π` (trapezoid side) or `24 Π` (midpoint side):
//!
//! ```text
//! trapezoid: |12 A(a^{α+4}, b^{α+4}) - 12 L_{α+4} - (b-a)^2 (α+3)(α+4) L_{α+2}|
//! midpoint:  |24 A(a, b)^{α+4}       - 24 L_{α+4} + (b-a)^2 (α+3)(α+4) L_{α+2}|
//! ```
//!
//! with right-hand sides `12 Π · rhs(ME1..3)` and `24 Π · rhs(ME4..6)`,
//! where the midpoint side's endpoint term is `max{a^{α+1}, b^{α+1}}/(α+1)`
//! because it bounds `f'''`, not `f''''`.

use std::fmt;

use crate::bounds::{rhs_coefficient, TheoremId};
use crate::corpus::{make_f_alpha_on, MonomialFamilyParam};
use crate::error::{HhError, Result};
use crate::numerics::{integrate_with, Interval, QuadratureOptions};
use crate::scalar::Real;

/// Distance from `-1` or `0` at which `L_p` switches to its special branch.
pub const BRANCH_TOL: f64 = 1e-12;

/// Largest integer exponent evaluated through the exact power-sum route.
const MAX_POWER_SUM: i64 = 64;

pub fn arithmetic_mean<T: Real>(a: T, b: T) -> T {
    (a + b) / T::lit(2.0)
}

/// Arguments of `L_p`: `0 < a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanRequest<T> {
    a: T,
    b: T,
    p: T,
}

impl<T: Real> MeanRequest<T> {
    pub fn new(a: T, b: T, p: T) -> Result<Self> {
        if !(a > T::zero() && b > a && b.is_finite() && p.is_finite()) {
            return Err(HhError::domain(
                "generalized_log_mean",
                format!("need finite 0 < a < b and finite p, got a = {a}, b = {b}, p = {p}"),
            ));
        }
        Ok(Self { a, b, p })
    }
}

/// Generalized logarithmic mean `L_p(a, b)` in the three-case form above.
pub fn generalized_log_mean<T: Real>(req: MeanRequest<T>) -> T {
    let MeanRequest { a, b, p } = req;
    let d = b - a;
    let one = T::one();
    let branch_tol = T::lit(BRANCH_TOL);
    // ln(b/a) without the cancellation of ln b - ln a.
    let log_ratio = (d / a).ln_1p();

    if (p + one).abs() <= branch_tol {
        return d / log_ratio;
    }
    if p.abs() <= branch_tol {
        // (b ln b - a ln a)/(b - a) = ln b + a ln(b/a)/(b - a).
        return b * (a * log_ratio / d - one).exp();
    }
    if p.fract() == T::zero() && p >= T::zero() && p <= T::lit(MAX_POWER_SUM as f64) {
        // (b^{n+1} - a^{n+1})/(b - a) = Σ a^k b^{n-k}.
        let n = p.to_i64().expect("bounded integer") as i32;
        let sum = (0..=n).fold(T::zero(), |s, k| s + a.powi(k) * b.powi(n - k));
        return sum / (p + one);
    }
    let p1 = p + one;
    a.powf(p1) * (p1 * log_ratio).exp_m1() / (p1 * d)
}

fn l_p<T: Real>(a: T, b: T, p: T) -> Result<T> {
    Ok(generalized_log_mean(MeanRequest::new(a, b, p)?))
}

/// Residuals of the three identities linking `f_alpha` to `A` and `L_p`:
///
/// 1. `(f(a) + f(b))/2 = A(a^{α+4}, b^{α+4}) / Π`
/// 2. `(1/(b-a)) ∫ f = L_{α+4}(a, b) / Π` (left side by quadrature)
/// 3. `f'(b) - f'(a) = (b-a) L_{α+2}(a, b) / ((α+1)(α+2))`
pub fn f_alpha_link_check<T: Real>(alpha: T, interval: Interval<T>, opts: &QuadratureOptions<T>) -> Result<[T; 3]> {
    let param = MonomialFamilyParam::new(alpha)?;
    if !(interval.a() > T::zero()) {
        return Err(HhError::domain(
            "f_alpha_link_check",
            format!("interval must be positive, got left endpoint {}", interval.a()),
        ));
    }
    let f = make_f_alpha_on(param, interval)?;
    let (a, b) = (interval.a(), interval.b());
    let pi = param.pochhammer4();
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);

    let r1 = (f.eval(a) + f.eval(b)) / two - arithmetic_mean(a.powf(alpha + four), b.powf(alpha + four)) / pi;

    let integral = integrate_with(|x| f.eval(x), interval, opts)?.converged_value()?;
    let r2 = integral / interval.width() - l_p(a, b, alpha + four)? / pi;

    let r3 =
        f.deriv(1, b) - f.deriv(1, a) - interval.width() * l_p(a, b, alpha + two)? / ((alpha + one) * (alpha + two));

    Ok([r1.abs(), r2.abs(), r3.abs()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum ApplicationId {
    A3_1,
    A3_2,
    A3_3,
    A3_4,
    A3_5,
    A3_6,
}

impl ApplicationId {
    pub const ALL: [ApplicationId; 6] = [
        ApplicationId::A3_1,
        ApplicationId::A3_2,
        ApplicationId::A3_3,
        ApplicationId::A3_4,
        ApplicationId::A3_5,
        ApplicationId::A3_6,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            ApplicationId::A3_1 => "A3_1",
            ApplicationId::A3_2 => "A3_2",
            ApplicationId::A3_3 => "A3_3",
            ApplicationId::A3_4 => "A3_4",
            ApplicationId::A3_5 => "A3_5",
            ApplicationId::A3_6 => "A3_6",
        }
    }

    pub fn parse(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.tag().eq_ignore_ascii_case(tag))
    }

    /// The inequality this application specializes.
    pub fn parent(&self) -> TheoremId {
        match self {
            ApplicationId::A3_1 => TheoremId::ME1,
            ApplicationId::A3_2 => TheoremId::ME2,
            ApplicationId::A3_3 => TheoremId::ME3,
            ApplicationId::A3_4 => TheoremId::ME4,
            ApplicationId::A3_5 => TheoremId::ME5,
            ApplicationId::A3_6 => TheoremId::ME6,
        }
    }

    fn midpoint_side(&self) -> bool {
        matches!(self, ApplicationId::A3_4 | ApplicationId::A3_5 | ApplicationId::A3_6)
    }

    /// `12 Π` for the trapezoid side, `24 Π` for the midpoint side.
    pub fn clearing_constant<T: Real>(&self, alpha: T) -> Result<T> {
        let pi = MonomialFamilyParam::new(alpha)?.pochhammer4();
        Ok(if self.midpoint_side() {
            T::lit(24.0)
        } else {
            T::lit(12.0)
        } * pi)
    }
}

impl fmt::Display for ApplicationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Coefficients exactly as printed.
    Paper,
    /// Coefficients obtained by substituting `f_alpha` into the parent inequality.
    Derived,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Paper, Variant::Derived];

    pub fn tag(&self) -> &'static str {
        match self {
            Variant::Paper => "paper",
            Variant::Derived => "derived",
        }
    }

    pub fn parse(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.tag().eq_ignore_ascii_case(tag))
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub const NOTE_PRINTED_REFUTED: &str = "printed coefficient refuted at this instance";
pub const NOTE_PRINTED_HOLDS: &str = "printed inequality holds at this instance";

#[derive(Debug, Clone, PartialEq)]
pub struct ApplicationVerdict<T> {
    pub theorem: ApplicationId,
    pub variant: Variant,
    pub a: T,
    pub b: T,
    pub alpha: T,
    pub exponent: Option<T>,
    pub lhs: T,
    pub rhs: T,
    pub pass: bool,
    pub note: String,
}

/// Evaluates one special-mean inequality at `(a, b, alpha)`.
///
/// Pass means `(rhs - lhs) / C >= -margin_tol` with `C` the clearing
/// constant, i.e. the same absolute margin the parent inequality is held to.
pub fn application_check<T: Real>(
    theorem: ApplicationId,
    variant: Variant,
    a: T,
    b: T,
    alpha: T,
    exponent: Option<T>,
    margin_tol: T,
) -> Result<ApplicationVerdict<T>> {
    let param = MonomialFamilyParam::new(alpha)?;
    let interval = Interval::new(a, b)?;
    if !(a > T::zero()) {
        return Err(HhError::domain("application_check", format!("need 0 < a, got {a}")));
    }
    let parent = theorem.parent();
    let w = interval.width();
    let pi = param.pochhammer4();
    let one = T::one();
    let (two, three, four) = (T::lit(2.0), T::lit(3.0), T::lit(4.0));
    let l4 = l_p(a, b, alpha + four)?;
    let l2 = l_p(a, b, alpha + two)?;
    let a_pow = arithmetic_mean(a.powf(alpha + four), b.powf(alpha + four));
    let endpoint_alpha = a.powf(alpha).max(b.powf(alpha));
    let constant = theorem.clearing_constant(alpha)?;

    let (lhs, rhs) = match variant {
        Variant::Paper => {
            let lhs = (T::lit(12.0) * a_pow
                - T::lit(12.0) * l4
                - w * w * (alpha + three) * (alpha + four) * (alpha + four) * l2)
                .abs();
            // Unit-width parent coefficient; also validates the exponent.
            let unit = rhs_coefficient(parent, one, exponent)?;
            let printed = match theorem {
                ApplicationId::A3_1 | ApplicationId::A3_3 => w.powi(4) / T::lit(60.0),
                // (b-a)^4/2 · B(2p+1, 2p+1)^{1/p}
                ApplicationId::A3_2 => w.powi(4) / two * (T::lit(24.0) * unit),
                ApplicationId::A3_4 | ApplicationId::A3_6 => w.powi(3) / T::lit(16.0),
                // (b-a)^3/8 · (1/(p+1))^{1/p}
                ApplicationId::A3_5 => w.powi(3) / T::lit(8.0) * (T::lit(96.0) * unit),
            };
            (lhs, printed * pi * endpoint_alpha)
        }
        Variant::Derived => {
            let correction = w * w * (alpha + three) * (alpha + four) * l2;
            if theorem.midpoint_side() {
                let mid = arithmetic_mean(a, b).powf(alpha + four);
                let lhs = (T::lit(24.0) * mid - T::lit(24.0) * l4 + correction).abs();
                let third = a.powf(alpha + one).max(b.powf(alpha + one)) / (alpha + one);
                (lhs, constant * rhs_coefficient(parent, w, exponent)? * third)
            } else {
                let lhs = (T::lit(12.0) * a_pow - T::lit(12.0) * l4 - correction).abs();
                (lhs, constant * rhs_coefficient(parent, w, exponent)? * endpoint_alpha)
            }
        }
    };

    let pass = (rhs - lhs) / constant >= -margin_tol;
    let note = match variant {
        Variant::Paper if pass => NOTE_PRINTED_HOLDS.to_string(),
        Variant::Paper => NOTE_PRINTED_REFUTED.to_string(),
        Variant::Derived => format!(
            "{} applied to f_alpha, cleared by {}*Pi",
            parent,
            if theorem.midpoint_side() { 24 } else { 12 }
        ),
    };
    Ok(ApplicationVerdict {
        theorem,
        variant,
        a,
        b,
        alpha,
        exponent,
        lhs,
        rhs,
        pass,
        note,
    })
}
