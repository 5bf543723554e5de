//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Each panel is integrated with the 15-point Kronrod rule; the embedded
//! 7-point Gauss rule supplies the error estimate `|K15 - G7|`, floored at a
//! round-off level of `50 eps * integral(|f|)` over the panel. The panel with
//! the largest estimate is bisected until the summed estimate meets the
//! absolute tolerance or the evaluation budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{HhError, Result};
use crate::numerics::Interval;
use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const EVALS_PER_PANEL: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions<T> {
    /// Absolute error target.
    pub abs_tol: T,
    /// Maximum number of integrand evaluations.
    pub max_evals: usize,
}

impl<T: Real> Default for QuadratureOptions<T> {
    fn default() -> Self {
        let floor = T::lit(1024.0) * T::epsilon();
        Self {
            abs_tol: T::lit(1e-10).max(floor),
            max_evals: 1_000_000,
        }
    }
}

impl<T: Real> QuadratureOptions<T> {
    pub fn with_tol(abs_tol: T) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: Real> QuadratureResult<T> {
    /// The value if the integration converged, otherwise a `NotConverged` error.
    pub fn converged_value(&self) -> Result<T> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(HhError::NotConverged {
                value: self.value.as_f64(),
                error_estimate: self.error_estimate.as_f64(),
                evaluations: self.evaluations,
            })
        }
    }
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for Panel<T> {}

impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Panel<T> {
    // Largest error first; ties broken towards the leftmost panel.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

fn kronrod15<T, F>(f: &F, a: T, b: T) -> Result<Panel<T>>
where
    T: Real,
    F: Fn(T) -> T + ?Sized,
{
    let eval = |x: T| -> Result<T> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(HhError::NonFinite { abscissa: x.as_f64() })
        }
    };
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);

    let fc = eval(center)?;
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    let mut abs_sum = fc.abs() * T::lit(WGK[7]);

    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        let w = T::lit(WGK[j]);
        kronrod = kronrod + w * (f1 + f2);
        abs_sum = abs_sum + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let value = kronrod * half_len;
    let raw = ((kronrod - gauss) * half_len).abs();
    let roundoff = T::lit(50.0) * T::epsilon() * abs_sum * half_len.abs();
    Ok(Panel {
        a,
        b,
        value,
        error: raw.max(roundoff),
    })
}

/// Integrates `f` over `interval` to absolute tolerance `tol` with the
/// default evaluation budget.
pub fn integrate<T, F>(f: F, interval: Interval<T>, tol: T) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    integrate_with(f, interval, &QuadratureOptions::with_tol(tol))
}

/// Integrates `f` over `interval`.
///
/// A non-finite integrand value is an error naming the abscissa. Running out
/// of budget is not: the best estimate is returned with `converged = false`.
pub fn integrate_with<T, F>(f: F, interval: Interval<T>, opts: &QuadratureOptions<T>) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(opts.abs_tol > T::zero()) {
        return Err(HhError::domain(
            "integrate",
            format!("tolerance {} must be positive", opts.abs_tol),
        ));
    }

    let first = kronrod15(&f, interval.a(), interval.b())?;
    let mut evaluations = EVALS_PER_PANEL;
    let mut running_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    let mut exhausted = false;
    loop {
        if running_err <= opts.abs_tol {
            // The running sum drifts; confirm with an exact re-summation.
            let exact: T = heap.iter().fold(T::zero(), |s, p| s + p.error);
            running_err = exact;
            if exact <= opts.abs_tol {
                break;
            }
        }
        if evaluations + 2 * EVALS_PER_PANEL > opts.max_evals {
            exhausted = true;
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Panel is below floating-point resolution.
            heap.push(worst);
            exhausted = true;
            break;
        }
        let left = kronrod15(&f, worst.a, mid)?;
        let right = kronrod15(&f, mid, worst.b)?;
        evaluations += 2 * EVALS_PER_PANEL;
        running_err = running_err - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(Ordering::Equal));
    let value = panels.iter().fold(T::zero(), |s, p| s + p.value);
    let error_estimate = panels.iter().fold(T::zero(), |s, p| s + p.error);

    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
        converged: !exhausted && error_estimate <= opts.abs_tol,
    })
}
