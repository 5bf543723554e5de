//! Sampling-based certification of quasi-convexity,
//! `g(λx + (1-λ)y) <= max{g(x), g(y)}`.
//!
//! A "certified" verdict is evidence at grid resolution, not a proof.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::numerics::Interval;
use crate::scalar::Real;

pub const DEFAULT_GRID: usize = 101;
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Refuted,
}

/// A violating triple and the values that witness it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counterexample<T> {
    pub x: T,
    pub y: T,
    pub lambda: T,
    /// `g(λx + (1-λ)y)`.
    pub mixed_value: T,
    /// `max{g(x), g(y)}`.
    pub endpoint_max: T,
}

impl<T: Real> Counterexample<T> {
    #[inline]
    pub fn point(&self) -> T {
        mix(self.x, self.y, self.lambda)
    }

    #[inline]
    pub fn violation(&self) -> T {
        self.mixed_value - self.endpoint_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiConvexityCertificate<T> {
    pub verdict: Verdict,
    pub grid_size: usize,
    pub tol: T,
    /// Largest `g(mix) - max{g(x), g(y)}` seen; negative or zero for a clean
    /// certificate, and visible even when it stays within `tol`.
    pub max_violation: T,
    /// Worst violating triple; present exactly when refuted.
    pub counterexample: Option<Counterexample<T>>,
}

impl<T: Real> QuasiConvexityCertificate<T> {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

#[inline]
fn mix<T: Real>(x: T, y: T, lambda: T) -> T {
    lambda * x + (T::one() - lambda) * y
}

// Largest violation first, then lexicographically smallest (x, y, λ).
fn worse<T: Real>(a: &Counterexample<T>, b: &Counterexample<T>) -> Ordering {
    let key = |c: &Counterexample<T>| (c.violation(), c.x, c.y, c.lambda);
    let (va, xa, ya, la) = key(a);
    let (vb, xb, yb, lb) = key(b);
    va.partial_cmp(&vb)
        .unwrap_or(Ordering::Equal)
        .then_with(|| xb.partial_cmp(&xa).unwrap_or(Ordering::Equal))
        .then_with(|| yb.partial_cmp(&ya).unwrap_or(Ordering::Equal))
        .then_with(|| lb.partial_cmp(&la).unwrap_or(Ordering::Equal))
}

/// Checks the defining inequality over every pair of `n_grid` uniform nodes
/// and every interior `λ` of a uniform `n_grid` grid on `[0, 1]`.
///
/// The pair `(y, x)` with `1 - λ` reproduces the mixed point of `(x, y)`
/// with `λ`, so only `x < y` is scanned. The result does not depend on the
/// thread schedule.
pub fn check_quasi_convex<T, G>(g: G, interval: Interval<T>, n_grid: usize, tol: T) -> QuasiConvexityCertificate<T>
where
    T: Real,
    G: Fn(T) -> T + Sync,
{
    let n = n_grid.max(3);
    let nodes = interval.linspace(n);
    let values: Vec<T> = nodes.iter().map(|&x| g(x)).collect();
    let lambdas: Vec<T> = Interval::new(T::zero(), T::one()).expect("unit interval").linspace(n)[1..n - 1].to_vec();

    let worst = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let mut best: Option<Counterexample<T>> = None;
            for j in (i + 1)..n {
                let endpoint_max = values[i].max(values[j]);
                for &lambda in &lambdas {
                    let z = mix(nodes[i], nodes[j], lambda);
                    let c = Counterexample {
                        x: nodes[i],
                        y: nodes[j],
                        lambda,
                        mixed_value: g(z),
                        endpoint_max,
                    };
                    if best.as_ref().is_none_or(|b| worse(&c, b) == Ordering::Greater) {
                        best = Some(c);
                    }
                }
            }
            best
        })
        .reduce_with(|a, b| if worse(&b, &a) == Ordering::Greater { b } else { a });

    let max_violation = worst.map_or(T::neg_infinity(), |c| c.violation());
    let refuted = worst.filter(|c| c.violation() > tol);
    QuasiConvexityCertificate {
        verdict: if refuted.is_some() {
            Verdict::Refuted
        } else {
            Verdict::Certified
        },
        grid_size: n,
        tol,
        max_violation,
        counterexample: refuted,
    }
}

/// Re-evaluates a witness against `g`: true when the violation still exceeds `tol`.
pub fn reverify<T: Real, G: Fn(T) -> T>(g: G, c: &Counterexample<T>, tol: T) -> bool {
    g(c.point()) > g(c.x).max(g(c.y)) + tol
}

/// Shape of a sampled profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnimodalProfile {
    /// Non-increasing up to `split_index`, non-decreasing after it.
    pub decreasing_then_increasing: bool,
    /// Index of the first sampled minimum.
    pub split_index: usize,
}

/// Corroborating check: a continuous function on an interval is
/// quasi-convex iff it falls then rises. Steps smaller than `1e-12` of the
/// profile's magnitude count as flat.
pub fn check_unimodal_profile<T, G>(g: G, interval: Interval<T>, n_grid: usize) -> UnimodalProfile
where
    T: Real,
    G: Fn(T) -> T,
{
    let n = n_grid.max(3);
    let values: Vec<T> = interval.linspace(n).into_iter().map(g).collect();
    profile_of(&values)
}

/// [`check_unimodal_profile`] on already sampled values.
pub fn profile_of<T: Real>(values: &[T]) -> UnimodalProfile {
    assert!(!values.is_empty(), "empty profile");
    let scale = values.iter().fold(T::one(), |m, v| m.max(v.abs()));
    let slack = T::lit(DEFAULT_TOL) * scale;

    let split_index = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < values[best] { i } else { best });
    let falls = values[..=split_index].windows(2).all(|w| w[1] <= w[0] + slack);
    let rises = values[split_index..].windows(2).all(|w| w[1] + slack >= w[0]);
    UnimodalProfile {
        decreasing_then_increasing: falls && rises,
        split_index,
    }
}
