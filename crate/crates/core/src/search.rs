//! How tight are the bounds: tightness ratios, the best Hölder exponent for
//! the p-parameterized bounds, and the worst case over the `f_alpha` family.

use crate::bounds::{lhs_for, ratio_of, rhs_bound, ExponentKind, TheoremId};
use crate::corpus::{make_f_alpha_on, MonomialFamilyParam, SmoothFunction};
use crate::error::{HhError, Result};
use crate::numerics::{Interval, QuadratureOptions};
use crate::quasiconvex::profile_of;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions<T> {
    /// Seed grid size used to bracket the optimum.
    pub seed_points: usize,
    /// Golden-section stopping width, in parameter units.
    pub xtol: T,
    pub max_iter: usize,
    /// Dense grid used when the seed profile is not unimodal.
    pub fallback_points: usize,
    pub quadrature: QuadratureOptions<T>,
    /// Left-hand sides below this count as zero when the bound vanishes.
    pub zero_tol: T,
}

impl<T: Real> Default for SearchOptions<T> {
    fn default() -> Self {
        Self {
            seed_points: 33,
            xtol: T::lit(1e-6),
            max_iter: 200,
            fallback_points: 200,
            quadrature: QuadratureOptions::default(),
            zero_tol: T::lit(crate::bounds::DEFAULT_MARGIN_TOL),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<T> {
    /// Criterion value at `params`.
    pub objective: T,
    pub params: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
    /// The seed profile was not unimodal and a dense-grid argmin was used.
    pub fallback: bool,
}

/// Tightness of one theorem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tightness<T> {
    /// `lhs / rhs`, or zero when both sides vanish.
    Ratio(T),
    /// The bound is zero but the deviation is not.
    Refuted { lhs: T },
}

impl<T: Real> Tightness<T> {
    /// The ratio, with a refutation mapped to `+inf`.
    pub fn value(&self) -> T {
        match *self {
            Tightness::Ratio(r) => r,
            Tightness::Refuted { .. } => T::infinity(),
        }
    }
}

pub fn tightness_ratio<T: Real>(
    theorem: TheoremId,
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    exponent: Option<T>,
    opts: &SearchOptions<T>,
) -> Result<Tightness<T>> {
    let rhs = rhs_bound(theorem, f, interval, exponent)?;
    let lhs = lhs_for(theorem, f, interval, &opts.quadrature)?;
    let r = ratio_of(lhs, rhs, opts.zero_tol);
    Ok(if r.is_infinite() {
        Tightness::Refuted { lhs }
    } else {
        Tightness::Ratio(r)
    })
}

#[derive(Clone, Copy)]
enum Spacing {
    Linear,
    Log,
}

fn grid<T: Real>(lo: T, hi: T, n: usize, spacing: Spacing) -> Vec<T> {
    let n = n.max(2);
    let (l, h) = match spacing {
        Spacing::Linear => (lo, hi),
        Spacing::Log => (lo.ln(), hi.ln()),
    };
    (0..n)
        .map(|i| {
            if i == 0 {
                return lo;
            }
            if i == n - 1 {
                return hi;
            }
            let t = l + (h - l) * T::from_count(i) / T::from_count(n - 1);
            match spacing {
                Spacing::Linear => t,
                Spacing::Log => t.exp(),
            }
        })
        .collect()
}

/// Golden-section minimization of a unimodal objective on `[lo, hi]`.
fn golden_section<T, F>(obj: &F, mut lo: T, mut hi: T, xtol: T, max_iter: usize) -> Result<(T, T, usize, bool)>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = obj(c)?;
    let mut fd = obj(d)?;
    let mut iters = 0;
    while hi - lo > xtol && iters < max_iter {
        iters += 1;
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = obj(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = obj(d)?;
        }
    }
    let (x, fx) = if fc <= fd { (c, fc) } else { (d, fd) };
    Ok((x, fx, iters, hi - lo <= xtol))
}

/// Seeded minimization: grid seed, bracket around the best seed, golden
/// section inside the bracket, dense-grid fallback when the seed profile
/// has more than one valley. The returned point is never worse than any
/// evaluated seed.
fn seeded_minimize<T, F>(obj: F, lo: T, hi: T, spacing: Spacing, opts: &SearchOptions<T>) -> Result<SearchResult<T>>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    let seeds = grid(lo, hi, opts.seed_points, spacing);
    let values = seeds.iter().map(|&x| obj(x)).collect::<Result<Vec<T>>>()?;

    if values.iter().all(|&v| v == values[0]) {
        let mid = (lo + hi) / T::lit(2.0);
        return Ok(SearchResult {
            objective: obj(mid)?,
            params: vec![mid],
            iterations: 1,
            converged: true,
            fallback: false,
        });
    }

    let best_of = |xs: &[T], vs: &[T]| {
        let i = vs
            .iter()
            .enumerate()
            .fold(0, |best, (i, &v)| if v < vs[best] { i } else { best });
        (xs[i], vs[i])
    };

    let profile = profile_of(&values);

    if !profile.decreasing_then_increasing {
        let dense = grid(lo, hi, opts.fallback_points, spacing);
        let dense_values = dense.iter().map(|&x| obj(x)).collect::<Result<Vec<T>>>()?;
        let (x, fx) = best_of(&dense, &dense_values);
        let (sx, sfx) = best_of(&seeds, &values);
        let (x, fx) = if sfx < fx { (sx, sfx) } else { (x, fx) };
        return Ok(SearchResult {
            objective: fx,
            params: vec![x],
            iterations: dense.len(),
            converged: true,
            fallback: true,
        });
    }

    let i = profile.split_index;
    let b_lo = seeds[i.saturating_sub(1)];
    let b_hi = seeds[(i + 1).min(seeds.len() - 1)];
    let (gx, gfx, iters, converged) = golden_section(&obj, b_lo, b_hi, opts.xtol, opts.max_iter)?;
    let (sx, sfx) = best_of(&seeds, &values);
    let (x, fx) = if sfx <= gfx { (sx, sfx) } else { (gx, gfx) };
    Ok(SearchResult {
        objective: fx,
        params: vec![x],
        iterations: iters,
        converged,
        fallback: false,
    })
}

/// Minimizes the right-hand side of a p-parameterized bound over `p_range`.
pub fn best_exponent<T: Real>(
    theorem: TheoremId,
    f: &SmoothFunction<T>,
    interval: Interval<T>,
    p_range: (T, T),
    opts: &SearchOptions<T>,
) -> Result<SearchResult<T>> {
    if theorem.exponent_kind() != ExponentKind::P {
        return Err(HhError::Parameter {
            theorem: theorem.tag().into(),
            detail: "best_exponent needs a p-parameterized bound (T1_3, T1_6, ME2, ME5)".into(),
        });
    }
    let (lo, hi) = p_range;
    if !(lo > T::one() && hi > lo && hi.is_finite()) {
        return Err(HhError::Parameter {
            theorem: theorem.tag().into(),
            detail: format!("p range ({lo}, {hi}) must satisfy 1 < lo < hi < inf"),
        });
    }
    seeded_minimize(|p| rhs_bound(theorem, f, interval, Some(p)), lo, hi, Spacing::Log, opts)
}

/// Maximizes the tightness ratio over `alpha` for the `f_alpha` family on a
/// positive interval. The objective is the ratio itself (not negated).
pub fn worst_case_alpha<T: Real>(
    theorem: TheoremId,
    interval: Interval<T>,
    alpha_range: (T, T),
    exponent: Option<T>,
    opts: &SearchOptions<T>,
) -> Result<SearchResult<T>> {
    let (lo, hi) = alpha_range;
    MonomialFamilyParam::new(lo)?;
    MonomialFamilyParam::new(hi)?;
    if !(hi > lo) {
        return Err(HhError::domain(
            "worst_case_alpha",
            format!("alpha range ({lo}, {hi}) must be increasing"),
        ));
    }
    if !(interval.a() > T::zero()) {
        return Err(HhError::domain(
            "worst_case_alpha",
            format!("interval must be positive, got left endpoint {}", interval.a()),
        ));
    }
    let neg_ratio = |alpha: T| -> Result<T> {
        let f = make_f_alpha_on(MonomialFamilyParam::new(alpha)?, interval)?;
        Ok(-tightness_ratio(theorem, &f, interval, exponent, opts)?.value())
    };
    let mut r = seeded_minimize(neg_ratio, lo, hi, Spacing::Linear, opts)?;
    r.objective = -r.objective;
    Ok(r)
}
