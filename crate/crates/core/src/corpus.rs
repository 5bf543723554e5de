//! Smooth test functions carrying analytic derivatives of orders 0 through 4.

use std::fmt;
use std::sync::Arc;

use crate::error::{HhError, Result};
use crate::numerics::Interval;
use crate::scalar::Real;

/// Highest derivative order every corpus member supplies.
pub const MAX_ORDER: usize = 4;

type Evaluator<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A function together with its exact derivatives `f, f', f'', f''', f''''`.
#[derive(Clone)]
pub struct SmoothFunction<T> {
    name: String,
    domain: Interval<T>,
    chain: [Evaluator<T>; MAX_ORDER + 1],
}

impl<T: Real> fmt::Debug for SmoothFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothFunction")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl<T: Real> SmoothFunction<T> {
    /// Builds a function from its derivative chain, index `k` holding `f^(k)`.
    pub fn from_chain(name: impl Into<String>, domain: Interval<T>, chain: [Evaluator<T>; MAX_ORDER + 1]) -> Self {
        Self {
            name: name.into(),
            domain,
            chain,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    #[inline]
    pub fn eval(&self, x: T) -> T {
        (self.chain[0])(x)
    }

    /// `f^(k)(x)` for `k <= 4`.
    #[inline]
    pub fn deriv(&self, k: usize, x: T) -> T {
        (self.chain[k])(x)
    }

    /// A shareable evaluator for `f^(k)`.
    pub fn derivative(&self, k: usize) -> impl Fn(T) -> T + Send + Sync + '_ {
        assert!(k <= MAX_ORDER, "derivative order {k} exceeds {MAX_ORDER}");
        move |x| (self.chain[k])(x)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Restricts (or re-declares) the domain of validity.
    pub fn on(mut self, domain: Interval<T>) -> Self {
        self.domain = domain;
        self
    }

    /// `g(x) = amplitude * f(slope * x + shift)` on `domain`, with the chain
    /// rule applied to every derivative.
    pub fn compose_affine(&self, amplitude: T, slope: T, shift: T, domain: Interval<T>) -> Self {
        let chain = std::array::from_fn(|k| {
            let inner = Arc::clone(&self.chain[k]);
            let factor = amplitude * slope.powi(k as i32);
            Arc::new(move |x: T| factor * inner(slope * x + shift)) as Evaluator<T>
        });
        Self {
            name: format!("{}∘affine", self.name),
            domain,
            chain,
        }
    }

    /// `c * f`.
    pub fn scaled(&self, c: T) -> Self {
        self.compose_affine(c, T::one(), T::zero(), self.domain)
            .with_name(format!("{}*{}", c, self.name))
    }

    /// `x ↦ f(a + b - x)` on the same interval `[a, b]`.
    pub fn reflected(&self, interval: Interval<T>) -> Self {
        self.compose_affine(T::one(), -T::one(), interval.a() + interval.b(), interval)
            .with_name(format!("{}∘reflect", self.name))
    }

    /// Moves the shape of `f` on `[0, 1]` onto `[0, h]`, scaled so that the
    /// derivative of order `order` keeps its profile: `g(x) = h^order f(x / h)`.
    pub fn transplant(&self, h: T, order: usize) -> Result<Self> {
        let domain = Interval::new(T::zero(), h)?;
        Ok(self
            .compose_affine(h.powi(order as i32), h.recip(), T::zero(), domain)
            .with_name(format!("{}@[0,{}]^{}", self.name, h, order)))
    }
}

/// Polynomial with coefficients in increasing degree order.
pub fn polynomial<T: Real>(name: impl Into<String>, coeffs: &[T], domain: Interval<T>) -> SmoothFunction<T> {
    let mut current: Vec<T> = coeffs.to_vec();
    let chain = std::array::from_fn(|_| {
        let this = current.clone();
        current = differentiate(&current);
        Arc::new(move |x: T| horner(&this, x)) as Evaluator<T>
    });
    SmoothFunction::from_chain(name, domain, chain)
}

fn differentiate<T: Real>(coeffs: &[T]) -> Vec<T> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * T::from_count(i))
        .collect()
}

fn horner<T: Real>(coeffs: &[T], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
}

/// `x^n`.
pub fn monomial<T: Real>(n: usize, domain: Interval<T>) -> SmoothFunction<T> {
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    polynomial(format!("x^{n}"), &coeffs, domain)
}

pub fn exponential<T: Real>(domain: Interval<T>) -> SmoothFunction<T> {
    let chain = std::array::from_fn(|_| Arc::new(|x: T| x.exp()) as Evaluator<T>);
    SmoothFunction::from_chain("exp", domain, chain)
}

pub fn sine<T: Real>(domain: Interval<T>) -> SmoothFunction<T> {
    let chain: [Evaluator<T>; MAX_ORDER + 1] = [
        Arc::new(|x: T| x.sin()),
        Arc::new(|x: T| x.cos()),
        Arc::new(|x: T| -x.sin()),
        Arc::new(|x: T| -x.cos()),
        Arc::new(|x: T| x.sin()),
    ];
    SmoothFunction::from_chain("sin", domain, chain)
}

/// Exponent `alpha` of the monomial family, restricted to `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialFamilyParam<T>(T);

impl<T: Real> MonomialFamilyParam<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if alpha > T::zero() && alpha <= T::one() {
            Ok(Self(alpha))
        } else {
            Err(HhError::domain(
                "f_alpha",
                format!("alpha = {alpha} must lie in (0, 1]"),
            ))
        }
    }

    pub fn alpha(&self) -> T {
        self.0
    }

    /// `(alpha + 1)(alpha + 2)(alpha + 3)(alpha + 4)`.
    pub fn pochhammer4(&self) -> T {
        let a = self.0;
        (a + T::one()) * (a + T::lit(2.0)) * (a + T::lit(3.0)) * (a + T::lit(4.0))
    }
}

/// Default domain of the `f_alpha` family.
pub fn f_alpha_default_domain<T: Real>() -> Interval<T> {
    Interval::new(T::lit(0.25), T::lit(4.0)).expect("static interval")
}

/// `f(x) = x^(alpha + 4) / ((alpha + 1)(alpha + 2)(alpha + 3)(alpha + 4))`,
/// so that `f''''(x) = x^alpha`.
pub fn make_f_alpha<T: Real>(param: MonomialFamilyParam<T>) -> SmoothFunction<T> {
    make_f_alpha_on(param, f_alpha_default_domain()).expect("default domain is positive")
}

/// As [`make_f_alpha`] on a caller-chosen domain. The domain must be
/// positive, except that `alpha = 1` admits `x = 0`.
pub fn make_f_alpha_on<T: Real>(param: MonomialFamilyParam<T>, domain: Interval<T>) -> Result<SmoothFunction<T>> {
    let alpha = param.alpha();
    let admits_zero = alpha == T::one();
    if domain.a() < T::zero() || (domain.a() == T::zero() && !admits_zero) {
        return Err(HhError::domain(
            "f_alpha",
            format!(
                "domain [{}, {}] must be positive for alpha = {alpha}",
                domain.a(),
                domain.b()
            ),
        ));
    }
    // Denominators of f^(k) for k = 0..4: the trailing factors of the
    // rising product (alpha + 1) ... (alpha + 4 - k).
    let chain = std::array::from_fn(|k| {
        let power = alpha + T::from_count(MAX_ORDER - k);
        let denom = (1..=(MAX_ORDER - k)).fold(T::one(), |acc, j| acc * (alpha + T::from_count(j)));
        Arc::new(move |x: T| x.powf(power) / denom) as Evaluator<T>
    });
    Ok(SmoothFunction::from_chain(format!("f_alpha({alpha})"), domain, chain))
}

/// Selection of the built-in corpus.
#[derive(Debug, Clone)]
pub struct CorpusConfig<T> {
    pub polynomial_domain: Interval<T>,
    pub exp_domain: Interval<T>,
    pub sin_domains: Vec<Interval<T>>,
    pub alpha_grid: Vec<T>,
    pub f_alpha_domain: Interval<T>,
}

impl<T: Real> Default for CorpusConfig<T> {
    fn default() -> Self {
        let iv = |a: f64, b: f64| Interval::new(T::lit(a), T::lit(b)).expect("static interval");
        Self {
            polynomial_domain: iv(-1.0, 2.0),
            exp_domain: iv(-1.0, 2.0),
            sin_domains: vec![iv(0.0, std::f64::consts::PI)],
            alpha_grid: [0.25, 0.5, 0.75, 1.0].iter().map(|&a| T::lit(a)).collect(),
            f_alpha_domain: f_alpha_default_domain(),
        }
    }
}

/// x³, x⁴, x⁵, exp, sin (one member per configured domain) and the
/// `f_alpha` family over the configured alpha grid.
pub fn builtin_corpus<T: Real>(cfg: &CorpusConfig<T>) -> Result<Vec<SmoothFunction<T>>> {
    let mut out = vec![
        monomial(3, cfg.polynomial_domain),
        monomial(4, cfg.polynomial_domain),
        monomial(5, cfg.polynomial_domain),
        exponential(cfg.exp_domain),
    ];
    out.extend(cfg.sin_domains.iter().map(|&d| sine(d)));
    for &alpha in &cfg.alpha_grid {
        out.push(make_f_alpha_on(MonomialFamilyParam::new(alpha)?, cfg.f_alpha_domain)?);
    }
    Ok(out)
}

/// Central-difference step used by [`fd_validate`].
pub fn fd_step<T: Real>(x: T) -> T {
    let h = T::lit(1e-4);
    h.max(h * x.abs())
}

/// Largest gap between `f^(k)` and the central difference of `f^(k-1)` over
/// `n_points` interior samples.
///
/// The gap is measured relative to `max(|f^(k)(x)|, 1)`, which reads as a
/// relative error for O(1) and larger derivatives and as an absolute error
/// near zeros of `f^(k)`.
pub fn fd_validate<T: Real>(f: &SmoothFunction<T>, k: usize, n_points: usize) -> T {
    assert!((1..=MAX_ORDER).contains(&k), "order {k} outside 1..=4");
    let dom = f.domain();
    // Keep samples far enough inside that x ± h stays in the domain.
    let margin = dom.width() * T::lit(0.05);
    let lo = dom.a() + margin;
    let span = dom.width() - margin - margin;
    let n = n_points.max(1);
    let two = T::lit(2.0);
    (0..n)
        .map(|i| {
            let x = lo + span * (T::from_count(i) + T::lit(0.5)) / T::from_count(n);
            let h = fd_step(x);
            let fd = (f.deriv(k - 1, x + h) - f.deriv(k - 1, x - h)) / (two * h);
            let exact = f.deriv(k, x);
            (fd - exact).abs() / exact.abs().max(T::one())
        })
        .fold(T::zero(), T::max)
}
