use crate::error::{HhError, Result};
use crate::scalar::Real;

/// A closed segment `[a, b]` with finite endpoints and `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    a: T,
    b: T,
}

impl<T: Real> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(HhError::InvalidInterval {
                a: a.as_f64(),
                b: b.as_f64(),
            });
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> T {
        self.a
    }

    #[inline]
    pub fn b(&self) -> T {
        self.b
    }

    #[inline]
    pub fn width(&self) -> T {
        self.b - self.a
    }

    #[inline]
    pub fn midpoint(&self) -> T {
        (self.a + self.b) / T::lit(2.0)
    }

    /// Closed containment.
    pub fn contains(&self, x: T) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn contains_interval(&self, other: &Interval<T>) -> bool {
        self.contains(other.a) && self.contains(other.b)
    }

    /// `n` equally spaced points including both endpoints (`n >= 2`).
    ///
    /// The last point is pinned to `b` so no rounding pushes it outside.
    pub fn linspace(&self, n: usize) -> Vec<T> {
        assert!(n >= 2, "linspace needs at least two points");
        let step = self.width() / T::from_count(n - 1);
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.b
                } else {
                    self.a + step * T::from_count(i)
                }
            })
            .collect()
    }

    /// All sub-intervals spanned by pairs of `n` equally spaced nodes:
    /// `n (n - 1) / 2` intervals.
    pub fn pair_grid(&self, n: usize) -> Vec<Interval<T>> {
        let nodes = self.linspace(n);
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                out.push(Interval {
                    a: nodes[i],
                    b: nodes[j],
                });
            }
        }
        out
    }
}
