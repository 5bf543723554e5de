//! Shared numerical kernels: intervals, adaptive quadrature, the Beta
//! function and Hölder exponent arithmetic.

mod holder;
mod interval;
mod quadrature;
mod special;

pub use holder::{conjugate_exponent, HolderPair};
pub use interval::Interval;
pub use quadrature::{integrate, integrate_with, QuadratureOptions, QuadratureResult};
pub use special::{beta, ln_beta, ln_gamma};
