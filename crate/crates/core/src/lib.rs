//! Numerical verification of Hermite–Hadamard type identities and
//! inequalities for functions whose derivatives are quasi-convex in
//! absolute value.
//!
//! Everything is generic over a [`Real`] scalar (`f32` or `f64`); the
//! `*64` aliases at the crate root fix the double-precision instantiation
//! the tolerances are calibrated for.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod corpus;
mod error;
pub mod identities;
pub mod means;
pub mod numerics;
pub mod quasiconvex;
mod scalar;
pub mod search;

pub use bounds::{check_bound, rhs_bound, BoundOptions, BoundReport, TheoremId};
pub use corpus::{builtin_corpus, fd_validate, make_f_alpha, CorpusConfig, MonomialFamilyParam, SmoothFunction};
pub use error::{HhError, Result};
pub use identities::{lemma1_check, lemma2_check, IdentityId, IdentityReport};
pub use means::{application_check, generalized_log_mean, ApplicationId, ApplicationVerdict, MeanRequest, Variant};
pub use numerics::{beta, conjugate_exponent, integrate, HolderPair, Interval, QuadratureOptions, QuadratureResult};
pub use quasiconvex::{check_quasi_convex, check_unimodal_profile, QuasiConvexityCertificate, Verdict};
pub use scalar::Real;
pub use search::{best_exponent, tightness_ratio, worst_case_alpha, SearchOptions, SearchResult, Tightness};

pub type Interval64 = Interval<f64>;
pub type Interval32 = Interval<f32>;
pub type SmoothFunction64 = SmoothFunction<f64>;
pub type SmoothFunction32 = SmoothFunction<f32>;
pub type QuadratureResult64 = QuadratureResult<f64>;
pub type HolderPair64 = HolderPair<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type BoundOptions64 = BoundOptions<f64>;
pub type IdentityReport64 = IdentityReport<f64>;
pub type Certificate64 = QuasiConvexityCertificate<f64>;
pub type ApplicationVerdict64 = ApplicationVerdict<f64>;
pub type SearchResult64 = SearchResult<f64>;
pub type SearchOptions64 = SearchOptions<f64>;
