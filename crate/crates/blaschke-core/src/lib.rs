//! Core algebra for constructive approximation in the closed unit ball of
//! bounded analytic functions on the unit disc.
//!
//! The crate provides finite Blaschke products and their calculus, Taylor
//! coefficient-matching approximants, convex decompositions into Blaschke
//! products, unimodular boundary-function approximation by quotients of
//! Blaschke products and of inner functions, inner functions with atomic
//! singular parts, the elliptic-function conformal chain used for two-valued
//! step targets, and finite-dimensional numerical-range verification.
//!
//! Everything is `no_std`-compatible (with `alloc`); all operations are pure
//! functions of their inputs and safe to share across threads.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
// validation uses `!(x > 0.0)` instead of `x <= 0.0` so that NaN fails too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// numerical kernels index several arrays in lockstep; explicit indices stay
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod approx;
pub mod blaschke;
pub mod disc;
pub mod douglas_rudin;
pub mod elliptic;
pub mod error;
pub mod fft;
pub mod grid;
pub mod inner;
pub mod linalg;
pub mod numrange;
pub mod poly;
pub mod unimodular;

mod series;

pub use num_complex::Complex64;

pub use approx::{
    caratheodory_approximant, caratheodory_step, fisher_approximate, fisher_decompose_factor,
    fisher_decompose_product, ConvexCombination, FisherCertificate, TaylorSeries,
};
pub use blaschke::{
    compose_mobius, quotient_from_meromorphic, BlaschkeQuotient, FiniteBlaschkeProduct,
};
pub use disc::{mobius, DiscPoint};
pub use douglas_rudin::{
    build_map, douglas_rudin_approximate, solve_modulus, two_valued_approximate, ArcSet,
    DouglasRudinMap, DouglasRudinProduct, DouglasRudinReport, TwoValuedApprox, TwoValuedReport,
};
pub use elliptic::{complete_elliptic_k, jacobi_sn, EllipticParameters, SnEngine};
pub use error::{Error, Result};
pub use grid::{
    continuous_argument, fourier, harmonic_extension, inverse_fourier, square_root_lift,
    BoundaryGrid, FourierCoefficients, Parity,
};
pub use numrange::{
    apply_fbp_to_operator, berger_stampfli_check, numerical_radius,
    resolvent_partial_fraction_check, BergerStampfliReport, OperatorMatrix, RangeReport,
};
pub use inner::{
    evaluate_inner, frostman_approximate, frostman_shift, is_blaschke_test, radial_log_mean,
    Atom, FrostmanCertificate, InnerEvaluator, InnerFunction,
};
pub use unimodular::{
    hankel_distance_estimate, helson_sarason, marshall_average, riemann_unimodular_combo,
    ComboCertificate, DistanceReport, HelsonSarasonCertificate, MarshallCertificate,
    UnimodularGridFunction,
};
