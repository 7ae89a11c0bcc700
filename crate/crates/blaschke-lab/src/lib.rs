//! Driver layer for the approximation kernels: file formats, a catalog of
//! named test functions, run configuration, machine-readable reports, and
//! the acceptance suite shared by `selftest` and the integration tests.

// validation uses `!(x > 0.0)` instead of `x <= 0.0` so that NaN fails too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// numerical checks index several arrays in lockstep; explicit indices stay
#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod catalog;
pub mod config;
pub mod formats;
pub mod parallel;
pub mod report;
