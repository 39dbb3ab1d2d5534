#![cfg_attr(not(feature = "std"), no_std)]

//! Chebyshev proxy rootfinding on a box in R^n.
//!
//! The crate finds every real isolated zero of a system `f_1, ..., f_n` on a
//! box `[a_1,b_1] x ... x [a_n,b_n]` in two stages:
//!
//! 1. [`approximate`] builds a Chebyshev interpolant `p_i` for each `f_i`
//!    together with a bound `eps_i` on `max |f_i - p_i|` over the box.
//! 2. [`solve`] finds all common zeros of the proxy system by exclusion
//!    checks, linear interval reduction, re-expansion of the polynomials on
//!    subintervals ([`transform`]) and recursive subdivision. It returns a
//!    candidate point and a bounding box per zero; every zero of the original
//!    system lies in the union of the boxes.
//!
//! [`driver`] ties both stages together, re-solving any result box that is
//! still larger than [`SolveConfig::max_interval_size`], and [`expr`] parses
//! the small expression language used to describe target functions.
//!
//! The crate is `no_std` + `alloc` when the default `std` feature is turned
//! off. With `std` enabled the cosine transform used for interpolation is
//! backed by an FFT; without it a direct `O(d^2)` transform is used.

extern crate alloc;

pub mod approximate;
pub mod chebpoly;
mod dct;
mod dd;
pub mod driver;
mod error;
pub mod exec;
pub mod expr;
mod linalg;
pub mod solve;
pub mod transform;

pub use approximate::{approximate, ApproxResult, FnTarget, TargetFunction};
pub use chebpoly::{linear_parts, ChebPoly, IntervalBox, LinearParts};
pub use driver::{
    cheb_proxy_solve, cheb_proxy_solve_with, devastating_system, devastating_with, residuals, seeded_orthonormal,
    PolyTarget, ProxyProblem, DEVASTATING_SEED,
};
pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use expr::{parse_expression, Expression, ParseError};
pub use solve::{cheb_solve, cheb_solve_with, Flags, RootRecord, SolveConfig, SolveOutput, SolveStats};
pub use transform::AffineMap1D;

/// Unit roundoff of binary64 arithmetic, `2^-52`.
pub const MACHINE_EPSILON: f64 = f64::EPSILON;
