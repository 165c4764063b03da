//! Generalized least-square homotopy perturbations for space-fractional
//! nonlinear wave equations.
//!
//! Functions are finite sums `c · x^a · t^b` whose exponents are exact affine
//! forms in the fractional orders `α` and `β` ([`fracalg`]). A problem
//! ([`problems`]) is bootstrapped to its zeroth-order homotopy guess, the
//! guess is split into basis functions certified independent by the
//! fractional Wronskian ([`hpm`], [`wronskian`]), and the basis coefficients
//! are fitted by minimizing the exact squared-residual functional over the
//! unit square ([`lsq`]). [`solver::solve`] runs the whole pipeline.
//!
//! ```
//! use glshp::{example1, FracOrders64, SolveOptions64};
//!
//! let problem = example1().with_orders(FracOrders64::new(1.0, 1.0).unwrap());
//! let sol = glshp::solve(&problem, &SolveOptions64::default()).unwrap();
//! assert!((sol.fit.params[0] - 1.0).abs() < 1e-8);
//! assert!(sol.fit.jvalue <= 1e-18);
//! ```
//!
//! Everything is generic over [`Scalar`] (`f64` or `f32`); the aliases below
//! fix the scalar type.

// `!(x > 0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fracalg;
pub mod hpm;
pub mod linalg;
pub mod lsq;
pub mod problem_file;
pub mod problems;
pub mod quadrature;
pub mod scalar;
pub mod solver;
pub mod wronskian;

pub use error::{Error, Result};
pub use fracalg::{Exponent, FracOrders, FracSeries};
pub use problem_file::{parse_problem, write_problem};
pub use problems::{example, example1, example2, example3, ProblemSpec};
pub use scalar::Scalar;
pub use solver::{solve, Solution, SolveOptions};

pub type FracSeries64 = FracSeries<f64>;
pub type FracSeries32 = FracSeries<f32>;
pub type FracOrders64 = FracOrders<f64>;
pub type FracOrders32 = FracOrders<f32>;
pub type ProblemSpec64 = ProblemSpec<f64>;
pub type ProblemSpec32 = ProblemSpec<f32>;
pub type SolveOptions64 = SolveOptions<f64>;
pub type SolveOptions32 = SolveOptions<f32>;
pub type Solution64 = Solution<f64>;
pub type Solution32 = Solution<f32>;
