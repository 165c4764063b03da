//! Least-squares fitting of the ansatz coefficients.
//!
//! Residuals are built symbolically as polynomials in the free
//! coefficients with fractional-series coefficients, squared and integrated
//! over the unit square in closed form, then minimized by damped Newton
//! iteration on the exact gradient and Hessian.

mod ansatz;
mod functional;
mod minimize;
mod poly;

pub use ansatz::{apply_ics, build_residual, parameter_count, Ansatz};
pub use functional::{
    assemble_functional, classify_epsilon, gradient, hessian, quadrature_oracle, EpsilonClass, Functional,
};
pub use minimize::{descend, minimize, FitResult, MinimizeOptions, StartKind, DEFAULT_SEED};
pub use poly::{MultiIndex, ParamPoly, Polynomial};
