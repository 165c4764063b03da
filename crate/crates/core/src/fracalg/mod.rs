//! Closed-form algebra on bivariate fractional power series.
//!
//! Every function handled by the solver is a finite sum of terms
//! `c · x^a · t^b` whose exponents are exact affine forms in the fractional
//! orders. Caputo derivatives and Riemann–Liouville integrals in `x`,
//! classical derivatives in `t`, products and unit-square integrals all map
//! such sums to such sums.

mod exponent;
mod gamma;
mod numeric;
mod series;

pub use exponent::{Exponent, ExponentParseError};
pub use gamma::gamma_ratio;
pub use numeric::{NumericSeries, MERGE_TOL};
pub use series::{normalized_x_power, ratio, FracSeries, Monomial, SeriesParseError, BRANCH_TOL};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The fractional orders `α` and `β`, each in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FracOrders<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> FracOrders<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let o = FracOrders { alpha, beta };
        match o.violations().first() {
            Some(msg) => Err(Error::Domain(msg.clone())),
            None => Ok(o),
        }
    }

    /// Builds orders without range checks; see [`violations`](Self::violations).
    pub fn unchecked(alpha: T, beta: T) -> Self {
        FracOrders { alpha, beta }
    }

    /// `α = β = 1`.
    pub fn classical() -> Self {
        FracOrders {
            alpha: T::one(),
            beta: T::one(),
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(v > T::zero() && v <= T::one()) {
                out.push(format!("{name} = {v} is outside (0, 1]"));
            }
        }
        out
    }
}
