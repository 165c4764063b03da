use std::cmp::Ordering;

use super::{FracOrders, FracSeries};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponents closer than this are merged by [`NumericSeries::collapse`].
pub const MERGE_TOL: f64 = 1e-12;

/// A [`FracSeries`] specialized to concrete orders: exponents are numbers and
/// terms whose exponents coincide numerically are merged.
///
/// At `α = 1`, `x^(2α)` and `x^2` are different symbolic keys but the same
/// function; collapsing lets their coefficients cancel before squaring.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSeries<T> {
    /// `(coeff, x exponent, t exponent)`, sorted by exponents.
    pub terms: Vec<(T, T, T)>,
}

impl<T: Scalar> NumericSeries<T> {
    pub fn collapse(s: &FracSeries<T>, orders: &FracOrders<T>) -> Self {
        let mut raw: Vec<(T, T, T)> = s
            .iter()
            .map(|m| (m.coeff, m.xexp.value(orders), m.texp.value(orders)))
            .collect();
        raw.sort_by(|a, b| {
            a.1.partial_cmp(&b.1)
                .unwrap_or(Ordering::Equal)
                .then(a.2.partial_cmp(&b.2).unwrap_or(Ordering::Equal))
        });
        let tol = T::of(MERGE_TOL);
        let mut terms: Vec<(T, T, T)> = Vec::with_capacity(raw.len());
        for (c, a, b) in raw {
            match terms
                .iter_mut()
                .rev()
                .find(|(_, a2, b2)| (*a2 - a).abs() <= tol && (*b2 - b).abs() <= tol)
            {
                Some(slot) => slot.0 = slot.0 + c,
                None => terms.push((c, a, b)),
            }
        }
        NumericSeries { terms }
    }

    pub fn max_abs_coeff(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, t| m.max(t.0.abs()))
    }

    /// `∫₀¹∫₀¹ s² dx dt` in closed form.
    pub fn integral_of_square(&self) -> Result<T> {
        let mut acc = T::zero();
        for (i, &(ci, ai, bi)) in self.terms.iter().enumerate() {
            let xa = ai + ai + T::one();
            let tb = bi + bi + T::one();
            if !(xa > T::zero()) || !(tb > T::zero()) {
                return Err(Error::Domain(format!(
                    "square of x^{ai} t^{bi} is not integrable over the unit square"
                )));
            }
            acc = acc + ci * ci / (xa * tb);
            let two = T::of(2.0);
            for &(cj, aj, bj) in &self.terms[i + 1..] {
                acc = acc + two * ci * cj / ((ai + aj + T::one()) * (bi + bj + T::one()));
            }
        }
        Ok(acc)
    }
}
