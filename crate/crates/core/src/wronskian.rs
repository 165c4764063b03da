//! Fractional partial Wronskian under the mixed operator
//! `D^α = ∂/∂t + ∂^α/∂x^α`.
//!
//! Row `k` of the matrix holds `D^α` applied `k` times to each function,
//! evaluated at one point. A determinant whose magnitude exceeds the
//! threshold certifies linear independence; a vanishing one is inconclusive.

use crate::error::{Error, Result};
use crate::fracalg::{gamma_ratio, Exponent, FracOrders, FracSeries};
use crate::linalg::determinant;
use crate::scalar::Scalar;

/// Default certificate threshold on `|det|`.
pub const DEFAULT_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct WronskianReport<T> {
    pub value: T,
    pub x: T,
    pub t: T,
    /// Numeric value of the operator order used.
    pub order: T,
    /// `matrix[k][i] = (D^α)^k fs[i]` at the point.
    pub matrix: Vec<Vec<T>>,
    pub threshold: T,
    pub independent: bool,
    /// Terms the x-part annihilated on the second or later application of
    /// `D^α`; nonzero means repeated application differs from a single
    /// derivative of the summed order.
    pub mid_composition_annihilations: usize,
}

/// `∂s/∂t + ∂^order s/∂x^order`.
pub fn dalpha<T: Scalar>(s: &FracSeries<T>, order: Exponent, orders: &FracOrders<T>) -> Result<FracSeries<T>> {
    dalpha_traced(s, order, orders).map(|(d, _)| d)
}

fn dalpha_traced<T: Scalar>(
    s: &FracSeries<T>,
    order: Exponent,
    orders: &FracOrders<T>,
) -> Result<(FracSeries<T>, usize)> {
    let (dx, killed) = s.caputo_dx_traced(order, orders)?;
    Ok((s.dt(1)?.add(&dx), killed))
}

/// `k`-fold composition of [`dalpha`]; `k = 0` is the identity.
pub fn dalpha_power<T: Scalar>(
    s: &FracSeries<T>,
    k: usize,
    order: Exponent,
    orders: &FracOrders<T>,
) -> Result<FracSeries<T>> {
    let mut cur = s.clone();
    for _ in 0..k {
        cur = dalpha(&cur, order, orders)?;
    }
    Ok(cur)
}

/// Evaluates the Wronskian of `fs` at `(x, t)`.
pub fn wronskian_at<T: Scalar>(
    fs: &[FracSeries<T>],
    x: T,
    t: T,
    order: Exponent,
    orders: &FracOrders<T>,
    threshold: T,
) -> Result<WronskianReport<T>> {
    if fs.is_empty() {
        return Err(Error::Domain("Wronskian of an empty function list".into()));
    }
    let unit = |v: T| v >= T::zero() && v <= T::one();
    if !unit(x) || !unit(t) {
        return Err(Error::Domain(format!(
            "Wronskian point ({x}, {t}) lies outside the unit square"
        )));
    }
    let n = fs.len();
    let mut matrix = vec![vec![T::zero(); n]; n];
    let mut mid = 0;
    for (i, f) in fs.iter().enumerate() {
        let mut cur = f.clone();
        for (k, row) in matrix.iter_mut().enumerate() {
            if k > 0 {
                let (next, killed) = dalpha_traced(&cur, order, orders)?;
                if k > 1 {
                    mid += killed;
                }
                cur = next;
            }
            row[i] = cur.eval(x, t, orders)?;
        }
    }
    let value = determinant(matrix.clone());
    if mid > 0 {
        log::debug!("{mid} term(s) annihilated mid-composition");
    }
    Ok(WronskianReport {
        value,
        x,
        t,
        order: order.value(orders),
        matrix,
        threshold,
        independent: value.abs() > threshold,
        mid_composition_annihilations: mid,
    })
}

/// Column order of the three-function basis
/// `{x^(2α)/Γ(2α+1), t², t²x^(2α)/Γ(2α+1) + x^(2+2α)/Γ(2α+3)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionOrder {
    /// Pure-x function first, then `t²`, then the mixed function.
    XFirst,
    /// `t²` first, then the pure-x function, then the mixed function.
    TFirst,
}

/// Which closed-form expression to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormSource {
    /// Hand expansion of the 3×3 determinant under repeated `D^α`:
    ///
    /// `W = a(6t²a₁ + 2t³ + t x² − 2b₁) − t²(4t a₁² + a₁x²/2 − b₁) + 2b(a₁ − t)`
    ///
    /// with `a = x^(2α)/Γ(2α+1)`, `a₁ = x^α/Γ(α+1)`, `b = x^(2+2α)/Γ(2α+3)`
    /// and `b₁ = x^(2+α)/Γ(α+3)`. At `α = 1` this is
    /// `8t²x³/3 − 3t³x² + 5tx⁴/12 − x⁵/12`.
    Derived,
    /// The reference simplification, as tabulated
    ///
    /// `W = a(12t a₁ + 8t² + 2t c) − t²a₁(6a₁ + 4t + c)`, `c = x^(2−α)/Γ(3−α)`,
    ///
    /// which reduces to `7tx³ − 3t²x² − 4t³x` at `α = 1`. It does not equal
    /// the determinant of the basis above.
    Reference,
}

/// Closed-form Wronskian of the three-function basis, usable as an oracle
/// for [`wronskian_at`].
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormW3<T> {
    pub alpha: T,
    pub order: FunctionOrder,
    pub source: ClosedFormSource,
}

impl<T: Scalar> ClosedFormW3<T> {
    pub fn new(alpha: T, order: FunctionOrder, source: ClosedFormSource) -> Self {
        ClosedFormW3 { alpha, order, source }
    }

    pub fn eval(&self, x: T, t: T) -> Result<T> {
        let al = self.alpha;
        let one = T::one();
        let two = T::of(2.0);
        let rg = |z: T| gamma_ratio(one, z);
        let a = x.powf(two * al) * rg(two * al + one)?;
        let a1 = x.powf(al) * rg(al + one)?;
        let w = match self.source {
            ClosedFormSource::Derived => {
                let b = x.powf(two + two * al) * rg(two * al + T::of(3.0))?;
                let b1 = x.powf(two + al) * rg(al + T::of(3.0))?;
                let b2 = x * x / two;
                a * (T::of(6.0) * t * t * a1 + two * t * t * t + two * t * b2 - two * b1)
                    - t * t * (T::of(4.0) * t * a1 * a1 + a1 * b2 - b1)
                    + two * b * (a1 - t)
            }
            ClosedFormSource::Reference => {
                let c = x.powf(two - al) * rg(T::of(3.0) - al)?;
                a * (T::of(12.0) * t * a1 + T::of(8.0) * t * t + two * c * t)
                    - t * t * a1 * (T::of(6.0) * a1 + T::of(4.0) * t + c)
            }
        };
        Ok(match self.order {
            FunctionOrder::XFirst => w,
            FunctionOrder::TFirst => -w,
        })
    }
}
