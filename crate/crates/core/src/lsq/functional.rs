use super::poly::{ParamPoly, Polynomial};
use crate::error::Result;
use crate::fracalg::{FracOrders, NumericSeries};
use crate::quadrature::integrate_unit_square;
use crate::scalar::Scalar;

/// `J(p) = Σᵢ ∬ Rᵢ(p)² dx dt` over the unit square.
#[derive(Clone, Debug)]
pub struct Functional<T: Scalar> {
    pub poly: Polynomial<T>,
    pub residuals: Vec<ParamPoly<T>>,
    pub orders: FracOrders<T>,
}

impl<T: Scalar> Functional<T> {
    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// `J(p)` from the residual series, merging numerically equal exponents
    /// before squaring. Keeps full relative precision near a zero residual,
    /// where the expanded polynomial suffers cancellation.
    pub fn value(&self, params: &[T]) -> Result<T> {
        let mut acc = T::zero();
        for r in &self.residuals {
            acc = acc + NumericSeries::collapse(&r.eval(params), &self.orders).integral_of_square()?;
        }
        Ok(acc)
    }

    /// `J(p)` from the expanded polynomial.
    pub fn poly_value(&self, params: &[T]) -> T {
        self.poly.eval(params)
    }
}

/// Squares and integrates every residual term by term in closed form.
pub fn assemble_functional<T: Scalar>(residuals: &[ParamPoly<T>], orders: &FracOrders<T>) -> Result<Functional<T>> {
    let nvars = residuals.first().map_or(0, |r| r.nvars());
    let mut poly = Polynomial::zero(nvars);
    let two = T::of(2.0);
    for r in residuals {
        let terms: Vec<_> = r.terms().collect();
        for (i, (a, sa)) in terms.iter().enumerate() {
            for (j, (b, sb)) in terms.iter().enumerate().skip(i) {
                let mut c = sa.mul(sb).integrate_unit_square(orders)?;
                if i != j {
                    c = c * two;
                }
                let idx = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                poly.add_term(idx, c);
            }
        }
    }
    Ok(Functional {
        poly,
        residuals: residuals.to_vec(),
        orders: *orders,
    })
}

pub fn gradient<T: Scalar>(f: &Functional<T>) -> Vec<Polynomial<T>> {
    (0..f.nvars()).map(|i| f.poly.derivative(i)).collect()
}

pub fn hessian<T: Scalar>(f: &Functional<T>) -> Vec<Vec<Polynomial<T>>> {
    gradient(f)
        .iter()
        .map(|g| (0..f.nvars()).map(|j| g.derivative(j)).collect())
        .collect()
}

/// `Σᵢ ∬ Rᵢ(p)²` by tensor Gauss–Legendre quadrature on pointwise values.
pub fn quadrature_oracle<T: Scalar>(
    residuals: &[ParamPoly<T>],
    params: &[T],
    orders: &FracOrders<T>,
    nodes: usize,
) -> Result<T> {
    assert!(nodes >= 8, "at least 8 quadrature nodes");
    let mut acc = T::zero();
    for r in residuals {
        let s = r.eval(params);
        let mut err = None;
        acc = acc
            + integrate_unit_square(nodes, |x, t| match s.eval(x, t, orders) {
                Ok(v) => v * v,
                Err(e) => {
                    err.get_or_insert(e);
                    T::zero()
                }
            });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpsilonClass<T> {
    pub epsilon: T,
    /// `max |Rᵢ| < ε` on the lattice.
    pub pointwise: bool,
    /// `Σᵢ ∬ Rᵢ² ≤ ε`.
    pub weak: bool,
    /// Largest `|Rᵢ|` over lattice points and equations.
    pub sup: T,
    /// `Σᵢ ∬ Rᵢ²`, exact.
    pub weak_value: T,
}

/// Pointwise and weak ε-approximation tests on a `grid × grid` lattice
/// that includes the boundary.
pub fn classify_epsilon<T: Scalar>(
    residuals: &[ParamPoly<T>],
    params: &[T],
    orders: &FracOrders<T>,
    epsilon: T,
    grid: usize,
) -> Result<EpsilonClass<T>> {
    assert!(grid >= 2, "lattice needs at least two points per side");
    let step = T::one() / T::of((grid - 1) as f64);
    let mut sup = T::zero();
    let mut weak_value = T::zero();
    for r in residuals {
        let s = r.eval(params);
        for j in 0..grid {
            let t = T::of(j as f64) * step;
            for i in 0..grid {
                let x = T::of(i as f64) * step;
                sup = sup.max(s.eval(x, t, orders)?.abs());
            }
        }
        weak_value = weak_value + NumericSeries::collapse(&s, orders).integral_of_square()?;
    }
    Ok(EpsilonClass {
        epsilon,
        pointwise: sup < epsilon,
        weak: weak_value <= epsilon,
        sup,
        weak_value,
    })
}
