//! Problem declarations: one space-fractional wave equation in `u`, or a
//! coupled pair in `(u, v)`.
//!
//! Equation `i` reads `∂^(2γ)wᵢ/∂x^(2γ) + Σ c·(a · ∂²b/∂t²) = fᵢ` with
//! `γ = α` for `u` and `γ = β` for `v`, and Cauchy data on the line `x = 0`.

use std::fmt;
use std::str::FromStr;

use crate::error::Result;
use crate::fracalg::{Exponent, FracOrders, FracSeries};
use crate::scalar::Scalar;
use crate::wronskian::FunctionOrder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unknown {
    U,
    V,
}

impl Unknown {
    pub fn index(self) -> usize {
        match self {
            Unknown::U => 0,
            Unknown::V => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Unknown::U => "u",
            Unknown::V => "v",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "u" => Some(Unknown::U),
            "v" => Some(Unknown::V),
            _ => None,
        }
    }

    /// Order of the x-derivative in this unknown's equation.
    pub fn operator_order(self) -> Exponent {
        match self {
            Unknown::U => Exponent::alpha(2),
            Unknown::V => Exponent::beta(2),
        }
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the products `u·u_tt`, `v·u_tt`, `u·v_tt`, `v·v_tt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Product {
    pub factor: Unknown,
    pub differentiated: Unknown,
}

impl Product {
    pub const ALL: [Product; 4] = [
        Product::new(Unknown::U, Unknown::U),
        Product::new(Unknown::V, Unknown::U),
        Product::new(Unknown::U, Unknown::V),
        Product::new(Unknown::V, Unknown::V),
    ];

    pub const fn new(factor: Unknown, differentiated: Unknown) -> Self {
        Product { factor, differentiated }
    }

    pub fn references(&self, u: Unknown) -> bool {
        self.factor == u || self.differentiated == u
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}_tt", self.factor, self.differentiated)
    }
}

impl FromStr for Product {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Product::ALL
            .into_iter()
            .find(|p| p.to_string() == s.trim())
            .ok_or_else(|| format!("unknown nonlinearity tag '{}'", s.trim()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonlinearTerm<T> {
    pub coeff: T,
    pub product: Product,
}

/// `∂ⁿw/∂xⁿ (x = 0, t) = series(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialCondition<T: Scalar> {
    pub order: u32,
    pub series: FracSeries<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquationSpec<T: Scalar> {
    pub unknown: Unknown,
    pub forcing: FracSeries<T>,
    pub nonlinearity: Vec<NonlinearTerm<T>>,
    pub ics: Vec<InitialCondition<T>>,
    /// Column order of the extracted basis.
    pub basis_order: FunctionOrder,
    /// Known solution at `α = β = 1`.
    pub exact: Option<FracSeries<T>>,
}

impl<T: Scalar> EquationSpec<T> {
    /// Data for x-derivative `order` at `x = 0`, zero when absent.
    pub fn ic(&self, order: u32) -> FracSeries<T> {
        self.ics
            .iter()
            .filter(|ic| ic.order == order)
            .fold(FracSeries::zero(), |acc, ic| acc.add(&ic.series))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Single,
    Coupled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec<T: Scalar> {
    pub name: String,
    pub orders: FracOrders<T>,
    /// `u` first, then `v` for coupled systems.
    pub equations: Vec<EquationSpec<T>>,
    /// Point `(x, t)` at which basis independence is certified.
    pub witness: (T, T),
}

impl<T: Scalar> ProblemSpec<T> {
    pub fn kind(&self) -> Kind {
        if self.equations.len() > 1 {
            Kind::Coupled
        } else {
            Kind::Single
        }
    }

    pub fn with_orders(mut self, orders: FracOrders<T>) -> Self {
        self.orders = orders;
        self
    }

    pub fn equation(&self, u: Unknown) -> Option<&EquationSpec<T>> {
        self.equations.iter().find(|e| e.unknown == u)
    }

    /// Residual of equation `eq` for concrete series; `sols[k]` is the
    /// `k`-th unknown.
    pub fn residual(&self, eq: usize, sols: &[FracSeries<T>]) -> Result<FracSeries<T>> {
        let e = &self.equations[eq];
        let w = &sols[e.unknown.index()];
        let mut r = w.caputo_dx(e.unknown.operator_order(), &self.orders)?;
        for term in &e.nonlinearity {
            let a = &sols[term.product.factor.index()];
            let b = sols[term.product.differentiated.index()].dt(2)?;
            r.add_assign(&a.mul(&b).scale(term.coeff));
        }
        Ok(r.sub(&e.forcing))
    }

    /// Structural and range diagnostics; empty when the problem is usable.
    pub fn validate(&self) -> Vec<String> {
        let mut out = self.orders.violations();
        let n = self.equations.len();
        if n == 0 || n > 2 {
            out.push(format!("expected one or two equations, found {n}"));
            return out;
        }
        let (wx, wt) = self.witness;
        let unit = |v: T| v >= T::zero() && v <= T::one();
        if !unit(wx) || !unit(wt) {
            out.push(format!("witness point ({wx}, {wt}) lies outside the unit square"));
        }
        let declared: Vec<Unknown> = self.equations.iter().map(|e| e.unknown).collect();
        let expect = [Unknown::U, Unknown::V];
        if declared[..] != expect[..n] {
            out.push("equations must be declared for u, then v".into());
        }
        for e in &self.equations {
            let u = e.unknown;
            if e.ics.is_empty() {
                out.push(format!("no initial conditions for {u}"));
            }
            for ic in &e.ics {
                if ic.order > 1 {
                    out.push(format!(
                        "initial condition of x-order {} for {u}; only 0 and 1 are used",
                        ic.order
                    ));
                }
                if ic.series.iter().any(|m| !m.xexp.is_zero()) {
                    out.push(format!("initial condition for {u} depends on x"));
                }
            }
            for term in &e.nonlinearity {
                if !declared.contains(&term.product.factor) || !declared.contains(&term.product.differentiated) {
                    out.push(format!(
                        "nonlinearity {} in the {u} equation references an undeclared unknown",
                        term.product
                    ));
                }
            }
            let minus_one = -T::one();
            let integrable = e
                .forcing
                .iter()
                .all(|m| m.xexp.value(&self.orders) > minus_one && m.texp.value(&self.orders) > minus_one);
            if !integrable {
                out.push(format!(
                    "forcing of the {u} equation is not integrable over the unit square"
                ));
            }
        }
        out
    }
}

fn poly<T: Scalar>(terms: &[(f64, i64, i64)]) -> FracSeries<T> {
    FracSeries::from_terms(
        terms
            .iter()
            .map(|&(c, px, pt)| crate::fracalg::Monomial::new(T::of(c), Exponent::int(px), Exponent::int(pt))),
    )
}

fn cauchy<T: Scalar>(value: FracSeries<T>) -> Vec<InitialCondition<T>> {
    vec![
        InitialCondition {
            order: 0,
            series: value,
        },
        InitialCondition {
            order: 1,
            series: FracSeries::zero(),
        },
    ]
}

fn minus_product<T: Scalar>(factor: Unknown, differentiated: Unknown) -> NonlinearTerm<T> {
    NonlinearTerm {
        coeff: -T::one(),
        product: Product::new(factor, differentiated),
    }
}

/// `D^(2α)u − u·u_tt = 1 − (x² + t²)/2`, `u(0, t) = t²/2`, `u_x(0, t) = 0`.
pub fn example1<T: Scalar>() -> ProblemSpec<T> {
    ProblemSpec {
        name: "example1".into(),
        orders: FracOrders::classical(),
        witness: (T::of(0.2), T::of(0.5)),
        equations: vec![EquationSpec {
            unknown: Unknown::U,
            forcing: poly(&[(1.0, 0, 0), (-0.5, 2, 0), (-0.5, 0, 2)]),
            nonlinearity: vec![minus_product(Unknown::U, Unknown::U)],
            ics: cauchy(poly(&[(0.5, 0, 2)])),
            basis_order: FunctionOrder::XFirst,
            exact: Some(poly(&[(0.5, 2, 0), (0.5, 0, 2)])),
        }],
    }
}

/// `D^(2α)u − u·u_tt = 2 − 2x² − 2t²`, `u(0, t) = t²`, `u_x(0, t) = 0`.
pub fn example2<T: Scalar>() -> ProblemSpec<T> {
    ProblemSpec {
        name: "example2".into(),
        orders: FracOrders::classical(),
        witness: (T::of(0.3), T::of(0.4)),
        equations: vec![EquationSpec {
            unknown: Unknown::U,
            forcing: poly(&[(2.0, 0, 0), (-2.0, 2, 0), (-2.0, 0, 2)]),
            nonlinearity: vec![minus_product(Unknown::U, Unknown::U)],
            ics: cauchy(poly(&[(1.0, 0, 2)])),
            basis_order: FunctionOrder::TFirst,
            exact: Some(poly(&[(1.0, 2, 0), (1.0, 0, 2)])),
        }],
    }
}

/// Coupled system
///
/// ```text
/// D^(2α)u − v·u_tt − u·v_tt = 2 − 2x² − 2t²
/// D^(2β)v − v·v_tt + u·u_tt = 1 + 3x²/2 + 3t²/2
/// ```
///
/// with `u(0, t) = t²`, `v(0, t) = t²/2` and vanishing x-derivatives.
pub fn example3<T: Scalar>() -> ProblemSpec<T> {
    ProblemSpec {
        name: "example3".into(),
        orders: FracOrders::classical(),
        witness: (T::of(0.2), T::of(0.5)),
        equations: vec![
            EquationSpec {
                unknown: Unknown::U,
                forcing: poly(&[(2.0, 0, 0), (-2.0, 2, 0), (-2.0, 0, 2)]),
                nonlinearity: vec![
                    minus_product(Unknown::V, Unknown::U),
                    minus_product(Unknown::U, Unknown::V),
                ],
                ics: cauchy(poly(&[(1.0, 0, 2)])),
                basis_order: FunctionOrder::XFirst,
                exact: Some(poly(&[(1.0, 2, 0), (1.0, 0, 2)])),
            },
            EquationSpec {
                unknown: Unknown::V,
                forcing: poly(&[(1.0, 0, 0), (1.5, 2, 0), (1.5, 0, 2)]),
                nonlinearity: vec![
                    minus_product(Unknown::V, Unknown::V),
                    NonlinearTerm {
                        coeff: T::one(),
                        product: Product::new(Unknown::U, Unknown::U),
                    },
                ],
                ics: cauchy(poly(&[(0.5, 0, 2)])),
                basis_order: FunctionOrder::XFirst,
                exact: Some(poly(&[(0.5, 2, 0), (0.5, 0, 2)])),
            },
        ],
    }
}

/// Built-in problem by number (1 to 3).
pub fn example<T: Scalar>(n: u32) -> Option<ProblemSpec<T>> {
    match n {
        1 => Some(example1()),
        2 => Some(example2()),
        3 => Some(example3()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracalg::NumericSeries;

    fn one() -> FracOrders<f64> {
        FracOrders::classical()
    }

    #[test]
    fn example_values() {
        let e1 = example1::<f64>();
        let eq = &e1.equations[0];
        assert_eq!(eq.exact.as_ref().unwrap().eval(1.0, 1.0, &one()).unwrap(), 1.0);
        assert_eq!(eq.forcing.eval(0.0, 0.0, &one()).unwrap(), 1.0);
        assert_eq!(eq.ic(0).eval(0.0, 2.0, &one()).unwrap(), 2.0);

        let e2 = example2::<f64>();
        let eq = &e2.equations[0];
        assert_eq!(eq.exact.as_ref().unwrap().eval(1.0, 1.0, &one()).unwrap(), 2.0);
        assert_eq!(eq.forcing.eval(1.0, 1.0, &one()).unwrap(), -2.0);
        assert_eq!(eq.ic(0).eval(0.0, 1.0, &one()).unwrap(), 1.0);

        let e3 = example3::<f64>();
        let ex: Vec<f64> = e3
            .equations
            .iter()
            .map(|e| e.exact.as_ref().unwrap().eval(1.0, 0.0, &one()).unwrap())
            .collect();
        assert_eq!(ex, vec![1.0, 0.5]);
        assert_eq!(e3.equations[1].forcing.eval(0.0, 0.0, &one()).unwrap(), 1.0);
        assert_eq!(e3.equations[1].ic(0).eval(0.0, 1.0, &one()).unwrap(), 0.5);
        assert_eq!(e3.kind(), Kind::Coupled);
    }

    #[test]
    fn exact_solutions_have_zero_residual() {
        for n in 1..=3 {
            let p = example::<f64>(n).unwrap();
            let sols: Vec<_> = p.equations.iter().map(|e| e.exact.clone().unwrap()).collect();
            for i in 0..p.equations.len() {
                let r = p.residual(i, &sols).unwrap();
                let m = NumericSeries::collapse(&r, &p.orders).max_abs_coeff();
                assert!(m <= 1e-15, "example {n} equation {i}: {r}");
            }
        }
    }

    #[test]
    fn validation() {
        for n in 1..=3 {
            assert!(example::<f64>(n).unwrap().validate().is_empty());
        }
        let bad = example1::<f64>().with_orders(FracOrders::unchecked(1.5, 1.0));
        let d = bad.validate();
        assert_eq!(d.len(), 1);
        assert!(d[0].contains("alpha"));

        let mut p = example3::<f64>();
        p.equations[1].ics.clear();
        assert!(p.validate().iter().any(|m| m.contains("no initial conditions for v")));

        let mut p = example1::<f64>();
        p.equations[0].nonlinearity.push(minus_product(Unknown::V, Unknown::U));
        assert!(p.validate().iter().any(|m| m.contains("undeclared")));

        let mut p = example1::<f64>();
        p.equations[0].forcing = FracSeries::x_pow(Exponent::int(-2));
        assert!(p.validate().iter().any(|m| m.contains("integrable")));
    }

    #[test]
    fn product_tags() {
        for p in Product::ALL {
            assert_eq!(p.to_string().parse::<Product>().unwrap(), p);
        }
        assert_eq!(
            "v*u_tt".parse::<Product>().unwrap(),
            Product::new(Unknown::V, Unknown::U)
        );
        let err = "u*w_tt".parse::<Product>().unwrap_err();
        assert!(err.contains("u*w_tt"));
    }
}
