//! Zeroth-order homotopy guess and its splitting into basis functions.

use crate::error::{Error, Result};
use crate::fracalg::{gamma_ratio, Exponent, FracOrders, FracSeries, Monomial};
use crate::problems::{InitialCondition, ProblemSpec, Unknown};
use crate::scalar::Scalar;
use crate::wronskian::{wronskian_at, FunctionOrder, WronskianReport};

/// Solution of the `p = 0` problem `D^(2γ)w = f` with the original Cauchy data.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialGuess<T: Scalar> {
    pub unknown: Unknown,
    pub series: FracSeries<T>,
    pub ic_data: Vec<InitialCondition<T>>,
}

impl<T: Scalar> InitialGuess<T> {
    /// Largest coefficient of `slice(x^n) − ic(n)` over the stored data.
    pub fn ic_defect(&self) -> T {
        self.ic_data
            .iter()
            .map(|ic| {
                self.series
                    .x_slice(Exponent::int(ic.order as i64))
                    .sub(&ic.series.scale(ic_factor(ic.order)))
                    .max_abs_coeff()
            })
            .fold(T::zero(), T::max)
    }
}

/// `xⁿ/n!` carries the n-th x-derivative at `x = 0`.
fn ic_factor<T: Scalar>(n: u32) -> T {
    (1..=n).fold(T::one(), |acc, k| acc / T::of(k as f64))
}

/// `Σ icₙ(t)·xⁿ/n! + J^(2γ) f` for equation `eq`.
pub fn bootstrap<T: Scalar>(problem: &ProblemSpec<T>, eq: usize) -> Result<InitialGuess<T>> {
    let e = problem
        .equations
        .get(eq)
        .ok_or_else(|| Error::Domain(format!("problem has no equation {eq}")))?;
    let mut series = e.forcing.rl_integral_x(e.unknown.operator_order(), &problem.orders)?;
    for ic in &e.ics {
        let shifted = ic.series.shift(Exponent::int(ic.order as i64), Exponent::ZERO);
        series.add_assign(&shifted.scale(ic_factor(ic.order)));
    }
    Ok(InitialGuess {
        unknown: e.unknown,
        series,
        ic_data: e.ics.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// Sum of the pure-t terms.
    Time,
    /// Lowest pure-x fractional term.
    Space,
    /// All remaining fractional terms.
    Mixed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisSet<T: Scalar> {
    pub functions: Vec<FracSeries<T>>,
    pub groups: Vec<Group>,
    /// Readable form of each function, e.g. `t^(2)*x^(2*a)/Γ(1 + 2*a)`.
    pub labels: Vec<String>,
    /// `(xexp, texp)` keys of the guess terms folded into each function.
    pub sources: Vec<Vec<(Exponent, Exponent)>>,
}

impl<T: Scalar> BasisSet<T> {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// `Σ cᵢ φᵢ`.
    pub fn combine(&self, coeffs: &[T]) -> FracSeries<T> {
        self.functions
            .iter()
            .zip(coeffs)
            .fold(FracSeries::zero(), |acc, (f, &c)| acc.add(&f.scale(c)))
    }
}

fn t_label(texp: Exponent) -> Option<String> {
    (!texp.is_zero()).then(|| format!("t^({texp})"))
}

fn x_label(xexp: Exponent) -> String {
    format!("x^({xexp})/Γ({})", xexp + Exponent::int(1))
}

/// Splits the guess into at most three functions: the pure-t part scaled to
/// a unit leading coefficient, the lowest pure-x fractional power
/// `x^γ/Γ(γ+1)`, and the sum of every other term as `t^k x^γ/Γ(γ+1)`.
pub fn extract_basis<T: Scalar>(
    guess: &InitialGuess<T>,
    orders: &FracOrders<T>,
    order: FunctionOrder,
) -> Result<BasisSet<T>> {
    let mut time = Vec::new();
    let mut space = Vec::new();
    let mut mixed = Vec::new();
    for m in guess.series.iter() {
        if m.xexp.is_zero() {
            time.push(m);
        } else if m.xexp.is_pure() {
            return Err(Error::Grouping(FracSeries::from_terms([m]).to_string()));
        } else if m.texp.is_zero() && space.is_empty() {
            space.push(m);
        } else {
            mixed.push(m);
        }
    }

    let mut groups = Vec::new();
    if !time.is_empty() {
        let lead = time[0].coeff;
        let f = FracSeries::from_terms(time.iter().map(|m| Monomial::new(m.coeff / lead, m.xexp, m.texp)));
        let label = time
            .iter()
            .map(|m| t_label(m.texp).unwrap_or_else(|| "1".into()))
            .collect::<Vec<_>>()
            .join(" + ");
        groups.push((Group::Time, f, label, time));
    }
    let normalized = |ms: &[Monomial<T>]| -> Result<(FracSeries<T>, String)> {
        let mut f = FracSeries::zero();
        let mut labels = Vec::new();
        for m in ms {
            let c = gamma_ratio(T::one(), m.xexp.value(orders) + T::one())?;
            f.push(c, m.xexp, m.texp);
            labels.push(match t_label(m.texp) {
                Some(t) => format!("{t}*{}", x_label(m.xexp)),
                None => x_label(m.xexp),
            });
        }
        Ok((f, labels.join(" + ")))
    };
    if !space.is_empty() {
        let (f, label) = normalized(&space)?;
        groups.push((Group::Space, f, label, space));
    }
    if !mixed.is_empty() {
        let (f, label) = normalized(&mixed)?;
        groups.push((Group::Mixed, f, label, mixed));
    }
    if order == FunctionOrder::XFirst {
        groups.sort_by_key(|g| match g.0 {
            Group::Space => 0,
            Group::Time => 1,
            Group::Mixed => 2,
        });
    }

    let mut out = BasisSet {
        functions: Vec::new(),
        groups: Vec::new(),
        labels: Vec::new(),
        sources: Vec::new(),
    };
    for (g, f, label, ms) in groups {
        out.groups.push(g);
        out.functions.push(f);
        out.labels.push(label);
        out.sources.push(ms.iter().map(|m| (m.xexp, m.texp)).collect());
    }
    Ok(out)
}

/// Ratio of the guess to each basis function at that function's leading
/// monomial.
pub fn start_coefficients<T: Scalar>(guess: &InitialGuess<T>, basis: &BasisSet<T>) -> Vec<T> {
    basis
        .functions
        .iter()
        .map(|f| match f.leading() {
            Some(m) => guess.series.coeff(m.xexp, m.texp) / m.coeff,
            None => T::zero(),
        })
        .collect()
}

/// Coefficients `c` with `Σ cᵢ φᵢ = guess`, when they exist.
pub fn span_coefficients<T: Scalar>(guess: &InitialGuess<T>, basis: &BasisSet<T>) -> Option<Vec<T>> {
    let c = start_coefficients(guess, basis);
    let defect = basis.combine(&c).sub(&guess.series).max_abs_coeff();
    let scale = guess.series.max_abs_coeff().max(T::one());
    (defect <= T::of(1e-14) * scale).then_some(c)
}

/// Wronskian of the basis at `(x, t)` under the equation's own order;
/// fails with [`Error::Dependent`] when the certificate does not hold.
pub fn certify<T: Scalar>(
    basis: &BasisSet<T>,
    unknown: Unknown,
    orders: &FracOrders<T>,
    point: (T, T),
    threshold: T,
) -> Result<WronskianReport<T>> {
    let order = match unknown {
        Unknown::U => Exponent::alpha(1),
        Unknown::V => Exponent::beta(1),
    };
    let report = wronskian_at(&basis.functions, point.0, point.1, order, orders, threshold)?;
    if !report.independent {
        return Err(Error::Dependent {
            unknown: unknown.name().into(),
            value: report.value.as_f64(),
            x: point.0.as_f64(),
            t: point.1.as_f64(),
        });
    }
    Ok(report)
}
