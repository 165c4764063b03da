use std::collections::BTreeMap;

use super::poly::ParamPoly;
use crate::error::{Error, Result};
use crate::fracalg::{Exponent, FracSeries};
use crate::hpm::BasisSet;
use crate::problems::{EquationSpec, ProblemSpec, Unknown};
use crate::scalar::Scalar;

/// `w̃ = Σ cᵢ φᵢ` with each coefficient either fixed or free.
#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz<T: Scalar> {
    pub unknown: Unknown,
    pub basis: BasisSet<T>,
    pub fixed: BTreeMap<usize, T>,
    pub free: Vec<usize>,
}

impl<T: Scalar> Ansatz<T> {
    /// Every coefficient free.
    pub fn new(unknown: Unknown, basis: BasisSet<T>) -> Self {
        let free = (0..basis.len()).collect();
        Ansatz {
            unknown,
            basis,
            fixed: BTreeMap::new(),
            free,
        }
    }

    /// `K` for `u`, `D` for `v`.
    pub fn symbol(&self) -> char {
        match self.unknown {
            Unknown::U => 'K',
            Unknown::V => 'D',
        }
    }

    pub fn param_names(&self) -> Vec<String> {
        self.free.iter().map(|i| format!("{}{i}", self.symbol())).collect()
    }

    /// Full coefficient vector given values for the free entries.
    pub fn coefficients(&self, free_values: &[T]) -> Vec<T> {
        assert_eq!(free_values.len(), self.free.len(), "free parameter count");
        let mut c = vec![T::zero(); self.basis.len()];
        for (&i, &v) in &self.fixed {
            c[i] = v;
        }
        for (&i, &v) in self.free.iter().zip(free_values) {
            c[i] = v;
        }
        c
    }

    pub fn reconstruct(&self, free_values: &[T]) -> FracSeries<T> {
        self.basis.combine(&self.coefficients(free_values))
    }

    /// The ansatz as a parameter polynomial whose free coefficients occupy
    /// variables `offset..offset + free.len()` out of `nvars`.
    pub fn param_series(&self, offset: usize, nvars: usize) -> ParamPoly<T> {
        let mut p = ParamPoly::zero(nvars);
        for (&i, &v) in &self.fixed {
            p = p.add(&ParamPoly::constant(nvars, self.basis.functions[i].scale(v)));
        }
        for (k, &i) in self.free.iter().enumerate() {
            p = p.add(&ParamPoly::linear(nvars, offset + k, self.basis.functions[i].clone()));
        }
        p
    }
}

/// Matches the `x⁰` and `x¹` slices of the ansatz against the Cauchy data
/// and fixes every coefficient the match determines uniquely.
pub fn apply_ics<T: Scalar>(ansatz: &Ansatz<T>, eq: &EquationSpec<T>) -> Result<Ansatz<T>> {
    let n = ansatz.basis.len();
    // one row per (x-order, t-exponent) key: Σ cᵢ φᵢ[key] = ic[key]
    let mut rows: BTreeMap<(u32, Exponent), (Vec<T>, T)> = BTreeMap::new();
    for order in [0u32, 1] {
        let xexp = Exponent::int(order as i64);
        let mut factorial = T::one();
        for k in 1..=order {
            factorial = factorial * T::of(k as f64);
        }
        for (i, f) in ansatz.basis.functions.iter().enumerate() {
            for m in f.x_slice(xexp).iter() {
                let row = rows
                    .entry((order, m.texp))
                    .or_insert_with(|| (vec![T::zero(); n], T::zero()));
                row.0[i] = row.0[i] + m.coeff * factorial;
            }
        }
        for m in eq.ic(order).iter() {
            let row = rows
                .entry((order, m.texp))
                .or_insert_with(|| (vec![T::zero(); n], T::zero()));
            row.1 = row.1 + m.coeff;
        }
    }
    let mut a: Vec<(Vec<T>, T)> = rows.into_values().collect();
    let scale = a
        .iter()
        .flat_map(|(r, b)| r.iter().chain(std::iter::once(b)))
        .fold(T::one(), |acc, v| acc.max(v.abs()));
    let tol = T::of(1e-12) * scale;

    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        let best = (r..a.len()).max_by(|&i, &j| a[i].0[c].abs().partial_cmp(&a[j].0[c].abs()).unwrap());
        let Some(p) = best else { break };
        if a[p].0[c].abs() <= tol {
            continue;
        }
        a.swap(r, p);
        let piv = a[r].0[c];
        for v in a[r].0.iter_mut() {
            *v = *v / piv;
        }
        a[r].1 = a[r].1 / piv;
        for i in 0..a.len() {
            if i != r && a[i].0[c] != T::zero() {
                let f = a[i].0[c];
                let (src, b) = (a[r].0.clone(), a[r].1);
                for (v, s) in a[i].0.iter_mut().zip(&src) {
                    *v = *v - f * *s;
                }
                a[i].1 = a[i].1 - f * b;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    for (row, b) in &a[r..] {
        debug_assert!(row.iter().all(|v| v.abs() <= tol * T::of(1e3)));
        if b.abs() > tol {
            return Err(Error::InconsistentIc(format!(
                "{} basis cannot reproduce its data at x = 0 (defect {b})",
                ansatz.unknown
            )));
        }
    }

    let mut out = ansatz.clone();
    for (row, c) in pivots {
        let others = (0..n).any(|j| j != c && a[row].0[j].abs() > tol);
        if !others {
            out.fixed.insert(c, a[row].1);
        }
    }
    out.free.retain(|i| !out.fixed.contains_key(i));
    Ok(out)
}

/// Number of free parameters across all ansätze.
pub fn parameter_count<T: Scalar>(ansatze: &[Ansatz<T>]) -> usize {
    ansatze.iter().map(|a| a.free.len()).sum()
}

/// Residual `D^(2γ)w̃ + Σ c·ã·∂²b̃/∂t² − f` of every equation, as a
/// polynomial in the free parameters (`u` first, then `v`).
pub fn build_residual<T: Scalar>(problem: &ProblemSpec<T>, ansatze: &[Ansatz<T>]) -> Result<Vec<ParamPoly<T>>> {
    let nvars = parameter_count(ansatze);
    let mut sols: Vec<Option<(ParamPoly<T>, ParamPoly<T>)>> = vec![None, None];
    let mut offset = 0;
    for a in ansatze {
        let p = a.param_series(offset, nvars);
        let ptt = p.map(|s| s.dt(2))?;
        sols[a.unknown.index()] = Some((p, ptt));
        offset += a.free.len();
    }
    let get = |u: Unknown| {
        sols[u.index()]
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("no ansatz supplied for {u}")))
    };

    let mut out = Vec::new();
    for e in &problem.equations {
        let (w, _) = get(e.unknown)?;
        let mut r = w.map(|s| s.caputo_dx(e.unknown.operator_order(), &problem.orders))?;
        for term in &e.nonlinearity {
            let (a, _) = get(term.product.factor)?;
            let (_, btt) = get(term.product.differentiated)?;
            r = r.add(&a.mul(btt).scale(term.coeff));
        }
        r = r.sub(&ParamPoly::constant(nvars, e.forcing.clone()));
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracalg::{FracOrders, NumericSeries};
    use crate::hpm::{bootstrap, extract_basis};
    use crate::problems::{example1, example2, example3};

    fn ansatze(p: &ProblemSpec<f64>) -> Vec<Ansatz<f64>> {
        p.equations
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let b = extract_basis(&bootstrap(p, i).unwrap(), &p.orders, e.basis_order).unwrap();
                apply_ics(&Ansatz::new(e.unknown, b), e).unwrap()
            })
            .collect()
    }

    #[test]
    fn ic_elimination() {
        let a = ansatze(&example1::<f64>());
        assert_eq!(a[0].fixed, BTreeMap::from([(1, 0.5)]));
        assert_eq!(a[0].free, vec![0, 2]);
        assert_eq!(a[0].param_names(), vec!["K0", "K2"]);

        let a = ansatze(&example2::<f64>());
        assert_eq!(a[0].fixed, BTreeMap::from([(0, 1.0)]));

        let a = ansatze(&example3::<f64>());
        assert_eq!(a[0].fixed, BTreeMap::from([(1, 1.0)]));
        assert_eq!(a[1].fixed, BTreeMap::from([(1, 0.5)]));
        assert_eq!(a[1].param_names(), vec!["D0", "D2"]);
    }

    #[test]
    fn no_pure_t_function_fixes_nothing() {
        let o = FracOrders::<f64>::classical();
        let mut p = example1::<f64>();
        p.equations[0].ics = vec![crate::problems::InitialCondition {
            order: 0,
            series: FracSeries::zero(),
        }];
        let b = extract_basis(&bootstrap(&p, 0).unwrap(), &o, p.equations[0].basis_order).unwrap();
        assert_eq!(b.len(), 2);
        let a = apply_ics(&Ansatz::new(Unknown::U, b), &p.equations[0]).unwrap();
        assert!(a.fixed.is_empty());
        assert_eq!(a.free, vec![0, 1]);
    }

    #[test]
    fn inconsistent_data() {
        let p = example1::<f64>();
        let b = extract_basis(&bootstrap(&p, 0).unwrap(), &p.orders, p.equations[0].basis_order).unwrap();
        let mut e = p.equations[0].clone();
        e.ics[0].series = FracSeries::t_pow(Exponent::int(3));
        assert!(matches!(
            apply_ics(&Ansatz::new(Unknown::U, b), &e),
            Err(Error::InconsistentIc(_))
        ));
    }

    fn zero_at(p: &ProblemSpec<f64>, params: &[f64]) {
        let a = ansatze(p);
        for r in build_residual(p, &a).unwrap() {
            assert!(r.degree() <= 2);
            let s = NumericSeries::collapse(&r.eval(params), &p.orders);
            assert!(s.max_abs_coeff() <= 1e-15, "{}", r.eval(params));
        }
    }

    #[test]
    fn exact_parameters_zero_the_residual() {
        zero_at(&example1(), &[1.0, 0.0]);
        zero_at(&example2(), &[2.0, 0.0]);
        zero_at(&example3(), &[2.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn trivial_problem_has_zero_residual() {
        let mut p = example1::<f64>();
        p.equations[0].forcing = FracSeries::zero();
        p.equations[0].nonlinearity.clear();
        let a = Ansatz {
            unknown: Unknown::U,
            basis: BasisSet {
                functions: vec![],
                groups: vec![],
                labels: vec![],
                sources: vec![],
            },
            fixed: BTreeMap::new(),
            free: vec![],
        };
        let r = build_residual(&p, &[a]).unwrap();
        assert!(r[0].is_zero());
    }

    #[test]
    fn reconstruct_matches_param_series() {
        let p = example3::<f64>().with_orders(FracOrders::new(0.8, 0.9).unwrap());
        let a = ansatze(&p);
        let vals = [0.3, -1.2, 2.5, 0.7];
        let u = a[0].param_series(0, 4).eval(&vals);
        assert_eq!(u, a[0].reconstruct(&vals[..2]));
        let v = a[1].param_series(2, 4).eval(&vals);
        assert_eq!(v, a[1].reconstruct(&vals[2..]));
    }
}
