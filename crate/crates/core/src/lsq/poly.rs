use std::collections::BTreeMap;

use crate::error::Result;
use crate::fracalg::FracSeries;
use crate::scalar::Scalar;

/// Multi-index of parameter exponents, one entry per variable.
pub type MultiIndex = Vec<u32>;

fn add_index(a: &[u32], b: &[u32]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn monomial_value<T: Scalar>(idx: &[u32], params: &[T]) -> T {
    idx.iter()
        .zip(params)
        .fold(T::one(), |acc, (&e, &p)| acc * p.powi(e as i32))
}

/// Polynomial in the ansatz parameters with series coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoly<T: Scalar> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, FracSeries<T>>,
}

impl<T: Scalar> ParamPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        ParamPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, s: FracSeries<T>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], s);
        p
    }

    /// `s · pᵢ`.
    pub fn linear(nvars: usize, i: usize, s: FracSeries<T>) -> Self {
        let mut idx = vec![0; nvars];
        idx[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(idx, s);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &FracSeries<T>)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, idx: MultiIndex, s: FracSeries<T>) {
        assert_eq!(idx.len(), self.nvars, "multi-index length");
        let merged = match self.terms.remove(&idx) {
            Some(prev) => prev.add(&s),
            None => s,
        };
        if !merged.is_zero() {
            self.terms.insert(idx, merged);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, s) in &other.terms {
            out.add_term(k.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-T::one()))
    }

    pub fn scale(&self, k: T) -> Self {
        let mut out = Self::zero(self.nvars);
        for (idx, s) in &self.terms {
            out.add_term(idx.clone(), s.scale(k));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, sa) in &self.terms {
            for (b, sb) in &other.terms {
                out.add_term(add_index(a, b), sa.mul(sb));
            }
        }
        out
    }

    /// Applies a linear series operator to every coefficient.
    pub fn map<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&FracSeries<T>) -> Result<FracSeries<T>>,
    {
        let mut out = Self::zero(self.nvars);
        for (idx, s) in &self.terms {
            out.add_term(idx.clone(), f(s)?);
        }
        Ok(out)
    }

    /// The series obtained by substituting `params`.
    pub fn eval(&self, params: &[T]) -> FracSeries<T> {
        assert_eq!(params.len(), self.nvars, "parameter count");
        let mut out = FracSeries::zero();
        for (idx, s) in &self.terms {
            out.add_assign(&s.scale(monomial_value(idx, params)));
        }
        out
    }
}

/// Real polynomial in the ansatz parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, T)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (idx, c) in terms {
            p.add_term(idx, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[u32]) -> T {
        self.terms.get(idx).copied().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: T) {
        assert_eq!(idx.len(), self.nvars, "multi-index length");
        let v = self.terms.get(&idx).copied().unwrap_or_else(T::zero) + c;
        if v == T::zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, v);
        }
    }

    pub fn eval(&self, params: &[T]) -> T {
        assert_eq!(params.len(), self.nvars, "parameter count");
        self.terms
            .iter()
            .fold(T::zero(), |acc, (idx, &c)| acc + c * monomial_value(idx, params))
    }

    /// Exact partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (idx, &c) in &self.terms {
            if idx[i] > 0 {
                let mut d = idx.clone();
                d[i] -= 1;
                out.add_term(d, c * T::of(idx[i] as f64));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracalg::Exponent;

    #[test]
    fn param_poly_algebra() {
        let x = FracSeries::<f64>::x_pow(Exponent::int(1));
        let k = ParamPoly::linear(1, 0, x.clone());
        let one = ParamPoly::constant(1, FracSeries::constant(1.0));
        let r = k.sub(&one);
        let sq = r.mul(&r);
        assert_eq!(sq.degree(), 2);
        let s = sq.eval(&[2.0]);
        // (2x − 1)²
        let want = FracSeries::from_terms([
            crate::fracalg::Monomial::new(4.0, Exponent::int(2), Exponent::ZERO),
            crate::fracalg::Monomial::new(-4.0, Exponent::int(1), Exponent::ZERO),
            crate::fracalg::Monomial::new(1.0, Exponent::ZERO, Exponent::ZERO),
        ]);
        assert_eq!(s, want);
        assert!(r.sub(&r).is_zero());
    }

    #[test]
    fn polynomial_derivatives() {
        // 3 a² b − b + 2
        let p = Polynomial::from_terms(2, [(vec![2, 1], 3.0), (vec![0, 1], -1.0), (vec![0, 0], 2.0)]);
        assert_eq!(p.eval(&[2.0, 3.0]), 35.0);
        assert_eq!(p.derivative(0), Polynomial::from_terms(2, [(vec![1, 1], 6.0)]));
        assert_eq!(p.derivative(1).eval(&[2.0, 0.0]), 11.0);
        assert_eq!(p.degree(), 3);
        let q = Polynomial::from_terms(1, [(vec![2], 1.0)]);
        assert_eq!(q.derivative(0), Polynomial::from_terms(1, [(vec![1], 2.0)]));
    }
}
